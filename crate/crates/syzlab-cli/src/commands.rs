use serde_json::{json, Map, Value};
use syzlab_core::corpus::{run_all_seeded, run_criterion_seeded, CriterionOutcome};
use syzlab_core::criteria::{
    free_summand_report, gdim_zero_up_to, gorenstein_criterion_ext, gorenstein_criterion_omega,
    gorenstein_scan_syzygies_of_omega, no_summand_audit, regularity_criterion, socle_lemma_check,
    takahashi_check, CriterionVerdict,
};
use syzlab_core::error::{AlgebraError, Result};
use syzlab_core::field::Field;
use syzlab_core::hilbert::ring_hilbert;
use syzlab_core::homology::{ext_range, hom_module, length_over_k, socle, tor_range};
use syzlab_core::invariants::{canonical_module, classify_ring, cm_type, module_hilbert};
use syzlab_core::module::PresentedModule;
use syzlab_core::parse::{format_vector, parse_poly, RingDescription};
use syzlab_core::resolve::{minimal_free_resolution, minimal_presentation, syzygy_of, BettiTable};
use syzlab_core::ring::GradedRing;

use crate::input::{degree_cap, load_module};
use crate::report::{
    dims_line, grid, kv, laurent_text, opt, presentation_json, presentation_text, series_json,
    yesno, Report,
};

pub fn ring_classify<K: Field>(desc: &RingDescription, ring: &GradedRing<K>) -> Result<Report> {
    let c = classify_ring(ring);
    let json = json!({
        "ring": serde_json::to_value(desc).expect("ring description serializes"),
        "classification": serde_json::to_value(&c).expect("classification serializes"),
    });
    let text = kv(&[
        ("dim", c.dim.to_string()),
        ("depth", c.depth.to_string()),
        ("embedding dim", c.embedding_dim.to_string()),
        ("multiplicity", c.multiplicity.to_string()),
        ("regular", yesno(c.regular)),
        ("cohen-macaulay", yesno(c.cohen_macaulay)),
        ("gorenstein", yesno(c.gorenstein)),
        ("cm type", opt(&c.cm_type)),
        ("minimal multiplicity", yesno(c.minimal_multiplicity)),
    ]);
    Ok(Report::ok(json, text))
}

pub fn resolve<K: Field>(ring: &GradedRing<K>, module: &str, length: usize) -> Result<Report> {
    let m = load_module(ring, module)?.module;
    let field = ring.field();
    let vars = ring.vars();
    let res = minimal_free_resolution(&m, length);
    let steps: Vec<Value> = res
        .free
        .iter()
        .enumerate()
        .map(|(i, f)| json!({ "index": i, "shifts": f.shifts }))
        .collect();
    let differentials: Vec<Value> = res
        .diff
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let columns: Vec<Vec<String>> =
                d.cols().iter().map(|c| format_vector(field, vars, c)).collect();
            json!({
                "index": i + 1,
                "target_shifts": d.tgt_shifts().to_vec(),
                "source_shifts": d.src_shifts().to_vec(),
                "columns": columns,
            })
        })
        .collect();
    let totals: Vec<usize> = (0..res.free.len()).map(|i| res.betti(i)).collect();
    let period = res.eventual_period();
    let json = json!({
        "length": length,
        "betti_totals": totals,
        "pd": res.pd(),
        "eventual_period": period.map(|(s, p)| json!([s, p])),
        "steps": steps,
        "differentials": differentials,
    });
    let mut text = kv(&[
        ("betti totals", totals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")),
        ("pd", res.pd().map_or("not reached in window".into(), |p| p.to_string())),
        (
            "eventual period",
            period.map_or("none found".into(), |(s, p)| format!("period {} from step {}", p, s)),
        ),
    ]);
    for (i, f) in res.free.iter().enumerate() {
        let shifts: Vec<String> = f.shifts.iter().map(|s| s.to_string()).collect();
        let joined = if shifts.is_empty() { "(rank 0)".into() } else { shifts.join(" ") };
        text.push_str(&format!("F_{} shifts : {}\n", i, joined));
    }
    Ok(Report::ok(json, text))
}

pub fn betti<K: Field>(ring: &GradedRing<K>, module: &str, depth: usize) -> Result<Report> {
    let m = load_module(ring, module)?.module;
    let res = minimal_free_resolution(&m, depth);
    let table = BettiTable::from_resolution(&res);
    let mut entries = Map::new();
    for (&(i, j), &v) in &table.entries {
        entries.insert(format!("{},{}", i, j), json!(v));
    }
    let totals: Vec<u64> = (0..=table.max_index).map(|i| table.total(i)).collect();
    let json = json!({
        "max_index": table.max_index,
        "totals": totals,
        "entries": entries,
    });
    let mut text = table.text();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Report::ok(json, text))
}

pub fn syzygy<K: Field>(ring: &GradedRing<K>, module: &str, index: usize) -> Result<Report> {
    let loaded = load_module(ring, module)?;
    let syz = syzygy_of(&loaded.module, index);
    let mut obj = Map::new();
    obj.insert("index".into(), json!(index));
    obj.insert("module".into(), presentation_json(&syz));
    let mut text = format!("syzygy index : {}\n", index);
    if let Some(c) = &loaded.certificate {
        obj.insert(
            "source_certificate".into(),
            serde_json::to_value(c).expect("certificate serializes"),
        );
        text.push_str(&format!(
            "source certificate : MCM, dim {} depth {} mu {} ({})\n",
            c.dim, c.depth, c.mu, c.provenance
        ));
    }
    if let Some(r) = &loaded.refusal {
        obj.insert("source_refusal".into(), json!(r));
        text.push_str(&format!("source refusal : {}\n", r));
    }
    text.push_str(&presentation_text(&syz));
    Ok(Report::ok(Value::Object(obj), text))
}

pub fn hilbert<K: Field>(ring: &GradedRing<K>, module: Option<&str>) -> Result<Report> {
    let series = match module {
        Some(spec) => module_hilbert(&load_module(ring, spec)?.module),
        None => ring_hilbert(ring),
    };
    let lo = series.min_degree().unwrap_or(0).min(0);
    let hi = degree_cap().max(lo);
    let json = series_json(&series, lo, hi);
    let mut text = kv(&[
        ("numerator", laurent_text(&series.numerator)),
        ("reduced numerator", laurent_text(&series.reduced)),
        ("denominator", format!("(1 - t)^{}", series.denom_power)),
        ("dim", series.dim.to_string()),
        ("multiplicity", series.multiplicity.to_string()),
        ("total length", opt(&series.total_length())),
    ]);
    let rows: Vec<Vec<String>> = series
        .values(lo, hi)
        .iter()
        .map(|&(d, v)| vec![d.to_string(), v.to_string()])
        .collect();
    text.push_str(&grid(&["degree", "dim"], &rows));
    Ok(Report::ok(json, text))
}

pub fn socle_cmd<K: Field>(ring: &GradedRing<K>, module: Option<&str>) -> Result<Report> {
    let m = match module {
        Some(spec) => load_module(ring, spec)?.module,
        None => PresentedModule::ring_module(ring.clone()),
    };
    let min = minimal_presentation(&socle(&m));
    let series = module_hilbert(&min);
    let lo = series.min_degree().unwrap_or(0).min(0);
    let hi = degree_cap().max(lo);
    let values: Vec<Value> = series.values(lo, hi).iter().map(|&(d, v)| json!([d, v])).collect();
    let json = json!({
        "module": presentation_json(&min),
        "length": series.total_length(),
        "values": values,
    });
    let mut text = format!("socle length : {}\n", opt(&series.total_length()));
    let rows: Vec<Vec<String>> = series
        .values(lo, hi)
        .iter()
        .map(|&(d, v)| vec![d.to_string(), v.to_string()])
        .collect();
    text.push_str(&grid(&["degree", "dim"], &rows));
    text.push_str(&presentation_text(&min));
    Ok(Report::ok(json, text))
}

pub enum Functor {
    Ext,
    Tor,
}

pub fn ext_tor<K: Field>(
    ring: &GradedRing<K>,
    mspec: &str,
    nspec: &str,
    lo: usize,
    hi: usize,
    functor: Functor,
) -> Result<Report> {
    let m = load_module(ring, mspec)?.module;
    let n = load_module(ring, nspec)?.module;
    let (name, modules) = match functor {
        Functor::Ext => ("ext", ext_range(&m, &n, hi)),
        Functor::Tor => ("tor", tor_range(&m, &n, hi)),
    };
    let dims: Vec<Option<i64>> = (lo..=hi).map(|i| length_over_k(&modules[i])).collect();
    let zero: Vec<bool> = (lo..=hi).map(|i| modules[i].is_zero_module_quick()).collect();
    let mut max_zero_run = 0;
    let mut run = 0;
    for &z in &zero {
        if z {
            run += 1;
            max_zero_run = max_zero_run.max(run);
        } else {
            run = 0;
        }
    }
    let json = json!({
        "functor": name,
        "range": [lo, hi],
        "dims": dims,
        "max_zero_run": max_zero_run,
    });
    let rows: Vec<Vec<String>> = (lo..=hi)
        .map(|i| {
            let d = &dims[i - lo];
            vec![
                i.to_string(),
                d.map_or("inf".into(), |v| v.to_string()),
                yesno(zero[i - lo]),
            ]
        })
        .collect();
    let mut text = grid(&["i", "length", "zero"], &rows);
    text.push_str(&format!("dims         : {}\n", dims_line(&dims)));
    text.push_str(&format!("max zero run : {}\n", max_zero_run));
    Ok(Report::ok(json, text))
}

pub fn hom<K: Field>(ring: &GradedRing<K>, mspec: &str, nspec: &str) -> Result<Report> {
    let m = load_module(ring, mspec)?.module;
    let n = load_module(ring, nspec)?.module;
    let data = hom_module(&m, &n);
    let min = minimal_presentation(&data.module);
    let series = module_hilbert(&min);
    let lo = series.min_degree().unwrap_or(0).min(0);
    let hi = degree_cap().max(lo);
    let values: Vec<Value> = series.values(lo, hi).iter().map(|&(d, v)| json!([d, v])).collect();
    let json = json!({
        "module": presentation_json(&min),
        "total_length": series.total_length(),
        "values": values,
    });
    let mut text = format!("hom total length : {}\n", opt(&series.total_length()));
    let rows: Vec<Vec<String>> = series
        .values(lo, hi)
        .iter()
        .map(|&(d, v)| vec![d.to_string(), v.to_string()])
        .collect();
    text.push_str(&grid(&["degree", "dim"], &rows));
    text.push_str(&presentation_text(&min));
    Ok(Report::ok(json, text))
}

pub fn trace<K: Field>(ring: &GradedRing<K>, module: &str) -> Result<Report> {
    let m = load_module(ring, module)?.module;
    let report = free_summand_report(&m);
    let json = serde_json::to_value(&report).expect("summand report serializes");
    let mut text = kv(&[
        ("free summand", yesno(report.found)),
        ("trace ideal", if report.trace.is_empty() { "0".into() } else { report.trace.join(", ") }),
    ]);
    if let Some(w) = &report.witness {
        text.push_str(&format!("witness position : {}\n", w.position));
        text.push_str(&format!("splitting hom    : [{}]\n", w.hom.join(", ")));
    }
    Ok(Report::ok(json, text))
}

pub fn canonical<K: Field>(ring: &GradedRing<K>) -> Result<Report> {
    let omega = canonical_module(ring)?;
    let min = minimal_presentation(&omega);
    let t = cm_type(ring)?;
    let json = json!({
        "cm_type": t,
        "module": presentation_json(&min),
    });
    let mut text = format!("cm type : {}\n", t);
    text.push_str(&presentation_text(&min));
    Ok(Report::ok(json, text))
}

fn verdict_text(v: &CriterionVerdict) -> String {
    let mut text = kv(&[
        ("criterion", v.criterion.clone()),
        ("property", v.property.clone()),
        ("dim", v.dim.to_string()),
        ("window", v.window.to_string()),
        ("bound", v.bound.to_string()),
        ("window found", yesno(v.window_found)),
        ("verdict", v.window_verdict.clone()),
        ("holds", yesno(v.holds)),
        ("classifier", yesno(v.classifier)),
        ("agreement", yesno(v.agreement)),
    ]);
    for scan in &v.scans {
        let cells: Vec<String> = scan
            .vanishing
            .iter()
            .map(|&z| if z { "0".to_string() } else { "*".to_string() })
            .collect();
        text.push_str(&format!(
            "{} (i={}..{}) : {}   max zero run {}{}\n",
            scan.table,
            scan.lo,
            scan.hi,
            cells.join(" "),
            scan.max_zero_run,
            scan.window_start
                .map_or(String::new(), |s| format!(", window starts at {}", s)),
        ));
    }
    text
}

fn verdict_report(v: CriterionVerdict) -> Report {
    let agreed = v.agreement;
    let text = verdict_text(&v);
    let json = serde_json::to_value(&v).expect("verdict serializes");
    Report::checked(json, text, agreed)
}

pub fn check_regularity<K: Field>(
    ring: &GradedRing<K>,
    mspec: &str,
    nspec: &str,
    bound: usize,
) -> Result<Report> {
    let m = load_module(ring, mspec)?.module;
    let n = load_module(ring, nspec)?.module;
    Ok(verdict_report(regularity_criterion(&m, &n, bound)?))
}

pub fn check_gorenstein_ext<K: Field>(
    ring: &GradedRing<K>,
    lspec: &str,
    bound: usize,
) -> Result<Report> {
    let l = load_module(ring, lspec)?.module;
    Ok(verdict_report(gorenstein_criterion_ext(&l, bound)?))
}

pub fn check_gorenstein_omega<K: Field>(
    ring: &GradedRing<K>,
    lspec: &str,
    bound: usize,
) -> Result<Report> {
    let l = load_module(ring, lspec)?.module;
    Ok(verdict_report(gorenstein_criterion_omega(&l, bound)?))
}

pub fn check_omega_scan<K: Field>(ring: &GradedRing<K>, n_max: usize) -> Result<Report> {
    let report = gorenstein_scan_syzygies_of_omega(ring, n_max)?;
    let text = kv(&[
        ("scanned n", format!("0..{}", report.n_max)),
        (
            "free summand found at",
            if report.found_at.is_empty() {
                "not found".into()
            } else {
                report.found_at.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
            },
        ),
        ("verdict", if report.holds { "gorenstein".into() } else { "non-gorenstein".into() }),
        ("classifier", yesno(report.gorenstein)),
        ("agreement", yesno(report.agreement)),
    ]);
    let agreed = report.agreement;
    let json = serde_json::to_value(&report).expect("scan report serializes");
    Ok(Report::checked(json, text, agreed))
}

pub fn check_socle_lemma<K: Field>(
    ring: &GradedRing<K>,
    module: &str,
    n_max: usize,
) -> Result<Report> {
    let m = load_module(ring, module)?.module;
    let report = socle_lemma_check(&m, n_max)?;
    let mut text = format!("socle generators : {}\n", report.socle.join(", "));
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), yesno(r.contained)])
        .collect();
    text.push_str(&grid(&["n", "annihilates syzygy"], &rows));
    text.push_str(&format!("holds : {}\n", yesno(report.holds)));
    let agreed = report.holds;
    let json = serde_json::to_value(&report).expect("socle report serializes");
    Ok(Report::checked(json, text, agreed))
}

pub fn check_takahashi<K: Field>(
    ring: &GradedRing<K>,
    ell: &str,
    n_max: usize,
    betti_depth: usize,
) -> Result<Report> {
    let f = parse_poly(ring.field(), ring.vars(), ell)?;
    let report = takahashi_check(ring, &f, n_max, betti_depth)?;
    let mut text = format!("linear form : {}\n", report.ell);
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.transported_betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
                r.predicted_betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
                yesno(r.betti_match),
                yesno(r.hilbert_match),
            ]
        })
        .collect();
    text.push_str(&grid(&["n", "transported betti", "predicted betti", "betti", "hilbert"], &rows));
    text.push_str(&format!("holds : {}\n", yesno(report.holds)));
    let agreed = report.holds;
    let json = serde_json::to_value(&report).expect("takahashi report serializes");
    Ok(Report::checked(json, text, agreed))
}

pub fn check_no_summand<K: Field>(
    ring: &GradedRing<K>,
    module: &str,
    n_max: usize,
) -> Result<Report> {
    let m = load_module(ring, module)?.module;
    let report = no_summand_audit(&m, n_max);
    let mut text = kv(&[
        ("dim", report.dim.to_string()),
        ("mcm", yesno(report.mcm)),
        ("window start", report.window_start.to_string()),
    ]);
    let rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.n.to_string(),
                yesno(e.syzygy_zero),
                yesno(e.free_summand),
                e.witness_position.map_or("-".into(), |p| p.to_string()),
            ]
        })
        .collect();
    text.push_str(&grid(&["n", "zero", "free summand", "witness"], &rows));
    text.push_str(&format!("holds : {}\n", yesno(report.holds)));
    let agreed = report.holds;
    let json = serde_json::to_value(&report).expect("summand audit serializes");
    Ok(Report::checked(json, text, agreed))
}

pub fn check_gdim<K: Field>(ring: &GradedRing<K>, module: &str, bound: usize) -> Result<Report> {
    let l = load_module(ring, module)?.module;
    let report = gdim_zero_up_to(&l, bound);
    let pattern = |v: &[bool]| {
        v.iter().map(|&z| if z { "0" } else { "*" }).collect::<Vec<_>>().join(" ")
    };
    let text = kv(&[
        ("bound", report.bound.to_string()),
        ("biduality isomorphism", yesno(report.biduality_iso)),
        ("ext(L,R) vanishing", pattern(&report.ext_vanishing)),
        ("ext(L*,R) vanishing", pattern(&report.dual_ext_vanishing)),
        ("gdim zero up to bound", yesno(report.zero_up_to_bound)),
        ("failure", report.failure.clone().unwrap_or_else(|| "-".into())),
    ]);
    let json = serde_json::to_value(&report).expect("gdim report serializes");
    Ok(Report::ok(json, text))
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("seconds");
            for (_, x) in map.iter_mut() {
                strip_timing(x);
            }
        }
        Value::Array(items) => {
            for x in items {
                strip_timing(x);
            }
        }
        _ => {}
    }
}

fn outcome_rows(outcomes: &[CriterionOutcome]) -> Vec<Vec<String>> {
    outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                if o.pass { "PASS".into() } else { "FAIL".into() },
                format!("{:.2}s", o.seconds),
                o.title.to_string(),
            ]
        })
        .collect()
}

pub fn corpus_run(
    seed: Option<u64>,
    criterion: Option<usize>,
    golden: Option<&std::path::Path>,
) -> Result<Report> {
    let outcomes = match criterion {
        Some(id) => {
            if !(1..=11).contains(&id) {
                return Err(AlgebraError::InvalidInput(format!(
                    "criterion {} out of range 1..=11",
                    id
                )));
            }
            vec![run_criterion_seeded(id, seed)]
        }
        None => run_all_seeded(seed),
    };
    let all_pass = outcomes.iter().all(|o| o.pass);
    let mut json = json!({
        "seed": seed,
        "all_pass": all_pass,
        "criteria": outcomes,
    });
    let mut text = grid(&["id", "result", "time", "criterion"], &outcome_rows(&outcomes));
    text.push_str(&format!(
        "summary : {}\n",
        if all_pass { "all criteria pass".into() } else {
            let failed: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.pass)
                .map(|o| o.id.to_string())
                .collect();
            format!("FAILED criteria: {}", failed.join(" "))
        }
    ));
    let mut status = if all_pass { 0 } else { 3 };
    if let Some(path) = golden {
        let expected_text = std::fs::read_to_string(path).map_err(|e| {
            AlgebraError::InvalidInput(format!("cannot read {}: {}", path.display(), e))
        })?;
        let mut expected: Value = serde_json::from_str(&expected_text)
            .map_err(|e| AlgebraError::Parse(format!("golden file: {}", e)))?;
        let mut actual = json.clone();
        strip_timing(&mut expected);
        strip_timing(&mut actual);
        if expected == actual {
            json["golden_match"] = json!(true);
            text.push_str("golden  : match\n");
        } else {
            json["golden_match"] = json!(false);
            status = 3;
            text.push_str("golden  : MISMATCH\n");
            let want = serde_json::to_string_pretty(&expected).expect("golden serializes");
            let got = serde_json::to_string_pretty(&actual).expect("summary serializes");
            let mut shown = 0;
            for diff in diff_lines(&want, &got) {
                text.push_str(&diff);
                text.push('\n');
                shown += 1;
                if shown >= 40 {
                    text.push_str("... diff truncated\n");
                    break;
                }
            }
        }
    }
    Ok(Report { json, text, status })
}

fn diff_lines(want: &str, got: &str) -> Vec<String> {
    let w: Vec<&str> = want.lines().collect();
    let g: Vec<&str> = got.lines().collect();
    let mut out = vec![];
    for i in 0..w.len().max(g.len()) {
        let a = w.get(i).copied();
        let b = g.get(i).copied();
        if a != b {
            if let Some(l) = a {
                out.push(format!("- {}", l));
            }
            if let Some(l) = b {
                out.push(format!("+ {}", l));
            }
        }
    }
    out
}
