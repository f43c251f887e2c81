//! Summand detection, vanishing-window criteria, and bounded G-dimension
//! checks, each cross-checked against the ring classifier.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger_ideal, module_groebner};
use crate::hilbert::hilbert_series;
use crate::homology::{
    biduality, dual_data, ext_range, hom_identity_vector, hom_module, tor_range, DualData,
};
use crate::invariants::{canonical_module, classify_ring, RingClassification};
use crate::module::{module_annihilator, normal_form_against, PresentedModule};
use crate::parse::format_poly;
use crate::poly::Polynomial;
use crate::resolve::{
    depth, minimal_free_resolution, mu, quotient_by_linear_regular,
    Resolution,
};
use crate::ring::GradedRing;
use crate::vector::PolyVector;

fn trace_gens_from_dual<K: Field>(
    ring: &GradedRing<K>,
    dd: &DualData<K>,
) -> Vec<Polynomial<K>> {
    let field = ring.field();
    let mut gens: Vec<Polynomial<K>> = vec![];
    for j in 0..dd.kstar.ncols() {
        for v in 0..dd.kstar.nrows() {
            let e = ring.nf(&dd.kstar.entry(field, v, j));
            if !e.is_zero() {
                gens.push(e);
            }
        }
    }
    gens
}

/// Reduced generators of the trace ideal: the sum of the images of all
/// homomorphisms M -> R.
pub fn trace_ideal<K: Field>(m: &PresentedModule<K>) -> Vec<Polynomial<K>> {
    let ring = m.ring();
    let dd = dual_data(m);
    let mut gens = trace_gens_from_dual(ring, &dd);
    gens.extend(ring.ideal_gens().iter().cloned());
    buchberger_ideal(ring.field(), ring.nvars(), &gens)
        .into_iter()
        .map(|g| ring.nf(&g))
        .filter(|g| !g.is_zero())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitWitness {
    /// Values of the splitting homomorphism on the minimal generators.
    pub hom: Vec<String>,
    /// Generator sent to a unit.
    pub position: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeSummandReport {
    pub found: bool,
    pub trace: Vec<String>,
    pub witness: Option<SplitWitness>,
}

/// A graded module has a free summand iff its trace ideal is the whole
/// ring, iff some entry of the dual kernel matrix is a unit.
pub fn free_summand_report<K: Field>(m: &PresentedModule<K>) -> FreeSummandReport {
    let ring = m.ring().clone();
    let field = ring.field();
    let vars = ring.vars();
    let dd = dual_data(m);
    let mut witness = None;
    'scan: for j in 0..dd.kstar.ncols() {
        for v in 0..dd.kstar.nrows() {
            let e = ring.nf(&dd.kstar.entry(field, v, j));
            if !e.is_zero() && e.degree() == Some(0) {
                let hom = (0..dd.kstar.nrows())
                    .map(|r| format_poly(field, vars, &ring.nf(&dd.kstar.entry(field, r, j))))
                    .collect();
                witness = Some(SplitWitness { hom, position: v });
                break 'scan;
            }
        }
    }
    let mut gens = trace_gens_from_dual(&ring, &dd);
    gens.extend(ring.ideal_gens().iter().cloned());
    let trace: Vec<Polynomial<K>> = buchberger_ideal(field, ring.nvars(), &gens)
        .into_iter()
        .map(|g| ring.nf(&g))
        .filter(|g| !g.is_zero())
        .collect();
    let found = witness.is_some();
    debug_assert_eq!(found, trace.iter().any(|g| g.degree() == Some(0)));
    FreeSummandReport {
        found,
        trace: trace.iter().map(|g| format_poly(field, vars, g)).collect(),
        witness,
    }
}

pub fn has_free_summand<K: Field>(m: &PresentedModule<K>) -> bool {
    free_summand_report(m).found
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidualizingReport {
    pub bound: usize,
    pub faithful: bool,
    pub hom_cyclic: Option<bool>,
    /// Ext^i(M,M) = 0 for i = 1..=bound.
    pub ext_vanishing: Option<Vec<bool>>,
    pub yes_up_to_bound: bool,
    pub failure: Option<String>,
}

/// Checks that R -> Hom(M,M) is an isomorphism (the identity generates,
/// and ann(M) = 0) and that Ext^i(M,M) = 0 for 1 <= i <= bound.
pub fn is_semidualizing_up_to<K: Field>(
    m: &PresentedModule<K>,
    bound: usize,
) -> SemidualizingReport {
    let ring = m.ring().clone();
    let field = ring.field().clone();
    let vars = ring.vars();
    let no = |failure: String, hom_cyclic, ext_vanishing, faithful| SemidualizingReport {
        bound,
        faithful,
        hom_cyclic,
        ext_vanishing,
        yes_up_to_bound: false,
        failure: Some(failure),
    };
    let ann = module_annihilator(m);
    if !ann.is_empty() {
        let witness = format_poly(&field, vars, &ann[0]);
        return no(format!("annihilator is nonzero, contains {}", witness), None, None, false);
    }
    let hd = hom_module(m, m);
    let a = hd.src_cover.len();
    let id = hom_identity_vector(&field, ring.nvars(), a);
    let mut span = vec![id];
    span.extend(hd.trivial.cols().iter().cloned());
    let gb = module_groebner(&field, ring.nvars(), &hd.ambient, &span, ring.gb());
    let cyclic = hd
        .generators
        .cols()
        .iter()
        .all(|g| normal_form_against(&ring, &hd.ambient, &gb, g).is_zero());
    if !cyclic {
        return no(
            "Hom(M,M) is not generated by the identity".into(),
            Some(false),
            None,
            true,
        );
    }
    let ext = ext_range(m, m, bound);
    let vanishing: Vec<bool> = (1..=bound).map(|i| ext[i].is_zero_module_quick()).collect();
    if let Some(pos) = vanishing.iter().position(|&v| !v) {
        let i = pos + 1;
        return no(
            format!("Ext^{}(M,M) is nonzero", i),
            Some(true),
            Some(vanishing),
            true,
        );
    }
    SemidualizingReport {
        bound,
        faithful: true,
        hom_cyclic: Some(true),
        ext_vanishing: Some(vanishing),
        yes_up_to_bound: true,
        failure: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingScan {
    pub table: String,
    pub lo: usize,
    pub hi: usize,
    pub vanishing: Vec<bool>,
    pub max_zero_run: usize,
    /// First index i such that positions i..i+window are all zero.
    pub window_start: Option<usize>,
}

fn scan_table(table: &str, vanishing: Vec<bool>, window: usize) -> VanishingScan {
    let mut max_zero_run = 0;
    let mut run = 0;
    let mut window_start = None;
    for (idx, &z) in vanishing.iter().enumerate() {
        if z {
            run += 1;
            max_zero_run = max_zero_run.max(run);
            if run >= window && window_start.is_none() {
                window_start = Some(idx + 2 - window);
            }
        } else {
            run = 0;
        }
    }
    VanishingScan {
        table: table.into(),
        lo: 1,
        hi: vanishing.len(),
        vanishing,
        max_zero_run,
        window_start,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionVerdict {
    pub criterion: String,
    /// Ring property the window decides.
    pub property: String,
    pub dim: i64,
    pub window: usize,
    pub bound: usize,
    pub scans: Vec<VanishingScan>,
    pub window_found: bool,
    /// "established" when a full window was found; otherwise the forward
    /// implication is silent and only the bounded scan refutes.
    pub window_verdict: String,
    pub holds: bool,
    pub classifier: bool,
    pub agreement: bool,
}

impl CriterionVerdict {
    fn assemble(
        criterion: &str,
        property: &str,
        dim: i64,
        window: usize,
        bound: usize,
        scans: Vec<VanishingScan>,
        classifier: bool,
    ) -> Self {
        let window_found = scans.iter().any(|s| s.window_start.is_some());
        let window_verdict = if window_found {
            "established".to_string()
        } else {
            "inconclusive-by-theorem".to_string()
        };
        let holds = window_found;
        CriterionVerdict {
            criterion: criterion.into(),
            property: property.into(),
            dim,
            window,
            bound,
            scans,
            window_found,
            window_verdict,
            holds,
            classifier,
            agreement: holds == classifier,
        }
    }
}

fn require_window_hypotheses<K: Field>(
    ring: &GradedRing<K>,
    modules: &[&PresentedModule<K>],
    bound: usize,
) -> Result<(RingClassification, usize)> {
    let class = classify_ring(ring);
    if !class.cohen_macaulay {
        return Err(AlgebraError::HypothesisNotMet(
            "ring is not Cohen-Macaulay".into(),
        ));
    }
    if !class.minimal_multiplicity {
        return Err(AlgebraError::HypothesisNotMet(format!(
            "ring does not have minimal multiplicity: e = {}, embedding dim = {}, dim = {}",
            class.multiplicity, class.embedding_dim, class.dim
        )));
    }
    let window = (class.dim + 1) as usize;
    if bound < window {
        return Err(AlgebraError::HypothesisNotMet(format!(
            "bound {} is smaller than the window d+1 = {}",
            bound, window
        )));
    }
    for m in modules {
        if m.is_zero_module_quick() {
            return Err(AlgebraError::HypothesisNotMet("module is zero".into()));
        }
        let dm = depth(m);
        if dm != Some(class.dim) {
            return Err(AlgebraError::HypothesisNotMet(format!(
                "module is not maximal Cohen-Macaulay: depth {:?}, dim {}",
                dm, class.dim
            )));
        }
    }
    Ok((class, window))
}

/// Regularity via a (d+1)-run of Ext or Tor vanishing between two
/// maximal Cohen-Macaulay modules over a ring of minimal multiplicity.
pub fn regularity_criterion<K: Field>(
    m: &PresentedModule<K>,
    n: &PresentedModule<K>,
    bound: usize,
) -> Result<CriterionVerdict> {
    if m.ring() != n.ring() {
        return Err(AlgebraError::InvalidInput(
            "modules live over different rings".into(),
        ));
    }
    let ring = m.ring().clone();
    let (class, window) = require_window_hypotheses(&ring, &[m, n], bound)?;
    let ext = ext_range(m, n, bound);
    let tor = tor_range(m, n, bound);
    let evan: Vec<bool> = (1..=bound).map(|i| ext[i].is_zero_module_quick()).collect();
    let tvan: Vec<bool> = (1..=bound).map(|i| tor[i].is_zero_module_quick()).collect();
    let scans = vec![scan_table("ext", evan, window), scan_table("tor", tvan, window)];
    Ok(CriterionVerdict::assemble(
        "regularity-ext-tor",
        "regular",
        class.dim,
        window,
        bound,
        scans,
        class.regular,
    ))
}

/// Gorensteinness via a (d+1)-run of Ext^i(L,R) vanishing.
pub fn gorenstein_criterion_ext<K: Field>(
    l: &PresentedModule<K>,
    bound: usize,
) -> Result<CriterionVerdict> {
    let ring = l.ring().clone();
    let (class, window) = require_window_hypotheses(&ring, &[l], bound)?;
    let r = PresentedModule::ring_module(ring.clone());
    let ext = ext_range(l, &r, bound);
    let evan: Vec<bool> = (1..=bound).map(|i| ext[i].is_zero_module_quick()).collect();
    let scans = vec![scan_table("ext", evan, window)];
    Ok(CriterionVerdict::assemble(
        "gorenstein-ext",
        "gorenstein",
        class.dim,
        window,
        bound,
        scans,
        class.gorenstein,
    ))
}

/// Gorensteinness via a (d+1)-run of Ext^i(omega,L) or Tor_i(omega,L)
/// vanishing.
pub fn gorenstein_criterion_omega<K: Field>(
    l: &PresentedModule<K>,
    bound: usize,
) -> Result<CriterionVerdict> {
    let ring = l.ring().clone();
    let (class, window) = require_window_hypotheses(&ring, &[l], bound)?;
    let omega = canonical_module(&ring)?;
    let ext = ext_range(&omega, l, bound);
    let tor = tor_range(&omega, l, bound);
    let evan: Vec<bool> = (1..=bound).map(|i| ext[i].is_zero_module_quick()).collect();
    let tvan: Vec<bool> = (1..=bound).map(|i| tor[i].is_zero_module_quick()).collect();
    let scans = vec![scan_table("ext", evan, window), scan_table("tor", tvan, window)];
    Ok(CriterionVerdict::assemble(
        "gorenstein-omega",
        "gorenstein",
        class.dim,
        window,
        bound,
        scans,
        class.gorenstein,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaScanReport {
    pub n_max: usize,
    pub found_at: Vec<usize>,
    pub holds: bool,
    pub gorenstein: bool,
    pub agreement: bool,
}

/// Scans the syzygies of the canonical module for a free summand; one is
/// found iff the ring is Gorenstein, and then only at n = 0.
pub fn gorenstein_scan_syzygies_of_omega<K: Field>(
    ring: &GradedRing<K>,
    n_max: usize,
) -> Result<OmegaScanReport> {
    let omega = canonical_module(ring)?;
    let res = minimal_free_resolution(&omega, n_max + 1);
    let mut found_at = vec![];
    for n in 0..=n_max {
        let syz = res.syzygy_module(n);
        if free_summand_report(&syz).found {
            found_at.push(n);
        }
    }
    let class = classify_ring(ring);
    let holds = !found_at.is_empty();
    let agreement = holds == class.gorenstein && (!holds || found_at == vec![0]);
    Ok(OmegaScanReport {
        n_max,
        found_at,
        holds,
        gorenstein: class.gorenstein,
        agreement,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DuttaReport {
    pub n_max: usize,
    pub found_at: Vec<usize>,
    pub regular: bool,
    pub agreement: bool,
}

/// A syzygy of k has a free summand for some n iff the ring is regular.
pub fn dutta_scan<K: Field>(ring: &GradedRing<K>, n_max: usize) -> DuttaReport {
    let k = PresentedModule::residue_field(ring.clone());
    let res = minimal_free_resolution(&k, n_max + 1);
    let mut found_at = vec![];
    for n in 0..=n_max {
        let syz = res.syzygy_module(n);
        if free_summand_report(&syz).found {
            found_at.push(n);
        }
    }
    let class = classify_ring(ring);
    let found = !found_at.is_empty();
    DuttaReport {
        n_max,
        found_at,
        regular: class.regular,
        agreement: found == class.regular,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandScanEntry {
    pub n: usize,
    pub syzygy_zero: bool,
    pub free_summand: bool,
    pub witness_position: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoSummandAudit {
    pub dim: i64,
    pub mcm: bool,
    /// Syzygy indices from here on may not have free summands.
    pub window_start: usize,
    pub entries: Vec<SummandScanEntry>,
    pub violations: Vec<usize>,
    pub holds: bool,
}

/// Audits Omega_n(M) for free summands. None may appear for n >= d+1,
/// and already for n >= 1 when M itself is maximal Cohen-Macaulay.
pub fn no_summand_audit<K: Field>(m: &PresentedModule<K>, n_max: usize) -> NoSummandAudit {
    let ring = m.ring().clone();
    let class = classify_ring(&ring);
    let mcm = depth(m) == Some(class.dim);
    let window_start = if mcm { 1 } else { (class.dim + 1) as usize };
    let res = minimal_free_resolution(m, n_max + 1);
    let mut entries = vec![];
    let mut violations = vec![];
    for n in 0..=n_max {
        let syz = res.syzygy_module(n);
        let report = free_summand_report(&syz);
        if report.found && n >= window_start {
            violations.push(n);
        }
        entries.push(SummandScanEntry {
            n,
            syzygy_zero: syz.is_zero_module_quick(),
            free_summand: report.found,
            witness_position: report.witness.map(|w| w.position),
        });
    }
    let holds = violations.is_empty();
    NoSummandAudit { dim: class.dim, mcm, window_start, entries, violations, holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct GdimReport {
    pub bound: usize,
    pub biduality_iso: bool,
    /// Ext^i(L,R) = 0 for i = 1..=bound.
    pub ext_vanishing: Vec<bool>,
    /// Ext^i(L*,R) = 0 for i = 1..=bound.
    pub dual_ext_vanishing: Vec<bool>,
    pub zero_up_to_bound: bool,
    pub failure: Option<String>,
}

/// Totally reflexive test: L -> L** is an isomorphism and both L and L*
/// have no Ext against R in degrees 1..=bound.
pub fn gdim_zero_up_to<K: Field>(l: &PresentedModule<K>, bound: usize) -> GdimReport {
    let ring = l.ring().clone();
    let r = PresentedModule::ring_module(ring.clone());
    let bid = biduality(l);
    let ext = ext_range(l, &r, bound);
    let dual_ext = ext_range(&bid.dual.module, &r, bound);
    let ext_vanishing: Vec<bool> =
        (1..=bound).map(|i| ext[i].is_zero_module_quick()).collect();
    let dual_ext_vanishing: Vec<bool> =
        (1..=bound).map(|i| dual_ext[i].is_zero_module_quick()).collect();
    let mut failure = None;
    if !bid.isomorphism {
        failure = Some("L -> L** is not an isomorphism".into());
    } else if let Some(pos) = ext_vanishing.iter().position(|&v| !v) {
        failure = Some(format!("Ext^{}(L,R) is nonzero", pos + 1));
    } else if let Some(pos) = dual_ext_vanishing.iter().position(|&v| !v) {
        failure = Some(format!("Ext^{}(L*,R) is nonzero", pos + 1));
    }
    GdimReport {
        bound,
        biduality_iso: bid.isomorphism,
        ext_vanishing,
        dual_ext_vanishing,
        zero_up_to_bound: failure.is_none(),
        failure,
    }
}

/// Generators of (0 : m), the socle of the ring.
pub fn socle_ideal<K: Field>(ring: &GradedRing<K>) -> Result<Vec<Polynomial<K>>> {
    let gens = ring.maximal_ideal_gens();
    let m = crate::module::present_subquotient(
        ring,
        &[0],
        &gens
            .iter()
            .map(|g| PolyVector::unit(ring.nvars(), 1, 0, g.clone()))
            .collect::<Vec<_>>(),
        &[],
    )?;
    Ok(module_annihilator(&m))
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleRow {
    pub n: usize,
    pub contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleLemmaReport {
    pub socle: Vec<String>,
    pub rows: Vec<SocleRow>,
    pub holds: bool,
}

/// Soc(R) annihilates every positive syzygy of every module.
pub fn socle_lemma_check<K: Field>(
    m: &PresentedModule<K>,
    n_max: usize,
) -> Result<SocleLemmaReport> {
    let ring = m.ring().clone();
    let field = ring.field().clone();
    let soc = socle_ideal(&ring)?;
    let res = minimal_free_resolution(m, n_max + 1);
    let mut rows = vec![];
    for n in 1..=n_max {
        let syz = res.syzygy_module(n);
        let gb = syz.relations_gb();
        let shifts: Vec<i64> = syz.cover().iter().map(|s| -s).collect();
        let mut contained = true;
        'outer: for s in &soc {
            for v in 0..syz.cover_rank() {
                let col = PolyVector::unit(ring.nvars(), syz.cover_rank(), v, s.clone());
                if !normal_form_against(&ring, &shifts, &gb, &col).is_zero() {
                    contained = false;
                    break 'outer;
                }
            }
        }
        rows.push(SocleRow { n, contained });
    }
    let holds = rows.iter().all(|r| r.contained);
    Ok(SocleLemmaReport {
        socle: soc.iter().map(|s| format_poly(&field, ring.vars(), s)).collect(),
        rows,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TakahashiRow {
    pub n: usize,
    pub transported_betti: Vec<usize>,
    pub predicted_betti: Vec<usize>,
    pub betti_match: bool,
    pub hilbert_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TakahashiReport {
    pub ell: String,
    pub rows: Vec<TakahashiRow>,
    pub holds: bool,
}

/// Killing a linear regular element decomposes syzygies of k:
/// Omega_n(k) (x) R/(ell) matches Omega_n(k) + Omega_{n-1}(k) over the
/// quotient, in Betti numbers and Hilbert function.
pub fn takahashi_check<K: Field>(
    ring: &GradedRing<K>,
    ell: &Polynomial<K>,
    n_max: usize,
    betti_depth: usize,
) -> Result<TakahashiReport> {
    let field = ring.field().clone();
    let lq = quotient_by_linear_regular(ring, ell)?;
    let k = PresentedModule::residue_field(ring.clone());
    let res = minimal_free_resolution(&k, n_max + 1);
    let kbar = PresentedModule::residue_field(lq.target.clone());
    let res_bar = minimal_free_resolution(&kbar, n_max + betti_depth + 1);
    let mut rows = vec![];
    for n in 1..=n_max {
        let transported = lq.transport(&res.syzygy_module(n))?;
        let tres = minimal_free_resolution(&transported, betti_depth);
        let transported_betti: Vec<usize> =
            (0..=betti_depth).map(|i| tres.betti(i)).collect();
        let predicted_betti: Vec<usize> = (0..=betti_depth)
            .map(|i| res_bar.betti(n + i) + res_bar.betti(n - 1 + i))
            .collect();
        let betti_match = transported_betti == predicted_betti;
        let h_t = hilbert_series(&transported);
        let mut h_p = hilbert_series(&res_bar.syzygy_module(n));
        let h_q = hilbert_series(&res_bar.syzygy_module(n - 1));
        h_p.numerator = h_p.numerator.add(&h_q.numerator.shift(1));
        let hilbert_match = h_t.numerator == h_p.numerator;
        rows.push(TakahashiRow { n, transported_betti, predicted_betti, betti_match, hilbert_match });
    }
    let holds = rows.iter().all(|r| r.betti_match && r.hilbert_match);
    Ok(TakahashiReport {
        ell: format_poly(&field, ring.vars(), ell),
        rows,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct McmCertificate {
    pub dim: i64,
    pub depth: i64,
    pub mu: usize,
    pub provenance: String,
}

pub struct SyzygyImage<K: Field> {
    pub module: PresentedModule<K>,
    pub certificate: Option<McmCertificate>,
    pub refusal: Option<String>,
}

/// Builds a quotient of a direct sum of syzygy modules of `base` and
/// certifies the result maximal Cohen-Macaulay. A zero or non-MCM result
/// keeps the module but withholds the certificate.
pub fn syzygy_image<K: Field>(
    base: &PresentedModule<K>,
    parts: &[(usize, usize)],
    quotient_cols: &[PolyVector<K>],
) -> Result<SyzygyImage<K>> {
    if parts.is_empty() {
        return Err(AlgebraError::InvalidInput("no syzygy parts requested".into()));
    }
    let ring = base.ring().clone();
    let n_hi = parts.iter().map(|&(n, _)| n).max().unwrap();
    let res = minimal_free_resolution(base, n_hi + 1);
    let mut syzygies = vec![];
    for &(n, copies) in parts {
        if copies == 0 {
            return Err(AlgebraError::InvalidInput("zero copies requested".into()));
        }
        let syz = res.syzygy_module(n);
        for _ in 0..copies {
            syzygies.push(syz.clone());
        }
    }
    let refs: Vec<&PresentedModule<K>> = syzygies.iter().collect();
    let sum = PresentedModule::direct_sum(&refs)?;
    let module = if quotient_cols.is_empty() {
        sum
    } else {
        sum.quotient_by(quotient_cols)?
    };
    let provenance = format!(
        "quotient of {}",
        parts
            .iter()
            .map(|&(n, c)| format!("syzygy({})^{}", n, c))
            .collect::<Vec<_>>()
            .join(" + ")
    );
    if module.is_zero_module_quick() {
        return Ok(SyzygyImage {
            module,
            certificate: None,
            refusal: Some("image is the zero module".into()),
        });
    }
    let class = classify_ring(&ring);
    let dm = depth(&module).unwrap();
    if dm != class.dim {
        return Ok(SyzygyImage {
            module,
            certificate: None,
            refusal: Some(format!(
                "image is not maximal Cohen-Macaulay: depth {}, dim {}",
                dm, class.dim
            )),
        });
    }
    let m_mu = mu(&module);
    Ok(SyzygyImage {
        module,
        certificate: Some(McmCertificate { dim: class.dim, depth: dm, mu: m_mu, provenance }),
        refusal: None,
    })
}

/// Syzygy module out of a cached resolution, as a convenience for the
/// scans above.
pub fn syzygy_from<K: Field>(res: &Resolution<K>, n: usize) -> PresentedModule<K> {
    res.syzygy_module(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::Monomial;
    use crate::resolve::syzygy_of;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn mono_ring(vars: Vec<&str>, gens: &[&[u32]]) -> GradedRing<Fp> {
        let f = fp();
        let n = vars.len();
        let ideal = gens
            .iter()
            .map(|e| Polynomial::from_terms(&f, n, vec![(Monomial::from_exps(e), 1)]))
            .collect();
        GradedRing::define(f, vars.into_iter().map(String::from).collect(), ideal).unwrap()
    }

    fn r1() -> GradedRing<Fp> {
        mono_ring(vec!["x", "y"], &[&[1, 1]])
    }

    fn r2() -> GradedRing<Fp> {
        mono_ring(vec!["x", "y"], &[&[2, 0], &[1, 1], &[0, 2]])
    }

    fn ideal_module(ring: &GradedRing<Fp>, exps: &[&[u32]]) -> PresentedModule<Fp> {
        let f = ring.field().clone();
        let gens: Vec<Polynomial<Fp>> = exps
            .iter()
            .map(|e| Polynomial::from_terms(&f, ring.nvars(), vec![(Monomial::from_exps(e), 1)]))
            .collect();
        let cols: Vec<PolyVector<Fp>> = gens
            .into_iter()
            .map(|g| PolyVector::unit(ring.nvars(), 1, 0, g))
            .collect();
        crate::module::present_subquotient(ring, &[0], &cols, &[]).unwrap()
    }

    #[test]
    fn trace_of_x_over_hypersurface_is_x() {
        let r = r1();
        let m = ideal_module(&r, &[&[1, 0]]);
        let trace = trace_ideal(&m);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].lead_monomial().unwrap().exps(), &[1, 0]);
        let report = free_summand_report(&m);
        assert!(!report.found);
        assert!(report.witness.is_none());
    }

    #[test]
    fn explicit_free_summand_is_witnessed() {
        let r = r2();
        let free = PresentedModule::ring_module(r.clone());
        let max = ideal_module(&r, &[&[1, 0], &[0, 1]]);
        let m = PresentedModule::direct_sum(&[&free, &max]).unwrap();
        let report = free_summand_report(&m);
        assert!(report.found);
        let w = report.witness.unwrap();
        assert_eq!(w.hom[w.position], "1");
        assert_eq!(report.trace, vec!["1"]);
    }

    #[test]
    fn second_syzygy_over_regular_ring_is_free() {
        let s = mono_ring(vec!["x", "y"], &[]);
        let k = PresentedModule::residue_field(s);
        let syz = syzygy_of(&k, 2);
        assert!(has_free_summand(&syz));
    }

    #[test]
    fn ring_is_semidualizing_over_itself() {
        let r = r1();
        let m = PresentedModule::ring_module(r);
        let report = is_semidualizing_up_to(&m, 2);
        assert!(report.yes_up_to_bound, "{:?}", report.failure);
    }

    #[test]
    fn residue_field_is_not_semidualizing() {
        let r = r2();
        let k = PresentedModule::residue_field(r);
        let report = is_semidualizing_up_to(&k, 1);
        assert!(!report.yes_up_to_bound);
        assert!(!report.faithful);
    }

    #[test]
    fn canonical_module_is_semidualizing() {
        let r = r2();
        let omega = canonical_module(&r).unwrap();
        let report = is_semidualizing_up_to(&omega, 3);
        assert!(report.yes_up_to_bound, "{:?}", report.failure);
    }

    #[test]
    fn omega_scan_detects_gorenstein_hypersurface() {
        let scan = gorenstein_scan_syzygies_of_omega(&r1(), 3).unwrap();
        assert_eq!(scan.found_at, vec![0]);
        assert!(scan.holds && scan.gorenstein && scan.agreement);
    }

    #[test]
    fn omega_scan_finds_nothing_on_short_ring() {
        let scan = gorenstein_scan_syzygies_of_omega(&r2(), 3).unwrap();
        assert!(scan.found_at.is_empty());
        assert!(!scan.holds && !scan.gorenstein && scan.agreement);
    }

    #[test]
    fn sharpness_example_has_unit_runs_only() {
        let r = r1();
        let m = ideal_module(&r, &[&[1, 0]]);
        let verdict = regularity_criterion(&m, &m, 4).unwrap();
        assert_eq!(verdict.window, 2);
        assert!(!verdict.window_found);
        assert_eq!(verdict.window_verdict, "inconclusive-by-theorem");
        for scan in &verdict.scans {
            assert_eq!(scan.max_zero_run, 1, "{:?}", scan);
        }
        assert!(!verdict.holds && !verdict.classifier && verdict.agreement);
    }

    #[test]
    fn free_modules_over_regular_ring_establish_regularity() {
        let s = mono_ring(vec!["x", "y"], &[]);
        let m = PresentedModule::ring_module(s);
        let verdict = regularity_criterion(&m, &m, 3).unwrap();
        assert!(verdict.window_found && verdict.holds && verdict.classifier);
        assert!(verdict.agreement);
    }

    #[test]
    fn regularity_criterion_refuses_small_bound() {
        let r = r1();
        let m = ideal_module(&r, &[&[1, 0]]);
        let err = regularity_criterion(&m, &m, 1).unwrap_err();
        assert!(matches!(err, AlgebraError::HypothesisNotMet(_)));
    }

    #[test]
    fn regularity_criterion_refuses_non_mcm_module() {
        let r = r1();
        let k = PresentedModule::residue_field(r);
        let err = regularity_criterion(&k, &k, 4).unwrap_err();
        assert!(matches!(err, AlgebraError::HypothesisNotMet(_)));
    }

    #[test]
    fn gorenstein_ext_criterion_on_hypersurface() {
        let r = r1();
        let l = syzygy_of(&PresentedModule::residue_field(r), 1);
        let verdict = gorenstein_criterion_ext(&l, 3).unwrap();
        assert!(verdict.window_found && verdict.holds && verdict.classifier);
        assert!(verdict.agreement);
    }

    #[test]
    fn gorenstein_omega_criterion_on_short_ring() {
        let r = r2();
        let k = PresentedModule::residue_field(r);
        let verdict = gorenstein_criterion_omega(&k, 3).unwrap();
        assert_eq!(verdict.window, 1);
        assert!(!verdict.window_found && !verdict.holds && !verdict.classifier);
        assert!(verdict.agreement);
    }

    #[test]
    fn first_syzygy_over_hypersurface_is_totally_reflexive() {
        let r = r1();
        let l = syzygy_of(&PresentedModule::residue_field(r), 1);
        let report = gdim_zero_up_to(&l, 3);
        assert!(report.zero_up_to_bound, "{:?}", report.failure);
    }

    #[test]
    fn residue_field_fails_biduality_over_short_ring() {
        let r = r2();
        let k = PresentedModule::residue_field(r);
        let report = gdim_zero_up_to(&k, 1);
        assert!(!report.zero_up_to_bound);
        assert!(!report.biduality_iso);
    }

    #[test]
    fn socle_lemma_on_short_ring() {
        let r = r2();
        let k = PresentedModule::residue_field(r.clone());
        let report = socle_lemma_check(&k, 3).unwrap();
        assert_eq!(report.socle, vec!["x", "y"]);
        assert!(report.holds);
    }

    #[test]
    fn takahashi_decomposition_over_hypersurface() {
        let r = r1();
        let f = r.field().clone();
        let ell = Polynomial::var(&f, 2, 0).add(&f, &Polynomial::var(&f, 2, 1));
        let report = takahashi_check(&r, &ell, 3, 2).unwrap();
        assert!(report.holds, "{:?}", report.rows);
        for row in &report.rows {
            assert_eq!(row.transported_betti[0], 2);
        }
    }

    #[test]
    fn syzygy_image_projects_onto_summand() {
        let r = r1();
        let k = PresentedModule::residue_field(r.clone());
        let whole = syzygy_image(&k, &[(1, 1)], &[]).unwrap();
        let cert = whole.certificate.expect("maximal ideal is MCM here");
        assert_eq!(cert.mu, 2);
        let cover = whole.module.cover_rank();
        let kill = PolyVector::unit(r.nvars(), cover, 1, Polynomial::one(r.field(), r.nvars()));
        let image = syzygy_image(&k, &[(1, 1)], &[kill]).unwrap();
        let cert = image.certificate.expect("cyclic image is MCM");
        assert_eq!(cert.mu, 1);
        let both: Vec<PolyVector<Fp>> = (0..cover)
            .map(|v| PolyVector::unit(r.nvars(), cover, v, Polynomial::one(r.field(), r.nvars())))
            .collect();
        let zero = syzygy_image(&k, &[(1, 1)], &both).unwrap();
        assert!(zero.certificate.is_none());
        assert!(zero.refusal.unwrap().contains("zero"));
    }

    #[test]
    fn no_summand_audit_over_hypersurface() {
        let r = r1();
        let k = PresentedModule::residue_field(r);
        let audit = no_summand_audit(&k, 3);
        assert_eq!(audit.window_start, 2);
        assert!(audit.holds);
        assert!(audit.entries.iter().all(|e| !e.free_summand));
    }

    #[test]
    fn dutta_scan_separates_regular_from_singular() {
        let s = mono_ring(vec!["x", "y"], &[]);
        let scan = dutta_scan(&s, 3);
        assert_eq!(scan.found_at, vec![2]);
        assert!(scan.regular && scan.agreement);
        let scan = dutta_scan(&r2(), 3);
        assert!(scan.found_at.is_empty());
        assert!(!scan.regular && scan.agreement);
    }
}
