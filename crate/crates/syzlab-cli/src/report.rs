//! Report assembly. JSON is the machine format; the text views are
//! derived from the same data and never carry extra information.

use serde_json::{json, Value};
use syzlab_core::field::Field;
use syzlab_core::hilbert::{HilbertSeries, Laurent};
use syzlab_core::module::PresentedModule;
use syzlab_core::parse::format_vector;

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Process exit status: 0, or 3 when an internal cross-check failed.
    pub status: i32,
}

impl Report {
    pub fn ok(json: Value, text: String) -> Report {
        Report { json, text, status: 0 }
    }

    pub fn checked(json: Value, text: String, agreed: bool) -> Report {
        Report { json, text, status: if agreed { 0 } else { 3 } }
    }
}

pub fn kv(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{:<width$} : {}\n", k, v, width = width));
    }
    out
}

/// Aligned table: numeric columns right-aligned, the last column left.
pub fn grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let ncols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut render = |cells: Vec<String>| {
        let mut line = String::new();
        for i in 0..ncols {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 == ncols {
                line.push_str(&format!("{:<width$}", cells[i], width = widths[i]));
            } else {
                line.push_str(&format!("{:>width$}", cells[i], width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    render(headers.iter().map(|h| h.to_string()).collect());
    render(widths.iter().map(|w| "-".repeat(*w)).collect());
    for row in rows {
        render(row.clone());
    }
    out
}

pub fn yesno(b: bool) -> String {
    if b { "yes".into() } else { "no".into() }
}

pub fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |x| x.to_string())
}

pub fn laurent_json(l: &Laurent) -> Value {
    json!({ "offset": l.offset, "coeffs": l.coeffs })
}

pub fn laurent_text(l: &Laurent) -> String {
    if l.coeffs.is_empty() {
        return "0".into();
    }
    let mut terms = vec![];
    for (i, &c) in l.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let d = l.offset + i as i64;
        let body = match d {
            0 => format!("{}", c.abs()),
            1 if c.abs() == 1 => "t".into(),
            1 => format!("{}*t", c.abs()),
            _ if c.abs() == 1 => format!("t^{}", d),
            _ => format!("{}*t^{}", c.abs(), d),
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{}", body) } else { body });
        } else {
            terms.push(format!("{} {}", if c < 0 { "-" } else { "+" }, body));
        }
    }
    terms.join(" ")
}

pub fn series_json(h: &HilbertSeries, lo: i64, hi: i64) -> Value {
    let values: Vec<Value> = h.values(lo, hi).iter().map(|&(d, v)| json!([d, v])).collect();
    json!({
        "numerator": laurent_json(&h.numerator),
        "reduced": laurent_json(&h.reduced),
        "denom_power": h.denom_power,
        "dim": h.dim,
        "multiplicity": h.multiplicity,
        "min_degree": h.min_degree(),
        "total_length": h.total_length(),
        "values": values,
    })
}

/// Emits a module in the presentation-description schema, so the output
/// re-parses with the same meaning.
pub fn presentation_json<K: Field>(m: &PresentedModule<K>) -> Value {
    let ring = m.ring();
    let field = ring.field();
    let vars = ring.vars();
    let relations: Vec<Vec<String>> = m
        .relations()
        .cols()
        .iter()
        .map(|c| format_vector(field, vars, c))
        .collect();
    json!({ "shifts": m.cover(), "relations": relations })
}

pub fn presentation_text<K: Field>(m: &PresentedModule<K>) -> String {
    let ring = m.ring();
    let field = ring.field();
    let vars = ring.vars();
    let shifts: Vec<String> = m.cover().iter().map(|s| s.to_string()).collect();
    let mut out = format!("cover shifts : {}\n", shifts.join(" "));
    let cols = m.relations().cols();
    if cols.is_empty() {
        out.push_str("relations    : none (free)\n");
        return out;
    }
    out.push_str("relations    :\n");
    let rendered: Vec<Vec<String>> = cols.iter().map(|c| format_vector(field, vars, c)).collect();
    for r in 0..m.cover_rank() {
        let row: Vec<String> = rendered.iter().map(|c| c[r].clone()).collect();
        out.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    out
}

pub fn dims_line(dims: &[Option<i64>]) -> String {
    dims.iter()
        .map(|d| d.map_or("inf".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}
