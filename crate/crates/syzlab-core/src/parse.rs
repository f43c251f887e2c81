//! Text form of polynomials and the JSON descriptions of rings and modules.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' uint)?
//! coeff  := uint ('/' uint)?
//! ```
//!
//! Multiplication is always explicit (`3*x^2*y`, never `3x^2y`), there are
//! no parentheses, and `/` only appears inside a coefficient literal.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::module::{present_subquotient, PresentedModule};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::GradedRing;
use crate::vector::PolyVector;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut toks = vec![];
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                it.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                it.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                it.next();
                toks.push(Tok::Star);
            }
            '^' => {
                it.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                it.next();
                toks.push(Tok::Slash);
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as u64))
                            .ok_or_else(|| {
                                AlgebraError::Parse("integer literal too large".into())
                            })?;
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => {
                return Err(AlgebraError::Parse(format!(
                    "unexpected character '{}'",
                    other
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a, K: Field> {
    field: &'a K,
    vars: &'a [String],
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a, K: Field> Parser<'a, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown variable '{}'", name)))
    }

    fn int_as_i64(n: u64) -> Result<i64> {
        i64::try_from(n).map_err(|_| AlgebraError::Parse("integer literal too large".into()))
    }

    fn parse_uint(&mut self, what: &str) -> Result<u64> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(AlgebraError::Parse(format!("expected {}", what))),
        }
    }

    /// One `factor`, returning (variable index, exponent).
    fn parse_factor(&mut self, name: String) -> Result<(usize, u32)> {
        let idx = self.var_index(&name)?;
        let exp = if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let e = self.parse_uint("exponent after '^'")?;
            u32::try_from(e).map_err(|_| AlgebraError::Parse("exponent too large".into()))?
        } else {
            1
        };
        Ok((idx, exp))
    }

    fn parse_term(&mut self, negate: bool) -> Result<(Monomial, K::Elem)> {
        let nvars = self.vars.len();
        let mut coeff = self.field.one();
        let mut exps = vec![0u32; nvars];
        let mut saw_factor = false;

        match self.next() {
            Some(Tok::Int(n)) => {
                let num = Self::int_as_i64(n)?;
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    let d = self.parse_uint("denominator after '/'")?;
                    let den = Self::int_as_i64(d)?;
                    let den_elem = self.field.from_i64(den);
                    if self.field.is_zero(&den_elem) {
                        return Err(AlgebraError::Parse(format!(
                            "denominator {} is zero in the coefficient field",
                            den
                        )));
                    }
                    coeff = self.field.from_fraction(num, den);
                } else {
                    coeff = self.field.from_i64(num);
                }
            }
            Some(Tok::Ident(name)) => {
                let (idx, e) = self.parse_factor(name)?;
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| AlgebraError::Parse("exponent too large".into()))?;
                saw_factor = true;
            }
            _ => return Err(AlgebraError::Parse("expected a term".into())),
        }

        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            match self.next() {
                Some(Tok::Ident(name)) => {
                    let (idx, e) = self.parse_factor(name)?;
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| AlgebraError::Parse("exponent too large".into()))?;
                    saw_factor = true;
                }
                _ => return Err(AlgebraError::Parse("expected a variable after '*'".into())),
            }
        }
        let _ = saw_factor;

        if negate {
            coeff = self.field.neg(&coeff);
        }
        Ok((Monomial::from_exps(&exps), coeff))
    }

    fn parse_poly(&mut self) -> Result<Polynomial<K>> {
        let mut terms = vec![];
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                true
            }
            Some(Tok::Plus) => {
                self.next();
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.parse_term(negate)?);
            match self.next() {
                None => break,
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(t) => {
                    return Err(AlgebraError::Parse(format!(
                        "unexpected token {:?} after a term",
                        t
                    )))
                }
            }
        }
        Ok(Polynomial::from_terms(self.field, self.vars.len(), terms))
    }
}

pub fn parse_poly<K: Field>(field: &K, vars: &[String], s: &str) -> Result<Polynomial<K>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let mut p = Parser { field, vars, toks, pos: 0 };
    p.parse_poly()
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = vec![];
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: terms in descending monomial order, coefficients
/// in the field's display form. Parses back to the same polynomial.
pub fn format_poly<K: Field>(field: &K, vars: &[String], f: &Polynomial<K>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().iter().enumerate() {
        let cs = field.format(c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&format_monomial(vars, m));
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&format_monomial(vars, m));
        }
    }
    out
}

pub fn format_vector<K: Field>(field: &K, vars: &[String], v: &PolyVector<K>) -> Vec<String> {
    v.to_dense()
        .iter()
        .map(|f| format_poly(field, vars, f))
        .collect()
}

fn default_characteristic() -> u64 {
    32003
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescription {
    #[serde(default = "default_characteristic")]
    pub characteristic: u64,
}

impl Default for FieldDescription {
    fn default() -> Self {
        FieldDescription { characteristic: default_characteristic() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDescription {
    #[serde(default)]
    pub field: FieldDescription,
    pub vars: Vec<String>,
    /// Generator degrees; only the standard grading (all ones) is accepted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    #[serde(default)]
    pub ideal: Vec<String>,
}

impl RingDescription {
    pub fn validate_degrees(&self) -> Result<()> {
        if let Some(d) = &self.degrees {
            if d.len() != self.vars.len() {
                return Err(AlgebraError::InvalidInput(
                    "degrees list does not match vars".into(),
                ));
            }
            if d.iter().any(|&x| x != 1) {
                return Err(AlgebraError::InvalidInput(
                    "only the standard grading (all degrees 1) is supported".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Module given by generators inside a free module.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsDescription {
    /// Columns; each inner list is one generator, entries indexed by
    /// ambient position.
    pub gens: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_shifts: Option<Vec<i64>>,
}

/// Module given by a free presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDescription {
    pub shifts: Vec<i64>,
    /// Relation columns in cover coordinates.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum ModuleDescription {
    Generators(GeneratorsDescription),
    Presentation(PresentationDescription),
}

impl ModuleDescription {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| AlgebraError::Parse("module description must be an object".into()))?;
        if obj.contains_key("gens") {
            let d: GeneratorsDescription = serde_json::from_value(v.clone())
                .map_err(|e| AlgebraError::Parse(e.to_string()))?;
            Ok(ModuleDescription::Generators(d))
        } else if obj.contains_key("shifts") {
            let d: PresentationDescription = serde_json::from_value(v.clone())
                .map_err(|e| AlgebraError::Parse(e.to_string()))?;
            Ok(ModuleDescription::Presentation(d))
        } else {
            Err(AlgebraError::Parse(
                "module description needs either \"gens\" or \"shifts\"".into(),
            ))
        }
    }
}

pub fn build_ring<K: Field>(field: K, desc: &RingDescription) -> Result<GradedRing<K>> {
    desc.validate_degrees()?;
    let mut ideal = vec![];
    for s in &desc.ideal {
        ideal.push(parse_poly(&field, &desc.vars, s)?);
    }
    GradedRing::define(field, desc.vars.clone(), ideal)
}

pub fn build_module<K: Field>(
    ring: &GradedRing<K>,
    desc: &ModuleDescription,
) -> Result<PresentedModule<K>> {
    let field = ring.field();
    let vars = ring.vars();
    match desc {
        ModuleDescription::Generators(g) => {
            if g.gens.is_empty() {
                return Ok(PresentedModule::zero(ring.clone()));
            }
            let rank = g.gens[0].len();
            let shifts = match &g.ambient_shifts {
                Some(s) => {
                    if s.len() != rank {
                        return Err(AlgebraError::InvalidInput(
                            "ambient_shifts does not match generator length".into(),
                        ));
                    }
                    s.clone()
                }
                None => vec![0; rank],
            };
            let mut gens = vec![];
            for col in &g.gens {
                if col.len() != rank {
                    return Err(AlgebraError::InvalidInput(
                        "generators have inconsistent lengths".into(),
                    ));
                }
                let polys = col
                    .iter()
                    .map(|s| parse_poly(field, vars, s))
                    .collect::<Result<Vec<_>>>()?;
                gens.push(PolyVector::from_dense(ring.nvars(), polys));
            }
            present_subquotient(ring, &shifts, &gens, &[])
        }
        ModuleDescription::Presentation(p) => {
            let rank = p.shifts.len();
            let mut cols = vec![];
            let mut src = vec![];
            for col in &p.relations {
                if col.len() != rank {
                    return Err(AlgebraError::InvalidInput(
                        "relation column does not match shifts".into(),
                    ));
                }
                let polys = col
                    .iter()
                    .map(|s| parse_poly(field, vars, s))
                    .collect::<Result<Vec<_>>>()?;
                let v = PolyVector::from_dense(ring.nvars(), polys);
                if !v.is_homogeneous(&p.shifts) {
                    return Err(AlgebraError::NotHomogeneous(format!(
                        "relation column {:?}",
                        col
                    )));
                }
                match v.degree(&p.shifts) {
                    Some(d) => {
                        src.push(d);
                        cols.push(v);
                    }
                    None => {}
                }
            }
            let relations = PolyMatrix::new(ring.nvars(), p.shifts.clone(), src, cols);
            PresentedModule::new(ring.clone(), p.shifts.clone(), relations)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    fn vars2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parse_and_format_round_trip() {
        let f = Fp::new(32003).unwrap();
        let vars = vars2();
        for s in [
            "x^2 + 2*x*y - y^2",
            "x",
            "0",
            "-x^3",
            "3*x^2*y + x*y^2",
            "x^2 - 1",
        ] {
            let p = parse_poly(&f, &vars, s).unwrap();
            let printed = format_poly(&f, &vars, &p);
            let q = parse_poly(&f, &vars, &printed).unwrap();
            assert_eq!(p, q, "round trip of {}", s);
        }
    }

    #[test]
    fn parser_merges_repeated_variables() {
        let f = Fp::new(32003).unwrap();
        let vars = vars2();
        let a = parse_poly(&f, &vars, "x*x*y").unwrap();
        let b = parse_poly(&f, &vars, "x^2*y").unwrap();
        assert_eq!(a, b);
        let c = parse_poly(&f, &vars, "x + x").unwrap();
        let d = parse_poly(&f, &vars, "2*x").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn rational_coefficients() {
        let q = Rationals;
        let vars = vars2();
        let p = parse_poly(&q, &vars, "1/2*x^2 - 2/3*x*y").unwrap();
        let printed = format_poly(&q, &vars, &p);
        assert_eq!(printed, "1/2*x^2 - 2/3*x*y");
        let back = parse_poly(&q, &vars, &printed).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn parse_errors() {
        let f = Fp::new(32003).unwrap();
        let vars = vars2();
        assert!(parse_poly(&f, &vars, "z").is_err());
        assert!(parse_poly(&f, &vars, "x +").is_err());
        assert!(parse_poly(&f, &vars, "2x").is_err());
        assert!(parse_poly(&f, &vars, "").is_err());
        assert!(parse_poly(&f, &vars, "x^").is_err());
        assert!(parse_poly(&f, &vars, "(x)").is_err());
        assert!(parse_poly(&f, &vars, "1/32003*x").is_err());
    }

    #[test]
    fn ring_description_parses() {
        let v: serde_json::Value = serde_json::from_str(
            r#"{"vars": ["x", "y"], "ideal": ["x*y"]}"#,
        )
        .unwrap();
        let desc: RingDescription = serde_json::from_value(v).unwrap();
        assert_eq!(desc.field.characteristic, 32003);
        let f = Fp::new(desc.field.characteristic).unwrap();
        let ring = build_ring(f, &desc).unwrap();
        assert_eq!(ring.nvars(), 2);
        assert_eq!(ring.gb().len(), 1);
    }

    #[test]
    fn module_descriptions_parse() {
        let f = Fp::new(32003).unwrap();
        let ring = GradedRing::define(f, vars2(), vec![]).unwrap();
        let gens: serde_json::Value =
            serde_json::from_str(r#"{"gens": [["x"], ["y"]]}"#).unwrap();
        let m = build_module(&ring, &ModuleDescription::from_json(&gens).unwrap()).unwrap();
        assert_eq!(m.cover(), &[1, 1]);
        let pres: serde_json::Value =
            serde_json::from_str(r#"{"shifts": [0], "relations": [["x^2"]]}"#).unwrap();
        let m2 = build_module(&ring, &ModuleDescription::from_json(&pres).unwrap()).unwrap();
        assert_eq!(m2.cover(), &[0]);
        assert_eq!(m2.relations().ncols(), 1);
        let bad: serde_json::Value =
            serde_json::from_str(r#"{"shifts": [0], "cols": []}"#).unwrap();
        assert!(ModuleDescription::from_json(&bad).is_err());
    }

    #[test]
    fn unknown_ring_fields_rejected() {
        let v: serde_json::Value = serde_json::from_str(
            r#"{"vars": ["x"], "ideal": [], "extra": 1}"#,
        )
        .unwrap();
        assert!(serde_json::from_value::<RingDescription>(v).is_err());
    }
}
