//! Ring and module ingestion: file paths, inline JSON, and the short
//! module expressions accepted by every `--module` style flag.

use std::fs;

use serde::Deserialize;
use syzlab_core::criteria::{syzygy_image, McmCertificate};
use syzlab_core::error::{AlgebraError, Result};
use syzlab_core::field::{Field, Fp, Rationals};
use syzlab_core::invariants::canonical_module;
use syzlab_core::module::{present_subquotient, PresentedModule};
use syzlab_core::parse::{build_module, build_ring, parse_poly, ModuleDescription, RingDescription};
use syzlab_core::resolve::syzygy_of;
use syzlab_core::ring::GradedRing;
use syzlab_core::vector::PolyVector;

pub enum AnyRing {
    Fp(RingDescription, GradedRing<Fp>),
    Rat(RingDescription, GradedRing<Rationals>),
}

/// Accepts a file path or inline JSON (anything starting with `{`).
pub fn load_ring(arg: &str) -> Result<AnyRing> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| AlgebraError::InvalidInput(format!("cannot read {}: {}", arg, e)))?
    };
    let desc: RingDescription = serde_json::from_str(&text)
        .map_err(|e| AlgebraError::Parse(format!("ring description: {}", e)))?;
    if desc.field.characteristic == 0 {
        let ring = build_ring(Rationals, &desc)?;
        Ok(AnyRing::Rat(desc, ring))
    } else {
        let p = Fp::new(desc.field.characteristic)
            .map_err(|_| AlgebraError::NonPrimeCharacteristic(desc.field.characteristic))?;
        let ring = build_ring(p, &desc)?;
        Ok(AnyRing::Fp(desc, ring))
    }
}

/// Runs a closure against whichever field the ring was defined over.
#[macro_export]
macro_rules! with_ring {
    ($any:expr, |$desc:ident, $r:ident| $body:expr) => {
        match &$any {
            $crate::input::AnyRing::Fp($desc, $r) => $body,
            $crate::input::AnyRing::Rat($desc, $r) => $body,
        }
    };
}

pub struct LoadedModule<K: Field> {
    pub module: PresentedModule<K>,
    /// Present when the expression was a syzygy builder and the image
    /// was certified maximal Cohen-Macaulay.
    pub certificate: Option<McmCertificate>,
    pub refusal: Option<String>,
}

fn plain<K: Field>(module: PresentedModule<K>) -> LoadedModule<K> {
    LoadedModule { module, certificate: None, refusal: None }
}

/// Module expressions:
///   k                 residue field
///   R                 the ring as a module over itself
///   omega             canonical module
///   (f1, f2, ...)     ideal generated by the listed polynomials
///   syz(n, expr)      n-th syzygy of another expression
///   @file.json        description file
///   { ... }           inline JSON: generators, presentation, or builder
pub fn load_module<K: Field>(ring: &GradedRing<K>, spec: &str) -> Result<LoadedModule<K>> {
    let s = spec.trim();
    if s == "k" {
        return Ok(plain(PresentedModule::residue_field(ring.clone())));
    }
    if s == "R" {
        return Ok(plain(PresentedModule::ring_module(ring.clone())));
    }
    if s == "omega" {
        return Ok(plain(canonical_module(ring)?));
    }
    if let Some(rest) = s.strip_prefix("syz(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| AlgebraError::Parse("unclosed syz(...)".into()))?;
        let (ns, ms) = inner
            .split_once(',')
            .ok_or_else(|| AlgebraError::Parse("syz(n, module) takes two arguments".into()))?;
        let n: usize = ns
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad syzygy index {:?}", ns.trim())))?;
        let base = load_module(ring, ms)?;
        return Ok(plain(syzygy_of(&base.module, n)));
    }
    if let Some(rest) = s.strip_prefix('(') {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| AlgebraError::Parse("unclosed ideal (...)".into()))?;
        let mut cols = vec![];
        for part in inner.split(',') {
            if part.trim().is_empty() {
                return Err(AlgebraError::Parse("empty ideal generator".into()));
            }
            let f = parse_poly(ring.field(), ring.vars(), part)?;
            cols.push(PolyVector::from_dense(ring.nvars(), vec![f]));
        }
        return Ok(plain(present_subquotient(ring, &[0], &cols, &[])?));
    }
    if let Some(path) = s.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| AlgebraError::InvalidInput(format!("cannot read {}: {}", path, e)))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| AlgebraError::Parse(format!("{}: {}", path, e)))?;
        return module_from_json(ring, &v);
    }
    if s.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| AlgebraError::Parse(format!("module JSON: {}", e)))?;
        return module_from_json(ring, &v);
    }
    Err(AlgebraError::InvalidInput(format!(
        "unrecognized module expression {:?}; try \"k\", \"R\", \"omega\", \"(x, y^2)\", \
         \"syz(2, k)\", \"@file.json\", or inline JSON",
        s
    )))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuilderSpec {
    base: String,
    /// Pairs (n, copies): the direct sum takes `copies` copies of the
    /// n-th syzygy of `base`.
    parts: Vec<(usize, usize)>,
    #[serde(default)]
    quotient: Vec<Vec<String>>,
}

fn module_from_json<K: Field>(
    ring: &GradedRing<K>,
    v: &serde_json::Value,
) -> Result<LoadedModule<K>> {
    if v.get("parts").is_some() {
        let spec: BuilderSpec = serde_json::from_value(v.clone())
            .map_err(|e| AlgebraError::Parse(format!("builder spec: {}", e)))?;
        let base = load_module(ring, &spec.base)?;
        let mut cols = vec![];
        for col in &spec.quotient {
            let mut polys = vec![];
            for entry in col {
                polys.push(parse_poly(ring.field(), ring.vars(), entry)?);
            }
            cols.push(PolyVector::from_dense(ring.nvars(), polys));
        }
        let image = syzygy_image(&base.module, &spec.parts, &cols)?;
        return Ok(LoadedModule {
            module: image.module,
            certificate: image.certificate,
            refusal: image.refusal,
        });
    }
    let desc = ModuleDescription::from_json(v)?;
    Ok(plain(build_module(ring, &desc)?))
}

pub fn degree_cap() -> i64 {
    std::env::var("SYZLAB_DEGREE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| AlgebraError::Parse(format!("range {:?} is not of the form a..b", s)))?;
    let lo: usize = a
        .trim()
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("bad range start {:?}", a)))?;
    let hi: usize = b
        .trim()
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("bad range end {:?}", b)))?;
    if lo > hi {
        return Err(AlgebraError::InvalidInput(format!("empty range {}..{}", lo, hi)));
    }
    Ok((lo, hi))
}
