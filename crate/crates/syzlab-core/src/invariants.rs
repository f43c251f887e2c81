//! Ring-level invariants and classification: dimension, depth,
//! multiplicity, canonical module, Cohen-Macaulay type.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_series, ring_hilbert, HilbertSeries};
use crate::homology::ext_module;
use crate::module::PresentedModule;
use crate::resolve::{depth, minimal_presentation, mu, over_ambient};
use crate::ring::GradedRing;

#[derive(Clone, Debug, Serialize)]
pub struct RingClassification {
    pub dim: i64,
    pub depth: i64,
    pub multiplicity: i64,
    pub embedding_dim: i64,
    pub regular: bool,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    /// mu of the canonical module; only defined in the Cohen-Macaulay case.
    pub cm_type: Option<u64>,
    pub minimal_multiplicity: bool,
}

pub fn ring_dim<K: Field>(ring: &GradedRing<K>) -> i64 {
    ring_hilbert(ring).dim
}

pub fn ring_depth<K: Field>(ring: &GradedRing<K>) -> i64 {
    depth(&PresentedModule::ring_module(ring.clone())).expect("a ring is nonzero")
}

/// The graded canonical module Ext^c_S(R, S(-n)), presented over R.
/// Requires R Cohen-Macaulay so that the module deserves the name.
pub fn canonical_module<K: Field>(ring: &GradedRing<K>) -> Result<PresentedModule<K>> {
    let n = ring.nvars();
    let rm = PresentedModule::ring_module(ring.clone());
    let hs = ring_hilbert(ring);
    let dep = depth(&rm).expect("a ring is nonzero");
    if dep != hs.dim {
        return Err(AlgebraError::NotCohenMacaulay(format!(
            "depth {} differs from dimension {}",
            dep, hs.dim
        )));
    }
    if ring.is_ambient() {
        return Ok(PresentedModule::free(ring.clone(), vec![n as i64]));
    }
    let ambient = ring.ambient();
    let r_over_s = over_ambient(&rm);
    let s_module = PresentedModule::ring_module(ambient);
    let c = (n as i64 - hs.dim) as usize;
    let omega_s = ext_module(&r_over_s, &s_module, c).shifted(n as i64);
    let min = minimal_presentation(&omega_s);
    PresentedModule::new(ring.clone(), min.cover().to_vec(), min.relations().clone())
}

/// Cohen-Macaulay type: minimal generator count of the canonical module.
pub fn cm_type<K: Field>(ring: &GradedRing<K>) -> Result<u64> {
    let omega = canonical_module(ring)?;
    Ok(mu(&omega) as u64)
}

pub fn classify_ring<K: Field>(ring: &GradedRing<K>) -> RingClassification {
    let hs = ring_hilbert(ring);
    let dim = hs.dim;
    let dep = ring_depth(ring);
    let embedding_dim = hs.value(1);
    let regular = embedding_dim == dim;
    let cohen_macaulay = dep == dim;
    let cm_type = if cohen_macaulay {
        Some(cm_type(ring).expect("CM was just checked"))
    } else {
        None
    };
    let gorenstein = cohen_macaulay && cm_type == Some(1);
    let minimal_multiplicity = hs.multiplicity == embedding_dim - dim + 1;
    RingClassification {
        dim,
        depth: dep,
        multiplicity: hs.multiplicity,
        embedding_dim,
        regular,
        cohen_macaulay,
        gorenstein,
        cm_type,
        minimal_multiplicity,
    }
}

/// Depth read off as the first nonvanishing Ext^i(k, M); a cross-check
/// for the resolution-based depth.
pub fn depth_via_ext<K: Field>(m: &PresentedModule<K>, bound: usize) -> Option<i64> {
    let k = PresentedModule::residue_field(m.ring().clone());
    let exts = crate::homology::ext_range(&k, m, bound);
    exts.iter()
        .position(|e| !e.is_zero_module_quick())
        .map(|i| i as i64)
}

pub fn module_hilbert<K: Field>(m: &PresentedModule<K>) -> HilbertSeries {
    hilbert_series(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::Monomial;
    use crate::poly::Polynomial;

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

    #[test]
    fn polynomial_ring_is_regular() {
        let s = mono_ring(vec!["x", "y"], &[]);
        let c = classify_ring(&s);
        assert_eq!(c.dim, 2);
        assert_eq!(c.depth, 2);
        assert_eq!(c.multiplicity, 1);
        assert_eq!(c.embedding_dim, 2);
        assert!(c.regular && c.cohen_macaulay && c.gorenstein);
        assert_eq!(c.cm_type, Some(1));
        assert!(c.minimal_multiplicity);
    }

    #[test]
    fn hypersurface_is_gorenstein_not_regular() {
        let r1 = mono_ring(vec!["x", "y"], &[&[1, 1]]);
        let c = classify_ring(&r1);
        assert_eq!(c.dim, 1);
        assert_eq!(c.depth, 1);
        assert_eq!(c.multiplicity, 2);
        assert!(!c.regular);
        assert!(c.cohen_macaulay);
        assert!(c.gorenstein);
        assert_eq!(c.cm_type, Some(1));
        assert!(c.minimal_multiplicity);
    }

    #[test]
    fn short_ring_has_type_two() {
        let r2 = mono_ring(vec!["x", "y"], &[&[2, 0], &[1, 1], &[0, 2]]);
        let c = classify_ring(&r2);
        assert_eq!(c.dim, 0);
        assert_eq!(c.depth, 0);
        assert_eq!(c.multiplicity, 3);
        assert!(c.cohen_macaulay);
        assert!(!c.gorenstein);
        assert_eq!(c.cm_type, Some(2));
        assert!(c.minimal_multiplicity);
    }

    #[test]
    fn one_dimensional_short_ring() {
        let r4 = mono_ring(vec!["x", "y", "z"], &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let c = classify_ring(&r4);
        assert_eq!(c.dim, 1);
        assert_eq!(c.depth, 1);
        assert_eq!(c.multiplicity, 3);
        assert_eq!(c.embedding_dim, 3);
        assert!(c.cohen_macaulay);
        assert_eq!(c.cm_type, Some(2));
        assert!(!c.gorenstein);
        assert!(c.minimal_multiplicity);
    }

    #[test]
    fn artinian_gorenstein_line() {
        let r = mono_ring(vec!["x"], &[&[2]]);
        let c = classify_ring(&r);
        assert_eq!(c.dim, 0);
        assert_eq!(c.multiplicity, 2);
        assert!(c.gorenstein);
        assert_eq!(c.cm_type, Some(1));
    }

    #[test]
    fn non_cm_ring_refuses_a_canonical_module() {
        let r = mono_ring(vec!["x", "y"], &[&[2, 0], &[1, 1]]);
        let c = classify_ring(&r);
        assert_eq!(c.dim, 1);
        assert_eq!(c.depth, 0);
        assert!(!c.cohen_macaulay);
        assert_eq!(c.cm_type, None);
        assert!(canonical_module(&r).is_err());
    }

    #[test]
    fn canonical_module_degrees_for_short_ring() {
        let r2 = mono_ring(vec!["x", "y"], &[&[2, 0], &[1, 1], &[0, 2]]);
        let omega = canonical_module(&r2).unwrap();
        let min = minimal_presentation(&omega);
        assert_eq!(min.cover(), &[-1, -1]);
        let hs = hilbert_series(&omega);
        assert_eq!(hs.value(-1), 2);
        assert_eq!(hs.value(0), 1);
        assert_eq!(hs.total_length(), Some(3));
    }

    #[test]
    fn depth_cross_check_via_ext() {
        let r1 = mono_ring(vec!["x", "y"], &[&[1, 1]]);
        let rm = PresentedModule::ring_module(r1.clone());
        assert_eq!(depth_via_ext(&rm, 2), Some(1));
        assert_eq!(depth(&rm), Some(1));
        let k = PresentedModule::residue_field(r1);
        assert_eq!(depth_via_ext(&k, 2), Some(0));
    }
}
