//! Finitely generated graded modules, stored as presentations:
//! a graded free cover together with a homogeneous relation matrix.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{module_groebner, syzygy_matrix};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::GradedRing;
use crate::vector::PolyVector;

/// A graded free module, recorded by the degrees of its basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule<K: Field> {
    ring: GradedRing<K>,
    cover: Vec<i64>,
    relations: PolyMatrix<K>,
}

impl<K: Field> PresentedModule<K> {
    /// Cokernel presentation. Relation entries are reduced to normal form
    /// against the ring's ideal and trivial columns are dropped.
    pub fn new(ring: GradedRing<K>, cover: Vec<i64>, relations: PolyMatrix<K>) -> Result<Self> {
        if relations.tgt_shifts() != cover.as_slice() {
            return Err(AlgebraError::InvalidInput(
                "relation rows do not match the cover".into(),
            ));
        }
        if relations.nvars() != ring.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: ring.nvars(),
                found: relations.nvars(),
            });
        }
        if !relations.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous("relation matrix".into()));
        }
        let relations = relations
            .map_entries(|f| ring.nf(f))
            .drop_zero_columns();
        Ok(PresentedModule { ring, cover, relations })
    }

    pub fn zero(ring: GradedRing<K>) -> Self {
        let nvars = ring.nvars();
        PresentedModule {
            ring,
            cover: vec![],
            relations: PolyMatrix::zero_cols(nvars, vec![]),
        }
    }

    pub fn free(ring: GradedRing<K>, shifts: Vec<i64>) -> Self {
        let nvars = ring.nvars();
        PresentedModule {
            ring,
            cover: shifts.clone(),
            relations: PolyMatrix::zero_cols(nvars, shifts),
        }
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: GradedRing<K>) -> Self {
        PresentedModule::free(ring, vec![0])
    }

    /// The residue field k = R/m.
    pub fn residue_field(ring: GradedRing<K>) -> Self {
        let nvars = ring.nvars();
        let gens = ring.maximal_ideal_gens();
        let cols = gens
            .into_iter()
            .map(|g| PolyVector::unit(nvars, 1, 0, g))
            .collect::<Vec<_>>();
        let shifts = vec![1i64; cols.len()];
        let relations = PolyMatrix::new(nvars, vec![0], shifts, cols);
        PresentedModule { ring, cover: vec![0], relations }
    }

    /// Cyclic module R/J.
    pub fn cyclic(ring: GradedRing<K>, ideal_gens: &[Polynomial<K>]) -> Result<Self> {
        let nvars = ring.nvars();
        let mut cols = vec![];
        let mut src = vec![];
        for g in ideal_gens {
            if !g.is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous(format!("{:?}", g)));
            }
            let nf = ring.nf(g);
            if nf.is_zero() {
                continue;
            }
            src.push(nf.degree().unwrap() as i64);
            cols.push(PolyVector::unit(nvars, 1, 0, nf));
        }
        let relations = PolyMatrix::new(nvars, vec![0], src, cols);
        PresentedModule::new(ring, vec![0], relations)
    }

    pub fn ring(&self) -> &GradedRing<K> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        self.ring.field()
    }

    pub fn cover(&self) -> &[i64] {
        &self.cover
    }

    pub fn cover_rank(&self) -> usize {
        self.cover.len()
    }

    pub fn relations(&self) -> &PolyMatrix<K> {
        &self.relations
    }

    /// Reduced Groebner basis of the relation submodule (quotient columns
    /// included), used for membership in the presented quotient.
    pub fn relations_gb(&self) -> Vec<PolyVector<K>> {
        module_groebner(
            self.field(),
            self.ring.nvars(),
            &self.cover,
            self.relations.cols(),
            self.ring.gb(),
        )
    }

    /// Shift every generator degree by delta.
    pub fn shifted(&self, delta: i64) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            cover: self.cover.iter().map(|s| s + delta).collect(),
            relations: self.relations.shift_degrees(delta),
        }
    }

    pub fn direct_sum(summands: &[&PresentedModule<K>]) -> Result<Self> {
        assert!(!summands.is_empty());
        let ring = summands[0].ring.clone();
        let nvars = ring.nvars();
        for m in summands {
            if m.ring != ring {
                return Err(AlgebraError::InvalidInput(
                    "direct sum over different rings".into(),
                ));
            }
        }
        let mut cover = vec![];
        let offsets: Vec<usize> = summands
            .iter()
            .map(|m| {
                let o = cover.len();
                cover.extend_from_slice(&m.cover);
                o
            })
            .collect();
        let total = cover.len();
        let mut cols = vec![];
        let mut src = vec![];
        for (m, off) in summands.iter().zip(offsets) {
            for (j, c) in m.relations.cols().iter().enumerate() {
                cols.push(c.embed(total, off));
                src.push(m.relations.src_shifts()[j]);
            }
        }
        let relations = PolyMatrix::new(nvars, cover.clone(), src, cols);
        Ok(PresentedModule { ring, cover, relations })
    }

    /// Quotient by the submodule generated by extra homogeneous columns
    /// in cover coordinates.
    pub fn quotient_by(&self, cols: &[PolyVector<K>]) -> Result<Self> {
        let nvars = self.ring.nvars();
        let mut extra_cols = vec![];
        let mut extra_src = vec![];
        for c in cols {
            if c.rank() != self.cover_rank() {
                return Err(AlgebraError::InvalidInput(
                    "quotient column rank mismatch".into(),
                ));
            }
            if !c.is_homogeneous(&self.cover) {
                return Err(AlgebraError::NotHomogeneous("quotient column".into()));
            }
            let nf = c.map_entries(|f| self.ring.nf(f));
            if let Some(d) = nf.degree(&self.cover) {
                extra_src.push(d);
                extra_cols.push(nf);
            }
        }
        let extra = PolyMatrix::new(nvars, self.cover.clone(), extra_src, extra_cols);
        PresentedModule::new(self.ring.clone(), self.cover.clone(), self.relations.hstack(&extra))
    }
}

/// Present the submodule of a free module generated by `gens`, modulo the
/// optional submodule spanned by `modded`: cover = surviving generators,
/// relations = syzygies relative to `modded`.
pub fn present_subquotient<K: Field>(
    ring: &GradedRing<K>,
    ambient_shifts: &[i64],
    gens: &[PolyVector<K>],
    modded: &[PolyVector<K>],
) -> Result<PresentedModule<K>> {
    let nvars = ring.nvars();
    let field = ring.field();
    let mut kept = vec![];
    let mut kept_deg = vec![];
    for g in gens {
        if !g.is_homogeneous(ambient_shifts) {
            return Err(AlgebraError::NotHomogeneous("submodule generator".into()));
        }
        let nf = g.map_entries(|f| ring.nf(f));
        if let Some(d) = nf.degree(ambient_shifts) {
            kept_deg.push(d);
            kept.push(nf);
        }
    }
    let mut all_cols = kept.clone();
    let mut all_src = kept_deg.clone();
    for mcol in modded {
        let nf = mcol.map_entries(|f| ring.nf(f));
        if let Some(d) = nf.degree(ambient_shifts) {
            all_src.push(d);
            all_cols.push(nf);
        }
    }
    let big = PolyMatrix::new(nvars, ambient_shifts.to_vec(), all_src, all_cols);
    let syz = syzygy_matrix(field, &big, ring.gb());
    // project syzygies onto the coefficients of the kept generators
    let k = kept.len();
    let mut rel_cols = vec![];
    let mut rel_src = vec![];
    for (j, c) in syz.cols().iter().enumerate() {
        let proj = c.project(0, k);
        if !proj.is_zero() {
            rel_cols.push(proj);
            rel_src.push(syz.src_shifts()[j]);
        }
    }
    let relations = PolyMatrix::new(nvars, kept_deg.clone(), rel_src, rel_cols);
    PresentedModule::new(ring.clone(), kept_deg, relations)
}

/// Does `v` lie in the span of `gens` (+ the ring's ideal) inside the
/// free module with `ambient_shifts`?
pub fn submodule_contains<K: Field>(
    ring: &GradedRing<K>,
    ambient_shifts: &[i64],
    gens: &[PolyVector<K>],
    v: &PolyVector<K>,
) -> bool {
    let gb = module_groebner(ring.field(), ring.nvars(), ambient_shifts, gens, ring.gb());
    normal_form_against(ring, ambient_shifts, &gb, v).is_zero()
}

/// Normal form against an explicit module Groebner basis.
pub fn normal_form_against<K: Field>(
    ring: &GradedRing<K>,
    ambient_shifts: &[i64],
    gb: &[PolyVector<K>],
    v: &PolyVector<K>,
) -> PolyVector<K> {
    use crate::groebner::GroebnerEngine;
    let mut eng = GroebnerEngine::new(ring.field().clone(), ring.nvars(), ambient_shifts.to_vec());
    for g in gb {
        eng.add_generator(g);
    }
    // gb is already a Groebner basis; no saturation needed for reduction,
    // but saturate defensively when debug assertions are on
    #[cfg(debug_assertions)]
    eng.saturate();
    eng.normal_form(v)
}

/// Annihilator ideal ann(M), returned as a reduced Groebner basis.
pub fn module_annihilator<K: Field>(m: &PresentedModule<K>) -> Vec<Polynomial<K>> {
    let ring = m.ring();
    let field = ring.field();
    let nvars = ring.nvars();
    let r = m.cover_rank();
    if r == 0 {
        // ann(0) = (1)
        return vec![Polynomial::one(field, nvars)];
    }
    // big module: one twisted copy of the cover per generator; the single
    // unknown f must satisfy f*e_v in the relation span for every v
    let mut big_shifts = vec![];
    for v in 0..r {
        for w in 0..r {
            big_shifts.push(m.cover()[w] - m.cover()[v]);
        }
    }
    let big_rank = r * r;
    let mut fcol_entries = vec![];
    for v in 0..r {
        fcol_entries.push((v * r + v, Polynomial::one(field, nvars)));
    }
    let fcol = PolyVector::from_entries(nvars, big_rank, fcol_entries);
    let mut cols = vec![fcol];
    let mut src = vec![0i64];
    for v in 0..r {
        for (j, c) in m.relations().cols().iter().enumerate() {
            cols.push(c.embed(big_rank, v * r));
            src.push(m.relations().src_shifts()[j] - m.cover()[v]);
        }
    }
    let big = PolyMatrix::new(nvars, big_shifts, src, cols);
    let syz = syzygy_matrix(field, &big, ring.gb());
    let mut gens = vec![];
    for c in syz.cols() {
        if let Some(f) = c.get(0) {
            gens.push(f.clone());
        }
    }
    crate::groebner::buchberger_ideal(field, nvars, &gens)
        .into_iter()
        .map(|f| ring.nf(&f))
        .filter(|f| !f.is_zero())
        .collect()
}

/// Ideal colon (A : B) inside the ring, as a reduced Groebner basis.
pub fn ideal_colon<K: Field>(
    ring: &GradedRing<K>,
    a_gens: &[Polynomial<K>],
    b_gens: &[Polynomial<K>],
) -> Result<Vec<Polynomial<K>>> {
    let nvars = ring.nvars();
    let gens: Vec<PolyVector<K>> = b_gens
        .iter()
        .map(|g| PolyVector::unit(nvars, 1, 0, g.clone()))
        .collect();
    let modded: Vec<PolyVector<K>> = a_gens
        .iter()
        .map(|g| PolyVector::unit(nvars, 1, 0, g.clone()))
        .collect();
    let sub = present_subquotient(ring, &[0], &gens, &modded)?;
    Ok(module_annihilator(&sub))
}

/// Annihilator of a single ring element: (0 : f).
pub fn element_annihilator<K: Field>(
    ring: &GradedRing<K>,
    f: &Polynomial<K>,
) -> Result<Vec<Polynomial<K>>> {
    ideal_colon(ring, &[], std::slice::from_ref(f))
}

/// Check that f is a nonzerodivisor on the ring; witness on failure.
pub fn check_regular_element<K: Field>(ring: &GradedRing<K>, f: &Polynomial<K>) -> Result<()> {
    let nf = ring.nf(f);
    if nf.is_zero() {
        return Err(AlgebraError::ZeroDivisor {
            element: "0".into(),
            witness: "1".into(),
        });
    }
    let ann = element_annihilator(ring, &nf)?;
    if let Some(w) = ann.first() {
        return Err(AlgebraError::ZeroDivisor {
            element: format!("{:?}", nf.lead_monomial()),
            witness: format!("{:?}", w.lead_monomial()),
        });
    }
    Ok(())
}

/// Is multiplication by f injective on M?
pub fn is_regular_on_module<K: Field>(m: &PresentedModule<K>, f: &Polynomial<K>) -> bool {
    let ring = m.ring();
    let field = ring.field();
    let nvars = ring.nvars();
    let r = m.cover_rank();
    if r == 0 {
        return true;
    }
    let d = match f.degree() {
        None => return m.is_zero_module_quick(),
        Some(d) => d as i64,
    };
    // columns f*e_v, then relation columns; kernel coefficients of the
    // f-block are the elements killed by f
    let mut cols = vec![];
    let mut src = vec![];
    for v in 0..r {
        cols.push(PolyVector::unit(nvars, r, v, ring.nf(f)));
        src.push(m.cover()[v] + d);
    }
    for (j, c) in m.relations().cols().iter().enumerate() {
        cols.push(c.clone());
        src.push(m.relations().src_shifts()[j]);
    }
    let big = PolyMatrix::new(nvars, m.cover().to_vec(), src, cols);
    let syz = syzygy_matrix(field, &big, ring.gb());
    let gb = module_groebner(field, nvars, m.cover(), m.relations().cols(), ring.gb());
    for c in syz.cols() {
        let kernel_elt = c.project(0, r);
        if kernel_elt.is_zero() {
            continue;
        }
        if !normal_form_against(ring, m.cover(), &gb, &kernel_elt).is_zero() {
            return false;
        }
    }
    true
}

impl<K: Field> PresentedModule<K> {
    /// Fast zero check: every cover generator lies in the relation span.
    pub fn is_zero_module_quick(&self) -> bool {
        if self.cover_rank() == 0 {
            return true;
        }
        let gb = self.relations_gb();
        let field = self.field();
        let nvars = self.ring.nvars();
        (0..self.cover_rank()).all(|v| {
            let e = PolyVector::unit(nvars, self.cover_rank(), v, Polynomial::one(field, nvars));
            normal_form_against(&self.ring, &self.cover, &gb, &e).is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::Monomial;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn r1() -> GradedRing<Fp> {
        let f = fp();
        let xy = Polynomial::from_terms(&f, 2, vec![(Monomial::from_exps(&[1, 1]), 1)]);
        GradedRing::define(f, vec!["x".into(), "y".into()], vec![xy]).unwrap()
    }

    #[test]
    fn annihilator_of_principal_ideal_over_hypersurface() {
        // ann((x)) = (y) in F[x,y]/(xy)
        let r = r1();
        let x = r.var_poly(0);
        let m = present_subquotient(
            &r,
            &[0],
            &[PolyVector::unit(2, 1, 0, x)],
            &[],
        )
        .unwrap();
        let ann = module_annihilator(&m);
        assert_eq!(ann.len(), 1);
        assert_eq!(ann[0], r.var_poly(1));
    }

    #[test]
    fn colon_recovers_hand_value() {
        // ((x^2) : (x)) = (x) over F[x,y] ambient
        let f = fp();
        let r = GradedRing::define(f.clone(), vec!["x".into(), "y".into()], vec![]).unwrap();
        let x = r.var_poly(0);
        let x2 = x.mul(&f, &x);
        let colon = ideal_colon(&r, &[x2], &[x.clone()]).unwrap();
        assert_eq!(colon, vec![x]);
    }

    #[test]
    fn regular_elements_detected() {
        let r = r1();
        let f = r.field().clone();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let ell = x.add(&f, &y);
        assert!(check_regular_element(&r, &ell).is_ok());
        assert!(check_regular_element(&r, &x).is_err());
    }

    #[test]
    fn residue_field_presentation() {
        let r = r1();
        let k = PresentedModule::residue_field(r);
        assert_eq!(k.cover(), &[0]);
        assert_eq!(k.relations().ncols(), 2);
        assert!(!k.is_zero_module_quick());
    }

    #[test]
    fn zero_module_detection_sees_unit_relations() {
        let r = r1();
        let m = PresentedModule::free(r.clone(), vec![0]);
        let one = Polynomial::one(r.field(), 2);
        let q = m.quotient_by(&[PolyVector::unit(2, 1, 0, one)]).unwrap();
        assert!(q.is_zero_module_quick());
    }
}
