//! Minimal graded free resolutions.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{engine_over_quotient, syzygy_matrix};
use crate::matrix::PolyMatrix;
use crate::module::{GradedFreeModule, PresentedModule};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::GradedRing;
use crate::vector::PolyVector;

/// Indices of a minimal generating subset of `cols`, greedily by degree:
/// a column is kept iff it is not in the span of those already kept.
pub fn minimal_generator_indices<K: Field>(
    ring: &GradedRing<K>,
    ambient_shifts: &[i64],
    cols: &[PolyVector<K>],
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&i| (cols[i].degree(ambient_shifts), i));
    let mut eng = engine_over_quotient(ring.field(), ring.nvars(), ambient_shifts, ring.gb());
    let mut keep = vec![];
    for &i in &order {
        if cols[i].is_zero() {
            continue;
        }
        if !eng.normal_form(&cols[i]).is_zero() {
            keep.push(i);
            eng.add_generator(&cols[i]);
            eng.saturate();
        }
    }
    keep.sort_unstable();
    keep
}

/// Minimal presentation: split off the free summands hidden behind unit
/// entries, then discard redundant relations. The result has all relation
/// entries in the maximal ideal and a minimal relation set.
pub fn minimal_presentation<K: Field>(m: &PresentedModule<K>) -> PresentedModule<K> {
    let ring = m.ring().clone();
    let field = ring.field().clone();
    let mut tgt = m.cover().to_vec();
    let mut src = m.relations().src_shifts().to_vec();
    let mut cols: Vec<PolyVector<K>> = m.relations().cols().to_vec();

    loop {
        let mut pivot: Option<(usize, usize, K::Elem)> = None;
        'scan: for (c, col) in cols.iter().enumerate() {
            for (p, f) in col.iter() {
                if f.has_constant_term() {
                    pivot = Some((c, *p, f.constant_term(&field)));
                    break 'scan;
                }
            }
        }
        let Some((c, r, a)) = pivot else { break };
        let ainv = field.inv(&a);
        let pivot_col = cols[c].clone();
        for (c2, col) in cols.iter_mut().enumerate() {
            if c2 == c {
                continue;
            }
            if let Some(f2) = col.get(r).cloned() {
                let scaled = pivot_col.mul_poly(&field, &f2.scale(&field, &ainv));
                *col = col.sub(&field, &scaled).map_entries(|g| ring.nf(g));
            }
        }
        cols.remove(c);
        src.remove(c);
        tgt.remove(r);
        cols = cols.iter().map(|col| col.drop_position(r)).collect();
    }

    let keep = minimal_generator_indices(&ring, &tgt, &cols);
    let kept_cols: Vec<_> = keep.iter().map(|&i| cols[i].clone()).collect();
    let kept_src: Vec<_> = keep.iter().map(|&i| src[i]).collect();
    let relations = PolyMatrix::new(ring.nvars(), tgt.clone(), kept_src, kept_cols);
    PresentedModule::new(ring, tgt, relations).expect("pruning preserves validity")
}

/// Minimal generator count of a module.
pub fn mu<K: Field>(m: &PresentedModule<K>) -> usize {
    minimal_presentation(m).cover_rank()
}

#[derive(Clone, Debug)]
pub struct Resolution<K: Field> {
    pub ring: GradedRing<K>,
    /// F_0 ..= F_n.
    pub free: Vec<GradedFreeModule>,
    /// diff[i] is d_{i+1}: F_{i+1} -> F_i.
    pub diff: Vec<PolyMatrix<K>>,
}

impl<K: Field> Resolution<K> {
    pub fn length(&self) -> usize {
        self.diff.len()
    }

    pub fn betti(&self, i: usize) -> usize {
        self.free.get(i).map_or(0, |f| f.rank())
    }

    /// Index of the last nonzero free module, if the resolution stops
    /// inside the computed window. The zero module reports Some(0) with a
    /// rank-zero F_0.
    pub fn pd(&self) -> Option<usize> {
        if self.free.iter().all(|f| f.rank() > 0) {
            return None;
        }
        Some(
            self.free
                .iter()
                .rposition(|f| f.rank() > 0)
                .map_or(0, |i| i),
        )
    }

    /// The n-th syzygy module: cover F_n, relations d_{n+1}. Requires the
    /// resolution to have been computed past n.
    pub fn syzygy_module(&self, n: usize) -> PresentedModule<K> {
        assert!(
            n < self.diff.len(),
            "resolution too short for syzygy {}",
            n
        );
        let cover = self.free[n].shifts.clone();
        PresentedModule::new(self.ring.clone(), cover, self.diff[n].clone())
            .expect("resolution differentials are valid relations")
    }

    /// Smallest (start, period) with diff repeating up to a uniform
    /// degree shift through the computed window; periods 1 and 2 only.
    pub fn eventual_period(&self) -> Option<(usize, usize)> {
        for period in [1usize, 2] {
            'start: for start in 0..self.diff.len().saturating_sub(period) {
                for i in start..self.diff.len() - period {
                    if !matrices_match_up_to_shift(&self.diff[i], &self.diff[i + period]) {
                        continue 'start;
                    }
                }
                if self.diff.len() >= start + 2 * period {
                    return Some((start, period));
                }
            }
        }
        None
    }
}

fn matrices_match_up_to_shift<K: Field>(a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> bool {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return false;
    }
    if a.ncols() == 0 || a.nrows() == 0 {
        return true;
    }
    let delta = b.tgt_shifts()[0] - a.tgt_shifts()[0];
    let tgt_ok = a
        .tgt_shifts()
        .iter()
        .zip(b.tgt_shifts())
        .all(|(x, y)| y - x == delta);
    let src_ok = a
        .src_shifts()
        .iter()
        .zip(b.src_shifts())
        .all(|(x, y)| y - x == delta);
    tgt_ok && src_ok && a.cols() == b.cols()
}

/// Minimal free resolution out to F_{n_max} (differentials d_1..d_{n_max}).
pub fn minimal_free_resolution<K: Field>(
    m: &PresentedModule<K>,
    n_max: usize,
) -> Resolution<K> {
    let ring = m.ring().clone();
    let field = ring.field().clone();
    let min = minimal_presentation(m);
    let mut free = vec![GradedFreeModule { shifts: min.cover().to_vec() }];
    let mut diff: Vec<PolyMatrix<K>> = vec![];
    let mut current = min.relations().clone();
    for _ in 0..n_max {
        free.push(GradedFreeModule { shifts: current.src_shifts().to_vec() });
        diff.push(current.clone());
        if current.ncols() == 0 {
            current = PolyMatrix::zero_cols(ring.nvars(), vec![]);
            continue;
        }
        let syz = syzygy_matrix(&field, &current, ring.gb());
        let keep = minimal_generator_indices(&ring, current.src_shifts(), syz.cols());
        let cols: Vec<_> = keep.iter().map(|&i| syz.col(i).clone()).collect();
        let src: Vec<_> = keep.iter().map(|&i| syz.src_shifts()[i]).collect();
        current = PolyMatrix::new(ring.nvars(), current.src_shifts().to_vec(), src, cols);
    }
    Resolution { ring, free, diff }
}

/// The n-th syzygy of a module, resolving just far enough.
pub fn syzygy_of<K: Field>(m: &PresentedModule<K>, n: usize) -> PresentedModule<K> {
    minimal_free_resolution(m, n + 1).syzygy_module(n)
}

/// Graded Betti numbers keyed by (homological index, internal degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), u64>,
    pub max_index: usize,
}

impl BettiTable {
    pub fn from_resolution<K: Field>(res: &Resolution<K>) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, f) in res.free.iter().enumerate() {
            for &s in &f.shifts {
                *entries.entry((i, s)).or_insert(0) += 1;
            }
        }
        BettiTable { entries, max_index: res.free.len().saturating_sub(1) }
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((bi, _), _)| *bi == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Macaulay-style triangle: row labels are j - i.
    pub fn text(&self) -> String {
        if self.entries.is_empty() {
            return "empty table".to_string();
        }
        let rows: Vec<i64> = {
            let lo = self.entries.keys().map(|(i, j)| j - *i as i64).min().unwrap();
            let hi = self.entries.keys().map(|(i, j)| j - *i as i64).max().unwrap();
            (lo..=hi).collect()
        };
        let ncols = self.max_index + 1;
        let mut grid: Vec<Vec<String>> = vec![];
        let mut header = vec!["".to_string()];
        for i in 0..ncols {
            header.push(i.to_string());
        }
        grid.push(header);
        let mut totals = vec!["total:".to_string()];
        for i in 0..ncols {
            totals.push(self.total(i).to_string());
        }
        grid.push(totals);
        for &r in &rows {
            let mut row = vec![format!("{}:", r)];
            for i in 0..ncols {
                let v = self.get(i, r + i as i64);
                row.push(if v == 0 { ".".to_string() } else { v.to_string() });
            }
            grid.push(row);
        }
        let widths: Vec<usize> = (0..=ncols)
            .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(1))
            .collect();
        grid.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, cell)| format!("{:>width$}", cell, width = widths[c]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Reinterpret an R-module over the ambient polynomial ring: the ring's
/// ideal joins the relations, one copy per cover position.
pub fn over_ambient<K: Field>(m: &PresentedModule<K>) -> PresentedModule<K> {
    let ring = m.ring();
    let ambient = ring.ambient();
    let nvars = ring.nvars();
    let cover = m.cover().to_vec();
    let mut cols = m.relations().cols().to_vec();
    let mut src = m.relations().src_shifts().to_vec();
    for v in 0..cover.len() {
        for q in ring.gb() {
            cols.push(PolyVector::unit(nvars, cover.len(), v, q.clone()));
            src.push(cover[v] + q.degree().unwrap() as i64);
        }
    }
    let relations = PolyMatrix::new(nvars, cover.clone(), src, cols);
    PresentedModule::new(ambient, cover, relations).expect("ambient transport is valid")
}

/// Projective dimension over the ambient polynomial ring. Always finite;
/// the zero module reports 0.
pub fn pd_over_ambient<K: Field>(m: &PresentedModule<K>) -> usize {
    let ms = if m.ring().is_ambient() {
        minimal_presentation(m)
    } else {
        minimal_presentation(&over_ambient(m))
    };
    let n = ms.ring().nvars();
    let res = minimal_free_resolution(&ms, n + 1);
    assert_eq!(
        res.betti(n + 1),
        0,
        "resolution over a polynomial ring must stop by the variable count"
    );
    res.pd().unwrap_or(0)
}

/// depth via the Auslander-Buchsbaum formula over the ambient ring.
/// None for the zero module.
pub fn depth<K: Field>(m: &PresentedModule<K>) -> Option<i64> {
    let min = minimal_presentation(m);
    if min.cover_rank() == 0 {
        return None;
    }
    let n = m.ring().nvars() as i64;
    Some(n - pd_over_ambient(&min) as i64)
}

/// A surjection R -> R/(ell) for a regular linear form ell, with enough
/// data to push polynomials and modules across.
#[derive(Clone, Debug)]
pub struct LinearQuotient<K: Field> {
    pub source: GradedRing<K>,
    pub target: GradedRing<K>,
    /// Index of the eliminated variable in the source ring.
    pub eliminated: usize,
    /// Images of the source variables in the target ring.
    pub images: Vec<Polynomial<K>>,
}

impl<K: Field> LinearQuotient<K> {
    pub fn map_poly(&self, f: &Polynomial<K>) -> Polynomial<K> {
        let field = self.target.field();
        let n_new = self.target.nvars();
        let mut acc = Polynomial::zero(n_new);
        for (mono, c) in f.terms() {
            let mut term = Polynomial::constant(field, n_new, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(field, &self.images[i]);
                }
            }
            acc = acc.add(field, &term);
        }
        self.target.nf(&acc)
    }

    /// M/(ell)M over the target ring: apply the map to every relation
    /// entry; the cover is unchanged.
    pub fn transport(&self, m: &PresentedModule<K>) -> Result<PresentedModule<K>> {
        if m.ring() != &self.source {
            return Err(AlgebraError::InvalidInput(
                "module lives over a different ring".into(),
            ));
        }
        let cover = m.cover().to_vec();
        let mut cols = vec![];
        let mut src = vec![];
        for (j, c) in m.relations().cols().iter().enumerate() {
            let mapped = c.map_entries(|f| self.map_poly(f));
            if !mapped.is_zero() {
                cols.push(mapped);
                src.push(m.relations().src_shifts()[j]);
            }
        }
        let relations = PolyMatrix::new(self.target.nvars(), cover.clone(), src, cols);
        PresentedModule::new(self.target.clone(), cover, relations)
    }
}

/// Kill a linear form that must be regular on the ring; errors with a
/// witness when it is a zerodivisor.
pub fn quotient_by_linear_regular<K: Field>(
    ring: &GradedRing<K>,
    ell: &Polynomial<K>,
) -> Result<LinearQuotient<K>> {
    let field = ring.field().clone();
    let n = ring.nvars();
    let nf = ring.nf(ell);
    if nf.degree() != Some(1) {
        return Err(AlgebraError::InvalidInput(
            "expected a nonzero linear form".into(),
        ));
    }
    crate::module::check_regular_element(ring, &nf)?;
    let coeffs: Vec<K::Elem> = (0..n)
        .map(|i| nf.coeff(&field, &Monomial::var(n, i)))
        .collect();
    let j = (0..n)
        .rev()
        .find(|&i| !field.is_zero(&coeffs[i]))
        .expect("a nonzero linear form has a variable");
    let new_vars: Vec<String> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, v)| v.clone())
        .collect();
    let n_new = n - 1;
    // x_j maps to -(1/c) * (ell - c x_j) rewritten in the remaining vars
    let cinv = field.inv(&coeffs[j]);
    let mut x_j_image = Polynomial::zero(n_new);
    let mut images = vec![];
    {
        let mut new_idx = 0usize;
        for i in 0..n {
            if i == j {
                images.push(Polynomial::zero(n_new));
                continue;
            }
            let xi = Polynomial::var(&field, n_new, new_idx);
            if !field.is_zero(&coeffs[i]) {
                let scale = field.neg(&field.mul(&coeffs[i], &cinv));
                x_j_image = x_j_image.add(&field, &xi.scale(&field, &scale));
            }
            images.push(xi);
            new_idx += 1;
        }
    }
    images[j] = x_j_image;
    let mapped_ideal: Vec<Polynomial<K>> = ring
        .ideal_gens()
        .iter()
        .map(|g| substitute(&field, g, &images, n_new))
        .filter(|g| !g.is_zero())
        .collect();
    let target = GradedRing::define(field, new_vars, mapped_ideal)?;
    Ok(LinearQuotient { source: ring.clone(), target, eliminated: j, images })
}

fn substitute<K: Field>(
    field: &K,
    f: &Polynomial<K>,
    images: &[Polynomial<K>],
    n_new: usize,
) -> Polynomial<K> {
    let mut acc = Polynomial::zero(n_new);
    for (mono, c) in f.terms() {
        let mut term = Polynomial::constant(field, n_new, c.clone());
        for (i, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                term = term.mul(field, &images[i]);
            }
        }
        acc = acc.add(field, &term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    fn ring_r1() -> GradedRing<Fp> {
        let f = fp();
        let xy = Polynomial::from_terms(&f, 2, vec![(mono(&[1, 1]), 1)]);
        GradedRing::define(f, vec!["x".into(), "y".into()], vec![xy]).unwrap()
    }

    fn ring_r2() -> GradedRing<Fp> {
        let f = fp();
        let gens = vec![
            Polynomial::from_terms(&f, 2, vec![(mono(&[2, 0]), 1)]),
            Polynomial::from_terms(&f, 2, vec![(mono(&[1, 1]), 1)]),
            Polynomial::from_terms(&f, 2, vec![(mono(&[0, 2]), 1)]),
        ];
        GradedRing::define(f, vec!["x".into(), "y".into()], gens).unwrap()
    }

    #[test]
    fn residue_field_resolution_over_hypersurface() {
        let r = ring_r1();
        let k = PresentedModule::residue_field(r);
        let res = minimal_free_resolution(&k, 6);
        let bettis: Vec<usize> = (0..=6).map(|i| res.betti(i)).collect();
        assert_eq!(bettis, vec![1, 2, 2, 2, 2, 2, 2]);
        // differentials compose to zero mod the ring ideal
        for i in 0..res.diff.len() - 1 {
            let comp = res.diff[i].compose(res.ring.field(), &res.diff[i + 1]);
            assert!(comp.map_entries(|f| res.ring.nf(f)).is_zero());
        }
        for d in &res.diff {
            assert!(d.is_minimal());
        }
        assert_eq!(res.eventual_period(), Some((1, 2)));
    }

    #[test]
    fn residue_field_resolution_doubles_over_short_ring() {
        let r = ring_r2();
        let k = PresentedModule::residue_field(r);
        let res = minimal_free_resolution(&k, 5);
        let bettis: Vec<usize> = (0..=5).map(|i| res.betti(i)).collect();
        assert_eq!(bettis, vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn principal_ideal_resolution_alternates() {
        let r = ring_r1();
        let x = r.var_poly(0);
        let m = crate::module::present_subquotient(
            &r,
            &[0],
            &[PolyVector::unit(2, 1, 0, x.clone())],
            &[],
        )
        .unwrap();
        let res = minimal_free_resolution(&m, 5);
        for i in 0..=5 {
            assert_eq!(res.betti(i), 1);
        }
        assert_eq!(res.free[0].shifts, vec![1]);
        assert_eq!(res.free[1].shifts, vec![2]);
        assert_eq!(res.free[2].shifts, vec![3]);
        let y = r.var_poly(1);
        assert_eq!(res.diff[0].entry(r.field(), 0, 0), y);
        assert_eq!(res.diff[1].entry(r.field(), 0, 0), x);
    }

    #[test]
    fn unit_relations_split_off() {
        // cover [0, 1], single relation (x, -1): the second generator is
        // x times the first, so the module is free of rank 1
        let r = ring_r1();
        let f = r.field().clone();
        let x = r.var_poly(0);
        let col = PolyVector::from_dense(2, vec![x, Polynomial::constant(&f, 2, f.from_i64(-1))]);
        let rel = PolyMatrix::new(2, vec![0, 1], vec![1], vec![col]);
        let m = PresentedModule::new(r, vec![0, 1], rel).unwrap();
        let min = minimal_presentation(&m);
        assert_eq!(min.cover(), &[0]);
        assert_eq!(min.relations().ncols(), 0);
    }

    #[test]
    fn betti_table_text_layout() {
        let r = ring_r2();
        let k = PresentedModule::residue_field(r);
        let res = minimal_free_resolution(&k, 2);
        let t = BettiTable::from_resolution(&res);
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 1), 2);
        assert_eq!(t.get(2, 2), 4);
        let text = t.text();
        assert!(text.contains("total:"));
        assert!(text.starts_with(' '));
    }

    #[test]
    fn depth_via_ambient_resolution() {
        let r1 = ring_r1();
        let ring_mod = PresentedModule::ring_module(r1.clone());
        assert_eq!(pd_over_ambient(&ring_mod), 1);
        assert_eq!(depth(&ring_mod), Some(1));
        let k = PresentedModule::residue_field(r1);
        assert_eq!(depth(&k), Some(0));
        let r2 = ring_r2();
        assert_eq!(depth(&PresentedModule::ring_module(r2)), Some(0));
    }

    #[test]
    fn linear_quotient_of_hypersurface() {
        let r = ring_r1();
        let f = r.field().clone();
        let ell = r.var_poly(0).add(&f, &r.var_poly(1));
        let lq = quotient_by_linear_regular(&r, &ell).unwrap();
        assert_eq!(lq.target.vars(), &["x".to_string()]);
        assert_eq!(lq.target.gb().len(), 1);
        assert_eq!(lq.target.gb()[0].lead_monomial().unwrap(), &mono(&[2]));
        // x itself is a zerodivisor
        assert!(quotient_by_linear_regular(&r, &r.var_poly(0)).is_err());
    }

    #[test]
    fn transported_residue_field() {
        let r = ring_r1();
        let f = r.field().clone();
        let ell = r.var_poly(0).add(&f, &r.var_poly(1));
        let lq = quotient_by_linear_regular(&r, &ell).unwrap();
        let k = PresentedModule::residue_field(r);
        let kbar = lq.transport(&k).unwrap();
        let min = minimal_presentation(&kbar);
        assert_eq!(min.cover(), &[0]);
        assert_eq!(min.relations().ncols(), 1);
        let res = minimal_free_resolution(&min, 4);
        let bettis: Vec<usize> = (0..=4).map(|i| res.betti(i)).collect();
        assert_eq!(bettis, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn syzygy_modules_line_up() {
        let r = ring_r1();
        let k = PresentedModule::residue_field(r);
        let res = minimal_free_resolution(&k, 4);
        let om1 = res.syzygy_module(1);
        assert_eq!(om1.cover(), &[1, 1]);
        assert_eq!(mu(&om1), 2);
        let om0 = res.syzygy_module(0);
        assert_eq!(om0.cover(), &[0]);
    }
}
