//! Elements of graded free modules, sparse by position.
//!
//! The module term order is position-over-term: lower position wins,
//! ties broken by degrevlex on the monomials.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// A term position in a free module together with its monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTerm {
    pub pos: usize,
    pub mono: Monomial,
}

impl ModTerm {
    /// Position-over-term comparison; `Greater` means earlier in reduction.
    pub fn cmp_pot(&self, other: &ModTerm) -> Ordering {
        match self.pos.cmp(&other.pos) {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            Ordering::Equal => self.mono.cmp(&other.mono),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<K: Field> {
    rank: usize,
    nvars: usize,
    /// Sorted ascending by position; all polynomials nonzero.
    comps: Vec<(usize, Polynomial<K>)>,
}

impl<K: Field> PolyVector<K> {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        PolyVector { rank, nvars, comps: vec![] }
    }

    pub fn from_entries(nvars: usize, rank: usize, entries: Vec<(usize, Polynomial<K>)>) -> Self {
        let mut comps: Vec<(usize, Polynomial<K>)> = entries
            .into_iter()
            .filter(|(p, f)| {
                assert!(*p < rank, "position {} out of rank {}", p, rank);
                !f.is_zero()
            })
            .collect();
        comps.sort_by_key(|(p, _)| *p);
        for w in comps.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate position in vector");
        }
        PolyVector { rank, nvars, comps }
    }

    pub fn from_dense(nvars: usize, polys: Vec<Polynomial<K>>) -> Self {
        let rank = polys.len();
        let comps = polys
            .into_iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .collect();
        PolyVector { rank, nvars, comps }
    }

    pub fn unit(nvars: usize, rank: usize, pos: usize, poly: Polynomial<K>) -> Self {
        PolyVector::from_entries(nvars, rank, vec![(pos, poly)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Polynomial<K>)> {
        self.comps.iter()
    }

    pub fn get(&self, pos: usize) -> Option<&Polynomial<K>> {
        self.comps
            .binary_search_by_key(&pos, |(p, _)| *p)
            .ok()
            .map(|i| &self.comps[i].1)
    }

    pub fn to_dense(&self) -> Vec<Polynomial<K>> {
        let mut out = vec![Polynomial::zero(self.nvars); self.rank];
        for (p, f) in &self.comps {
            out[*p] = f.clone();
        }
        out
    }

    /// Leading term under POT: the first nonzero component's lead.
    pub fn lead_term(&self) -> Option<(ModTerm, &K::Elem)> {
        self.comps.first().map(|(p, f)| {
            let (m, c) = f.lead().expect("stored polynomials are nonzero");
            (ModTerm { pos: *p, mono: m.clone() }, c)
        })
    }

    pub fn add(&self, field: &K, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out: Vec<(usize, Polynomial<K>)> = vec![];
        let (mut i, mut j) = (0, 0);
        while i < self.comps.len() && j < other.comps.len() {
            let (pa, fa) = &self.comps[i];
            let (pb, fb) = &other.comps[j];
            match pa.cmp(pb) {
                Ordering::Less => {
                    out.push((*pa, fa.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*pb, fb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fa.add(field, fb);
                    if !s.is_zero() {
                        out.push((*pa, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.comps[i..]);
        out.extend(other.comps[j..].iter().cloned());
        PolyVector { rank: self.rank, nvars: self.nvars, comps: out }
    }

    pub fn neg(&self, field: &K) -> Self {
        PolyVector {
            rank: self.rank,
            nvars: self.nvars,
            comps: self.comps.iter().map(|(p, f)| (*p, f.neg(field))).collect(),
        }
    }

    pub fn sub(&self, field: &K, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    /// self * (c * m)
    pub fn mul_term(&self, field: &K, m: &Monomial, c: &K::Elem) -> Self {
        if field.is_zero(c) {
            return PolyVector::zero(self.nvars, self.rank);
        }
        PolyVector {
            rank: self.rank,
            nvars: self.nvars,
            comps: self
                .comps
                .iter()
                .map(|(p, f)| (*p, f.mul_term(field, m, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, field: &K, g: &Polynomial<K>) -> Self {
        let mut comps = vec![];
        for (p, f) in &self.comps {
            let prod = f.mul(field, g);
            if !prod.is_zero() {
                comps.push((*p, prod));
            }
        }
        PolyVector { rank: self.rank, nvars: self.nvars, comps }
    }

    pub fn scale(&self, field: &K, c: &K::Elem) -> Self {
        if field.is_zero(c) {
            return PolyVector::zero(self.nvars, self.rank);
        }
        PolyVector {
            rank: self.rank,
            nvars: self.nvars,
            comps: self.comps.iter().map(|(p, f)| (*p, f.scale(field, c))).collect(),
        }
    }

    pub fn monic(&self, field: &K) -> Self {
        match self.lead_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = field.inv(c);
                self.scale(field, &inv)
            }
        }
    }

    /// Degree of a homogeneous vector w.r.t. the target shifts, None if zero.
    pub fn degree(&self, shifts: &[i64]) -> Option<i64> {
        let (p, f) = self.comps.first()?;
        Some(f.degree().unwrap() as i64 + shifts[*p])
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        let mut deg = None;
        for (p, f) in &self.comps {
            for (m, _) in f.terms() {
                let d = m.degree() as i64 + shifts[*p];
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Re-embed into a larger free module at a position offset.
    pub fn embed(&self, new_rank: usize, offset: usize) -> Self {
        assert!(offset + self.rank <= new_rank);
        PolyVector {
            rank: new_rank,
            nvars: self.nvars,
            comps: self.comps.iter().map(|(p, f)| (p + offset, f.clone())).collect(),
        }
    }

    /// Keep positions in [lo, lo + len), re-indexed from zero.
    pub fn project(&self, lo: usize, len: usize) -> Self {
        let comps = self
            .comps
            .iter()
            .filter(|(p, _)| *p >= lo && *p < lo + len)
            .map(|(p, f)| (p - lo, f.clone()))
            .collect();
        PolyVector { rank: len, nvars: self.nvars, comps }
    }

    /// True if every component with position < bound is zero.
    pub fn vanishes_below(&self, bound: usize) -> bool {
        self.comps.first().map_or(true, |(p, _)| *p >= bound)
    }

    /// Remove one position and close the gap.
    pub fn drop_position(&self, pos: usize) -> Self {
        assert!(pos < self.rank);
        let comps = self
            .comps
            .iter()
            .filter(|(p, _)| *p != pos)
            .map(|(p, f)| (if *p > pos { p - 1 } else { *p }, f.clone()))
            .collect();
        PolyVector { rank: self.rank - 1, nvars: self.nvars, comps }
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial<K>) -> Polynomial<K>) -> Self {
        let comps = self
            .comps
            .iter()
            .filter_map(|(p, g)| {
                let h = f(g);
                if h.is_zero() {
                    None
                } else {
                    Some((*p, h))
                }
            })
            .collect();
        PolyVector { rank: self.rank, nvars: self.nvars, comps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    #[test]
    fn pot_order_prefers_low_positions() {
        let f = fp();
        let x = Polynomial::var(&f, 2, 0);
        let y3 = Polynomial::from_terms(&f, 2, vec![(Monomial::from_exps(&[0, 3]), 1)]);
        let w = PolyVector::from_entries(2, 2, vec![(1, y3.clone()), (0, x.clone())]);
        let (lt, _) = w.lead_term().unwrap();
        assert_eq!(lt.pos, 0);
        assert_eq!(lt.mono, Monomial::var(2, 0));
        let a = ModTerm { pos: 0, mono: Monomial::var(2, 0) };
        let b = ModTerm { pos: 1, mono: Monomial::from_exps(&[0, 3]) };
        assert_eq!(a.cmp_pot(&b), Ordering::Greater);
    }

    #[test]
    fn add_cancels_components() {
        let f = fp();
        let x = Polynomial::var(&f, 2, 0);
        let v = PolyVector::from_entries(2, 3, vec![(1, x.clone())]);
        let w = v.neg(&f);
        assert!(v.add(&f, &w).is_zero());
    }

    #[test]
    fn homogeneity_respects_shifts() {
        let f = fp();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        // (x, y) with equal shifts is homogeneous of degree shift+1
        let v = PolyVector::from_entries(2, 2, vec![(0, x.clone()), (1, y.clone())]);
        assert!(v.is_homogeneous(&[0, 0]));
        assert_eq!(v.degree(&[0, 0]), Some(1));
        assert!(!v.is_homogeneous(&[0, 1]));
    }
}
