//! Multivariate polynomials as sorted term lists (descending degrevlex).

use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<K: Field> {
    /// Terms sorted strictly descending in degrevlex; no zero coefficients.
    terms: Vec<(Monomial, K::Elem)>,
    nvars: usize,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { terms: vec![], nvars }
    }

    pub fn one(field: &K, nvars: usize) -> Self {
        Polynomial::constant(field, nvars, field.one())
    }

    pub fn constant(field: &K, nvars: usize, c: K::Elem) -> Self {
        if field.is_zero(&c) {
            Polynomial::zero(nvars)
        } else {
            Polynomial {
                terms: vec![(Monomial::one(nvars), c)],
                nvars,
            }
        }
    }

    pub fn var(field: &K, nvars: usize, i: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(nvars, i), field.one())],
            nvars,
        }
    }

    pub fn monomial(field: &K, m: Monomial, c: K::Elem) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            Polynomial::zero(nvars)
        } else {
            Polynomial { terms: vec![(m, c)], nvars }
        }
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(field: &K, nvars: usize, terms: Vec<(Monomial, K::Elem)>) -> Self {
        let mut map: BTreeMap<Monomial, K::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut out: Vec<(Monomial, K::Elem)> = map
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        out.reverse(); // BTreeMap ascends; we store descending
        Polynomial { terms: out, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree, None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // terms share total degree only if homogeneous; take the max
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, field: &K, m: &Monomial) -> K::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => field.zero(),
        }
    }

    pub fn constant_term(&self, field: &K) -> K::Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => field.zero(),
        }
    }

    /// Nonzero constant polynomial check (a unit in the graded ring).
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.last().map_or(false, |(m, _)| m.is_one())
    }

    pub fn add(&self, field: &K, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match mb.cmp(ma) {
                std::cmp::Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { terms: out, nvars: self.nvars }
    }

    pub fn neg(&self, field: &K) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn sub(&self, field: &K, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &K, c: &K::Elem) -> Self {
        if field.is_zero(c) {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
            nvars: self.nvars,
        }
    }

    /// self * (c * m): term order is preserved under monomial shift.
    pub fn mul_term(&self, field: &K, m: &Monomial, c: &K::Elem) -> Self {
        if field.is_zero(c) {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn mul(&self, field: &K, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut map: BTreeMap<Monomial, K::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut out: Vec<(Monomial, K::Elem)> = map
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        out.reverse();
        Polynomial { terms: out, nvars: self.nvars }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, field: &K) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = field.inv(c);
                self.scale(field, &inv)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn add_merges_and_cancels() {
        let f = fp();
        let p = Polynomial::from_terms(&f, 2, vec![(m(&[2, 0]), 1), (m(&[0, 2]), 1)]);
        let q = Polynomial::from_terms(&f, 2, vec![(m(&[2, 0]), 32002), (m(&[1, 1]), 5)]);
        let s = p.add(&f, &q);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.lead_monomial(), Some(&m(&[1, 1])));
        assert!(p.sub(&f, &p).is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        let f = fp();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x.add(&f, &y);
        let sq = s.mul(&f, &s);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&f, &m(&[1, 1])), 2);
        assert_eq!(sq.coeff(&f, &m(&[2, 0])), 1);
        assert!(sq.is_homogeneous());
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn terms_stay_sorted_descending() {
        let f = fp();
        let p = Polynomial::from_terms(
            &f,
            2,
            vec![(m(&[0, 3]), 1), (m(&[2, 1]), 1), (m(&[1, 0]), 7)],
        );
        let degs: Vec<&Monomial> = p.terms().iter().map(|(t, _)| t).collect();
        assert!(degs.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(p.lead_monomial(), Some(&m(&[2, 1])));
    }
}
