//! Hilbert series, Krull dimension, and multiplicity.
//!
//! For a module presented over R = S/I the series is computed from lead
//! terms of a combined Groebner basis: with N = relations + I*F the
//! quotient F/N has the same Hilbert function as F/LT(N), and LT(N)
//! splits into one monomial ideal per free basis vector.

use crate::field::Field;
use crate::module::PresentedModule;
use crate::monomial::Monomial;

/// Integer Laurent polynomial: coeffs[i] is the coefficient of
/// t^(offset + i). Normalized so the ends are nonzero; zero is the empty
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub offset: i64,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { offset: 0, coeffs: vec![] }
    }

    pub fn one() -> Laurent {
        Laurent { offset: 0, coeffs: vec![1] }
    }

    pub fn monomial(d: i64) -> Laurent {
        Laurent { offset: d, coeffs: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(mut self) -> Laurent {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.offset += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
        self
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.coeffs.len() as i64)
            .max(other.offset + other.coeffs.len() as i64);
        let mut coeffs = vec![0i64; (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.offset - lo) as usize + i] += c;
        }
        Laurent { offset: lo, coeffs }.normalize()
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Laurent {
        if k == 0 {
            return Laurent::zero();
        }
        Laurent {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn shift(&self, d: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { offset: self.offset + d, coeffs: self.coeffs.clone() }
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by (1 - t); None when not divisible.
    pub fn div_one_minus_t(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.eval_one() != 0 {
            return None;
        }
        // prefix sums: (1 - t) * (sum_i (p_0+..+p_i) t^i) = p when p(1) = 0
        let mut q = vec![0i64; self.coeffs.len() - 1];
        let mut acc = 0i64;
        for i in 0..self.coeffs.len() - 1 {
            acc += self.coeffs[i];
            q[i] = acc;
        }
        Some(Laurent { offset: self.offset, coeffs: q }.normalize())
    }
}

/// Hilbert series of a graded module, held as numerator/(1-t)^nvars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Raw numerator over (1-t)^nvars.
    pub numerator: Laurent,
    /// Numerator after cancelling every (1-t) factor.
    pub reduced: Laurent,
    /// Remaining denominator power; equals the Krull dimension for a
    /// nonzero module.
    pub denom_power: usize,
    /// Krull dimension of the module; -1 for the zero module.
    pub dim: i64,
    /// reduced(1): multiplicity for positive dimension, length when the
    /// dimension is zero, 0 for the zero module.
    pub multiplicity: i64,
}

impl HilbertSeries {
    fn from_numerator(nvars: usize, numerator: Laurent) -> HilbertSeries {
        let mut reduced = numerator.clone();
        let mut denom = nvars;
        while denom > 0 {
            match reduced.div_one_minus_t() {
                Some(q) => {
                    reduced = q;
                    denom -= 1;
                }
                None => break,
            }
        }
        let (dim, multiplicity) = if numerator.is_zero() {
            (-1, 0)
        } else {
            (denom as i64, reduced.eval_one())
        };
        HilbertSeries { nvars, numerator, reduced, denom_power: denom, dim, multiplicity }
    }

    /// Hilbert function values for d in [lo, hi].
    pub fn values(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        if self.numerator.is_zero() || hi < lo {
            return (lo..=hi).map(|d| (d, 0)).collect();
        }
        let start = self.numerator.offset;
        if hi < start {
            return (lo..=hi).map(|d| (d, 0)).collect();
        }
        let len = (hi - start + 1) as usize;
        let mut vals = vec![0i64; len];
        for (i, c) in self.numerator.coeffs.iter().enumerate() {
            if i < len {
                vals[i] += c;
            }
        }
        // multiply by 1/(1-t)^nvars = repeated prefix sums
        for _ in 0..self.nvars {
            for i in 1..len {
                vals[i] += vals[i - 1];
            }
        }
        (lo..=hi)
            .map(|d| {
                if d < start {
                    (d, 0)
                } else {
                    (d, vals[(d - start) as usize])
                }
            })
            .collect()
    }

    pub fn value(&self, d: i64) -> i64 {
        self.values(d, d)[0].1
    }

    /// Smallest degree with a nonzero value, if any.
    pub fn min_degree(&self) -> Option<i64> {
        if self.numerator.is_zero() {
            None
        } else {
            Some(self.numerator.offset)
        }
    }

    /// Total dimension over the base field; None when infinite.
    pub fn total_length(&self) -> Option<i64> {
        if self.numerator.is_zero() {
            return Some(0);
        }
        if self.denom_power > 0 {
            return None;
        }
        Some(self.reduced.eval_one())
    }
}

/// Numerator of the Hilbert series of S/J for a monomial ideal J:
/// HS(S/J) = num/(1-t)^nvars.
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> Laurent {
    let mut minimal: Vec<Monomial> = vec![];
    for g in gens {
        if minimal.iter().any(|m| m.divides(g)) {
            continue;
        }
        minimal.retain(|m| !g.divides(m));
        minimal.push(g.clone());
    }
    numerator_rec(&minimal)
}

fn numerator_rec(gens: &[Monomial]) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return Laurent::zero();
    }
    let (head, rest) = gens.split_last().unwrap();
    let base = numerator_rec(rest);
    // colon (rest : head), minimalized
    let mut colon: Vec<Monomial> = vec![];
    for g in rest {
        let q = colon_monomial(g, head);
        if colon.iter().any(|m| m.divides(&q)) {
            continue;
        }
        colon.retain(|m| !q.divides(m));
        colon.push(q);
    }
    let corr = numerator_rec(&colon).shift(head.degree() as i64);
    base.sub(&corr)
}

fn colon_monomial(g: &Monomial, h: &Monomial) -> Monomial {
    // g / gcd(g, h)
    let exps: Vec<u32> = g
        .exps()
        .iter()
        .zip(h.exps())
        .map(|(a, b)| a.saturating_sub(*b))
        .collect();
    Monomial::from_exps(&exps)
}

/// Hilbert series of a presented module.
pub fn hilbert_series<K: Field>(m: &PresentedModule<K>) -> HilbertSeries {
    let nvars = m.ring().nvars();
    let gb = m.relations_gb();
    let rank = m.cover_rank();
    let mut per_pos: Vec<Vec<Monomial>> = vec![vec![]; rank];
    for v in &gb {
        if let Some((t, _)) = v.lead_term() {
            per_pos[t.pos].push(t.mono.clone());
        }
    }
    let mut num = Laurent::zero();
    for (v, lt) in per_pos.iter().enumerate() {
        let n_v = monomial_ideal_numerator(lt).shift(m.cover()[v]);
        num = num.add(&n_v);
    }
    HilbertSeries::from_numerator(nvars, num)
}

/// Hilbert series of the ring itself.
pub fn ring_hilbert<K: Field>(ring: &crate::ring::GradedRing<K>) -> HilbertSeries {
    hilbert_series(&PresentedModule::ring_module(ring.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::poly::Polynomial;
    use crate::ring::GradedRing;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn laurent_division() {
        // 1 - 3t^2 + 2t^3 = (1-t)^2 (1 + 2t)
        let p = Laurent { offset: 0, coeffs: vec![1, 0, -3, 2] };
        let q = p.div_one_minus_t().unwrap();
        assert_eq!(q, Laurent { offset: 0, coeffs: vec![1, 1, -2] });
        let r = q.div_one_minus_t().unwrap();
        assert_eq!(r, Laurent { offset: 0, coeffs: vec![1, 2] });
        assert!(r.div_one_minus_t().is_none());
    }

    #[test]
    fn polynomial_ring_series() {
        let f = fp();
        let s = GradedRing::define(f, vec!["x".into(), "y".into()], vec![]).unwrap();
        let hs = ring_hilbert(&s);
        assert_eq!(hs.numerator, Laurent::one());
        assert_eq!(hs.dim, 2);
        assert_eq!(hs.multiplicity, 1);
        assert_eq!(
            hs.values(0, 4),
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
        );
    }

    #[test]
    fn hypersurface_series() {
        let f = fp();
        let xy = Polynomial::from_terms(&f, 2, vec![(mono(&[1, 1]), 1)]);
        let r = GradedRing::define(f, vec!["x".into(), "y".into()], vec![xy]).unwrap();
        let hs = ring_hilbert(&r);
        assert_eq!(hs.dim, 1);
        assert_eq!(hs.multiplicity, 2);
        assert_eq!(hs.values(0, 3), vec![(0, 1), (1, 2), (2, 2), (3, 2)]);
    }

    #[test]
    fn artinian_series_and_length() {
        let f = fp();
        let gens = vec![
            Polynomial::from_terms(&f, 2, vec![(mono(&[2, 0]), 1)]),
            Polynomial::from_terms(&f, 2, vec![(mono(&[1, 1]), 1)]),
            Polynomial::from_terms(&f, 2, vec![(mono(&[0, 2]), 1)]),
        ];
        let r = GradedRing::define(f, vec!["x".into(), "y".into()], gens).unwrap();
        let hs = ring_hilbert(&r);
        assert_eq!(hs.dim, 0);
        assert_eq!(hs.multiplicity, 3);
        assert_eq!(hs.values(0, 3), vec![(0, 1), (1, 2), (2, 0), (3, 0)]);
    }

    #[test]
    fn ideal_as_module_series() {
        // (x) inside F[x,y]/(xy): HF is 0,1,1,1,...
        let f = fp();
        let xy = Polynomial::from_terms(&f, 2, vec![(mono(&[1, 1]), 1)]);
        let r = GradedRing::define(f.clone(), vec!["x".into(), "y".into()], vec![xy]).unwrap();
        let x = r.var_poly(0);
        let m = crate::module::present_subquotient(
            &r,
            &[0],
            &[crate::vector::PolyVector::unit(2, 1, 0, x)],
            &[],
        )
        .unwrap();
        let hs = hilbert_series(&m);
        assert_eq!(hs.dim, 1);
        assert_eq!(hs.multiplicity, 1);
        assert_eq!(hs.values(0, 3), vec![(0, 0), (1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn zero_module_series() {
        let f = fp();
        let r = GradedRing::define(f, vec!["x".into()], vec![]).unwrap();
        let hs = hilbert_series(&PresentedModule::zero(r));
        assert_eq!(hs.dim, -1);
        assert_eq!(hs.multiplicity, 0);
        assert!(hs.numerator.is_zero());
    }

    #[test]
    fn shifting_shifts_the_series() {
        let f = fp();
        let r = GradedRing::define(f, vec!["x".into(), "y".into()], vec![]).unwrap();
        let m = PresentedModule::free(r, vec![0]);
        let shifted = m.shifted(3);
        let hs = hilbert_series(&shifted);
        assert_eq!(hs.value(2), 0);
        assert_eq!(hs.value(3), 1);
        assert_eq!(hs.value(4), 2);
    }
}
