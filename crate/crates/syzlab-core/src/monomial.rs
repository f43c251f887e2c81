//! Monomials with the graded reverse lexicographic order.

use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector in a fixed number of variables, total degree cached.
/// Exponents are machine-width; overflow is a hard error, not wraparound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        assert!(i < nvars);
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        let deg = exps
            .iter()
            .try_fold(0u32, |a, e| a.checked_add(*e))
            .expect("monomial degree overflow");
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("monomial exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg.checked_add(other.deg).expect("monomial degree overflow"),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn divide_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: SmallVec<[u32; 6]> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 6]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(&exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Degrevlex: higher total degree wins; on ties the smaller last nonzero
/// entry of the exponent difference wins (scan from the last variable).
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => {}
                // smaller exponent at the last differing variable = greater
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn degrevlex_hand_values() {
        // x^2*y > y^3 in two variables
        assert!(m(&[2, 1]) > m(&[0, 3]));
        // degree dominates
        assert!(m(&[0, 3]) > m(&[2, 0]));
        // x^2 > x*y > y^2
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        // x > y > z
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // classic degrevlex vs deglex separation: x*z vs y^2
        // diff (1,-2,1): last nonzero is +1 at z, so x*z is smaller
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn divisibility_and_quotient() {
        let a = m(&[1, 2]);
        let b = m(&[2, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.divide_into(&b), m(&[1, 0]));
        assert_eq!(a.lcm(&m(&[3, 0])), m(&[3, 2]));
        assert!(m(&[2, 0]).coprime(&m(&[0, 3])));
        assert!(!m(&[1, 1]).coprime(&m(&[0, 3])));
    }

    #[test]
    fn order_is_total_on_samples() {
        let mut v = vec![
            m(&[0, 0]),
            m(&[1, 0]),
            m(&[0, 1]),
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
            m(&[3, 0]),
        ];
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 7);
        for w in v.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}
