//! Standard-graded quotient rings R = k[x_1..x_n]/I.
//!
//! Graded-local conventions: the irrelevant maximal ideal is generated by
//! the variables and the residue field is R/m. The reduced Groebner basis
//! of the defining ideal is computed once and cached; all quotient
//! arithmetic reduces against it.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger_ideal, poly_normal_form};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedRing<K: Field> {
    field: K,
    vars: Vec<String>,
    ideal: Vec<Polynomial<K>>,
    gb: Vec<Polynomial<K>>,
}

impl<K: Field> GradedRing<K> {
    /// Quotient of the polynomial ring on `vars` by `ideal`. Generators
    /// must be homogeneous of matching arity; the unit ideal is rejected.
    pub fn define(field: K, vars: Vec<String>, ideal: Vec<Polynomial<K>>) -> Result<Self> {
        let nvars = vars.len();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(AlgebraError::InvalidInput("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidInput(format!("duplicate variable {}", v)));
            }
        }
        let mut gens = vec![];
        for g in ideal {
            if g.nvars() != nvars {
                return Err(AlgebraError::ArityMismatch { expected: nvars, found: g.nvars() });
            }
            if !g.is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous(format!("{:?}", g)));
            }
            if g.is_zero() {
                continue;
            }
            if g.degree() == Some(0) {
                return Err(AlgebraError::UnitIdeal);
            }
            gens.push(g);
        }
        let gb = buchberger_ideal(&field, nvars, &gens);
        if gb.iter().any(|g| g.is_unit_constant()) {
            return Err(AlgebraError::UnitIdeal);
        }
        Ok(GradedRing { field, vars, ideal: gens, gb })
    }

    /// The ambient polynomial ring on the same variables.
    pub fn ambient(&self) -> GradedRing<K> {
        GradedRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            ideal: vec![],
            gb: vec![],
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn ideal_gens(&self) -> &[Polynomial<K>] {
        &self.ideal
    }

    /// Cached reduced Groebner basis of the defining ideal.
    pub fn gb(&self) -> &[Polynomial<K>] {
        &self.gb
    }

    pub fn is_ambient(&self) -> bool {
        self.gb.is_empty()
    }

    /// Normal form in the quotient; the canonical representative.
    pub fn nf(&self, f: &Polynomial<K>) -> Polynomial<K> {
        poly_normal_form(&self.field, f, &self.gb)
    }

    pub fn var_poly(&self, i: usize) -> Polynomial<K> {
        Polynomial::var(&self.field, self.nvars(), i)
    }

    /// The variables as polynomials: generators of the maximal ideal m.
    pub fn maximal_ideal_gens(&self) -> Vec<Polynomial<K>> {
        (0..self.nvars()).map(|i| self.var_poly(i)).collect()
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

    fn xy_ring() -> GradedRing<Fp> {
        let f = fp();
        let xy = Polynomial::from_terms(&f, 2, vec![(Monomial::from_exps(&[1, 1]), 1)]);
        GradedRing::define(f, vec!["x".into(), "y".into()], vec![xy]).unwrap()
    }

    #[test]
    fn normal_form_kills_ideal_members() {
        let r = xy_ring();
        let f = r.field().clone();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let xy = x.mul(&f, &y);
        assert!(r.nf(&xy).is_zero());
        let x2 = x.mul(&f, &x);
        assert_eq!(r.nf(&x2), x2);
    }

    #[test]
    fn unit_ideal_rejected() {
        let f = fp();
        let one = Polynomial::one(&f, 1);
        let err = GradedRing::define(f.clone(), vec!["x".into()], vec![one]).unwrap_err();
        assert_eq!(err, AlgebraError::UnitIdeal);
        // and a disguised unit: (x, x - 1) is not homogeneous, (x) with x both...
        let x = Polynomial::var(&f, 1, 0);
        let ok = GradedRing::define(f, vec!["x".into()], vec![x]).unwrap();
        assert_eq!(ok.gb().len(), 1);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let f = fp();
        let x = Polynomial::var(&f, 1, 0);
        let bad = x.add(&f, &Polynomial::one(&f, 1)); // x + 1
        assert!(matches!(
            GradedRing::define(f, vec!["x".into()], vec![bad]),
            Err(AlgebraError::NotHomogeneous(_))
        ));
    }
}
