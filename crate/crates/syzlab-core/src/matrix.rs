//! Homogeneous matrices between graded free modules, stored columnwise.

use crate::field::Field;
use crate::poly::Polynomial;
use crate::vector::PolyVector;

/// A degree-zero map F_src -> F_tgt of graded free modules. Row r of
/// column c has polynomial degree src_shifts[c] - tgt_shifts[r].
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<K: Field> {
    nvars: usize,
    tgt_shifts: Vec<i64>,
    src_shifts: Vec<i64>,
    cols: Vec<PolyVector<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn new(
        nvars: usize,
        tgt_shifts: Vec<i64>,
        src_shifts: Vec<i64>,
        cols: Vec<PolyVector<K>>,
    ) -> Self {
        assert_eq!(src_shifts.len(), cols.len());
        for col in &cols {
            assert_eq!(col.rank(), tgt_shifts.len());
        }
        PolyMatrix { nvars, tgt_shifts, src_shifts, cols }
    }

    pub fn zero_cols(nvars: usize, tgt_shifts: Vec<i64>) -> Self {
        PolyMatrix { nvars, tgt_shifts, src_shifts: vec![], cols: vec![] }
    }

    pub fn identity(field: &K, nvars: usize, shifts: &[i64]) -> Self {
        let rank = shifts.len();
        let cols = (0..rank)
            .map(|i| PolyVector::unit(nvars, rank, i, Polynomial::one(field, nvars)))
            .collect();
        PolyMatrix {
            nvars,
            tgt_shifts: shifts.to_vec(),
            src_shifts: shifts.to_vec(),
            cols,
        }
    }

    /// Build from dense rows of polynomials (row-major), for tests and parsing.
    pub fn from_rows(
        nvars: usize,
        tgt_shifts: Vec<i64>,
        src_shifts: Vec<i64>,
        rows: Vec<Vec<Polynomial<K>>>,
    ) -> Self {
        let nrows = tgt_shifts.len();
        let ncols = src_shifts.len();
        assert_eq!(rows.len(), nrows);
        let mut cols = vec![];
        for c in 0..ncols {
            let entries: Vec<(usize, Polynomial<K>)> = (0..nrows)
                .filter_map(|r| {
                    let f = rows[r][c].clone();
                    if f.is_zero() {
                        None
                    } else {
                        Some((r, f))
                    }
                })
                .collect();
            cols.push(PolyVector::from_entries(nvars, nrows, entries));
        }
        PolyMatrix { nvars, tgt_shifts, src_shifts, cols }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn nrows(&self) -> usize {
        self.tgt_shifts.len()
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn tgt_shifts(&self) -> &[i64] {
        &self.tgt_shifts
    }
    pub fn src_shifts(&self) -> &[i64] {
        &self.src_shifts
    }
    pub fn cols(&self) -> &[PolyVector<K>] {
        &self.cols
    }
    pub fn col(&self, c: usize) -> &PolyVector<K> {
        &self.cols[c]
    }

    pub fn entry(&self, field: &K, r: usize, c: usize) -> Polynomial<K> {
        let _ = field;
        self.cols[c]
            .get(r)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, col)| {
            col.is_homogeneous(&self.tgt_shifts)
                && col
                    .degree(&self.tgt_shifts)
                    .map_or(true, |d| d == self.src_shifts[j])
        })
    }

    /// All entries in the graded maximal ideal (no unit entries).
    pub fn is_minimal(&self) -> bool {
        self.cols
            .iter()
            .flat_map(|c| c.iter())
            .all(|(_, f)| !f.has_constant_term())
    }

    /// Matrix of the dual map between dual free modules.
    pub fn transpose(&self, field: &K) -> Self {
        let nrows = self.nrows();
        let ncols = self.ncols();
        let mut new_cols = vec![];
        for r in 0..nrows {
            let mut entries = vec![];
            for c in 0..ncols {
                let e = self.entry(field, r, c);
                if !e.is_zero() {
                    entries.push((c, e));
                }
            }
            new_cols.push(PolyVector::from_entries(self.nvars, ncols, entries));
        }
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.src_shifts.iter().map(|s| -s).collect(),
            src_shifts: self.tgt_shifts.iter().map(|s| -s).collect(),
            cols: new_cols,
        }
    }

    pub fn apply(&self, field: &K, v: &PolyVector<K>) -> PolyVector<K> {
        assert_eq!(v.rank(), self.ncols());
        let mut out = PolyVector::zero(self.nvars, self.nrows());
        for (c, f) in v.iter() {
            out = out.add(field, &self.cols[*c].mul_poly(field, f));
        }
        out
    }

    pub fn compose(&self, field: &K, other: &PolyMatrix<K>) -> PolyMatrix<K> {
        // self . other : src(other) -> tgt(self)
        assert_eq!(self.src_shifts, other.tgt_shifts);
        let cols = other.cols.iter().map(|c| self.apply(field, c)).collect();
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.tgt_shifts.clone(),
            src_shifts: other.src_shifts.clone(),
            cols,
        }
    }

    pub fn hstack(&self, other: &PolyMatrix<K>) -> PolyMatrix<K> {
        assert_eq!(self.tgt_shifts, other.tgt_shifts);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        let mut src = self.src_shifts.clone();
        src.extend_from_slice(&other.src_shifts);
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.tgt_shifts.clone(),
            src_shifts: src,
            cols,
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> PolyMatrix<K> {
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.tgt_shifts.clone(),
            src_shifts: self.src_shifts.clone(),
            cols: self.cols.iter().map(|c| c.map_entries(&f)).collect(),
        }
    }

    pub fn drop_zero_columns(&self) -> PolyMatrix<K> {
        let mut cols = vec![];
        let mut src = vec![];
        for (j, c) in self.cols.iter().enumerate() {
            if !c.is_zero() {
                cols.push(c.clone());
                src.push(self.src_shifts[j]);
            }
        }
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.tgt_shifts.clone(),
            src_shifts: src,
            cols,
        }
    }

    /// Kronecker-style block constructions used by Hom and tensor.
    ///
    /// blocks(v, u) of self at slot-major flattening: see homology.
    pub fn shift_degrees(&self, delta: i64) -> PolyMatrix<K> {
        PolyMatrix {
            nvars: self.nvars,
            tgt_shifts: self.tgt_shifts.iter().map(|s| s + delta).collect(),
            src_shifts: self.src_shifts.iter().map(|s| s + delta).collect(),
            cols: self.cols.clone(),
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

    #[test]
    fn transpose_round_trips() {
        let f = fp();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let m = PolyMatrix::from_rows(
            2,
            vec![0, 1],
            vec![1, 2],
            vec![vec![x.clone(), Polynomial::zero(2)], vec![Polynomial::zero(2), y.clone()]],
        );
        assert!(m.is_homogeneous());
        let t = m.transpose(&f);
        assert!(t.is_homogeneous());
        let back = t.transpose(&f);
        assert_eq!(back.cols(), m.cols());
        assert_eq!(back.tgt_shifts(), m.tgt_shifts());
    }

    #[test]
    fn compose_shapes_and_values() {
        let f = fp();
        let x = Polynomial::var(&f, 1, 0);
        // [x] . [x] = [x^2]
        let a = PolyMatrix::from_rows(1, vec![0], vec![1], vec![vec![x.clone()]]);
        let b = PolyMatrix::from_rows(1, vec![1], vec![2], vec![vec![x.clone()]]);
        let ab = a.compose(&f, &b);
        let e = ab.entry(&f, 0, 0);
        assert_eq!(e.degree(), Some(2));
    }
}
