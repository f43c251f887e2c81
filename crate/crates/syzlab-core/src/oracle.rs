//! Dense linear-algebra verifier over monomial quotient rings. Everything
//! here works degree by degree on standard-monomial bases with plain row
//! reduction, sharing nothing with the Groebner path; tests compare the
//! two. Not used by any main-path computation.

use std::collections::BTreeMap;

use crate::field::{Field, Fp};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::GradedRing;
use crate::vector::PolyVector;

pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut exps = vec![0u32; nvars];
    fn rec(exps: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(exps, i + 1, left - e, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::from_exps(&[]));
        }
        return out;
    }
    rec(&mut exps, 0, d, &mut out);
    out
}

#[derive(Clone)]
pub struct Oracle {
    field: Fp,
    nvars: usize,
    /// Minimal monomial generators of the defining ideal.
    gens: Vec<Monomial>,
}

impl Oracle {
    /// Requires the defining ideal to be monomial.
    pub fn new(ring: &GradedRing<Fp>) -> Oracle {
        let gens = ring
            .gb()
            .iter()
            .map(|g| {
                assert_eq!(g.num_terms(), 1, "oracle needs a monomial ideal");
                g.lead_monomial().unwrap().clone()
            })
            .collect();
        Oracle { field: ring.field().clone(), nvars: ring.nvars(), gens }
    }

    pub fn field(&self) -> &Fp {
        &self.field
    }

    fn is_std(&self, m: &Monomial) -> bool {
        !self.gens.iter().any(|g| g.divides(m))
    }

    fn std_monomials(&self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return vec![];
        }
        monomials_of_degree(self.nvars, d as u32)
            .into_iter()
            .filter(|m| self.is_std(m))
            .collect()
    }

    /// Largest degree with a standard monomial; None if the quotient is
    /// not Artinian (checked up to a fixed horizon).
    pub fn ring_top_degree(&self) -> Option<i64> {
        let mut top = 0;
        for d in 0..=64i64 {
            let n = self.std_monomials(d).len();
            if n == 0 {
                return Some(top);
            }
            top = d;
        }
        None
    }
}

/// Graded piece of a free module with the given generator degrees, on
/// the standard-monomial basis.
pub struct FreePiece {
    pub basis: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl FreePiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl Oracle {
    fn free_piece(&self, shifts: &[i64], d: i64) -> FreePiece {
        let mut basis = vec![];
        for (v, &s) in shifts.iter().enumerate() {
            for m in self.std_monomials(d - s) {
                basis.push((v, m));
            }
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, key)| (key, i))
            .collect();
        FreePiece { basis, index }
    }

    /// Coordinates of mono * col in the piece; terms outside the standard
    /// basis are in the ideal and vanish.
    fn densify(
        &self,
        piece: &FreePiece,
        col: &PolyVector<Fp>,
        mono: &Monomial,
    ) -> Vec<u64> {
        let f = &self.field;
        let mut row = vec![0u64; piece.basis.len()];
        for (v, poly) in col.iter() {
            for (m, c) in poly.terms() {
                let prod = m.mul(mono);
                if let Some(&i) = piece.index.get(&(*v, prod)) {
                    row[i] = f.add(&row[i], c);
                }
            }
        }
        row
    }

    fn vector_from_dense(&self, piece: &FreePiece, rank: usize, row: &[u64]) -> PolyVector<Fp> {
        let f = &self.field;
        let mut per: BTreeMap<usize, Vec<(Monomial, u64)>> = BTreeMap::new();
        for (i, &c) in row.iter().enumerate() {
            if c != 0 {
                let (v, m) = &piece.basis[i];
                per.entry(*v).or_default().push((m.clone(), c));
            }
        }
        let entries = per
            .into_iter()
            .map(|(v, terms)| (v, Polynomial::from_terms(f, self.nvars, terms)))
            .collect();
        PolyVector::from_entries(self.nvars, rank, entries)
    }

    /// Image of a dense row under multiplication by the i-th variable.
    fn var_mul_dense(
        &self,
        from: &FreePiece,
        to: &FreePiece,
        i: usize,
        row: &[u64],
    ) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0u64; to.basis.len()];
        let xi = Monomial::var(self.nvars, i);
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                let (v, m) = &from.basis[j];
                let prod = m.mul(&xi);
                if let Some(&t) = to.index.get(&(*v, prod)) {
                    out[t] = f.add(&out[t], &c);
                }
            }
        }
        out
    }
}

/// Row space in reduced echelon form.
pub struct RowSpace {
    field: Fp,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Fp, ncols: usize) -> RowSpace {
        RowSpace { field, ncols, rows: vec![], pivots: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let c = v[p];
                for j in p..self.ncols {
                    if row[j] != 0 {
                        v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
                    }
                }
            }
        }
    }

    /// Reduces and inserts; returns true if the vector was independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for c in v.iter_mut() {
            *c = f.mul(c, &inv);
        }
        for row in self.rows.iter_mut() {
            if row[p] != 0 {
                let c = row[p];
                for j in 0..self.ncols {
                    if v[j] != 0 {
                        row[j] = f.sub(&row[j], &f.mul(&c, &v[j]));
                    }
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Kernel of the map whose columns are given in target coordinates.
pub fn nullspace(field: &Fp, nrows: usize, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let f = field;
    let n = cols.len();
    let mut rows: Vec<Vec<u64>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = f.inv(&rows[rank][col]);
        for j in col..n {
            rows[rank][j] = f.mul(&rows[rank][j], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                for j in col..n {
                    let s = f.mul(&c, &rows[rank][j]);
                    rows[r][j] = f.sub(&rows[r][j], &s);
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut kernel = vec![];
    for col in 0..n {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for j in 0..n {
            if let Some(r) = pivot_of_col[j] {
                v[j] = f.neg(&rows[r][col]);
            }
        }
        kernel.push(v);
    }
    kernel
}

pub fn rank_of_cols(field: &Fp, cols: &[Vec<u64>]) -> usize {
    let Some(first) = cols.first() else {
        return 0;
    };
    let mut rs = RowSpace::new(field.clone(), first.len());
    for c in cols {
        rs.insert(c.clone());
    }
    rs.rank()
}

/// Graded pieces of a presented module, with quotient coordinates.
pub struct ModulePieces {
    oracle: Oracle,
    shifts: Vec<i64>,
    rel: Vec<(i64, PolyVector<Fp>)>,
    cache: BTreeMap<i64, QPiece>,
}

pub struct QPiece {
    free: FreePiece,
    rel_rows: RowSpace,
    /// Free-basis positions representing the quotient basis.
    qpos: Vec<usize>,
}

impl ModulePieces {
    pub fn new(oracle: &Oracle, m: &PresentedModule<Fp>) -> ModulePieces {
        let rel = m
            .relations()
            .cols()
            .iter()
            .zip(m.relations().src_shifts())
            .map(|(c, &s)| (s, c.clone()))
            .collect();
        ModulePieces {
            oracle: oracle.clone(),
            shifts: m.cover().to_vec(),
            rel,
            cache: BTreeMap::new(),
        }
    }

    fn qpiece(&mut self, d: i64) -> &QPiece {
        if !self.cache.contains_key(&d) {
            let free = self.oracle.free_piece(&self.shifts, d);
            let mut rel_rows = RowSpace::new(self.oracle.field.clone(), free.dim());
            for (s, col) in &self.rel {
                for m in self.oracle.std_monomials(d - s) {
                    rel_rows.insert(self.oracle.densify(&free, col, &m));
                }
            }
            let pivots: Vec<usize> = rel_rows.pivots.clone();
            let qpos = (0..free.dim()).filter(|i| !pivots.contains(i)).collect();
            self.cache.insert(d, QPiece { free, rel_rows, qpos });
        }
        &self.cache[&d]
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.qpiece(d).qpos.len()
    }

    pub fn dims(&mut self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.dim(d)).collect()
    }

    fn qcoords(&mut self, d: i64, mut dense: Vec<u64>) -> Vec<u64> {
        let q = self.qpiece(d);
        q.rel_rows.reduce(&mut dense);
        q.qpos.iter().map(|&i| dense[i]).collect()
    }

    /// Class of mono * (quotient basis element) in degree d + deg mono.
    fn mul_mono(&mut self, d: i64, qc: &[u64], mono: &Monomial, scale: u64) -> Vec<u64> {
        let f = self.oracle.field.clone();
        let src: Vec<(usize, Monomial)> = {
            let q = self.qpiece(d);
            q.qpos.iter().map(|&i| q.free.basis[i].clone()).collect()
        };
        let e = d + mono.degree() as i64;
        let tgt = self.oracle.free_piece(&self.shifts, e);
        let mut dense = vec![0u64; tgt.dim()];
        for (j, &c) in qc.iter().enumerate() {
            if c != 0 {
                let (v, m) = &src[j];
                let prod = m.mul(mono);
                if let Some(&i) = tgt.index.get(&(*v, prod)) {
                    dense[i] = f.add(&dense[i], &f.mul(&c, &scale));
                }
            }
        }
        self.qcoords(e, dense)
    }

    fn mul_poly(&mut self, d: i64, qc: &[u64], poly: &Polynomial<Fp>) -> Option<(i64, Vec<u64>)> {
        let f = self.oracle.field.clone();
        let deg = poly.degree()? as i64;
        let e = d + deg;
        let dim_e = self.dim(e);
        let mut acc = vec![0u64; dim_e];
        for (m, c) in poly.terms() {
            let part = self.mul_mono(d, qc, m, *c);
            for (i, p) in part.iter().enumerate() {
                acc[i] = f.add(&acc[i], p);
            }
        }
        Some((e, acc))
    }

    pub fn min_degree(&self) -> i64 {
        self.shifts.iter().copied().min().unwrap_or(0)
    }

    /// Last degree with a nonzero piece. None for the zero module;
    /// panics if the module does not have finite length within the
    /// scanned horizon.
    pub fn top_degree(&mut self) -> Option<i64> {
        let lo = self.min_degree();
        let max_gen = self.shifts.iter().copied().max().unwrap_or(0);
        let max_rel = self.rel.iter().map(|(s, _)| *s).max().unwrap_or(max_gen);
        let horizon = max_gen.max(max_rel) + 80;
        let mut top = None;
        for d in lo..=horizon {
            if self.dim(d) > 0 {
                top = Some(d);
            } else if d > max_gen {
                return top;
            }
        }
        panic!("oracle requires a finite-length module");
    }
}

/// Resolution with explicit differentials, built from per-degree kernels.
pub struct OracleResolution {
    pub shifts: Vec<Vec<i64>>,
    /// diffs[i] are the columns of d_{i+1} in F_i coordinates.
    pub diffs: Vec<Vec<PolyVector<Fp>>>,
}

impl OracleResolution {
    pub fn betti(&self, i: usize) -> usize {
        self.shifts.get(i).map_or(0, |s| s.len())
    }
}

/// Minimal generators of a degreewise-complete family of subspaces of a
/// free module: completions of x * (degree d-1 basis) inside degree d.
fn minimal_gens_of_spaces(
    oracle: &Oracle,
    shifts: &[i64],
    spaces: &BTreeMap<i64, Vec<Vec<u64>>>,
) -> (Vec<i64>, Vec<PolyVector<Fp>>) {
    let rank = shifts.len();
    let mut degrees = vec![];
    let mut gens = vec![];
    for (&d, rows) in spaces {
        if rows.is_empty() {
            continue;
        }
        let piece = oracle.free_piece(shifts, d);
        let mut seen = RowSpace::new(oracle.field.clone(), piece.dim());
        if let Some(prev) = spaces.get(&(d - 1)) {
            let prev_piece = oracle.free_piece(shifts, d - 1);
            for row in prev {
                for i in 0..oracle.nvars {
                    seen.insert(oracle.var_mul_dense(&prev_piece, &piece, i, row));
                }
            }
        }
        for row in rows {
            if seen.insert(row.clone()) {
                degrees.push(d);
                gens.push(oracle.vector_from_dense(&piece, rank, row));
            }
        }
    }
    (degrees, gens)
}

/// Resolves a presented module by dense per-degree kernels, keeping
/// generators of degree <= gen_cap at every step.
pub fn oracle_resolve(
    oracle: &Oracle,
    m: &PresentedModule<Fp>,
    steps: usize,
    gen_cap: i64,
) -> OracleResolution {
    let f0 = m.cover().to_vec();
    let mut res = OracleResolution { shifts: vec![f0.clone()], diffs: vec![] };
    let rel: Vec<(i64, PolyVector<Fp>)> = m
        .relations()
        .cols()
        .iter()
        .zip(m.relations().src_shifts())
        .map(|(c, &s)| (s, c.clone()))
        .collect();
    let mut spaces: BTreeMap<i64, Vec<Vec<u64>>> = BTreeMap::new();
    let lo = rel.iter().map(|(s, _)| *s).min().unwrap_or(0);
    for d in lo..=gen_cap {
        let piece = oracle.free_piece(&f0, d);
        let mut rs = RowSpace::new(oracle.field.clone(), piece.dim());
        for (s, col) in &rel {
            for mono in oracle.std_monomials(d - s) {
                rs.insert(oracle.densify(&piece, col, &mono));
            }
        }
        spaces.insert(d, rs.rows().to_vec());
    }
    for step in 0..steps {
        let prev_shifts = res.shifts[step].clone();
        let (degrees, gens) = minimal_gens_of_spaces(oracle, &prev_shifts, &spaces);
        res.shifts.push(degrees.clone());
        res.diffs.push(gens.clone());
        if step + 1 == steps {
            break;
        }
        let mut next: BTreeMap<i64, Vec<Vec<u64>>> = BTreeMap::new();
        let lo = degrees.iter().copied().min().unwrap_or(0);
        for e in lo..=gen_cap {
            let unknowns = oracle.free_piece(&degrees, e);
            let target = oracle.free_piece(&prev_shifts, e);
            let cols: Vec<Vec<u64>> = unknowns
                .basis
                .iter()
                .map(|(u, mono)| oracle.densify(&target, &gens[*u], mono))
                .collect();
            let raw = nullspace(&oracle.field, target.dim(), &cols);
            let mut rs = RowSpace::new(oracle.field.clone(), unknowns.dim());
            for row in raw {
                rs.insert(row);
            }
            next.insert(e, rs.rows().to_vec());
        }
        spaces = next;
    }
    res
}

pub fn hom_dims(
    oracle: &Oracle,
    m: &PresentedModule<Fp>,
    n: &PresentedModule<Fp>,
    lo: i64,
    hi: i64,
) -> Vec<usize> {
    let mut np = ModulePieces::new(oracle, n);
    let cover = m.cover().to_vec();
    let mut out = vec![];
    for d in lo..=hi {
        let block_dims: Vec<usize> = cover.iter().map(|&s| np.dim(s + d)).collect();
        let offsets: Vec<usize> = block_dims
            .iter()
            .scan(0, |acc, &b| {
                let o = *acc;
                *acc += b;
                Some(o)
            })
            .collect();
        let total: usize = block_dims.iter().sum();
        let mut cols: Vec<Vec<u64>> = vec![];
        let mut tgt_rows = 0;
        let mut images: Vec<Vec<(usize, Vec<u64>)>> = vec![vec![]; total];
        for (j, col) in m.relations().cols().iter().enumerate() {
            let sj = m.relations().src_shifts()[j];
            let row_dim = np.dim(sj + d);
            for (v, poly) in col.iter() {
                for q in 0..block_dims[*v] {
                    let mut unit = vec![0u64; block_dims[*v]];
                    unit[q] = 1;
                    if let Some((e, img)) = np.mul_poly(cover[*v] + d, &unit, poly) {
                        debug_assert_eq!(e, sj + d);
                        images[offsets[*v] + q].push((tgt_rows, img));
                    }
                }
            }
            tgt_rows += row_dim;
        }
        for img_parts in images {
            let mut col = vec![0u64; tgt_rows];
            for (base, part) in img_parts {
                for (i, &c) in part.iter().enumerate() {
                    col[base + i] = oracle.field.add(&col[base + i], &c);
                }
            }
            cols.push(col);
        }
        out.push(nullspace(&oracle.field, tgt_rows, &cols).len());
    }
    out
}

pub fn socle_dims(
    oracle: &Oracle,
    m: &PresentedModule<Fp>,
    lo: i64,
    hi: i64,
) -> Vec<usize> {
    let mut mp = ModulePieces::new(oracle, m);
    let mut out = vec![];
    for d in lo..=hi {
        let dim = mp.dim(d);
        let up = mp.dim(d + 1);
        let mut cols = vec![];
        for q in 0..dim {
            let mut unit = vec![0u64; dim];
            unit[q] = 1;
            let mut col = vec![0u64; up * oracle.nvars];
            for i in 0..oracle.nvars {
                let xi = Monomial::var(oracle.nvars, i);
                let img = mp.mul_mono(d, &unit, &xi, 1);
                for (t, &c) in img.iter().enumerate() {
                    col[i * up + t] = c;
                }
            }
            cols.push(col);
        }
        out.push(nullspace(&oracle.field, up * oracle.nvars, &cols).len());
    }
    out
}

fn hom_delta_cols(
    oracle: &Oracle,
    res: &OracleResolution,
    j: usize,
    np: &mut ModulePieces,
    d: i64,
) -> (Vec<Vec<u64>>, usize) {
    let src_shifts = &res.shifts[j];
    let tgt_shifts = &res.shifts[j + 1];
    let diff = &res.diffs[j];
    let tgt_block: Vec<usize> = tgt_shifts.iter().map(|&f| np.dim(f + d)).collect();
    let tgt_total: usize = tgt_block.iter().sum();
    let tgt_offsets: Vec<usize> = tgt_block
        .iter()
        .scan(0, |acc, &b| {
            let o = *acc;
            *acc += b;
            Some(o)
        })
        .collect();
    let mut cols = vec![];
    for (u, &fu) in src_shifts.iter().enumerate() {
        for q in 0..np.dim(fu + d) {
            let mut unit = vec![0u64; np.dim(fu + d)];
            unit[q] = 1;
            let mut col = vec![0u64; tgt_total];
            for (w, dw) in diff.iter().enumerate() {
                if let Some(poly) = dw.get(u) {
                    if let Some((_, img)) = np.mul_poly(fu + d, &unit, poly) {
                        for (t, &c) in img.iter().enumerate() {
                            col[tgt_offsets[w] + t] =
                                oracle.field.add(&col[tgt_offsets[w] + t], &c);
                        }
                    }
                }
            }
            cols.push(col);
        }
    }
    (cols, tgt_total)
}

/// Ext^i(M,N) graded dimensions for i >= 1; N must have finite length.
pub fn ext_dims(
    oracle: &Oracle,
    m: &PresentedModule<Fp>,
    n: &PresentedModule<Fp>,
    i: usize,
    lo: i64,
    hi: i64,
) -> Vec<usize> {
    assert!(i >= 1);
    let mut np = ModulePieces::new(oracle, n);
    let Some(top) = np.top_degree() else {
        return vec![0; (hi - lo + 1) as usize];
    };
    let gen_cap = (top - lo).max(m.cover().iter().copied().max().unwrap_or(0)) + 1;
    let res = oracle_resolve(oracle, m, i + 1, gen_cap);
    let mut out = vec![];
    for d in lo..=hi {
        let (ker_cols, _) = hom_delta_cols(oracle, &res, i, &mut np, d);
        let kernel = ker_cols.len() - rank_of_cols(&oracle.field, &ker_cols);
        let (im_cols, _) = hom_delta_cols(oracle, &res, i - 1, &mut np, d);
        let image = rank_of_cols(&oracle.field, &im_cols);
        out.push(kernel - image);
    }
    out
}

fn tensor_cols(
    oracle: &Oracle,
    res: &OracleResolution,
    j: usize,
    np: &mut ModulePieces,
    d: i64,
) -> (Vec<Vec<u64>>, usize) {
    let src_shifts = &res.shifts[j + 1];
    let tgt_shifts = &res.shifts[j];
    let diff = &res.diffs[j];
    let tgt_block: Vec<usize> = tgt_shifts.iter().map(|&f| np.dim(d - f)).collect();
    let tgt_total: usize = tgt_block.iter().sum();
    let tgt_offsets: Vec<usize> = tgt_block
        .iter()
        .scan(0, |acc, &b| {
            let o = *acc;
            *acc += b;
            Some(o)
        })
        .collect();
    let mut cols = vec![];
    for (u, &fu) in src_shifts.iter().enumerate() {
        for q in 0..np.dim(d - fu) {
            let mut unit = vec![0u64; np.dim(d - fu)];
            unit[q] = 1;
            let mut col = vec![0u64; tgt_total];
            for (v, poly) in diff[u].iter() {
                if let Some((_, img)) = np.mul_poly(d - fu, &unit, poly) {
                    for (t, &c) in img.iter().enumerate() {
                        col[tgt_offsets[*v] + t] =
                            oracle.field.add(&col[tgt_offsets[*v] + t], &c);
                    }
                }
            }
            cols.push(col);
        }
    }
    (cols, tgt_total)
}

/// Tor_i(M,N) graded dimensions for i >= 1; N must have finite length.
pub fn tor_dims(
    oracle: &Oracle,
    m: &PresentedModule<Fp>,
    n: &PresentedModule<Fp>,
    i: usize,
    lo: i64,
    hi: i64,
) -> Vec<usize> {
    assert!(i >= 1);
    let mut np = ModulePieces::new(oracle, n);
    if np.top_degree().is_none() {
        return vec![0; (hi - lo + 1) as usize];
    }
    let min_n = np.min_degree();
    let gen_cap = (hi - min_n).max(m.cover().iter().copied().max().unwrap_or(0)) + 1;
    let res = oracle_resolve(oracle, m, i + 1, gen_cap);
    let mut out = vec![];
    for d in lo..=hi {
        let (ti_cols, _) = tensor_cols(oracle, &res, i - 1, &mut np, d);
        let kernel = ti_cols.len() - rank_of_cols(&oracle.field, &ti_cols);
        let (tnext_cols, _) = tensor_cols(oracle, &res, i, &mut np, d);
        let image = rank_of_cols(&oracle.field, &tnext_cols);
        out.push(kernel - image);
    }
    out
}

/// Betti numbers by iterated dense kernels; the ring must be Artinian so
/// generator degrees are self-bounding.
pub fn oracle_betti(oracle: &Oracle, m: &PresentedModule<Fp>, steps: usize) -> Vec<usize> {
    let top = oracle
        .ring_top_degree()
        .expect("betti oracle needs an Artinian ring");
    let max_cover = m.cover().iter().copied().max().unwrap_or(0);
    let gen_cap = max_cover + (steps as i64 + 1) * (top + 1);
    let res = oracle_resolve(oracle, m, steps, gen_cap);
    (0..=steps).map(|i| res.betti(i)).collect()
}

/// Free-summand test: some homomorphism M -> R hits a unit.
pub fn oracle_has_free_summand(oracle: &Oracle, m: &PresentedModule<Fp>) -> bool {
    let ring = m.ring().clone();
    let r = PresentedModule::ring_module(ring);
    let mut rp = ModulePieces::new(oracle, &r);
    let cover = m.cover().to_vec();
    for (v, &sv) in cover.iter().enumerate() {
        let d = -sv;
        let block_dims: Vec<usize> = cover.iter().map(|&s| rp.dim(s + d)).collect();
        let offsets: Vec<usize> = block_dims
            .iter()
            .scan(0, |acc, &b| {
                let o = *acc;
                *acc += b;
                Some(o)
            })
            .collect();
        let total: usize = block_dims.iter().sum();
        if block_dims[v] == 0 {
            continue;
        }
        let mut tgt_rows = 0;
        let mut images: Vec<Vec<(usize, Vec<u64>)>> = vec![vec![]; total];
        for (j, col) in m.relations().cols().iter().enumerate() {
            let sj = m.relations().src_shifts()[j];
            let row_dim = rp.dim(sj + d);
            for (w, poly) in col.iter() {
                for q in 0..block_dims[*w] {
                    let mut unit = vec![0u64; block_dims[*w]];
                    unit[q] = 1;
                    if let Some((_, img)) = rp.mul_poly(cover[*w] + d, &unit, poly) {
                        images[offsets[*w] + q].push((tgt_rows, img));
                    }
                }
            }
            tgt_rows += row_dim;
        }
        let cols: Vec<Vec<u64>> = images
            .into_iter()
            .map(|parts| {
                let mut col = vec![0u64; tgt_rows];
                for (base, part) in parts {
                    for (i, &c) in part.iter().enumerate() {
                        col[base + i] = oracle.field.add(&col[base + i], &c);
                    }
                }
                col
            })
            .collect();
        let kernel = nullspace(&oracle.field, tgt_rows, &cols);
        let unit_pos = offsets[v];
        if kernel.iter().any(|k| k[unit_pos] != 0) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::present_subquotient;

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

    fn r1() -> GradedRing<Fp> {
        mono_ring(vec!["x", "y"], &[&[1, 1]])
    }

    fn r2() -> GradedRing<Fp> {
        mono_ring(vec!["x", "y"], &[&[2, 0], &[1, 1], &[0, 2]])
    }

    fn ideal_module(ring: &GradedRing<Fp>, exps: &[&[u32]]) -> PresentedModule<Fp> {
        let f = ring.field().clone();
        let cols: Vec<PolyVector<Fp>> = exps
            .iter()
            .map(|e| {
                let g = Polynomial::from_terms(&f, ring.nvars(), vec![(Monomial::from_exps(e), 1)]);
                PolyVector::unit(ring.nvars(), 1, 0, g)
            })
            .collect();
        present_subquotient(ring, &[0], &cols, &[]).unwrap()
    }

    #[test]
    fn standard_monomial_counts() {
        let o = Oracle::new(&r2());
        assert_eq!(o.std_monomials(0).len(), 1);
        assert_eq!(o.std_monomials(1).len(), 2);
        assert_eq!(o.std_monomials(2).len(), 0);
        assert_eq!(o.ring_top_degree(), Some(1));
        let o = Oracle::new(&r1());
        assert_eq!(o.std_monomials(3).len(), 2);
        assert_eq!(o.ring_top_degree(), None);
    }

    #[test]
    fn module_dims_match_known_values() {
        let r = r1();
        let o = Oracle::new(&r);
        let m = ideal_module(&r, &[&[1, 0]]);
        let mut mp = ModulePieces::new(&o, &m);
        assert_eq!(mp.dims(0, 3), vec![0, 1, 1, 1]);
        let k = PresentedModule::residue_field(r);
        let mut kp = ModulePieces::new(&o, &k);
        assert_eq!(kp.dims(0, 2), vec![1, 0, 0]);
        assert_eq!(kp.top_degree(), Some(0));
    }

    #[test]
    fn hom_dims_match_dual_shift() {
        let r = r1();
        let o = Oracle::new(&r);
        let m = ideal_module(&r, &[&[1, 0]]);
        let n = PresentedModule::ring_module(r);
        assert_eq!(hom_dims(&o, &m, &n, -1, 2), vec![0, 1, 1, 1]);
    }

    #[test]
    fn socle_of_short_ring_sits_in_degree_one() {
        let r = r2();
        let o = Oracle::new(&r);
        let m = PresentedModule::ring_module(r);
        assert_eq!(socle_dims(&o, &m, 0, 2), vec![0, 2, 0]);
    }

    #[test]
    fn betti_numbers_double_over_short_ring() {
        let r = r2();
        let o = Oracle::new(&r);
        let k = PresentedModule::residue_field(r);
        assert_eq!(oracle_betti(&o, &k, 4), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn ext_and_tor_of_k_over_short_ring() {
        let r = r2();
        let o = Oracle::new(&r);
        let k = PresentedModule::residue_field(r);
        assert_eq!(ext_dims(&o, &k, &k, 1, -1, 0), vec![2, 0]);
        assert_eq!(ext_dims(&o, &k, &k, 2, -2, -1), vec![4, 0]);
        assert_eq!(tor_dims(&o, &k, &k, 1, 0, 2), vec![0, 2, 0]);
        assert_eq!(tor_dims(&o, &k, &k, 3, 2, 4), vec![0, 8, 0]);
    }

    #[test]
    fn free_summand_detection() {
        let r = r1();
        let o = Oracle::new(&r);
        let m = ideal_module(&r, &[&[1, 0]]);
        assert!(!oracle_has_free_summand(&o, &m));
        let free = PresentedModule::ring_module(r.clone());
        let sum = PresentedModule::direct_sum(&[&free, &m]).unwrap();
        assert!(oracle_has_free_summand(&o, &sum));
    }
}
