//! Buchberger's algorithm for submodules of graded free modules.
//!
//! One engine serves ideals (rank 1) and modules. Quotient-ring
//! computations lift to the ambient polynomial ring: callers append the
//! ideal's generators times each basis vector as extra columns.
//!
//! Pair selection is the normal strategy (lowest degree first, then
//! lexicographic on indices). The product criterion applies only at rank
//! one; the chain criterion applies to pairs with a common lead position
//! once both subsidiary pairs have been treated.

use std::collections::BTreeSet;

use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vector::{ModTerm, PolyVector};

pub struct GroebnerEngine<K: Field> {
    field: K,
    nvars: usize,
    rank: usize,
    tgt_shifts: Vec<i64>,
    basis: Vec<PolyVector<K>>,
    leads: Vec<ModTerm>,
    by_pos: Vec<Vec<usize>>,
    /// (s-pair degree, i, j) with i < j; BTreeSet pops ascending.
    queue: BTreeSet<(i64, usize, usize)>,
    treated: BTreeSet<(usize, usize)>,
}

impl<K: Field> GroebnerEngine<K> {
    pub fn new(field: K, nvars: usize, tgt_shifts: Vec<i64>) -> Self {
        let rank = tgt_shifts.len();
        GroebnerEngine {
            field,
            nvars,
            rank,
            tgt_shifts,
            basis: vec![],
            leads: vec![],
            by_pos: vec![vec![]; rank],
            queue: BTreeSet::new(),
            treated: BTreeSet::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[PolyVector<K>] {
        &self.basis
    }

    fn find_reducer(&self, t: &ModTerm) -> Option<usize> {
        self.by_pos[t.pos]
            .iter()
            .copied()
            .find(|&i| self.leads[i].mono.divides(&t.mono))
    }

    /// Full normal form: every term of the result is irreducible.
    pub fn normal_form(&self, v: &PolyVector<K>) -> PolyVector<K> {
        let mut work = v.clone();
        let mut done: Vec<(usize, Polynomial<K>)> = vec![];
        while let Some((t, c)) = work.lead_term() {
            let c = c.clone();
            match self.find_reducer(&t) {
                Some(i) => {
                    let g = &self.basis[i];
                    let q = self.leads[i].mono.divide_into(&t.mono);
                    work = work.sub(&self.field, &g.mul_term(&self.field, &q, &c));
                }
                None => {
                    // move the irreducible lead term into the result
                    let term = Polynomial::monomial(&self.field, t.mono.clone(), c);
                    work = work.sub(
                        &self.field,
                        &PolyVector::unit(self.nvars, self.rank, t.pos, term.clone()),
                    );
                    done.push((t.pos, term));
                }
            }
        }
        let mut acc = PolyVector::zero(self.nvars, self.rank);
        for (pos, term) in done {
            acc = acc.add(
                &self.field,
                &PolyVector::unit(self.nvars, self.rank, pos, term),
            );
        }
        acc
    }

    /// Reduce, and if nonzero insert (monic) and queue its pairs.
    pub fn add_generator(&mut self, v: &PolyVector<K>) {
        let nf = self.normal_form(v);
        if nf.is_zero() {
            return;
        }
        self.insert(nf.monic(&self.field));
    }

    fn insert(&mut self, v: PolyVector<K>) {
        let (lead, _) = v.lead_term().expect("inserting zero vector");
        let idx = self.basis.len();
        for &other in &self.by_pos[lead.pos] {
            let lcm = self.leads[other].mono.lcm(&lead.mono);
            let deg = lcm.degree() as i64 + self.tgt_shifts[lead.pos];
            self.queue.insert((deg, other.min(idx), other.max(idx)));
        }
        self.by_pos[lead.pos].push(idx);
        self.leads.push(lead);
        self.basis.push(v);
    }

    fn spair(&self, i: usize, j: usize) -> PolyVector<K> {
        let (li, lj) = (&self.leads[i], &self.leads[j]);
        debug_assert_eq!(li.pos, lj.pos);
        let lcm = li.mono.lcm(&lj.mono);
        let ui = li.mono.divide_into(&lcm);
        let uj = lj.mono.divide_into(&lcm);
        let one = self.field.one();
        self.basis[i]
            .mul_term(&self.field, &ui, &one)
            .sub(&self.field, &self.basis[j].mul_term(&self.field, &uj, &one))
    }

    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let pos = self.leads[i].pos;
        self.by_pos[pos].iter().copied().any(|k| {
            k != i
                && k != j
                && self.leads[k].mono.divides(lcm)
                && self.treated.contains(&(i.min(k), i.max(k)))
                && self.treated.contains(&(j.min(k), j.max(k)))
        })
    }

    /// Process all queued pairs; afterwards the basis is a Groebner basis.
    pub fn saturate(&mut self) {
        while let Some(&(deg, i, j)) = self.queue.iter().next() {
            self.queue.remove(&(deg, i, j));
            self.treated.insert((i, j));
            let (li, lj) = (&self.leads[i], &self.leads[j]);
            // product criterion is only valid in the ideal case
            if self.rank == 1 && li.mono.coprime(&lj.mono) {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            if self.chain_criterion(i, j, &lcm) {
                continue;
            }
            let s = self.spair(i, j);
            let nf = self.normal_form(&s);
            if !nf.is_zero() {
                self.insert(nf.monic(&self.field));
            }
        }
    }

    pub fn contains(&self, v: &PolyVector<K>) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Monic, autoreduced, canonically sorted basis. Unique for a given
    /// submodule regardless of generator order.
    pub fn reduced_basis(&self) -> Vec<PolyVector<K>> {
        // keep only elements whose lead no other kept lead divides
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        // ascending lead order so small leads are kept first
        order.sort_by(|&a, &b| self.leads[a].cmp_pot(&self.leads[b]));
        let mut kept: Vec<usize> = vec![];
        for &i in &order {
            let li = &self.leads[i];
            let redundant = kept.iter().any(|&k| {
                let lk = &self.leads[k];
                lk.pos == li.pos && lk.mono.divides(&li.mono)
            });
            if !redundant {
                kept.push(i);
            }
        }
        // fully reduce each kept element against the others
        let mut out: Vec<PolyVector<K>> = kept.iter().map(|&i| self.basis[i].clone()).collect();
        let leads: Vec<ModTerm> = kept.iter().map(|&i| self.leads[i].clone()).collect();
        for i in 0..out.len() {
            let mut work = out[i].clone();
            let mut acc = PolyVector::zero(self.nvars, self.rank);
            while let Some((t, c)) = work.lead_term() {
                let c = c.clone();
                let reducer = (0..out.len())
                    .find(|&k| k != i && leads[k].pos == t.pos && leads[k].mono.divides(&t.mono));
                match reducer {
                    Some(k) => {
                        let q = leads[k].mono.divide_into(&t.mono);
                        work = work.sub(&self.field, &out[k].mul_term(&self.field, &q, &c));
                    }
                    None => {
                        let term = Polynomial::monomial(&self.field, t.mono.clone(), c);
                        work = work.sub(
                            &self.field,
                            &PolyVector::unit(self.nvars, self.rank, t.pos, term.clone()),
                        );
                        acc = acc.add(
                            &self.field,
                            &PolyVector::unit(self.nvars, self.rank, t.pos, term),
                        );
                    }
                }
            }
            out[i] = acc.monic(&self.field);
        }
        // canonical order: descending POT lead
        out.sort_by(|a, b| {
            let (ta, _) = a.lead_term().unwrap();
            let (tb, _) = b.lead_term().unwrap();
            tb.cmp_pot(&ta)
        });
        out
    }
}

/// Reduced Groebner basis of an ideal (rank-1 module) over the ambient
/// polynomial ring.
pub fn buchberger_ideal<K: Field>(
    field: &K,
    nvars: usize,
    gens: &[Polynomial<K>],
) -> Vec<Polynomial<K>> {
    let mut eng = GroebnerEngine::new(field.clone(), nvars, vec![0]);
    for g in gens {
        eng.add_generator(&PolyVector::unit(nvars, 1, 0, g.clone()));
    }
    eng.saturate();
    eng.reduced_basis()
        .into_iter()
        .map(|v| v.get(0).cloned().unwrap())
        .collect()
}

/// Normal form of a polynomial against a (Groebner) basis of an ideal.
pub fn poly_normal_form<K: Field>(
    field: &K,
    f: &Polynomial<K>,
    gb: &[Polynomial<K>],
) -> Polynomial<K> {
    if gb.is_empty() || f.is_zero() {
        return f.clone();
    }
    let nvars = f.nvars();
    let mut work = f.clone();
    let mut acc = Polynomial::zero(nvars);
    'outer: while let Some((m, c)) = work.lead() {
        let (m, c) = (m.clone(), c.clone());
        for g in gb {
            let gm = g.lead_monomial().unwrap();
            if gm.divides(&m) {
                let q = gm.divide_into(&m);
                let lc = &g.lead().unwrap().1;
                let coef = field.div(&c, lc);
                work = work.sub(field, &g.mul_term(field, &q, &coef));
                continue 'outer;
            }
        }
        let t = Polynomial::monomial(field, m, c);
        work = work.sub(field, &t);
        acc = acc.add(field, &t);
    }
    acc
}

/// Reduced Groebner basis of a submodule given by `gens` inside the free
/// module with `tgt_shifts`, over the quotient by `ring_gb` (pass an
/// empty slice for the ambient ring). Lifting convention: the quotient's
/// generators times each basis vector join the generator set.
pub fn module_groebner<K: Field>(
    field: &K,
    nvars: usize,
    tgt_shifts: &[i64],
    gens: &[PolyVector<K>],
    ring_gb: &[Polynomial<K>],
) -> Vec<PolyVector<K>> {
    let mut eng = engine_over_quotient(field, nvars, tgt_shifts, ring_gb);
    for g in gens {
        eng.add_generator(g);
    }
    eng.saturate();
    eng.reduced_basis()
}

/// Engine preloaded with the quotient columns q * e_i.
pub fn engine_over_quotient<K: Field>(
    field: &K,
    nvars: usize,
    tgt_shifts: &[i64],
    ring_gb: &[Polynomial<K>],
) -> GroebnerEngine<K> {
    let rank = tgt_shifts.len();
    let mut eng = GroebnerEngine::new(field.clone(), nvars, tgt_shifts.to_vec());
    for i in 0..rank {
        for q in ring_gb {
            eng.add_generator(&PolyVector::unit(nvars, rank, i, q.clone()));
        }
    }
    eng.saturate();
    eng
}

/// Kernel of the map defined by `mat`, over the quotient by `ring_gb`.
///
/// Computed by elimination: in F_tgt (+) F_src take the graphs
/// (column_j, e_j) together with the quotient columns in the F_tgt block;
/// basis elements with vanishing F_tgt block are exactly the syzygies.
pub fn syzygy_matrix<K: Field>(
    field: &K,
    mat: &PolyMatrix<K>,
    ring_gb: &[Polynomial<K>],
) -> PolyMatrix<K> {
    let nvars = mat.nvars();
    let r = mat.nrows();
    let k = mat.ncols();
    let big_rank = r + k;
    let mut big_shifts = mat.tgt_shifts().to_vec();
    big_shifts.extend_from_slice(mat.src_shifts());

    let mut eng = GroebnerEngine::new(field.clone(), nvars, big_shifts);
    for i in 0..r {
        for q in ring_gb {
            eng.add_generator(&PolyVector::unit(nvars, big_rank, i, q.clone()));
        }
    }
    let one = Polynomial::one(field, nvars);
    for j in 0..k {
        let graph = mat
            .col(j)
            .embed(big_rank, 0)
            .add(field, &PolyVector::unit(nvars, big_rank, r + j, one.clone()));
        eng.add_generator(&graph);
    }
    eng.saturate();

    let mut cols = vec![];
    let mut src = vec![];
    for v in eng.reduced_basis() {
        if !v.vanishes_below(r) {
            continue;
        }
        let proj = v
            .project(r, k)
            .map_entries(|f| poly_normal_form(field, f, ring_gb));
        if proj.is_zero() {
            continue;
        }
        if let Some(d) = proj.degree(mat.src_shifts()) {
            src.push(d);
            cols.push(proj.monic(field));
        }
    }
    PolyMatrix::new(nvars, mat.src_shifts().to_vec(), src, cols)
}
