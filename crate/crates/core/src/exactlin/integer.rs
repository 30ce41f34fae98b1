//! Integer lattices: incremental Hermite echelon forms, dense Hermite and
//! Smith normal forms with unimodular transforms.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::scalar::Integer;
use super::sparse::SparseVec;

/// `p·a + q·b` for sparse integer vectors.
fn lin(
    p: &Integer,
    a: &SparseVec<Integer>,
    q: &Integer,
    b: &SparseVec<Integer>,
) -> SparseVec<Integer> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(j).map_or(usize::MAX, |e| e.0);
        let (idx, x) = if ia < jb {
            i += 1;
            (ia, p * &a[i - 1].1)
        } else if jb < ia {
            j += 1;
            (jb, q * &b[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ia, p * &a[i - 1].1 + q * &b[j - 1].1)
        };
        if !x.is_zero() {
            out.push((idx, x));
        }
    }
    out
}

/// Echelon basis of a sublattice of ℤᴺ, built by unimodular row operations.
///
/// Rows have distinct pivots and positive leading entries. With tracking,
/// every row is expressed in the inserted generators and each dependent
/// insertion yields a relation; the relations form a ℤ-basis of the
/// relation lattice.
#[derive(Clone, Debug, Default)]
pub struct IntLattice {
    rows: Vec<SparseVec<Integer>>,
    tracks: Option<Vec<SparseVec<Integer>>>,
    pivot_row: FxHashMap<usize, usize>,
    inserted: usize,
}

impl IntLattice {
    pub fn new() -> Self {
        IntLattice::default()
    }

    pub fn tracked() -> Self {
        IntLattice {
            tracks: Some(Vec::new()),
            ..IntLattice::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<Integer>] {
        &self.rows
    }

    /// Insert a generator; returns the relation it satisfies if it reduces
    /// to zero (only meaningful when tracking).
    pub fn insert(&mut self, v: SparseVec<Integer>) -> Option<SparseVec<Integer>> {
        let tag = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut t = self.tracks.as_ref().map(|_| vec![(tag, Integer::one())]);
        // only the leading entry is reduced: a gcd step mixes `v` into a row,
        // so `v` must have nothing before the row's pivot
        while let Some(&(col, _)) = v.first() {
            let Some(&r) = self.pivot_row.get(&col) else {
                break;
            };
            let a = self.rows[r][0].1.clone();
            let b = v[0].1.clone();
            let (q, rem) = b.div_mod_floor(&a);
            if rem.is_zero() {
                let mq = -q;
                v = lin(&Integer::one(), &v, &mq, &self.rows[r]);
                if let (Some(tv), Some(tr)) = (t.as_mut(), self.tracks.as_ref()) {
                    *tv = lin(&Integer::one(), tv, &mq, &tr[r]);
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let mbg = -(&b / &g);
            let new_row = lin(&x, &self.rows[r], &y, &v);
            let new_v = lin(&mbg, &self.rows[r], &ag, &v);
            if let (Some(tv), Some(tr)) = (t.as_mut(), self.tracks.as_mut()) {
                let new_tr = lin(&x, &tr[r], &y, tv);
                *tv = lin(&mbg, &tr[r], &ag, tv);
                tr[r] = new_tr;
            }
            self.rows[r] = new_row;
            v = new_v;
        }
        if v.is_empty() {
            return t;
        }
        if v[0].1.is_negative() {
            for (_, x) in v.iter_mut() {
                *x = -&*x;
            }
            if let Some(tv) = t.as_mut() {
                for (_, x) in tv.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        if let (Some(tr), Some(tv)) = (self.tracks.as_mut(), t) {
            tr.push(tv);
        }
        None
    }

    /// Membership test; with tracking the witness is given over the
    /// inserted generators.
    pub fn solve(&self, v: &SparseVec<Integer>) -> Option<SparseVec<Integer>> {
        let mut v = v.clone();
        let mut w: SparseVec<Integer> = Vec::new();
        while let Some(&(col, _)) = v.first() {
            let &r = self.pivot_row.get(&col)?;
            let (q, rem) = v[0].1.div_mod_floor(&self.rows[r][0].1);
            if !rem.is_zero() {
                return None;
            }
            v = lin(&Integer::one(), &v, &-&q, &self.rows[r]);
            if let Some(tr) = self.tracks.as_ref() {
                w = lin(&Integer::one(), &w, &q, &tr[r]);
            }
        }
        Some(w)
    }

    pub fn contains(&self, v: &SparseVec<Integer>) -> bool {
        self.solve(v).is_some()
    }

    /// Canonical Hermite basis: rows sorted by pivot, entries above each
    /// pivot reduced into `[0, pivot)`.
    pub fn hermite_rows(&self) -> Vec<SparseVec<Integer>> {
        let mut rows: Vec<SparseVec<Integer>> = self.rows.clone();
        rows.sort_by_key(|r| r[0].0);
        let pos: FxHashMap<usize, usize> =
            rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        for i in (0..rows.len()).rev() {
            let mut j = 1;
            while j < rows[i].len() {
                let col = rows[i][j].0;
                if let Some(&r) = pos.get(&col) {
                    let q = rows[i][j].1.div_floor(&rows[r][0].1);
                    if !q.is_zero() {
                        let updated = lin(&Integer::one(), &rows[i], &-q, &rows[r]);
                        rows[i] = updated;
                        continue;
                    }
                }
                j += 1;
            }
        }
        rows
    }
}

/// Witness coefficients expressing `v` in the ℤ-span of `gens`, if any.
pub fn lattice_membership(v: &[Integer], gens: &[Vec<Integer>]) -> Option<Vec<Integer>> {
    let to_sparse = |x: &[Integer]| -> SparseVec<Integer> {
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    };
    let mut lat = IntLattice::tracked();
    for g in gens {
        lat.insert(to_sparse(g));
    }
    let w = lat.solve(&to_sparse(v))?;
    let mut out = vec![Integer::zero(); gens.len()];
    for (i, c) in w {
        out[i] = c;
    }
    Some(out)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Integer>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![Integer::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Integer::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] += &self.data[i][k] * &o.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = Integer::one();
        let mut prev = Integer::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Integer::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = Integer::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            Integer::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.data.iter_mut() {
            r.swap(i, j);
        }
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Integer) {
        let src = self.data[j].clone();
        for (x, y) in self.data[i].iter_mut().zip(src.iter()) {
            *x += c * y;
        }
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &Integer) {
        for r in self.data.iter_mut() {
            let y = r[j].clone();
            r[i] += c * y;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in self.data[i].iter_mut() {
            *x = -&*x;
        }
    }
}

/// Row-style Hermite normal form `U·m = H` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let piv = (r..m.rows)
                .filter(|&i| !h.data[i][c].is_zero())
                .min_by(|&a, &b| h.data[a][c].abs().cmp(&h.data[b][c].abs()).then(a.cmp(&b)));
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                if h.data[i][c].is_zero() {
                    continue;
                }
                let q = h.data[i][c].div_floor(&h.data[r][c]);
                h.add_row(i, r, &-&q);
                u.add_row(i, r, &-&q);
                if !h.data[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.data[r][c].is_zero() {
            continue;
        }
        if h.data[r][c].is_negative() {
            h.neg_row(r);
            u.neg_row(r);
        }
        for i in 0..r {
            let q = h.data[i][c].div_floor(&h.data[r][c]);
            if !q.is_zero() {
                h.add_row(i, r, &-&q);
                u.add_row(i, r, &-&q);
            }
        }
        r += 1;
    }
    Hnf { h, u, rank: r }
}

/// Smith normal form `U·m·V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn invariant_factors(&self) -> Vec<Integer> {
        (0..self.rank).map(|i| self.d.data[i][i].clone()).collect()
    }

    /// ℤ-basis of the right kernel `{x : m·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Integer>> {
        (self.rank..self.v.cols)
            .map(|j| {
                (0..self.v.rows)
                    .map(|i| self.v.data[i][j].clone())
                    .collect()
            })
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.data[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if d.data[i][t].is_zero() {
                continue;
            }
            let q = d.data[i][t].div_floor(&d.data[t][t]);
            d.add_row(i, t, &-&q);
            u.add_row(i, t, &-&q);
            clean &= d.data[i][t].is_zero();
        }
        for j in t + 1..cols {
            if d.data[t][j].is_zero() {
                continue;
            }
            let q = d.data[t][j].div_floor(&d.data[t][t]);
            d.add_col(j, t, &-&q);
            v.add_col(j, t, &-&q);
            clean &= d.data[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !d.data[i][j].is_multiple_of(&d.data[t][t]));
        if let Some((i, _)) = bad {
            d.add_row(t, i, &Integer::one());
            u.add_row(t, i, &Integer::one());
            continue;
        }
        if d.data[t][t].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    Snf { u, d, v, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), ints(&[1, 6]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), Integer::one());
        assert_eq!(s.v.det().abs(), Integer::one());
    }

    #[test]
    fn snf_of_zero_and_scalar() {
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank, 0);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
        assert_eq!(s.kernel().len(), 3);
        let s = smith_normal_form(&IntMatrix::from_i64(&[vec![2]]));
        assert_eq!(s.d, IntMatrix::from_i64(&[vec![2]]));
    }

    #[test]
    fn hnf_tracks_transform() {
        let m = IntMatrix::from_i64(&[vec![4, 6, 2], vec![2, 3, 5], vec![6, 9, 7]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.u.mul(&m), h.h);
        assert_eq!(h.rank, 2);
        assert_eq!(h.u.det().abs(), Integer::one());
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            lattice_membership(&ints(&[2, 0]), &[ints(&[1, 0])]),
            Some(ints(&[2]))
        );
        assert_eq!(lattice_membership(&ints(&[1, 0]), &[ints(&[2, 0])]), None);
        assert_eq!(
            lattice_membership(&ints(&[1, 1]), &[ints(&[1, 0]), ints(&[0, 1])]),
            Some(ints(&[1, 1]))
        );
    }

    #[test]
    fn lattice_relations_are_a_basis() {
        let mut lat = IntLattice::tracked();
        let gens = [vec![(0, 4)], vec![(0, 6)], vec![(0, 10)]];
        let mut rels = Vec::new();
        for g in gens.iter() {
            let g: SparseVec<Integer> = g.iter().map(|&(i, x)| (i, Integer::from(x))).collect();
            if let Some(r) = lat.insert(g) {
                rels.push(r);
            }
        }
        assert_eq!(lat.rows()[0][0].1, Integer::from(2));
        assert_eq!(rels.len(), 2);
        for r in &rels {
            let s: Integer = r
                .iter()
                .map(|(i, c)| c * Integer::from([4, 6, 10][*i]))
                .sum();
            assert!(s.is_zero());
        }
    }

    fn dense_rows(h: &IntMatrix) -> Vec<SparseVec<Integer>> {
        h.data
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect()
            })
            .filter(|r: &SparseVec<Integer>| !r.is_empty())
            .collect()
    }

    proptest::proptest! {
        #[test]
        fn incremental_hermite_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..7)) {
            let m = IntMatrix::from_i64(&rows);
            let mut lat = IntLattice::tracked();
            for r in &dense_rows(&m) {
                lat.insert(r.clone());
            }
            proptest::prop_assert_eq!(lat.hermite_rows(), dense_rows(&hermite_normal_form(&m).h));
        }
    }
}
