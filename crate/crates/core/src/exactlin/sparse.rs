//! Sparse row echelon forms over 𝔽ₚ and (fraction-free) over ℚ.

use std::fmt::Debug;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::scalar::{Integer, Rational};

/// Sorted `(index, value)` pairs with no stored zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Arithmetic needed by [`Echelon`].
pub trait Elim: Clone + Send + Sync + Debug {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn is_zero(&self, x: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Multipliers `(p, q)` with `p·entry − q·lead = 0`, `p` a unit or
    /// nonzero scalar.
    fn cancel(&self, lead: &Self::E, entry: &Self::E) -> (Self::E, Self::E);
    /// Rescale `v` (and its companion `t`) to the canonical representative.
    fn normalize(&self, v: &mut SparseVec<Self::E>, t: Option<&mut SparseVec<Self::E>>);
}

/// Prime field arithmetic on raw residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP(pub u64);

impl ModP {
    pub fn reduce(&self, v: &Integer) -> u64 {
        let r = v.mod_floor(&Integer::from(self.0));
        num_traits::ToPrimitive::to_u64(&r).expect("residue fits")
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let mut base = a as u128;
        let m = self.0 as u128;
        let mut e = self.0 - 2;
        let mut acc: u128 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u64
    }
}

impl Elim for ModP {
    type E = u64;

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn one(&self) -> u64 {
        1
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn cancel(&self, lead: &u64, entry: &u64) -> (u64, u64) {
        (1, self.mul(entry, &self.inv(*lead)))
    }
    fn normalize(&self, v: &mut SparseVec<u64>, t: Option<&mut SparseVec<u64>>) {
        let Some(&(_, lead)) = v.first() else { return };
        if lead == 1 {
            return;
        }
        let s = self.inv(lead);
        for (_, x) in v.iter_mut() {
            *x = self.mul(x, &s);
        }
        if let Some(t) = t {
            for (_, x) in t.iter_mut() {
                *x = self.mul(x, &s);
            }
        }
    }
}

/// Rational elimination carried out on primitive integer rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FracFree;

impl Elim for FracFree {
    type E = Integer;

    fn is_zero(&self, x: &Integer) -> bool {
        x.is_zero()
    }
    fn one(&self) -> Integer {
        Integer::one()
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a * b
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        a - b
    }
    fn cancel(&self, lead: &Integer, entry: &Integer) -> (Integer, Integer) {
        let g = lead.gcd(entry);
        (lead / &g, entry / &g)
    }
    fn normalize(&self, v: &mut SparseVec<Integer>, t: Option<&mut SparseVec<Integer>>) {
        let mut g = Integer::zero();
        for (_, x) in v.iter() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        let t = t.inspect(|t| {
            if !g.is_one() {
                for (_, x) in t.iter() {
                    g = g.gcd(x);
                    if g.is_one() {
                        break;
                    }
                }
            }
        });
        let negate = v.first().is_some_and(|(_, x)| x.is_negative());
        if g.is_zero() || (g.is_one() && !negate) {
            return;
        }
        let g = if negate { -g } else { g };
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
        if let Some(t) = t {
            for (_, x) in t.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
}

/// `p·a − q·b` for sparse vectors.
pub fn combine<K: Elim>(
    k: &K,
    p: &K::E,
    a: &SparseVec<K::E>,
    q: &K::E,
    b: &SparseVec<K::E>,
) -> SparseVec<K::E> {
    let p_one = *p == k.one();
    let scale_a = |x: &K::E| if p_one { x.clone() } else { k.mul(p, x) };
    let zero = k.sub(p, p);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ia < jb {
            out.push((ia, scale_a(&a[i].1)));
            i += 1;
        } else if jb < ia {
            out.push((jb, k.sub(&zero, &k.mul(q, &b[j].1))));
            j += 1;
        } else {
            let x = k.sub(&scale_a(&a[i].1), &k.mul(q, &b[j].1));
            if !k.is_zero(&x) {
                out.push((ia, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon form.
///
/// Each stored row has a distinct pivot (its first index) and is in the
/// canonical normalization of `K`. With tracking enabled every row carries
/// the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon<K: Elim> {
    kind: K,
    rows: Vec<SparseVec<K::E>>,
    tracks: Option<Vec<SparseVec<K::E>>>,
    pivot_row: FxHashMap<usize, usize>,
    inserted: usize,
}

impl<K: Elim> Echelon<K> {
    pub fn new(kind: K) -> Self {
        Echelon {
            kind,
            rows: Vec::new(),
            tracks: None,
            pivot_row: FxHashMap::default(),
            inserted: 0,
        }
    }

    /// Echelon form that records, for each inserted vector, its position in
    /// the insertion sequence; dependent insertions yield kernel relations.
    pub fn tracked(kind: K) -> Self {
        Echelon {
            tracks: Some(Vec::new()),
            ..Echelon::new(kind)
        }
    }

    pub fn kind(&self) -> &K {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K::E>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    fn reduce_inner(
        &self,
        mut v: SparseVec<K::E>,
        mut t: Option<SparseVec<K::E>>,
    ) -> (SparseVec<K::E>, Option<SparseVec<K::E>>) {
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            let Some(&r) = self.pivot_row.get(&col) else {
                i += 1;
                continue;
            };
            let row = &self.rows[r];
            let (p, q) = self.kind.cancel(&row[0].1, &v[i].1);
            v = combine(&self.kind, &p, &v, &q, row);
            if let (Some(tv), Some(tracks)) = (t.as_mut(), self.tracks.as_ref()) {
                *tv = combine(&self.kind, &p, tv, &q, &tracks[r]);
            }
        }
        (v, t)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: SparseVec<K::E>) -> SparseVec<K::E> {
        let (mut v, _) = self.reduce_inner(v, None);
        self.kind.normalize(&mut v, None);
        v
    }

    pub fn contains(&self, v: SparseVec<K::E>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<K::E>) -> bool {
        let tag = self.inserted;
        self.inserted += 1;
        let t = self.tracks.as_ref().map(|_| vec![(tag, self.kind.one())]);
        let (mut v, mut t) = self.reduce_inner(v, t);
        if v.is_empty() {
            return false;
        }
        self.kind.normalize(&mut v, t.as_mut());
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        if let (Some(tracks), Some(t)) = (self.tracks.as_mut(), t) {
            tracks.push(t);
        }
        true
    }

    /// Tracked insertion. Returns the kernel relation (over insertion
    /// positions) when `v` is dependent on what came before.
    pub fn insert_relation(&mut self, v: SparseVec<K::E>) -> Option<SparseVec<K::E>> {
        assert!(
            self.tracks.is_some(),
            "insert_relation needs a tracked echelon"
        );
        let tag = self.inserted;
        self.inserted += 1;
        let (mut v, t) = self.reduce_inner(v, Some(vec![(tag, self.kind.one())]));
        let mut t = t.expect("tracked");
        if v.is_empty() {
            let mut rel = std::mem::take(&mut t);
            self.kind.normalize(&mut rel, None);
            return Some(rel);
        }
        self.kind.normalize(&mut v, Some(&mut t));
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        self.tracks.as_mut().expect("tracked").push(t);
        None
    }

    /// Rows sorted by pivot with every pivot column cleared in the other rows.
    pub fn reduced_rows(&self) -> Vec<SparseVec<K::E>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut out: Vec<SparseVec<K::E>> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pos: FxHashMap<usize, usize> =
            out.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        for i in (0..out.len()).rev() {
            let mut v = out[i].clone();
            let mut j = 1;
            while j < v.len() {
                let col = v[j].0;
                match pos.get(&col) {
                    Some(&r) if r != i => {
                        let row = &out[r];
                        let (p, q) = self.kind.cancel(&row[0].1, &v[j].1);
                        v = combine(&self.kind, &p, &v, &q, row);
                    }
                    _ => j += 1,
                }
            }
            self.kind.normalize(&mut v, None);
            out[i] = v;
        }
        out
    }
}

/// Rank of a list of vectors.
pub fn rank_of<K: Elim>(kind: K, vectors: impl IntoIterator<Item = SparseVec<K::E>>) -> usize {
    let mut ech = Echelon::new(kind);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Basis of the relations `Σ cⱼ vⱼ = 0` among `vectors`.
pub fn relations_of<K: Elim>(
    kind: K,
    vectors: impl IntoIterator<Item = SparseVec<K::E>>,
) -> Vec<SparseVec<K::E>> {
    let mut ech = Echelon::tracked(kind);
    vectors
        .into_iter()
        .filter_map(|v| ech.insert_relation(v))
        .collect()
}

/// Rational rows with unit leading coefficient.
pub fn to_rational_rows(rows: &[SparseVec<Integer>]) -> Vec<SparseVec<Rational>> {
    rows.iter()
        .map(|r| {
            let lead = r[0].1.clone();
            r.iter()
                .map(|(i, x)| (*i, Rational::new(x.clone(), lead.clone())))
                .collect()
        })
        .collect()
}

pub fn to_mod_p(p: ModP, v: &SparseVec<Integer>) -> SparseVec<u64> {
    v.iter()
        .filter_map(|(i, x)| {
            let r = p.reduce(x);
            (r != 0).then_some((*i, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[(usize, i64)]) -> SparseVec<Integer> {
        v.iter().map(|&(i, x)| (i, Integer::from(x))).collect()
    }

    #[test]
    fn frac_free_relations() {
        let vs = vec![iv(&[(0, 2), (1, 4)]), iv(&[(0, 1), (1, 2)]), iv(&[(1, 3)])];
        let rels = relations_of(FracFree, vs);
        assert_eq!(rels, vec![iv(&[(0, 1), (1, -2)])]);
    }

    #[test]
    fn mod_p_rank_drops() {
        let vs = [iv(&[(0, 1), (1, 1)]), iv(&[(0, 1), (1, 3)])];
        assert_eq!(rank_of(ModP(2), vs.iter().map(|v| to_mod_p(ModP(2), v))), 1);
        assert_eq!(rank_of(ModP(5), vs.iter().map(|v| to_mod_p(ModP(5), v))), 2);
    }

    #[test]
    fn reduced_rows_clear_pivots() {
        let mut e = Echelon::new(FracFree);
        e.insert(iv(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(iv(&[(1, 1), (2, 3)]));
        let rr = to_rational_rows(&e.reduced_rows());
        assert_eq!(rr[0].len(), 2);
        assert_eq!(rr[0][1], (2, Rational::from_integer(Integer::from(-2))));
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new(ModP(7));
        e.insert(vec![(1, 3u64)]);
        assert!(e.contains(vec![(1, 5)]));
        assert!(!e.contains(vec![(0, 5)]));
    }
}
