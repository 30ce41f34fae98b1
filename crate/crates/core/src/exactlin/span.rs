use num_traits::{One, Zero};

use super::integer::IntLattice;
use super::scalar::{CoeffRing, Integer};
use super::sparse::{to_mod_p, Echelon, FracFree, ModP, SparseVec};

#[derive(Clone, Debug)]
enum Inner {
    Q(Echelon<FracFree>),
    P(Echelon<ModP>),
    Z(IntLattice),
}

/// Span of integer vectors over ℚ or 𝔽ₚ, or their ℤ-span.
///
/// Vectors go in and come out with integer entries; over 𝔽ₚ outputs are
/// residues in `[0, p)`.
#[derive(Clone, Debug)]
pub struct Span {
    ring: CoeffRing,
    inner: Inner,
}

fn lift(v: SparseVec<u64>) -> SparseVec<Integer> {
    v.into_iter().map(|(i, x)| (i, Integer::from(x))).collect()
}

impl Span {
    pub fn new(ring: CoeffRing) -> Self {
        let inner = match ring {
            CoeffRing::Q => Inner::Q(Echelon::new(FracFree)),
            CoeffRing::Fp(p) => Inner::P(Echelon::new(ModP(p))),
            CoeffRing::Z => Inner::Z(IntLattice::new()),
        };
        Span { ring, inner }
    }

    /// A span whose dependent insertions report relations.
    pub fn tracked(ring: CoeffRing) -> Self {
        let inner = match ring {
            CoeffRing::Q => Inner::Q(Echelon::tracked(FracFree)),
            CoeffRing::Fp(p) => Inner::P(Echelon::tracked(ModP(p))),
            CoeffRing::Z => Inner::Z(IntLattice::tracked()),
        };
        Span { ring, inner }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Q(e) => e.rank(),
            Inner::P(e) => e.rank(),
            Inner::Z(l) => l.rank(),
        }
    }

    /// Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<Integer>) -> bool {
        match &mut self.inner {
            Inner::Q(e) => e.insert(v),
            Inner::P(e) => {
                let p = *e.kind();
                e.insert(to_mod_p(p, &v))
            }
            Inner::Z(l) => {
                let before = l.rank();
                l.insert(v);
                l.rank() > before
            }
        }
    }

    /// Tracked insertion; the relation over insertion positions when `v`
    /// adds no rank. Over ℤ the relations form a ℤ-basis of all relations.
    pub fn insert_relation(&mut self, v: SparseVec<Integer>) -> Option<SparseVec<Integer>> {
        match &mut self.inner {
            Inner::Q(e) => e.insert_relation(v),
            Inner::P(e) => {
                let p = *e.kind();
                e.insert_relation(to_mod_p(p, &v)).map(lift)
            }
            Inner::Z(l) => l.insert(v),
        }
    }

    pub fn contains(&self, v: &SparseVec<Integer>) -> bool {
        match &self.inner {
            Inner::Q(e) => e.contains(v.clone()),
            Inner::P(e) => e.contains(to_mod_p(*e.kind(), v)),
            Inner::Z(l) => l.contains(v),
        }
    }

    /// Canonical basis: reduced echelon rows (primitive over ℚ, monic over
    /// 𝔽ₚ) or the Hermite basis over ℤ, sorted by pivot.
    pub fn basis(&self) -> Vec<SparseVec<Integer>> {
        match &self.inner {
            Inner::Q(e) => e.reduced_rows(),
            Inner::P(e) => e.reduced_rows().into_iter().map(lift).collect(),
            Inner::Z(l) => l.hermite_rows(),
        }
    }

    /// Basis rows whose pivot is at least `offset`, shifted down by
    /// `offset`. After inserting vectors `(x, y)` with `y` placed from
    /// `offset` on, these span `{y : (0, y) in the span}`.
    pub fn tail_basis(&self, offset: usize) -> Vec<SparseVec<Integer>> {
        self.basis()
            .into_iter()
            .filter(|r| r[0].0 >= offset)
            .map(|r| r.into_iter().map(|(i, x)| (i - offset, x)).collect())
            .collect()
    }
}

/// Whether the rows generate all of ℤʳ (over a field: have rank `r`).
pub fn is_full(ring: CoeffRing, rows: &[SparseVec<Integer>], r: usize) -> bool {
    match ring {
        CoeffRing::Z => {
            let mut l = IntLattice::new();
            for v in rows {
                l.insert(v.clone());
            }
            l.rank() == r && l.rows().iter().all(|row| row[0].1.is_one())
        }
        _ => {
            let mut s = Span::new(ring);
            rows.iter().filter(|v| s.insert((*v).clone())).count() == r
        }
    }
}

/// Drop zero entries and sort.
pub fn sparse(mut v: Vec<(usize, Integer)>) -> SparseVec<Integer> {
    v.retain(|(_, x)| !x.is_zero());
    v.sort_by_key(|e| e.0);
    v
}
