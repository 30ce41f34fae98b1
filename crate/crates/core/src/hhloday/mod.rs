//! Loday complexes of a free graded-commutative algebra on one generator
//! over the simplicial circle and torus, their homology and the shuffle
//! product.
//!
//! A chain in simplicial degree `p` is a combination of tensors: one power
//! of `x` per simplex of `X_p`, slots in simplex order. Simplicial maps act
//! through index functions: factors landing in the same slot multiply, in
//! slot order, with Koszul signs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{smith_normal_form, CoeffRing, IntMatrix, Integer, Span, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HhError {
    #[error("bad base algebra: {0}")]
    Base(String),
    #[error("bad model: {0}")]
    Model(String),
    #[error("chains live in different complexes or degrees")]
    Incompatible,
}

/// `ℤ[x]` with `|x|` even, or `Λ(x)` with `|x|` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    Polynomial(u32),
    Exterior(u32),
}

impl Base {
    pub fn new_polynomial(degree: u32) -> Result<Self, HhError> {
        if degree == 0 || degree % 2 == 1 {
            return Err(HhError::Base(format!(
                "polynomial generator needs positive even degree, got {degree}"
            )));
        }
        Ok(Base::Polynomial(degree))
    }

    pub fn new_exterior(degree: u32) -> Result<Self, HhError> {
        if degree.is_multiple_of(2) {
            return Err(HhError::Base(format!(
                "exterior generator needs odd degree, got {degree}"
            )));
        }
        Ok(Base::Exterior(degree))
    }

    pub fn degree(self) -> u32 {
        match self {
            Base::Polynomial(d) | Base::Exterior(d) => d,
        }
    }

    fn odd(self) -> bool {
        matches!(self, Base::Exterior(_))
    }

    /// Largest exponent of `x` that is nonzero.
    fn max_exponent(self) -> u32 {
        match self {
            Base::Polynomial(_) => u32::MAX,
            Base::Exterior(_) => 1,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Polynomial(d) => write!(f, "poly{d}"),
            Base::Exterior(d) => write!(f, "ext{d}"),
        }
    }
}

impl FromStr for Base {
    type Err = HhError;
    fn from_str(s: &str) -> Result<Self, HhError> {
        let parse = |rest: &str| rest.parse::<u32>().map_err(|_| HhError::Base(s.into()));
        if let Some(rest) = s.strip_prefix("poly") {
            Base::new_polynomial(parse(rest)?)
        } else if let Some(rest) = s.strip_prefix("ext") {
            Base::new_exterior(parse(rest)?)
        } else {
            Err(HhError::Base(format!("{s} (expected polyN or extN)")))
        }
    }
}

/// Simplicial models with `X_p` indexed by `0..size(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimplicialModel {
    /// `Δ¹/∂Δ¹`: `X_p = {0, …, p}`.
    Circle,
    /// The levelwise product of two circles, pairs `(j, k)` stored as `j(p+1) + k`.
    Torus2,
}

fn circle_face(p: usize, i: usize) -> Vec<usize> {
    (0..=p)
        .map(|j| {
            if i == p && j == p {
                0
            } else if j > i {
                j - 1
            } else {
                j
            }
        })
        .collect()
}

fn circle_degeneracy(p: usize, i: usize) -> Vec<usize> {
    (0..=p).map(|j| if j > i { j + 1 } else { j }).collect()
}

fn square(f: &[usize], target: usize) -> Vec<usize> {
    let m = f.len();
    (0..m * m).map(|s| f[s / m] * target + f[s % m]).collect()
}

impl SimplicialModel {
    pub fn size(self, p: usize) -> usize {
        match self {
            SimplicialModel::Circle => p + 1,
            SimplicialModel::Torus2 => (p + 1) * (p + 1),
        }
    }

    /// `d_i : X_p → X_{p−1}`, `p ≥ 1`.
    pub fn face(self, p: usize, i: usize) -> Vec<usize> {
        assert!(p >= 1 && i <= p, "face d_{i} on X_{p}");
        let f = circle_face(p, i);
        match self {
            SimplicialModel::Circle => f,
            SimplicialModel::Torus2 => square(&f, p),
        }
    }

    /// `s_i : X_p → X_{p+1}`.
    pub fn degeneracy(self, p: usize, i: usize) -> Vec<usize> {
        assert!(i <= p, "degeneracy s_{i} on X_{p}");
        let f = circle_degeneracy(p, i);
        match self {
            SimplicialModel::Circle => f,
            SimplicialModel::Torus2 => square(&f, p + 2),
        }
    }

    /// Whether the simplicial identities hold on `X_p` for `p ≤ cap`.
    pub fn check_identities(self, cap: usize) -> bool {
        let compose =
            |g: &[usize], f: &[usize]| -> Vec<usize> { f.iter().map(|&x| g[x]).collect() };
        let id = |p: usize| -> Vec<usize> { (0..self.size(p)).collect() };
        for p in 0..=cap {
            for i in 0..=p + 1 {
                for j in 0..=p + 1 {
                    // d_i d_j = d_{j−1} d_i for i < j, on X_{p+2}
                    if i < j {
                        let lhs = compose(&self.face(p + 1, i), &self.face(p + 2, j));
                        let rhs = compose(&self.face(p + 1, j - 1), &self.face(p + 2, i));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
            for i in 0..=p {
                for j in 0..=p {
                    // s_i s_j = s_{j+1} s_i for i ≤ j, on X_p
                    if i <= j {
                        let lhs = compose(&self.degeneracy(p + 1, i), &self.degeneracy(p, j));
                        let rhs = compose(&self.degeneracy(p + 1, j + 1), &self.degeneracy(p, i));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
                for i2 in 0..=p + 1 {
                    // d_i s_j on X_p
                    let lhs = compose(&self.face(p + 1, i2), &self.degeneracy(p, i));
                    let j = i;
                    let want = if i2 < j {
                        compose(&self.degeneracy(p - 1, j - 1), &self.face(p, i2))
                    } else if i2 == j || i2 == j + 1 {
                        id(p)
                    } else {
                        compose(&self.degeneracy(p - 1, j), &self.face(p, i2 - 1))
                    };
                    if lhs != want {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl FromStr for SimplicialModel {
    type Err = HhError;
    fn from_str(s: &str) -> Result<Self, HhError> {
        match s {
            "circle" => Ok(SimplicialModel::Circle),
            "torus" => Ok(SimplicialModel::Torus2),
            _ => Err(HhError::Model(format!("{s} (expected circle or torus)"))),
        }
    }
}

impl fmt::Display for SimplicialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicialModel::Circle => write!(f, "circle"),
            SimplicialModel::Torus2 => write!(f, "torus"),
        }
    }
}

/// Exponents of `x` per slot.
pub type Tensor = Vec<u32>;

/// `L(A)(f)` on one tensor: `None` when an exterior square appears, else
/// the image and whether the Koszul sign is negative.
fn push_forward(base: Base, t: &[u32], f: &[usize], target: usize) -> Option<(Tensor, bool)> {
    let mut out = vec![0u32; target];
    for (s, &e) in t.iter().enumerate() {
        out[f[s]] += e;
        if out[f[s]] > base.max_exponent() {
            return None;
        }
    }
    let mut neg = false;
    if base.odd() {
        // odd factors in slot order move to their target order
        let targets: Vec<usize> = t
            .iter()
            .enumerate()
            .filter(|(_, &e)| e % 2 == 1)
            .map(|(s, _)| f[s])
            .collect();
        for (a, &x) in targets.iter().enumerate() {
            neg ^= targets[a + 1..].iter().filter(|&&y| y < x).count() % 2 == 1;
        }
    }
    Some((out, neg))
}

/// A homogeneous chain in simplicial degree `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub p: usize,
    pub terms: BTreeMap<Tensor, Integer>,
}

impl Chain {
    pub fn zero(p: usize) -> Self {
        Chain {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(p: usize, t: Tensor, c: Integer) -> Self {
        let mut ch = Chain::zero(p);
        ch.add(t, c);
        ch
    }

    pub fn add(&mut self, t: Tensor, c: Integer) {
        let e = self.terms.entry(t).or_insert_with(Integer::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Integer) -> Chain {
        let mut out = Chain::zero(self.p);
        for (t, x) in &self.terms {
            out.add(t.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, o: &Chain) -> Chain {
        let mut out = self.clone();
        for (t, x) in &o.terms {
            out.add(t.clone(), -x.clone());
        }
        out
    }
}

/// Whether chains are taken modulo degenerate simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normalization {
    Normalized,
    Unnormalized,
}

/// The truncated total complex `|L(A)(X)|`. The horizontal differential
/// vanishes, so the total differential is the alternating face sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LodayComplex {
    pub base: Base,
    pub model: SimplicialModel,
    pub normalization: Normalization,
    /// Largest simplicial degree kept.
    pub simplicial_cap: usize,
}

impl LodayComplex {
    pub fn new(
        base: Base,
        model: SimplicialModel,
        normalization: Normalization,
        simplicial_cap: usize,
    ) -> Self {
        LodayComplex {
            base,
            model,
            normalization,
            simplicial_cap,
        }
    }

    pub fn total_degree(&self, p: usize, t: &[u32]) -> u32 {
        p as u32 + self.base.degree() * t.iter().sum::<u32>()
    }

    /// Whether `t` is in the image of some `s_i : X_{p−1} → X_p`.
    pub fn is_degenerate(&self, p: usize, t: &[u32]) -> bool {
        (0..p).any(|i| {
            let image = self.model.degeneracy(p - 1, i);
            let mut hit = vec![false; t.len()];
            for s in image {
                hit[s] = true;
            }
            t.iter().zip(&hit).all(|(&e, &h)| h || e == 0)
        })
    }

    /// Basis tensors of total degree `d`, ordered by simplicial degree.
    pub fn basis(&self, d: u32) -> Vec<(usize, Tensor)> {
        let deg = self.base.degree();
        let mut out = Vec::new();
        for p in 0..=(d as usize).min(self.simplicial_cap) {
            let internal = d - p as u32;
            if !internal.is_multiple_of(deg) {
                continue;
            }
            let slots = self.model.size(p);
            let mut t = vec![0u32; slots];
            self.distribute(internal / deg, 0, &mut t, &mut |t| {
                if self.normalization == Normalization::Unnormalized || !self.is_degenerate(p, t) {
                    out.push((p, t.to_vec()));
                }
            });
        }
        out
    }

    fn distribute(&self, left: u32, slot: usize, t: &mut Tensor, emit: &mut impl FnMut(&Tensor)) {
        if slot == t.len() {
            if left == 0 {
                emit(t);
            }
            return;
        }
        for e in 0..=left.min(self.base.max_exponent()) {
            t[slot] = e;
            self.distribute(left - e, slot + 1, t, emit);
        }
        t[slot] = 0;
    }

    /// `Σ (−1)^i d_i`, dropping degenerate terms when normalized.
    pub fn boundary(&self, c: &Chain) -> Chain {
        if c.p == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(c.p - 1);
        let target = self.model.size(c.p - 1);
        for i in 0..=c.p {
            let f = self.model.face(c.p, i);
            for (t, x) in &c.terms {
                if let Some((img, neg)) = push_forward(self.base, t, &f, target) {
                    if self.normalization == Normalization::Normalized
                        && self.is_degenerate(c.p - 1, &img)
                    {
                        continue;
                    }
                    out.add(
                        img,
                        if neg ^ (i % 2 == 1) {
                            -x.clone()
                        } else {
                            x.clone()
                        },
                    );
                }
            }
        }
        out
    }

    /// Image of a chain under a composite of degeneracies, `s_{k_last} ⋯ s_{k_first}`.
    fn degenerate(&self, c: &Chain, ks: &[usize]) -> Chain {
        let mut cur = c.clone();
        for &k in ks {
            let f = self.model.degeneracy(cur.p, k);
            let target = self.model.size(cur.p + 1);
            let mut next = Chain::zero(cur.p + 1);
            for (t, x) in &cur.terms {
                let (img, neg) = push_forward(self.base, t, &f, target).expect("injective map");
                next.add(img, if neg { -x.clone() } else { x.clone() });
            }
            cur = next;
        }
        cur
    }

    /// `Σ_{(μ,ν)} sgn(μ,ν) (s_ν a)·(s_μ b)` with slotwise multiplication.
    pub fn shuffle_product(&self, a: &Chain, b: &Chain) -> Chain {
        let (p, q) = (a.p, b.p);
        let mut out = Chain::zero(p + q);
        for mask in 0u64..1 << (p + q) {
            if mask.count_ones() as usize != p {
                continue;
            }
            let mu: Vec<usize> = (0..p + q).filter(|i| mask & (1 << i) != 0).collect();
            let nu: Vec<usize> = (0..p + q).filter(|i| mask & (1 << i) == 0).collect();
            // sgn(μ,ν): pairs with μ_i > ν_j
            let inv = mu
                .iter()
                .map(|m| nu.iter().filter(|&&n| n < *m).count())
                .sum::<usize>();
            let sa = self.degenerate(a, &nu);
            let sb = self.degenerate(b, &mu);
            for (ta, xa) in &sa.terms {
                for (tb, xb) in &sb.terms {
                    if let Some((t, neg)) = self.multiply(ta, tb) {
                        let c = xa * xb;
                        out.add(t, if neg ^ (inv % 2 == 1) { -c } else { c });
                    }
                }
            }
        }
        out
    }

    /// `(⊗ a_s)(⊗ b_s) = ± ⊗ a_s b_s`.
    fn multiply(&self, a: &[u32], b: &[u32]) -> Option<(Tensor, bool)> {
        let mut t = Vec::with_capacity(a.len());
        let mut neg = false;
        for (s, (&x, &y)) in a.iter().zip(b).enumerate() {
            if x + y > self.base.max_exponent() {
                return None;
            }
            if self.base.odd() && y % 2 == 1 {
                neg ^= a[s + 1..].iter().filter(|&&e| e % 2 == 1).count() % 2 == 1;
            }
            t.push(x + y);
        }
        Some((t, neg))
    }

    /// Whether `c` is a boundary of a chain in total degree one higher.
    pub fn is_boundary(&self, c: &Chain, ring: CoeffRing) -> Result<bool, HhError> {
        let Some((t, _)) = c.terms.iter().next() else {
            return Ok(true);
        };
        let d = self.total_degree(c.p, t);
        let lower = self.basis(d);
        let index: BTreeMap<(usize, Tensor), usize> =
            lower.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut span = Span::new(ring);
        for row in self.boundary_rows(d + 1, &index) {
            span.insert(row);
        }
        let mut v = Vec::new();
        for (t, x) in &c.terms {
            let &i = index.get(&(c.p, t.clone())).ok_or(HhError::Incompatible)?;
            v.push((i, x.clone()));
        }
        v.sort_by_key(|e| e.0);
        Ok(span.contains(&v))
    }

    fn boundary_rows(
        &self,
        d: u32,
        lower: &BTreeMap<(usize, Tensor), usize>,
    ) -> Vec<SparseVec<Integer>> {
        self.basis(d)
            .into_iter()
            .filter(|(p, _)| *p > 0)
            .map(|(p, t)| {
                let img = self.boundary(&Chain::single(p, t, Integer::one()));
                let mut row: SparseVec<Integer> = img
                    .terms
                    .into_iter()
                    .map(|(t, x)| (lower[&(img.p, t)], x))
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhRow {
    pub degree: u32,
    pub rank: usize,
    /// Invariant factors above 1 (ℤ only).
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhTable {
    pub base: Base,
    pub model: SimplicialModel,
    pub ring: CoeffRing,
    pub rows: Vec<HhRow>,
}

impl HhTable {
    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.rows.iter().any(|r| !r.torsion.is_empty())
    }
}

/// `H_d |L(A)(X)|` for `d ≤ degree_cap`, with ranks over `ring` and, over
/// ℤ, the torsion read off the Smith form of the incoming differential.
pub fn hochschild_homology_ranks(
    complex: &LodayComplex,
    degree_cap: u32,
    ring: CoeffRing,
) -> HhTable {
    let bases: Vec<Vec<(usize, Tensor)>> = (0..=degree_cap + 1).map(|d| complex.basis(d)).collect();
    let index = |d: u32| -> BTreeMap<(usize, Tensor), usize> {
        bases[d as usize]
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect()
    };
    // ranks and (over ℤ) invariant factors of d : C_d → C_{d−1}
    let diffs: Vec<(usize, Vec<Integer>)> = (0..=degree_cap + 1)
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                return (0, Vec::new());
            }
            let rows = complex.boundary_rows(d, &index(d - 1));
            if ring == CoeffRing::Z {
                let cols = bases[d as usize - 1].len();
                let mut m = IntMatrix::zeros(rows.len(), cols);
                for (i, r) in rows.iter().enumerate() {
                    for (j, x) in r {
                        m.data[i][*j] = x.clone();
                    }
                }
                let snf = smith_normal_form(&m);
                (snf.rank, snf.invariant_factors())
            } else {
                let mut span = Span::new(ring);
                for r in rows {
                    span.insert(r);
                }
                (span.rank(), Vec::new())
            }
        })
        .collect();
    let rows = (0..=degree_cap)
        .map(|d| {
            let dim = bases[d as usize].len();
            let (out_rank, _) = &diffs[d as usize];
            let (in_rank, factors) = &diffs[d as usize + 1];
            HhRow {
                degree: d,
                rank: dim - out_rank - in_rank,
                torsion: factors
                    .iter()
                    .filter(|f| !f.is_one())
                    .map(|f| f.to_string())
                    .collect(),
            }
        })
        .collect();
    HhTable {
        base: complex.base,
        model: complex.model,
        ring,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly2() -> Base {
        Base::new_polynomial(2).unwrap()
    }
    fn ext1() -> Base {
        Base::new_exterior(1).unwrap()
    }

    #[test]
    fn identities_hold() {
        assert!(SimplicialModel::Circle.check_identities(6));
        assert!(SimplicialModel::Torus2.check_identities(4));
    }

    #[test]
    fn parse_names() {
        assert_eq!("poly2".parse::<Base>().unwrap(), poly2());
        assert_eq!("ext1".parse::<Base>().unwrap(), ext1());
        assert!("poly3".parse::<Base>().is_err());
        assert!("ext2".parse::<Base>().is_err());
        assert_eq!(
            "torus".parse::<SimplicialModel>().unwrap(),
            SimplicialModel::Torus2
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        for model in [SimplicialModel::Circle, SimplicialModel::Torus2] {
            for base in [poly2(), ext1()] {
                for norm in [Normalization::Normalized, Normalization::Unnormalized] {
                    let c = LodayComplex::new(base, model, norm, 8);
                    for d in 0..=5 {
                        for (p, t) in c.basis(d) {
                            let x = Chain::single(p, t, Integer::one());
                            assert!(
                                c.boundary(&c.boundary(&x)).is_zero(),
                                "{base} {model} {norm:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_tables() {
        let circle = LodayComplex::new(
            poly2(),
            SimplicialModel::Circle,
            Normalization::Unnormalized,
            9,
        );
        let t = hochschild_homology_ranks(&circle, 8, CoeffRing::Z);
        assert_eq!(t.ranks(), [1, 0, 1, 1, 1, 1, 1, 1, 1]);
        assert!(!t.has_torsion());
        let ext = LodayComplex::new(
            ext1(),
            SimplicialModel::Circle,
            Normalization::Normalized,
            9,
        );
        let t = hochschild_homology_ranks(&ext, 8, CoeffRing::Z);
        assert_eq!(t.ranks(), [1; 9]);
        assert!(!t.has_torsion());
        let torus = LodayComplex::new(
            poly2(),
            SimplicialModel::Torus2,
            Normalization::Unnormalized,
            7,
        );
        let t = hochschild_homology_ranks(&torus, 6, CoeffRing::Z);
        assert_eq!(t.ranks(), [1, 0, 1, 2, 2, 2, 3]);
        assert!(!t.has_torsion());
    }

    #[test]
    fn normalization_does_not_change_ranks() {
        for model in [SimplicialModel::Circle, SimplicialModel::Torus2] {
            for base in [poly2(), ext1()] {
                let cap = if model == SimplicialModel::Circle {
                    7
                } else {
                    5
                };
                let ranks = |norm| {
                    hochschild_homology_ranks(
                        &LodayComplex::new(base, model, norm, cap + 1),
                        cap as u32,
                        CoeffRing::Q,
                    )
                    .ranks()
                };
                assert_eq!(
                    ranks(Normalization::Normalized),
                    ranks(Normalization::Unnormalized),
                    "{base} {model}"
                );
            }
        }
    }

    #[test]
    fn raising_the_cap_is_stable() {
        let ranks = |cap| {
            let c = LodayComplex::new(
                poly2(),
                SimplicialModel::Torus2,
                Normalization::Normalized,
                cap,
            );
            hochschild_homology_ranks(&c, 6, CoeffRing::Z).ranks()
        };
        assert_eq!(ranks(7), ranks(9));
    }

    #[test]
    fn shuffles() {
        // γ₁·γ₁ = 2γ₂ for Λ(x)
        let c = LodayComplex::new(
            ext1(),
            SimplicialModel::Circle,
            Normalization::Normalized,
            6,
        );
        let g1 = Chain::single(1, vec![0, 1], Integer::one());
        let g2 = Chain::single(2, vec![0, 1, 1], Integer::one());
        assert!(c.boundary(&g1).is_zero() && c.boundary(&g2).is_zero());
        let sq = c.shuffle_product(&g1, &g1);
        assert!(c.boundary(&sq).is_zero());
        assert!(c
            .is_boundary(&sq.sub(&g2.scale(&Integer::from(2))), CoeffRing::Z)
            .unwrap());
        assert_eq!(sq, g2.scale(&Integer::from(2)));

        // degree-0 shuffles are plain products
        let p = LodayComplex::new(
            poly2(),
            SimplicialModel::Circle,
            Normalization::Unnormalized,
            6,
        );
        let x = Chain::single(0, vec![1], Integer::one());
        assert_eq!(
            p.shuffle_product(&x, &x),
            Chain::single(0, vec![2], Integer::one())
        );

        // (1⊗x)·x = x·(1⊗x) up to a boundary
        let sx = Chain::single(1, vec![0, 1], Integer::one());
        let left = p.shuffle_product(&sx, &x);
        let right = p.shuffle_product(&x, &sx);
        assert!(p.boundary(&left).is_zero());
        assert!(p
            .is_boundary(
                &left.sub(&Chain::single(1, vec![1, 1], Integer::one())),
                CoeffRing::Z
            )
            .unwrap());
        assert!(p.is_boundary(&left.sub(&right), CoeffRing::Z).unwrap());
    }

    #[test]
    fn torus_shuffle_of_cycles_is_cycle() {
        let c = LodayComplex::new(
            poly2(),
            SimplicialModel::Torus2,
            Normalization::Unnormalized,
            4,
        );
        let cycles: Vec<Chain> = c
            .basis(3)
            .into_iter()
            .map(|(p, t)| Chain::single(p, t, Integer::one()))
            .filter(|x| c.boundary(x).is_zero())
            .collect();
        assert!(!cycles.is_empty());
        for a in &cycles {
            for b in &cycles {
                assert!(c.boundary(&c.shuffle_product(a, b)).is_zero());
            }
        }
    }
}
