//! The weight-graded algorithm on `A′`.
//!
//! For a biweight `(a, b)` with `1 ≤ a, b ≤ n`, the monomials `𝓑_{a,b}` in
//! `X, Y, W` span a free `Λₙ`-module. The columns of `T_{a,b}` are the
//! products `M·R′ᵢ` with `M ∈ 𝓑_{a−1,b−1}` and `i < n`. Its image is
//! saturated by `Δ²` one cohomological degree at a time and then reduced
//! modulo `(e₁, …, eₙ)`.

use rayon::prelude::*;
use serde::Serialize;

use super::{element_of, kernel_rows, rank_over, Coords, IdealError, AUGMENT};
use crate::exactlin::{CoeffRing, Integer, Span, SparseVec};
use crate::relgen::{aprime_algebra, delta_squared, generator_images_prime, relation_rprime};
use crate::superpoly::{Algebra, Element, Monomial};

/// Largest saturation exponent tried before giving up.
pub const DEFAULT_SATURATION_CAP: u32 = 4;

/// Weak compositions of `k` into `parts` parts, lexicographically.
fn compositions(k: u32, parts: usize) -> Vec<Vec<u8>> {
    if parts == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

/// `𝓑_{a,b}`: monomials in `X`, `Y`, `W₁..W_{n−1}` of biweight `(a, b)`, in
/// listing order (by degree, then fewer odd factors).
pub fn weight_basis(n: usize, a: u32, b: u32) -> Vec<Monomial> {
    let alg = aprime_algebra(n, false);
    let mut out = Vec::new();
    for xs in 0u32..1 << n {
        for ys in 0u32..1 << n {
            let (i, j) = (xs.count_ones(), ys.count_ones());
            if i > a || j > b || a - i != b - j {
                continue;
            }
            for ws in compositions(a - i, n.saturating_sub(1)) {
                let mut exps = vec![0u8; alg.len()];
                for l in 0..n {
                    exps[n + l] = (xs >> l & 1) as u8;
                    exps[2 * n + l] = (ys >> l & 1) as u8;
                }
                exps[3 * n..].copy_from_slice(&ws);
                out.push(Monomial::from_exps(&alg, &exps).expect("squarefree"));
            }
        }
    }
    out.sort();
    out
}

/// All of `𝓑_{a,b}` when `a > n` or `b > n` (such monomials map to zero),
/// otherwise nothing.
pub fn monomial_ideal_part(n: usize, a: u32, b: u32) -> Vec<Monomial> {
    if a as usize > n || b as usize > n {
        weight_basis(n, a, b)
    } else {
        Vec::new()
    }
}

/// Minimal generators of the monomial part: `X_I W^α` and `Y_J W^α` with
/// `|I| + |α| = n + 1`, in listing order.
pub fn minimal_monomial_generators(n: usize) -> Vec<Monomial> {
    let top = n as u32 + 1;
    let mut out: Vec<Monomial> = (0..=top)
        .flat_map(|k| {
            let mut v = weight_basis(n, top, k);
            v.extend(weight_basis(n, k, top));
            v
        })
        .filter(|m| {
            // no Y factor for the X-type, no X factor for the Y-type
            let e = m.exps();
            e[n..2 * n].iter().all(|&x| x == 0) || e[2 * n..3 * n].iter().all(|&x| x == 0)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn e_part(n: usize, alg: &Algebra, m: &Monomial) -> (Monomial, Monomial) {
    let mut e = vec![0u8; alg.len()];
    let mut rest = m.exps().to_vec();
    e[..n].copy_from_slice(&m.exps()[..n]);
    rest[..n].fill(0);
    (
        Monomial::from_exps(alg, &e).expect("even part"),
        Monomial::from_exps(alg, &rest).expect("squarefree"),
    )
}

/// One column of `T_{a,b}`: `M·R′ᵢ` and its `Λₙ`-coefficients over `𝓑_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TColumn {
    pub multiplier: Monomial,
    pub relation: usize,
    pub element: Element,
    /// Coefficient of each basis monomial, an element of `A′` in the `eₖ`.
    pub coefficients: Vec<Element>,
}

/// The relation matrix of one biweight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub basis: Vec<Monomial>,
    /// Ordered by multiplier, then relation index.
    pub columns: Vec<TColumn>,
}

/// `T_{a,b}` for `1 ≤ a, b ≤ n`.
pub fn matrix_t(n: usize, a: u32, b: u32) -> Result<TMatrix, IdealError> {
    assert!(
        a >= 1 && b >= 1 && a as usize <= n && b as usize <= n,
        "need 1 ≤ a, b ≤ n"
    );
    let alg = aprime_algebra(n, false);
    let basis = weight_basis(n, a, b);
    let index = Coords::with_index(&basis);
    let rels = (1..n)
        .map(|i| Ok(relation_rprime(i, n)?.element.embed(&alg)?))
        .collect::<Result<Vec<_>, IdealError>>()?;
    let mut columns = Vec::new();
    for m in weight_basis(n, a - 1, b - 1) {
        for (i, r) in rels.iter().enumerate() {
            let element = &Element::from_monomial(&alg, m.clone(), Integer::from(1)) * r;
            let mut coefficients = vec![Element::zero(&alg); basis.len()];
            for (mono, c) in element.terms() {
                let (e, rest) = e_part(n, &alg, mono);
                let k = index.0[&rest];
                coefficients[k] = &coefficients[k] + &Element::from_monomial(&alg, e, c.clone());
            }
            columns.push(TColumn {
                multiplier: m.clone(),
                relation: i + 1,
                element,
                coefficients,
            });
        }
    }
    Ok(TMatrix {
        n,
        a,
        b,
        basis,
        columns,
    })
}

/// Monomials in the `eₖ` of degree `d` inside `A′`.
fn e_monomials(n: usize, alg: &Algebra, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    crate::superpoly::enumerate_restricted(alg, d, &|i| i < n, &mut out);
    out.sort();
    out
}

/// The degree-`d` part `F_d` of the free module on `𝓑_{a,b}`: products of
/// an `e`-monomial with a basis monomial.
fn fiber(n: usize, alg: &Algebra, basis: &[Monomial], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for beta in basis.iter().filter(|m| m.degree() <= d) {
        for mu in e_monomials(n, alg, d - beta.degree()) {
            out.push(mu.mul(beta).expect("e is even").0);
        }
    }
    out.sort();
    out
}

/// `G_{a,b}` in one cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedPiece {
    pub degree: u32,
    /// Least `m` with `Δ^{2m}·G_d ⊆ im T`.
    pub exponent: u32,
    /// The monomials spanning `F_d`.
    pub fiber: Vec<Monomial>,
    /// Canonical basis of `G_d` over `fiber`.
    pub rows: Vec<SparseVec<Integer>>,
}

/// The saturation of `im T_{a,b}` in the degrees carrying basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub a: u32,
    pub b: u32,
    pub ring: CoeffRing,
    pub pieces: Vec<SaturatedPiece>,
}

/// `{v ∈ F_d : Δ^{2m} v ∈ im T}` over `ring`, as rows over `fiber`.
fn colon(
    t: &TMatrix,
    ring: CoeffRing,
    fiber: &[Monomial],
    d: u32,
    m: u32,
    delta2: &Element,
) -> Vec<SparseVec<Integer>> {
    let alg = aprime_algebra(t.n, false);
    let big_d = d + m * delta2.degree().unwrap_or(0);
    let mut coords = Coords::default();
    let mut span = Span::new(ring);
    for col in &t.columns {
        let Some(deg) = col.element.degree().filter(|&g| g <= big_d) else {
            continue;
        };
        for mu in e_monomials(t.n, &alg, big_d - deg) {
            span.insert(coords.vector(&col.element.mul_monomial(&mu, &Integer::from(1))));
        }
    }
    let power = delta2.pow(m);
    for (j, f) in fiber.iter().enumerate() {
        let mut v = coords.vector(&power.mul_monomial(f, &Integer::from(1)));
        v.push((AUGMENT + j, Integer::from(1)));
        span.insert(v);
    }
    span.tail_basis(AUGMENT)
}

/// Saturate `im T` by `Δ²` in every degree of a basis monomial.
///
/// The chain `V₀ ⊆ V₁ ⊆ …` of colon spaces lies in the kernel of `ρ′` on
/// `F_d`; iteration stops once it fills that kernel, and fails past `cap`.
pub fn saturate_block(t: &TMatrix, ring: CoeffRing, cap: u32) -> Result<Saturation, IdealError> {
    if !ring.inverts_factorial(t.n as u64) {
        return Err(IdealError::BadCharacteristic { n: t.n, ring });
    }
    let alg = aprime_algebra(t.n, false);
    let delta2 = delta_squared(t.n).embed(&alg)?;
    let rho = generator_images_prime(t.n, false);
    let mut degrees: Vec<u32> = t.basis.iter().map(Monomial::degree).collect();
    degrees.dedup();
    let pieces = degrees
        .par_iter()
        .map(|&d| {
            let fiber = fiber(t.n, &alg, &t.basis, d);
            let mut ev = rho.evaluator();
            let images: Vec<Element> = fiber.iter().map(|f| ev.monomial(f)).collect();
            let kernel_dim = fiber.len() - rank_over(ring, &images);
            for m in 0..=cap {
                let rows = if t.columns.is_empty() {
                    Vec::new()
                } else {
                    colon(t, ring, &fiber, d, m, &delta2)
                };
                if rows.len() == kernel_dim {
                    return Ok(SaturatedPiece {
                        degree: d,
                        exponent: m,
                        fiber,
                        rows,
                    });
                }
                assert!(rows.len() < kernel_dim, "colon space exceeds the kernel");
            }
            Err(IdealError::SaturationUnstable {
                a: t.a,
                b: t.b,
                degree: d,
                cap,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Saturation {
        a: t.a,
        b: t.b,
        ring,
        pieces,
    })
}

/// `Ḡ_{a,b}` as a subspace of `k^{𝓑_{a,b}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedBlock {
    pub a: u32,
    pub b: u32,
    pub ring: CoeffRing,
    #[serde(skip)]
    pub basis: Vec<Monomial>,
    /// Canonical echelon rows over `basis`.
    #[serde(skip)]
    pub rows: Vec<SparseVec<Integer>>,
    /// The rows as elements of `A′` in `X`, `Y`, `W`.
    #[serde(skip)]
    pub elements: Vec<Element>,
}

impl ReducedBlock {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Whether two blocks span the same space.
    pub fn same_span(&self, other: &ReducedBlock) -> bool {
        self.basis == other.basis && self.rows == other.rows
    }

    /// The span of `xs`, which must be supported on `𝓑_{a,b}`.
    pub fn from_elements(
        n: usize,
        a: u32,
        b: u32,
        ring: CoeffRing,
        xs: &[Element],
    ) -> ReducedBlock {
        let basis = weight_basis(n, a, b);
        let mut index = Coords::with_index(&basis);
        let rows: Vec<SparseVec<Integer>> = xs.iter().map(|x| index.vector(x)).collect();
        assert!(
            rows.iter().flatten().all(|(k, _)| *k < basis.len()),
            "element outside the weight basis"
        );
        reduce_rows(n, a, b, ring, basis.clone(), [(basis, rows)])
    }

    /// Whether `x`, supported on `𝓑_{a,b}`, lies in the span.
    pub fn contains(&self, x: &Element) -> bool {
        let mut index = Coords::with_index(&self.basis);
        let v = index.vector(x);
        if v.iter().any(|(k, _)| *k >= self.basis.len()) {
            return false;
        }
        let mut span = Span::new(self.ring);
        for r in &self.rows {
            span.insert(r.clone());
        }
        span.contains(&v)
    }
}

/// Echelonize the `e`-free parts of degreewise rows.
fn reduce_rows(
    n: usize,
    a: u32,
    b: u32,
    ring: CoeffRing,
    basis: Vec<Monomial>,
    pieces: impl IntoIterator<Item = (Vec<Monomial>, Vec<SparseVec<Integer>>)>,
) -> ReducedBlock {
    let alg = aprime_algebra(n, false);
    let index = Coords::with_index(&basis);
    let mut span = Span::new(ring);
    for (fiber, rows) in pieces {
        for row in rows {
            let v: SparseVec<Integer> = row
                .into_iter()
                .filter_map(|(j, c)| index.0.get(&fiber[j]).map(|&k| (k, c)))
                .collect();
            let mut v = v;
            v.sort_by_key(|e| e.0);
            span.insert(v);
        }
    }
    let rows = span.basis();
    let elements = rows.iter().map(|r| element_of(&alg, &basis, r)).collect();
    ReducedBlock {
        a,
        b,
        ring,
        basis,
        rows,
        elements,
    }
}

/// `Ḡ = ε(G)`: keep the coefficients of the basis monomials themselves.
pub fn reduce_block(t: &TMatrix, g: &Saturation) -> ReducedBlock {
    reduce_rows(
        t.n,
        g.a,
        g.b,
        g.ring,
        t.basis.clone(),
        g.pieces.iter().map(|p| (p.fiber.clone(), p.rows.clone())),
    )
}

/// `ε` of the kernel of `ρ′` in biweight `(a, b)`, computed directly.
pub fn oracle_block(n: usize, a: u32, b: u32, ring: CoeffRing) -> ReducedBlock {
    let alg = aprime_algebra(n, false);
    let rho = generator_images_prime(n, false);
    let basis = weight_basis(n, a, b);
    let mut degrees: Vec<u32> = basis.iter().map(Monomial::degree).collect();
    degrees.dedup();
    let pieces: Vec<_> = degrees
        .par_iter()
        .map(|&d| {
            let fiber = fiber(n, &alg, &basis, d);
            let mut ev = rho.evaluator();
            let images: Vec<Element> = fiber.iter().map(|f| ev.monomial(f)).collect();
            (fiber, kernel_rows(ring, &images).0)
        })
        .collect();
    reduce_rows(n, a, b, ring, basis, pieces)
}

/// The span `J̄′`: the monomial part and `Ḡ_{a,b}` for `1 ≤ a, b ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationBasis {
    pub n: usize,
    pub ring: CoeffRing,
    /// Minimal generators of the span of monomials of weight `a > n` or `b > n`.
    #[serde(skip)]
    pub monomial_generators: Vec<Element>,
    /// Blocks in order `(1,1), (1,2), …, (n,n)`.
    pub blocks: Vec<ReducedBlock>,
    /// Saturation exponent used in each `(a, b, degree)`.
    pub exponents: Vec<(u32, u32, u32, u32)>,
}

impl RelationBasis {
    pub fn block(&self, a: u32, b: u32) -> Option<&ReducedBlock> {
        self.blocks.iter().find(|x| (x.a, x.b) == (a, b))
    }

    /// `Σ dim Ḡ_{a,b}`.
    pub fn total_dimension(&self) -> usize {
        self.blocks.iter().map(ReducedBlock::dim).sum()
    }
}

/// Run the algorithm in every biweight `1 ≤ a, b ≤ n`.
pub fn relation_basis(n: usize, ring: CoeffRing) -> Result<RelationBasis, IdealError> {
    relation_basis_with_cap(n, ring, DEFAULT_SATURATION_CAP)
}

pub fn relation_basis_with_cap(
    n: usize,
    ring: CoeffRing,
    cap: u32,
) -> Result<RelationBasis, IdealError> {
    if !ring.inverts_factorial(n as u64) {
        return Err(IdealError::BadCharacteristic { n, ring });
    }
    let alg = aprime_algebra(n, false);
    let weights: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| (1..=n as u32).map(move |b| (a, b)))
        .collect();
    let results = weights
        .par_iter()
        .map(|&(a, b)| {
            let t = matrix_t(n, a, b)?;
            let g = saturate_block(&t, ring, cap)?;
            let exps: Vec<_> = g
                .pieces
                .iter()
                .map(|p| (a, b, p.degree, p.exponent))
                .collect();
            Ok((reduce_block(&t, &g), exps))
        })
        .collect::<Result<Vec<_>, IdealError>>()?;
    let monomial_generators = minimal_monomial_generators(n)
        .into_iter()
        .map(|m| Element::from_monomial(&alg, m, Integer::from(1)))
        .collect();
    let mut blocks = Vec::new();
    let mut exponents = Vec::new();
    for (block, exps) in results {
        blocks.push(block);
        exponents.extend(exps);
    }
    Ok(RelationBasis {
        n,
        ring,
        monomial_generators,
        blocks,
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::render_monomial;

    fn names(n: usize, ms: &[Monomial]) -> Vec<String> {
        let alg = aprime_algebra(n, false);
        ms.iter().map(|m| render_monomial(&alg, m)).collect()
    }

    #[test]
    fn weight_bases() {
        assert_eq!(
            names(2, &weight_basis(2, 1, 1)),
            ["W1", "X1*Y1", "X1*Y2", "X2*Y1", "X2*Y2"]
        );
        assert_eq!(names(2, &weight_basis(2, 0, 1)), ["Y1", "Y2"]);
        assert!(weight_basis(2, 3, 0).is_empty());
        assert_eq!(names(2, &weight_basis(2, 0, 0)), ["1"]);
        assert!(monomial_ideal_part(2, 2, 1).is_empty());
        assert!(monomial_ideal_part(1, 2, 0).is_empty());
        let big = monomial_ideal_part(2, 3, 1);
        assert!(names(2, &big).contains(&"X1*X2*W1".to_string()));
        assert_eq!(big.len(), weight_basis(2, 3, 1).len());
        assert_eq!(weight_basis(3, 3, 3).len(), 50);
    }

    #[test]
    fn monomial_part_maps_to_zero() {
        let rho = generator_images_prime(2, false);
        for (a, b) in [(3, 0), (3, 1), (0, 3), (2, 3), (3, 3), (4, 1)] {
            for m in monomial_ideal_part(2, a, b) {
                let alg = aprime_algebra(2, false);
                assert!(rho
                    .apply(&Element::from_monomial(&alg, m, 1.into()))
                    .is_zero());
            }
        }
        // at n = 1 there is no W and a single X
        assert!(minimal_monomial_generators(1).is_empty());
        let gens = names(2, &minimal_monomial_generators(2));
        assert!(gens.contains(&"X1*X2*W1".to_string()) && gens.contains(&"W1^3".to_string()));
    }

    #[test]
    fn t_matrix_small() {
        let t = matrix_t(2, 1, 1).unwrap();
        assert_eq!(t.columns.len(), 1);
        let alg = aprime_algebra(2, false);
        let want = ["e1^2 - 4*e2", "-e1^2 + 2*e2", "e1", "e1", "-2"];
        for (c, w) in t.columns[0].coefficients.iter().zip(want) {
            assert_eq!(c, &Element::parse(&alg, w).unwrap());
        }
        assert_eq!(matrix_t(2, 2, 2).unwrap().columns.len(), 5);
        assert_eq!(matrix_t(3, 1, 1).unwrap().columns.len(), 2);
    }

    #[test]
    fn example_n2() {
        let rb = relation_basis(2, CoeffRing::Q).unwrap();
        let alg = aprime_algebra(2, false);
        let expect = [
            ((1, 1), vec!["X2*Y2"]),
            ((2, 1), vec!["X1*X2*Y2", "X1*X2*Y1 + 2*X2*W1"]),
            ((1, 2), vec!["X2*Y1*Y2", "X1*Y1*Y2 - 2*Y2*W1"]),
            (
                (2, 2),
                vec![
                    "X1*X2*Y1*Y2",
                    "X1*Y2*W1",
                    "X2*Y1*W1",
                    "X2*Y2*W1",
                    "W1^2 - X1*Y1*W1",
                ],
            ),
        ];
        for ((a, b), want) in expect {
            let block = rb.block(a, b).unwrap();
            let rows = want.iter().map(|w| Element::parse(&alg, w).unwrap());
            let expected =
                ReducedBlock::from_elements(2, a, b, CoeffRing::Q, &rows.collect::<Vec<_>>());
            assert!(
                block.same_span(&expected),
                "({a},{b}): {:?}",
                block.elements
            );
        }
        assert_eq!(rb.total_dimension(), 10);
    }

    #[test]
    fn n1_has_no_weight_relations() {
        let rb = relation_basis(1, CoeffRing::Q).unwrap();
        assert_eq!(rb.total_dimension(), 0);
        assert!(relation_basis(2, CoeffRing::Fp(2)).is_err());
    }

    #[test]
    fn algorithm_matches_oracle_n2() {
        for ring in [CoeffRing::Q, CoeffRing::Fp(3)] {
            let rb = relation_basis(2, ring).unwrap();
            for block in &rb.blocks {
                assert!(block.same_span(&oracle_block(2, block.a, block.b, ring)));
            }
        }
    }
}
