//! Degreewise comparisons of `ρ(A)` with `B^{Sₙ}`, generator counts, the
//! `τ`-reduction and the identity battery.

use rayon::prelude::*;
use serde::Serialize;

use super::action::{invariant_dimension, invariant_lattice_basis};
use super::VerifyError;
use crate::exactlin::{binomial, CoeffRing, Integer, Span, SparseVec};
use crate::idealcalc::{rank_over, relation_basis, Coords, ReducedBlock};
use crate::relgen::{
    a_algebra, aprime_algebra, b_algebra, generator_images, generator_images_prime,
    newton_identity_element, recurrence_check, relation_r, relation_rprime, w_image, z_image,
};
use crate::superpoly::{graded_basis, hilbert_series, Element, Monomial};
use crate::symvan::newton;

/// Prime for the rank lower bound in [`hilbert_compare`].
const LARGE_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub degree: u32,
    /// `dim ρ(A)_d`.
    pub image: usize,
    /// `dim (B_d)^{Sₙ}`.
    pub invariant: usize,
    /// `dim B_d`.
    pub ambient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub n: usize,
    pub ring: CoeffRing,
    pub rows: Vec<HilbertRow>,
}

impl HilbertReport {
    /// First degree where the image is smaller than the invariants.
    pub fn first_mismatch(&self) -> Option<u32> {
        self.rows
            .iter()
            .find(|r| r.image != r.invariant)
            .map(|r| r.degree)
    }
}

/// Images of a monomial basis of `A_d`, indexed by `B`-monomials on first sight.
fn image_vectors(
    n: usize,
    d: u32,
    keep: impl Fn(&Monomial) -> bool,
) -> Result<Vec<Element>, VerifyError> {
    let rho = generator_images(n);
    let mut ev = rho.evaluator();
    Ok(graded_basis(&a_algebra(n), d)?
        .iter()
        .filter(|m| keep(m))
        .map(|m| ev.monomial(m))
        .collect())
}

/// `dim ρ(A)_d` against `dim (B_d)^{Sₙ}` for `d ≤ d_max` in characteristic 0.
///
/// `ρ(A) ⊆ B^{Sₙ}` bounds the rational rank above by the invariant
/// dimension and the rank mod a prime bounds it below. Exact elimination
/// over ℚ runs only when the two bounds differ.
pub fn hilbert_compare(
    n: usize,
    d_max: u32,
    ring: CoeffRing,
) -> Result<HilbertReport, VerifyError> {
    if ring.characteristic() != 0 {
        return Err(VerifyError::Unsupported(format!(
            "the comparison is over ℚ or ℤ, not {ring}"
        )));
    }
    let ambient = hilbert_series(&b_algebra(n), d_max)?;
    let rows = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let invariant = invariant_dimension(n, d, CoeffRing::Q)?;
            let images = image_vectors(n, d, |_| true)?;
            let mut image = rank_over(CoeffRing::Fp(LARGE_PRIME), &images);
            if image != invariant {
                image = rank_over(CoeffRing::Q, &images);
            }
            Ok(HilbertRow {
                degree: d,
                image,
                invariant,
                ambient: ambient[d as usize] as usize,
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(HilbertReport { n, ring, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCount {
    pub n: usize,
    pub ring: CoeffRing,
    pub d_max: u32,
    /// `(d, dim (Q/D)_d)` for degrees with a nonzero count.
    pub per_degree: Vec<(u32, usize)>,
    pub total: usize,
}

/// Coordinates of `v` in the Hermite basis `rows`; `None` off the lattice.
fn hermite_coordinates(
    rows: &[SparseVec<Integer>],
    mut v: SparseVec<Integer>,
) -> Option<SparseVec<Integer>> {
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let (col, lead) = (&r[0].0, &r[0].1);
        let Some(pos) = v.iter().position(|(c, _)| c == col) else {
            continue;
        };
        if v[..pos].iter().any(|(c, _)| c < col) {
            return None;
        }
        let (q, rem) = (&v[pos].1 / lead, &v[pos].1 % lead);
        if rem != Integer::from(0) {
            return None;
        }
        let mut acc: std::collections::BTreeMap<usize, Integer> = v.into_iter().collect();
        for (c, x) in r {
            let e = acc.entry(*c).or_insert_with(|| Integer::from(0));
            *e -= &q * x;
        }
        v = acc
            .into_iter()
            .filter(|(_, x)| *x != Integer::from(0))
            .collect();
        out.push((i, q));
    }
    v.is_empty().then_some(out)
}

/// Minimal number of generators of `Q = ρ(A)` as a `Λₙ`-algebra, by graded
/// Nakayama: `Σ_d dim (Q⁺ / (Λₙ⁺Q + Q⁺Q⁺))_d` through `d_max`.
///
/// Over `𝔽ₚ` this is the count for `Q ⊗ 𝔽ₚ`, with `Q` the integral image:
/// the decomposables are expressed in a Hermite basis of `Q_d` and their
/// rank is taken mod `p`.
pub fn minimal_generator_count(
    n: usize,
    ring: CoeffRing,
    d_max: u32,
) -> Result<GeneratorCount, VerifyError> {
    if ring == CoeffRing::Z {
        return Err(VerifyError::Unsupported(
            "generator counts are over a field".into(),
        ));
    }
    // a monomial is indecomposable exactly when it is a single X, Y or Z
    let indecomposable = |m: &Monomial| {
        let e = m.exps();
        e[..n].iter().all(|&x| x == 0) && e.iter().map(|&x| x as u32).sum::<u32>() == 1
    };
    let per_degree = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let all = image_vectors(n, d, |_| true)?;
            let dec = image_vectors(n, d, |m| !indecomposable(m))?;
            let count = match ring {
                CoeffRing::Fp(p) => {
                    let mut index = Coords::default();
                    let mut lattice = Span::new(CoeffRing::Z);
                    for x in &all {
                        lattice.insert(index.vector(x));
                    }
                    let basis = lattice.basis();
                    let mut span = Span::new(CoeffRing::Fp(p));
                    for x in &dec {
                        let c = hermite_coordinates(&basis, index.vector(x))
                            .expect("decomposables lie in Q");
                        span.insert(c);
                    }
                    basis.len() - span.rank()
                }
                _ => rank_over(ring, &all) - rank_over(ring, &dec),
            };
            Ok((d, count))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let per_degree: Vec<(u32, usize)> = per_degree.into_iter().filter(|&(_, c)| c > 0).collect();
    Ok(GeneratorCount {
        n,
        ring,
        d_max,
        total: per_degree.iter().map(|p| p.1).sum(),
        per_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauProduct {
    pub i: usize,
    pub j: usize,
    /// `C(i+j, i)` when `i + j ≤ n`, else 0.
    pub coefficient: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub n: usize,
    /// Whether `Z̄_i = e_i(u₁v₁, …, uₙvₙ)`, for `i = 1..n`.
    pub form: Vec<bool>,
    pub products: Vec<TauProduct>,
}

impl TauReport {
    pub fn holds(&self) -> bool {
        self.form.iter().all(|&b| b) && self.products.iter().all(|p| p.holds)
    }
}

/// `τ : B → Λ(u, v)`, killing every `t`.
pub fn tau(x: &Element) -> Element {
    let n = x.algebra().len() / 3;
    x.filter(|m| m.exps()[..n].iter().all(|&e| e == 0))
}

/// `τ(ρ(Z_i))` against `e_i(uv)` and the divided power products.
pub fn tau_reduction_check(n: usize) -> TauReport {
    let b = b_algebra(n);
    let uv: Vec<Element> = (0..n)
        .map(|k| &Element::gen(&b, n + k) * &Element::gen(&b, 2 * n + k))
        .collect();
    let zbar: Vec<Element> = (0..=n).map(|i| tau(&z_image(i, n))).collect();
    let form = (1..=n)
        .map(|i| {
            let e_i = (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == i)
                .map(|s| {
                    (0..n)
                        .filter(|k| s & (1 << k) != 0)
                        .fold(Element::one(&b), |p, k| &p * &uv[k])
                })
                .fold(Element::zero(&b), |acc, x| &acc + &x);
            zbar[i] == e_i
        })
        .collect();
    let mut products = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let (coefficient, want) = if i + j <= n {
                let c = binomial((i + j) as u64, i as u64);
                (c.clone(), zbar[i + j].scale(&c))
            } else {
                (Integer::from(0), Element::zero(&b))
            };
            products.push(TauProduct {
                i,
                j,
                coefficient: coefficient.to_string(),
                holds: &zbar[i] * &zbar[j] == want,
            });
        }
    }
    TauReport { n, form, products }
}

/// `s_k(ρ(Z₁), …, ρ(Z_k)) − k Σ tᵢ^{k−1} uᵢvᵢ`.
pub fn wl_residual(k: usize, n: usize) -> Element {
    let z: Vec<Element> = (1..=k).map(|m| z_image(m, n)).collect();
    &newton(k, &z) - &w_image(k, n).scale(&Integer::from(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    /// `ρ(R_l) = 0` for `l = 1..n`.
    pub relations: bool,
    /// `ρ′(R′_l) = 0` for `l = 1..n`.
    pub relations_prime: bool,
    pub newton: bool,
    /// The power sum identity for `k = 1..n`.
    pub power_sums: bool,
    /// The recurrences for `n < l ≤ n + 3`.
    pub recurrences: bool,
    pub tau: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.relations
            && self.relations_prime
            && self.newton
            && self.power_sums
            && self.recurrences
            && self.tau
    }
}

/// The exact identities behind the presentation, at one `n`.
pub fn identity_suite(n: usize) -> Result<IdentityReport, VerifyError> {
    let rho = generator_images(n);
    let rho_full = generator_images_prime(n, true);
    let relations = (1..=n)
        .map(|l| Ok(rho.apply(&relation_r(l, n)?.element).is_zero()))
        .collect::<Result<Vec<bool>, VerifyError>>()?;
    let primes = (1..=n)
        .map(|l| Ok(rho_full.apply(&relation_rprime(l, n)?.element).is_zero()))
        .collect::<Result<Vec<bool>, VerifyError>>()?;
    let recurrences = (n + 1..=n + 3)
        .map(|l| Ok(recurrence_check(n, l)?.vanishes()))
        .collect::<Result<Vec<bool>, VerifyError>>()?;
    Ok(IdentityReport {
        n,
        relations: relations.into_iter().all(|b| b),
        relations_prime: primes.into_iter().all(|b| b),
        newton: rho.apply(&newton_identity_element(n)).is_zero(),
        power_sums: (1..=n).all(|k| wl_residual(k, n).is_zero()),
        recurrences: recurrences.into_iter().all(|b| b),
        tau: tau_reduction_check(n).holds(),
    })
}

/// The relations listed for `n = 2`, by biweight.
pub const PRINTED_N2: [((u32, u32), &[&str]); 4] = [
    ((1, 1), &["X2*Y2"]),
    ((2, 1), &["X1*X2*Y2", "X1*X2*Y1 + 2*X2*W1"]),
    ((1, 2), &["X2*Y1*Y2", "X1*Y1*Y2 - 2*Y2*W1"]),
    ((2, 2), &["X1*X2*Y1*Y2", "X1*Y2*W1", "X2*Y1*W1", "X2*Y2*W1"]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDiff {
    pub a: u32,
    pub b: u32,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    /// Expected elements outside the computed span.
    pub missing: Vec<String>,
    /// Computed basis elements outside the expected span.
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub weights: Vec<WeightDiff>,
    pub pass: bool,
}

/// Compare `relation_basis(2, ℚ)` with [`PRINTED_N2`] weight by weight, up
/// to span. Weights not listed are expected to be zero.
pub fn example_n2_reproduction() -> Result<ExampleReport, VerifyError> {
    let rb = relation_basis(2, CoeffRing::Q)?;
    let alg = aprime_algebra(2, false);
    let mut weights = Vec::new();
    for block in &rb.blocks {
        let listed: &[&str] = PRINTED_N2
            .iter()
            .find(|(w, _)| *w == (block.a, block.b))
            .map_or(&[], |(_, l)| l);
        let elems = listed
            .iter()
            .map(|s| Element::parse(&alg, s))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = ReducedBlock::from_elements(2, block.a, block.b, CoeffRing::Q, &elems);
        let missing = elems
            .iter()
            .filter(|x| !block.contains(x))
            .map(|x| x.to_string())
            .collect();
        let extra = block
            .elements
            .iter()
            .filter(|x| !expected.contains(x))
            .map(|x| x.to_string())
            .collect();
        weights.push(WeightDiff {
            a: block.a,
            b: block.b,
            expected: listed.iter().map(|s| s.to_string()).collect(),
            computed: block.elements.iter().map(|x| x.to_string()).collect(),
            missing,
            extra,
        });
    }
    let pass = weights
        .iter()
        .all(|w| w.missing.is_empty() && w.extra.is_empty());
    Ok(ExampleReport { weights, pass })
}

/// A degree where `ρ(A)_d` is a proper sublattice of `(B_d)^{Sₙ}` over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperWitness {
    pub degree: u32,
    /// An invariant outside `ρ(A)_d`.
    pub invariant: String,
}

/// Search `d ≤ d_max` for an integral invariant not in `ρ(A)`. Ranks agree
/// in characteristic 0, so any witness has finite index.
pub fn integral_properness_witness(
    n: usize,
    d_max: u32,
) -> Result<Option<ProperWitness>, VerifyError> {
    for d in 0..=d_max {
        let mut index = Coords::default();
        let mut lattice = Span::new(CoeffRing::Z);
        for x in image_vectors(n, d, |_| true)? {
            lattice.insert(index.vector(&x));
        }
        for inv in invariant_lattice_basis(n, d)? {
            if !lattice.contains(&index.vector(&inv)) {
                return Ok(Some(ProperWitness {
                    degree: d,
                    invariant: inv.to_string(),
                }));
            }
        }
    }
    Ok(None)
}
