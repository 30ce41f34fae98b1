//! The ideal of relations, computed two ways.
//!
//! The oracle takes degreewise kernels of `ρ : A → B` (or `ρ′` on `A′`).
//! The weight-graded algorithm works on `A′` one biweight `(a, b)` at a
//! time: it saturates the image of the relation matrix `T_{a,b}` by `Δ²`
//! and reduces modulo `(e₁, …, eₙ)`. See [`weights`] and [`integral`].

pub mod integral;
pub mod weights;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::exactlin::{CoeffRing, Integer, ModP, Span, SparseVec};
use crate::relgen::{
    a_algebra, aprime_algebra, generator_images, generator_images_prime, RelError,
};
use crate::superpoly::{graded_basis, Algebra, AlgebraHom, Element, Monomial, PolyError};

pub use integral::{integral_saturation_check, IntegralDegree, IntegralReport};
pub use weights::{
    matrix_t, minimal_monomial_generators, monomial_ideal_part, oracle_block, reduce_block,
    relation_basis, saturate_block, weight_basis, ReducedBlock, RelationBasis, SaturatedPiece,
    Saturation, TColumn, TMatrix, DEFAULT_SATURATION_CAP,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IdealError {
    #[error("coefficient ring {ring} does not invert {n}!")]
    BadCharacteristic { n: usize, ring: CoeffRing },
    #[error(
        "saturation in weight ({a},{b}), degree {degree} did not reach the kernel by m = {cap}"
    )]
    SaturationUnstable {
        a: u32,
        b: u32,
        degree: u32,
        cap: u32,
    },
    #[error("mismatch in degree {degree}: {detail}")]
    Mismatch { degree: u32, detail: String },
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which generators stand in degrees `2, 4, …, 2n` besides the `eₖ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisFlavor {
    /// `Z₁..Zₙ`, the ring `A`.
    Z,
    /// `W₁..W_{n−1}`, the ring `A′`.
    W,
}

/// A presentation ring together with its coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub n: usize,
    pub flavor: BasisFlavor,
    pub ring: CoeffRing,
}

impl PresentationSpec {
    /// The W-basis needs `n!` invertible.
    pub fn new(n: usize, flavor: BasisFlavor, ring: CoeffRing) -> Result<Self, IdealError> {
        if flavor == BasisFlavor::W && !ring.inverts_factorial(n as u64) {
            return Err(IdealError::BadCharacteristic { n, ring });
        }
        Ok(PresentationSpec { n, flavor, ring })
    }

    pub fn algebra(&self) -> Algebra {
        match self.flavor {
            BasisFlavor::Z => a_algebra(self.n),
            BasisFlavor::W => aprime_algebra(self.n, false),
        }
    }

    pub fn rho(&self) -> AlgebraHom {
        match self.flavor {
            BasisFlavor::Z => generator_images(self.n),
            BasisFlavor::W => generator_images_prime(self.n, false),
        }
    }
}

/// Whether every coefficient of `x` vanishes in `ring`.
pub fn vanishes_in(ring: CoeffRing, x: &Element) -> bool {
    match ring {
        CoeffRing::Fp(p) => x.terms().iter().all(|(_, c)| ModP(p).reduce(c) == 0),
        _ => x.is_zero(),
    }
}

/// Columns far beyond any coordinate in use; augmented entries sit here.
pub(crate) const AUGMENT: usize = 1 << 40;

/// Assigns coordinates to monomials on first sight.
#[derive(Default)]
pub(crate) struct Coords(FxHashMap<Monomial, usize>);

impl Coords {
    pub(crate) fn vector(&mut self, x: &Element) -> SparseVec<Integer> {
        let next = &mut self.0;
        let mut v: SparseVec<Integer> = x
            .terms()
            .iter()
            .map(|(m, c)| {
                let k = next.len();
                (*next.entry(m.clone()).or_insert(k), c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub(crate) fn with_index(x: &[Monomial]) -> Self {
        Coords(x.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
    }
}

/// Canonical basis of the kernel of `j ↦ images[j]` over `ring`, as rows
/// over the positions `0..images.len()`, and the rank of the images.
pub(crate) fn kernel_rows(ring: CoeffRing, images: &[Element]) -> (Vec<SparseVec<Integer>>, usize) {
    let mut coords = Coords::default();
    let mut span = Span::new(ring);
    for (j, x) in images.iter().enumerate() {
        let mut v = coords.vector(x);
        v.push((AUGMENT + j, Integer::from(1)));
        span.insert(v);
    }
    let kernel = span.tail_basis(AUGMENT);
    let rank = images.len() - kernel.len();
    (kernel, rank)
}

/// Rank of a family of elements over `ring`.
pub(crate) fn rank_over(ring: CoeffRing, xs: &[Element]) -> usize {
    let mut coords = Coords::default();
    let mut span = Span::new(ring);
    for x in xs {
        span.insert(coords.vector(x));
    }
    span.rank()
}

/// Element with coefficients `row` over the monomials `basis`.
pub(crate) fn element_of(alg: &Algebra, basis: &[Monomial], row: &SparseVec<Integer>) -> Element {
    Element::from_terms(alg, row.iter().map(|(i, c)| (basis[*i].clone(), c.clone())))
}

/// One graded piece `J_d` of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPiece {
    pub degree: u32,
    /// Dimension (or ℤ-rank) of the source in this degree.
    pub source_dim: usize,
    /// Rank of `ρ` in this degree.
    pub image_rank: usize,
    /// Canonical echelon (ℚ, 𝔽ₚ) or Hermite (ℤ) basis of `J_d`.
    pub basis: Vec<Element>,
}

/// Degree-`d` piece of `ker ρ` for the given presentation.
pub fn kernel_oracle(spec: &PresentationSpec, d: u32) -> Result<KernelPiece, IdealError> {
    let alg = spec.algebra();
    let rho = spec.rho();
    let basis = graded_basis(&alg, d)?;
    let mut ev = rho.evaluator();
    let images: Vec<Element> = basis.iter().map(|m| ev.monomial(m)).collect();
    let (rows, image_rank) = kernel_rows(spec.ring, &images);
    let mut piece = KernelPiece {
        degree: d,
        source_dim: basis.len(),
        image_rank,
        basis: Vec::new(),
    };
    for row in &rows {
        let x = element_of(&alg, &basis, row);
        debug_assert!(vanishes_in(spec.ring, &rho.apply(&x)));
        piece.basis.push(x);
    }
    Ok(piece)
}

/// Degreewise pieces of `ker ρ` through some degree.
#[derive(Clone, Debug)]
pub struct DegreewiseIdeal {
    spec: PresentationSpec,
    pieces: Vec<KernelPiece>,
}

impl DegreewiseIdeal {
    pub fn new(spec: PresentationSpec) -> Self {
        DegreewiseIdeal {
            spec,
            pieces: Vec::new(),
        }
    }

    /// Oracle pieces in degrees `0..=d_max`.
    pub fn compute(spec: PresentationSpec, d_max: u32) -> Result<Self, IdealError> {
        let mut ideal = DegreewiseIdeal::new(spec);
        for d in 0..=d_max {
            ideal.insert(kernel_oracle(&spec, d)?)?;
        }
        Ok(ideal)
    }

    /// Add a piece after re-checking that each element maps to zero.
    pub fn insert(&mut self, piece: KernelPiece) -> Result<(), IdealError> {
        let rho = self.spec.rho();
        for x in &piece.basis {
            if !x.is_homogeneous(piece.degree) || !vanishes_in(self.spec.ring, &rho.apply(x)) {
                return Err(IdealError::Mismatch {
                    degree: piece.degree,
                    detail: format!("{x} is not a kernel element of degree {}", piece.degree),
                });
            }
        }
        self.pieces.retain(|p| p.degree != piece.degree);
        self.pieces.push(piece);
        self.pieces.sort_by_key(|p| p.degree);
        Ok(())
    }

    pub fn spec(&self) -> &PresentationSpec {
        &self.spec
    }

    pub fn pieces(&self) -> &[KernelPiece] {
        &self.pieces
    }

    pub fn piece(&self, d: u32) -> Option<&KernelPiece> {
        self.pieces.iter().find(|p| p.degree == d)
    }

    /// `dim J_d` for each stored degree.
    pub fn ranks(&self) -> Vec<(u32, usize)> {
        self.pieces
            .iter()
            .map(|p| (p.degree, p.basis.len()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_small() {
        let z = PresentationSpec::new(1, BasisFlavor::Z, CoeffRing::Z).unwrap();
        let j2 = kernel_oracle(&z, 2).unwrap();
        assert_eq!(j2.source_dim, 3);
        assert_eq!(j2.basis.len(), 1);
        assert_eq!(j2.basis[0].to_string(), "Z1 - X1*Y1");
        assert!(kernel_oracle(&z, 1).unwrap().basis.is_empty());
        for n in 1..=3 {
            for ring in [CoeffRing::Z, CoeffRing::Q, CoeffRing::Fp(2)] {
                let spec = PresentationSpec::new(n, BasisFlavor::Z, ring).unwrap();
                let j0 = kernel_oracle(&spec, 0).unwrap();
                assert_eq!((j0.source_dim, j0.basis.len()), (1, 0));
            }
        }
    }

    #[test]
    fn w_basis_needs_invertible_factorial() {
        assert!(PresentationSpec::new(2, BasisFlavor::W, CoeffRing::Fp(2)).is_err());
        assert!(PresentationSpec::new(2, BasisFlavor::W, CoeffRing::Z).is_err());
        assert!(PresentationSpec::new(2, BasisFlavor::W, CoeffRing::Fp(3)).is_ok());
        assert!(PresentationSpec::new(1, BasisFlavor::W, CoeffRing::Z).is_ok());
    }

    #[test]
    fn kernel_elements_split_by_weight() {
        // every biweight component of a kernel element is again in the kernel
        let spec = PresentationSpec::new(2, BasisFlavor::W, CoeffRing::Q).unwrap();
        let rho = spec.rho();
        let alg = spec.algebra();
        for d in 0..=10 {
            for x in kernel_oracle(&spec, d).unwrap().basis {
                let mut weights: Vec<(u32, u32)> = x
                    .terms()
                    .iter()
                    .map(|(m, _)| m.biweight(&alg).unwrap())
                    .collect();
                weights.dedup();
                for w in weights {
                    let part = x.filter(|m| m.biweight(&alg) == Some(w));
                    assert!(rho.apply(&part).is_zero(), "degree {d}, weight {w:?}");
                }
            }
        }
    }

    #[test]
    fn degreewise_ideal_rejects_non_kernel() {
        let spec = PresentationSpec::new(1, BasisFlavor::Z, CoeffRing::Q).unwrap();
        let mut ideal = DegreewiseIdeal::compute(spec, 4).unwrap();
        assert_eq!(ideal.ranks(), vec![(0, 0), (1, 0), (2, 1), (3, 2), (4, 3)]);
        let bad = KernelPiece {
            degree: 2,
            source_dim: 3,
            image_rank: 2,
            basis: vec![Element::parse(&spec.algebra(), "Z1").unwrap()],
        };
        assert!(ideal.insert(bad).is_err());
    }
}
