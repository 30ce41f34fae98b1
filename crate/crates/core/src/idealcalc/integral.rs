//! Integral saturation: the `Δ²`-saturation of `(R₁, …, Rₙ)` over ℤ against
//! the ℤ-kernel of `ρ`, degree by degree.
//!
//! `ρ` preserves `δ = #X − #Y` and every `R_l` has `δ = 0`, so each degree
//! splits into `δ`-blocks that are handled separately.

use rayon::prelude::*;
use serde::Serialize;

use super::{element_of, kernel_rows, Coords, IdealError, AUGMENT};
use crate::exactlin::{is_full, CoeffRing, Integer, Span, SparseVec};
use crate::relgen::{a_algebra, delta_squared, generator_images, relation_r};
use crate::superpoly::{graded_basis, Element, Monomial};

/// Result for one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralDegree {
    pub degree: u32,
    /// ℤ-rank of `ker ρ` in this degree.
    pub kernel_rank: usize,
    /// Least `m` with `Δ^{2m}·ker ρ ⊆ (R₁, …, Rₙ)`, over all `δ`-blocks.
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralReport {
    pub n: usize,
    pub d_max: u32,
    pub degrees: Vec<IntegralDegree>,
}

fn delta_of(n: usize, m: &Monomial) -> i32 {
    let e = m.exps();
    e[n..2 * n].iter().map(|&x| x as i32).sum::<i32>()
        - e[2 * n..3 * n].iter().map(|&x| x as i32).sum::<i32>()
}

/// Check, for every `d ≤ d_max`, that the degree-`d` part of the
/// `Δ²`-saturation of `(R₁, …, Rₙ)` over ℤ is the whole ℤ-kernel of `ρ`.
/// The reverse inclusion holds because `B` has no `Δ²`-torsion.
pub fn integral_saturation_check(
    n: usize,
    d_max: u32,
    cap: u32,
) -> Result<IntegralReport, IdealError> {
    let alg = a_algebra(n);
    let rho = generator_images(n);
    let delta2 = delta_squared(n).embed(&alg)?;
    let step = delta2.degree().unwrap_or(0);
    let rels = (1..=n)
        .map(|l| Ok(relation_r(l, n)?.element))
        .collect::<Result<Vec<Element>, IdealError>>()?;

    let block = |d: u32, delta: i32| -> Result<(usize, u32), IdealError> {
        let basis: Vec<Monomial> = graded_basis(&alg, d)?
            .into_iter()
            .filter(|m| delta_of(n, m) == delta)
            .collect();
        let mut ev = rho.evaluator();
        let images: Vec<Element> = basis.iter().map(|m| ev.monomial(m)).collect();
        let (kernel, _) = kernel_rows(CoeffRing::Z, &images);
        let kernel: Vec<Element> = kernel.iter().map(|r| element_of(&alg, &basis, r)).collect();
        if kernel.is_empty() {
            return Ok((0, 0));
        }
        for m in 0..=cap {
            let big_d = d + m * step;
            let mut coords = Coords::default();
            let mut span = Span::new(CoeffRing::Z);
            for r in &rels {
                let deg = r.degree().expect("nonzero relation");
                if deg > big_d {
                    continue;
                }
                for mu in graded_basis(&alg, big_d - deg)? {
                    if delta_of(n, &mu) == delta {
                        span.insert(coords.vector(&r.mul_monomial(&mu, &Integer::from(1))));
                    }
                }
            }
            let power = delta2.pow(m);
            for (i, k) in kernel.iter().enumerate() {
                let mut v: SparseVec<Integer> = coords.vector(&(&power * k));
                v.push((AUGMENT + i, Integer::from(1)));
                span.insert(v);
            }
            if is_full(CoeffRing::Z, &span.tail_basis(AUGMENT), kernel.len()) {
                return Ok((kernel.len(), m));
            }
        }
        Err(IdealError::Mismatch {
            degree: d,
            detail: format!("δ = {delta}: kernel not reached by the saturation with m ≤ {cap}"),
        })
    };

    let degrees = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let mut out = IntegralDegree {
                degree: d,
                kernel_rank: 0,
                exponent: 0,
            };
            for delta in -(n as i32)..=n as i32 {
                let (rank, m) = block(d, delta)?;
                out.kernel_rank += rank;
                out.exponent = out.exponent.max(m);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, IdealError>>()?;
    Ok(IntegralReport { n, d_max, degrees })
}
