//! Checks of the presentation against `B^{Sₙ}`, the generator counts and
//! the identity battery, bundled into a serializable suite.

mod action;
mod checks;

use rayon::prelude::*;
use serde::Serialize;

pub use action::{invariant_dimension, invariant_lattice_basis, SnAction};
pub use checks::{
    example_n2_reproduction, hilbert_compare, identity_suite, integral_properness_witness,
    minimal_generator_count, tau, tau_reduction_check, wl_residual, ExampleReport, GeneratorCount,
    HilbertReport, HilbertRow, IdentityReport, ProperWitness, TauProduct, TauReport, WeightDiff,
    PRINTED_N2,
};

use crate::exactlin::CoeffRing;
use crate::idealcalc::{oracle_block, relation_basis, IdealError};
use crate::relgen::RelError;
use crate::superpoly::PolyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("coefficient ring {ring} does not invert {n}!")]
    BadCharacteristic { n: usize, ring: CoeffRing },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A bounded search found nothing; not a failure.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub ring: CoeffRing,
    pub d_max: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

fn check<T: Serialize>(name: &str, pass: bool, detail: &T) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: if pass { Status::Pass } else { Status::Fail },
        detail: serde_json::to_value(detail).expect("reports serialize"),
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Option<CheckResult>, VerifyError> + Send + Sync + 'a>;

/// Every check that applies to `(n, ring)`, run concurrently. Degree-bounded
/// checks go through `d_max`.
pub fn run_suite(n: usize, ring: CoeffRing, d_max: u32) -> Result<SuiteReport, VerifyError> {
    let field = ring.is_field();
    let jobs: Vec<Job> = vec![
        Box::new(|| {
            let r = identity_suite(n)?;
            Ok(Some(check("identities", r.holds(), &r)))
        }),
        Box::new(|| {
            let invariant = SnAction::all(n).iter().all(|g| {
                crate::relgen::generator_images(n)
                    .images()
                    .iter()
                    .all(|x| &g.apply(x) == x)
            });
            Ok(Some(check("image-in-invariants", invariant, &invariant)))
        }),
        Box::new(|| {
            if ring.characteristic() != 0 {
                return Ok(None);
            }
            let r = hilbert_compare(n, d_max, ring)?;
            Ok(Some(check("hilbert", r.first_mismatch().is_none(), &r)))
        }),
        Box::new(|| {
            if !field || n == 0 {
                return Ok(None);
            }
            let r = minimal_generator_count(n, ring, d_max.max(2 * n as u32))?;
            let p = ring.characteristic();
            let want = if p != 0 && (n as u64).is_multiple_of(p) {
                3 * n
            } else {
                3 * n - 1
            };
            let want = if n == 1 { 2 } else { want };
            Ok(Some(check("minimal-generators", r.total == want, &r)))
        }),
        Box::new(|| {
            if !field || !ring.inverts_factorial(n as u64) || n == 0 || n > 3 {
                return Ok(None);
            }
            let rb = relation_basis(n, ring)?;
            let agree = rb
                .blocks
                .iter()
                .all(|b| b.same_span(&oracle_block(n, b.a, b.b, ring)));
            let dims: Vec<((u32, u32), usize)> =
                rb.blocks.iter().map(|b| ((b.a, b.b), b.dim())).collect();
            Ok(Some(check("algorithm-vs-oracle", agree, &dims)))
        }),
        Box::new(|| {
            if ring != CoeffRing::Z || n == 0 {
                return Ok(None);
            }
            let w = integral_properness_witness(n, d_max)?;
            Ok(Some(CheckResult {
                name: "integral-properness".into(),
                status: if w.is_some() {
                    Status::Pass
                } else {
                    Status::Inconclusive
                },
                detail: serde_json::to_value(&w).expect("reports serialize"),
            }))
        }),
    ];
    let checks = jobs
        .par_iter()
        .map(|job| job())
        .collect::<Result<Vec<_>, VerifyError>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(SuiteReport {
        n,
        ring,
        d_max,
        checks,
    })
}
