//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use comvar::exactlin::{binomial, CoeffRing, Integer};
use comvar::hhloday::{
    hochschild_homology_ranks, Base, Chain, LodayComplex, Normalization, SimplicialModel,
};
use comvar::idealcalc::{integral_saturation_check, oracle_block, relation_basis, RelationBasis};
use comvar::relgen::coefficients;
use comvar::verify::{
    example_n2_reproduction, hilbert_compare, identity_suite, minimal_generator_count,
    IdentityReport,
};
use num_traits::ToPrimitive;

/// Wall-clock budget for reproducing the `n = 2` relation spaces.
const N2_EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
/// Wall-clock budget for the `n = 3` relation spaces.
const N3_COUNT_BUDGET: Duration = Duration::from_secs(300);
/// Every exact check uses zero tolerance; this records it.
const EXACT: u32 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn example_n2() -> Outcome {
    let start = Instant::now();
    let report = example_n2_reproduction().expect("relation basis at n = 2");
    let elapsed = start.elapsed();
    let mut diff = Vec::new();
    for w in &report.weights {
        for m in &w.missing {
            diff.push(format!("({},{}) missing {m}", w.a, w.b));
        }
        for e in &w.extra {
            diff.push(format!("({},{}) extra {e}", w.a, w.b));
        }
    }
    let pass = report.pass && elapsed <= N2_EXAMPLE_BUDGET;
    let detail = if diff.is_empty() {
        format!("{elapsed:.2?}")
    } else {
        format!("{elapsed:.2?}; {}", diff.join("; "))
    };
    outcome(pass, detail)
}

fn n3_count(rb: &RelationBasis, elapsed: Duration) -> Outcome {
    let total = rb.total_dimension();
    let dims: Vec<String> = rb
        .blocks
        .iter()
        .map(|b| format!("({},{})={}", b.a, b.b, b.dim()))
        .collect();
    outcome(
        total == 150 && elapsed <= N3_COUNT_BUDGET,
        format!("total {total} in {elapsed:.1?}: {}", dims.join(" ")),
    )
}

fn divisibility() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=4 {
        match coefficients(n) {
            Ok(c) => {
                let want: usize = (1..=n as u64)
                    .map(|k| {
                        binomial(n as u64, k)
                            .to_usize()
                            .expect("small binomial")
                            .pow(2)
                    })
                    .sum();
                if c.pairs().len() != want {
                    return outcome(
                        false,
                        format!("n={n}: {} minors, expected {want}", c.pairs().len()),
                    );
                }
                pairs += want;
            }
            Err(e) => return outcome(false, format!("n={n}: {e}")),
        }
    }
    outcome(
        true,
        format!("{pairs} minors over n ≤ 4, tolerance {EXACT}"),
    )
}

fn vanishing(ids: &[IdentityReport]) -> Outcome {
    let bad: Vec<usize> = ids
        .iter()
        .filter(|r| !(r.relations && r.relations_prime))
        .map(|r| r.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("ρ(R_l) = ρ′(R′_l) = 0 for l ≤ n ≤ 4; failing n: {bad:?}"),
    )
}

fn hilbert() -> Outcome {
    for n in 1..=3 {
        let r = hilbert_compare(n, 12, CoeffRing::Q).expect("hilbert comparison");
        if let Some(d) = r.first_mismatch() {
            return outcome(false, format!("n={n}: first mismatch in degree {d}"));
        }
        if r.rows.iter().any(|x| x.invariant > x.ambient) {
            return outcome(false, format!("n={n}: invariants exceed the ambient space"));
        }
    }
    outcome(true, "dim ρ(A)_d = dim (B_d)^Sn for d ≤ 12, n ≤ 3")
}

fn algorithm_vs_oracle(bases: &[RelationBasis]) -> Outcome {
    for rb in bases {
        for b in &rb.blocks {
            if !b.same_span(&oracle_block(rb.n, b.a, b.b, CoeffRing::Q)) {
                return outcome(false, format!("n={}, weight ({},{})", rb.n, b.a, b.b));
            }
        }
    }
    outcome(true, "every bidegree agrees for n ≤ 3 over Q")
}

fn generators() -> Outcome {
    let cases = [
        (2, CoeffRing::Q, 5),
        (2, CoeffRing::Fp(2), 6),
        (3, CoeffRing::Q, 8),
        (3, CoeffRing::Fp(3), 9),
    ];
    let mut got = Vec::new();
    let mut pass = true;
    for (n, ring, want) in cases {
        let c = minimal_generator_count(n, ring, 2 * n as u32).expect("generator count");
        pass &= c.total == want;
        got.push(format!("n={n} {ring}: {} (want {want})", c.total));
    }
    outcome(pass, got.join(", "))
}

fn identities(ids: &[IdentityReport]) -> Outcome {
    let mut bad = Vec::new();
    for r in ids {
        if !r.newton {
            bad.push(format!("newton n={}", r.n));
        }
        if !r.power_sums {
            bad.push(format!("power sums n={}", r.n));
        }
        if !r.recurrences {
            bad.push(format!("recurrences n={}", r.n));
        }
        if r.n <= 3 && !r.tau {
            bad.push(format!("tau n={}", r.n));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "all exact".into()
        } else {
            bad.join(", ")
        },
    )
}

fn integral() -> Outcome {
    match integral_saturation_check(2, 16, 4) {
        Ok(r) => {
            let ranks: Vec<usize> = r.degrees.iter().map(|d| d.kernel_rank).collect();
            let m = r.degrees.iter().map(|d| d.exponent).max().unwrap_or(0);
            outcome(
                true,
                format!("d ≤ 16, kernel ranks {ranks:?}, largest exponent {m}"),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn hochschild() -> Outcome {
    let poly2 = Base::Polynomial(2);
    let ext1 = Base::Exterior(1);
    let cases = [
        (
            poly2,
            SimplicialModel::Circle,
            Normalization::Unnormalized,
            8,
            vec![1, 0, 1, 1, 1, 1, 1, 1, 1],
        ),
        (
            ext1,
            SimplicialModel::Circle,
            Normalization::Normalized,
            8,
            vec![1; 9],
        ),
        (
            poly2,
            SimplicialModel::Torus2,
            Normalization::Unnormalized,
            6,
            vec![1, 0, 1, 2, 2, 2, 3],
        ),
    ];
    for (base, model, norm, cap, want) in cases {
        let c = LodayComplex::new(base, model, norm, cap as usize + 1);
        let t = hochschild_homology_ranks(&c, cap, CoeffRing::Z);
        if t.ranks() != want || t.has_torsion() {
            return outcome(false, format!("{base} over {model}: {:?}", t.rows));
        }
    }
    let c = LodayComplex::new(ext1, SimplicialModel::Circle, Normalization::Normalized, 4);
    let g1 = Chain::single(1, vec![0, 1], Integer::from(1));
    let g2 = Chain::single(2, vec![0, 1, 1], Integer::from(1));
    let diff = c
        .shuffle_product(&g1, &g1)
        .sub(&g2.scale(&Integer::from(2)));
    let shuffle = c.is_boundary(&diff, CoeffRing::Z).expect("same complex");
    outcome(
        shuffle,
        "circle through 8, torus through 6, torsion-free; γ₁γ₁ = 2γ₂",
    )
}

fn main() -> ExitCode {
    let ids: Vec<IdentityReport> = (1..=4)
        .map(|n| identity_suite(n).expect("identity suite"))
        .collect();
    let start = Instant::now();
    let rb3 = relation_basis(3, CoeffRing::Q).expect("relation basis at n = 3");
    let n3_elapsed = start.elapsed();
    let bases: Vec<RelationBasis> = (1..=2)
        .map(|n| relation_basis(n, CoeffRing::Q).expect("relation basis"))
        .chain(std::iter::once(rb3))
        .collect();

    let results = [
        ("n=2 example reproduction", example_n2()),
        ("n=3 dimension count", n3_count(&bases[2], n3_elapsed)),
        ("minor divisibility", divisibility()),
        ("relation vanishing", vanishing(&ids)),
        ("Hilbert agreement over Q", hilbert()),
        ("algorithm vs oracle", algorithm_vs_oracle(&bases)),
        ("minimal generators", generators()),
        ("identity suite", identities(&ids)),
        ("integral saturation", integral()),
        ("Hochschild tables", hochschild()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
