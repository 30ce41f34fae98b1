use smallvec::SmallVec;

use super::monomial::Exps;
use super::{AlgebraSpec, Monomial, Parity, PolyError};

fn check_positive(alg: &AlgebraSpec) -> Result<(), PolyError> {
    match alg.generators().iter().find(|g| g.degree == 0) {
        Some(g) => Err(PolyError::DegreeZeroGenerator(g.name.clone())),
        None => Ok(()),
    }
}

/// Enumerate monomials of total degree exactly `d` over the generators
/// selected by `allowed`.
pub(crate) fn enumerate(
    alg: &AlgebraSpec,
    d: u32,
    allowed: &dyn Fn(usize) -> bool,
    out: &mut Vec<Monomial>,
) {
    fn go(
        alg: &AlgebraSpec,
        i: usize,
        left: u32,
        exps: &mut Exps,
        allowed: &dyn Fn(usize) -> bool,
        out: &mut Vec<Monomial>,
    ) {
        if i == alg.len() {
            if left == 0 {
                out.push(Monomial::from_exps(alg, exps).expect("odd exponents bounded"));
            }
            return;
        }
        let g = &alg.generators()[i];
        let max = if !allowed(i) {
            0
        } else if g.parity == Parity::Odd {
            u32::from(left >= g.degree)
        } else {
            left / g.degree
        };
        for e in 0..=max {
            exps[i] = e as u8;
            go(alg, i + 1, left - e * g.degree, exps, allowed, out);
        }
        exps[i] = 0;
    }
    let mut exps: Exps = SmallVec::from_elem(0, alg.len());
    go(alg, 0, d, &mut exps, allowed, out);
}

/// All monomials of degree `d`, in listing order.
pub fn graded_basis(alg: &AlgebraSpec, d: u32) -> Result<Vec<Monomial>, PolyError> {
    check_positive(alg)?;
    let mut out = Vec::new();
    enumerate(alg, d, &|_| true, &mut out);
    out.sort();
    Ok(out)
}

/// All monomials of degree at most `d`, in listing order.
pub fn monomials_up_to(alg: &AlgebraSpec, d: u32) -> Result<Vec<Monomial>, PolyError> {
    check_positive(alg)?;
    let mut out = Vec::new();
    for k in 0..=d {
        enumerate(alg, k, &|_| true, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Coefficients of the Hilbert series `∏ (1+q^|x|) / ∏ (1−q^|y|)` through
/// degree `d`, over odd `x` and even `y`.
pub fn hilbert_series(alg: &AlgebraSpec, d: u32) -> Result<Vec<u64>, PolyError> {
    check_positive(alg)?;
    let n = d as usize + 1;
    let mut series = vec![0u64; n];
    series[0] = 1;
    for g in alg.generators() {
        let k = g.degree as usize;
        match g.parity {
            Parity::Odd => {
                for i in (k..n).rev() {
                    series[i] += series[i - k];
                }
            }
            Parity::Even => {
                for i in k..n {
                    series[i] += series[i - k];
                }
            }
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::super::GeneratorDescriptor;
    use super::*;

    #[test]
    fn counts_match_series() {
        let alg = AlgebraSpec::new(
            "mix",
            vec![
                GeneratorDescriptor::new("a", 2, None),
                GeneratorDescriptor::new("b", 1, None),
                GeneratorDescriptor::new("c", 3, None),
                GeneratorDescriptor::new("d", 4, None),
            ],
        )
        .unwrap();
        let hs = hilbert_series(&alg, 12).unwrap();
        for d in 0..=12 {
            assert_eq!(graded_basis(&alg, d).unwrap().len() as u64, hs[d as usize]);
        }
    }

    #[test]
    fn degree_zero_rejected() {
        let alg = AlgebraSpec::new("z", vec![GeneratorDescriptor::new("a", 0, None)]).unwrap();
        assert!(matches!(
            graded_basis(&alg, 1),
            Err(PolyError::DegreeZeroGenerator(_))
        ));
    }
}
