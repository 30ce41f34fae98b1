use std::ops::{Add, Mul, Neg, Sub};

use crate::superpoly::{same_algebra, Algebra, Element};

/// Power series in `s` truncated after `s^order`, with coefficients in an
/// even algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Element>,
}

impl TruncatedSeries {
    pub fn zero(alg: &Algebra, order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Element::zero(alg); order + 1],
        }
    }

    pub fn one(alg: &Algebra, order: usize) -> Self {
        TruncatedSeries::constant(&Element::one(alg), order)
    }

    pub fn constant(x: &Element, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(x.algebra(), order);
        s.coeffs[0] = x.clone();
        s
    }

    /// Coefficients beyond `order` are dropped.
    pub fn from_coeffs(alg: &Algebra, order: usize, coeffs: Vec<Element>) -> Self {
        let mut s = TruncatedSeries::zero(alg, order);
        for (i, c) in coeffs.into_iter().enumerate().take(order + 1) {
            assert!(
                same_algebra(c.algebra(), alg),
                "series coefficient outside the algebra"
            );
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn algebra(&self) -> &Algebra {
        self.coeffs[0].algebra()
    }
    pub fn coeff(&self, l: usize) -> &Element {
        &self.coeffs[l]
    }
    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Element::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, x: &Element) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
    }

    /// Multiplicative inverse; requires constant term `±1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        let unit = if c0.is_one() {
            false
        } else if (-c0).is_one() {
            true
        } else {
            return None;
        };
        let alg = self.algebra().clone();
        // b_m = −c0⁻¹ Σ_{i≥1} a_i b_{m−i}
        let mut b = vec![c0.clone()];
        for m in 1..=self.order {
            let mut acc = Element::zero(&alg);
            for i in 1..=m {
                acc = &acc + &(&self.coeffs[i] * &b[m - i]);
            }
            b.push(if unit { acc } else { -acc });
        }
        Some(TruncatedSeries {
            order: self.order,
            coeffs: b,
        })
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order, o.order, "series orders differ");
        assert!(
            same_algebra(self.algebra(), o.algebra()),
            "series over different algebras"
        );
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check(o);
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check(o);
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.check(o);
        let mut out = TruncatedSeries::zero(self.algebra(), self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }
}

/// Square matrix of truncated series with a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    n: usize,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn new(n: usize, entries: Vec<TruncatedSeries>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix shape");
        if let Some(first) = entries.first() {
            assert!(
                entries.iter().all(|e| e.order == first.order),
                "uniform truncation order"
            );
        }
        SeriesMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.n + j]
    }
    pub fn entries(&self) -> &[TruncatedSeries] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symvan::t_algebra;

    #[test]
    fn geometric_inverse() {
        let alg = t_algebra(1);
        let t = Element::gen(&alg, 0);
        let one_plus_ts =
            TruncatedSeries::from_coeffs(&alg, 4, vec![Element::one(&alg), t.clone()]);
        let inv = one_plus_ts.inverse().unwrap();
        for k in 0..=4 {
            let want = if k % 2 == 0 {
                t.pow(k as u32)
            } else {
                -t.pow(k as u32)
            };
            assert_eq!(inv.coeff(k), &want);
        }
        assert_eq!(&inv * &one_plus_ts, TruncatedSeries::one(&alg, 4));
        let two = TruncatedSeries::constant(&Element::constant(&alg, 2.into()), 4);
        assert!(two.inverse().is_none());
    }
}
