//! Exact scalars and exact linear algebra.
//!
//! Fields (ℚ, 𝔽ₚ) get sparse echelon forms; ℤ gets Hermite and Smith normal
//! forms with explicit unimodular transforms. Rational elimination runs
//! fraction-free on primitive integer rows.

mod integer;
mod scalar;
mod span;
mod sparse;

pub use integer::{
    hermite_normal_form, lattice_membership, smith_normal_form, Hnf, IntLattice, IntMatrix, Snf,
};
pub use scalar::{
    binomial, content, factorial, is_prime, CoeffRing, Field, Fp, Integer, Rational, Scalar,
};
pub use span::{is_full, sparse, Span};
pub use sparse::{
    combine, rank_of, relations_of, to_mod_p, to_rational_rows, Echelon, Elim, FracFree, ModP,
    SparseVec,
};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("unknown coefficient ring {0:?}")]
    BadRing(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("operation needs a field, got {0}")]
    NotAField(CoeffRing),
    #[error("operation needs integer entries, got {0}")]
    NotIntegral(CoeffRing),
    #[error("entries mix rings {0} and {1}")]
    MixedRings(CoeffRing, CoeffRing),
}

/// Dense matrix of scalars sharing one ring tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(
        ring: CoeffRing,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, LinError> {
        assert_eq!(entries.len(), rows * cols, "entry count");
        if let Some(bad) = entries.iter().find(|s| s.ring() != ring) {
            return Err(LinError::MixedRings(ring, bad.ring()));
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Embed integer entries into `ring`.
    pub fn from_integers(ring: CoeffRing, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flat_map(|r| {
                r.iter()
                    .map(|&x| Scalar::from_integer(ring, &Integer::from(x)))
            })
            .collect();
        ExactMatrix {
            ring,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> Self {
        let z = Scalar::from_integer(ring, &Integer::zero());
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![z; rows * cols],
        }
    }

    pub fn identity(ring: CoeffRing, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::from_integer(ring, &Integer::from(1));
        }
        m
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    fn to_int(&self) -> Result<IntMatrix, LinError> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                match self.get(i, j) {
                    Scalar::Int(v) => m.data[i][j] = v.clone(),
                    _ => return Err(LinError::NotIntegral(self.ring)),
                }
            }
        }
        Ok(m)
    }

    fn field_rows<F: Field>(&self, extract: impl Fn(&Scalar) -> F) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| extract(self.get(i, j))).collect())
            .collect()
    }
}

/// Reduced row echelon form by Gauss–Jordan elimination; among candidate
/// rows the pivot with the smallest bit size wins (ties: lowest row).
/// Returns the reduced rows and the pivot columns.
pub fn rref<F: Field>(mut a: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].bit_size(), i))
        else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn kernel_from_rref<F: Field>(
    reduced: &[Vec<F>],
    pivots: &[usize],
    cols: usize,
    zero: F,
    one: F,
) -> Vec<Vec<F>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<F>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); cols];
            v[f] = one.clone();
            for (row, &p) in reduced.iter().zip(pivots) {
                v[p] = row[f].neg();
            }
            v
        })
        .collect();
    // Echelonize the kernel basis itself so the output is canonical.
    if !basis.is_empty() {
        basis = rref(basis, cols).0;
    }
    basis
}

/// Basis of the right null space of `m`, in reduced echelon form.
pub fn kernel_basis(m: &ExactMatrix) -> Result<Vec<Vec<Scalar>>, LinError> {
    match m.ring {
        CoeffRing::Z => Err(LinError::NotAField(CoeffRing::Z)),
        CoeffRing::Q => {
            let rows = m.field_rows(|s| match s {
                Scalar::Rat(r) => r.clone(),
                _ => unreachable!("ring tag checked"),
            });
            let (r, p) = rref(rows, m.cols);
            let k = kernel_from_rref(
                &r,
                &p,
                m.cols,
                <Rational as Zero>::zero(),
                Rational::from_integer(1.into()),
            );
            Ok(k.into_iter()
                .map(|v| v.into_iter().map(Scalar::Rat).collect())
                .collect())
        }
        CoeffRing::Fp(p) => {
            let rows = m.field_rows(|s| match s {
                Scalar::Mod(x) => *x,
                _ => unreachable!("ring tag checked"),
            });
            let (r, piv) = rref(rows, m.cols);
            let k = kernel_from_rref(
                &r,
                &piv,
                m.cols,
                <Fp as Field>::zero(p),
                <Fp as Field>::one(p),
            );
            Ok(k.into_iter()
                .map(|v| v.into_iter().map(Scalar::Mod).collect())
                .collect())
        }
    }
}

/// Rank over the ring's fraction field.
pub fn rank(m: &ExactMatrix) -> usize {
    match m.ring {
        CoeffRing::Fp(_) => {
            let rows = m.field_rows(|s| match s {
                Scalar::Mod(x) => *x,
                _ => unreachable!("ring tag checked"),
            });
            rref(rows, m.cols).1.len()
        }
        _ => {
            let rows = m.field_rows(|s| match s {
                Scalar::Rat(r) => r.clone(),
                Scalar::Int(v) => Rational::from_integer(v.clone()),
                Scalar::Mod(_) => unreachable!("ring tag checked"),
            });
            rref(rows, m.cols).1.len()
        }
    }
}

/// Smith normal form of an integer-tagged matrix.
pub fn smith(m: &ExactMatrix) -> Result<Snf, LinError> {
    Ok(smith_normal_form(&m.to_int()?))
}

/// ℤ-basis of the integer right kernel, via the Smith form.
pub fn integer_kernel(m: &ExactMatrix) -> Result<Vec<Vec<Integer>>, LinError> {
    Ok(smith(m)?.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = ExactMatrix::identity(CoeffRing::Q, 2);
        assert!(kernel_basis(&m).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = ExactMatrix::zeros(CoeffRing::Q, 2, 3);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn kernel_over_f2() {
        let m = ExactMatrix::from_integers(CoeffRing::Fp(2), &[vec![1, 1], vec![1, 1]]);
        let k = kernel_basis(&m).unwrap();
        let as_text: Vec<Vec<String>> = k
            .iter()
            .map(|v| v.iter().map(|s| s.to_decimal()).collect())
            .collect();
        assert_eq!(as_text, vec![vec!["1".to_string(), "1".to_string()]]);
    }

    #[test]
    fn integer_kernel_rejected_by_field_routine() {
        let m = ExactMatrix::from_integers(CoeffRing::Z, &[vec![1, 2]]);
        assert_eq!(kernel_basis(&m), Err(LinError::NotAField(CoeffRing::Z)));
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1] * Integer::from(2), Integer::zero());
    }

    #[test]
    fn mixed_rings_rejected() {
        let e = vec![
            Scalar::Int(1.into()),
            Scalar::Rat(Rational::from_integer(1.into())),
        ];
        assert!(ExactMatrix::new(CoeffRing::Z, 1, 2, e).is_err());
    }
}
