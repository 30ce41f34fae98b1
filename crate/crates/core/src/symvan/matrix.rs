use std::fmt;

use crate::superpoly::{same_algebra, Algebra, Element};

/// Square matrix of elements of one even algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    alg: Algebra,
    n: usize,
    entries: Vec<Element>,
}

impl PolyMatrix {
    /// Row-major entries; all must be even and live in `alg`.
    pub fn new(alg: &Algebra, n: usize, entries: Vec<Element>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix shape");
        for x in &entries {
            assert!(
                same_algebra(x.algebra(), alg),
                "matrix entry outside the algebra"
            );
            assert!(x.is_even_only(), "matrix entries must be even");
        }
        PolyMatrix {
            alg: alg.clone(),
            n,
            entries,
        }
    }

    pub fn from_fn(alg: &Algebra, n: usize, mut f: impl FnMut(usize, usize) -> Element) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        PolyMatrix::new(alg, n, entries)
    }

    pub fn scalar(alg: &Algebra, n: usize, x: &Element) -> Self {
        PolyMatrix::from_fn(alg, n, |i, j| {
            if i == j {
                x.clone()
            } else {
                Element::zero(alg)
            }
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.n + j]
    }
    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix::from_fn(&self.alg, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &PolyMatrix) -> Self {
        assert_eq!(self.n, o.n, "matrix sizes");
        PolyMatrix::from_fn(&self.alg, self.n, |i, j| {
            (0..self.n).fold(Element::zero(&self.alg), |acc, k| {
                &acc + &(self.get(i, k) * o.get(k, j))
            })
        })
    }

    /// Apply `f` entrywise, possibly into another algebra.
    pub fn map(&self, target: &Algebra, f: impl FnMut(&Element) -> Element) -> Self {
        PolyMatrix::new(target, self.n, self.entries.iter().map(f).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Minor on the given rows and columns by cofactor expansion along the
    /// first row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Element {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        if rows.is_empty() {
            return Element::one(&self.alg);
        }
        let (r, rest) = (rows[0], &rows[1..]);
        let mut acc = Element::zero(&self.alg);
        for (k, &c) in cols.iter().enumerate() {
            let x = self.get(r, c);
            if x.is_zero() {
                continue;
            }
            let others: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
            let term = x * &self.minor(rest, &others);
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    pub fn det(&self) -> Element {
        let all: Vec<usize> = (0..self.n).collect();
        self.minor(&all, &all)
    }

    /// Classical adjugate: `adj[i][j] = (−1)^{i+j} · minor(without j, without i)`.
    pub fn adjugate(&self) -> Self {
        PolyMatrix::from_fn(&self.alg, self.n, |i, j| {
            let rows: Vec<usize> = (0..self.n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..self.n).filter(|&c| c != i).collect();
            let m = self.minor(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
