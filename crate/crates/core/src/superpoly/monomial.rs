use std::cmp::Ordering;

use smallvec::SmallVec;

use super::{AlgebraSpec, Parity};

pub type Exps = SmallVec<[u8; 16]>;

/// A monomial in the canonical generator order.
///
/// Odd generators appear with exponent 0 or 1 and are mirrored in the `odd`
/// bitset. The product of the generators in index order is the monomial
/// itself, with no sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    odd: u64,
    exps: Exps,
}

/// Sign `(-1)^k` where `k` counts pairs `i ∈ a`, `j ∈ b` with `i > j`.
pub fn koszul_negative(a: u64, b: u64) -> bool {
    let mut k = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        k += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    k % 2 == 1
}

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial {
            degree: 0,
            odd: 0,
            exps: SmallVec::from_elem(0, ngens),
        }
    }

    /// Monomial with the given exponent vector; `None` if an odd generator
    /// is repeated.
    pub fn from_exps(alg: &AlgebraSpec, exps: &[u8]) -> Option<Self> {
        assert_eq!(exps.len(), alg.len(), "exponent vector length");
        let mut degree = 0u32;
        let mut odd = 0u64;
        for (i, (&e, g)) in exps.iter().zip(alg.generators()).enumerate() {
            if g.parity == Parity::Odd && e > 0 {
                if e > 1 {
                    return None;
                }
                odd |= 1 << i;
            }
            degree += g.degree * e as u32;
        }
        Some(Monomial {
            degree,
            odd,
            exps: exps.into(),
        })
    }

    pub fn generator(alg: &AlgebraSpec, i: usize) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, alg.len());
        exps[i] = 1;
        Monomial::from_exps(alg, &exps).expect("single generator")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }
    pub fn odd_mask(&self) -> u64 {
        self.odd
    }
    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }
    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }
    pub fn ngens(&self) -> usize {
        self.exps.len()
    }

    /// Product with Koszul sign: `Some((m, negative))`, `None` if zero.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & o.odd != 0 {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(o.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Some((
            Monomial {
                degree: self.degree + o.degree,
                odd: self.odd | o.odd,
                exps,
            },
            koszul_negative(self.odd, o.odd),
        ))
    }

    /// `self / o` when `o` divides `self` and the quotient needs no sign,
    /// i.e. `o` has no odd factors.
    pub fn div_even(&self, o: &Monomial) -> Option<Monomial> {
        if o.odd != 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        for (x, y) in exps.iter_mut().zip(o.exps.iter()) {
            *x = x.checked_sub(*y)?;
        }
        Some(Monomial {
            degree: self.degree - o.degree,
            odd: self.odd,
            exps,
        })
    }

    /// Drop one factor of generator `i` (which must be present).
    pub fn without_one(&self, alg: &AlgebraSpec, i: usize) -> Monomial {
        let mut m = self.clone();
        assert!(m.exps[i] > 0, "generator not present");
        m.exps[i] -= 1;
        m.degree -= alg.generators()[i].degree;
        m.odd &= !(1u64 << i);
        if alg.generators()[i].parity == Parity::Even {
            m.odd = self.odd;
        }
        m
    }

    /// Sum of generator biweights, if every present generator has one.
    pub fn biweight(&self, alg: &AlgebraSpec) -> Option<(u32, u32)> {
        let mut w = (0, 0);
        for (&e, g) in self.exps.iter().zip(alg.generators()) {
            if e == 0 {
                continue;
            }
            let (a, b) = g.biweight?;
            w.0 += a * e as u32;
            w.1 += b * e as u32;
        }
        Some(w)
    }

    /// Lexicographic comparison of exponent vectors (first generator most
    /// significant); a monomial order.
    pub fn lex_cmp(&self, o: &Monomial) -> Ordering {
        self.exps.cmp(&o.exps)
    }
}

/// Listing order: by degree, then fewer odd factors first, then
/// lexicographically larger exponent vectors first.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree
            .cmp(&o.degree)
            .then(self.odd_count().cmp(&o.odd_count()))
            .then_with(|| o.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
