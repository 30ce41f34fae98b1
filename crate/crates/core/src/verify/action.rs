//! The signed `Sₙ` action on `B` and its invariants.

use rustc_hash::FxHashSet;

use super::VerifyError;
use crate::exactlin::{content, CoeffRing, Integer};
use crate::idealcalc::vanishes_in;
use crate::relgen::b_algebra;
use crate::superpoly::{graded_basis, Element, Monomial};
use crate::symvan::next_permutation;

/// `σ` acting on `B` by `t_i ↦ t_σ(i)`, `u_i ↦ u_σ(i)`, `v_i ↦ v_σ(i)`.
/// Odd factors are restored to canonical order with the Koszul sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnAction {
    perm: Vec<usize>,
}

impl SnAction {
    /// `perm[i] = σ(i)`, 0-based.
    pub fn new(perm: Vec<usize>) -> Result<Self, VerifyError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(VerifyError::Unsupported(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Ok(SnAction { perm })
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<SnAction> {
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = vec![SnAction { perm: p.clone() }];
        while next_permutation(&mut p) {
            out.push(SnAction { perm: p.clone() });
        }
        out
    }

    /// The transposition of `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> SnAction {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        SnAction { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `σ(m) = ±m′`; the flag is true for the minus sign.
    pub fn apply_monomial(&self, m: &Monomial) -> (Monomial, bool) {
        let n = self.n();
        let e = m.exps();
        let mut out = vec![0u8; 3 * n];
        for block in 0..3 {
            for i in 0..n {
                out[block * n + self.perm[i]] = e[block * n + i];
            }
        }
        // odd factors in source order, at their target positions
        let targets: Vec<usize> = (n..3 * n)
            .filter(|&k| e[k] > 0)
            .map(|k| (k / n) * n + self.perm[k % n])
            .collect();
        let mut inversions = 0usize;
        for (a, &x) in targets.iter().enumerate() {
            inversions += targets[a + 1..].iter().filter(|&&y| y < x).count();
        }
        let b = b_algebra(n);
        (
            Monomial::from_exps(&b, &out).expect("permutation keeps odd exponents"),
            inversions % 2 == 1,
        )
    }

    pub fn apply(&self, x: &Element) -> Element {
        let b = b_algebra(self.n());
        let terms = x.terms().iter().map(|(m, c)| {
            let (m2, neg) = self.apply_monomial(m);
            (m2, if neg { -c.clone() } else { c.clone() })
        });
        Element::from_terms(&b, terms)
    }
}

/// `Σ_σ σ(m)` for every orbit of monomials in `B_d`, one per orbit.
fn orbit_sums(n: usize, d: u32) -> Result<Vec<Element>, VerifyError> {
    let b = b_algebra(n);
    let group = SnAction::all(n);
    let mut seen: FxHashSet<Monomial> = FxHashSet::default();
    let mut sums = Vec::new();
    for m in graded_basis(&b, d)? {
        if seen.contains(&m) {
            continue;
        }
        let x = Element::from_monomial(&b, m, Integer::from(1));
        let mut sum = Element::zero(&b);
        for g in &group {
            let y = g.apply(&x);
            seen.insert(y.terms()[0].0.clone());
            sum = &sum + &y;
        }
        sums.push(sum);
    }
    Ok(sums)
}

/// `dim (B_d)^{Sₙ}` over `ring`, by Reynolds averaging. Orbit sums have
/// disjoint supports, so the dimension counts the nonvanishing ones.
pub fn invariant_dimension(n: usize, d: u32, ring: CoeffRing) -> Result<usize, VerifyError> {
    if let CoeffRing::Fp(p) = ring {
        if !ring.inverts_factorial(n as u64) {
            return Err(VerifyError::BadCharacteristic {
                n,
                ring: CoeffRing::Fp(p),
            });
        }
    }
    Ok(orbit_sums(n, d)?
        .iter()
        .filter(|s| !vanishes_in(ring, s))
        .count())
}

/// A ℤ-basis of `(B_d)^{Sₙ}` over ℤ: the primitive orbit sums.
pub fn invariant_lattice_basis(n: usize, d: u32) -> Result<Vec<Element>, VerifyError> {
    Ok(orbit_sums(n, d)?
        .into_iter()
        .filter(|s| !s.is_zero())
        .map(|s| {
            let coeffs: Vec<Integer> = s.terms().iter().map(|(_, c)| c.clone()).collect();
            let g = content(&coeffs);
            Element::from_terms(
                s.algebra(),
                s.terms().iter().map(|(m, c)| (m.clone(), c / &g)),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relgen::generator_images;
    use crate::superpoly::hilbert_series;
    use proptest::prelude::*;

    fn parse(n: usize, s: &str) -> Element {
        Element::parse(&b_algebra(n), s).unwrap()
    }

    #[test]
    fn signs() {
        let s = SnAction::adjacent(2, 0);
        assert_eq!(s.apply(&parse(2, "u1*u2")).to_string(), "-u1*u2");
        assert_eq!(s.apply(&parse(2, "u1*v2")).to_string(), "u2*v1");
        assert_eq!(s.apply(&parse(2, "t1^2*u1*v1")).to_string(), "t2^2*u2*v2");
        assert_eq!(SnAction::all(3).len(), 6);
        assert!(SnAction::new(vec![0, 0]).is_err());
    }

    #[test]
    fn small_invariant_dimensions() {
        assert_eq!(invariant_dimension(2, 1, CoeffRing::Q).unwrap(), 2);
        assert_eq!(invariant_dimension(2, 0, CoeffRing::Q).unwrap(), 1);
        let b1 = hilbert_series(&b_algebra(1), 8).unwrap();
        for d in 0..=8 {
            assert_eq!(
                invariant_dimension(1, d, CoeffRing::Q).unwrap() as u64,
                b1[d as usize]
            );
        }
        assert!(matches!(
            invariant_dimension(3, 2, CoeffRing::Fp(3)),
            Err(VerifyError::BadCharacteristic { .. })
        ));
        // u₁u₂ is anti-invariant, so its orbit sum vanishes
        assert_eq!(invariant_dimension(2, 2, CoeffRing::Q).unwrap(), 3);
    }

    #[test]
    fn generator_images_are_invariant() {
        for n in 1..=4 {
            let rho = generator_images(n);
            for g in SnAction::all(n) {
                for x in rho.images() {
                    assert_eq!(&g.apply(x), x, "n={n}");
                }
            }
        }
    }

    #[test]
    fn lattice_basis_is_invariant_and_primitive() {
        for x in invariant_lattice_basis(3, 4).unwrap() {
            for g in SnAction::all(3) {
                assert_eq!(g.apply(&x), x);
            }
            assert!(x
                .terms()
                .iter()
                .all(|(_, c)| c == &Integer::from(1) || c == &Integer::from(-1)));
        }
    }

    fn b3_element() -> impl Strategy<Value = Element> {
        let b = b_algebra(3);
        let basis: Vec<Monomial> = (0..=4).flat_map(|d| graded_basis(&b, d).unwrap()).collect();
        prop::collection::vec((0..basis.len(), -3i64..=3), 0..5).prop_map(move |ts| {
            Element::from_terms(
                &b,
                ts.into_iter()
                    .map(|(i, c)| (basis[i].clone(), Integer::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn action_is_multiplicative(x in b3_element(), y in b3_element(), k in 0usize..6) {
            let g = &SnAction::all(3)[k];
            prop_assert_eq!(g.apply(&(&x * &y)), &g.apply(&x) * &g.apply(&y));
        }

        #[test]
        fn action_composes(x in b3_element(), i in 0usize..6, j in 0usize..6) {
            let all = SnAction::all(3);
            let (g, h) = (&all[i], &all[j]);
            let gh = SnAction::new((0..3).map(|k| g.perm()[h.perm()[k]]).collect()).unwrap();
            prop_assert_eq!(g.apply(&h.apply(&x)), gh.apply(&x));
        }
    }
}
