//! Symmetric polynomials in `t₁,…,tₙ`, the Vandermonde matrix and its
//! adjugate, and rewriting of symmetric polynomials in the elementary basis.
//!
//! Two algebras are used: `ℤ[t₁,…,tₙ]` with `|tᵢ| = 2`, and `Λₙ = ℤ[e₁,…,eₙ]`
//! with `|e_k| = 2k`. Subsets of variables are given by 0-based indices.

mod matrix;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::exactlin::Integer;
use crate::superpoly::{
    interned, same_algebra, Algebra, AlgebraHom, Element, GeneratorDescriptor, Monomial,
};

pub use matrix::PolyMatrix;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("polynomial does not live in the t-variable algebra")]
    WrongAlgebra,
}

/// `ℤ[t₁,…,tₙ]`.
pub fn t_algebra(n: usize) -> Algebra {
    interned(&format!("T{n}"), || {
        (1..=n)
            .map(|i| GeneratorDescriptor::new(format!("t{i}"), 2, Some((0, 0))))
            .collect()
    })
}

/// `Λₙ = ℤ[e₁,…,eₙ]`.
pub fn e_algebra(n: usize) -> Algebra {
    interned(&format!("E{n}"), || {
        (1..=n)
            .map(|k| GeneratorDescriptor::new(format!("e{k}"), 2 * k as u32, Some((0, 0))))
            .collect()
    })
}

/// A polynomial in `ℤ[t₁,…,tₙ]` known to be symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    n: usize,
    poly: Element,
}

/// Exchange `tᵢ` and `tᵢ₊₁`.
fn swap_adjacent(p: &Element, i: usize) -> Element {
    let mut map: Vec<usize> = (0..p.algebra().len()).collect();
    map.swap(i, i + 1);
    p.transport(p.algebra(), &map)
}

impl SymPoly {
    /// Checks invariance under the adjacent transpositions, which generate `Sₙ`.
    pub fn new(poly: Element) -> Result<Self, SymError> {
        let n = poly.algebra().len();
        if !same_algebra(poly.algebra(), &t_algebra(n)) {
            return Err(SymError::WrongAlgebra);
        }
        for i in 0..n.saturating_sub(1) {
            if swap_adjacent(&poly, i) != poly {
                return Err(SymError::NotSymmetric(poly.to_string()));
            }
        }
        Ok(SymPoly { n, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn poly(&self) -> &Element {
        &self.poly
    }
    pub fn into_poly(self) -> Element {
        self.poly
    }
}

fn t_var(n: usize, i: usize) -> Element {
    Element::gen(&t_algebra(n), i)
}

/// `e_0, …, e_n` in the variables `t_I`.
fn elementary_of(n: usize, vars: &[usize]) -> Vec<Element> {
    let alg = t_algebra(n);
    let mut e = vec![Element::one(&alg)];
    e.resize(vars.len() + 1, Element::zero(&alg));
    for (m, &i) in vars.iter().enumerate() {
        let t = t_var(n, i);
        for k in (1..=m + 1).rev() {
            e[k] = &e[k] + &(&e[k - 1] * &t);
        }
    }
    e
}

/// `e_k(t₁,…,tₙ)`; `e_0 = 1`.
pub fn elementary(k: usize, n: usize) -> SymPoly {
    assert!(k <= n, "elementary: k ≤ n");
    let all: Vec<usize> = (0..n).collect();
    let poly = elementary_of(n, &all).swap_remove(k);
    SymPoly { n, poly }
}

/// Complete homogeneous `h_q(t_I)`, with `h_0(∅) = 1` and `h_q(∅) = 0` for `q > 0`.
pub fn complete_subset(q: usize, subset: &[usize], n: usize) -> Element {
    let alg = t_algebra(n);
    // h[j] = h_j over the variables processed so far.
    let mut h = vec![Element::zero(&alg); q + 1];
    h[0] = Element::one(&alg);
    for &i in subset {
        assert!(i < n, "complete_subset: index out of range");
        let t = t_var(n, i);
        for j in 1..=q {
            h[j] = &h[j] + &(&h[j - 1] * &t);
        }
    }
    h.swap_remove(q)
}

/// Power sum `Σ tᵢ^k`.
pub fn power_sum(k: u32, n: usize) -> SymPoly {
    let alg = t_algebra(n);
    let poly = (0..n).fold(Element::zero(&alg), |acc, i| &acc + &t_var(n, i).pow(k));
    SymPoly { n, poly }
}

/// Newton polynomial `s_k(x₁,…,x_k)`, defined by `Σ s_k σ^{k−1} = −f′/f` for
/// `f(σ) = Σ (−1)^k x_k σ^k`. Variables past the end of `vars` are zero.
pub fn newton(k: usize, vars: &[Element]) -> Element {
    let alg = vars
        .first()
        .expect("newton needs at least one variable")
        .algebra()
        .clone();
    let x = |i: usize| {
        vars.get(i - 1)
            .cloned()
            .unwrap_or_else(|| Element::zero(&alg))
    };
    // s_m = Σ_{i<m} (−1)^{i−1} x_i s_{m−i} + (−1)^{m−1} m x_m
    let mut s: Vec<Element> = vec![Element::zero(&alg)];
    for m in 1..=k {
        let mut acc = x(m).scale(&Integer::from(m));
        if m % 2 == 0 {
            acc = -acc;
        }
        for i in 1..m {
            let term = &x(i) * &s[m - i];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        s.push(acc);
    }
    s.swap_remove(k)
}

/// `V = (t_j^{i−1})`, rows indexed by the power.
pub fn vandermonde(n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(&t_algebra(n), n, |i, j| t_var(n, j).pow(i as u32))
}

/// `Δ = ∏_{i<j} (t_j − t_i)`, checked against the cofactor determinant of `V`.
pub fn vandermonde_det(n: usize) -> Element {
    cached(&DETS, n, || {
        let alg = t_algebra(n);
        let mut d = Element::one(&alg);
        for j in 0..n {
            for i in 0..j {
                d = &d * &(&t_var(n, j) - &t_var(n, i));
            }
        }
        assert_eq!(vandermonde(n).det(), d, "Vandermonde determinant");
        d
    })
}

/// `adj(V) = Δ·V⁻¹`, checked by `adj·V = V·adj = Δ·I`.
pub fn adjugate_vandermonde(n: usize) -> PolyMatrix {
    cached(&ADJS, n, || {
        let v = vandermonde(n);
        let adj = v.adjugate();
        let delta = PolyMatrix::scalar(&t_algebra(n), n, &vandermonde_det(n));
        assert_eq!(adj.mul(&v), delta, "adj(V)·V = Δ·I");
        assert_eq!(v.mul(&adj), delta, "V·adj(V) = Δ·I");
        adj
    })
}

type Cache<T> = OnceLock<Mutex<HashMap<usize, T>>>;
static DETS: Cache<Element> = OnceLock::new();
static ADJS: Cache<PolyMatrix> = OnceLock::new();

fn cached<T: Clone>(cell: &Cache<T>, n: usize, build: impl FnOnce() -> T) -> T {
    let table = cell.get_or_init(Default::default);
    if let Some(x) = table.lock().expect("cache poisoned").get(&n) {
        return x.clone();
    }
    let x = build();
    table.lock().expect("cache poisoned").insert(n, x.clone());
    x
}

/// The substitution `e_k ↦ e_k(t₁,…,tₙ)`.
pub fn e_substitution(n: usize) -> AlgebraHom {
    let images = (1..=n).map(|k| elementary(k, n).into_poly()).collect();
    AlgebraHom::new(&e_algebra(n), &t_algebra(n), images)
        .expect("elementary images are homogeneous")
}

/// Express a symmetric polynomial in `Λₙ` by repeatedly cancelling the lex
/// leading term `c·t^a` with `c·e₁^{a₁−a₂}⋯eₙ^{aₙ}`. The result is checked
/// by substituting back.
pub fn to_elementary_basis(p: &SymPoly) -> Result<Element, SymError> {
    let n = p.n;
    let ealg = e_algebra(n);
    let subst = e_substitution(n);
    let mut ev = subst.evaluator();
    let mut rest = p.poly.clone();
    let mut out: Vec<(Monomial, Integer)> = Vec::new();
    while let Some((lead, c)) = rest
        .terms()
        .iter()
        .max_by(|a, b| a.0.lex_cmp(&b.0))
        .cloned()
    {
        let a = lead.exps();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::NotSymmetric(p.poly.to_string()));
        }
        let b: Vec<u8> = (0..n)
            .map(|k| a[k] - a.get(k + 1).copied().unwrap_or(0))
            .collect();
        let m = Monomial::from_exps(&ealg, &b).expect("even exponents");
        rest = &rest - &ev.monomial(&m).scale(&c);
        out.push((m, c));
    }
    let result = Element::from_terms(&ealg, out);
    if ev.apply(&result) != p.poly {
        return Err(SymError::NotSymmetric(p.poly.to_string()));
    }
    Ok(result)
}

/// Orbit sum `Σ_{σ∈Sₙ} σ(p)`, always symmetric.
pub fn symmetrize(p: &Element) -> SymPoly {
    let n = p.algebra().len();
    assert!(
        same_algebra(p.algebra(), &t_algebra(n)),
        "symmetrize: t-variable algebra expected"
    );
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Element::zero(p.algebra());
    loop {
        acc = &acc + &p.transport(p.algebra(), &perm);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    SymPoly { n, poly: acc }
}

/// Advance to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse_t(n: usize, s: &str) -> Element {
        Element::parse(&t_algebra(n), s).unwrap()
    }
    fn parse_e(n: usize, s: &str) -> Element {
        Element::parse(&e_algebra(n), s).unwrap()
    }

    #[test]
    fn small_symmetric_functions() {
        assert_eq!(elementary(1, 2).poly().to_string(), "t1 + t2");
        assert_eq!(
            complete_subset(2, &[0, 1], 2).to_string(),
            "t1^2 + t1*t2 + t2^2"
        );
        assert!(complete_subset(0, &[], 3).is_one());
        assert!(complete_subset(2, &[], 3).is_zero());
        let alg = t_algebra(2);
        let x = [Element::gen(&alg, 0), Element::gen(&alg, 1)];
        assert_eq!(newton(2, &x), parse_t(2, "t1^2 - 2*t2"));
        assert_eq!(newton(3, &x), parse_t(2, "t1^3 - 3*t1*t2"));
    }

    #[test]
    fn vandermonde_small() {
        assert!(vandermonde_det(1).is_one());
        assert!(adjugate_vandermonde(1).get(0, 0).is_one());
        assert_eq!(vandermonde_det(2).to_string(), "-t1 + t2");
        let adj = adjugate_vandermonde(2);
        let want = ["t2", "-1", "-t1", "1"];
        for (x, w) in adj.entries().iter().zip(want) {
            assert_eq!(x.to_string(), w);
        }
        assert!(vandermonde_det(0).is_one());
    }

    #[test]
    fn adjugate_identities() {
        for n in 1..=5 {
            adjugate_vandermonde(n);
        }
        for n in 1..=4 {
            let adj = adjugate_vandermonde(n);
            assert_eq!(adj.det(), vandermonde_det(n).pow(n as u32 - 1), "n={n}");
        }
    }

    #[test]
    fn elementary_rewriting() {
        let p = SymPoly::new(parse_t(2, "t1^2 + t2^2")).unwrap();
        assert_eq!(to_elementary_basis(&p).unwrap(), parse_e(2, "e1^2 - 2*e2"));
        let d2 = SymPoly::new(vandermonde_det(2).pow(2)).unwrap();
        assert_eq!(to_elementary_basis(&d2).unwrap(), parse_e(2, "e1^2 - 4*e2"));
        let one = SymPoly::new(Element::one(&t_algebra(3))).unwrap();
        assert!(to_elementary_basis(&one).unwrap().is_one());
        let d3 = SymPoly::new(vandermonde_det(3).pow(2)).unwrap();
        assert_eq!(
            to_elementary_basis(&d3).unwrap(),
            parse_e(3, "e1^2*e2^2 - 4*e2^3 - 4*e1^3*e3 + 18*e1*e2*e3 - 27*e3^2")
        );
        assert!(matches!(
            SymPoly::new(parse_t(2, "t1")),
            Err(SymError::NotSymmetric(_))
        ));
    }

    /// `Σ_{k≤m} s_k (−1)^{m−k} x_{m−k} = −m(−1)^m x_m`, the coefficient of
    /// `σ^{m−1}` in `(Σ s_k σ^{k−1})·f = −f′`.
    #[test]
    fn newton_generating_function() {
        let alg = t_algebra(5);
        let x: Vec<Element> = (0..5).map(|i| Element::gen(&alg, i)).collect();
        let xk = |k: usize| {
            if k == 0 {
                Element::one(&alg)
            } else {
                x[k - 1].clone()
            }
        };
        for m in 1..=5 {
            let mut lhs = Element::zero(&alg);
            for k in 1..=m {
                let term = &newton(k, &x) * &xk(m - k);
                lhs = if (m - k) % 2 == 0 {
                    &lhs + &term
                } else {
                    &lhs - &term
                };
            }
            let mut rhs = xk(m).scale(&Integer::from(m));
            if m % 2 == 0 {
                rhs = -rhs;
            }
            assert_eq!(lhs, rhs, "m={m}");
        }
    }

    fn random_poly(n: usize, terms: &[(Vec<u8>, i64)]) -> Element {
        let alg = t_algebra(n);
        Element::from_terms(
            &alg,
            terms.iter().map(|(e, c)| {
                (
                    Monomial::from_exps(&alg, &e[..n]).unwrap(),
                    Integer::from(*c),
                )
            }),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn rewriting_round_trips(
            n in 1usize..=4,
            terms in prop::collection::vec((prop::collection::vec(0u8..4, 4), -5i64..=5), 0..4),
        ) {
            let p = symmetrize(&random_poly(n, &terms));
            let e = to_elementary_basis(&p).unwrap();
            prop_assert_eq!(e_substitution(n).apply(&e), p.poly().clone());
        }
    }
}
