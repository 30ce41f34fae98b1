//! Generator images and relations of the presentation.
//!
//! Algebras (generator order fixed, see [`b_algebra`], [`a_algebra`],
//! [`aprime_algebra`]):
//!
//! * `B = ℤ[t₁..tₙ] ⊗ Λ(u₁..uₙ, v₁..vₙ)`, the target of `ρ`;
//! * `A = Λₙ ⊗ ℤ[Z₁..Zₙ] ⊗ Λ(X₁..Xₙ, Y₁..Yₙ)`;
//! * `A′`, with `W₁..W_{n−1}` in place of the `Z`, and its extension by `Wₙ`.
//!
//! Subsets `I ⊆ {1..n}` are bitmasks, bit `i−1` standing for `i`.

mod series;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::superpoly::{
    exact_divide, interned, Algebra, AlgebraHom, Element, GeneratorDescriptor, PolyError,
};
use crate::symvan::{
    adjugate_vandermonde, complete_subset, e_algebra, elementary, newton, t_algebra,
    to_elementary_basis, vandermonde_det, PolyMatrix, SymError, SymPoly,
};

pub use series::{SeriesMatrix, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("index out of range: {0}")]
    Range(String),
}

/// `B = ℤ[t] ⊗ Λ(u, v)`, ordered `t < u < v`.
pub fn b_algebra(n: usize) -> Algebra {
    interned(&format!("B{n}"), || {
        let mut g: Vec<_> = (1..=n)
            .map(|i| GeneratorDescriptor::new(format!("t{i}"), 2, Some((0, 0))))
            .collect();
        g.extend((1..=n).map(|i| GeneratorDescriptor::new(format!("u{i}"), 1, Some((1, 0)))));
        g.extend((1..=n).map(|i| GeneratorDescriptor::new(format!("v{i}"), 1, Some((0, 1)))));
        g
    })
}

fn exy(n: usize) -> Vec<GeneratorDescriptor> {
    let mut g: Vec<_> = (1..=n)
        .map(|k| GeneratorDescriptor::new(format!("e{k}"), 2 * k as u32, Some((0, 0))))
        .collect();
    g.extend(
        (1..=n).map(|l| GeneratorDescriptor::new(format!("X{l}"), 2 * l as u32 - 1, Some((1, 0)))),
    );
    g.extend(
        (1..=n).map(|l| GeneratorDescriptor::new(format!("Y{l}"), 2 * l as u32 - 1, Some((0, 1)))),
    );
    g
}

/// `A`, ordered `e < X < Y < Z`. The `Z` carry no biweight.
pub fn a_algebra(n: usize) -> Algebra {
    interned(&format!("A{n}"), || {
        let mut g = exy(n);
        g.extend((1..=n).map(|l| GeneratorDescriptor::new(format!("Z{l}"), 2 * l as u32, None)));
        g
    })
}

/// `A′` with `W₁..W_{n−1}`, or with `W₁..Wₙ` when `full`.
pub fn aprime_algebra(n: usize, full: bool) -> Algebra {
    let key = if full {
        format!("Wfull{n}")
    } else {
        format!("Aprime{n}")
    };
    interned(&key, || {
        let mut g = exy(n);
        let top = if full { n } else { n.saturating_sub(1) };
        g.extend(
            (1..=top)
                .map(|l| GeneratorDescriptor::new(format!("W{l}"), 2 * l as u32, Some((1, 1)))),
        );
        g
    })
}

fn gen(alg: &Algebra, name: &str) -> Element {
    Element::generator(alg, name).expect("standard generator")
}

/// Elements of `B`: `t_i`, `u_i`, `v_i` with 0-based `i`.
fn b_t(n: usize, i: usize) -> Element {
    Element::gen(&b_algebra(n), i)
}
fn b_u(n: usize, i: usize) -> Element {
    Element::gen(&b_algebra(n), n + i)
}
fn b_v(n: usize, i: usize) -> Element {
    Element::gen(&b_algebra(n), 2 * n + i)
}

/// `Σ tᵢ^{m−1} uᵢ`, valid for every `m ≥ 1`.
pub fn x_image(m: usize, n: usize) -> Element {
    (0..n).fold(Element::zero(&b_algebra(n)), |acc, i| {
        &acc + &(&b_t(n, i).pow(m as u32 - 1) * &b_u(n, i))
    })
}

/// `Σ tᵢ^{m−1} vᵢ`.
pub fn y_image(m: usize, n: usize) -> Element {
    (0..n).fold(Element::zero(&b_algebra(n)), |acc, i| {
        &acc + &(&b_t(n, i).pow(m as u32 - 1) * &b_v(n, i))
    })
}

/// `Σ tᵢ^{m−1} uᵢvᵢ`.
pub fn w_image(m: usize, n: usize) -> Element {
    (0..n).fold(Element::zero(&b_algebra(n)), |acc, i| {
        &acc + &(&(&b_t(n, i).pow(m as u32 - 1) * &b_u(n, i)) * &b_v(n, i))
    })
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k)
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// `Σ_k (−1)^{m−k} Σ_{|I|=k} h_{m−k}(t_I) ∏_{j∈I} u_j v_j`, valid for every `m ≥ 0`.
pub fn z_image(m: usize, n: usize) -> Element {
    let b = b_algebra(n);
    let mut acc = Element::zero(&b);
    for k in 0..=m.min(n) {
        for mask in subsets(n, k) {
            let idx = members(mask);
            let h = complete_subset(m - k, &idx, n)
                .embed(&b)
                .expect("t embeds in B");
            let uv = idx
                .iter()
                .fold(Element::one(&b), |p, &j| &(&p * &b_u(n, j)) * &b_v(n, j));
            let term = &h * &uv;
            acc = if (m - k).is_multiple_of(2) {
                &acc + &term
            } else {
                &acc - &term
            };
        }
    }
    acc
}

fn e_images(n: usize) -> Vec<Element> {
    let b = b_algebra(n);
    (1..=n)
        .map(|k| {
            elementary(k, n)
                .into_poly()
                .embed(&b)
                .expect("t embeds in B")
        })
        .collect()
}

/// `ρ : A → B`.
pub fn generator_images(n: usize) -> AlgebraHom {
    cached(&RHO, n, || {
        let mut images = e_images(n);
        images.extend((1..=n).map(|l| x_image(l, n)));
        images.extend((1..=n).map(|l| y_image(l, n)));
        images.extend((1..=n).map(|l| z_image(l, n)));
        AlgebraHom::new(&a_algebra(n), &b_algebra(n), images).expect("ρ images match degrees")
    })
}

/// `ρ′ : A′ → B`, on `A′` or its extension by `Wₙ`.
pub fn generator_images_prime(n: usize, full: bool) -> AlgebraHom {
    let build = || {
        let alg = aprime_algebra(n, full);
        let mut images = e_images(n);
        images.extend((1..=n).map(|l| x_image(l, n)));
        images.extend((1..=n).map(|l| y_image(l, n)));
        let top = alg.len() - 3 * n;
        images.extend((1..=top).map(|l| w_image(l, n)));
        AlgebraHom::new(&alg, &b_algebra(n), images).expect("ρ′ images match degrees")
    };
    if full {
        cached(&RHO_FULL, n, build)
    } else {
        cached(&RHO_PRIME, n, build)
    }
}

type Cache<T> = OnceLock<Mutex<HashMap<usize, T>>>;
static RHO: Cache<AlgebraHom> = OnceLock::new();
static RHO_PRIME: Cache<AlgebraHom> = OnceLock::new();
static RHO_FULL: Cache<AlgebraHom> = OnceLock::new();
static COEFFS: Cache<Arc<Coefficients>> = OnceLock::new();
static DELTA2: Cache<Element> = OnceLock::new();

fn cached<T: Clone>(cell: &Cache<T>, n: usize, build: impl FnOnce() -> T) -> T {
    let table = cell.get_or_init(Default::default);
    if let Some(x) = table.lock().expect("cache poisoned").get(&n) {
        return x.clone();
    }
    let x = build();
    table.lock().expect("cache poisoned").insert(n, x.clone());
    x
}

/// `Δ²` written in `Λₙ`.
pub fn delta_squared(n: usize) -> Element {
    cached(&DELTA2, n, || {
        let d2 = SymPoly::new(vandermonde_det(n).pow(2)).expect("Δ² is symmetric");
        to_elementary_basis(&d2).expect("Δ² rewrites")
    })
}

/// `M(s) = adj(V)ᵀ D(s) adj(V)` with `D(s) = diag(s/(1+tᵢs))`, truncated
/// after `s^order`. Every coefficient is checked to be symmetric.
pub fn matrix_m(n: usize, order: usize) -> SeriesMatrix {
    let t = t_algebra(n);
    let adj = adjugate_vandermonde(n);
    // s/(1+t s) = Σ_{k≥1} (−t)^{k−1} s^k
    let d: Vec<TruncatedSeries> = (0..n)
        .map(|m| {
            let mt = -Element::gen(&t, m);
            let coeffs = (0..=order)
                .map(|k| {
                    if k == 0 {
                        Element::zero(&t)
                    } else {
                        mt.pow(k as u32 - 1)
                    }
                })
                .collect();
            TruncatedSeries::from_coeffs(&t, order, coeffs)
        })
        .collect();
    let entries: Vec<TruncatedSeries> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut acc = TruncatedSeries::zero(&t, order);
            for (m, dm) in d.iter().enumerate() {
                let w = adj.get(m, i) * adj.get(m, j);
                if !w.is_zero() {
                    acc = &acc + &dm.scale(&w);
                }
            }
            for c in acc.coeffs() {
                SymPoly::new(c.clone()).expect("M(s) is symmetric");
            }
            acc
        })
        .collect();
    SeriesMatrix::new(n, entries)
}

/// All minors `det(M(s)_{I,J})` with `|I| = |J| ≥ 1`, by cofactor
/// expansion along the first row, memoized over (remaining rows, columns).
pub fn minors(m: &SeriesMatrix) -> HashMap<(u32, u32), TruncatedSeries> {
    let n = m.size();
    let mut table: HashMap<(u32, u32), TruncatedSeries> = HashMap::new();
    for k in 1..=n {
        let pairs: Vec<(u32, u32)> = subsets(n, k)
            .flat_map(|i| subsets(n, k).map(move |j| (i, j)))
            .collect();
        let level: Vec<((u32, u32), TruncatedSeries)> = pairs
            .into_par_iter()
            .map(|(rows, cols)| {
                let r = rows.trailing_zeros() as usize;
                let rest = rows & (rows - 1);
                let alg = m.get(0, 0).algebra().clone();
                let mut acc = TruncatedSeries::zero(&alg, m.get(0, 0).order());
                for (pos, c) in members(cols).into_iter().enumerate() {
                    let entry = m.get(r, c);
                    let term = if k == 1 {
                        entry.clone()
                    } else {
                        entry * &table[&(rest, cols & !(1 << c))]
                    };
                    acc = if pos % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                ((rows, cols), acc)
            })
            .collect();
        table.extend(level);
    }
    table
}

/// The coefficients `c^l_{I,J}` for all `I`, `J` and `|I| ≤ l ≤ n`, in `Λₙ`.
#[derive(Debug)]
pub struct Coefficients {
    n: usize,
    table: HashMap<(u32, u32), Vec<Element>>,
}

impl Coefficients {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `c^l_{I,J}`; zero when `l < |I|` or `l > n`.
    pub fn get(&self, l: usize, rows: u32, cols: u32) -> Element {
        self.table
            .get(&(rows, cols))
            .and_then(|v| v.get(l).cloned())
            .unwrap_or_else(|| Element::zero(&e_algebra(self.n)))
    }

    /// Pairs `(I, J)` in increasing order.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut p: Vec<_> = self.table.keys().copied().collect();
        p.sort_by_key(|&(i, j)| (i.count_ones(), i, j));
        p
    }
}

/// Divide every coefficient of `det(M(s)_{I,J})` by `Δ^{2k−2}` and rewrite
/// in `Λₙ`. Division fails only if the construction is wrong.
pub fn coefficients(n: usize) -> Result<Arc<Coefficients>, RelError> {
    let table = COEFFS.get_or_init(Default::default);
    if let Some(c) = table.lock().expect("cache poisoned").get(&n) {
        return Ok(c.clone());
    }
    let m = matrix_m(n, n);
    let delta = vandermonde_det(n);
    let all = minors(&m);
    let rows: Vec<((u32, u32), TruncatedSeries)> = all.into_iter().collect();
    let done = rows
        .into_par_iter()
        .map(|(key, series)| {
            let k = key.0.count_ones() as usize;
            let mut out = Vec::with_capacity(n + 1);
            for l in 0..=n {
                let mut x = series.coeff(l).clone();
                for _ in 0..2 * k - 2 {
                    x = exact_divide(&x, &delta)?;
                }
                out.push(to_elementary_basis(&SymPoly::new(x)?)?);
            }
            Ok((key, out))
        })
        .collect::<Result<HashMap<_, _>, RelError>>()?;
    let c = Arc::new(Coefficients { n, table: done });
    table.lock().expect("cache poisoned").insert(n, c.clone());
    Ok(c)
}

/// `c^l_{I,J}`, with `I`, `J` given as sorted 1-based index lists.
pub fn coeff_c(l: usize, rows: &[usize], cols: &[usize], n: usize) -> Result<Element, RelError> {
    let k = rows.len();
    if k != cols.len() || k == 0 || l < k || l > n {
        return Err(RelError::Range(format!(
            "need 1 ≤ |I| = |J| ≤ l ≤ n, got l={l}, n={n}"
        )));
    }
    let mask = |s: &[usize]| -> Result<u32, RelError> {
        s.iter().try_fold(0u32, |m, &i| {
            if i == 0 || i > n || m & (1 << (i - 1)) != 0 {
                Err(RelError::Range(format!("bad subset index {i}")))
            } else {
                Ok(m | (1 << (i - 1)))
            }
        })
    };
    Ok(coefficients(n)?.get(l, mask(rows)?, mask(cols)?))
}

/// A named relation in a presentation algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub name: String,
    #[serde(skip)]
    pub element: Element,
    pub degree: u32,
    pub biweight: Option<(u32, u32)>,
}

/// `X_I Y_J` in `alg` (which holds `X`, `Y` after `n` copies of `e`).
fn xy_monomial(alg: &Algebra, n: usize, rows: u32, cols: u32) -> Element {
    let x = members(rows).into_iter().map(|i| Element::gen(alg, n + i));
    let y = members(cols)
        .into_iter()
        .map(|j| Element::gen(alg, 2 * n + j));
    x.chain(y).fold(Element::one(alg), |p, g| &p * &g)
}

/// `R_l = Δ²Z_l − Σ_k (−1)^{k(k−1)/2} Σ_{I,J} c^l_{I,J} X_I Y_J` in `A`.
pub fn relation_r(l: usize, n: usize) -> Result<RelationRecord, RelError> {
    if l == 0 || l > n {
        return Err(RelError::Range(format!("need 1 ≤ l ≤ n, got l={l}, n={n}")));
    }
    let a = a_algebra(n);
    let c = coefficients(n)?;
    let mut acc = &delta_squared(n).embed(&a)? * &gen(&a, &format!("Z{l}"));
    for (rows, cols) in c.pairs() {
        let k = rows.count_ones() as usize;
        let coeff = c.get(l, rows, cols);
        if coeff.is_zero() {
            continue;
        }
        let term = &coeff.embed(&a)? * &xy_monomial(&a, n, rows, cols);
        acc = if (k * (k - 1) / 2).is_multiple_of(2) {
            &acc - &term
        } else {
            &acc + &term
        };
    }
    Ok(RelationRecord {
        name: format!("R{l}"),
        element: acc,
        degree: 2 * (n * (n - 1) + l) as u32,
        biweight: None,
    })
}

/// `A_l = adj(V)ᵀ diag(t)^{l−1} adj(V)`, entries in `Λₙ`.
pub fn matrix_a(l: usize, n: usize) -> Result<PolyMatrix, RelError> {
    if l == 0 {
        return Err(RelError::Range("need l ≥ 1".into()));
    }
    let t = t_algebra(n);
    let adj = adjugate_vandermonde(n);
    let diag = PolyMatrix::from_fn(&t, n, |i, j| {
        if i == j {
            Element::gen(&t, i).pow(l as u32 - 1)
        } else {
            Element::zero(&t)
        }
    });
    let a_t = adj.transpose().mul(&diag).mul(&adj);
    let entries = a_t
        .entries()
        .iter()
        .map(|x| to_elementary_basis(&SymPoly::new(x.clone())?).map_err(RelError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::new(&e_algebra(n), n, entries))
}

/// `R′_l = Δ²W_l − Xᵀ A_l Y`, in the extension of `A′` by `Wₙ`.
pub fn relation_rprime(l: usize, n: usize) -> Result<RelationRecord, RelError> {
    if l == 0 || l > n {
        return Err(RelError::Range(format!("need 1 ≤ l ≤ n, got l={l}, n={n}")));
    }
    let w = aprime_algebra(n, true);
    let a = matrix_a(l, n)?;
    let mut acc = &delta_squared(n).embed(&w)? * &gen(&w, &format!("W{l}"));
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if !x.is_zero() {
                acc = &acc - &(&x.embed(&w)? * &xy_monomial(&w, n, 1 << i, 1 << j));
            }
        }
    }
    Ok(RelationRecord {
        name: format!("R'{l}"),
        element: acc,
        degree: 2 * (n * (n - 1) + l) as u32,
        biweight: Some((1, 1)),
    })
}

/// `Σ_{i<n} (−1)^{i+1} e_i (s_{n−i}(Z₁..Z_{n−i}) − Σ_{j<n−i} X_{n−i−j} Y_{j+1})` in `A`.
pub fn newton_identity_element(n: usize) -> Element {
    assert!(n >= 1, "newton identity needs n ≥ 1");
    let a = a_algebra(n);
    let z: Vec<Element> = (1..=n).map(|l| gen(&a, &format!("Z{l}"))).collect();
    let mut acc = Element::zero(&a);
    for i in 0..n {
        let m = n - i;
        let mut inner = newton(m, &z[..m]);
        for j in 0..m {
            inner = &inner - &(&gen(&a, &format!("X{}", m - j)) * &gen(&a, &format!("Y{}", j + 1)));
        }
        let e = if i == 0 {
            Element::one(&a)
        } else {
            gen(&a, &format!("e{i}"))
        };
        let term = &e * &inner;
        acc = if i % 2 == 1 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Residuals in `B` of the recurrences satisfied past index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// `Σ_k (−1)^k e_k ρ(X_{l+1−k})`.
    pub x: Element,
    /// `Σ_k (−1)^k e_k ρ(Y_{l+1−k})`.
    pub y: Element,
    /// `Σ_k e_k ρ(Z_{l−k})`.
    pub z: Element,
}

impl Recurrence {
    pub fn vanishes(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

pub fn recurrence_check(n: usize, l: usize) -> Result<Recurrence, RelError> {
    if l <= n {
        return Err(RelError::Range(format!(
            "recurrences hold for l > n, got l={l}, n={n}"
        )));
    }
    let b = b_algebra(n);
    let e: Vec<Element> = std::iter::once(Element::one(&b))
        .chain(e_images(n))
        .collect();
    let mut r = Recurrence {
        x: Element::zero(&b),
        y: Element::zero(&b),
        z: Element::zero(&b),
    };
    for (k, ek) in e.iter().enumerate() {
        let (x, y) = (ek * &x_image(l + 1 - k, n), ek * &y_image(l + 1 - k, n));
        if k % 2 == 0 {
            r.x = &r.x + &x;
            r.y = &r.y + &y;
        } else {
            r.x = &r.x - &x;
            r.y = &r.y - &y;
        }
        r.z = &r.z + &(ek * &z_image(l - k, n));
    }
    Ok(r)
}

/// `Δ^{2k} ∏_{j∈K} u_j v_j − (−1)^{k(k−1)/2} Σ_{I,J} det(adj_{K,I}) det(adj_{K,J}) ρ(X_I Y_J)`.
pub fn adjugate_identity_residual(n: usize, k_mask: u32) -> Element {
    let b = b_algebra(n);
    let k = k_mask.count_ones() as usize;
    let adj = adjugate_vandermonde(n);
    let kk = members(k_mask);
    let d2 = vandermonde_det(n)
        .pow(2 * k as u32)
        .embed(&b)
        .expect("t embeds in B");
    let uv = kk
        .iter()
        .fold(Element::one(&b), |p, &j| &(&p * &b_u(n, j)) * &b_v(n, j));
    let mut acc = &d2 * &uv;
    let rho = generator_images(n);
    let mut ev = rho.evaluator();
    let a = a_algebra(n);
    for rows in subsets(n, k) {
        let di = adj.minor(&kk, &members(rows));
        if di.is_zero() {
            continue;
        }
        for cols in subsets(n, k) {
            let dj = adj.minor(&kk, &members(cols));
            let coeff = (&di * &dj).embed(&b).expect("t embeds in B");
            let term = &coeff * &ev.apply(&xy_monomial(&a, n, rows, cols));
            acc = if (k * (k.max(1) - 1) / 2).is_multiple_of(2) {
                &acc - &term
            } else {
                &acc + &term
            };
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Integer;

    fn parse(alg: &Algebra, s: &str) -> Element {
        Element::parse(alg, s).unwrap()
    }

    #[test]
    fn images() {
        let rho = generator_images(2);
        let b = b_algebra(2);
        let a = a_algebra(2);
        assert_eq!(rho.apply(&parse(&a, "X2")), parse(&b, "t1*u1 + t2*u2"));
        assert_eq!(rho.apply(&parse(&a, "Z1")), parse(&b, "u1*v1 + u2*v2"));
        assert_eq!(
            rho.apply(&parse(&a, "Z2")),
            parse(&b, "-t1*u1*v1 - t2*u2*v2 + u1*v1*u2*v2")
        );
        let rho1 = generator_images(1);
        assert_eq!(
            rho1.apply(&parse(&a_algebra(1), "X1")),
            parse(&b_algebra(1), "u1")
        );
        assert!(rho1.apply(&Element::one(&a_algebra(1))).is_one());
    }

    #[test]
    fn m_matrix_small() {
        let m = matrix_m(2, 2);
        let t = t_algebra(2);
        assert_eq!(m.get(0, 1).coeff(1), &parse(&t, "-t1 - t2"));
        let m1 = matrix_m(1, 3);
        assert_eq!(
            m1.get(0, 0).coeffs()[1..],
            [
                parse(&t_algebra(1), "1"),
                parse(&t_algebra(1), "-t1"),
                parse(&t_algebra(1), "t1^2")
            ]
        );
    }

    #[test]
    fn c_coefficients_small() {
        let e = e_algebra(2);
        let want = [["e1^2 - 2*e2", "-e1"], ["-e1", "2"]];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                assert_eq!(coeff_c(1, &[i + 1], &[j + 1], 2).unwrap(), parse(&e, w));
            }
        }
        assert!(coeff_c(2, &[1, 2], &[1, 2], 2).unwrap().is_one());
        assert!(coeff_c(1, &[1], &[1], 1).unwrap().is_one());
        assert!(coeff_c(1, &[1, 2], &[1, 2], 2).is_err());
    }

    #[test]
    fn relations_small() {
        let r = relation_r(1, 1).unwrap();
        assert_eq!(r.element.to_string(), "Z1 - X1*Y1");
        let a = a_algebra(2);
        let r1 = relation_r(1, 2).unwrap();
        let want = parse(
            &a,
            "e1^2*Z1 - 4*e2*Z1 - e1^2*X1*Y1 + 2*e2*X1*Y1 + e1*X1*Y2 + e1*X2*Y1 - 2*X2*Y2",
        );
        assert_eq!(r1.element, want);
        assert_eq!(r1.degree, 6);
        let r2 = relation_r(2, 2).unwrap();
        assert_eq!(
            r2.element
                .coefficient(&parse(&a, "X1*X2*Y1*Y2").terms()[0].0),
            Integer::from(1)
        );
        let w1 = relation_rprime(1, 1).unwrap();
        assert_eq!(w1.element.to_string(), "W1 - X1*Y1");
        let a1 = matrix_a(1, 2).unwrap();
        let e = e_algebra(2);
        assert_eq!(a1.get(0, 0), &parse(&e, "e1^2 - 2*e2"));
        assert_eq!(a1.get(1, 1), &parse(&e, "2"));
        assert!(a1.is_symmetric());
    }

    #[test]
    fn relations_vanish_under_rho() {
        for n in 1..=3 {
            let rho = generator_images(n);
            let rho_w = generator_images_prime(n, true);
            for l in 1..=n {
                assert!(
                    rho.apply(&relation_r(l, n).unwrap().element).is_zero(),
                    "R{l}, n={n}"
                );
                assert!(
                    rho_w
                        .apply(&relation_rprime(l, n).unwrap().element)
                        .is_zero(),
                    "R'{l}, n={n}"
                );
            }
        }
    }

    #[test]
    fn identities() {
        let a = a_algebra(2);
        assert!(generator_images(1)
            .apply(&(&newton_identity_element(1) + &relation_r(1, 1).unwrap().element))
            .is_zero());
        let ni = newton_identity_element(2);
        assert_eq!(
            ni.coefficient(&parse(&a, "Z2").terms()[0].0),
            Integer::from(2)
        );
        for n in 1..=3 {
            assert!(
                generator_images(n)
                    .apply(&newton_identity_element(n))
                    .is_zero(),
                "n={n}"
            );
            for l in n + 1..=n + 3 {
                assert!(recurrence_check(n, l).unwrap().vanishes(), "n={n}, l={l}");
            }
            for k in 1u32..1 << n {
                assert!(adjugate_identity_residual(n, k).is_zero(), "n={n}, K={k:b}");
            }
        }
    }

    /// `det(M_{I,J}) = Σ_K det(adj_{K,I}) det(adj_{K,J}) ∏_{m∈K} s/(1+t_m s)`.
    #[test]
    fn minors_match_cauchy_binet() {
        for n in 1..=3 {
            let t = t_algebra(n);
            let adj = adjugate_vandermonde(n);
            let m = matrix_m(n, n);
            let table = minors(&m);
            for (&(rows, cols), got) in &table {
                let k = rows.count_ones() as usize;
                let mut want = TruncatedSeries::zero(&t, n);
                for kk in subsets(n, k) {
                    let km = members(kk);
                    let c = &adj.minor(&km, &members(rows)) * &adj.minor(&km, &members(cols));
                    let mut prod = TruncatedSeries::constant(&c, n);
                    for &j in &km {
                        prod = &prod * m_diag(&t, j, n).as_ref().unwrap();
                    }
                    want = &want + &prod;
                }
                assert_eq!(got, &want, "n={n}, I={rows:b}, J={cols:b}");
            }
        }
    }

    fn m_diag(t: &Algebra, j: usize, order: usize) -> Option<TruncatedSeries> {
        let one_plus =
            TruncatedSeries::from_coeffs(t, order, vec![Element::one(t), Element::gen(t, j)]);
        let s = TruncatedSeries::from_coeffs(t, order, vec![Element::zero(t), Element::one(t)]);
        Some(&s * &one_plus.inverse()?)
    }
}
