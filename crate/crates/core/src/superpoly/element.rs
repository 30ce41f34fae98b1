use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::monomial::{Exps, Monomial};
use super::{same_algebra, Algebra, PolyError};
use crate::exactlin::Integer;

/// Sparse integer combination of monomials, sorted in listing order.
#[derive(Clone, Debug)]
pub struct Element {
    alg: Algebra,
    terms: Vec<(Monomial, Integer)>,
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        same_algebra(&self.alg, &o.alg) && self.terms == o.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(alg: &Algebra) -> Self {
        Element {
            alg: alg.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(alg: &Algebra) -> Self {
        Element::constant(alg, Integer::one())
    }

    pub fn constant(alg: &Algebra, c: Integer) -> Self {
        Element::from_monomial(alg, Monomial::one(alg.len()), c)
    }

    pub fn from_monomial(alg: &Algebra, m: Monomial, c: Integer) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn generator(alg: &Algebra, name: &str) -> Result<Self, PolyError> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownGenerator(name.to_string()))?;
        Ok(Element::gen(alg, i))
    }

    pub fn gen(alg: &Algebra, i: usize) -> Self {
        Element::from_monomial(alg, Monomial::generator(alg, i), Integer::one())
    }

    /// Sum of terms, merging repeated monomials.
    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = (Monomial, Integer)>) -> Self {
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Element::from_map(alg, acc)
    }

    fn from_map(alg: &Algebra, acc: FxHashMap<Monomial, Integer>) -> Self {
        let mut terms: Vec<(Monomial, Integer)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &[(Monomial, Integer)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Integer)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Integer {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Common degree of all terms; `None` for inhomogeneous elements and
    /// `Some(0)` for zero.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.first().map_or(0, |t| t.0.degree());
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|t| t.0.degree() == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.0.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// True when no term involves an odd generator.
    pub fn is_even_only(&self) -> bool {
        self.terms.iter().all(|t| t.0.odd_mask() == 0)
    }

    pub fn scale(&self, c: &Integer) -> Element {
        if c.is_zero() {
            return Element::zero(&self.alg);
        }
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Keep the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|t| keep(&t.0)).cloned().collect(),
        }
    }

    fn check(&self, o: &Element) {
        assert!(
            same_algebra(&self.alg, &o.alg),
            "elements belong to different algebras"
        );
    }

    fn merge(&self, o: &Element, negate: bool) -> Element {
        self.check(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &Integer| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            match self.terms[i].0.cmp(&o.terms[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((o.terms[j].0.clone(), sgn(&o.terms[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &o.terms[j].1
                    } else {
                        &self.terms[i].1 + &o.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        Element {
            alg: self.alg.clone(),
            terms: out,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Integer) -> Element {
        let mut terms: Vec<(Monomial, Integer)> = self
            .terms
            .iter()
            .filter_map(|(x, a)| {
                let (p, neg) = x.mul(m)?;
                let v = a * c;
                Some((p, if neg { -v } else { v }))
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Element {
            alg: self.alg.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Move into `target`, sending generator `i` to `map[i]`. The map must
    /// preserve degrees and keep odd generators in the same relative order.
    pub fn transport(&self, target: &Algebra, map: &[usize]) -> Element {
        let src = self.alg.generators();
        assert_eq!(map.len(), src.len(), "transport map length");
        for (i, &j) in map.iter().enumerate() {
            let (a, b) = (&src[i], &target.generators()[j]);
            assert_eq!(
                (a.degree, a.parity),
                (b.degree, b.parity),
                "transport must preserve degree"
            );
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: Exps = SmallVec::from_elem(0, target.len());
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            let mut last = None;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 && m.odd_mask() & (1 << i) != 0 {
                    assert!(
                        last.is_none_or(|l| l < map[i]),
                        "transport reorders odd generators"
                    );
                    last = Some(map[i]);
                }
            }
            (
                Monomial::from_exps(target, &exps).expect("odd exponents preserved"),
                c.clone(),
            )
        });
        Element::from_terms(target, terms)
    }

    /// Move into `target` along matching generator names. Generators that
    /// do not occur in `self` need no counterpart.
    pub fn embed(&self, target: &Algebra) -> Result<Element, PolyError> {
        let gens = self.alg.generators();
        let mut map = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let j = target.index_of(&g.name);
            if j.is_none() && self.terms.iter().any(|(m, _)| m.exps()[i] > 0) {
                return Err(PolyError::UnknownGenerator(g.name.clone()));
            }
            if let Some(j) = j {
                let h = &target.generators()[j];
                assert_eq!(
                    (g.degree, g.parity),
                    (h.degree, h.parity),
                    "embedding must preserve degree"
                );
            }
            map.push(j);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: Exps = SmallVec::from_elem(0, target.len());
            let mut last = None;
            for (i, &e) in m.exps().iter().enumerate() {
                let Some(j) = map[i].filter(|_| e > 0) else {
                    continue;
                };
                exps[j] = e;
                if m.odd_mask() & (1 << i) != 0 {
                    assert!(
                        last.is_none_or(|l| l < j),
                        "embedding reorders odd generators"
                    );
                    last = Some(j);
                }
            }
            (
                Monomial::from_exps(target, &exps).expect("odd exponents preserved"),
                c.clone(),
            )
        });
        Ok(Element::from_terms(target, terms))
    }

    /// Largest term under the lexicographic monomial order.
    fn lex_leading(&self) -> Option<&(Monomial, Integer)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(&b.0))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        self.merge(o, false)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self.merge(o, true)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        self.check(o);
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let mut terms: Vec<(Monomial, Integer)> = o
                .terms
                .iter()
                .filter_map(|(x, a)| {
                    let (p, neg) = m.mul(x)?;
                    let v = a * c;
                    Some((p, if neg { -v } else { v }))
                })
                .collect();
            terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            return Element {
                alg: self.alg.clone(),
                terms,
            };
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        acc.reserve(self.terms.len() * o.terms.len() / 2 + 1);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((m, neg)) = a.mul(b) {
                    let e = acc.entry(m).or_default();
                    if neg {
                        *e -= x * y;
                    } else {
                        *e += x * y;
                    }
                }
            }
        }
        Element::from_map(&self.alg, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $f(self, o: Element) -> Element {
                (&self).$f(&o)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $f(self, o: &Element) -> Element {
                (&self).$f(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}

/// Quotient `q` with `q·y = x`, by leading-term division under the
/// lexicographic order. `y` must be nonzero with no odd factors.
pub fn exact_divide(x: &Element, y: &Element) -> Result<Element, PolyError> {
    if !same_algebra(&x.alg, &y.alg) {
        return Err(PolyError::AlgebraMismatch);
    }
    if y.is_zero() || !y.is_even_only() {
        return Err(PolyError::BadDivisor);
    }
    let (ly, cy) = y.lex_leading().expect("nonzero divisor").clone();
    // Remainder keyed by exponent vector; iteration from the back yields the
    // lex-leading term.
    let mut rem: BTreeMap<Exps, (Monomial, Integer)> = x
        .terms
        .iter()
        .map(|(m, c)| (m.exps().into(), (m.clone(), c.clone())))
        .collect();
    let mut quotient = Vec::new();
    while let Some((_, (lm, lc))) = rem.iter().next_back() {
        let (Some(qm), true) = (lm.div_even(&ly), lc.is_multiple_of(&cy)) else {
            let remainder = Element::from_terms(&x.alg, rem.into_values());
            return Err(PolyError::NotDivisible { remainder });
        };
        let qc = lc / &cy;
        for (ym, yc) in &y.terms {
            let (p, _) = qm.mul(ym).expect("divisor has no odd factors");
            let key: Exps = p.exps().into();
            let delta = &qc * yc;
            let drop = match rem.get_mut(&key) {
                Some((_, c)) => {
                    *c -= &delta;
                    c.is_zero()
                }
                None => {
                    rem.insert(key.clone(), (p, -delta));
                    false
                }
            };
            if drop {
                rem.remove(&key);
            }
        }
        quotient.push((qm, qc));
    }
    Ok(Element::from_terms(&x.alg, quotient))
}

#[cfg(test)]
mod tests {
    use super::super::{AlgebraSpec, GeneratorDescriptor};
    use super::*;

    fn alg() -> Algebra {
        AlgebraSpec::new(
            "B1",
            vec![
                GeneratorDescriptor::new("t1", 2, None),
                GeneratorDescriptor::new("t2", 2, None),
                GeneratorDescriptor::new("u1", 1, Some((1, 0))),
                GeneratorDescriptor::new("u2", 1, Some((1, 0))),
                GeneratorDescriptor::new("v1", 1, Some((0, 1))),
                GeneratorDescriptor::new("v2", 1, Some((0, 1))),
            ],
        )
        .unwrap()
    }

    fn g(a: &Algebra, s: &str) -> Element {
        Element::generator(a, s).unwrap()
    }

    #[test]
    fn koszul_products() {
        let a = alg();
        let (u1, u2, v1, v2) = (g(&a, "u1"), g(&a, "u2"), g(&a, "v1"), g(&a, "v2"));
        assert_eq!(&u2 * &u1, -(&u1 * &u2));
        assert!((&u1 * &u1).is_zero());
        let x = &u1 * &v1;
        let y = &u2 * &v2;
        assert_eq!(&x * &y, &y * &x);
        assert_eq!((&x * &y).terms()[0].1, -Integer::one());
    }

    #[test]
    fn division() {
        let a = alg();
        let d = &g(&a, "t2") - &g(&a, "t1");
        assert_eq!(exact_divide(&(&d * &d), &d).unwrap(), d);
        let p = &g(&a, "t1") * &g(&a, "t2");
        assert!(matches!(
            exact_divide(&p, &d),
            Err(PolyError::NotDivisible { .. })
        ));
        let d2 = &d * &d;
        assert!(exact_divide(&Element::zero(&a), &d2).unwrap().is_zero());
        let odd = &g(&a, "u1") * &d;
        assert_eq!(exact_divide(&odd, &d).unwrap(), g(&a, "u1"));
        assert_eq!(exact_divide(&d, &g(&a, "u1")), Err(PolyError::BadDivisor));
    }
}
