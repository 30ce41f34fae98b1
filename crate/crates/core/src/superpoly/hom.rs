use rustc_hash::FxHashMap;

use super::{same_algebra, Algebra, Element, Monomial, Parity, PolyError};

/// Algebra map determined by generator images.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Algebra,
    target: Algebra,
    images: Vec<Element>,
}

impl AlgebraHom {
    /// Images must be homogeneous of the generator's degree (zero is
    /// allowed) and, for odd generators, consist of odd monomials.
    pub fn new(
        source: &Algebra,
        target: &Algebra,
        images: Vec<Element>,
    ) -> Result<Self, PolyError> {
        if images.len() != source.len() {
            return Err(PolyError::BadImage {
                generator: "*".into(),
                reason: format!("expected {} images, got {}", source.len(), images.len()),
            });
        }
        for (g, img) in source.generators().iter().zip(&images) {
            let bad = |reason: &str| PolyError::BadImage {
                generator: g.name.clone(),
                reason: reason.to_string(),
            };
            if !same_algebra(img.algebra(), target) {
                return Err(bad("image lives in another algebra"));
            }
            if !img.is_homogeneous(g.degree) {
                return Err(bad("image degree differs from generator degree"));
            }
            let odd_image = img.terms().iter().all(|(m, _)| m.odd_count() % 2 == 1);
            let even_image = img.terms().iter().all(|(m, _)| m.odd_count() % 2 == 0);
            let ok = match g.parity {
                Parity::Odd => odd_image,
                Parity::Even => even_image,
            };
            if !ok {
                return Err(bad("image parity differs from generator parity"));
            }
        }
        Ok(AlgebraHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }
    pub fn target(&self) -> &Algebra {
        &self.target
    }
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.evaluator().apply(x)
    }

    pub fn evaluator(&self) -> HomEvaluator<'_> {
        HomEvaluator {
            hom: self,
            cache: FxHashMap::default(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraHom) -> AlgebraHom {
        assert!(
            same_algebra(&self.target, &other.source),
            "composition mismatch"
        );
        let mut ev = other.evaluator();
        AlgebraHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|x| ev.apply(x)).collect(),
        }
    }
}

/// Applies a homomorphism with memoized monomial images.
pub struct HomEvaluator<'a> {
    hom: &'a AlgebraHom,
    cache: FxHashMap<Monomial, Element>,
}

impl HomEvaluator<'_> {
    pub fn monomial(&mut self, m: &Monomial) -> Element {
        if let Some(x) = self.cache.get(m) {
            return x.clone();
        }
        let Some(last) = m.exps().iter().rposition(|&e| e > 0) else {
            return Element::one(&self.hom.target);
        };
        let rest = m.without_one(&self.hom.source, last);
        let img = &self.monomial(&rest) * &self.hom.images[last];
        self.cache.insert(m.clone(), img.clone());
        img
    }

    pub fn apply(&mut self, x: &Element) -> Element {
        assert!(
            same_algebra(x.algebra(), &self.hom.source),
            "element outside the source algebra"
        );
        let mut acc = Element::zero(&self.hom.target);
        for (m, c) in x.terms() {
            acc = &acc + &self.monomial(m).scale(c);
        }
        acc
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::super::{AlgebraSpec, GeneratorDescriptor};
    use super::*;

    #[test]
    fn images_are_validated() {
        let s = AlgebraSpec::new("s", vec![GeneratorDescriptor::new("x", 1, None)]).unwrap();
        let t = AlgebraSpec::new(
            "t",
            vec![
                GeneratorDescriptor::new("a", 1, None),
                GeneratorDescriptor::new("b", 2, None),
            ],
        )
        .unwrap();
        let b = Element::generator(&t, "b").unwrap();
        assert!(AlgebraHom::new(&s, &t, vec![b]).is_err());
        let a = Element::generator(&t, "a").unwrap();
        let h = AlgebraHom::new(&s, &t, vec![a.clone()]).unwrap();
        assert_eq!(h.apply(&Element::one(&s)), Element::one(&t));
        assert_eq!(h.apply(&Element::generator(&s, "x").unwrap()), a);
    }
}
