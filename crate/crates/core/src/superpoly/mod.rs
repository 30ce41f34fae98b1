//! Free graded-commutative polynomial algebras.
//!
//! Even generators are polynomial, odd generators are exterior. Elements
//! carry integer coefficients; passing to ℚ or 𝔽ₚ happens at the linear
//! algebra boundary. Products obey the Koszul sign rule.

mod basis;
mod element;
mod hom;
mod monomial;
mod text;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

pub(crate) use basis::enumerate as enumerate_restricted;
pub use basis::{graded_basis, hilbert_series, monomials_up_to};
pub use element::{exact_divide, Element};
pub use hom::{AlgebraHom, HomEvaluator};
pub use monomial::{koszul_negative, Monomial};
pub use text::{render_combination, render_monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorDescriptor {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub biweight: Option<(u32, u32)>,
}

impl GeneratorDescriptor {
    pub fn new(name: impl Into<String>, degree: u32, biweight: Option<(u32, u32)>) -> Self {
        GeneratorDescriptor {
            name: name.into(),
            degree,
            parity: if degree.is_multiple_of(2) {
                Parity::Even
            } else {
                Parity::Odd
            },
            biweight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {0:?} has parity inconsistent with its degree")]
    ParityMismatch(String),
    #[error("invalid generator name {0:?}")]
    BadName(String),
    #[error("at most 64 generators are supported")]
    TooManyGenerators,
    #[error("generator {0:?} has degree 0, so graded pieces are infinite")]
    DegreeZeroGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("image of {generator} is invalid: {reason}")]
    BadImage { generator: String, reason: String },
    #[error("divisor must be a nonzero element without odd factors")]
    BadDivisor,
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Element },
}

/// Named generators in canonical order.
#[derive(Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    gens: Vec<GeneratorDescriptor>,
    index: HashMap<String, usize>,
}

pub type Algebra = Arc<AlgebraSpec>;

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl AlgebraSpec {
    pub fn new(
        name: impl Into<String>,
        gens: Vec<GeneratorDescriptor>,
    ) -> Result<Algebra, PolyError> {
        if gens.len() > 64 {
            return Err(PolyError::TooManyGenerators);
        }
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) {
                return Err(PolyError::BadName(g.name.clone()));
            }
            let expected = if g.degree % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            if g.parity != expected {
                return Err(PolyError::ParityMismatch(g.name.clone()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(PolyError::DuplicateName(g.name.clone()));
            }
        }
        Ok(Arc::new(AlgebraSpec {
            name: name.into(),
            gens,
            index,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn len(&self) -> usize {
        self.gens.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
    pub fn generators(&self) -> &[GeneratorDescriptor] {
        &self.gens
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
    pub fn odd_mask(&self) -> u64 {
        self.gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.parity == Parity::Odd)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Process-wide table of named algebras, so repeated construction of a
/// standard algebra yields the same `Arc` and equality checks stay cheap.
pub fn interned(key: &str, build: impl FnOnce() -> Vec<GeneratorDescriptor>) -> Algebra {
    static TABLE: OnceLock<Mutex<HashMap<String, Algebra>>> = OnceLock::new();
    let mut table = TABLE
        .get_or_init(Default::default)
        .lock()
        .expect("algebra table poisoned");
    if let Some(a) = table.get(key) {
        return a.clone();
    }
    let alg = AlgebraSpec::new(key, build()).expect("standard algebra is well formed");
    table.insert(key.to_string(), alg.clone());
    alg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_must_match_degree() {
        let bad = GeneratorDescriptor {
            name: "x".into(),
            degree: 2,
            parity: Parity::Odd,
            biweight: None,
        };
        assert_eq!(
            AlgebraSpec::new("bad", vec![bad]),
            Err(PolyError::ParityMismatch("x".into()))
        );
        let dup = vec![
            GeneratorDescriptor::new("x", 2, None),
            GeneratorDescriptor::new("x", 1, None),
        ];
        assert!(matches!(
            AlgebraSpec::new("dup", dup),
            Err(PolyError::DuplicateName(_))
        ));
        assert!(AlgebraSpec::new("n", vec![GeneratorDescriptor::new("1x", 1, None)]).is_err());
    }
}
