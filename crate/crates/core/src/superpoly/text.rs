//! Canonical text form.
//!
//! ```text
//! element := "0" | ["-"] term (("+" | "-") term)*
//! term    := integer | [integer "*"] factor ("*" factor)*
//! factor  := name ["^" integer]
//! ```
//!
//! Whitespace is insignificant. Factors in a parsed term are multiplied in
//! the order written, so `u2*u1` reads as `-u1*u2`. Rendering lists terms
//! in listing order and factors in generator order.

use num_traits::{One, Signed, Zero};

use super::{Algebra, AlgebraSpec, Element, Monomial, PolyError};
use crate::exactlin::{Integer, Scalar};

pub fn render_monomial(alg: &AlgebraSpec, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .zip(alg.generators())
        .filter(|(e, _)| **e > 0)
        .map(|(&e, g)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn push_term(out: &mut String, first: bool, negative: bool, magnitude: &str, mono: &str) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    match (magnitude == "1", mono == "1") {
        (true, _) => out.push_str(mono),
        (false, true) => out.push_str(magnitude),
        (false, false) => {
            out.push_str(magnitude);
            out.push('*');
            out.push_str(mono);
        }
    }
}

pub(super) fn render(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in x.terms().iter().enumerate() {
        let mono = render_monomial(x.algebra(), m);
        push_term(
            &mut out,
            i == 0,
            c.is_negative(),
            &c.abs().to_string(),
            &mono,
        );
    }
    out
}

/// Render a combination with exact scalar coefficients (integers,
/// `num/den`, or residues).
pub fn render_combination(alg: &AlgebraSpec, terms: &[(Monomial, Scalar)]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (m, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_decimal();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        push_term(
            &mut out,
            first,
            negative,
            &magnitude,
            &render_monomial(alg, m),
        );
        first = false;
    }
    if first {
        "0".to_string()
    } else {
        out
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn integer(&mut self) -> Result<Integer, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn name(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected generator name");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii name"))
    }

    fn factor(&mut self, alg: &Algebra) -> Result<Element, PolyError> {
        let start = self.pos;
        let name = self.name()?;
        let base = Element::generator(alg, name).map_err(|_| PolyError::Parse {
            pos: start,
            msg: format!("unknown generator {name:?}"),
        })?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn term(&mut self, alg: &Algebra) -> Result<Element, PolyError> {
        let mut acc = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.integer()?;
            if self.peek() != Some(b'*') {
                return Ok(Element::constant(alg, c));
            }
            self.pos += 1;
            Element::constant(alg, c)
        } else {
            Element::one(alg)
        };
        loop {
            acc = &acc * &self.factor(alg)?;
            if self.peek() != Some(b'*') {
                return Ok(acc);
            }
            self.pos += 1;
        }
    }
}

impl Element {
    /// Parse the canonical text form.
    pub fn parse(alg: &Algebra, text: &str) -> Result<Element, PolyError> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
        };
        let mut acc = Element::zero(alg);
        let mut negative = false;
        if p.peek() == Some(b'-') {
            p.pos += 1;
            negative = true;
        }
        loop {
            let t = p.term(alg)?;
            acc = if negative { &acc - &t } else { &acc + &t };
            match p.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return p.err("expected '+' or '-'"),
            }
            p.pos += 1;
        }
        Ok(acc)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Integer {
        self.terms()
            .first()
            .filter(|(m, _)| m.is_one())
            .map_or_else(Integer::zero, |t| t.1.clone())
    }

    pub fn is_one(&self) -> bool {
        self.len() == 1 && self.terms()[0].0.is_one() && self.terms()[0].1.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::super::GeneratorDescriptor;
    use super::*;

    fn alg() -> Algebra {
        AlgebraSpec::new(
            "A1",
            vec![
                GeneratorDescriptor::new("e1", 2, Some((0, 0))),
                GeneratorDescriptor::new("X1", 1, Some((1, 0))),
                GeneratorDescriptor::new("Y1", 1, Some((0, 1))),
                GeneratorDescriptor::new("Z1", 2, None),
            ],
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let a = alg();
        for s in [
            "Z1 - X1*Y1",
            "e1*Z1 - 3*e1*X1*Y1",
            "e1^2 + Z1^2",
            "0",
            "7",
            "-X1",
        ] {
            assert_eq!(Element::parse(&a, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_applies_signs() {
        let a = alg();
        assert_eq!(Element::parse(&a, "Y1*X1").unwrap().to_string(), "-X1*Y1");
        assert_eq!(Element::parse(&a, "X1*X1").unwrap().to_string(), "0");
        assert_eq!(
            Element::parse(&a, " 2 * e1 + e1 ").unwrap().to_string(),
            "3*e1"
        );
        assert!(Element::parse(&a, "Q1").is_err());
        assert!(Element::parse(&a, "e1 e1").is_err());
    }
}
