//! Exact scalars: integers, rationals and prime-field residues.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinError;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffRing {
    Z,
    Q,
    Fp(u64),
}

impl CoeffRing {
    pub fn is_field(self) -> bool {
        !matches!(self, CoeffRing::Z)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoeffRing::Fp(p) => p,
            _ => 0,
        }
    }

    /// True when `k` is invertible in the ring (`k > 0`).
    pub fn inverts(self, k: u64) -> bool {
        match self {
            CoeffRing::Z => k == 1,
            CoeffRing::Q => k != 0,
            CoeffRing::Fp(p) => !k.is_multiple_of(p),
        }
    }

    /// True when `n!` is invertible.
    pub fn inverts_factorial(self, n: u64) -> bool {
        (1..=n).all(|k| self.inverts(k))
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Z => write!(f, "Z"),
            CoeffRing::Q => write!(f, "Q"),
            CoeffRing::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = LinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(CoeffRing::Z),
            "Q" => Ok(CoeffRing::Q),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| LinError::BadRing(other.to_string()))?;
                if !is_prime(p) {
                    return Err(LinError::BadRing(format!("{p} is not prime")));
                }
                if p >= 1 << 62 {
                    return Err(LinError::BadRing(format!("prime {p} too large")));
                }
                Ok(CoeffRing::Fp(p))
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue modulo a prime `p < 2^62`, always reduced to `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn from_integer(v: &Integer, modulus: u64) -> Self {
        let r = v.mod_floor(&Integer::from(modulus));
        Fp {
            value: r.to_u64().expect("reduced residue fits"),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(base);
            }
            base = base.mul_mod(base);
            e >>= 1;
        }
        acc
    }

    fn mul_mod(self, o: Fp) -> Fp {
        let v = (self.value as u128 * o.value as u128) % self.modulus as u128;
        Fp {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

/// Field operations used by the elimination routines.
///
/// `Ctx` carries whatever is needed to build constants (the modulus for
/// prime fields, nothing for the rationals).
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Copy + fmt::Debug + Send + Sync;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_integer(ctx: Self::Ctx, v: &Integer) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    /// Rough storage cost, used to prefer small pivots.
    fn bit_size(&self) -> u64;
    fn to_scalar(&self) -> Scalar;
}

impl Field for Rational {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        <Rational as Zero>::zero()
    }
    fn one(_: ()) -> Self {
        <Rational as One>::one()
    }
    fn from_integer(_: (), v: &Integer) -> Self {
        Rational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rat(self.clone())
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn zero(p: u64) -> Self {
        Fp {
            value: 0,
            modulus: p,
        }
    }
    fn one(p: u64) -> Self {
        Fp::new(1, p)
    }
    fn from_integer(p: u64, v: &Integer) -> Self {
        Fp::from_integer(v, p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1 % self.modulus
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.value + o.value;
        Fp {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp {
            value: if self.value >= o.value {
                self.value - o.value
            } else {
                self.value + self.modulus - o.value
            },
            modulus: self.modulus,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_mod(*o)
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus - 2)
    }
    fn bit_size(&self) -> u64 {
        1
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Mod(*self)
    }
}

/// A tagged exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(Integer),
    Rat(Rational),
    Mod(Fp),
}

impl Scalar {
    pub fn ring(&self) -> CoeffRing {
        match self {
            Scalar::Int(_) => CoeffRing::Z,
            Scalar::Rat(_) => CoeffRing::Q,
            Scalar::Mod(x) => CoeffRing::Fp(x.modulus),
        }
    }

    /// Embed an integer into `ring`.
    pub fn from_integer(ring: CoeffRing, v: &Integer) -> Self {
        match ring {
            CoeffRing::Z => Scalar::Int(v.clone()),
            CoeffRing::Q => Scalar::Rat(Rational::from_integer(v.clone())),
            CoeffRing::Fp(p) => Scalar::Mod(Fp::from_integer(v, p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => Zero::is_zero(v),
            Scalar::Mod(v) => v.value == 0,
        }
    }

    /// Decimal rendering: `"-3"`, `"5/2"`, or the residue in `[0, p)`.
    pub fn to_decimal(&self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Rat(v) => {
                if v.denom().is_one() {
                    v.numer().to_string()
                } else {
                    format!("{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Mod(v) => v.value.to_string(),
        }
    }

    /// Parse the output of [`Scalar::to_decimal`] back into `ring`.
    pub fn parse(ring: CoeffRing, s: &str) -> Result<Self, LinError> {
        let bad = || LinError::BadScalar(s.to_string());
        match ring {
            CoeffRing::Z => Ok(Scalar::Int(s.parse().map_err(|_| bad())?)),
            CoeffRing::Fp(p) => {
                let v: Integer = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Mod(Fp::from_integer(&v, p)))
            }
            CoeffRing::Q => match s.split_once('/') {
                None => Ok(Scalar::Rat(Rational::from_integer(
                    s.parse().map_err(|_| bad())?,
                ))),
                Some((a, b)) => {
                    let a: Integer = a.parse().map_err(|_| bad())?;
                    let b: Integer = b.parse().map_err(|_| bad())?;
                    if b.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::Rat(Rational::new(a, b)))
                }
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

/// Greatest common divisor of a list, non-negative.
pub fn content(values: &[Integer]) -> Integer {
    values.iter().fold(Integer::zero(), |g, v| g.gcd(v)).abs()
}

pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * Integer::from(n - i) / Integer::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}
