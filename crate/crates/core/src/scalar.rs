//! Exact scalars: integers, rationals, prime fields and integer polynomials
//! in one variable `T`.
//!
//! A [`Scalar`] is a tagged value; the tag is its [`Ring`]. Arithmetic between
//! scalars of different rings is a programming error and panics, so callers
//! that accept user input check rings up front (see [`Ring::check`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
    /// ℤ[T].
    IntPolys,
}

impl Ring {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Ring::Integers => Scalar::Int(v.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            Ring::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod { value: r.to_u64().unwrap(), modulus: p }
            }
            Ring::IntPolys => Scalar::Poly(IntPoly::constant(v.clone())),
        }
    }

    /// The polynomial variable, only in ℤ[T].
    pub fn variable(&self) -> Option<Scalar> {
        match self {
            Ring::IntPolys => Some(Scalar::Poly(IntPoly::variable())),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    /// Validates the ring description (primality of `p`).
    pub fn check(&self) -> Result<(), RingError> {
        if let Ring::PrimeField(p) = *self {
            if !is_prime(p) {
                return Err(RingError::NotPrime(p));
            }
            if p > u32::MAX as u64 {
                return Err(RingError::ModulusTooLarge(p));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "GF:{p}"),
            Ring::IntPolys => write!(f, "ZT"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ring = match s.trim() {
            "Z" => Ring::Integers,
            "Q" => Ring::Rationals,
            "ZT" => Ring::IntPolys,
            other => {
                let p = other
                    .strip_prefix("GF:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| RingError::Unknown(other.to_string()))?;
                Ring::PrimeField(p)
            }
        };
        ring.check()?;
        Ok(ring)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial in `T` with integer coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn variable() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
    Poly(IntPoly),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod { modulus, .. } => Ring::PrimeField(*modulus),
            Scalar::Poly(_) => Ring::IntPolys,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// Units: ±1 in ℤ and ℤ[T], nonzero elements of fields.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(v) => v.abs().is_one(),
            Scalar::Poly(p) => p.degree() == Some(0) && p.coeffs()[0].abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Option<Scalar> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            Scalar::Int(v) => Scalar::Int(v.clone()),
            Scalar::Rat(v) => Scalar::Rat(v.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
            Scalar::Poly(p) => Scalar::Poly(p.clone()),
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The integer value, when the scalar is (the image of) an integer
    /// constant. Prime field elements give their representative in `[0,p)`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(v) => Some(v.clone()),
            Scalar::Rat(v) => v.is_integer().then(|| v.to_integer()),
            Scalar::Mod { value, .. } => Some(BigInt::from(*value)),
            Scalar::Poly(p) => match p.degree() {
                None => Some(BigInt::zero()),
                Some(0) => Some(p.coeffs()[0].clone()),
                _ => None,
            },
        }
    }

    /// Substitutes `T = t` in a polynomial scalar, landing in ℤ.
    pub fn specialize(&self, t: &BigInt) -> Scalar {
        match self {
            Scalar::Poly(p) => Scalar::Int(p.eval(t)),
            other => other.clone(),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.add(b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.mul(b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Poly(a) => Scalar::Poly(a.neg()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.partial_cmp(b),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.partial_cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.partial_cmp(b),
            _ => None,
        }
    }
}
