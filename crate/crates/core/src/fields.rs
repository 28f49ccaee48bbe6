//! Exact scalars over the rationals and over prime fields GF(p).
//!
//! A [`FieldSpec`] names the ground field; a [`Scalar`] is a single exact
//! element. Residues carry their modulus so that mixing elements of two
//! different prime fields is detected rather than silently computed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest modulus accepted for a prime field (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// The ground field: the rationals or a prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// GF(p), checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn is_gf2(self) -> bool {
        self == FieldSpec::Prime(2)
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` as an element of this field.
    pub fn ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.from_bigint(num).checked_div(&d)
    }

    /// Parses a decimal integer or a fraction `a/b`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, FieldError> {
            let t = t.strip_prefix('+').unwrap_or(t);
            if t.is_empty() || !t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(self.from_bigint(&parse_int(s)?)),
            Some((a, b)) => self.ratio(&parse_int(a)?, &parse_int(b)?),
        }
    }

    /// Does `x` belong to this field?
    pub fn contains(self, x: &Scalar) -> bool {
        x.field() == self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts exactly `Q` or `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .filter(|t| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()))
            .ok_or_else(|| FieldError::Parse(s.to_string()))?;
        match inner.parse::<u64>() {
            Ok(p) => FieldSpec::prime(p),
            Err(_) => Err(FieldError::ModulusTooLarge(u64::MAX)),
        }
    }
}

/// Shorthand for [`FieldSpec::from_str`].
pub fn field_of(description: &str) -> Result<FieldSpec, FieldError> {
    description.parse()
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Extended Euclid on (a, p); p is prime and a is nonzero.
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Bit length of numerator plus denominator; 0 for residues.
    pub fn bit_size(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Residue { .. } => 0,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() != other.field() {
            return Err(FieldError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self += a * b`, the inner loop of every elimination.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, modulus: q1 },
                Scalar::Residue { value: y, modulus: q2 },
            ) => {
                assert!(*modulus == *q1 && *modulus == *q2, "field mismatch");
                let p = *modulus as u64;
                *value = ((*value as u64 + (*x as u64 * *y as u64) % p) % p) as u32;
            }
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *s += x * y;
                }
            }
            (s, a, b) => panic!("field mismatch: {} += {} * {}", s, a, b),
        }
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        self.add_mul(&a.neg(), b);
    }

    /// Rational value of `self` if it lies in the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Canonical residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl std::ops::SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

/// Is `x` reduced with a positive denominator? Always true for values built
/// through this module; exposed for property tests.
pub fn is_canonical(x: &Scalar) -> bool {
    match x {
        Scalar::Rational(r) => {
            r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
        }
        Scalar::Residue { value, modulus } => value < modulus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals
            .ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn parses_field_names() {
        assert_eq!(field_of("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(field_of("Q").unwrap().characteristic(), 0);
        let f2 = field_of("GF(2)").unwrap();
        assert_eq!(f2, FieldSpec::Prime(2));
        assert_eq!(f2.characteristic(), 2);
        assert_eq!(field_of("GF(4)"), Err(FieldError::NonPrimeModulus(4)));
        assert_eq!(
            field_of("GF(2147483659)"),
            Err(FieldError::ModulusTooLarge(2147483659))
        );
        assert!(field_of("GF(1)").is_err());
        assert!(field_of("GF( 5)").is_err());
        assert!(field_of("q").is_err());
        assert_eq!(field_of("GF(2147483647)").unwrap().characteristic(), 2147483647);
    }

    #[test]
    fn worked_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        let f5 = FieldSpec::Prime(5);
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        let f2 = FieldSpec::Prime(2);
        assert!((f2.one() + f2.one()).is_zero());
    }

    #[test]
    fn errors() {
        let f5 = FieldSpec::Prime(5);
        assert_eq!(f5.zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(q(1, 2).checked_div(&q(0, 1)), Err(FieldError::DivisionByZero));
        assert!(matches!(
            f5.one().checked_add(&FieldSpec::Prime(7).one()),
            Err(FieldError::FieldMismatch(..))
        ));
        assert!(matches!(
            q(1, 1).checked_mul(&f5.one()),
            Err(FieldError::FieldMismatch(..))
        ));
    }

    #[test]
    fn parse_scalars() {
        let f7 = FieldSpec::Prime(7);
        assert_eq!(f7.parse_scalar("3/2").unwrap(), f7.from_i64(5));
        assert_eq!(f7.parse_scalar("-1").unwrap(), f7.from_i64(6));
        assert_eq!(f7.parse_scalar("1/7"), Err(FieldError::DivisionByZero));
        assert_eq!(FieldSpec::Rationals.parse_scalar("-4/6").unwrap(), q(-2, 3));
        assert!(FieldSpec::Rationals.parse_scalar("1.5").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("1/").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-3", "7/12", "-1/2"] {
            let x = FieldSpec::Rationals.parse_scalar(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn add_mul_matches_operators() {
        let mut acc = q(1, 3);
        acc.add_mul(&q(2, 5), &q(-5, 4));
        assert_eq!(acc, q(1, 3) + q(2, 5) * q(-5, 4));
        let f3 = FieldSpec::Prime(3);
        let mut r = f3.from_i64(2);
        r.sub_mul(&f3.from_i64(2), &f3.from_i64(2));
        assert_eq!(r, f3.from_i64(1));
    }
}
