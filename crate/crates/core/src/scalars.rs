//! Exact arithmetic in real quadratic fields ℚ(√r).
//!
//! [`QuadScalar`] is the scalar type every exact check runs on. Values are
//! kept in a canonical form (square-free radicand, rationals in lowest terms,
//! `b = 0` implies `r = 0`) so structural equality is numeric equality and the
//! derived `Hash` can be used for interning.
//!
//! [`QuadInt`] is the compact integral companion `a + b√r` with machine
//! integers, used for point coordinates where millions of dot products are
//! taken.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) do not share a field")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("radicand does not fit in 64 bits")]
    RadicandTooLarge,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Exact real number `a + b·√r` with rational `a`, `b` and square-free `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    r: u64,
}

/// Splits `n` as `k²·s` with `s` square-free. Returns `(k, s)`.
pub fn square_free_part(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut k = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, s * n)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadScalar {
    /// Builds `a + b·√r`, pulling square factors out of `r`.
    pub fn new(a: BigRational, b: BigRational, r: u64) -> Self {
        let (k, s) = square_free_part(r);
        match s {
            0 => Self::rational(a),
            1 => Self::rational(a + b * BigInt::from(k)),
            _ => Self::canonical(a, b * BigInt::from(k), s),
        }
    }

    fn canonical(a: BigRational, b: BigRational, r: u64) -> Self {
        if b.is_zero() || r == 0 {
            Self {
                a,
                b: BigRational::zero(),
                r: 0,
            }
        } else {
            Self { a, b, r }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            r: 0,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n / d` as a rational scalar. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(ratio(n, d))
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `√n`, reduced.
    pub fn sqrt_int(n: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeRadicand);
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(p/d) = sqrt(p·d) / d
        let prod = q.numer() * q.denom();
        let prod = prod.to_u64().ok_or(ScalarError::RadicandTooLarge)?;
        let (k, s) = square_free_part(prod);
        let coeff = BigRational::new(BigInt::from(k), q.denom().clone());
        Ok(if s == 1 {
            Self::rational(coeff)
        } else {
            Self::canonical(BigRational::zero(), coeff, s)
        })
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand; `0` for rational values.
    pub fn radicand(&self) -> u64 {
        self.r
    }

    pub fn is_rational(&self) -> bool {
        self.r == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.r == 0
    }

    pub fn is_one(&self) -> bool {
        self.r == 0 && self.a.is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: whichever of a² and b²r is larger wins
        let a2 = &self.a * &self.a;
        let b2r = &self.b * &self.b * BigInt::from(self.r);
        if a2 > b2r {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a − b√r`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            r: self.r,
        }
    }

    /// Field norm `a² − b²r`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigInt::from(self.r)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.r == 0 {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.r as f64).sqrt()
    }

    fn field_with(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.r, other.r) {
            (0, r) | (r, 0) => Ok(r),
            (r, s) if r == s => Ok(r),
            (r, s) => Err(ScalarError::RadicandMismatch(r, s)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let r = self.field_with(other)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let r = self.field_with(other)?;
        Ok(Self::canonical(&self.a - &other.a, &self.b - &other.b, r))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let r = self.field_with(other)?;
        let rr = BigInt::from(r);
        let a = &self.a * &other.a + &self.b * &other.b * rr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, r))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.field_with(other)?;
        let n = other.norm();
        let num = self.checked_mul(&other.conj())?;
        Ok(Self::canonical(num.a / &n, num.b / &n, num.r))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    /// Exact comparison; fails only across different fields.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(match self.checked_sub(other)?.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// `self · n` for an integer count, without going through a full product.
    pub fn scale_int(&self, n: &BigInt) -> Self {
        Self::canonical(&self.a * n, &self.b * n, self.r)
    }
}

fn rsign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -&self.a,
            b: -&self.b,
            r: self.r,
        }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl From<BigRational> for QuadScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.r);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.a, sign, self.b.abs(), self.r)
    }
}

fn parse_ratio(s: &str, whole: &str) -> Result<BigRational, ScalarError> {
    let err = || ScalarError::Parse(whole.to_string());
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err(err());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for QuadScalar {
    type Err = ScalarError;

    /// Accepts `p`, `p/q`, `s/t*sqrt(r)` and `p/q±s/t*sqrt(r)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        let Some(pos) = s.find("*sqrt(") else {
            return parse_ratio(s, s).map(Self::rational);
        };
        let inner = s[pos + 6..].strip_suffix(')').ok_or_else(err)?;
        let r: u64 = inner.trim().parse().map_err(|_| err())?;
        let head = &s[..pos];
        // the split point is the last sign that is not the leading one
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_ratio(&head[..i], s)?, parse_ratio(&head[i..], s)?),
            None => (BigRational::zero(), parse_ratio(head, s)?),
        };
        Ok(Self::new(a, b, r))
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integral element `a + b·√r` of ℤ[√r]; the radicand lives with the owner.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

/// Wide accumulator for sums of [`QuadInt`] products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuadWide {
    pub a: i128,
    pub b: i128,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn negated(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }

    pub fn mul_wide(self, other: Self, r: u64) -> QuadWide {
        let (a1, b1, a2, b2) = (
            self.a as i128,
            self.b as i128,
            other.a as i128,
            other.b as i128,
        );
        QuadWide {
            a: a1 * a2 + b1 * b2 * r as i128,
            b: a1 * b2 + b1 * a2,
        }
    }

    pub fn to_scalar(self, r: u64) -> QuadScalar {
        QuadScalar::new(
            BigRational::from_integer(self.a.into()),
            BigRational::from_integer(self.b.into()),
            r,
        )
    }

    pub fn to_f64(self, r: u64) -> f64 {
        self.a as f64 + self.b as f64 * (r as f64).sqrt()
    }

    /// Numeric comparison in ℝ.
    pub fn cmp_value(self, other: Self, r: u64) -> Ordering {
        let da = self.a as i128 - other.a as i128;
        let db = self.b as i128 - other.b as i128;
        wide_sign(da, db, r).cmp(&0)
    }

    pub fn signum(self, r: u64) -> i8 {
        wide_sign(self.a as i128, self.b as i128, r)
    }
}

fn wide_sign(a: i128, b: i128, r: u64) -> i8 {
    let (sa, sb) = (a.signum() as i8, b.signum() as i8);
    if sb == 0 || r == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let a2 = BigInt::from(a) * BigInt::from(a);
    let b2r = BigInt::from(b) * BigInt::from(b) * BigInt::from(r);
    if a2 > b2r {
        sa
    } else {
        sb
    }
}

impl QuadWide {
    pub fn add_assign(&mut self, other: QuadWide) {
        self.a += other.a;
        self.b += other.b;
    }

    pub fn to_scalar(self, r: u64) -> QuadScalar {
        QuadScalar::new(
            BigRational::from_integer(self.a.into()),
            BigRational::from_integer(self.b.into()),
            r,
        )
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn signum(self, r: u64) -> i8 {
        wide_sign(self.a, self.b, r)
    }
}

/// Dot product of two integral vectors over ℤ[√r].
pub fn dot_wide(u: &[QuadInt], v: &[QuadInt], r: u64) -> QuadWide {
    let mut acc = QuadWide::default();
    if r == 0 {
        acc.a = u
            .iter()
            .zip(v)
            .map(|(x, y)| x.a as i128 * y.a as i128)
            .sum();
    } else {
        for (x, y) in u.iter().zip(v) {
            acc.add_assign(x.mul_wide(*y, r));
        }
    }
    acc
}

/// Greatest common divisor of all components, used to strip common content.
pub fn content(values: impl IntoIterator<Item = i128>) -> i128 {
    values.into_iter().fold(0i128, |g, x| g.gcd(&x))
}
