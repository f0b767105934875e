//! Exact rationals viewed inside `Q_p`: valuations, absolute values and the
//! ultrametric toolkit.
//!
//! Elements of `Q_p` that matter here (inner products, traces, coefficients
//! of characteristic polynomials of rational matrices) all live in `Q`, so
//! they are stored as exact rationals. Absolute values are kept as exponents
//! of `p` and are never converted to floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Rational) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"num/den"` (optional leading minus on the numerator, positive
    /// denominator) or the integer shorthand `"num"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let trimmed = s.trim();
        match trimmed.split_once('/') {
            None => Ok(Rational::from_integer(parse_digits(trimmed, true).ok_or_else(bad)?)),
            Some((num, den)) => {
                let num = parse_digits(num, true).ok_or_else(bad)?;
                let den = parse_digits(den, false).ok_or_else(bad)?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// A prime below `2^64`, checked by deterministic Miller-Rabin.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if arith::is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn from_biguint(p: &BigUint) -> Result<Self> {
        match p.to_u64() {
            Some(small) => Prime::new(small),
            None => Err(Error::UnsupportedPrimeSize(p.to_string())),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_integer(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::NotPrime(s.to_string()));
        }
        let big: BigUint = t.parse().map_err(|_| Error::NotPrime(s.to_string()))?;
        Prime::from_biguint(&big)
    }
}

/// `v_p(x)`; `Infinite` exactly for `x = 0`. Orders with `Infinite` on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn valuation(x: &Rational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pb = p.to_bigint();
    let up = arith::multiplicity(x.numer(), &pb) as i64;
    let down = arith::multiplicity(x.denom(), &pb) as i64;
    Valuation::Finite(up - down)
}

/// Exact p-adic absolute value: `Zero`, or `Pow(e)` standing for the real
/// number `p^e` (so `e = -v_p(x)`).
///
/// The derived order is the order of the real values: `Zero` sits below
/// every power and powers compare by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PadicAbs {
    Zero,
    Pow(i64),
}

impl PadicAbs {
    pub const ONE: PadicAbs = PadicAbs::Pow(0);

    pub fn is_zero(self) -> bool {
        self == PadicAbs::Zero
    }

    pub fn square(self) -> PadicAbs {
        self * self
    }

    /// `self / other`; `None` when dividing by zero.
    pub fn checked_div(self, other: PadicAbs) -> Option<PadicAbs> {
        match (self, other) {
            (_, PadicAbs::Zero) => None,
            (PadicAbs::Zero, _) => Some(PadicAbs::Zero),
            (PadicAbs::Pow(a), PadicAbs::Pow(b)) => Some(PadicAbs::Pow(a - b)),
        }
    }

    /// The exact real value as a rational, `p^e`.
    pub fn to_rational(self, p: Prime) -> Rational {
        match self {
            PadicAbs::Zero => Rational::zero(),
            PadicAbs::Pow(e) => {
                let base = BigInt::from(p.get()).pow(e.unsigned_abs() as u32);
                if e >= 0 {
                    Rational::from_integer(base)
                } else {
                    Rational::new(1, base)
                }
            }
        }
    }

    /// Text form: `"0"` or `"p^e"`.
    pub fn render(self, p: Prime) -> String {
        match self {
            PadicAbs::Zero => "0".to_string(),
            PadicAbs::Pow(e) => format!("{}^{}", p, e),
        }
    }

    /// Parses `"0"` or `"p^e"`; the base must be exactly `p`.
    pub fn parse(text: &str, p: Prime) -> Result<PadicAbs> {
        let t = text.trim();
        if t == "0" {
            return Ok(PadicAbs::Zero);
        }
        let (base, exp) = t.split_once('^').ok_or_else(|| Error::ParseAbs(text.to_string()))?;
        if base.is_empty() || !base.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::ParseAbs(text.to_string()));
        }
        let exp: i64 = exp.parse().map_err(|_| Error::ParseAbs(text.to_string()))?;
        let base_val: BigUint = base.parse().map_err(|_| Error::ParseAbs(text.to_string()))?;
        if base_val != BigUint::from(p.get()) {
            return Err(Error::PrimeMismatch {
                text: text.to_string(),
                expected: p.get(),
                found: base.to_string(),
            });
        }
        Ok(PadicAbs::Pow(exp))
    }
}

impl Mul for PadicAbs {
    type Output = PadicAbs;
    // |x|_p |y|_p = p^(a + b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: PadicAbs) -> PadicAbs {
        match (self, rhs) {
            (PadicAbs::Pow(a), PadicAbs::Pow(b)) => PadicAbs::Pow(a + b),
            _ => PadicAbs::Zero,
        }
    }
}

impl Div for PadicAbs {
    type Output = PadicAbs;
    /// Panics on division by `Zero`; use [`PadicAbs::checked_div`] otherwise.
    fn div(self, rhs: PadicAbs) -> PadicAbs {
        self.checked_div(rhs).expect("division by p-adic zero")
    }
}

pub fn abs_p(x: &Rational, p: Prime) -> PadicAbs {
    match valuation(x, p) {
        Valuation::Infinite => PadicAbs::Zero,
        Valuation::Finite(v) => PadicAbs::Pow(-v),
    }
}

pub fn abs_max<I: IntoIterator<Item = PadicAbs>>(xs: I) -> Result<PadicAbs> {
    xs.into_iter().max().ok_or(Error::EmptyMax)
}

/// `abs_p(n)` for a nonnegative integer count such as `n` or `d`.
pub fn abs_count(n: u64, p: Prime) -> PadicAbs {
    abs_p(&Rational::from_integer(n), p)
}

/// Truncated p-adic expansion `p^v * (d_0 + d_1 p + ... + d_{k-1} p^{k-1} + O(p^k))`,
/// used for display only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicExpansion {
    pub p: Prime,
    pub valuation: Valuation,
    pub digits: Vec<u64>,
}

impl PadicExpansion {
    pub fn of_rational(x: &Rational, p: Prime, k: usize) -> Self {
        let v = valuation(x, p);
        let Valuation::Finite(e) = v else {
            return PadicExpansion { p, valuation: v, digits: Vec::new() };
        };
        let unit = x * &PadicAbs::Pow(-e).to_rational(p);
        let modulus = BigInt::from(p.get()).pow(k as u32);
        let den_inv = arith::mod_inverse(unit.denom(), &modulus).expect("unit denominator");
        let residue = (unit.numer() * den_inv).mod_floor(&modulus);
        Self::from_residue(p, e, &residue, k)
    }

    /// Expansion of `p^v * u` where `u` is known modulo `p^k`.
    pub fn from_residue(p: Prime, v: i64, residue: &BigInt, k: usize) -> Self {
        let pb = p.to_bigint();
        let mut r = residue.clone();
        let mut digits = Vec::with_capacity(k);
        for _ in 0..k {
            let (q, d) = r.div_mod_floor(&pb);
            digits.push(d.to_u64().expect("digit below p"));
            r = q;
        }
        PadicExpansion { p, valuation: Valuation::Finite(v), digits }
    }
}

impl fmt::Display for PadicExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Valuation::Finite(v) = self.valuation else {
            return write!(f, "0");
        };
        let p = self.p;
        let mut terms = Vec::new();
        for (i, &d) in self.digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            terms.push(match i {
                0 => format!("{d}"),
                1 => format!("{d}*{p}"),
                _ => format!("{d}*{p}^{i}"),
            });
        }
        terms.push(format!("O({p}^{})", self.digits.len()));
        if v == 0 {
            write!(f, "{}", terms.join(" + "))
        } else {
            write!(f, "{p}^{v} * ({})", terms.join(" + "))
        }
    }
}
