//! Exact coefficient arithmetic over prime fields `F_q` (q an odd prime) and
//! the rationals.
//!
//! A [`FieldScalar`] always carries its field. Operations between scalars of
//! different fields fail with [`Error::MixedFields`] through the checked
//! functions ([`field_add`] and friends); the `std::ops` impls are for code
//! that has already validated its operands and panic on a mismatch.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldDescriptor {
    /// `F_q` for an odd prime `q`.
    PrimeField(u64),
    Rationals,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn prime(q: u64) -> Result<Self> {
        if q == 2 || !is_prime(q) {
            return Err(Error::NotAnOddPrime(q));
        }
        Ok(FieldDescriptor::PrimeField(q))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField(q) => *q,
            FieldDescriptor::Rationals => 0,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldDescriptor::PrimeField(q) => Some(*q),
            FieldDescriptor::Rationals => None,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldScalar {
        match *self {
            FieldDescriptor::PrimeField(q) => FieldScalar::Prime {
                q,
                value: n.rem_euclid(q as i64) as u64,
            },
            FieldDescriptor::Rationals => FieldScalar::Rational(BigRational::from_integer(n.into())),
        }
    }

    /// Residue `value mod q`, or the integer `value` over the rationals.
    pub fn from_u64(&self, value: u64) -> FieldScalar {
        match *self {
            FieldDescriptor::PrimeField(q) => FieldScalar::Prime { q, value: value % q },
            FieldDescriptor::Rationals => {
                FieldScalar::Rational(BigRational::from_integer(BigInt::from(value)))
            }
        }
    }

    /// Maps an exact rational into the field.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldScalar> {
        match *self {
            FieldDescriptor::Rationals => Ok(FieldScalar::Rational(r.clone())),
            FieldDescriptor::PrimeField(q) => {
                let qb = BigInt::from(q);
                let den = r.denom().mod_floor(&qb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::NonReducibleModQ { value: r.to_string(), q });
                }
                let num = r.numer().mod_floor(&qb).to_u64().unwrap();
                let den_inv = pow_mod(den, q - 2, q);
                Ok(FieldScalar::Prime { q, value: mul_mod(num, den_inv, q) })
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::PrimeField(q) => write!(f, "F{q}"),
            FieldDescriptor::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        let q: u64 = digits.parse().map_err(|_| Error::UnknownField(s.to_string()))?;
        FieldDescriptor::prime(q)
    }
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// An exact field element in canonical form: least nonnegative residue for
/// `F_q`, reduced fraction with positive denominator for the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Prime { q: u64, value: u64 },
    Rational(BigRational),
}

impl FieldScalar {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldScalar::Prime { q, .. } => FieldDescriptor::PrimeField(*q),
            FieldScalar::Rational(_) => FieldDescriptor::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Prime { value, .. } => *value == 0,
            FieldScalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Prime { value, .. } => *value == 1,
            FieldScalar::Rational(r) => r.is_one(),
        }
    }

    /// True for strictly negative rationals; prime field elements are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldScalar::Prime { .. } => false,
            FieldScalar::Rational(r) => r.is_negative(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            FieldScalar::Prime { .. } => None,
        }
    }

    /// Residue in `[0, q)` for prime field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldScalar::Prime { value, .. } => Some(*value),
            FieldScalar::Rational(_) => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.descriptor() == other.descriptor() {
            Ok(())
        } else {
            Err(Error::MixedFields(
                self.descriptor().to_string(),
                other.descriptor().to_string(),
            ))
        }
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldScalar::Prime { q, value } => FieldScalar::Prime { q: *q, value: pow_mod(*value, q - 2, *q) },
            FieldScalar::Rational(r) => FieldScalar::Rational(r.recip()),
        })
    }

    pub fn pow(&self, exp: u32) -> FieldScalar {
        let mut acc = self.descriptor().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// A square root in the field, if one exists.
    ///
    /// Over the rationals the nonnegative root is returned; over `F_q` the
    /// smaller of the two residues.
    pub fn sqrt(&self) -> Option<FieldScalar> {
        match self {
            FieldScalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(FieldScalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            FieldScalar::Prime { q, value } => {
                let (q, a) = (*q, *value);
                if a == 0 {
                    return Some(self.clone());
                }
                if pow_mod(a, (q - 1) / 2, q) != 1 {
                    return None;
                }
                let r = tonelli_shanks(a, q);
                Some(FieldScalar::Prime { q, value: r.min(q - r) })
            }
        }
    }
}

fn tonelli_shanks(a: u64, q: u64) -> u64 {
    if q % 4 == 3 {
        return pow_mod(a, (q + 1) / 4, q);
    }
    let mut s = 0;
    let mut odd = q - 1;
    while odd.is_multiple_of(2) {
        odd /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (q - 1) / 2, q) != q - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, odd, q);
    let mut t = pow_mod(a, odd, q);
    let mut r = pow_mod(a, odd.div_ceil(2), q);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, q);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), q);
        m = i;
        c = mul_mod(b, b, q);
        t = mul_mod(t, c, q);
        r = mul_mod(r, b, q);
    }
    r
}

pub fn field_add(a: &FieldScalar, b: &FieldScalar) -> Result<FieldScalar> {
    a.same_field(b)?;
    Ok(a + b)
}

pub fn field_sub(a: &FieldScalar, b: &FieldScalar) -> Result<FieldScalar> {
    a.same_field(b)?;
    Ok(a - b)
}

pub fn field_mul(a: &FieldScalar, b: &FieldScalar) -> Result<FieldScalar> {
    a.same_field(b)?;
    Ok(a * b)
}

pub fn field_neg(a: &FieldScalar) -> FieldScalar {
    -a
}

pub fn field_inv(a: &FieldScalar) -> Result<FieldScalar> {
    a.inv()
}

/// Exact rational value of the n-th coefficient of `sqrt(1 + u)`:
/// `c_0 = 1`, `c_n = c_{n-1} (1/2 - (n-1)) / n`.
pub fn binomial_half_rational(n: u32) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    let mut c = BigRational::one();
    for j in 1..=n {
        let factor = &half - BigRational::from_integer(BigInt::from(j - 1));
        c = c * factor / BigRational::from_integer(BigInt::from(j));
    }
    c
}

/// The coefficient `a_n` of `sqrt(1 + u) = sum a_n u^n`, computed over the
/// rationals and then mapped into `descriptor`.
pub fn binomial_half(n: u32, descriptor: FieldDescriptor) -> Result<FieldScalar> {
    descriptor.from_rational(&binomial_half_rational(n))
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Prime { value, .. } => write!(f, "{value}"),
            FieldScalar::Rational(r) => write!(f, "{r}"),
        }
    }
}

fn expect_same(a: &FieldScalar, b: &FieldScalar) {
    assert_eq!(a.descriptor(), b.descriptor(), "field mismatch in scalar arithmetic");
}

impl Add for &FieldScalar {
    type Output = FieldScalar;

    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Prime { q, value: a }, FieldScalar::Prime { q: q2, value: b }) if q == q2 => {
                FieldScalar::Prime { q: *q, value: (a + b) % q }
            }
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            _ => {
                expect_same(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;

    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self + &(-rhs)
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;

    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Prime { q, value: a }, FieldScalar::Prime { q: q2, value: b }) if q == q2 => {
                FieldScalar::Prime { q: *q, value: mul_mod(*a, *b, *q) }
            }
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            _ => {
                expect_same(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Prime { q, value } => FieldScalar::Prime { q: *q, value: (q - value) % q },
            FieldScalar::Rational(r) => FieldScalar::Rational(-r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn rat(n: i64, d: i64) -> FieldScalar {
        FieldScalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn f3_addition_wraps() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        assert_eq!(field_add(&f3.from_i64(2), &f3.from_i64(2)).unwrap(), f3.from_i64(1));
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(field_inv(&rat(-1, 8)).unwrap(), rat(-8, 1));
    }

    #[test]
    fn f5_inverse_matches_search() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let two = f5.from_i64(2);
        let found = (0..5).map(|x| f5.from_i64(x)).find(|x| (&two * x).is_one()).unwrap();
        assert_eq!(field_inv(&two).unwrap(), found);
        assert_eq!(found, f5.from_i64(3));
    }

    #[test]
    fn errors() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        assert!(matches!(
            field_add(&f3.one(), &q().one()),
            Err(Error::MixedFields(..))
        ));
        assert_eq!(field_inv(&f3.zero()), Err(Error::DivisionByZero));
        assert_eq!(FieldDescriptor::prime(2), Err(Error::NotAnOddPrime(2)));
        assert_eq!(FieldDescriptor::prime(9), Err(Error::NotAnOddPrime(9)));
        let r = BigRational::new(1.into(), 3.into());
        assert!(matches!(f3.from_rational(&r), Err(Error::NonReducibleModQ { q: 3, .. })));
    }

    #[test]
    fn parse_descriptor() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), q());
        assert_eq!("F7".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::PrimeField(7));
        assert!("F4".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn binomial_half_first_values() {
        assert_eq!(binomial_half(0, q()).unwrap(), rat(1, 1));
        assert_eq!(binomial_half(1, q()).unwrap(), rat(1, 2));
        assert_eq!(binomial_half(2, q()).unwrap(), rat(-1, 8));
        assert_eq!(binomial_half(3, q()).unwrap(), rat(1, 16));
    }

    fn factorial(n: u32) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
    }

    #[test]
    fn binomial_half_matches_closed_form() {
        // (-1)^(n-1) (2n-2)! / (2^(2n-1) (n-1)! n!)
        for n in 1..=20u32 {
            let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
            let num = factorial(2 * n - 2) * sign;
            let den = (BigInt::one() << (2 * n - 1) as usize) * factorial(n - 1) * factorial(n);
            assert_eq!(binomial_half_rational(n), BigRational::new(num, den), "n = {n}");
        }
    }

    #[test]
    fn binomial_half_denominators_are_powers_of_two() {
        for n in 0..=60u32 {
            let mut d = binomial_half_rational(n).denom().clone();
            while d.is_even() {
                d /= 2;
            }
            assert!(d.is_one(), "n = {n}");
            for q in [3, 5, 7, 11, 13] {
                assert!(binomial_half(n, FieldDescriptor::prime(q).unwrap()).is_ok());
            }
        }
    }

    #[test]
    fn square_roots() {
        for q in [3u64, 5, 7, 13, 17, 41] {
            let f = FieldDescriptor::prime(q).unwrap();
            for a in 0..q {
                let x = f.from_u64(a);
                let brute = (0..q).any(|t| (&f.from_u64(t) * &f.from_u64(t)) == x);
                match x.sqrt() {
                    Some(r) => assert_eq!(&r * &r, x),
                    None => assert!(!brute, "missed root of {a} mod {q}"),
                }
            }
        }
        assert_eq!(rat(9, 4).sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt(), None);
        assert_eq!(rat(-1, 1).sqrt(), None);
    }
}
