//! Sparse multivariate series graded by total degree.
//!
//! A [`GradedSeries`] is a finite set of terms plus a precision: either
//! `Exact` (the terms are the whole element) or a cutoff `π` meaning the
//! element is only known modulo `m^π`, the `π`-th power of the maximal ideal.
//! Exponents may be negative, in which case the series lives in the
//! completion of the valuation ring along the exceptional divisor and its
//! order is still the total degree of its lowest term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};

/// Exponents of a monomial `T1^e1 ... TN^eN` with its cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exponents: Vec<i64>,
    total_degree: i64,
}

impl ExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        let total_degree = exponents.iter().sum();
        ExponentVector { exponents, total_degree }
    }

    pub fn zero(num_vars: usize) -> Self {
        ExponentVector::new(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn total_degree(&self) -> i64 {
        self.total_degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
            total_degree: self.total_degree + other.total_degree,
        }
    }

    pub fn neg(&self) -> Self {
        ExponentVector {
            exponents: self.exponents.iter().map(|e| -e).collect(),
            total_degree: -self.total_degree,
        }
    }
}

/// Graded lexicographic: by total degree first, then larger leading
/// exponents first (`T1^2 < T1*T2 < T2^2`).
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree
            .cmp(&other.total_degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cutoff of a series: terms of total degree `>= π` are unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    Finite(i64),
    Exact,
}

impl Precision {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Precision::Finite(p) => Some(*p),
            Precision::Exact => None,
        }
    }

    fn shift(self, by: i64) -> Precision {
        match self {
            Precision::Finite(p) => Precision::Finite(p + by),
            Precision::Exact => Precision::Exact,
        }
    }

    fn admits(&self, degree: i64) -> bool {
        match self {
            Precision::Finite(p) => degree < *p,
            Precision::Exact => true,
        }
    }
}

impl Ord for Precision {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Precision::Exact, Precision::Exact) => Ordering::Equal,
            (Precision::Exact, _) => Ordering::Greater,
            (_, Precision::Exact) => Ordering::Less,
            (Precision::Finite(a), Precision::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Precision {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Value of the order valuation; `Infinite` is the order of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Order::Finite(v) => Some(*v),
            Order::Infinite => None,
        }
    }

    /// The finite value, panicking on `Infinite`.
    pub fn unwrap(self) -> i64 {
        self.finite().expect("order is infinite")
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(v) => s.serialize_i64(*v),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DomainFlag {
    NonNegExponents,
    LaurentGraded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    field: FieldDescriptor,
    num_vars: usize,
    terms: BTreeMap<ExponentVector, FieldScalar>,
    precision: Precision,
    domain: DomainFlag,
}

impl GradedSeries {
    /// The exact zero series.
    pub fn zero(field: FieldDescriptor, num_vars: usize) -> Self {
        GradedSeries {
            field,
            num_vars,
            terms: BTreeMap::new(),
            precision: Precision::Exact,
            domain: DomainFlag::NonNegExponents,
        }
    }

    /// Zero modulo `m^precision`.
    pub fn zero_mod(field: FieldDescriptor, num_vars: usize, precision: i64) -> Self {
        GradedSeries { precision: Precision::Finite(precision), ..Self::zero(field, num_vars) }
    }

    pub fn one(field: FieldDescriptor, num_vars: usize) -> Self {
        Self::constant(field.one(), num_vars)
    }

    pub fn constant(c: FieldScalar, num_vars: usize) -> Self {
        Self::monomial(c, &vec![0; num_vars])
    }

    /// `c * T^exponents`, exact.
    pub fn monomial(c: FieldScalar, exponents: &[i64]) -> Self {
        let field = c.descriptor();
        Self::from_terms(field, exponents.len(), [(exponents.to_vec(), c)], Precision::Exact)
    }

    /// The variable `T_{index+1}`.
    pub fn variable(field: FieldDescriptor, num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Self::monomial(field.one(), &e)
    }

    /// Builds a series from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed, zeros and terms at or above the precision dropped.
    pub fn from_terms<I>(field: FieldDescriptor, num_vars: usize, terms: I, precision: Precision) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, FieldScalar)>,
    {
        let mut map: BTreeMap<ExponentVector, FieldScalar> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            assert_eq!(c.descriptor(), field, "coefficient field");
            let e = ExponentVector::new(e);
            if !precision.admits(e.total_degree()) {
                continue;
            }
            accumulate(&mut map, e, c);
        }
        let domain = if map.keys().all(ExponentVector::is_nonnegative) {
            DomainFlag::NonNegExponents
        } else {
            DomainFlag::LaurentGraded
        };
        GradedSeries { field, num_vars, terms: map, precision, domain }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn domain(&self) -> DomainFlag {
        self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> Option<&FieldScalar> {
        self.terms.get(&ExponentVector::new(exponents.to_vec()))
    }

    pub fn is_exact(&self) -> bool {
        self.precision == Precision::Exact
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// No stored terms (zero, possibly only modulo the precision).
    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    /// The m-adic order: minimum total degree of the stored terms.
    pub fn ord(&self) -> Result<Order> {
        match self.terms.keys().next() {
            Some(e) => Ok(Order::Finite(e.total_degree())),
            None => match self.precision {
                Precision::Exact => Ok(Order::Infinite),
                Precision::Finite(p) => Err(Error::IndeterminateOrder { precision: p }),
            },
        }
    }

    /// The order if determinate, otherwise the precision; `None` for exact zero.
    pub fn ord_low(&self) -> Option<i64> {
        match self.terms.keys().next() {
            Some(e) => Some(e.total_degree()),
            None => self.precision.finite(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.to_string(), other.field.to_string()));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    fn join_domain(&self, other: &Self) -> DomainFlag {
        if self.domain == DomainFlag::NonNegExponents && other.domain == DomainFlag::NonNegExponents {
            DomainFlag::NonNegExponents
        } else {
            DomainFlag::LaurentGraded
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let precision = self.precision.min(other.precision);
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if precision.admits(e.total_degree()) {
                accumulate(&mut terms, e.clone(), c.clone());
            }
        }
        Ok(GradedSeries { terms, precision, domain: self.join_domain(other), ..self.shell() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let domain = self.join_domain(other);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(GradedSeries { domain, ..self.shell() });
        }
        // both sides now have a finite ord_low
        let lhs = self.precision.shift(other.ord_low().unwrap());
        let rhs = other.precision.shift(self.ord_low().unwrap());
        let precision = lhs.min(rhs);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if !precision.admits(ea.total_degree() + eb.total_degree()) {
                    // terms are sorted by degree, later ones only get bigger
                    break;
                }
                accumulate(&mut terms, ea.add(eb), ca * cb);
            }
        }
        Ok(GradedSeries { terms, precision, domain, ..self.shell() })
    }

    pub fn neg(&self) -> Self {
        GradedSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        if c.is_zero() {
            return GradedSeries { terms: BTreeMap::new(), ..self.clone() };
        }
        GradedSeries {
            terms: self.terms.iter().map(|(e, t)| (e.clone(), t * c)).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by the monomial `T^shift`; precision moves with the degree.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let s = ExponentVector::new(shift.to_vec());
        let terms: BTreeMap<_, _> = self.terms.iter().map(|(e, c)| (e.add(&s), c.clone())).collect();
        let domain = if self.domain == DomainFlag::NonNegExponents && terms.keys().all(ExponentVector::is_nonnegative) {
            DomainFlag::NonNegExponents
        } else {
            DomainFlag::LaurentGraded
        };
        GradedSeries { terms, precision: self.precision.shift(s.total_degree()), domain, ..self.shell() }
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut acc = GradedSeries::one(self.field, self.num_vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Drops the terms of total degree `>= precision`.
    pub fn truncate(&self, precision: i64) -> Result<Self> {
        if let Precision::Finite(current) = self.precision {
            if precision > current {
                return Err(Error::PrecisionIncrease { current, requested: precision });
            }
        }
        Ok(self.truncate_to(precision))
    }

    /// Like [`truncate`](Self::truncate), but keeps the current precision if
    /// it is already below `precision`.
    pub fn truncate_to(&self, precision: i64) -> Self {
        let precision = Precision::Finite(precision).min(self.precision);
        GradedSeries {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| precision.admits(e.total_degree()))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            precision,
            ..self.clone()
        }
    }

    /// The same terms, declared exact.
    pub fn to_exact(&self) -> Self {
        GradedSeries { precision: Precision::Exact, ..self.clone() }
    }

    /// Homogeneous part of total degree `degree`, as an exact series.
    pub fn homogeneous_component(&self, degree: i64) -> Self {
        GradedSeries {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            precision: Precision::Exact,
            ..self.clone()
        }
    }

    /// The homogeneous part of lowest degree; `None` for exact zero.
    pub fn lowest_form(&self) -> Result<Option<Self>> {
        match self.ord()? {
            Order::Finite(d) => Ok(Some(self.homogeneous_component(d))),
            Order::Infinite => Ok(None),
        }
    }

    /// If the series is a single term, returns it.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &FieldScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True if both series have the same terms below their common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let precision = self.precision.min(other.precision);
        let a = self.terms.iter().filter(|(e, _)| precision.admits(e.total_degree()));
        let b = other.terms.iter().filter(|(e, _)| precision.admits(e.total_degree()));
        a.eq(b)
    }

    /// Inverse of a unit, correct modulo `m^target_precision`.
    ///
    /// A unit has order 0 and a single degree-0 term `c T^e` (with `e = 0`
    /// for elements of `O_N`). Computed by Newton iteration
    /// `g <- g (2 - f g)`, doubling the precision each step.
    pub fn invert_unit(&self, target_precision: i64) -> Result<Self> {
        if self.ord()? != Order::Finite(0) {
            return Err(Error::NotAUnit);
        }
        let lead = self.homogeneous_component(0);
        let (e, c) = lead.as_monomial().ok_or(Error::NotAUnit)?;
        let target = Precision::Finite(target_precision).min(self.precision).finite().unwrap_or(target_precision);
        let mut g = GradedSeries::monomial(c.inv()?, e.neg().exponents());
        if target <= 1 {
            return Ok(g.truncate_to(target));
        }
        let two = GradedSeries::constant(self.field.from_i64(2), self.num_vars);
        let mut current = 1;
        while current < target {
            current = (2 * current).min(target);
            let f = self.truncate_to(current);
            let fg = f.mul(&g)?;
            g = g.mul(&two.sub(&fg)?)?.truncate_to(current).to_exact();
        }
        let mut g = g.truncate_to(target);
        if self.domain == DomainFlag::LaurentGraded {
            g.domain = DomainFlag::LaurentGraded;
        }
        Ok(g)
    }

    fn shell(&self) -> Self {
        GradedSeries {
            field: self.field,
            num_vars: self.num_vars,
            terms: BTreeMap::new(),
            precision: Precision::Exact,
            domain: self.domain,
        }
    }
}

/// Exponent vectors of total degree `degree` in `num_vars` variables, in the
/// canonical order (larger leading exponents first).
pub fn monomials_of_degree(num_vars: usize, degree: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, left: usize, remaining: i64, out: &mut Vec<Vec<i64>>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 || degree < 0 {
        return out;
    }
    rec(&mut Vec::with_capacity(num_vars), num_vars, degree, &mut out);
    out
}

fn accumulate(map: &mut BTreeMap<ExponentVector, FieldScalar>, e: ExponentVector, c: FieldScalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(existing) => {
            let sum = &*existing + &c;
            if sum.is_zero() {
                map.remove(&e);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

/// Writes `T1^2*T2^-1` (variables with exponent 0 are omitted).
fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.exponents().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "T{}", i + 1)?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms in graded-lex order, e.g.
/// `T1^4 + 1/2*T1^2*T2^3 - 1/8*T2^6 + O(deg >= 9)`.
impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_constant = e.exponents().iter().all(|&k| k == 0);
            if is_constant {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        if let Precision::Finite(p) = self.precision {
            write!(f, " + O(deg >= {p})")?;
        }
        Ok(())
    }
}

impl Add for &GradedSeries {
    type Output = GradedSeries;

    /// Panics if the operands are incompatible; see [`GradedSeries::add`].
    fn add(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::add(self, rhs).expect("incompatible series")
    }
}

impl Sub for &GradedSeries {
    type Output = GradedSeries;

    fn sub(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::sub(self, rhs).expect("incompatible series")
    }
}

impl Mul for &GradedSeries {
    type Output = GradedSeries;

    fn mul(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::mul(self, rhs).expect("incompatible series")
    }
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;

    fn neg(self) -> GradedSeries {
        GradedSeries::neg(self)
    }
}

/// A pair `numerator / denominator` of series with nonnegative exponents,
/// standing for an element of the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesFraction {
    pub numerator: GradedSeries,
    pub denominator: GradedSeries,
}

impl SeriesFraction {
    pub fn new(numerator: GradedSeries, denominator: GradedSeries) -> Result<Self> {
        numerator.check_compatible(&denominator)?;
        if denominator.ord()? == Order::Infinite {
            return Err(Error::DivisionByZero);
        }
        Ok(SeriesFraction { numerator, denominator })
    }

    /// `ord(numerator) - ord(denominator)`.
    pub fn ord(&self) -> Result<Order> {
        match (self.numerator.ord()?, self.denominator.ord()?) {
            (Order::Infinite, _) => Ok(Order::Infinite),
            (Order::Finite(a), Order::Finite(b)) => Ok(Order::Finite(a - b)),
            (Order::Finite(_), Order::Infinite) => Err(Error::DivisionByZero),
        }
    }

    /// Membership in the valuation ring: `ord(numerator) >= ord(denominator)`.
    pub fn in_valuation_ring(&self) -> Result<bool> {
        Ok(self.ord()? >= Order::Finite(0))
    }

    /// The quotient as a Laurent-graded series, known modulo `m^precision`.
    ///
    /// Requires the lowest form of the denominator to be a single monomial.
    pub fn to_graded(&self, precision: i64) -> Result<GradedSeries> {
        let lead = self.denominator.lowest_form()?.ok_or(Error::DivisionByZero)?;
        let (e, c) = lead.as_monomial().ok_or(Error::NotAUnit)?;
        let num_ord = self.numerator.ord_low().unwrap_or(precision);
        let shift = e.neg();
        // denominator = c T^e (1 + h); the quotient has order num_ord - deg(e)
        let unit = self.denominator.shift(shift.exponents()).scale(&c.inv()?);
        let relative = precision - (num_ord - e.total_degree());
        let inv = unit.invert_unit(relative.max(0))?;
        let q = self.numerator.shift(shift.exponents()).scale(&c.inv()?).mul(&inv)?;
        Ok(q.truncate_to(precision))
    }
}

/// `ord(numerator) - ord(denominator)` for a fraction.
pub fn fraction_reduce_ord(fr: &SeriesFraction) -> Result<Order> {
    fr.ord()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn rat(n: i64, d: i64) -> FieldScalar {
        FieldScalar::Rational(BigRational::new(n.into(), d.into()))
    }

    fn t(e: &[i64]) -> GradedSeries {
        GradedSeries::monomial(q().one(), e)
    }

    #[test]
    fn ord_basic() {
        let f = &t(&[2, 1]) + &t(&[4, 0]);
        assert_eq!(f.ord().unwrap(), Order::Finite(3));
        assert_eq!(GradedSeries::zero(q(), 2).ord().unwrap(), Order::Infinite);
        let laurent = GradedSeries::monomial(rat(1, 2), &[-1, 3]);
        assert_eq!(laurent.ord().unwrap(), Order::Finite(2));
        assert_eq!(laurent.domain(), DomainFlag::LaurentGraded);
        assert_eq!(
            GradedSeries::zero_mod(q(), 2, 4).ord(),
            Err(Error::IndeterminateOrder { precision: 4 })
        );
    }

    #[test]
    fn precision_rule_for_products() {
        let one = GradedSeries::one(q(), 1).truncate(2).unwrap();
        let x = GradedSeries::variable(q(), 1, 0).truncate(3).unwrap();
        let prod = one.mul(&x).unwrap();
        assert_eq!(prod.precision(), Precision::Finite(3));
        assert_eq!(prod.to_string(), "T1 + O(deg >= 3)");
    }

    #[test]
    fn difference_of_squares() {
        let a = t(&[1, 0]);
        let b = t(&[0, 1]);
        let prod = (&a + &b).mul(&(&a - &b)).unwrap();
        assert_eq!(prod, &t(&[2, 0]) - &t(&[0, 2]));
        assert_eq!(prod.to_string(), "T1^2 - T2^2");
    }

    #[test]
    fn errors_on_mixed_operands() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = GradedSeries::one(q(), 2);
        assert!(matches!(a.add(&GradedSeries::one(f3, 2)), Err(Error::MixedFields(..))));
        assert_eq!(a.mul(&GradedSeries::one(q(), 3)), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn invert_examples() {
        let one = GradedSeries::one(q(), 1);
        assert_eq!(one.invert_unit(5).unwrap().to_exact(), one);

        let f = &one + &GradedSeries::variable(q(), 1, 0);
        let g = f.invert_unit(3).unwrap();
        assert_eq!(g.to_string(), "1 - T1 + T1^2 + O(deg >= 3)");

        let h = &GradedSeries::one(q(), 2) + &t(&[1, 1]);
        let g = h.invert_unit(4).unwrap();
        assert_eq!(g.to_string(), "1 - T1*T2 + O(deg >= 4)");
        let back = h.mul(&g).unwrap();
        assert_eq!(back.to_string(), "1 + O(deg >= 4)");
        // the degree-4 term of the inverse appears one step later
        assert_eq!(h.invert_unit(5).unwrap().to_string(), "1 - T1*T2 + T1^2*T2^2 + O(deg >= 5)");

        assert_eq!(t(&[1, 0]).invert_unit(3), Err(Error::NotAUnit));
        // two degree-0 monomials: not invertible by a monomial lead
        let two_lead = &t(&[0, 0]) + &t(&[1, -1]);
        assert_eq!(two_lead.invert_unit(3), Err(Error::NotAUnit));
    }

    #[test]
    fn invert_laurent_unit() {
        let f = &GradedSeries::one(q(), 2) + &t(&[-2, 3]);
        let g = f.invert_unit(4).unwrap();
        let back = f.mul(&g).unwrap();
        assert_eq!(back.to_string(), "1 + O(deg >= 4)");
        assert_eq!(g.to_string(), "1 - T1^-2*T2^3 + T1^-4*T2^6 - T1^-6*T2^9 + O(deg >= 4)");
    }

    #[test]
    fn truncate_examples() {
        let x = GradedSeries::variable(q(), 1, 0);
        let f = &(&GradedSeries::one(q(), 1) + &x) + &x.pow(2).unwrap();
        assert_eq!(f.truncate(2).unwrap().to_string(), "1 + T1 + O(deg >= 2)");
        assert_eq!(GradedSeries::zero(q(), 2).truncate(5).unwrap().to_string(), "0 + O(deg >= 5)");
        assert_eq!(
            f.truncate(2).unwrap().truncate(3),
            Err(Error::PrecisionIncrease { current: 2, requested: 3 })
        );
    }

    #[test]
    fn fraction_orders() {
        let fr = SeriesFraction::new(t(&[2, 0]), t(&[1, 0])).unwrap();
        assert_eq!(fraction_reduce_ord(&fr).unwrap(), Order::Finite(1));
        let v = t(&[3, 0]);
        let fr = SeriesFraction::new(v.clone(), v).unwrap();
        assert_eq!(fraction_reduce_ord(&fr).unwrap(), Order::Finite(0));
        assert!(fr.in_valuation_ring().unwrap());
        let bad = SeriesFraction::new(t(&[1, 0]), GradedSeries::zero_mod(q(), 2, 3)).unwrap_err();
        assert_eq!(bad, Error::IndeterminateOrder { precision: 3 });
    }

    #[test]
    fn fraction_to_graded() {
        // (T1^2 + T2^3) / T1 = T1 + T1^-1 T2^3
        let fr = SeriesFraction::new(&t(&[2, 0]) + &t(&[0, 3]), t(&[1, 0])).unwrap();
        let g = fr.to_graded(6).unwrap();
        assert_eq!(g.to_string(), "T1 + T1^-1*T2^3 + O(deg >= 6)");
        // T1 / (T1 + T2) has infinitely many degree-0 terms
        let fr = SeriesFraction::new(t(&[1, 0]), &t(&[1, 0]) + &t(&[0, 1])).unwrap();
        assert_eq!(fr.to_graded(1), Err(Error::NotAUnit));
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(monomials_of_degree(1, 4), vec![vec![4]]);
        let m = monomials_of_degree(3, 3);
        assert_eq!(m.len(), 10);
        let sorted: Vec<_> = m.iter().map(|e| ExponentVector::new(e.clone())).collect();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rendering() {
        let f = GradedSeries::from_terms(
            q(),
            2,
            [(vec![2, 3], rat(1, 2)), (vec![0, 0], rat(-3, 1)), (vec![1, 1], rat(1, 1))],
            Precision::Finite(7),
        );
        assert_eq!(f.to_string(), "-3 + T1*T2 + 1/2*T1^2*T2^3 + O(deg >= 7)");
    }
}
