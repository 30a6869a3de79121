//! Proptest generators shared by the property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crate::field::{FieldDescriptor, FieldScalar};
use crate::parse::PolyExpr;
use crate::series::{GradedSeries, Precision};

pub fn field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::Rationals),
        Just(FieldDescriptor::PrimeField(3)),
        Just(FieldDescriptor::PrimeField(5)),
        Just(FieldDescriptor::PrimeField(7)),
        Just(FieldDescriptor::PrimeField(101)),
    ]
}

pub fn prime_field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![Just(FieldDescriptor::PrimeField(3)), Just(FieldDescriptor::PrimeField(5))]
}

/// Small coefficients; over the rationals also `a/b` with `b <= 3`.
pub fn scalar(field: FieldDescriptor) -> impl Strategy<Value = FieldScalar> {
    (-4i64..=4, 1i64..=3).prop_map(move |(a, b)| match field {
        FieldDescriptor::Rationals => field.from_rational(&BigRational::new(a.into(), b.into())).unwrap(),
        _ => field.from_i64(a),
    })
}

pub fn nonzero_scalar(field: FieldDescriptor) -> impl Strategy<Value = FieldScalar> {
    scalar(field).prop_filter("nonzero", |c| !c.is_zero())
}

/// Exact polynomial in two variables with exponents below 4.
pub fn poly(field: FieldDescriptor) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(((0i64..4, 0i64..4), scalar(field)), 0..6).prop_map(move |terms| {
        GradedSeries::from_terms(field, 2, terms.into_iter().map(|((a, b), c)| (vec![a, b], c)), Precision::Exact)
    })
}

pub fn nonzero_poly(field: FieldDescriptor) -> impl Strategy<Value = GradedSeries> {
    poly(field).prop_filter("nonzero", |p| !p.is_exact_zero())
}

pub fn field_and_three_polys() -> impl Strategy<Value = (GradedSeries, GradedSeries, GradedSeries)> {
    field().prop_flat_map(|f| (poly(f), poly(f), poly(f)))
}

/// Homogeneous polynomial of degree `>= floor` (terms `T1^(floor+a) T2^b`).
pub fn tail(field: FieldDescriptor, floor: i64) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(((0i64..3, 0i64..3), scalar(field)), 0..4).prop_map(move |terms| {
        GradedSeries::from_terms(
            field,
            2,
            terms.into_iter().map(|((a, b), c)| (vec![floor + a, b], c)),
            Precision::Exact,
        )
    })
}

/// A polynomial known only modulo `m^π` for a random `π`.
pub fn truncated(field: FieldDescriptor) -> impl Strategy<Value = GradedSeries> {
    (poly(field), 1i64..9).prop_map(|(p, pi)| p.truncate_to(pi))
}

/// A unit `c + h` with `ord h >= 1`; `h` may have negative `T1` exponents
/// when `laurent` is set.
pub fn unit(field: FieldDescriptor, laurent: bool) -> impl Strategy<Value = GradedSeries> {
    let low = if laurent { -2i64 } else { 0 };
    (
        nonzero_scalar(field),
        prop::collection::vec(((low..3, 1i64..4), scalar(field)), 0..5),
    )
        .prop_map(move |(c, terms)| {
            // (a, d) encodes T1^a T2^(d - a), total degree d >= 1
            let terms = terms.into_iter().filter_map(|((a, d), s)| (d >= a).then(|| (vec![a, d - a], s)));
            let h = GradedSeries::from_terms(field, 2, terms, Precision::Exact);
            GradedSeries::constant(c, 2).add(&h).unwrap()
        })
}

/// A series whose lowest form is a single monomial `c T^e`.
pub fn monomial_led(field: FieldDescriptor) -> impl Strategy<Value = GradedSeries> {
    ((0i64..3, 0i64..3), nonzero_scalar(field), unit(field, false))
        .prop_map(|((a, b), c, u)| u.shift(&[a, b]).scale(&c))
}

fn expr_leaf(num_series_vars: usize, unknowns: usize) -> impl Strategy<Value = PolyExpr> {
    prop_oneof![
        (0u32..20).prop_map(|n| PolyExpr::Int(BigInt::from(n))),
        (0u32..20, 1u32..9).prop_map(|(a, b)| PolyExpr::Rational(a.into(), b.into())),
        (0..num_series_vars).prop_map(PolyExpr::SeriesVar),
        (0..unknowns).prop_map(PolyExpr::Unknown),
    ]
}

/// Random expression trees over `T1..TN` and `X1..Xn`.
pub fn expr(num_series_vars: usize, unknowns: usize) -> impl Strategy<Value = PolyExpr> {
    expr_leaf(num_series_vars, unknowns).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| PolyExpr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PolyExpr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, e)| PolyExpr::Pow(Box::new(a), e)),
        ]
    })
}
