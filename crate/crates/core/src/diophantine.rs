//! Approximation quality of `u/v` against the algebraic element `x_p`.
//!
//! For the family `Q_p(X) = X^2 - z_p` the truncations `x_{p,k} = u/v`
//! satisfy `ord(x_p - u/v) = (p/2 - 1) ord(v) + 3p/2 - 2`, so the exponent of
//! approximation grows with `p` although every `x_p` has degree 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::construction::{build_triple, distance_to_root, Regime};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::series::{GradedSeries, Order};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationRecord {
    pub p: u32,
    pub k: u32,
    pub ord_v: i64,
    pub ord_distance: i64,
    /// `p/2 - 1` as a reduced fraction.
    pub slope_pred: (i64, i64),
    /// `3p/2 - 2` as a reduced fraction.
    pub intercept_pred: (i64, i64),
    pub regime: Regime,
}

impl ApproximationRecord {
    /// `slope_pred * ord_v + intercept_pred`.
    pub fn predicted_distance(&self) -> BigRational {
        let slope = ratio(self.slope_pred);
        let intercept = ratio(self.intercept_pred);
        slope * BigRational::from_integer(self.ord_v.into()) + intercept
    }

    pub fn holds(&self) -> bool {
        let predicted = self.predicted_distance();
        let measured = BigRational::from_integer(self.ord_distance.into());
        match self.regime {
            Regime::Equality => measured == predicted,
            Regime::Bound => measured >= predicted,
        }
    }
}

fn ratio((n, d): (i64, i64)) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn reduced(n: i64, d: i64) -> (i64, i64) {
    let r = BigRational::new(n.into(), d.into());
    (r.numer().try_into().unwrap(), r.denom().try_into().unwrap())
}

/// Measures `ord(v_k)` and `ord(x_p - u_{p,k}/v_k)`.
pub fn measure_record(p: u32, k: u32, field: FieldDescriptor, precision: i64) -> Result<ApproximationRecord> {
    let d = distance_to_root(p, k, precision, field)?;
    Ok(ApproximationRecord {
        p,
        k,
        ord_v: 2 * k as i64 - 3,
        ord_distance: d.measured,
        slope_pred: reduced(p as i64 - 2, 2),
        intercept_pred: reduced(3 * p as i64 - 4, 2),
        regime: d.regime,
    })
}

/// Records for every `(p, k)` pair, in `p`-major order.
pub fn sweep(
    ps: impl IntoIterator<Item = u32>,
    ks: impl IntoIterator<Item = u32> + Clone,
    field: FieldDescriptor,
) -> Result<Vec<ApproximationRecord>> {
    use rayon::prelude::*;
    let pairs: Vec<(u32, u32)> = ps.into_iter().flat_map(|p| ks.clone().into_iter().map(move |k| (p, k))).collect();
    pairs
        .par_iter()
        .map(|&(p, k)| measure_record(p, k, field, crate::construction::default_precision(p, k)))
        .collect()
}

/// Exact least-squares line `y = a x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFit {
    pub a: BigRational,
    pub b: BigRational,
    /// `max |y - (a x + b)|` over the fitted points.
    pub residual_max: BigRational,
}

impl AffineFit {
    /// Upper bound check `y <= a x + b` at `x`.
    pub fn bounds(&self, x: i64, y: i64) -> bool {
        BigRational::from_integer(y.into()) <= &self.a * BigRational::from_integer(x.into()) + &self.b
    }
}

/// Least-squares affine fit by the normal equations, in exact arithmetic.
pub fn fit_affine(points: &[(i64, i64)]) -> Result<AffineFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateInput);
    }
    let n = BigInt::from(points.len());
    let (mut sx, mut sy, mut sxx, mut sxy) = (BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero());
    for &(x, y) in points {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        sx += &x;
        sy += &y;
        sxx += &x * &x;
        sxy += &x * &y;
    }
    let denom = &n * &sxx - &sx * &sx;
    if denom.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let a = BigRational::new(&n * &sxy - &sx * &sy, denom);
    let b = (BigRational::from_integer(sy) - &a * BigRational::from_integer(sx)) / BigRational::from_integer(n);
    let residual_max = points
        .iter()
        .map(|&(x, y)| {
            let fitted = &a * BigRational::from_integer(x.into()) + &b;
            (BigRational::from_integer(y.into()) - fitted).abs()
        })
        .max()
        .unwrap();
    Ok(AffineFit { a, b, residual_max })
}

/// Checks the two inequalities linking approximation quality to the order
/// of the homogenized polynomial, on one instance of `Q(X) = X^2 - z`:
///
/// * `ord(Q(u/v)) >= distance`
/// * `ord(P(u, v, z)) >= distance + d ord(v)` with `P = X^2 - Z Y^2`.
pub fn check_bridge_inequality(
    u: &GradedSeries,
    v: &GradedSeries,
    z: &GradedSeries,
    distance: Order,
    d: u32,
    ord_v: i64,
) -> Result<bool> {
    // P(u, v, z) = u^2 - z v^2, and Q(u/v) = P / v^2
    let ord_p = u.mul(u)?.sub(&z.mul(&v.mul(v)?)?)?.ord()?;
    let ord_q = match ord_p {
        Order::Finite(a) => Order::Finite(a - 2 * v.ord()?.unwrap()),
        Order::Infinite => Order::Infinite,
    };
    let shifted = match distance {
        Order::Finite(x) => Order::Finite(x + d as i64 * ord_v),
        Order::Infinite => Order::Infinite,
    };
    Ok(ord_q >= distance && ord_p >= shifted)
}

/// The bridge check on the constructed instance `(u_{p,k}, v_k, z_p)` with
/// its measured distance.
pub fn bridge_on_triple(p: u32, k: u32, field: FieldDescriptor) -> Result<bool> {
    let precision = crate::construction::default_precision(p, k);
    let t = build_triple(p, k, field, precision)?;
    let d = distance_to_root(p, k, precision, field)?;
    check_bridge_inequality(&t.u, &t.v, &t.z, Order::Finite(d.measured), 2, t.measured_min_uv_ord)
}
