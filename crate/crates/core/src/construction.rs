//! The explicit objects of the counterexample: Newton square roots, the
//! algebraic element `x_p = sqrt(T1^2 + T2^p)`, its truncations `x_{p,k}` and
//! the triples `(u_{p,k}, v_k, z_p)` with `u^2 - z v^2` of high order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{binomial_half, FieldDescriptor, FieldScalar};
use crate::series::{GradedSeries, Order, SeriesFraction};

/// Whether a measured order was asserted as an equality or only as a bound.
///
/// Over `F_q` a coefficient `a_k` may vanish mod `q`, which can only raise
/// the measured order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "eq")]
    Equality,
    #[serde(rename = "geq")]
    Bound,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Equality => "eq",
            Regime::Bound => "geq",
        }
    }

    /// Checks `measured` against `predicted` in this regime.
    pub fn holds(&self, measured: i64, predicted: i64) -> bool {
        match self {
            Regime::Equality => measured == predicted,
            Regime::Bound => measured >= predicted,
        }
    }
}

/// A root of `input` together with the precision it was verified to.
#[derive(Clone, Debug)]
pub struct SqrtWitness {
    pub input: GradedSeries,
    pub root: GradedSeries,
    /// `root^2 - input` has no terms below this degree.
    pub precision: i64,
}

/// Square root modulo `m^precision` by Newton iteration `r <- (r + f/r)/2`.
///
/// The input must be `c T^(2e) (1 + h)` with `ord(h) >= 1` and `c` a square
/// in the field. The root's lowest term is `sqrt(c) T^e` with the canonical
/// choice of `sqrt(c)`.
pub fn sqrt_newton(f: &GradedSeries, precision: i64) -> Result<SqrtWitness> {
    let field = f.field();
    let n = f.num_vars();
    if f.is_exact_zero() {
        return Ok(SqrtWitness { input: f.clone(), root: f.clone(), precision });
    }
    let lead = f.lowest_form()?.expect("nonzero series");
    let (e, c) = lead.as_monomial().ok_or(Error::NotASquareLeadingForm)?;
    if e.exponents().iter().any(|k| k % 2 != 0) {
        return Err(Error::NotASquareLeadingForm);
    }
    let root_c = c.sqrt().ok_or(Error::NotASquareLeadingForm)?;
    let half_e: Vec<i64> = e.exponents().iter().map(|k| k / 2).collect();
    let lead_degree = e.total_degree();
    // g = f / (c T^2e) = 1 + h
    let neg_e: Vec<i64> = e.exponents().iter().map(|k| -k).collect();
    let g = f.shift(&neg_e).scale(&c.inv()?);
    let target = precision - lead_degree;
    let half = field.from_i64(2).inv()?;

    let mut s = GradedSeries::one(field, n);
    let mut current = 1;
    while current < target {
        current = (2 * current).min(target);
        let inv = s.invert_unit(current)?;
        let quotient = g.truncate_to(current).mul(&inv)?;
        s = s.add(&quotient)?.scale(&half).truncate_to(current).to_exact();
    }
    let s = s.truncate_to(target.max(0));
    let root = s.shift(&half_e).scale(&root_c);
    Ok(SqrtWitness { input: f.clone(), root, precision })
}

/// `z_p = T1^2 + T2^p` in two variables.
pub fn z_p(p: u32, field: FieldDescriptor) -> GradedSeries {
    let t1sq = GradedSeries::monomial(field.one(), &[2, 0]);
    let t2p = GradedSeries::monomial(field.one(), &[0, p as i64]);
    &t1sq + &t2p
}

fn check_pk(p: u32, k: u32) -> Result<()> {
    if p <= 2 || k <= 2 {
        return Err(Error::BadParameters(format!("need p > 2 and k > 2, got p = {p}, k = {k}")));
    }
    Ok(())
}

/// Coefficients `a_0..a_{count-1}` in the field.
pub fn sqrt_coefficients(count: u32, field: FieldDescriptor) -> Result<Vec<FieldScalar>> {
    (0..count).map(|i| binomial_half(i, field)).collect()
}

/// `u_{p,k} = sum_{i<k} a_i T1^(2k-2-2i) T2^(ip)`.
pub fn u_pk(p: u32, k: u32, field: FieldDescriptor) -> Result<GradedSeries> {
    check_pk(p, k)?;
    let coeffs = sqrt_coefficients(k, field)?;
    let terms = coeffs.into_iter().enumerate().map(|(i, a)| {
        let i = i as i64;
        (vec![2 * k as i64 - 2 - 2 * i, i * p as i64], a)
    });
    Ok(GradedSeries::from_terms(field, 2, terms, crate::series::Precision::Exact))
}

/// `v_k = T1^(2k-3)`.
pub fn v_k(k: u32, field: FieldDescriptor) -> GradedSeries {
    GradedSeries::monomial(field.one(), &[2 * k as i64 - 3, 0])
}

/// `x_{p,k} = u_{p,k} / v_k` as a fraction of series in `O_2`.
pub fn build_xpk(p: u32, k: u32, field: FieldDescriptor) -> Result<SeriesFraction> {
    SeriesFraction::new(u_pk(p, k, field)?, v_k(k, field))
}

/// `x_{p,k} = T1 sum_{i<k} a_i T2^(ip) / T1^(2i)` as a Laurent-graded series.
pub fn xpk_laurent(p: u32, k: u32, field: FieldDescriptor) -> Result<GradedSeries> {
    check_pk(p, k)?;
    let coeffs = sqrt_coefficients(k, field)?;
    let terms = coeffs.into_iter().enumerate().map(|(i, a)| {
        let i = i as i64;
        (vec![1 - 2 * i, i * p as i64], a)
    });
    Ok(GradedSeries::from_terms(field, 2, terms, crate::series::Precision::Exact))
}

/// The root `x_p` of `X^2 - z_p`, known modulo `m^precision`.
pub fn x_p(p: u32, field: FieldDescriptor, precision: i64) -> Result<GradedSeries> {
    // r^2 correct to π+1 means r correct to π (ord r = 1)
    let w = sqrt_newton(&z_p(p, field), precision + 1)?;
    Ok(w.root)
}

/// Regime of the order identities for `(p, k)` in `field`: equality unless
/// `a_k` vanishes in the field.
pub fn regime_for(k: u32, field: FieldDescriptor) -> Result<Regime> {
    Ok(if binomial_half(k, field)?.is_zero() { Regime::Bound } else { Regime::Equality })
}

/// Measured `ord(x_p - x_{p,k})` with its predicted value `(p-2)k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootDistance {
    pub measured: i64,
    pub predicted: i64,
    pub regime: Regime,
}

impl RootDistance {
    pub fn holds(&self) -> bool {
        self.regime.holds(self.measured, self.predicted)
    }
}

/// `ord(x_p - x_{p,k})`, computed on Laurent-graded truncations at `precision`.
pub fn distance_to_root(p: u32, k: u32, precision: i64, field: FieldDescriptor) -> Result<RootDistance> {
    check_pk(p, k)?;
    let predicted = (p as i64 - 2) * k as i64 + 1;
    if precision <= predicted {
        return Err(Error::PrecisionTooLow { given: precision, needed: predicted });
    }
    let diff = x_p(p, field, precision)?.sub(&xpk_laurent(p, k, field)?)?;
    let measured = diff.ord()?.unwrap();
    Ok(RootDistance { measured, predicted, regime: regime_for(k, field)? })
}

/// Default working precision `(p+2)k - 2`.
pub fn default_precision(p: u32, k: u32) -> i64 {
    (p as i64 + 2) * k as i64 - 2
}

/// The triple `(u_{p,k}, v_k, z_p)` with predicted and measured orders.
#[derive(Clone, Debug)]
pub struct CounterexampleTriple {
    pub p: u32,
    pub k: u32,
    pub field: FieldDescriptor,
    pub u: GradedSeries,
    pub v: GradedSeries,
    pub z: GradedSeries,
    /// `(p+2)k - 4`.
    pub predicted_ord_p: i64,
    /// `2k - 3`.
    pub predicted_min_uv_ord: i64,
    /// `ord(u^2 - z v^2)`.
    pub measured_ord_p: i64,
    pub measured_min_uv_ord: i64,
    pub regime: Regime,
    pub precision: i64,
}

impl CounterexampleTriple {
    /// `u^2 - z v^2`, exact.
    pub fn residual(&self) -> GradedSeries {
        &(&self.u * &self.u) - &(&self.z * &(&self.v * &self.v))
    }

    pub fn ord_p_holds(&self) -> bool {
        self.regime.holds(self.measured_ord_p, self.predicted_ord_p)
    }

    pub fn min_uv_holds(&self) -> bool {
        self.measured_min_uv_ord == self.predicted_min_uv_ord
    }

    /// Checks `u^2 - z v^2 = (x_{p,k} - x_p)(x_{p,k} + x_p) v^2` term by term
    /// below the working precision.
    pub fn factorization_holds(&self) -> Result<bool> {
        let (p, k) = (self.p, self.k);
        // (x_pk - x_p) has order >= (p-2)k+1, (x_pk + x_p) order 1, v^2 order 4k-6
        let root_precision = self.precision - 4 * k as i64 + 5;
        let root = x_p(p, self.field, root_precision)?;
        let xpk = xpk_laurent(p, k, self.field)?;
        let rhs = xpk.sub(&root)?.mul(&xpk.add(&root)?)?.mul(&(&self.v * &self.v))?;
        let lhs = self.residual();
        Ok(rhs.precision().finite().is_some_and(|r| r >= self.precision) && lhs.agrees_with(&rhs))
    }
}

/// Builds `(u_{p,k}, v_k, z_p)` and measures `ord(u^2 - z v^2)`.
pub fn build_triple(p: u32, k: u32, field: FieldDescriptor, precision: i64) -> Result<CounterexampleTriple> {
    check_pk(p, k)?;
    let predicted_ord_p = (p as i64 + 2) * k as i64 - 4;
    if precision <= predicted_ord_p {
        return Err(Error::PrecisionTooLow { given: precision, needed: predicted_ord_p });
    }
    let u = u_pk(p, k, field)?;
    let v = v_k(k, field);
    let z = z_p(p, field);
    let residual = &(&u * &u) - &(&z * &(&v * &v));
    // z_p is not a square, so the residual is a nonzero polynomial
    let measured_ord_p = residual.ord()?.unwrap();
    let measured_min_uv_ord = match u.ord()?.min(v.ord()?) {
        Order::Finite(d) => d,
        Order::Infinite => unreachable!("v_k is a monomial"),
    };
    Ok(CounterexampleTriple {
        p,
        k,
        field,
        u,
        v,
        z,
        predicted_ord_p,
        predicted_min_uv_ord: 2 * k as i64 - 3,
        measured_ord_p,
        measured_min_uv_ord,
        regime: regime_for(k, field)?,
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Precision;
    use num_rational::BigRational;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn f3() -> FieldDescriptor {
        FieldDescriptor::prime(3).unwrap()
    }

    #[test]
    fn sqrt_of_one() {
        let one = GradedSeries::one(q(), 2);
        let w = sqrt_newton(&one, 6).unwrap();
        assert_eq!(w.root.to_exact(), one);
    }

    #[test]
    fn sqrt_of_z3_matches_expansion() {
        let w = sqrt_newton(&z_p(3, q()), 5).unwrap();
        assert_eq!(
            w.root.to_string(),
            "T1 + 1/2*T1^-1*T2^3 - 1/8*T1^-3*T2^6 + O(deg >= 4)"
        );
        let sq = w.root.mul(&w.root).unwrap();
        assert!(sq.sub(&w.input).unwrap().has_no_terms());
        assert_eq!(sq.precision(), Precision::Finite(5));
    }

    #[test]
    fn newton_coefficients_match_binomial_half() {
        // sqrt(1 + T1) over Q, up to T1^12
        let f = &GradedSeries::one(q(), 1) + &GradedSeries::variable(q(), 1, 0);
        let w = sqrt_newton(&f, 13).unwrap();
        for n in 0..=12u32 {
            let c = w.root.coefficient(&[n as i64]).cloned().unwrap_or(q().zero());
            assert_eq!(c, binomial_half(n, q()).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn sqrt_rejects_non_squares() {
        let two = GradedSeries::constant(q().from_i64(2), 1);
        assert_eq!(sqrt_newton(&two, 3).unwrap_err(), Error::NotASquareLeadingForm);
        let t = GradedSeries::variable(q(), 1, 0);
        assert_eq!(sqrt_newton(&t, 3).unwrap_err(), Error::NotASquareLeadingForm);
        // T1^2 + T2^2: lowest form has two terms
        let f = &GradedSeries::monomial(q().one(), &[2, 0]) + &GradedSeries::monomial(q().one(), &[0, 2]);
        assert_eq!(sqrt_newton(&f, 3).unwrap_err(), Error::NotASquareLeadingForm);
        let f3_two = GradedSeries::constant(f3().from_i64(2), 1);
        assert_eq!(sqrt_newton(&f3_two, 3).unwrap_err(), Error::NotASquareLeadingForm);
        assert!(matches!(
            sqrt_newton(&GradedSeries::zero_mod(q(), 1, 3), 3),
            Err(Error::IndeterminateOrder { .. })
        ));
    }

    #[test]
    fn sqrt_with_square_constant() {
        // 4 + 4 T1 = (2 sqrt(1+T1))^2
        let f = GradedSeries::from_terms(q(), 1, [(vec![0], q().from_i64(4)), (vec![1], q().from_i64(4))], Precision::Exact);
        let w = sqrt_newton(&f, 4).unwrap();
        assert_eq!(w.root.to_string(), "2 + T1 - 1/4*T1^2 + 1/8*T1^3 + O(deg >= 4)");
    }

    #[test]
    fn xpk_p3_k3() {
        let fr = build_xpk(3, 3, q()).unwrap();
        assert_eq!(fr.numerator.to_string(), "T1^4 + 1/2*T1^2*T2^3 - 1/8*T2^6");
        assert_eq!(fr.denominator.to_string(), "T1^3");
    }

    #[test]
    fn xpk_reduced_mod_3() {
        let fr = build_xpk(4, 3, f3()).unwrap();
        assert_eq!(fr.numerator.to_string(), "T1^4 + 2*T1^2*T2^4 + T2^8");
    }

    #[test]
    fn ord_u_sweep() {
        for p in 3..=8 {
            for k in 3..=8 {
                let fr = build_xpk(p, k, q()).unwrap();
                assert_eq!(fr.numerator.ord().unwrap(), Order::Finite(2 * k as i64 - 2));
                assert_eq!(fr.denominator.ord().unwrap(), Order::Finite(2 * k as i64 - 3));
                assert_eq!(fr.ord().unwrap(), Order::Finite(1));
                assert_eq!(fr.numerator.domain(), crate::series::DomainFlag::NonNegExponents);
            }
        }
    }

    #[test]
    fn xp_truncated_low() {
        let x = x_p(3, q(), 8).unwrap();
        assert_eq!(x.truncate(2).unwrap().to_string(), "T1 + O(deg >= 2)");
        // second term a_1 T1^-1 T2^p has order p - 1
        let second = x.homogeneous_component(2);
        assert_eq!(second.to_string(), "1/2*T1^-1*T2^3");
        assert_eq!(second.ord().unwrap(), Order::Finite(2));
    }

    #[test]
    fn distances() {
        assert_eq!(distance_to_root(4, 3, 9, q()).unwrap().measured, 7);
        assert_eq!(distance_to_root(3, 4, 9, q()).unwrap().measured, 5);
        let d = distance_to_root(4, 3, 9, f3()).unwrap();
        assert_eq!(d.regime, Regime::Equality);
        assert_eq!(d.measured, 7);
        assert_eq!(
            distance_to_root(4, 3, 7, q()).unwrap_err(),
            Error::PrecisionTooLow { given: 7, needed: 7 }
        );
        assert!(matches!(distance_to_root(2, 3, 9, q()), Err(Error::BadParameters(_))));
    }

    #[test]
    fn vanishing_coefficient_mod_3() {
        // a_6 = -Catalan(5)/2^11 = -42/2048 vanishes mod 3
        assert!(binomial_half(6, f3()).unwrap().is_zero());
        let d = distance_to_root(3, 6, 20, f3()).unwrap();
        assert_eq!(d.regime, Regime::Bound);
        assert!(d.measured > d.predicted);
        assert!(d.holds());
        let t = build_triple(3, 6, f3(), default_precision(3, 6)).unwrap();
        assert_eq!(t.regime, Regime::Bound);
        assert!(t.measured_ord_p > t.predicted_ord_p);
        // the excess equals the extra distance
        assert_eq!(t.measured_ord_p - t.predicted_ord_p, d.measured - d.predicted);
    }

    #[test]
    fn triples() {
        let t = build_triple(3, 3, q(), default_precision(3, 3)).unwrap();
        assert_eq!(t.measured_ord_p, 11);
        assert!(t.ord_p_holds());
        let t = build_triple(3, 5, q(), default_precision(3, 5)).unwrap();
        assert_eq!(t.measured_ord_p, 21);
        assert_eq!(t.measured_min_uv_ord, 7);
        assert!(t.factorization_holds().unwrap());
        assert_eq!(
            build_triple(3, 3, q(), 11).unwrap_err(),
            Error::PrecisionTooLow { given: 11, needed: 11 }
        );
    }

    #[test]
    fn factorization_sweep() {
        for p in 3..=6 {
            for k in 3..=6 {
                for field in [q(), f3(), FieldDescriptor::prime(5).unwrap()] {
                    let t = build_triple(p, k, field, default_precision(p, k)).unwrap();
                    assert!(t.factorization_holds().unwrap(), "p={p} k={k} {field}");
                }
            }
        }
    }

    #[test]
    fn residual_of_p3_k3() {
        // u^2 - z v^2 for p = k = 3: only the tail terms survive
        let t = build_triple(3, 3, q(), 20).unwrap();
        let expected = GradedSeries::from_terms(
            q(),
            2,
            [
                (vec![2, 9], FieldScalar::Rational(BigRational::new((-1).into(), 8.into()))),
                (vec![0, 12], FieldScalar::Rational(BigRational::new(1.into(), 64.into()))),
            ],
            Precision::Exact,
        );
        assert_eq!(t.residual(), expected);
    }
}
