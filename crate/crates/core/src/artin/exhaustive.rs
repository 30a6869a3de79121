//! Exhaustive search of `sup_t ord(z - t^2)` over square-root candidates of
//! bounded degree, independent of the linear-algebra lifting.
//!
//! `t` is built one homogeneous component at a time. Once `t_0..t_j` are
//! fixed, every component of `z - t^2` of degree `<= j` is final, and so is
//! degree `j + 1` when `t_0 = 0`; a subtree whose final part is already
//! nonzero has a known order and is not expanded.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::series::{monomials_of_degree, GradedSeries, Precision};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveResult {
    pub max_order: i64,
    /// True if `max_order` is only a lower bound: some candidate agreed with
    /// `z` on every degree the search could decide.
    pub saturated: bool,
    pub best_t: GradedSeries,
    /// Homogeneous components tried.
    pub candidates: u64,
}

/// Coefficients tried for each monomial: all of `F_q`, or
/// `{0, ±1, ±2, ±1/2}` over the rationals.
pub fn coefficient_box(field: FieldDescriptor) -> Vec<FieldScalar> {
    match field.size() {
        Some(q) => (0..q).map(|v| field.from_u64(v)).collect(),
        None => {
            let half = BigRational::new(1.into(), 2.into());
            let mut out = vec![field.zero()];
            for r in [BigRational::from_integer(1.into()), BigRational::from_integer(2.into()), half] {
                out.push(field.from_rational(&r).unwrap());
                out.push(field.from_rational(&-r).unwrap());
            }
            out
        }
    }
}

struct Search<'a> {
    z: &'a GradedSeries,
    coefficients: Vec<FieldScalar>,
    degree_bound: i64,
    budget: u64,
    candidates: u64,
    best: Option<(i64, bool, GradedSeries)>,
}

/// Degree-`d` component of `z - (t + h)^2` as a linear-plus-quadratic
/// function of the coefficients of `h`, given that `z - t^2` vanishes below `d`.
struct Component {
    degree: i64,
    /// `(z - t^2)_d`, indexed by the monomials of degree `d`.
    target: Vec<FieldScalar>,
    /// `(h monomial, coefficient of 2t, output monomial)`.
    linear: Vec<(usize, FieldScalar, usize)>,
    /// `(h monomial, h monomial, output monomial)` when `2 deg h = d`.
    quadratic: Vec<(usize, usize, usize)>,
}

impl Component {
    fn new(field: FieldDescriptor, n: usize, t: &GradedSeries, residual: &GradedSeries, degree: i64, hdeg: i64) -> Self {
        let out = monomials_of_degree(n, degree);
        let index = |e: &[i64]| out.iter().position(|m| m.as_slice() == e).unwrap();
        let hmons = monomials_of_degree(n, hdeg);
        let mut target = vec![field.zero(); out.len()];
        for (e, c) in residual.homogeneous_component(degree).terms() {
            target[index(e.exponents())] = c.clone();
        }
        let two = field.from_i64(2);
        let mut linear = Vec::new();
        for (e, c) in t.homogeneous_component(degree - hdeg).terms() {
            for (mi, m) in hmons.iter().enumerate() {
                let prod: Vec<i64> = e.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                linear.push((mi, &two * c, index(&prod)));
            }
        }
        let mut quadratic = Vec::new();
        if 2 * hdeg == degree {
            for (a, ma) in hmons.iter().enumerate() {
                for (b, mb) in hmons.iter().enumerate() {
                    let prod: Vec<i64> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                    quadratic.push((a, b, index(&prod)));
                }
            }
        }
        Component { degree, target, linear, quadratic }
    }

    /// True if `(z - (t + h)^2)_d` vanishes.
    fn vanishes(&self, h: &[&FieldScalar]) -> bool {
        let mut acc = self.target.clone();
        for (mi, c, o) in &self.linear {
            if !h[*mi].is_zero() {
                acc[*o] = &acc[*o] - &(c * h[*mi]);
            }
        }
        for (a, b, o) in &self.quadratic {
            if !h[*a].is_zero() && !h[*b].is_zero() {
                acc[*o] = &acc[*o] - &(h[*a] * h[*b]);
            }
        }
        acc.iter().all(FieldScalar::is_zero)
    }
}

impl Search<'_> {
    fn record(&mut self, order: i64, saturated: bool, t: &GradedSeries) {
        let better = match &self.best {
            None => true,
            Some((o, _, _)) => order > *o,
        };
        if better {
            self.best = Some((order, saturated, t.clone()));
        }
    }

    /// `t` holds components below `degree`, `residual = z - t^2` vanishes in
    /// degrees `<= decided`.
    fn expand(&mut self, t: &GradedSeries, residual: &GradedSeries, degree: i64, decided: i64, t0_zero: bool) -> Result<()> {
        let field = self.z.field();
        let n = self.z.num_vars();
        let monomials = monomials_of_degree(n, degree);
        // candidates keeping t_0 = 0 decide one degree further
        let reach = if t0_zero { degree + 1 } else { degree };
        let components: Vec<Component> =
            ((decided + 1)..=reach).map(|d| Component::new(field, n, t, residual, d, degree)).collect();
        let mut digits = vec![0usize; monomials.len()];
        loop {
            self.candidates += 1;
            if self.candidates > self.budget {
                return Err(Error::BudgetExceeded { needed: self.candidates as u128, budget: self.budget });
            }
            let h: Vec<&FieldScalar> = digits.iter().map(|&d| &self.coefficients[d]).collect();
            let still_zero = t0_zero && (degree > 0 || h.iter().all(|c| c.is_zero()));
            let now_decided = if still_zero { degree + 1 } else { degree };
            let failing = components.iter().take_while(|c| c.degree <= now_decided).find(|c| !c.vanishes(&h));
            let next_t = || {
                t.add(&GradedSeries::from_terms(
                    field,
                    n,
                    monomials.iter().zip(&h).map(|(m, c)| (m.clone(), (*c).clone())),
                    Precision::Exact,
                ))
            };
            match failing {
                Some(c) => {
                    let order = c.degree;
                    if self.best.as_ref().is_none_or(|(o, _, _)| order > *o) {
                        self.record(order, false, &next_t()?);
                    }
                }
                None if degree == self.degree_bound => self.record(now_decided + 1, true, &next_t()?),
                None => {
                    let next_t = next_t()?;
                    let next_r = self.z.sub(&next_t.mul(&next_t)?)?;
                    self.expand(&next_t, &next_r, degree + 1, now_decided, still_zero)?;
                }
            }
            if !advance(&mut digits, self.coefficients.len()) {
                return Ok(());
            }
        }
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Maximizes `ord(z - t^2)` over `t` of degree `<= degree_bound` with
/// coefficients in [`coefficient_box`].
pub fn exhaustive_square_search(z: &GradedSeries, degree_bound: i64, budget: u64) -> Result<ExhaustiveResult> {
    if !z.is_exact() || degree_bound < 0 {
        return Err(Error::BadParameters("exhaustive search needs an exact series and a degree bound".into()));
    }
    let mut search = Search {
        z,
        coefficients: coefficient_box(z.field()),
        degree_bound,
        budget,
        candidates: 0,
        best: None,
    };
    let zero = GradedSeries::zero(z.field(), z.num_vars());
    search.expand(&zero, z, 0, -1, true)?;
    let (max_order, saturated, best_t) = search.best.expect("at least one candidate");
    Ok(ExhaustiveResult { max_order, saturated, best_t, candidates: search.candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::obstruction::square_obstruction;
    use crate::construction::z_p;

    #[test]
    fn z_p_small() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        for p in 3..=5 {
            let r = exhaustive_square_search(&z_p(p, f3), p as i64, 10_000_000).unwrap();
            assert_eq!(r.max_order, p as i64);
            assert!(!r.saturated);
            assert_eq!(square_obstruction(p, f3, 20).unwrap().max_order, r.max_order);
        }
    }

    #[test]
    fn saturates_on_squares() {
        let q = FieldDescriptor::Rationals;
        let t1 = GradedSeries::variable(q, 2, 0);
        let t2 = GradedSeries::variable(q, 2, 1);
        let t = &t1 + &t2;
        let r = exhaustive_square_search(&(&t * &t), 2, 1_000_000).unwrap();
        assert!(r.saturated);
        assert_eq!(r.max_order, 4);
    }

    #[test]
    fn budget_checked() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert!(matches!(exhaustive_square_search(&z_p(5, f5), 5, 100), Err(Error::BudgetExceeded { .. })));
        assert_eq!(coefficient_box(FieldDescriptor::Rationals).len(), 7);
    }
}
