//! How well a series can be approximated by squares.
//!
//! Greedy homogeneous lifting: keep `t` with `ord(z - t^2) = d` and solve
//! `2 t_low h = (z - t^2)_d` for a homogeneous `h`. Multiplication by
//! `t_low` is injective, so each correction is unique and the first
//! infeasible system certifies `sup_t ord(z - t^2) = d`.

use crate::construction::z_p;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::series::{monomials_of_degree, GradedSeries, Order, Precision};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    /// `ord(z - best_t^2)`, the supremum over all `t`.
    pub max_order: i64,
    pub best_t: GradedSeries,
    /// Degree of the homogeneous correction whose linear system is infeasible.
    pub obstruction_degree: i64,
    /// `z - best_t^2`.
    pub residual: GradedSeries,
}

/// Square root of a homogeneous polynomial, if it is a square.
pub fn form_sqrt(f: &GradedSeries) -> Option<GradedSeries> {
    let field = f.field();
    let n = f.num_vars();
    let (e0, c0) = f.terms().next()?;
    if e0.exponents().iter().any(|e| e % 2 != 0) {
        return None;
    }
    let half: Vec<i64> = e0.exponents().iter().map(|e| e / 2).collect();
    let root_c = c0.sqrt()?;
    let two_lead = &field.from_i64(2) * &root_c;
    let mut g = GradedSeries::monomial(root_c, &half);
    // each step removes the lex-largest term of the remainder
    for _ in 0..=monomials_of_degree(n, e0.total_degree()).len() {
        let r = f.sub(&g.mul(&g).ok()?).ok()?;
        let Some((e, c)) = r.terms().next() else {
            return Some(g);
        };
        let m: Vec<i64> = e.exponents().iter().zip(&half).map(|(a, b)| a - b).collect();
        if m.iter().any(|&x| x < 0) || m >= half {
            return None;
        }
        let coeff = c * &two_lead.inv().ok()?;
        g = g.add(&GradedSeries::monomial(coeff, &m)).ok()?;
    }
    None
}

/// Solves `A x = b` by Gaussian elimination; free variables are set to zero.
pub fn solve_linear(field: FieldDescriptor, a: &[Vec<FieldScalar>], b: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<FieldScalar>> =
        a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().ok()?;
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (pivot_row, row) = (rows[r].clone(), &mut rows[i]);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][cols].clone();
    }
    Some(x)
}

/// Homogeneous `h` of degree `degree` with `lead * h = target`, if any.
fn divide_form(lead: &GradedSeries, target: &GradedSeries, degree: i64) -> Option<GradedSeries> {
    let field = lead.field();
    let n = lead.num_vars();
    let unknowns = monomials_of_degree(n, degree);
    let equations = monomials_of_degree(n, degree + lead.ord().ok()?.finite()?);
    let row_of = |e: &[i64]| equations.iter().position(|m| m.as_slice() == e);
    let mut a = vec![vec![field.zero(); unknowns.len()]; equations.len()];
    for (j, m) in unknowns.iter().enumerate() {
        for (e, c) in lead.terms() {
            let prod: Vec<i64> = e.exponents().iter().zip(m).map(|(x, y)| x + y).collect();
            a[row_of(&prod)?][j] = c.clone();
        }
    }
    let mut b = vec![field.zero(); equations.len()];
    for (e, c) in target.terms() {
        b[row_of(e.exponents())?] = c.clone();
    }
    let x = solve_linear(field, &a, &b)?;
    Some(GradedSeries::from_terms(field, n, unknowns.into_iter().zip(x), Precision::Exact))
}

/// Certifies `sup_t ord(z - t^2)` for an exact series `z` in `O_N`, searching
/// below `max_search_order`.
pub fn square_obstruction_of(z: &GradedSeries, max_search_order: i64) -> Result<ObstructionCertificate> {
    if z.field().characteristic() == 2 {
        return Err(Error::BadParameters("characteristic 2".into()));
    }
    let field = z.field();
    let n = z.num_vars();
    let ord_z = match z.ord()? {
        Order::Finite(d) => d,
        Order::Infinite => return Err(Error::SearchBudgetExceeded(max_search_order)),
    };
    let Some(mut t) = form_sqrt(&z.homogeneous_component(ord_z)) else {
        // no t^2 can cancel the lowest form
        return Ok(ObstructionCertificate {
            max_order: ord_z,
            best_t: GradedSeries::zero(field, n),
            obstruction_degree: ord_z,
            residual: z.clone(),
        });
    };
    let lead = t.scale(&field.from_i64(2));
    let e = ord_z / 2;
    loop {
        let residual = z.sub(&t.mul(&t)?)?;
        let d = match residual.ord()? {
            Order::Finite(d) if d < max_search_order => d,
            _ => return Err(Error::SearchBudgetExceeded(max_search_order)),
        };
        match divide_form(&lead, &residual.homogeneous_component(d), d - e) {
            Some(h) => t = t.add(&h)?,
            None => {
                return Ok(ObstructionCertificate { max_order: d, best_t: t, obstruction_degree: d - e, residual })
            }
        }
    }
}

/// The certificate for `z_p = T1^2 + T2^p`.
pub fn square_obstruction(p: u32, field: FieldDescriptor, max_search_order: i64) -> Result<ObstructionCertificate> {
    if p == 0 {
        return Err(Error::BadParameters("p must be positive".into()));
    }
    square_obstruction_of(&z_p(p, field), max_search_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn series(text: &str, field: FieldDescriptor) -> GradedSeries {
        let sys = parse_poly(text, 2, 1, field).unwrap();
        let c = sys.polys[0].terms().next().map(|(_, c)| c.clone());
        c.unwrap_or_else(|| GradedSeries::zero(field, 2))
    }

    #[test]
    fn form_roots() {
        let q = FieldDescriptor::Rationals;
        let f = series("T1^2 + 2*T1*T2 + T2^2", q);
        assert_eq!(form_sqrt(&f).unwrap().to_string(), "T1 + T2");
        assert!(form_sqrt(&series("T1^2 + T2^2", q)).is_none());
        assert!(form_sqrt(&series("2*T1^2", q)).is_none());
        let f5 = FieldDescriptor::prime(5).unwrap();
        // 4 = 2^2 mod 5, the smaller root is chosen
        assert_eq!(form_sqrt(&series("4*T2^4", f5)).unwrap().to_string(), "2*T2^2");
    }

    #[test]
    fn linear_solver() {
        let q = FieldDescriptor::Rationals;
        let s = |n: i64| q.from_i64(n);
        let a = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        let x = solve_linear(q, &a, &[s(3), s(1)]).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let a = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert!(solve_linear(q, &a, &[s(1), s(3)]).is_none());
        assert!(solve_linear(q, &a, &[s(1), s(2)]).is_some());
    }

    #[test]
    fn z3_over_rationals() {
        let c = square_obstruction(3, FieldDescriptor::Rationals, 10).unwrap();
        assert_eq!(c.max_order, 3);
        assert_eq!(c.best_t.to_string(), "T1");
        assert_eq!(c.residual.to_string(), "T2^3");
        assert_eq!(c.obstruction_degree, 2);
    }

    #[test]
    fn z_p_orders() {
        for field in [FieldDescriptor::Rationals, FieldDescriptor::prime(3).unwrap(), FieldDescriptor::prime(5).unwrap()] {
            for p in 3..=8 {
                assert_eq!(square_obstruction(p, field, p as i64 + 2).unwrap().max_order, p as i64);
            }
        }
        assert_eq!(square_obstruction(5, FieldDescriptor::Rationals, 5), Err(Error::SearchBudgetExceeded(5)));
    }

    #[test]
    fn lifts_through_several_degrees() {
        let q = FieldDescriptor::Rationals;
        // (T1 + T2^2)^2 + T1*T2^4 = T1^2 + 2 T1 T2^2 + T2^4 + T1 T2^4: two lifts, then stuck at 6
        let z = series("T1^2 + 2*T1*T2^2 + T2^4 + T1*T2^4", q);
        let c = square_obstruction_of(&z, 20).unwrap();
        assert_eq!(c.best_t.to_string(), "T1 + T2^2 + 1/2*T2^4");
        let check = z.sub(&c.best_t.mul(&c.best_t).unwrap()).unwrap();
        assert_eq!(check.ord().unwrap(), Order::Finite(c.max_order));
        // exact squares never obstruct
        let sq = series("T1^2 + 2*T1*T2 + T2^2", q);
        assert_eq!(square_obstruction_of(&sq, 12), Err(Error::SearchBudgetExceeded(12)));
        // a non-square lowest form obstructs at once
        assert_eq!(square_obstruction_of(&series("T1*T2 + T1^5", q), 9).unwrap().max_order, 2);
    }
}
