//! Artin function experiments: brute-force values on jet spaces, the square
//! obstruction for `z_p`, and quadratic lower-bound witnesses.

pub mod beta;
pub mod exhaustive;
pub mod jets;
pub mod obstruction;
pub mod witness;

pub use beta::{beta_bruteforce, BetaRecord, SolutionOracle};
pub use exhaustive::{exhaustive_square_search, ExhaustiveResult};
pub use obstruction::{square_obstruction, square_obstruction_of, ObstructionCertificate};
pub use witness::{beta_lower_bound_row, quadratic_witness, BoundRow, QuadraticWitness};

use crate::error::Result;
use crate::poly::PolySystem;
use crate::series::{GradedSeries, Order};

/// True iff every nonzero sample satisfies `ord f(x) <= beta(min_k ord x_k)`.
pub fn check_order_inequality(sys: &PolySystem, samples: &[Vec<GradedSeries>], beta: impl Fn(i64) -> i64) -> Result<bool> {
    for x in samples {
        let mut min_ord = Order::Infinite;
        for c in x {
            min_ord = min_ord.min(c.ord()?);
        }
        let Order::Finite(m) = min_ord else {
            continue;
        };
        match sys.ord_at(x)? {
            Order::Finite(o) if o <= beta(m) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{u_pk, v_k};
    use crate::field::FieldDescriptor;
    use crate::parse::parse_poly;

    #[test]
    fn affine_bounds_fail_on_p3() {
        let q = FieldDescriptor::Rationals;
        let sys = parse_poly("X^2 - (T1^2 + T2^3)*Y^2", 2, 2, q).unwrap();
        let samples: Vec<_> = (3..=8).map(|k| vec![u_pk(3, k, q).unwrap(), v_k(k, q)]).collect();
        // ord P = 5k - 4 against min ord = 2k - 3
        assert!(check_order_inequality(&sys, &samples, |m| (5 * (m + 3)) / 2 - 4).unwrap());
        assert!(!check_order_inequality(&sys, &samples, |m| 2 * m + 5).unwrap());
    }

    #[test]
    fn zero_sample_is_vacuous() {
        let q = FieldDescriptor::Rationals;
        let sys = parse_poly("X^2 - T1*Y^2", 2, 2, q).unwrap();
        let zero = vec![GradedSeries::zero(q, 2), GradedSeries::zero(q, 2)];
        assert!(check_order_inequality(&sys, &[zero], |_| 0).unwrap());
    }
}
