use artin_core::artin::{
    beta_bruteforce, check_order_inequality, exhaustive_square_search, square_obstruction, square_obstruction_of,
    SolutionOracle,
};
use artin_core::parse::{parse_exprs, parse_poly, PolyExpr};
use artin_core::strategies::{expr, poly, prime_field};
use artin_core::{Error, FieldDescriptor, GradedSeries, Order};
use proptest::prelude::*;

const BUDGET: u64 = 10_000_000;

fn f3() -> FieldDescriptor {
    FieldDescriptor::prime(3).unwrap()
}

fn uses_unknown(e: &PolyExpr) -> bool {
    e.unknowns_used() > 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// One-variable systems over F_3: the horizon estimate never decreases in i
    /// and its witnesses reproduce their orders through series arithmetic.
    #[test]
    fn beta_monotone_and_witnesses_sound(e in expr(1, 1).prop_filter("has X", uses_unknown)) {
        let sys = parse_poly(&e.render(), 1, 1, f3());
        // literals with denominators divisible by 3 do not reduce
        prop_assume!(sys.is_ok());
        let sys = sys.unwrap();
        let mut last = 0;
        for i in 0..=2 {
            match beta_bruteforce(&sys, i, f3(), 4, 4, SolutionOracle::Horizon(4), BUDGET) {
                Ok(r) => {
                    prop_assert!(r.beta_lower >= last);
                    last = r.beta_lower;
                    if let Some(w) = r.witness {
                        prop_assert_eq!(sys.ord_at(&w).unwrap(), Order::Finite(r.beta_lower as i64));
                    }
                }
                Err(Error::NoSuchB { .. }) => break,
                Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
            }
        }
    }

    /// Greedy lifting and exhaustive search agree on random `z` in F_q[T1, T2].
    #[test]
    fn obstruction_oracles_agree(z in prime_field().prop_flat_map(poly)) {
        prop_assume!(!z.is_exact_zero());
        let bound = 4;
        let exhaustive = match exhaustive_square_search(&z, bound, 200_000) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { .. }) => return Ok(()),
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        };
        match square_obstruction_of(&z, bound + 1) {
            Ok(c) if c.max_order <= bound => {
                prop_assert_eq!(exhaustive.max_order, c.max_order);
                prop_assert!(!exhaustive.saturated);
                let r = z.sub(&c.best_t.mul(&c.best_t).unwrap()).unwrap();
                prop_assert_eq!(r.ord().unwrap(), Order::Finite(c.max_order));
            }
            // beyond what the exhaustive search can decide
            Ok(_) | Err(Error::SearchBudgetExceeded(_)) => prop_assert!(exhaustive.max_order > bound),
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        }
    }
}

#[test]
fn smooth_system_has_identity_beta() {
    let sys = parse_poly("X", 1, 1, f3()).unwrap();
    for i in 0..=3 {
        let r = beta_bruteforce(&sys, i, f3(), 5, 5, SolutionOracle::OriginOnly, BUDGET).unwrap();
        assert_eq!(r.beta_exact, Some(i));
        assert!(r.exact_flag);
    }
}

/// `ord(x^2 - T)` is 0 if `x(0) != 0` and exactly 1 otherwise, so `β = 1`.
#[test]
fn root_of_t_has_beta_one() {
    let sys = parse_poly("X^2 - T", 1, 1, f3()).unwrap();
    for i in 0..=3 {
        let r = beta_bruteforce(&sys, i, f3(), 5, 5, SolutionOracle::NoSolutions, BUDGET).unwrap();
        assert_eq!(r.beta_exact, Some(1));
    }
}

/// For `X^2 - T Y^2` in one variable, `ord(x^2 - T y^2) = min(2 ord x, 2 ord y + 1)`,
/// so `β(i) = 2i + 1`.
#[test]
fn norm_form_in_one_variable() {
    let sys = parse_poly("X^2 - T*Y^2", 1, 2, f3()).unwrap();
    for i in 0..=1 {
        let r = beta_bruteforce(&sys, i, f3(), 2 * i + 3, 2 * i + 3, SolutionOracle::OriginOnly, BUDGET).unwrap();
        assert_eq!(r.beta_exact, Some(2 * i + 1), "i = {i}");
    }
    let samples: Vec<Vec<GradedSeries>> = (1..4)
        .map(|j| {
            let t = GradedSeries::monomial(f3().one(), &[j]);
            vec![t.clone(), t]
        })
        .collect();
    assert!(check_order_inequality(&sys, &samples, |m| 2 * m + 1).unwrap());
    assert!(!check_order_inequality(&sys, &samples, |m| 2 * m - 1).unwrap());
}

#[test]
fn square_obstruction_for_small_p() {
    for field in [FieldDescriptor::Rationals, f3(), FieldDescriptor::prime(5).unwrap()] {
        for p in 3..=5u32 {
            let greedy = square_obstruction(p, field, p as i64 + 2).unwrap();
            let z = artin_core::construction::z_p(p, field);
            let exhaustive = exhaustive_square_search(&z, p as i64 + 1, BUDGET).unwrap();
            assert_eq!(greedy.max_order, p as i64);
            assert_eq!(exhaustive.max_order, p as i64);
            assert!(!exhaustive.saturated);
        }
    }
}

#[test]
fn parsed_system_from_family() {
    let e = parse_exprs("X^2 - (T1^2 + T2^3)*Y^2", 2, 2).unwrap();
    assert_eq!(e[0].render(), "X1^2 - (T1^2 + T2^3)*X2^2");
}
