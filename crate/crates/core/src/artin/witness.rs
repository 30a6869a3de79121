//! Quadratic lower bounds for the Artin function of `P = X^2 - Z Y^2`.
//!
//! For `i = 2k - 2` and `p = k - 2`, the triple `(u_{p,k}, v_k, z_p)` has
//! `ord P >= k^2 - 4`, yet no solution agrees with it modulo `m^{i+1}`: such a
//! solution would need `z_p` within `m^{i+1}` of a square (impossible past
//! order `p < i + 1`) or `v_k ≡ 0` (impossible as `ord v_k = 2k - 3 <= i`).
//! Hence `β(i) >= k^2 - 5`.

use num_rational::BigRational;

use super::obstruction::{square_obstruction, ObstructionCertificate};
use crate::construction::{build_triple, default_precision, CounterexampleTriple};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;

#[derive(Clone, Debug)]
pub struct QuadraticWitness {
    pub i: u32,
    pub triple: CounterexampleTriple,
    pub obstruction: ObstructionCertificate,
    /// `ord P(u, v, z) >= k^2 - 4`.
    pub ord_p_ok: bool,
    /// `sup_t ord(z_p - t^2) = p < i + 1`.
    pub obstruction_ok: bool,
    /// `ord v <= i`.
    pub ord_v_ok: bool,
    /// `k^2 - 5`.
    pub lower_bound: i64,
}

impl QuadraticWitness {
    pub fn holds(&self) -> bool {
        self.ord_p_ok && self.obstruction_ok && self.ord_v_ok
    }
}

/// The witness for even `i >= 8`.
pub fn quadratic_witness(i: u32, field: FieldDescriptor) -> Result<QuadraticWitness> {
    if !i.is_multiple_of(2) {
        return Err(Error::BadParity(i));
    }
    if i < 8 {
        return Err(Error::BadParameters(format!("witness needs i = 2k - 2 with k > 4, got i = {i}")));
    }
    let k = (i + 2) / 2;
    let p = k - 2;
    let triple = build_triple(p, k, field, default_precision(p, k))?;
    let obstruction = square_obstruction(p, field, i as i64 + 2)?;
    let k2 = (k * k) as i64;
    let ord_v = triple.v.ord()?.unwrap();
    Ok(QuadraticWitness {
        i,
        ord_p_ok: triple.measured_ord_p >= k2 - 4,
        obstruction_ok: obstruction.max_order == p as i64 && obstruction.max_order < i as i64 + 1,
        ord_v_ok: ord_v == 2 * k as i64 - 3 && ord_v <= i as i64,
        lower_bound: k2 - 5,
        triple,
        obstruction,
    })
}

/// One line of the lower-bound table.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub i: u32,
    /// The even index whose witness is used (`i` or `i - 1`).
    pub witness_i: u32,
    /// `((i+2)/2)^2 - 5` for even `i`, `(i/2)^2 - 5` for odd `i`.
    pub lower_bound: BigRational,
    pub witness: QuadraticWitness,
}

impl BoundRow {
    pub fn holds(&self) -> bool {
        self.witness.holds()
    }
}

/// Lower bound at any `i >= 8`; odd `i` uses `β(i) >= β(i-1)`.
pub fn beta_lower_bound_row(i: u32, field: FieldDescriptor) -> Result<BoundRow> {
    let witness_i = i - i % 2;
    let witness = quadratic_witness(witness_i, field)?;
    let lower_bound = if i.is_multiple_of(2) {
        BigRational::from_integer(witness.lower_bound.into())
    } else {
        BigRational::new((i as i64 * i as i64 - 20).into(), 4.into())
    };
    Ok(BoundRow { i, witness_i, lower_bound, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_witnesses() {
        let q = FieldDescriptor::Rationals;
        for (i, ord_p, bound) in [(8, 21, 20), (10, 32, 31), (12, 45, 44)] {
            let w = quadratic_witness(i, q).unwrap();
            assert!(w.holds(), "i = {i}");
            assert_eq!(w.triple.measured_ord_p, ord_p);
            assert_eq!(w.lower_bound, bound);
        }
    }

    #[test]
    fn parity_and_range() {
        let q = FieldDescriptor::Rationals;
        assert!(matches!(quadratic_witness(9, q), Err(Error::BadParity(9))));
        assert!(matches!(quadratic_witness(6, q), Err(Error::BadParameters(_))));
        let row = beta_lower_bound_row(9, q).unwrap();
        assert_eq!(row.witness_i, 8);
        assert_eq!(row.lower_bound, BigRational::new(61.into(), 4.into()));
        assert!(row.holds());
    }
}
