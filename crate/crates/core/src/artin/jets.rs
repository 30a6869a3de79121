//! Dense jets over `F_q`: elements of `F_q[T1..TN] / m^order`.
//!
//! A jet is a coefficient vector indexed by the monomials of degree below the
//! jet order, listed by ascending degree (same order as [`GradedSeries`]), so
//! reducing a jet modulo `m^d` is taking a prefix.

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::poly::PolySystem;
use crate::series::{monomials_of_degree, GradedSeries, Precision};

pub type DenseJet = Vec<u32>;

#[derive(Clone, Debug)]
pub struct JetSpace {
    q: u32,
    num_vars: usize,
    order: u32,
    monomials: Vec<Vec<i64>>,
    /// `degree_start[d]` is the index of the first monomial of degree `d`;
    /// `degree_start[order]` is the number of monomials.
    degree_start: Vec<usize>,
    /// `(a, b, index of a*b)` for every pair with `deg a + deg b < order`.
    products: Vec<(u16, u16, u16)>,
}

impl JetSpace {
    pub fn new(field: FieldDescriptor, num_vars: usize, order: u32) -> Result<Self> {
        let q = match field {
            FieldDescriptor::PrimeField(q) if q < 1 << 15 => q as u32,
            _ => return Err(Error::BadParameters(format!("jet enumeration needs a small prime field, got {field}"))),
        };
        let mut monomials = Vec::new();
        let mut degree_start = Vec::new();
        for d in 0..order {
            degree_start.push(monomials.len());
            monomials.extend(monomials_of_degree(num_vars, d as i64));
        }
        degree_start.push(monomials.len());
        if monomials.len() >= u16::MAX as usize {
            return Err(Error::BadParameters("jet space too large".into()));
        }
        let index: std::collections::HashMap<&[i64], usize> =
            monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut products = Vec::new();
        for (a, ma) in monomials.iter().enumerate() {
            for (b, mb) in monomials.iter().enumerate() {
                let prod: Vec<i64> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(prod.as_slice()) {
                    products.push((a as u16, b as u16, c as u16));
                }
            }
        }
        Ok(JetSpace { q, num_vars, order, monomials, degree_start, products })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.q as u64)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of monomials of degree below the jet order.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Number of monomials of degree below `degree`.
    pub fn dim_below(&self, degree: u32) -> usize {
        self.degree_start[degree.min(self.order) as usize]
    }

    pub fn zero(&self) -> DenseJet {
        vec![0; self.dim()]
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> DenseJet {
        let mut out = vec![0u64; self.dim()];
        let q = self.q as u64;
        for &(i, j, k) in &self.products {
            let (x, y) = (a[i as usize], b[j as usize]);
            if x != 0 && y != 0 {
                out[k as usize] += x as u64 * y as u64;
            }
        }
        out.into_iter().map(|v| (v % q) as u32).collect()
    }

    pub fn add_into(&self, acc: &mut [u32], x: &[u32]) {
        for (a, b) in acc.iter_mut().zip(x) {
            *a = (*a + *b) % self.q;
        }
    }

    /// Order of a jet, capped at the jet order (meaning "at least").
    pub fn ord(&self, x: &[u32]) -> u32 {
        match x.iter().position(|&c| c != 0) {
            Some(i) => self.degree_start.partition_point(|&s| s <= i) as u32 - 1,
            None => self.order,
        }
    }

    pub fn to_series(&self, x: &[u32]) -> GradedSeries {
        let field = self.field();
        GradedSeries::from_terms(
            field,
            self.num_vars,
            x.iter()
                .zip(&self.monomials)
                .filter(|(c, _)| **c != 0)
                .map(|(c, m)| (m.clone(), field.from_u64(*c as u64))),
            Precision::Finite(self.order as i64),
        )
    }

    /// Reduces a series with nonnegative exponents modulo `m^order`.
    pub fn from_series(&self, s: &GradedSeries) -> Result<DenseJet> {
        if s.field() != self.field() || s.num_vars() != self.num_vars {
            return Err(Error::MixedFields(s.field().to_string(), self.field().to_string()));
        }
        let mut out = self.zero();
        for (e, c) in s.terms() {
            if !e.is_nonnegative() {
                return Err(Error::BadParameters("jets need nonnegative exponents".into()));
            }
            if e.total_degree() >= self.order as i64 {
                continue;
            }
            let i = self.monomials.iter().position(|m| m.as_slice() == e.exponents()).unwrap();
            out[i] = c.residue().unwrap() as u32;
        }
        Ok(out)
    }

    /// Writes the jet numbered `index` (base-q digits) into `x`.
    pub fn decode(&self, mut index: u64, x: &mut [u32]) {
        for c in x.iter_mut() {
            *c = (index % self.q as u64) as u32;
            index /= self.q as u64;
        }
    }

    /// Steps `x` to the next jet in enumeration order; false on wrap-around.
    pub fn increment(&self, x: &mut [u32]) -> bool {
        for c in x.iter_mut() {
            *c += 1;
            if *c < self.q {
                return true;
            }
            *c = 0;
        }
        false
    }
}

/// Total number of tuples of `count` coefficients over `F_q`, checked against
/// a budget.
pub fn enumeration_size(q: u32, count: usize, budget: u64) -> Result<u64> {
    let needed = (q as u128).checked_pow(count as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// A polynomial system with coefficients reduced to dense jets.
#[derive(Clone, Debug)]
pub struct DenseSystem {
    unknowns: usize,
    /// Per polynomial: (coefficient jet, unknown exponents).
    polys: Vec<Vec<(DenseJet, Vec<u32>)>>,
    degrees: Vec<u32>,
}

impl DenseSystem {
    pub fn new(sys: &PolySystem, space: &JetSpace) -> Result<Self> {
        let mut polys = Vec::new();
        let mut degrees = vec![0; sys.unknowns];
        for p in &sys.polys {
            let mut terms = Vec::new();
            for (e, c) in p.terms() {
                terms.push((space.from_series(c)?, e.clone()));
            }
            for (d, k) in degrees.iter_mut().zip(p.degrees()) {
                *d = (*d).max(k);
            }
            polys.push(terms);
        }
        Ok(DenseSystem { unknowns: sys.unknowns, polys, degrees })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// `min_l ord f_l(x)`, capped at the jet order; `x` is the concatenation of
    /// the unknowns' coefficient vectors.
    pub fn ord_at(&self, space: &JetSpace, x: &[u32]) -> u32 {
        let m = space.dim();
        let mut powers: Vec<Vec<DenseJet>> = Vec::with_capacity(self.unknowns);
        for (j, &d) in self.degrees.iter().enumerate() {
            let xj = &x[j * m..(j + 1) * m];
            let mut one = space.zero();
            one[0] = 1 % space.q();
            let mut row = vec![one];
            for k in 1..=d as usize {
                let next = space.mul(&row[k - 1], xj);
                row.push(next);
            }
            powers.push(row);
        }
        let mut best = space.order();
        for poly in &self.polys {
            let mut acc = space.zero();
            for (c, e) in poly {
                let mut term = c.clone();
                for (j, &k) in e.iter().enumerate() {
                    if k > 0 {
                        term = space.mul(&term, &powers[j][k as usize]);
                    }
                }
                space.add_into(&mut acc, &term);
            }
            best = best.min(space.ord(&acc));
            if best == 0 {
                break;
            }
        }
        best
    }
}
