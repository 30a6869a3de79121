//! Polynomials in unknowns `X1..Xn` whose coefficients are series in `T1..TN`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::series::{GradedSeries, Order};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldDescriptor,
    num_series_vars: usize,
    unknowns: usize,
    /// X-exponent vector to nonzero coefficient series.
    terms: BTreeMap<Vec<u32>, GradedSeries>,
}

impl Polynomial {
    pub fn zero(field: FieldDescriptor, num_series_vars: usize, unknowns: usize) -> Self {
        Polynomial { field, num_series_vars, unknowns, terms: BTreeMap::new() }
    }

    pub fn constant(c: GradedSeries, unknowns: usize) -> Self {
        let mut p = Polynomial::zero(c.field(), c.num_vars(), unknowns);
        if !c.is_exact_zero() {
            p.terms.insert(vec![0; unknowns], c);
        }
        p
    }

    /// The unknown `X_{index+1}`.
    pub fn unknown(field: FieldDescriptor, num_series_vars: usize, unknowns: usize, index: usize) -> Self {
        let mut p = Polynomial::zero(field, num_series_vars, unknowns);
        let mut e = vec![0; unknowns];
        e[index] = 1;
        p.terms.insert(e, GradedSeries::one(field, num_series_vars));
        p
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn num_series_vars(&self) -> usize {
        self.num_series_vars
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GradedSeries)> {
        self.terms.iter()
    }

    /// Largest exponent of each unknown.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.unknowns];
        for e in self.terms.keys() {
            for (slot, &k) in d.iter_mut().zip(e) {
                *slot = (*slot).max(k);
            }
        }
        d
    }

    fn insert_sum(&mut self, e: Vec<u32>, c: GradedSeries) -> Result<()> {
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !sum.is_exact_zero() {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_sum(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Polynomial::zero(self.field, self.num_series_vars, self.unknowns);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_sum(e, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut acc = Polynomial::constant(GradedSeries::one(self.field, self.num_series_vars), self.unknowns);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes series for the unknowns.
    pub fn eval(&self, x: &[GradedSeries]) -> Result<GradedSeries> {
        if x.len() != self.unknowns {
            return Err(Error::DimensionMismatch(self.unknowns, x.len()));
        }
        let degrees = self.degrees();
        let mut powers: Vec<Vec<GradedSeries>> = Vec::with_capacity(x.len());
        for (xi, &d) in x.iter().zip(&degrees) {
            let mut row = vec![GradedSeries::one(self.field, self.num_series_vars)];
            for k in 1..=d as usize {
                let next = row[k - 1].mul(xi)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = GradedSeries::zero(self.field, self.num_series_vars);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[j][k as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*X{}", j + 1)?,
                    _ => write!(f, "*X{}^{k}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// A finite list of polynomials over the same ring, generating an ideal of
/// `O_N[X1..Xn]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub field: FieldDescriptor,
    pub num_series_vars: usize,
    pub unknowns: usize,
    pub polys: Vec<Polynomial>,
    /// Canonical text of the system, as rendered by the parser.
    pub source: String,
}

impl PolySystem {
    pub fn new(polys: Vec<Polynomial>, source: String) -> Result<Self> {
        let first = polys.first().ok_or_else(|| Error::BadParameters("empty polynomial system".into()))?;
        let (field, n_series, unknowns) = (first.field, first.num_series_vars, first.unknowns);
        for p in &polys {
            if p.field != field {
                return Err(Error::MixedFields(field.to_string(), p.field.to_string()));
            }
            if p.num_series_vars != n_series || p.unknowns != unknowns {
                return Err(Error::DimensionMismatch(n_series, p.num_series_vars));
            }
        }
        Ok(PolySystem { field, num_series_vars: n_series, unknowns, polys, source })
    }

    pub fn eval(&self, x: &[GradedSeries]) -> Result<Vec<GradedSeries>> {
        self.polys.iter().map(|p| p.eval(x)).collect()
    }

    /// `min_l ord f_l(x)`.
    pub fn ord_at(&self, x: &[GradedSeries]) -> Result<Order> {
        let mut best = Order::Infinite;
        for v in self.eval(x)? {
            best = best.min(v.ord()?);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_difference_of_squares() {
        let q = FieldDescriptor::Rationals;
        let x = Polynomial::unknown(q, 1, 2, 0);
        let y = Polynomial::unknown(q, 1, 2, 1);
        let t = Polynomial::constant(GradedSeries::variable(q, 1, 0), 2);
        // X^2 - T Y^2
        let p = x.pow(2).unwrap().sub(&t.mul(&y.pow(2).unwrap()).unwrap()).unwrap();
        assert_eq!(p.degrees(), vec![2, 2]);
        let tt = GradedSeries::variable(q, 1, 0);
        let val = p.eval(&[tt.clone(), GradedSeries::one(q, 1)]).unwrap();
        assert_eq!(val.to_string(), "-T1 + T1^2");
        assert_eq!(p.eval(&[tt]), Err(Error::DimensionMismatch(2, 1)));
    }
}
