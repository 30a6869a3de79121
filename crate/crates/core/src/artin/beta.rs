//! Brute-force Artin function values on jet spaces over `F_q`.
//!
//! For jets `x` modulo `m^c`, `ord f(x)` is known up to `c` and nearness to a
//! true solution modulo `m^{i+1}` only depends on `x mod m^{i+1}`, so
//! `β(i) = max { ord f(x) : x not near a solution }` is decided exactly
//! whenever that maximum is below `c`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::jets::{enumeration_size, DenseJet, DenseSystem, JetSpace};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::poly::PolySystem;
use crate::series::GradedSeries;

/// How "is this jet congruent to a true solution modulo `m^{i+1}`" is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionOracle {
    /// The only solution is the origin.
    OriginOnly,
    /// The system has no solutions.
    NoSolutions,
    /// Solutions of `X^2 - Z Y^2` in unknowns `(X, Y, Z)`: `(w y, y, w^2)`
    /// and `(0, 0, z)`.
    SquareOrZero,
    /// Heuristic: the class lifts to a jet of this order with `ord f` at
    /// least the order. Gives lower bounds only.
    Horizon(u32),
}

impl SolutionOracle {
    pub fn is_exact(&self) -> bool {
        !matches!(self, SolutionOracle::Horizon(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRecord {
    pub i: u32,
    pub beta_lower: u32,
    /// Present only when decided by an exact oracle.
    pub beta_exact: Option<u32>,
    /// A jet not near any solution attaining `ord f = beta_lower`.
    pub witness: Option<Vec<GradedSeries>>,
    pub horizon: u32,
    pub exact_flag: bool,
    pub jet_order: u32,
    pub enumerated: u64,
}

/// Split of the index range among workers; results do not depend on it.
const BLOCK: u64 = 1 << 14;

/// Largest `ord f(x)` over jets with `keep(x)`, ties broken by smallest index.
fn max_ord_over<F>(space: &JetSpace, dense: &DenseSystem, total: u64, keep: F) -> Option<(u32, u64)>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let len = dense.unknowns() * space.dim();
    let blocks = total.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .filter_map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut x = vec![0u32; len];
            space.decode(start, &mut x);
            let mut best: Option<(u32, u64)> = None;
            for idx in start..end {
                if keep(&x) {
                    let o = dense.ord_at(space, &x);
                    if best.is_none_or(|(bo, _)| o > bo) {
                        best = Some((o, idx));
                    }
                }
                space.increment(&mut x);
            }
            best
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

/// Key of `x mod m^{i+1}`: the first `prefix` coefficients of each unknown.
fn class_of(x: &[u32], dim: usize, prefix: usize) -> Vec<u32> {
    x.chunks(dim).flat_map(|c| c[..prefix].iter().copied()).collect()
}

/// Square-or-zero nearness: `x ≡ y ≡ 0`, or `x ≡ w y` and `z ≡ w^2` for
/// some `w`, all modulo `m^{i+1}`.
struct SquareTable {
    space: JetSpace,
    /// `w^2` to every `w` with that square.
    roots: HashMap<DenseJet, Vec<DenseJet>>,
}

impl SquareTable {
    fn new(field: FieldDescriptor, num_vars: usize, order: u32, budget: u64) -> Result<Self> {
        let space = JetSpace::new(field, num_vars, order)?;
        let total = enumeration_size(space.q(), space.dim(), budget)?;
        let mut roots: HashMap<DenseJet, Vec<DenseJet>> = HashMap::new();
        let mut w = space.zero();
        for _ in 0..total {
            roots.entry(space.mul(&w, &w)).or_default().push(w.clone());
            space.increment(&mut w);
        }
        Ok(SquareTable { space, roots })
    }

    fn near(&self, class: &[u32]) -> bool {
        let m = self.space.dim();
        let (x, y, z) = (&class[..m], &class[m..2 * m], &class[2 * m..]);
        if x.iter().chain(y).all(|&c| c == 0) {
            return true;
        }
        self.roots.get(z).is_some_and(|ws| ws.iter().any(|w| self.space.mul(w, y) == x))
    }
}

/// Classes modulo `m^{i+1}` of jets of order `horizon` with `ord f >= horizon`.
fn liftable_classes(sys: &PolySystem, field: FieldDescriptor, i: u32, horizon: u32, budget: u64) -> Result<HashSet<Vec<u32>>> {
    let space = JetSpace::new(field, sys.num_series_vars, horizon)?;
    let dense = DenseSystem::new(sys, &space)?;
    let total = enumeration_size(space.q(), sys.unknowns * space.dim(), budget)?;
    let prefix = space.dim_below(i + 1);
    let blocks = total.div_ceil(BLOCK);
    let sets: Vec<HashSet<Vec<u32>>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut x = vec![0u32; sys.unknowns * space.dim()];
            space.decode(start, &mut x);
            let mut out = HashSet::new();
            for _ in start..end {
                if dense.ord_at(&space, &x) >= horizon {
                    out.insert(class_of(&x, space.dim(), prefix));
                }
                space.increment(&mut x);
            }
            out
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}

/// Brute-force `β(i)` for `sys` over the prime field, from jets of order
/// `jet_order`.
pub fn beta_bruteforce(
    sys: &PolySystem,
    i: u32,
    field: FieldDescriptor,
    jet_order: u32,
    horizon: u32,
    oracle: SolutionOracle,
    budget: u64,
) -> Result<BetaRecord> {
    if field.size().is_none() || sys.field != field {
        return Err(Error::BadParameters(format!("brute force needs a prime field matching the system, got {field}")));
    }
    if jet_order < i + 1 || horizon < jet_order {
        return Err(Error::BadParameters(format!(
            "need horizon >= jet_order >= i+1, got horizon {horizon}, jet_order {jet_order}, i {i}"
        )));
    }
    let space = JetSpace::new(field, sys.num_series_vars, jet_order)?;
    let dense = DenseSystem::new(sys, &space)?;
    let total = enumeration_size(space.q(), sys.unknowns * space.dim(), budget)?;
    let dim = space.dim();
    let prefix = space.dim_below(i + 1);

    let best = match oracle {
        SolutionOracle::NoSolutions => max_ord_over(&space, &dense, total, |_| true),
        SolutionOracle::OriginOnly => {
            max_ord_over(&space, &dense, total, |x| x.chunks(dim).any(|c| c[..prefix].iter().any(|&v| v != 0)))
        }
        SolutionOracle::SquareOrZero => {
            if sys.unknowns != 3 {
                return Err(Error::BadParameters("square-or-zero oracle needs unknowns (X, Y, Z)".into()));
            }
            let table = SquareTable::new(field, sys.num_series_vars, i + 1, budget)?;
            max_ord_over(&space, &dense, total, |x| !table.near(&class_of(x, dim, prefix)))
        }
        SolutionOracle::Horizon(h) => {
            let classes = liftable_classes(sys, field, i, h.max(jet_order), budget)?;
            max_ord_over(&space, &dense, total, |x| !classes.contains(&class_of(x, dim, prefix)))
        }
    };
    let horizon = match oracle {
        SolutionOracle::Horizon(h) => h.max(jet_order),
        _ => horizon,
    };
    let (beta, witness) = match best {
        None => (0, None),
        Some((o, _)) if o >= jet_order => {
            return Err(Error::NoSuchB { jet_order, lower_bound: jet_order });
        }
        Some((o, idx)) => {
            let mut x = vec![0u32; sys.unknowns * dim];
            space.decode(idx, &mut x);
            (o, Some(x.chunks(dim).map(|c| space.to_series(c)).collect()))
        }
    };
    let exact = oracle.is_exact();
    Ok(BetaRecord {
        i,
        beta_lower: beta,
        beta_exact: exact.then_some(beta),
        witness,
        horizon,
        exact_flag: exact,
        jet_order,
        enumerated: total,
    })
}
