use std::time::Instant;

use artin_core::artin::{beta_bruteforce, beta_lower_bound_row, exhaustive_square_search, SolutionOracle};
use artin_core::artin::square_obstruction as certify_square;
use artin_core::construction::{build_triple, default_precision, distance_to_root};
use artin_core::diophantine::{fit_affine, sweep, ApproximationRecord};
use artin_core::parse::{infer_unknowns, parse_poly};
use artin_core::{Error, FieldDescriptor};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Failure, OracleArg, Range};

type Outcome = Result<(Report, bool), Failure>;

fn yes_no(b: bool) -> String {
    if b { "ok" } else { "FAIL" }.to_string()
}

fn need_odd_p(p: Range) -> Result<(), Failure> {
    if p.lo <= 2 {
        return Err(Failure::Usage(format!("p must be greater than 2, got {}", p.lo)));
    }
    Ok(())
}

pub fn verify_counterexample(p: Range, k: Range, field: FieldDescriptor, precision: Option<i64>) -> Outcome {
    need_odd_p(p)?;
    let pairs: Vec<(u32, u32)> = p.iter().flat_map(|p| k.iter().map(move |k| (p, k))).collect();
    let results = pairs
        .par_iter()
        .map(|&(p, k)| {
            let prec = precision.unwrap_or_else(|| default_precision(p, k));
            let triple = build_triple(p, k, field, prec)?;
            let dist = distance_to_root(p, k, prec, field)?;
            let obstruction = certify_square(p, field, p as i64 + 2)?;
            let factorization = triple.factorization_holds()?;
            Ok((triple, dist, obstruction.max_order, factorization))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut ok = true;
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for (t, d, sup_square, factorization) in results {
        let good = t.ord_p_holds() && t.min_uv_holds() && d.holds() && sup_square == t.p as i64 && factorization;
        ok &= good;
        rows.push(vec![
            t.p.to_string(),
            t.k.to_string(),
            field.to_string(),
            t.regime.label().to_string(),
            t.predicted_ord_p.to_string(),
            t.measured_ord_p.to_string(),
            t.predicted_min_uv_ord.to_string(),
            t.measured_min_uv_ord.to_string(),
            d.predicted.to_string(),
            d.measured.to_string(),
            sup_square.to_string(),
            yes_no(factorization),
            yes_no(good),
        ]);
        json.push(json!({
            "p": t.p,
            "k": t.k,
            "field": field.to_string(),
            "regime": t.regime.label(),
            "precision": t.precision,
            "ord_p_predicted": t.predicted_ord_p,
            "ord_p": t.measured_ord_p,
            "min_uv_ord_predicted": t.predicted_min_uv_ord,
            "min_uv_ord": t.measured_min_uv_ord,
            "distance_predicted": d.predicted,
            "distance": d.measured,
            "sup_square_order": sup_square,
            "factorization_holds": factorization,
            "pass": good,
        }));
    }
    let report = Report {
        headers: vec![
            "p", "k", "field", "regime", "ord_P_pred", "ord_P", "min_uv_pred", "min_uv", "dist_pred", "dist",
            "sup_square", "factor", "status",
        ],
        rows,
        json: Value::Array(json),
        notes: vec!["regime eq: measured = predicted; geq: measured >= predicted".into()],
    };
    Ok((report, ok))
}

fn dioph_row(r: &ApproximationRecord) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.k.to_string(),
        r.ord_v.to_string(),
        r.ord_distance.to_string(),
        r.slope_pred.0.to_string(),
        r.slope_pred.1.to_string(),
        r.regime.label().to_string(),
    ]
}

pub fn dioph(p: Range, k: Range, field: FieldDescriptor) -> Outcome {
    need_odd_p(p)?;
    let records = sweep(p.iter(), k.iter(), field)?;
    let mut ok = records.iter().all(ApproximationRecord::holds);
    let mut notes = Vec::new();
    let mut fits = Vec::new();
    for p in p.iter() {
        let group: Vec<&ApproximationRecord> = records.iter().filter(|r| r.p == p).collect();
        if group.len() < 2 {
            continue;
        }
        let points: Vec<(i64, i64)> = group.iter().map(|r| (r.ord_v, r.ord_distance)).collect();
        let fit = fit_affine(&points)?;
        let (sn, sd) = group[0].slope_pred;
        let (bn, bd) = group[0].intercept_pred;
        let predicted = fit.a == BigRational::new(sn.into(), sd.into()) && fit.b == BigRational::new(bn.into(), bd.into());
        // a vanishing coefficient can only lift points above the line
        let all_equal = group.iter().all(|r| r.regime.label() == "eq");
        if all_equal {
            ok &= predicted && fit.residual_max.is_zero();
        }
        notes.push(format!(
            "p = {p}: ord(distance) = {} * ord(v) + {}, max residual {}",
            fit.a, fit.b, fit.residual_max
        ));
        fits.push(json!({
            "p": p,
            "slope": fit.a.to_string(),
            "intercept": fit.b.to_string(),
            "residual_max": fit.residual_max.to_string(),
            "matches_prediction": predicted,
        }));
    }
    let report = Report {
        headers: vec!["p", "k", "ord_v", "ord_distance", "slope_pred_num", "slope_pred_den", "regime"],
        rows: records.iter().map(dioph_row).collect(),
        json: json!({ "field": field.to_string(), "records": records, "fits": fits }),
        notes,
    };
    Ok((report, ok))
}

pub fn square_obstruction(
    p: Range,
    field: FieldDescriptor,
    max_order: Option<i64>,
    exhaustive: Option<(Option<i64>, u64)>,
) -> Outcome {
    need_odd_p(p)?;
    let mut ok = true;
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for p in p.iter() {
        let cert = certify_square(p, field, max_order.unwrap_or(p as i64 + 2))?;
        let mut good = cert.max_order == p as i64;
        let mut row = vec![
            p.to_string(),
            field.to_string(),
            cert.max_order.to_string(),
            cert.obstruction_degree.to_string(),
            cert.best_t.to_string(),
            cert.residual.to_string(),
        ];
        let mut entry = json!({
            "p": p,
            "field": field.to_string(),
            "max_order": cert.max_order,
            "obstruction_degree": cert.obstruction_degree,
            "best_t": cert.best_t.to_string(),
            "residual": cert.residual.to_string(),
        });
        if let Some((degree_bound, budget)) = exhaustive {
            let z = artin_core::construction::z_p(p, field);
            let r = exhaustive_square_search(&z, degree_bound.unwrap_or(p as i64 + 1), budget)?;
            let agree = !r.saturated && r.max_order == cert.max_order;
            good &= agree;
            row.extend([r.max_order.to_string(), r.candidates.to_string(), yes_no(agree)]);
            entry["exhaustive"] =
                json!({ "max_order": r.max_order, "saturated": r.saturated, "candidates": r.candidates, "agree": agree });
        }
        row.push(yes_no(good));
        entry["pass"] = json!(good);
        ok &= good;
        rows.push(row);
        json.push(entry);
    }
    let mut headers = vec!["p", "field", "sup_ord", "obstruction_deg", "best_t", "residual"];
    if exhaustive.is_some() {
        headers.extend(["exhaustive_sup", "candidates", "agree"]);
    }
    headers.push("status");
    let report = Report { headers, rows, json: Value::Array(json), notes: Vec::new() };
    Ok((report, ok))
}

pub fn beta_bound(i: Range, field: FieldDescriptor) -> Outcome {
    if i.lo < 8 {
        return Err(Failure::Usage(format!("the quadratic witness needs i >= 8, got {}", i.lo)));
    }
    let rows = i.iter().collect::<Vec<_>>().par_iter().map(|&i| beta_lower_bound_row(i, field)).collect::<Result<Vec<_>, Error>>()?;
    let ok = rows.iter().all(|r| r.holds());
    let report = Report {
        headers: vec!["i", "lower_bound", "ord_P", "status", "witness_i", "k", "p", "sup_square", "ord_v"],
        rows: rows
            .iter()
            .map(|r| {
                let w = &r.witness;
                vec![
                    r.i.to_string(),
                    r.lower_bound.to_string(),
                    w.triple.measured_ord_p.to_string(),
                    yes_no(r.holds()),
                    r.witness_i.to_string(),
                    w.triple.k.to_string(),
                    w.triple.p.to_string(),
                    w.obstruction.max_order.to_string(),
                    (2 * w.triple.k - 3).to_string(),
                ]
            })
            .collect(),
        json: Value::Array(
            rows.iter()
                .map(|r| {
                    let w = &r.witness;
                    json!({
                        "i": r.i,
                        "lower_bound": r.lower_bound.to_string(),
                        "witness_i": r.witness_i,
                        "k": w.triple.k,
                        "p": w.triple.p,
                        "ord_p": w.triple.measured_ord_p,
                        "sup_square_order": w.obstruction.max_order,
                        "ord_v": 2 * w.triple.k - 3,
                        "pass": r.holds(),
                    })
                })
                .collect(),
        ),
        notes: vec!["odd i use the witness at i - 1, since the Artin function is nondecreasing".into()],
    };
    Ok((report, ok))
}

pub struct EstimateOptions {
    pub jet_order: Option<u32>,
    pub horizon: Option<u32>,
    pub oracle: OracleArg,
    pub budget: u64,
    pub timing: bool,
}

pub fn artin_estimate(
    text: &str,
    num_series_vars: usize,
    unknowns: Option<usize>,
    field: FieldDescriptor,
    i: Range,
    opts: &EstimateOptions,
) -> Outcome {
    let n = match unknowns {
        Some(n) => n,
        None => infer_unknowns(text, num_series_vars)?,
    };
    let sys = parse_poly(text, num_series_vars, n, field)?;
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for i in i.iter() {
        let jet_order = opts.jet_order.unwrap_or(i + 2);
        let horizon = opts.horizon.unwrap_or(jet_order);
        let oracle = match opts.oracle {
            OracleArg::Horizon => SolutionOracle::Horizon(horizon),
            OracleArg::Origin => SolutionOracle::OriginOnly,
            OracleArg::None => SolutionOracle::NoSolutions,
            OracleArg::SquareOrZero => SolutionOracle::SquareOrZero,
        };
        let start = Instant::now();
        let result = beta_bruteforce(&sys, i, field, jet_order, horizon, oracle, opts.budget);
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (beta_lower, beta_exact, exact_flag, witness, note) = match result {
            Ok(r) => {
                let w = r.witness.map(|w| w.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                (r.beta_lower, r.beta_exact, r.exact_flag, w, None)
            }
            // every jet of this order is far from solutions: β is at least the jet order
            Err(Error::NoSuchB { lower_bound, .. }) => {
                (lower_bound, None, false, None, Some(format!("i = {i}: jet order {jet_order} too small")))
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(vec![
            i.to_string(),
            beta_lower.to_string(),
            beta_exact.map_or("-".into(), |b| b.to_string()),
            exact_flag.to_string(),
            horizon.to_string(),
            jet_order.to_string(),
            witness.as_ref().map_or("-".into(), |w| w.join(" ; ")),
        ]);
        json.push(json!({
            "system": sys.source,
            "field": field.to_string(),
            "i": i,
            "beta_lower": beta_lower,
            "beta_exact": beta_exact,
            "exact_flag": exact_flag,
            "horizon": horizon,
            "jet_order": jet_order,
            "witness": witness,
            "timing_ms": if opts.timing { json!(elapsed) } else { Value::Null },
        }));
        if let Some(note) = note {
            eprintln!("note: {note}");
        }
    }
    let report = Report {
        headers: vec!["i", "beta_lower", "beta_exact", "exact", "horizon", "jet_order", "witness"],
        rows,
        json: Value::Array(json),
        notes: vec![format!("system: {}  over {field}", sys.source)],
    };
    Ok((report, true))
}
