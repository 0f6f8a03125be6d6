//! Seeded benchmark sweep emitting one CSV row per (n, ε, trial).

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use ssr_core::oracle::brute_force_two_set;
use ssr_core::{approximate, generate, rational, RatioValue, Rational};

use crate::files::InputError;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub epsilons: Vec<Rational>,
    pub trials: usize,
    pub seed: u64,
    /// Weights are uniform in `1..=max_weight`.
    pub max_weight: u64,
    /// Largest n for which the exact optimum is computed.
    pub oracle_max_n: usize,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub epsilon: String,
    pub trial: usize,
    pub optimum: Option<String>,
    pub fptas_value: String,
    pub ratio_to_optimum: Option<f64>,
    pub within_bound: Option<bool>,
    pub dp_cell_ops: u64,
    pub wall_time_ms: Option<f64>,
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>, InputError> {
    if cfg.max_weight == 0 {
        return Err(InputError("--max-weight must be at least 1".into()));
    }
    if let Some(&n) = cfg.sizes.iter().find(|&&n| n == 0) {
        return Err(InputError(format!("size {n} is not a positive pair count")));
    }
    for eps in &cfg.epsilons {
        ssr_core::fptas::check_epsilon(eps)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let instances: Vec<_> = (0..cfg.trials)
            .map(|_| generate::random_two_set(&mut rng, n, cfg.max_weight))
            .collect();
        let optima: Vec<Option<RatioValue>> = instances
            .iter()
            .map(|inst| {
                (n <= cfg.oracle_max_n)
                    .then(|| brute_force_two_set(inst).map(|r| r.optimum))
                    .transpose()
            })
            .collect::<Result<_, _>>()?;
        for eps in &cfg.epsilons {
            for (trial, (inst, optimum)) in instances.iter().zip(&optima).enumerate() {
                let started = Instant::now();
                let res = approximate(inst, eps)?;
                let elapsed = started.elapsed();
                let (ratio_to_optimum, within_bound) =
                    match optimum.as_ref().and_then(RatioValue::as_rational) {
                        Some(opt) => {
                            let value = res.value.as_rational().expect("feasible instance");
                            (
                                Some(rational::to_f64(&(&value / &opt))),
                                Some(value <= &res.bound * &opt),
                            )
                        }
                        None => (None, None),
                    };
                rows.push(BenchRow {
                    n,
                    epsilon: rational::format(eps),
                    trial,
                    optimum: optimum.as_ref().map(ToString::to_string),
                    fptas_value: res.value.to_string(),
                    ratio_to_optimum,
                    within_bound,
                    dp_cell_ops: res.cell_ops(),
                    wall_time_ms: cfg.timing.then_some(elapsed.as_secs_f64() * 1e3),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record([
            "n",
            "epsilon",
            "trial",
            "optimum",
            "fptas_value",
            "ratio_to_optimum",
            "within_bound",
            "dp_cell_ops",
            "wall_time_ms",
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}
