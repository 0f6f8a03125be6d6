//! The `solve`, `oracle` and `check` subcommands as plain functions.

use std::time::Instant;

use ssr_core::oracle::Oracle;
use ssr_core::rational;
use ssr_core::{fptas_solve, AnchoredSolver, FptasOptions, RatioValue, Rational};

use crate::files::{InputError, Instance, Mode, SolutionFile, Status, TraceEntry};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub epsilon: Rational,
    pub trace: bool,
    pub parallel: bool,
    /// Record wall time. Off by default so output files are reproducible.
    pub timing: bool,
}

impl SolveOptions {
    pub fn new(epsilon: Rational) -> Self {
        SolveOptions {
            epsilon,
            trace: false,
            parallel: false,
            timing: false,
        }
    }
}

pub fn solve(instance: &Instance, opts: &SolveOptions) -> Result<SolutionFile, InputError> {
    let encoded = instance.encoded();
    let started = Instant::now();
    let res = fptas_solve(
        &encoded,
        &opts.epsilon,
        &AnchoredSolver,
        FptasOptions {
            parallel: opts.parallel,
        },
    )?;
    let elapsed = started.elapsed();

    let mut file = SolutionFile::new(instance, Mode::Fptas, Status::Approximate, &res.solution);
    debug_assert_eq!(file.ratio, res.value.to_string());
    file.epsilon = Some(rational::format(&res.epsilon));
    file.bound = Some(rational::format(&res.bound));
    file.pivot_used = res.pivot_used;
    file.stats.pivots_evaluated = res.pivots.len();
    file.stats.dp_cell_ops = res.cell_ops();
    if opts.timing {
        file.stats.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
    }
    if opts.trace {
        file.trace = Some(
            res.pivots
                .iter()
                .map(|p| TraceEntry {
                    pivot: p.pivot,
                    s1: p.solution.s1.iter().copied().collect(),
                    s2: p.solution.s2.iter().copied().collect(),
                    scaled_ratio: p.scaled_value.to_string(),
                    ratio: p.value.to_string(),
                    dp_cell_ops: p.cell_ops,
                })
                .collect(),
        );
    }
    Ok(file)
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Restrict to solutions whose smaller set maximum equals this element's
    /// weight (flattened 2-Set index).
    pub pivot: Option<usize>,
    pub max_n: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            pivot: None,
            max_n: ssr_core::oracle::DEFAULT_LIMIT,
        }
    }
}

pub fn oracle(instance: &Instance, opts: &OracleOptions) -> Result<SolutionFile, InputError> {
    let encoded = instance.encoded();
    let oracle = Oracle::new(opts.max_n);
    let result = match opts.pivot {
        Some(m) => oracle.semi_restricted(&encoded, m)?,
        None => oracle.two_set(&encoded)?,
    };
    let best = result.best.unwrap_or_default();
    let mut file = SolutionFile::new(instance, Mode::Oracle, Status::Optimal, &best);
    debug_assert_eq!(file.ratio, result.optimum.to_string());
    file.pivot = opts.pivot;
    Ok(file)
}

fn mismatch<T>(
    what: &str,
    stated: impl std::fmt::Debug,
    actual: impl std::fmt::Debug,
) -> Result<T, InputError> {
    Err(InputError(format!(
        "{what} is {stated:?} but the instance gives {actual:?}"
    )))
}

/// Recomputes everything a solution file states from its sets and the
/// instance. Returns a one-line summary when consistent.
pub fn check(instance: &Instance, file: &SolutionFile) -> Result<String, InputError> {
    if file.problem != instance.problem() {
        return mismatch("problem", file.problem, instance.problem());
    }
    let (l1, l2) = instance.side_labels();
    if file.s1.side.as_deref() != l1 || file.s2.side.as_deref() != l2 {
        return mismatch("side labels", (&file.s1.side, &file.s2.side), (l1, l2));
    }
    let pair = file.encoded_pair(instance)?;
    let expected = SolutionFile::new(instance, file.mode, file.status, &pair);
    if file.status == Status::Infeasible {
        if !pair.is_empty() {
            return Err(InputError(
                "status infeasible but the sets are not empty".into(),
            ));
        }
    } else if expected.status == Status::Infeasible {
        return Err(InputError(
            "sets are not a feasible solution (both nonempty, no item used twice)".into(),
        ));
    }
    let wanted_status = match (file.mode, pair.is_empty()) {
        (_, true) => Status::Infeasible,
        (Mode::Fptas, false) => Status::Approximate,
        (Mode::Oracle, false) => Status::Optimal,
    };
    if file.status != wanted_status {
        return mismatch("status", file.status, wanted_status);
    }
    if file.sum1 != expected.sum1 || file.sum2 != expected.sum2 {
        return mismatch(
            "sums",
            (&file.sum1, &file.sum2),
            (&expected.sum1, &expected.sum2),
        );
    }
    if file.ratio != expected.ratio {
        return mismatch("ratio", &file.ratio, &expected.ratio);
    }
    if file.ratio_decimal != expected.ratio_decimal {
        return mismatch("ratio_decimal", file.ratio_decimal, expected.ratio_decimal);
    }
    match file.mode {
        Mode::Fptas => {
            let Some(eps) = &file.epsilon else {
                return Err(InputError("fptas solution without epsilon".into()));
            };
            let eps = rational::parse(eps)?;
            let bound = rational::format(&(Rational::from_integer(1.into()) + &eps));
            if file.bound.as_deref() != Some(bound.as_str()) {
                return mismatch("bound", &file.bound, bound);
            }
        }
        Mode::Oracle => {
            if file.epsilon.is_some() || file.bound.is_some() || file.pivot_used.is_some() {
                return Err(InputError(
                    "oracle solution carries approximation fields".into(),
                ));
            }
        }
    }
    let value = match rational::parse(&file.ratio) {
        Ok(r) => RatioValue::Finite(r),
        Err(_) => RatioValue::Infinite,
    };
    Ok(format!(
        "ok: {} {} solution, ratio {value}",
        instance.problem(),
        match file.status {
            Status::Optimal => "optimal",
            Status::Approximate => "approximate",
            Status::Infeasible => "infeasible",
        }
    ))
}
