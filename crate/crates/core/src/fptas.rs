//! Approximation driver: for every pivot `m`, floor the weights onto the grid
//! `δ = ε·a_m / (3N)`, solve the semi-restricted problem exactly on the
//! integer instance, and keep the pair that is best under the original
//! weights.

use num::bigint::BigUint;
use num::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{IntegerInstance, SolutionPair, TwoSetInstance};
use crate::ratio::{self, IndexSet, RatioValue};
use crate::rational::{self, Rational};
use crate::solver::{AnchoredSolver, ExactSolver};

/// Weights floored onto the grid of step `delta` around pivot `pivot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleContext {
    pub pivot: usize,
    pub epsilon: Rational,
    pub delta: Rational,
    pub scaled: Vec<BigUint>,
}

pub fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::EpsilonOutOfRange(epsilon.clone()));
    }
    Ok(())
}

pub fn scale_instance(weights: &[Rational], m: usize, epsilon: &Rational) -> Result<ScaleContext> {
    check_epsilon(epsilon)?;
    if weights.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight(i + 1));
    }
    if m == 0 || m > weights.len() {
        return Err(Error::PivotOutOfRange {
            pivot: m,
            len: weights.len(),
        });
    }
    let count = rational::int(weights.len() as i64);
    let delta = epsilon * &weights[m - 1] / (rational::int(3) * count);
    let scaled = weights
        .iter()
        .map(|w| rational::floor_nonneg(&(w / &delta)))
        .collect();
    Ok(ScaleContext {
        pivot: m,
        epsilon: epsilon.clone(),
        delta,
        scaled,
    })
}

impl ScaleContext {
    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }

    pub fn instance(&self) -> Result<IntegerInstance> {
        IntegerInstance::from_scaled(self.scaled.clone(), self.pivot)
    }

    pub fn scaled_rationals(&self) -> Vec<Rational> {
        self.scaled.iter().map(rational::from_biguint).collect()
    }

    /// `N·δ`, the largest total rounding loss over any set.
    pub fn total_slack(&self) -> Rational {
        &self.delta * rational::int(self.scaled.len() as i64)
    }

    /// `Σa − N·δ ≤ δ·Σa′ ≤ Σa` for the given set.
    pub fn sum_sandwich(&self, weights: &[Rational], set: &IndexSet) -> Result<bool> {
        let original = ratio::subset_sum(set, weights)?;
        let scaled = ratio::subset_sum(set, &self.scaled_rationals())? * &self.delta;
        Ok(&original - self.total_slack() <= scaled && scaled <= original)
    }

    /// `N·δ ≤ (ε/3)·Σa` for the given set.
    pub fn slack_within_third(&self, weights: &[Rational], set: &IndexSet) -> Result<bool> {
        let original = ratio::subset_sum(set, weights)?;
        Ok(self.total_slack() <= &self.epsilon / rational::int(3) * original)
    }

    /// `MR(A) ≤ MR(A′) + ε/3` for the given pair.
    pub fn additive_bound(&self, weights: &[Rational], pair: &SolutionPair) -> Result<bool> {
        let original = pair.value(weights)?;
        let scaled = pair.value(&self.scaled_rationals())?;
        Ok(match (original, scaled) {
            (_, RatioValue::Infinite) => true,
            (RatioValue::Infinite, _) => false,
            (o, s) => {
                let rhs = s.as_rational().unwrap() + &self.epsilon / rational::int(3);
                o.as_rational().unwrap() <= rhs
            }
        })
    }

    /// `MR(A′) ≤ (1 + ε/2)·MR(A)` for the given pair.
    pub fn scaled_optimum_bound(&self, weights: &[Rational], pair: &SolutionPair) -> Result<bool> {
        let original = pair.value(weights)?;
        let scaled = pair.value(&self.scaled_rationals())?;
        Ok(match (scaled, original) {
            (_, RatioValue::Infinite) => true,
            (RatioValue::Infinite, _) => false,
            (s, o) => {
                let factor = Rational::one() + &self.epsilon / rational::int(2);
                s.as_rational().unwrap() <= factor * o.as_rational().unwrap()
            }
        })
    }
    /// All per-set and per-pair rounding inequalities for a returned pair.
    /// An empty pair passes vacuously.
    pub fn check_pair(&self, weights: &[Rational], pair: &SolutionPair) -> Result<RoundingChecks> {
        let mut checks = RoundingChecks {
            sum_sandwich: true,
            slack_within_third: true,
            additive_bound: true,
        };
        if pair.is_empty() {
            return Ok(checks);
        }
        for set in [&pair.s1, &pair.s2] {
            checks.sum_sandwich &= self.sum_sandwich(weights, set)?;
            checks.slack_within_third &= self.slack_within_third(weights, set)?;
        }
        checks.additive_bound = self.additive_bound(weights, pair)?;
        Ok(checks)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundingChecks {
    pub sum_sandwich: bool,
    pub slack_within_third: bool,
    pub additive_bound: bool,
}

impl RoundingChecks {
    pub fn all(&self) -> bool {
        self.sum_sandwich && self.slack_within_third && self.additive_bound
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FptasOptions {
    /// Evaluate pivots on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

/// Outcome of one pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRecord {
    pub pivot: usize,
    pub solution: SolutionPair,
    /// `MR` of the returned pair under the scaled weights.
    pub scaled_value: RatioValue,
    /// `MR` of the returned pair under the original weights.
    pub value: RatioValue,
    pub cell_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    /// Empty when the instance has no feasible pair.
    pub solution: SolutionPair,
    pub value: RatioValue,
    pub epsilon: Rational,
    /// `1 + ε`.
    pub bound: Rational,
    pub pivot_used: Option<usize>,
    pub pivots: Vec<PivotRecord>,
}

impl ApproxResult {
    pub fn is_feasible(&self) -> bool {
        !self.solution.is_empty()
    }

    pub fn cell_ops(&self) -> u64 {
        self.pivots.iter().map(|p| p.cell_ops).sum()
    }
}

fn run_pivot<S: ExactSolver + ?Sized>(
    weights: &[Rational],
    m: usize,
    epsilon: &Rational,
    exact: &S,
) -> Result<PivotRecord> {
    let ctx = scale_instance(weights, m, epsilon)?;
    let solved = exact.solve(&ctx.instance()?)?;
    let value = solved.solution.value(weights)?;
    let scaled_value = solved.solution.value(&ctx.scaled_rationals())?;
    Ok(PivotRecord {
        pivot: m,
        solution: solved.solution,
        scaled_value,
        value,
        cell_ops: solved.cell_ops,
    })
}

/// `(1+ε)`-approximation for 2-Set SSR through the given exact solver.
pub fn fptas_solve<S: ExactSolver + ?Sized>(
    inst: &TwoSetInstance,
    epsilon: &Rational,
    exact: &S,
    options: FptasOptions,
) -> Result<ApproxResult> {
    check_epsilon(epsilon)?;
    let weights = inst.weights();
    let pivots = 1..=weights.len();
    let records: Vec<PivotRecord> = if options.parallel {
        pivots
            .into_par_iter()
            .map(|m| run_pivot(weights, m, epsilon, exact))
            .collect::<Result<_>>()?
    } else {
        pivots
            .map(|m| run_pivot(weights, m, epsilon, exact))
            .collect::<Result<_>>()?
    };

    // Ascending pivot order, strict improvement only.
    let mut best: Option<&PivotRecord> = None;
    for record in &records {
        if record.solution.is_empty() {
            continue;
        }
        if best.is_none_or(|b| record.value < b.value) {
            best = Some(record);
        }
    }
    let (solution, value, pivot_used) = match best {
        Some(b) => (b.solution.clone(), b.value.clone(), Some(b.pivot)),
        None => (SolutionPair::empty(), RatioValue::Infinite, None),
    };
    Ok(ApproxResult {
        solution,
        value,
        bound: Rational::one() + epsilon,
        epsilon: epsilon.clone(),
        pivot_used,
        pivots: records,
    })
}

/// [`fptas_solve`] with the anchored dynamic program, sequentially.
pub fn approximate(inst: &TwoSetInstance, epsilon: &Rational) -> Result<ApproxResult> {
    fptas_solve(inst, epsilon, &AnchoredSolver, FptasOptions::default())
}
