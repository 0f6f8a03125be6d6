//! Plain SSR and Factor-r SSR as 2-Set SSR instances.
//!
//! SSR on `a_1..a_n` becomes the pairs `(a_i, a_i)`; Factor-r SSR becomes
//! `(a_i, r·a_i)`. Feasible pairs correspond index-for-index, and the
//! objectives agree exactly.

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::fptas::{approximate, ApproxResult};
use crate::instance::{check_feasible_two_set, SolutionPair, TwoSetInstance};
use crate::ratio::{self, IndexSet, RatioValue};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsrInstance {
    weights: Vec<Rational>,
}

impl SsrInstance {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        validate(&weights)?;
        Ok(SsrInstance { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRInstance {
    weights: Vec<Rational>,
    r: Rational,
}

impl FactorRInstance {
    pub fn new(weights: Vec<Rational>, r: Rational) -> Result<Self> {
        validate(&weights)?;
        if r < Rational::one() {
            return Err(Error::FactorBelowOne(r));
        }
        Ok(FactorRInstance { weights, r })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }
}

fn validate(weights: &[Rational]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight(i + 1));
    }
    Ok(())
}

/// The problem a 2-Set instance was encoded from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    Ssr(SsrInstance),
    FactorR(FactorRInstance),
}

impl SourceKind {
    pub fn n(&self) -> usize {
        match self {
            SourceKind::Ssr(s) => s.weights.len(),
            SourceKind::FactorR(f) => f.weights.len(),
        }
    }

    pub fn encode(&self) -> TwoSetInstance {
        match self {
            SourceKind::Ssr(s) => encode_ssr(s),
            SourceKind::FactorR(f) => encode_factor_r(f),
        }
    }
}

pub fn encode_ssr(inst: &SsrInstance) -> TwoSetInstance {
    TwoSetInstance::from_pairs(inst.weights.iter().map(|w| (w.clone(), w.clone())))
        .expect("validated weights")
}

pub fn encode_factor_r(inst: &FactorRInstance) -> TwoSetInstance {
    TwoSetInstance::from_pairs(inst.weights.iter().map(|w| (w.clone(), w * &inst.r)))
        .expect("validated weights")
}

/// A solution over the source problem's base indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedSolution {
    /// For Factor-r SSR, the set whose sum is multiplied by `r`.
    pub s1: IndexSet,
    pub s2: IndexSet,
    /// Source objective; +∞ when infeasible.
    pub objective: RatioValue,
}

impl DecodedSolution {
    fn infeasible() -> Self {
        DecodedSolution {
            s1: IndexSet::new(),
            s2: IndexSet::new(),
            objective: RatioValue::Infinite,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !self.s1.is_empty() && !self.s2.is_empty()
    }
}

/// Maps an encoded pair back to base indices. Pairs that are not 2-Set
/// feasible (including the empty pair) decode as infeasible.
pub fn decode(sol: &SolutionPair, source: &SourceKind) -> DecodedSolution {
    let n = source.n();
    if !check_feasible_two_set(sol, n) {
        return DecodedSolution::infeasible();
    }
    let (first, second) = if sol.s1.iter().all(|&i| i <= n) {
        (&sol.s1, &sol.s2)
    } else {
        (&sol.s2, &sol.s1)
    };
    let first: IndexSet = first.clone();
    let second: IndexSet = second.iter().map(|i| i - n).collect();
    match source {
        SourceKind::Ssr(s) => {
            let objective = pair_objective(&first, &second, &s.weights, &Rational::one());
            DecodedSolution {
                s1: first,
                s2: second,
                objective,
            }
        }
        SourceKind::FactorR(f) => {
            // The second side carries r·a_i, so it is the multiplied set.
            let objective = pair_objective(&second, &first, &f.weights, &f.r);
            DecodedSolution {
                s1: second,
                s2: first,
                objective,
            }
        }
    }
}

/// `max(r·ΣS₁, ΣS₂) / min(r·ΣS₁, ΣS₂)`.
fn pair_objective(s1: &IndexSet, s2: &IndexSet, weights: &[Rational], r: &Rational) -> RatioValue {
    let a = r * ratio::subset_sum(s1, weights).expect("decoded indices in range");
    let b = ratio::subset_sum(s2, weights).expect("decoded indices in range");
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    RatioValue::from(hi / lo)
}

/// Encodes plain SSR, approximates it, and decodes the answer.
pub fn solve_ssr(
    weights: &[Rational],
    epsilon: &Rational,
) -> Result<(ApproxResult, DecodedSolution)> {
    let source = SourceKind::Ssr(SsrInstance::new(weights.to_vec())?);
    let approx = approximate(&source.encode(), epsilon)?;
    let decoded = decode(&approx.solution, &source);
    Ok((approx, decoded))
}

/// Encodes Factor-r SSR, approximates it, and decodes the answer.
pub fn solve_factor_r(
    weights: &[Rational],
    r: &Rational,
    epsilon: &Rational,
) -> Result<(ApproxResult, DecodedSolution)> {
    let source = SourceKind::FactorR(FactorRInstance::new(weights.to_vec(), r.clone())?);
    let approx = approximate(&source.encode(), epsilon)?;
    let decoded = decode(&approx.solution, &source);
    Ok((approx, decoded))
}
