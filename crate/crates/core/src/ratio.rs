//! The two objectives every solver minimises: the ratio of two subset sums
//! and its symmetric closure over k sets.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// 1-based index set.
pub type IndexSet = BTreeSet<usize>;

/// Value of a ratio objective. `Zero < Finite(_) < Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioValue {
    Zero,
    Finite(Rational),
    Infinite,
}

impl RatioValue {
    pub fn is_finite(&self) -> bool {
        !matches!(self, RatioValue::Infinite)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            RatioValue::Zero => Some(Rational::zero()),
            RatioValue::Finite(r) => Some(r.clone()),
            RatioValue::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RatioValue::Zero => 0.0,
            RatioValue::Finite(r) => rational::to_f64(r),
            RatioValue::Infinite => f64::INFINITY,
        }
    }
}

impl From<Rational> for RatioValue {
    fn from(value: Rational) -> Self {
        if value.is_zero() {
            RatioValue::Zero
        } else {
            RatioValue::Finite(value)
        }
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioValue::Zero => f.write_str("0"),
            RatioValue::Finite(r) => f.write_str(&rational::format(r)),
            RatioValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Σ_{i∈set} weights[i-1].
pub fn subset_sum(set: &IndexSet, weights: &[Rational]) -> Result<Rational> {
    let mut total = Rational::zero();
    for &i in set {
        if i == 0 || i > weights.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: weights.len(),
            });
        }
        total += &weights[i - 1];
    }
    Ok(total)
}

/// `R(s1, s2)`: 0 when only `s1` is empty, the sum quotient when `s2` is
/// nonempty, and +∞ otherwise (including both empty).
pub fn ratio(s1: &IndexSet, s2: &IndexSet, weights: &[Rational]) -> Result<RatioValue> {
    let top = subset_sum(s1, weights)?;
    let bottom = subset_sum(s2, weights)?;
    Ok(ratio_of_sums(s1.is_empty(), &top, s2.is_empty(), &bottom))
}

pub(crate) fn ratio_of_sums(
    s1_empty: bool,
    top: &Rational,
    s2_empty: bool,
    bottom: &Rational,
) -> RatioValue {
    if s2_empty {
        RatioValue::Infinite
    } else if s1_empty {
        RatioValue::Zero
    } else {
        RatioValue::from(top / bottom)
    }
}

/// `MR(sets)`: the largest `R(sets[i], sets[j])` over ordered pairs `i ≠ j`.
pub fn max_ratio(sets: &[IndexSet], weights: &[Rational]) -> Result<RatioValue> {
    if sets.len() < 2 {
        return Err(Error::TooFewSets(sets.len()));
    }
    let sums = sets
        .iter()
        .map(|s| subset_sum(s, weights))
        .collect::<Result<Vec<_>>>()?;
    let mut best = RatioValue::Zero;
    for (i, si) in sets.iter().enumerate() {
        for (j, sj) in sets.iter().enumerate() {
            if i == j {
                continue;
            }
            let r = ratio_of_sums(si.is_empty(), &sums[i], sj.is_empty(), &sums[j]);
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

/// `MR` of two sets, the only arity the solvers produce.
pub fn max_ratio_pair(s1: &IndexSet, s2: &IndexSet, weights: &[Rational]) -> Result<RatioValue> {
    let a = subset_sum(s1, weights)?;
    let b = subset_sum(s2, weights)?;
    Ok(pair_value(s1.is_empty(), &a, s2.is_empty(), &b))
}

pub(crate) fn pair_value(
    s1_empty: bool,
    sum1: &Rational,
    s2_empty: bool,
    sum2: &Rational,
) -> RatioValue {
    let forward = ratio_of_sums(s1_empty, sum1, s2_empty, sum2);
    let backward = ratio_of_sums(s2_empty, sum2, s1_empty, sum1);
    forward.max(backward)
}
