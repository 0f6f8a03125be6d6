//! Instances and solutions of 2-Set SSR, flattened to `2n` weights where
//! index `i ≤ n` is the first side of pair `i` and `n + i` its second side.

use num::bigint::BigUint;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{self, IndexSet, RatioValue};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSetInstance {
    weights: Vec<Rational>,
}

impl TwoSetInstance {
    /// Builds an instance from its flattened weights `a_1..a_n, b_1..b_n`.
    pub fn from_weights(weights: Vec<Rational>) -> Result<Self> {
        validate_len(weights.len())?;
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(i + 1));
        }
        Ok(TwoSetInstance { weights })
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let (first, second): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Self::from_weights(first.into_iter().chain(second).collect())
    }

    pub fn from_integer_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::from_pairs(
            pairs
                .iter()
                .map(|&(a, b)| (rational::int(a), rational::int(b))),
        )
    }

    /// Number of pairs.
    pub fn n(&self) -> usize {
        self.weights.len() / 2
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Weight at a 1-based flattened index.
    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index - 1]
    }

    pub fn pair(&self, base: usize) -> (&Rational, &Rational) {
        (&self.weights[base - 1], &self.weights[self.n() + base - 1])
    }
}

/// A semi-restricted instance with integer weights and a pivot index `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerInstance {
    weights: Vec<BigUint>,
    pivot: usize,
}

impl IntegerInstance {
    pub fn new(weights: Vec<BigUint>, pivot: usize) -> Result<Self> {
        validate_len(weights.len())?;
        if let Some(i) = weights.iter().position(|w| w.is_zero()) {
            return Err(Error::NonPositiveWeight(i + 1));
        }
        if pivot == 0 || pivot > weights.len() {
            return Err(Error::PivotOutOfRange {
                pivot,
                len: weights.len(),
            });
        }
        Ok(IntegerInstance { weights, pivot })
    }

    /// Like [`IntegerInstance::new`] but admits zero weights away from the
    /// pivot, as produced by flooring scaled weights.
    pub fn from_scaled(weights: Vec<BigUint>, pivot: usize) -> Result<Self> {
        validate_len(weights.len())?;
        if pivot == 0 || pivot > weights.len() {
            return Err(Error::PivotOutOfRange {
                pivot,
                len: weights.len(),
            });
        }
        if weights[pivot - 1].is_zero() {
            return Err(Error::NonPositiveWeight(pivot));
        }
        Ok(IntegerInstance { weights, pivot })
    }

    pub fn from_u64(weights: &[u64], pivot: usize) -> Result<Self> {
        Self::new(weights.iter().map(|&w| BigUint::from(w)).collect(), pivot)
    }

    /// Converts rational weights, failing on fractions or nonpositive values.
    pub fn from_rationals(weights: &[Rational], pivot: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(weights.len());
        for (i, w) in weights.iter().enumerate() {
            if !w.is_integer() {
                return Err(Error::NonIntegerWeight(i + 1));
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight(i + 1));
            }
            out.push(rational::floor_nonneg(w));
        }
        Self::new(out, pivot)
    }

    pub fn n(&self) -> usize {
        self.weights.len() / 2
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &BigUint {
        &self.weights[index - 1]
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn with_pivot(&self, pivot: usize) -> Result<Self> {
        Self::from_scaled(self.weights.clone(), pivot)
    }

    pub fn rational_weights(&self) -> Vec<Rational> {
        self.weights.iter().map(rational::from_biguint).collect()
    }
}

fn validate_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::EmptyInstance);
    }
    if !len.is_multiple_of(2) {
        return Err(Error::WeightCount {
            expected: len + 1,
            got: len,
        });
    }
    Ok(())
}

/// Two index sets over the flattened instance. Both empty means "no
/// solution".
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionPair {
    pub s1: IndexSet,
    pub s2: IndexSet,
}

impl SolutionPair {
    pub fn new(s1: IndexSet, s2: IndexSet) -> Self {
        SolutionPair { s1, s2 }
    }

    pub fn from_slices(s1: &[usize], s2: &[usize]) -> Self {
        SolutionPair {
            s1: s1.iter().copied().collect(),
            s2: s2.iter().copied().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.s1.is_empty() && self.s2.is_empty()
    }

    pub fn swapped(&self) -> Self {
        SolutionPair {
            s1: self.s2.clone(),
            s2: self.s1.clone(),
        }
    }

    pub fn sums(&self, weights: &[Rational]) -> Result<(Rational, Rational)> {
        Ok((
            ratio::subset_sum(&self.s1, weights)?,
            ratio::subset_sum(&self.s2, weights)?,
        ))
    }

    /// `MR(s1, s2)` under the given weights.
    pub fn value(&self, weights: &[Rational]) -> Result<RatioValue> {
        ratio::max_ratio_pair(&self.s1, &self.s2, weights)
    }

    pub fn len(&self) -> usize {
        self.s1.len() + self.s2.len()
    }
}

/// 2-Set SSR feasibility: both sets nonempty, one on each side, and no pair
/// contributing to both. Either side ordering is accepted.
pub fn check_feasible_two_set(sol: &SolutionPair, n: usize) -> bool {
    if sol.s1.is_empty() || sol.s2.is_empty() || n == 0 {
        return false;
    }
    let in_range = |s: &IndexSet, lo: usize, hi: usize| s.iter().all(|&i| lo <= i && i <= hi);
    let oriented = if in_range(&sol.s1, 1, n) && in_range(&sol.s2, n + 1, 2 * n) {
        (&sol.s1, &sol.s2)
    } else if in_range(&sol.s2, 1, n) && in_range(&sol.s1, n + 1, 2 * n) {
        (&sol.s2, &sol.s1)
    } else {
        return false;
    };
    oriented.1.iter().all(|&j| !oriented.0.contains(&(j - n)))
}

fn max_weight<'a, W: Ord>(set: &IndexSet, weights: &'a [W]) -> Option<&'a W> {
    set.iter()
        .filter_map(|&i| weights.get(i.wrapping_sub(1)))
        .max()
}

/// Semi-restricted feasibility: 2-Set feasible and the smaller of the two
/// set maxima equals the pivot's weight (by value, not by index).
pub fn check_feasible_semi_restricted<W: Ord>(sol: &SolutionPair, weights: &[W], m: usize) -> bool {
    let n = weights.len() / 2;
    if m == 0 || m > weights.len() || !check_feasible_two_set(sol, n) {
        return false;
    }
    match (max_weight(&sol.s1, weights), max_weight(&sol.s2, weights)) {
        (Some(x), Some(y)) => x.min(y) == &weights[m - 1],
        _ => false,
    }
}

/// The pivot-anchored refinement solved by the dynamic program: the pivot
/// itself belongs to a set whose maximum it is, and the other set's maximum
/// is at least as large.
pub fn check_feasible_anchored<W: Ord>(sol: &SolutionPair, weights: &[W], m: usize) -> bool {
    let n = weights.len() / 2;
    if m == 0 || m > weights.len() || !check_feasible_two_set(sol, n) {
        return false;
    }
    let (own, other) = if sol.s1.contains(&m) {
        (&sol.s1, &sol.s2)
    } else if sol.s2.contains(&m) {
        (&sol.s2, &sol.s1)
    } else {
        return false;
    };
    let pivot = &weights[m - 1];
    max_weight(own, weights) == Some(pivot)
        && max_weight(other, weights).is_some_and(|x| x >= pivot)
}
