//! Exhaustive solvers used as ground truth.
//!
//! Every search enumerates the `3^n` ways to assign each pair to
//! {unused, first side, second side}. That builds the mod-n conflict rule
//! into the search itself. Sums are kept as exact integers after clearing
//! denominators, which leaves every ratio unchanged.

use std::cmp::Ordering;

use num::bigint::{BigInt, BigUint};
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{
    check_feasible_anchored, check_feasible_semi_restricted, SolutionPair, TwoSetInstance,
};
use crate::ratio::{IndexSet, RatioValue};
use crate::rational::Rational;

pub const DEFAULT_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best: Option<SolutionPair>,
    /// +∞ when no feasible solution exists.
    pub optimum: RatioValue,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        self.best.is_some()
    }
}

/// Best pair of base-index sets for a source problem (plain SSR or
/// Factor-r SSR), found without going through any reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceOptimum {
    /// For Factor-r this is the set whose sum is multiplied by r.
    pub s1: IndexSet,
    pub s2: IndexSet,
    pub value: RatioValue,
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            limit: DEFAULT_LIMIT,
        }
    }
}

impl Oracle {
    pub fn new(limit: usize) -> Self {
        Oracle { limit }
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.limit {
            return Err(Error::OracleLimit {
                n,
                limit: self.limit,
            });
        }
        Ok(())
    }

    pub fn two_set(&self, inst: &TwoSetInstance) -> Result<OracleResult> {
        self.check_size(inst.n())?;
        Ok(search_two_set(inst, |_| true))
    }

    /// Optimum among pairs whose smaller set-maximum equals `a_m` by value.
    pub fn semi_restricted(&self, inst: &TwoSetInstance, m: usize) -> Result<OracleResult> {
        self.check_size(inst.n())?;
        check_pivot(inst, m)?;
        let w = inst.weights();
        Ok(search_two_set(inst, |sol| {
            check_feasible_semi_restricted(sol, w, m)
        }))
    }

    /// Optimum among pairs that contain `m` as the maximum of its own set,
    /// with the other set's maximum at least `a_m`.
    pub fn anchored(&self, inst: &TwoSetInstance, m: usize) -> Result<OracleResult> {
        self.check_size(inst.n())?;
        check_pivot(inst, m)?;
        let w = inst.weights();
        Ok(search_two_set(inst, |sol| {
            check_feasible_anchored(sol, w, m)
        }))
    }

    /// Plain SSR: two disjoint nonempty subsets minimising larger/smaller sum.
    pub fn ssr(&self, weights: &[Rational]) -> Result<SourceOptimum> {
        self.check_size(weights.len())?;
        validate_source(weights)?;
        let ints = integerize(weights);
        Ok(search_source(&ints, &ints))
    }

    /// Factor-r SSR: minimises max(r·ΣS₁, ΣS₂) / min(r·ΣS₁, ΣS₂).
    pub fn factor_r(&self, weights: &[Rational], r: &Rational) -> Result<SourceOptimum> {
        self.check_size(weights.len())?;
        validate_source(weights)?;
        if *r < Rational::one() {
            return Err(Error::FactorBelowOne(r.clone()));
        }
        let ints = integerize(weights);
        // r·x / y == (p·x) / (q·y) for r = p/q.
        let p = r.numer().magnitude().clone();
        let q = r.denom().magnitude().clone();
        let scaled: Vec<BigUint> = ints.iter().map(|x| x * &p).collect();
        let plain: Vec<BigUint> = ints.iter().map(|x| x * &q).collect();
        Ok(search_source(&scaled, &plain))
    }
}

pub fn brute_force_two_set(inst: &TwoSetInstance) -> Result<OracleResult> {
    Oracle::default().two_set(inst)
}

pub fn brute_force_semi_restricted(inst: &TwoSetInstance, m: usize) -> Result<OracleResult> {
    Oracle::default().semi_restricted(inst, m)
}

pub fn brute_force_anchored(inst: &TwoSetInstance, m: usize) -> Result<OracleResult> {
    Oracle::default().anchored(inst, m)
}

pub fn brute_force_ssr(weights: &[Rational]) -> Result<SourceOptimum> {
    Oracle::default().ssr(weights)
}

pub fn brute_force_factor_r(weights: &[Rational], r: &Rational) -> Result<SourceOptimum> {
    Oracle::default().factor_r(weights, r)
}

fn check_pivot(inst: &TwoSetInstance, m: usize) -> Result<()> {
    if m == 0 || m > inst.weights().len() {
        return Err(Error::PivotOutOfRange {
            pivot: m,
            len: inst.weights().len(),
        });
    }
    Ok(())
}

fn validate_source(weights: &[Rational]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight(i + 1));
    }
    Ok(())
}

/// Multiplies every weight by the lcm of the denominators.
fn integerize(weights: &[Rational]) -> Vec<BigUint> {
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    weights
        .iter()
        .map(|w| (w.numer() * (&lcm / w.denom())).magnitude().clone())
        .collect()
}

/// Current best leaf of a search.
struct Best {
    sums: (BigUint, BigUint),
    first: Vec<usize>,
    second: Vec<usize>,
}

/// Compares `max(a)/min(a)` with `max(b)/min(b)` for positive sum pairs.
fn cmp_value(a: &(BigUint, BigUint), b: &(BigUint, BigUint)) -> Ordering {
    let (a_hi, a_lo) = if a.0 >= a.1 {
        (&a.0, &a.1)
    } else {
        (&a.1, &a.0)
    };
    let (b_hi, b_lo) = if b.0 >= b.1 {
        (&b.0, &b.1)
    } else {
        (&b.1, &b.0)
    };
    (a_hi * b_lo).cmp(&(b_hi * a_lo))
}

/// Enumerates all assignments of base indices to {unused, first, second},
/// calling `leaf` with the chosen base indices and running sums for every
/// assignment with both sides nonempty. Sums are updated incrementally.
fn enumerate<F>(first_w: &[BigUint], second_w: &[BigUint], mut leaf: F)
where
    F: FnMut(&[u8], &BigUint, &BigUint),
{
    let n = first_w.len();
    let mut digits = vec![0u8; n];
    let mut sum1 = BigUint::zero();
    let mut sum2 = BigUint::zero();
    let (mut count1, mut count2) = (0usize, 0usize);
    loop {
        // Odometer step: increment the lowest digit, carrying upward.
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            match digits[pos] {
                0 => {
                    digits[pos] = 1;
                    sum1 += &first_w[pos];
                    count1 += 1;
                    break;
                }
                1 => {
                    digits[pos] = 2;
                    sum1 -= &first_w[pos];
                    count1 -= 1;
                    sum2 += &second_w[pos];
                    count2 += 1;
                    break;
                }
                _ => {
                    digits[pos] = 0;
                    sum2 -= &second_w[pos];
                    count2 -= 1;
                    pos += 1;
                }
            }
        }
        if count1 > 0 && count2 > 0 {
            leaf(&digits, &sum1, &sum2);
        }
    }
}

fn sides(digits: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (i, &d) in digits.iter().enumerate() {
        match d {
            1 => first.push(i + 1),
            2 => second.push(i + 1),
            _ => {}
        }
    }
    (first, second)
}

/// Minimises the pair value; ties go to fewer elements, then to the
/// lexicographically smallest `(first, second)`.
fn run_search<F>(first_w: &[BigUint], second_w: &[BigUint], mut accept: F) -> Option<Best>
where
    F: FnMut(&[usize], &[usize]) -> bool,
{
    let mut best: Option<Best> = None;
    enumerate(first_w, second_w, |digits, s1, s2| {
        let sums = (s1.clone(), s2.clone());
        let order = best
            .as_ref()
            .map_or(Ordering::Less, |b| cmp_value(&sums, &b.sums));
        if order == Ordering::Greater {
            return;
        }
        let (first, second) = sides(digits);
        if let (Ordering::Equal, Some(b)) = (order, best.as_ref()) {
            let key = (first.len() + second.len(), &first, &second);
            let incumbent = (b.first.len() + b.second.len(), &b.first, &b.second);
            if key >= incumbent {
                return;
            }
        }
        if accept(&first, &second) {
            best = Some(Best {
                sums,
                first,
                second,
            });
        }
    });
    best
}

fn value_of(sums: &(BigUint, BigUint)) -> RatioValue {
    let (hi, lo) = if sums.0 >= sums.1 {
        (&sums.0, &sums.1)
    } else {
        (&sums.1, &sums.0)
    };
    RatioValue::from(Rational::new(
        BigInt::from(hi.clone()),
        BigInt::from(lo.clone()),
    ))
}

fn search_two_set<F>(inst: &TwoSetInstance, accept: F) -> OracleResult
where
    F: Fn(&SolutionPair) -> bool,
{
    let n = inst.n();
    let ints = integerize(inst.weights());
    let (first_w, second_w) = ints.split_at(n);
    let to_pair = |first: &[usize], second: &[usize]| SolutionPair {
        s1: first.iter().copied().collect(),
        s2: second.iter().map(|i| i + n).collect(),
    };
    match run_search(first_w, second_w, |f, s| accept(&to_pair(f, s))) {
        Some(best) => OracleResult {
            optimum: value_of(&best.sums),
            best: Some(to_pair(&best.first, &best.second)),
        },
        None => OracleResult {
            best: None,
            optimum: RatioValue::Infinite,
        },
    }
}

fn search_source(first_w: &[BigUint], second_w: &[BigUint]) -> SourceOptimum {
    match run_search(first_w, second_w, |_, _| true) {
        Some(best) => SourceOptimum {
            value: value_of(&best.sums),
            s1: best.first.into_iter().collect(),
            s2: best.second.into_iter().collect(),
        },
        None => SourceOptimum {
            s1: IndexSet::new(),
            s2: IndexSet::new(),
            value: RatioValue::Infinite,
        },
    }
}
