//! Exact pseudo-polynomial solver for Semi-Restricted 2-Set SSR on integer
//! weights.
//!
//! [`solve_anchored`] is the pivot-anchored dispatch: the pivot `m` must sit
//! in a set whose maximum it is, and the other set must carry an element at
//! least as heavy. Case 1 covers solutions whose heavy set is a single
//! element heavier than everything the pivot side can hold; Case 2 is a
//! dynamic program over sum differences. [`solve_semi_restricted`] lifts
//! this to the by-value pivot condition by trying every index whose weight
//! equals `a_m`.

use num::bigint::BigUint;
use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{IntegerInstance, SolutionPair};
use crate::ratio::{IndexSet, RatioValue};

/// Largest DP table (cells) the solver agrees to allocate.
pub const MAX_TABLE_CELLS: u128 = 1 << 33;

/// Offsets of the pivot side (`p`) and the opposite side (`p_prime`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SidePair {
    pub p: usize,
    pub p_prime: usize,
}

impl SidePair {
    pub fn for_pivot(m: usize, n: usize) -> Self {
        if m <= n {
            SidePair { p: 0, p_prime: n }
        } else {
            SidePair { p: n, p_prime: 0 }
        }
    }
}

/// Base indices admissible next to the pivot (`s_min`) and as the heavy
/// witness on the other side (`s_max`), plus the pivot side's capacity `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSets {
    pub s_min: Vec<usize>,
    pub s_max: Vec<usize>,
    pub q: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub solution: SolutionPair,
    /// Elementary operations performed, dominated by DP cell visits.
    pub cell_ops: u64,
}

/// A stored DP entry: two sets and the total weight `x` of their union.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SumTuple {
    pub s1: IndexSet,
    pub s2: IndexSet,
    pub x: BigUint,
}

impl SumTuple {
    pub fn is_empty(&self) -> bool {
        self.s1.is_empty() && self.s2.is_empty() && self.x.is_zero()
    }
}

/// Larger-total-sum selection: the candidate wins only over an empty
/// incumbent or with a strictly larger total.
pub fn ltst<'a>(incumbent: &'a SumTuple, candidate: &'a SumTuple) -> &'a SumTuple {
    if incumbent.is_empty() || candidate.x > incumbent.x {
        candidate
    } else {
        incumbent
    }
}

pub fn prepare(inst: &IntegerInstance) -> (SidePair, CandidateSets) {
    let n = inst.n();
    let m = inst.pivot();
    let sides = SidePair::for_pivot(m, n);
    let pivot_weight = inst.weight(m);
    let mate = m - sides.p;

    let s_min: Vec<usize> = (1..=n)
        .filter(|&i| i != mate && inst.weight(i + sides.p) <= pivot_weight)
        .collect();
    // The pivot's own pair can never join the other side.
    let s_max: Vec<usize> = (1..=n)
        .filter(|&i| i != mate && inst.weight(i + sides.p_prime) >= pivot_weight)
        .collect();
    let q = s_min.iter().fold(pivot_weight.clone(), |acc, &i| {
        acc + inst.weight(i + sides.p)
    });
    (sides, CandidateSets { s_min, s_max, q })
}

/// Exact `max/min` comparison of two positive sum pairs; `None` is +∞.
fn better(candidate: (&BigUint, &BigUint), incumbent: Option<(&BigUint, &BigUint)>) -> bool {
    match incumbent {
        None => true,
        Some((hi, lo)) => candidate.0 * lo < hi * candidate.1,
    }
}

fn pair_value(sol: &SolutionPair, inst: &IntegerInstance) -> Option<(BigUint, BigUint)> {
    if sol.s1.is_empty() || sol.s2.is_empty() {
        return None;
    }
    let sum = |s: &IndexSet| {
        s.iter()
            .fold(BigUint::zero(), |acc, &i| acc + inst.weight(i))
    };
    let (a, b) = (sum(&sol.s1), sum(&sol.s2));
    Some(if a >= b { (a, b) } else { (b, a) })
}

/// `MR` of a pair under the instance's integer weights.
pub fn value_of(sol: &SolutionPair, inst: &IntegerInstance) -> RatioValue {
    match pair_value(sol, inst) {
        Some((hi, lo)) => RatioValue::from(num::BigRational::new(hi.into(), lo.into())),
        None => RatioValue::Infinite,
    }
}

/// Best pair whose heavy side is a single element heavier than `q`.
pub fn solve_case1(inst: &IntegerInstance, sides: SidePair, cand: &CandidateSets) -> SolutionPair {
    let mate = inst.pivot() - sides.p;
    let mut best: Option<(BigUint, BigUint)> = None;
    let mut chosen = None;
    for &i in &cand.s_max {
        let heavy = inst.weight(i + sides.p_prime);
        if *heavy <= cand.q {
            continue;
        }
        let light = if cand.s_min.binary_search(&i).is_ok() {
            &cand.q - inst.weight(i + sides.p)
        } else {
            cand.q.clone()
        };
        if better((heavy, &light), best.as_ref().map(|(h, l)| (h, l))) {
            best = Some((heavy.clone(), light));
            chosen = Some(i);
        }
    }
    match chosen {
        None => SolutionPair::empty(),
        Some(i) => {
            let s1 = cand
                .s_min
                .iter()
                .copied()
                .chain(std::iter::once(mate))
                .filter(|&j| j != i)
                .map(|j| j + sides.p)
                .collect();
            SolutionPair::new(s1, [i + sides.p_prime].into_iter().collect())
        }
    }
}

const EMPTY: u8 = 0;
const START: u8 = 1;
const CARRY: u8 = 2;
const TAKE_S1: u8 = 3;
const TAKE_S2_FROM_0: u8 = 4;
const TAKE_S2_FROM_1: u8 = 5;

/// The filled Case 2 table `T[i, d, l]` for `i ∈ 0..=n`, `d ∈ -2q..=q`,
/// `l ∈ {0, 1}`.
///
/// Each cell keeps only the transition that last won its LTST comparison;
/// sets are recovered by walking those decisions back to row 0. Totals `x`
/// are retained for the final row only.
#[derive(Debug, Clone)]
pub struct Case2Table {
    n: usize,
    pivot: usize,
    sides: SidePair,
    q: i64,
    width: usize,
    /// Per base index: first-side weight if the index may join the pivot set.
    grow_pivot: Vec<Option<u64>>,
    /// Per base index: other-side weight if it fits in the window, with the
    /// witness flag.
    grow_other: Vec<Option<(u64, bool)>>,
    decisions: Vec<u8>,
    last_x: Vec<u64>,
    cell_ops: u64,
}

impl Case2Table {
    pub fn build(inst: &IntegerInstance, sides: SidePair, cand: &CandidateSets) -> Result<Self> {
        let n = inst.n();
        let m = inst.pivot();
        let mate = m - sides.p;
        let q = cand
            .q
            .to_u64()
            .filter(|&q| q < 1 << 40)
            .ok_or(Error::TableTooLarge(u128::MAX))? as i64;
        let width = 3 * q as usize + 1;
        let cells = (n as u128 + 1) * width as u128 * 2;
        if cells > MAX_TABLE_CELLS {
            return Err(Error::TableTooLarge(cells));
        }

        let mut grow_pivot = vec![None; n + 1];
        for &i in &cand.s_min {
            grow_pivot[i] = inst.weight(i + sides.p).to_u64();
        }
        let mut in_max = vec![false; n + 1];
        for &i in &cand.s_max {
            in_max[i] = true;
        }
        let mut grow_other = vec![None; n + 1];
        for (i, slot) in grow_other.iter_mut().enumerate().skip(1) {
            if i == mate {
                continue;
            }
            // Anything heavier than 3q would leave the window from any d ≤ q.
            let w = inst.weight(i + sides.p_prime);
            if let Some(w) = w.to_u64().filter(|&w| w <= 3 * q as u64) {
                *slot = Some((w, in_max[i]));
            }
        }

        let pivot_weight = inst.weight(m).to_u64().expect("pivot weight bounded by q");
        let mut table = Case2Table {
            n,
            pivot: m,
            sides,
            q,
            width,
            grow_pivot,
            grow_other,
            decisions: vec![EMPTY; (n + 1) * width * 2],
            last_x: Vec::new(),
            cell_ops: n as u64 + cand.s_max.len() as u64,
        };
        table.fill(pivot_weight);
        Ok(table)
    }

    fn slot(&self, i: usize, pos: usize, l: usize) -> usize {
        (i * self.width + pos) * 2 + l
    }

    fn fill(&mut self, pivot_weight: u64) {
        let width = self.width;
        let mut prev = vec![0u64; width * 2];
        let mut cur = vec![0u64; width * 2];
        let start = self.pos(pivot_weight as i64);
        prev[start * 2] = pivot_weight;
        let s = self.slot(0, start, 0);
        self.decisions[s] = START;

        for i in 1..=self.n {
            cur.iter_mut().for_each(|x| *x = 0);
            let row = i * width * 2;
            let grow_pivot = self.grow_pivot[i];
            let grow_other = self.grow_other[i];
            let decisions = &mut self.decisions[row..row + width * 2];
            let mut write = |cur: &mut [u64], at: usize, x: u64, how: u8| {
                if cur[at] == 0 || x > cur[at] {
                    cur[at] = x;
                    decisions[at] = how;
                }
            };
            for pos in 0..width {
                for l in 0..2 {
                    let x = prev[pos * 2 + l];
                    if x == 0 {
                        continue;
                    }
                    write(&mut cur, pos * 2 + l, x, CARRY);
                    if let Some(a) = grow_pivot {
                        let to = pos + a as usize;
                        debug_assert!(to < width, "pivot-side sum exceeds q");
                        write(&mut cur, to * 2 + l, x + a, TAKE_S1);
                    }
                    if let Some((b, witness)) = grow_other {
                        if pos >= b as usize {
                            let to_l = if witness { 1 } else { l };
                            let how = if l == 0 {
                                TAKE_S2_FROM_0
                            } else {
                                TAKE_S2_FROM_1
                            };
                            write(&mut cur, (pos - b as usize) * 2 + to_l, x + b, how);
                        }
                    }
                }
            }
            self.cell_ops += (width * 2) as u64;
            std::mem::swap(&mut prev, &mut cur);
        }
        self.last_x = prev;
    }

    fn pos(&self, d: i64) -> usize {
        (d + 2 * self.q) as usize
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Inclusive range of the difference axis.
    pub fn window(&self) -> (i64, i64) {
        (-2 * self.q, self.q)
    }

    pub fn rows(&self) -> usize {
        self.n + 1
    }

    pub fn cell_ops(&self) -> u64 {
        self.cell_ops
    }

    pub fn occupied(&self, i: usize, d: i64, l: usize) -> bool {
        let (lo, hi) = self.window();
        i <= self.n && lo <= d && d <= hi && self.decisions[self.slot(i, self.pos(d), l)] != EMPTY
    }

    /// Walks the stored decisions back from `T[i, d, l]`.
    pub fn reconstruct(&self, i: usize, d: i64, l: usize) -> Option<SolutionPair> {
        if !self.occupied(i, d, l) {
            return None;
        }
        let (p, pp) = (self.sides.p, self.sides.p_prime);
        let mut sol = SolutionPair::empty();
        let (mut row, mut pos, mut flag) = (i, self.pos(d), l);
        while row > 0 {
            match self.decisions[self.slot(row, pos, flag)] {
                CARRY => {}
                TAKE_S1 => {
                    sol.s1.insert(row + p);
                    pos -= self.grow_pivot[row].expect("recorded pivot-side step") as usize;
                }
                how @ (TAKE_S2_FROM_0 | TAKE_S2_FROM_1) => {
                    sol.s2.insert(row + pp);
                    pos += self.grow_other[row].expect("recorded other-side step").0 as usize;
                    flag = usize::from(how == TAKE_S2_FROM_1);
                }
                other => unreachable!("decision {other} at row {row}"),
            }
            row -= 1;
        }
        debug_assert_eq!(self.decisions[self.slot(0, pos, flag)], START);
        sol.s1.insert(self.pivot);
        Some(sol)
    }

    /// Stored total for a final-row cell.
    pub fn final_x(&self, d: i64, l: usize) -> Option<u64> {
        let (lo, hi) = self.window();
        if d < lo || d > hi {
            return None;
        }
        Some(self.last_x[self.pos(d) * 2 + l]).filter(|&x| x > 0)
    }

    /// Scans `T[n, d, 1]` for increasing `d` and keeps the first pair with the
    /// smallest max ratio.
    pub fn best(&self) -> SolutionPair {
        let mut best: Option<(u128, u128, i64)> = None;
        for pos in 0..self.width {
            let x = self.last_x[pos * 2 + 1];
            if x == 0 {
                continue;
            }
            let d = pos as i64 - 2 * self.q;
            let s1 = (x as i128 + d as i128) / 2;
            let s2 = (x as i128 - d as i128) / 2;
            let (hi, lo) = if s1 >= s2 { (s1, s2) } else { (s2, s1) };
            let (hi, lo) = (hi as u128, lo as u128);
            let improves = match best {
                None => true,
                Some((bh, bl, _)) => hi * bl < bh * lo,
            };
            if improves {
                best = Some((hi, lo, d));
            }
        }
        match best {
            Some((_, _, d)) => self.reconstruct(self.n, d, 1).expect("occupied final cell"),
            None => SolutionPair::empty(),
        }
    }
}

/// Best pair found by the difference DP, or empty if no `T[n, d, 1]` cell is
/// reachable.
pub fn solve_case2(
    inst: &IntegerInstance,
    sides: SidePair,
    cand: &CandidateSets,
) -> Result<SolutionPair> {
    Ok(Case2Table::build(inst, sides, cand)?.best())
}

/// Optimal pivot-anchored pair, or empty when none exists. Runs in
/// `O(n² · a_m)`.
pub fn solve_anchored(inst: &IntegerInstance) -> Result<Solved> {
    let (sides, cand) = prepare(inst);
    if cand.s_max.is_empty() {
        return Ok(Solved {
            solution: SolutionPair::empty(),
            cell_ops: inst.n() as u64,
        });
    }
    let case1 = solve_case1(inst, sides, &cand);
    let table = Case2Table::build(inst, sides, &cand)?;
    let case2 = table.best();
    let mut cell_ops = table.cell_ops();
    cell_ops += table.width as u64;
    let pick_case1 = match (pair_value(&case1, inst), pair_value(&case2, inst)) {
        (Some(v1), v2) => better((&v1.0, &v1.1), v2.as_ref().map(|(h, l)| (h, l))),
        (None, _) => false,
    };
    Ok(Solved {
        solution: if pick_case1 { case1 } else { case2 },
        cell_ops,
    })
}

/// Optimal pair whose smaller set-maximum equals `a_m` by value. Every index
/// carrying that weight is tried as the anchor, the given pivot first.
pub fn solve_semi_restricted(inst: &IntegerInstance) -> Result<Solved> {
    let m = inst.pivot();
    let target = inst.weight(m);
    let anchors = std::iter::once(m)
        .chain((1..=inst.weights().len()).filter(|&e| e != m && inst.weight(e) == target));
    let mut best = Solved {
        solution: SolutionPair::empty(),
        cell_ops: 0,
    };
    let mut best_value: Option<(BigUint, BigUint)> = None;
    for e in anchors {
        let anchored = if e == m {
            solve_anchored(inst)?
        } else {
            solve_anchored(&inst.with_pivot(e)?)?
        };
        best.cell_ops += anchored.cell_ops;
        if let Some(v) = pair_value(&anchored.solution, inst) {
            if better((&v.0, &v.1), best_value.as_ref().map(|(h, l)| (h, l))) {
                best_value = Some(v);
                best.solution = anchored.solution;
            }
        }
    }
    Ok(best)
}

/// An exact solver the approximation driver can delegate to: given scaled
/// integer weights and a pivot, return an optimal feasible pair (or empty).
pub trait ExactSolver: Sync {
    fn solve(&self, inst: &IntegerInstance) -> Result<Solved>;
}

/// [`solve_anchored`] as an [`ExactSolver`].
#[derive(Debug, Clone, Copy, Default)]
pub struct AnchoredSolver;

impl ExactSolver for AnchoredSolver {
    fn solve(&self, inst: &IntegerInstance) -> Result<Solved> {
        solve_anchored(inst)
    }
}

/// [`solve_semi_restricted`] as an [`ExactSolver`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SemiRestrictedSolver;

impl ExactSolver for SemiRestrictedSolver {
    fn solve(&self, inst: &IntegerInstance) -> Result<Solved> {
        solve_semi_restricted(inst)
    }
}

impl<F> ExactSolver for F
where
    F: Fn(&IntegerInstance) -> Result<Solved> + Sync,
{
    fn solve(&self, inst: &IntegerInstance) -> Result<Solved> {
        self(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::check_feasible_semi_restricted;
    use crate::rational::{int, ratio};

    fn inst(a: &[u64], b: &[u64], m: usize) -> IntegerInstance {
        let w: Vec<u64> = a.iter().chain(b).copied().collect();
        IntegerInstance::from_u64(&w, m).unwrap()
    }

    fn pair(s1: &[usize], s2: &[usize]) -> SolutionPair {
        SolutionPair::from_slices(s1, s2)
    }

    fn tuple(s1: &[usize], s2: &[usize], x: u64) -> SumTuple {
        SumTuple {
            s1: s1.iter().copied().collect(),
            s2: s2.iter().copied().collect(),
            x: BigUint::from(x),
        }
    }

    #[test]
    fn ltst_examples() {
        let empty = SumTuple::default();
        let v = tuple(&[1], &[], 7);
        assert_eq!(ltst(&empty, &v), &v);
        let (a, b) = (tuple(&[1], &[3], 5), tuple(&[2], &[4], 7));
        assert_eq!(ltst(&a, &b), &b);
        let c = tuple(&[2], &[4], 5);
        assert_eq!(ltst(&a, &c), &a);
    }

    #[test]
    fn prepare_examples() {
        let (sides, cand) = prepare(&inst(&[2, 2], &[100, 1], 1));
        assert_eq!(sides, SidePair { p: 0, p_prime: 2 });
        assert_eq!(cand.s_min, vec![2]);
        // Base index 1 is the pivot's own pair and stays out of s_max.
        assert_eq!(cand.s_max, Vec::<usize>::new());
        assert_eq!(cand.q, BigUint::from(4u8));

        let (sides, cand) = prepare(&inst(&[5, 3], &[4, 6], 4));
        assert_eq!(sides, SidePair { p: 2, p_prime: 0 });
        assert_eq!(cand.s_min, vec![1]);
        assert!(cand.s_max.is_empty());
        assert_eq!(cand.q, BigUint::from(10u8));

        for m in 1..=3 {
            let (sides, _) = prepare(&inst(&[1, 2, 3], &[3, 2, 1], m));
            assert_eq!(sides, SidePair { p: 0, p_prime: 3 });
        }
    }

    #[test]
    fn case1_examples() {
        let i = inst(&[2, 2], &[100, 1], 2);
        let (sides, cand) = prepare(&i);
        assert_eq!(solve_case1(&i, sides, &cand), pair(&[2], &[3]));
        assert_eq!(value_of(&pair(&[2], &[3]), &i), RatioValue::Finite(int(50)));

        let i = inst(&[5, 3], &[4, 6], 1);
        let (sides, cand) = prepare(&i);
        assert_eq!(cand.q, BigUint::from(8u8));
        assert!(solve_case1(&i, sides, &cand).is_empty());

        // Heavy element 50 at base 2, whose first side (9) exceeds a_m and so
        // is not in s_min: the light side keeps the whole of q.
        let i = inst(&[4, 9, 1], &[1, 50, 1], 1);
        let (sides, cand) = prepare(&i);
        assert_eq!(cand.s_min, vec![3]);
        assert_eq!(cand.q, BigUint::from(5u8));
        let sol = solve_case1(&i, sides, &cand);
        assert_eq!(sol, pair(&[1, 3], &[5]));
        assert_eq!(value_of(&sol, &i), RatioValue::Finite(int(10)));
    }

    #[test]
    fn case2_examples() {
        let i = inst(&[5, 3], &[4, 6], 1);
        let (sides, cand) = prepare(&i);
        let sol = solve_case2(&i, sides, &cand).unwrap();
        assert_eq!(sol, pair(&[1], &[4]));
        assert_eq!(value_of(&sol, &i), RatioValue::Finite(ratio(6, 5)));

        let i = inst(&[2, 2], &[100, 1], 1);
        let (sides, cand) = prepare(&i);
        assert!(solve_case2(&i, sides, &cand).unwrap().is_empty());

        let i = inst(&[4, 4], &[4, 4], 1);
        let (sides, cand) = prepare(&i);
        let sol = solve_case2(&i, sides, &cand).unwrap();
        assert_eq!(sol, pair(&[1], &[4]));
        assert_eq!(value_of(&sol, &i), RatioValue::Finite(int(1)));
    }

    #[test]
    fn dispatch_examples() {
        let i = inst(&[2, 2], &[100, 1], 1);
        let s = solve_semi_restricted(&i).unwrap();
        assert_eq!(s.solution, pair(&[2], &[3]));
        assert_eq!(value_of(&s.solution, &i), RatioValue::Finite(int(50)));
        assert!(solve_anchored(&i).unwrap().solution.is_empty());

        let i = inst(&[5, 3], &[4, 6], 1);
        let s = solve_semi_restricted(&i).unwrap();
        assert_eq!(s.solution, pair(&[1], &[4]));

        let i = inst(&[5, 3], &[4, 6], 4);
        assert!(solve_semi_restricted(&i).unwrap().solution.is_empty());
    }

    #[test]
    fn pivot_on_second_side() {
        // m = 4 (b_2 = 6): pivot set on the b side, heavy witness on a side.
        let i = inst(&[7, 1], &[2, 6], 4);
        let s = solve_anchored(&i).unwrap().solution;
        assert_eq!(s, pair(&[4], &[1]));
        assert!(check_feasible_semi_restricted(&s, i.weights(), 4));
    }

    #[test]
    fn huge_other_side_weight_stays_out_of_table() {
        let w = [3u64, 2, 1, 1, u64::MAX, 3];
        let i = IntegerInstance::from_u64(&w, 1).unwrap();
        let (_, cand) = prepare(&i);
        assert_eq!(cand.s_max, vec![2, 3]);
        let s = solve_anchored(&i).unwrap().solution;
        assert_eq!(s, pair(&[1], &[6]));
    }

    #[test]
    fn refuses_enormous_tables() {
        let w = [1u64 << 41, 1, 1, 1 << 41];
        let i = IntegerInstance::from_u64(&w, 1).unwrap();
        assert!(matches!(solve_anchored(&i), Err(Error::TableTooLarge(_))));
    }
}
