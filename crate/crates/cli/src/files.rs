//! On-disk instance and solution formats (JSON, `"format": 1`).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use ssr_core::rational;
use ssr_core::{
    decode, FactorRInstance, IndexSet, RatioValue, Rational, SolutionPair, SourceKind, SsrInstance,
    TwoSetInstance,
};

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Ssr,
    TwoSet,
    FactorR,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Ssr => "ssr",
            Problem::TwoSet => "two-set",
            Problem::FactorR => "factor-r",
        })
    }
}

/// A rejected input file or flag. Maps to exit status 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<ssr_core::Error> for InputError {
    fn from(e: ssr_core::Error) -> Self {
        InputError(e.to_string())
    }
}

fn input<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format: u32,
    problem: Problem,
    #[serde(default)]
    weights: Option<Vec<Value>>,
    #[serde(default)]
    pairs: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    r: Option<Value>,
}

/// Numbers keep their source text, so `0.1` parses to exactly 1/10.
fn number(value: &Value, what: &str) -> Result<Rational, InputError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return input(format!(
                "{what}: expected a number or rational string, got {other}"
            ))
        }
    };
    rational::parse(&text)
        .map_err(|_| InputError(format!("{what}: cannot parse {text:?} as a rational")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Ssr(SsrInstance),
    TwoSet(TwoSetInstance),
    FactorR(FactorRInstance),
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let raw: RawInstance = serde_json::from_str(text)
            .map_err(|e| InputError(format!("malformed instance file: {e}")))?;
        if raw.format != FORMAT {
            return input(format!(
                "unsupported instance format {}, expected {FORMAT}",
                raw.format
            ));
        }
        let weights = |raw: &RawInstance| -> Result<Vec<Rational>, InputError> {
            let Some(ws) = &raw.weights else {
                return input(format!("problem {} needs a \"weights\" list", raw.problem));
            };
            if raw.pairs.is_some() {
                return input(format!(
                    "problem {} takes \"weights\", not \"pairs\"",
                    raw.problem
                ));
            }
            ws.iter()
                .enumerate()
                .map(|(i, v)| number(v, &format!("weight {}", i + 1)))
                .collect()
        };
        match raw.problem {
            Problem::Ssr => {
                if raw.r.is_some() {
                    return input("problem ssr does not take \"r\"");
                }
                Ok(Instance::Ssr(SsrInstance::new(weights(&raw)?)?))
            }
            Problem::FactorR => {
                let Some(r) = &raw.r else {
                    return input("problem factor-r needs \"r\"");
                };
                let r = number(r, "r")?;
                Ok(Instance::FactorR(FactorRInstance::new(weights(&raw)?, r)?))
            }
            Problem::TwoSet => {
                if raw.weights.is_some() || raw.r.is_some() {
                    return input("problem two-set takes only \"pairs\"");
                }
                let Some(pairs) = &raw.pairs else {
                    return input("problem two-set needs a \"pairs\" list");
                };
                let mut parsed = Vec::with_capacity(pairs.len());
                for (i, pair) in pairs.iter().enumerate() {
                    let [a, b] = pair.as_slice() else {
                        return input(format!("pair {} must have exactly two entries", i + 1));
                    };
                    parsed.push((
                        number(a, &format!("pair {} first", i + 1))?,
                        number(b, &format!("pair {} second", i + 1))?,
                    ));
                }
                Ok(Instance::TwoSet(TwoSetInstance::from_pairs(parsed)?))
            }
        }
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read instance {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn problem(&self) -> Problem {
        match self {
            Instance::Ssr(_) => Problem::Ssr,
            Instance::TwoSet(_) => Problem::TwoSet,
            Instance::FactorR(_) => Problem::FactorR,
        }
    }

    /// Number of source items (pairs for two-set).
    pub fn n(&self) -> usize {
        match self {
            Instance::Ssr(s) => s.weights().len(),
            Instance::TwoSet(t) => t.n(),
            Instance::FactorR(f) => f.weights().len(),
        }
    }

    /// The 2-Set instance the solvers work on.
    pub fn encoded(&self) -> TwoSetInstance {
        match self {
            Instance::TwoSet(t) => t.clone(),
            Instance::Ssr(s) => SourceKind::Ssr(s.clone()).encode(),
            Instance::FactorR(f) => SourceKind::FactorR(f.clone()).encode(),
        }
    }

    pub fn to_json(&self) -> String {
        let strings = |ws: &[Rational]| {
            ws.iter()
                .map(|w| Value::String(rational::format(w)))
                .collect::<Vec<_>>()
        };
        let mut obj = serde_json::Map::new();
        obj.insert("format".into(), FORMAT.into());
        obj.insert("problem".into(), self.problem().to_string().into());
        match self {
            Instance::Ssr(s) => {
                obj.insert("weights".into(), strings(s.weights()).into());
            }
            Instance::FactorR(f) => {
                obj.insert("weights".into(), strings(f.weights()).into());
                obj.insert("r".into(), rational::format(f.r()).into());
            }
            Instance::TwoSet(t) => {
                let pairs: Vec<Value> = (1..=t.n())
                    .map(|i| {
                        let (a, b) = t.pair(i);
                        Value::Array(vec![rational::format(a).into(), rational::format(b).into()])
                    })
                    .collect();
                obj.insert("pairs".into(), pairs.into());
            }
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        text.push('\n');
        text
    }

    /// Source-level view of an encoded pair: labelled base-index sets and
    /// their effective sums. `None` for infeasible pairs.
    pub fn describe(&self, sol: &SolutionPair) -> Option<Described> {
        let n = self.n();
        if !ssr_core::check_feasible_two_set(sol, n) {
            return None;
        }
        let (s1, s2) = match self {
            Instance::TwoSet(_) => {
                let (a, b) = if sol.s1.iter().all(|&i| i <= n) {
                    (&sol.s1, &sol.s2)
                } else {
                    (&sol.s2, &sol.s1)
                };
                (a.clone(), b.iter().map(|i| i - n).collect::<IndexSet>())
            }
            Instance::Ssr(s) => {
                let d = decode(sol, &SourceKind::Ssr(s.clone()));
                (d.s1, d.s2)
            }
            Instance::FactorR(f) => {
                let d = decode(sol, &SourceKind::FactorR(f.clone()));
                (d.s1, d.s2)
            }
        };
        let sum1: Rational = s1.iter().map(|&i| self.item_weight(i, 1)).sum();
        let sum2: Rational = s2.iter().map(|&i| self.item_weight(i, 2)).sum();
        let ratio = if sum1 >= sum2 {
            &sum1 / &sum2
        } else {
            &sum2 / &sum1
        };
        Some(Described {
            s1,
            s2,
            sum1,
            sum2,
            ratio,
        })
    }

    /// Effective weight of item `i` when it sits in `s1` (`set == 1`) or `s2`.
    fn item_weight(&self, i: usize, set: u8) -> Rational {
        match self {
            Instance::Ssr(s) => s.weights()[i - 1].clone(),
            Instance::FactorR(f) if set == 1 => f.r() * &f.weights()[i - 1],
            Instance::FactorR(f) => f.weights()[i - 1].clone(),
            Instance::TwoSet(t) => {
                let (a, b) = t.pair(i);
                if set == 1 {
                    a.clone()
                } else {
                    b.clone()
                }
            }
        }
    }

    /// Side labels for `s1` and `s2`, if the problem distinguishes sides.
    pub fn side_labels(&self) -> (Option<&'static str>, Option<&'static str>) {
        match self {
            Instance::Ssr(_) => (None, None),
            Instance::TwoSet(_) => (Some("a"), Some("b")),
            Instance::FactorR(_) => (Some("r-scaled"), Some("plain")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Described {
    pub s1: IndexSet,
    pub s2: IndexSet,
    pub sum1: Rational,
    pub sum2: Rational,
    pub ratio: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Fptas,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    Approximate,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    /// 1-based item (pair) indices.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub pivots_evaluated: usize,
    pub dp_cell_ops: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// One pivot of the approximation run. Sets use the flattened 2-Set
/// indices (`n + i` is the second side of pair `i`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEntry {
    pub pivot: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub scaled_ratio: String,
    pub ratio: String,
    pub dp_cell_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub format: u32,
    pub problem: Problem,
    pub mode: Mode,
    pub status: Status,
    pub s1: SideSet,
    pub s2: SideSet,
    /// Effective sums; for factor-r `sum1` already includes the factor r.
    pub sum1: Option<String>,
    pub sum2: Option<String>,
    /// `max(sum1, sum2) / min(sum1, sum2)`, or `"inf"`.
    pub ratio: String,
    pub ratio_decimal: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot_used: Option<usize>,
    /// Pivot index given to the oracle, if restricted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<usize>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

impl SolutionFile {
    /// Fills sets, sums and ratio from an encoded pair.
    pub fn new(instance: &Instance, mode: Mode, status: Status, sol: &SolutionPair) -> Self {
        let (l1, l2) = instance.side_labels();
        let side = |label: Option<&str>, set: &IndexSet| SideSet {
            side: label.map(str::to_string),
            indices: set.iter().copied().collect(),
        };
        let described = instance.describe(sol);
        let empty = IndexSet::new();
        let (s1, s2) = match &described {
            Some(d) => (side(l1, &d.s1), side(l2, &d.s2)),
            None => (side(l1, &empty), side(l2, &empty)),
        };
        let ratio = match &described {
            Some(d) => RatioValue::Finite(d.ratio.clone()),
            None => RatioValue::Infinite,
        };
        SolutionFile {
            format: FORMAT,
            problem: instance.problem(),
            mode,
            status: if described.is_some() {
                status
            } else {
                Status::Infeasible
            },
            s1,
            s2,
            sum1: described.as_ref().map(|d| rational::format(&d.sum1)),
            sum2: described.as_ref().map(|d| rational::format(&d.sum2)),
            ratio: ratio.to_string(),
            ratio_decimal: ratio.is_finite().then(|| ratio.to_f64()),
            epsilon: None,
            bound: None,
            pivot_used: None,
            pivot: None,
            stats: Stats {
                pivots_evaluated: 0,
                dp_cell_ops: 0,
                wall_time_ms: None,
            },
            trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let file: SolutionFile = serde_json::from_str(text)
            .map_err(|e| InputError(format!("malformed solution file: {e}")))?;
        if file.format != FORMAT {
            return input(format!(
                "unsupported solution format {}, expected {FORMAT}",
                file.format
            ));
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read solution {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The encoded pair this file names, if its sets are well formed.
    pub fn encoded_pair(&self, instance: &Instance) -> Result<SolutionPair, InputError> {
        let n = instance.n();
        for (set, name) in [(&self.s1, "s1"), (&self.s2, "s2")] {
            if let Some(&i) = set.indices.iter().find(|&&i| i == 0 || i > n) {
                return input(format!("{name} index {i} is outside 1..={n}"));
            }
            let unique: IndexSet = set.indices.iter().copied().collect();
            if unique.len() != set.indices.len() {
                return input(format!("{name} repeats an index"));
            }
        }
        let first: IndexSet = self.s1.indices.iter().copied().collect();
        let second: IndexSet = self.s2.indices.iter().copied().collect();
        Ok(match instance {
            // s1 is the r-scaled set, which the encoding puts on the second side.
            Instance::FactorR(_) => {
                SolutionPair::new(second, first.iter().map(|i| i + n).collect())
            }
            _ => SolutionPair::new(first, second.iter().map(|i| i + n).collect()),
        })
    }
}
