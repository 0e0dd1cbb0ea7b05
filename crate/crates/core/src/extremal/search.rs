use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{shard, Domain, Shard};
use crate::error::{Error, Result};
use crate::index::{difference_profile, is_tie, sigma_t_f, DegreeSequence, ExponentSpec, IndexValue};

/// Default refusal threshold on the number of candidate sequences.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    /// The prediction holds but optimizers span several difference profiles.
    TieDetected,
    /// No prediction was checked.
    Explored,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Refuted => "refuted",
            Verdict::TieDetected => "tie_detected",
            Verdict::Explored => "explored",
        };
        f.write_str(s)
    }
}

/// An exponent family, optionally scaled by a constant factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    pub spec: ExponentSpec,
    pub factor: f64,
}

impl Exponent {
    pub fn new(spec: ExponentSpec) -> Self {
        Exponent { spec, factor: 1.0 }
    }

    pub fn scaled(spec: ExponentSpec, factor: f64) -> Self {
        Exponent { spec, factor }
    }

    pub fn resolve(&self, n: usize) -> Result<f64> {
        let f = self.spec.resolve(n)? * self.factor;
        if f > 0.0 && f.is_finite() {
            Ok(f)
        } else {
            Err(Error::NonPositiveExponent(f))
        }
    }
}

impl From<ExponentSpec> for Exponent {
    fn from(spec: ExponentSpec) -> Self {
        Exponent::new(spec)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factor == 1.0 {
            write!(f, "{}", self.spec)
        } else {
            write!(f, "{}*{}", self.spec, self.factor)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub shards: usize,
    pub budget: u128,
    /// Sequences skipped entirely (e.g. to find the second extremum).
    pub exclude: Vec<DegreeSequence>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            shards: 1,
            budget: DEFAULT_BUDGET,
            exclude: Vec::new(),
        }
    }
}

/// Result of one exhaustive scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub label: String,
    pub domain: Domain,
    pub direction: Direction,
    pub exponent: Exponent,
    pub f: f64,
    pub optimum: IndexValue,
    /// Set when the exponent is 1 or 2 and the scan ran in integers.
    pub exact_optimum: Option<u128>,
    /// All sequences within tie tolerance of the optimum, lexicographically decreasing.
    pub optimizers: Vec<DegreeSequence>,
    pub distinct_profiles: usize,
    pub runner_up: Option<IndexValue>,
    /// `|optimum − runner_up|`; absent when every sequence is an optimizer.
    pub runner_up_margin: Option<f64>,
    pub expected: Option<Vec<DegreeSequence>>,
    pub verdict: Verdict,
    pub witness: Option<DegreeSequence>,
    pub excluded: Vec<DegreeSequence>,
    pub sequences_scanned: u64,
    pub candidate_count: u128,
    pub note: Option<String>,
    pub wall_time_secs: f64,
}

impl ExtremalReport {
    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &ExtremalReport) -> bool {
        let mut a = self.clone();
        a.wall_time_secs = other.wall_time_secs;
        &a == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Score {
    Exact(u128),
    Float(f64),
}

impl Score {
    fn as_f64(self) -> f64 {
        match self {
            Score::Exact(v) => v as f64,
            Score::Float(v) => v,
        }
    }

    fn raw_cmp(self, other: Score) -> Ordering {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a.cmp(&b),
            (a, b) => a.as_f64().total_cmp(&b.as_f64()),
        }
    }

    fn ties(self, other: Score) -> bool {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a == b,
            (a, b) => is_tie(a.as_f64(), b.as_f64()),
        }
    }
}

#[derive(Clone, Copy)]
enum Evaluator {
    Exact(u32),
    Float(f64),
}

impl Evaluator {
    fn for_exponent(f: f64) -> Self {
        if f == 1.0 {
            Evaluator::Exact(1)
        } else if f == 2.0 {
            Evaluator::Exact(2)
        } else {
            Evaluator::Float(f)
        }
    }

    fn score(&self, seq: &DegreeSequence) -> Score {
        let profile = difference_profile(seq);
        match *self {
            Evaluator::Exact(p) => Score::Exact(profile.power_sum(p)),
            Evaluator::Float(f) => Score::Float(sigma_t_f(&profile, f).expect("f > 0").value),
        }
    }
}

/// Per-shard accumulator. `merge` is associative and commutative: the final
/// optimizer set is everything tied with the global extreme, and the runner-up
/// is the extreme of everything else.
struct Partial {
    direction: Direction,
    best: Option<Score>,
    optimizers: Vec<(DegreeSequence, Score)>,
    runner_up: Option<Score>,
    scanned: u64,
}

impl Partial {
    fn new(direction: Direction) -> Self {
        Partial {
            direction,
            best: None,
            optimizers: Vec::new(),
            runner_up: None,
            scanned: 0,
        }
    }

    /// True when `a` is strictly better than `b` in raw order.
    fn better(&self, a: Score, b: Score) -> bool {
        match self.direction {
            Direction::Max => a.raw_cmp(b) == Ordering::Greater,
            Direction::Min => a.raw_cmp(b) == Ordering::Less,
        }
    }

    fn offer_runner_up(&mut self, score: Score) {
        match self.runner_up {
            Some(r) if !self.better(score, r) => {}
            _ => self.runner_up = Some(score),
        }
    }

    fn push(&mut self, seq: DegreeSequence, score: Score) {
        let Some(best) = self.best else {
            self.best = Some(score);
            self.optimizers.push((seq, score));
            return;
        };
        if self.better(score, best) {
            self.best = Some(score);
            let (keep, dropped): (Vec<_>, Vec<_>) = std::mem::take(&mut self.optimizers)
                .into_iter()
                .partition(|(_, s)| s.ties(score));
            self.optimizers = keep;
            for (_, s) in dropped {
                self.offer_runner_up(s);
            }
            self.optimizers.push((seq, score));
        } else if score.ties(best) {
            self.optimizers.push((seq, score));
        } else {
            self.offer_runner_up(score);
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        if let Some(r) = other.runner_up {
            self.offer_runner_up(r);
        }
        for (seq, score) in other.optimizers {
            self.push(seq, score);
        }
        self
    }
}

fn scan_shard(shard: &Shard, eval: Evaluator, direction: Direction, exclude: &HashSet<DegreeSequence>) -> Result<Partial> {
    let mut partial = Partial::new(direction);
    for seq in shard.sequences()? {
        if exclude.contains(&seq) {
            continue;
        }
        partial.scanned += 1;
        let score = eval.score(&seq);
        partial.push(seq, score);
    }
    Ok(partial)
}

/// Exhaustively scans `domain` for the extreme value of `σ_t^f`.
///
/// Domains with more candidate sequences than `options.budget` are refused
/// up front. Shards run on the rayon pool and are merged deterministically.
pub fn search_extremum(
    domain: &Domain,
    exponent: Exponent,
    direction: Direction,
    options: &SearchOptions,
) -> Result<ExtremalReport> {
    let start = Instant::now();
    let candidate_count = domain.candidate_count()?;
    if candidate_count > options.budget {
        return Err(Error::OverBudget {
            domain_size: candidate_count,
            budget: options.budget,
        });
    }
    let f = exponent.resolve(domain.n)?;
    let eval = Evaluator::for_exponent(f);
    let shards = shard(domain, options.shards)?;
    let exclude: HashSet<DegreeSequence> = options.exclude.iter().cloned().collect();

    let partials: Vec<Partial> = shards
        .par_iter()
        .map(|s| scan_shard(s, eval, direction, &exclude))
        .collect::<Result<_>>()?;
    let merged = partials
        .into_iter()
        .fold(Partial::new(direction), Partial::merge);

    let best = merged
        .best
        .ok_or_else(|| Error::InvalidDomain(format!("domain {domain:?} is empty")))?;
    let mut optimizers: Vec<DegreeSequence> = merged.optimizers.into_iter().map(|(s, _)| s).collect();
    optimizers.sort_unstable_by(|a, b| b.cmp(a));
    let distinct_profiles = optimizers
        .iter()
        .map(difference_profile)
        .collect::<HashSet<_>>()
        .len();
    let runner_up = merged.runner_up;
    let mut excluded = options.exclude.clone();
    excluded.sort_unstable_by(|a, b| b.cmp(a));

    Ok(ExtremalReport {
        label: String::new(),
        domain: *domain,
        direction,
        exponent,
        f,
        optimum: IndexValue::new(best.as_f64()),
        exact_optimum: match best {
            Score::Exact(v) => Some(v),
            Score::Float(_) => None,
        },
        optimizers,
        distinct_profiles,
        runner_up: runner_up.map(|r| IndexValue::new(r.as_f64())),
        runner_up_margin: runner_up.map(|r| (best.as_f64() - r.as_f64()).abs()),
        expected: None,
        verdict: Verdict::Explored,
        witness: None,
        excluded,
        sequences_scanned: merged.scanned,
        candidate_count,
        note: None,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
