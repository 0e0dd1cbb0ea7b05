use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::search::{search_extremum, Direction, Exponent, ExtremalReport, SearchOptions, Verdict};
use crate::enumerate::{Domain, DomainKind};
use crate::error::{Error, Result};
use crate::graphical::antiregular_sequence;
use crate::index::{DegreeSequence, ExponentSpec};

/// Relative offset used to sample strictly above or below a threshold.
pub const THRESHOLD_OFFSET: f64 = 1e-3;

/// Default grid of constants for the constant-exponent problem and conjecture.
pub const DEFAULT_CONSTANTS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

/// The statements the harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Antiregular multisets maximize over graphical sequences at the binomial threshold.
    AntiregularGraphMax,
    /// Integer multisets in `[1, n−1]` at the corollary exponent.
    SequenceCorollary,
    /// Integer multisets in `[1, n−1]` at the sequence threshold, with the `(3,3,1,1)` exception.
    SequenceStrong,
    /// Tree minimizer trichotomy around the tree threshold.
    TreeMin,
    /// Below the tree threshold the path is second after the star.
    TreeSecondMin,
    /// Balanced chemical multiplicities maximize at the chemical threshold.
    ChemMax,
    /// Antiregular maximality at `f = 1/n`.
    Problem1,
    /// Antiregular maximality at a constant `f = c`.
    Problem2 { c: f64 },
    /// Tree maximizers (exploration only).
    TreeMaxProblem,
    /// Chemical maximizers at `f = 1/n` and at constants.
    ChemConjectures,
}

impl TheoremId {
    pub fn min_n(&self) -> usize {
        match self {
            TheoremId::ChemMax | TheoremId::ChemConjectures => 7,
            _ => 4,
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            TheoremId::AntiregularGraphMax => "antiregular-max",
            TheoremId::SequenceCorollary => "seq-corollary",
            TheoremId::SequenceStrong => "seq-strong",
            TheoremId::TreeMin => "tree-min",
            TheoremId::TreeSecondMin => "tree-second-min",
            TheoremId::ChemMax => "chem-max",
            TheoremId::Problem1 => "problem1",
            TheoremId::Problem2 { .. } => "problem2",
            TheoremId::TreeMaxProblem => "tree-max",
            TheoremId::ChemConjectures => "chem-conjectures",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::Problem2 { c } => write!(f, "problem2(c={c})"),
            other => f.write_str(other.slug()),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Parses a slug. `problem2` alone yields `c = 0.5`; use `problem2:<c>` to pick `c`.
    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "antiregular-max" => TheoremId::AntiregularGraphMax,
            "seq-corollary" => TheoremId::SequenceCorollary,
            "seq-strong" => TheoremId::SequenceStrong,
            "tree-min" => TheoremId::TreeMin,
            "tree-second-min" => TheoremId::TreeSecondMin,
            "chem-max" => TheoremId::ChemMax,
            "problem1" => TheoremId::Problem1,
            "problem2" => TheoremId::Problem2 { c: 0.5 },
            "tree-max" => TheoremId::TreeMaxProblem,
            "chem-conjectures" => TheoremId::ChemConjectures,
            other => match other.strip_prefix("problem2:").map(str::parse::<f64>) {
                Some(Ok(c)) if c > 0.0 && c < 1.0 => TheoremId::Problem2 { c },
                _ => return Err(Error::InvalidDomain(format!("unknown theorem `{s}`"))),
            },
        };
        Ok(id)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub search: SearchOptions,
    /// Constants swept by `ChemConjectures`.
    pub constants: Vec<f64>,
    /// Restrict graph domains to minimum degree 1.
    pub min_degree_one: bool,
    /// Chemical domain: graphical sequences instead of connected-realizable ones.
    pub graphical_only: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            search: SearchOptions::default(),
            constants: DEFAULT_CONSTANTS.to_vec(),
            min_degree_one: false,
            graphical_only: false,
        }
    }
}

/// What a statement predicts about the optimizer set.
enum Prediction {
    None,
    Exact(Vec<DegreeSequence>),
    /// Every optimizer satisfies `allowed`, and each of `required` is an optimizer.
    Subset {
        allowed: Box<dyn Fn(&DegreeSequence) -> bool>,
        required: Vec<DegreeSequence>,
        description: String,
    },
}

struct Run {
    label: String,
    domain: Domain,
    exponent: Exponent,
    direction: Direction,
    prediction: Prediction,
    exclude: Vec<DegreeSequence>,
    note: Option<String>,
}

pub fn path_sequence(n: usize) -> Result<DegreeSequence> {
    if n < 2 {
        return Err(Error::TooSmall(n, 2));
    }
    if n == 2 {
        return DegreeSequence::new(vec![1, 1]);
    }
    DegreeSequence::from_multiplicities(&[(2, n - 2), (1, 2)])
}

pub fn star_sequence(n: usize) -> Result<DegreeSequence> {
    if n < 2 {
        return Err(Error::TooSmall(n, 2));
    }
    DegreeSequence::from_multiplicities(&[(n as u32 - 1, 1), (1, n - 1)])
}

/// Chemical degree sequences predicted to maximize, by `n mod 4`.
pub fn chemical_maximizers(n: usize) -> Result<Vec<DegreeSequence>> {
    if n < 7 {
        return Err(Error::TooSmall(n, 7));
    }
    let k = n / 4;
    let tuples: Vec<[usize; 4]> = match n % 4 {
        3 => vec![[k + 1, k, k + 1, k + 1]],
        0 => vec![[k, k, k, k]],
        1 => vec![[k, k, k, k + 1]],
        _ => vec![[k, k + 1, k, k + 1], [k + 1, k, k + 1, k]],
    };
    let mut out = tuples
        .into_iter()
        .map(|a| {
            DegreeSequence::from_multiplicities(&[(1, a[0]), (2, a[1]), (3, a[2]), (4, a[3])])
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

fn antiregular_set(n: usize, min_degree_one: bool) -> Result<Vec<DegreeSequence>> {
    let mut out = vec![antiregular_sequence(n, true)?];
    if !min_degree_one {
        out.push(antiregular_sequence(n, false)?);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

fn graph_domain(n: usize, opts: &VerifyOptions) -> Result<Domain> {
    Domain::new(
        DomainKind::GraphicalSequences {
            min_degree: u32::from(opts.min_degree_one),
            max_degree: None,
        },
        n,
    )
}

fn chem_domain(n: usize, opts: &VerifyOptions) -> Result<Domain> {
    Domain::new(
        DomainKind::ChemicalSequences {
            graphical_only: opts.graphical_only,
        },
        n,
    )
}

fn covering(n: usize) -> Box<dyn Fn(&DegreeSequence) -> bool> {
    let hi = n as u32 - 1;
    Box::new(move |s: &DegreeSequence| s.covers(1, hi))
}

fn plan(theorem: TheoremId, n: usize, opts: &VerifyOptions) -> Result<Vec<Run>> {
    let below = 1.0 - THRESHOLD_OFFSET;
    let above = 1.0 + THRESHOLD_OFFSET;
    let run = |label: &str, domain, exponent, direction, prediction| Run {
        label: format!("{}/n={n}{label}", theorem.slug()),
        domain,
        exponent,
        direction,
        prediction,
        exclude: Vec::new(),
        note: None,
    };
    let ints = || Domain::integer_sequences(n, 1, n as u32 - 1);
    let runs = match theorem {
        TheoremId::AntiregularGraphMax => {
            let d = graph_domain(n, opts)?;
            let set = antiregular_set(n, opts.min_degree_one)?;
            vec![
                run("/at", d, ExponentSpec::BinomialThreshold.into(), Direction::Max, Prediction::Exact(set.clone())),
                run(
                    "/below",
                    d,
                    Exponent::scaled(ExponentSpec::BinomialThreshold, below),
                    Direction::Max,
                    Prediction::Exact(set),
                ),
            ]
        }
        TheoremId::SequenceCorollary => {
            let subset = || Prediction::Subset {
                allowed: covering(n),
                required: Vec::new(),
                description: format!("every maximizer covers 1..={}", n - 1),
            };
            vec![
                run("/at", ints()?, ExponentSpec::CorollaryThreshold.into(), Direction::Max, subset()),
                run(
                    "/below",
                    ints()?,
                    Exponent::scaled(ExponentSpec::CorollaryThreshold, below),
                    Direction::Max,
                    subset(),
                ),
            ]
        }
        TheoremId::SequenceStrong => {
            let exception = DegreeSequence::new(vec![3, 3, 1, 1])?;
            let covers = covering(n);
            let allowed_exception = exception.clone();
            let allowed: Box<dyn Fn(&DegreeSequence) -> bool> =
                Box::new(move |s: &DegreeSequence| covers(s) || (s.len() == 4 && *s == allowed_exception));
            let required = if n == 4 { vec![exception] } else { Vec::new() };
            vec![run(
                "",
                ints()?,
                ExponentSpec::SequenceThreshold.into(),
                Direction::Max,
                Prediction::Subset {
                    allowed,
                    required,
                    description: format!("every maximizer covers 1..={}, or is (3,3,1,1) when n = 4", n - 1),
                },
            )]
        }
        TheoremId::TreeMin => {
            let d = Domain::trees(n)?;
            let (p, s) = (path_sequence(n)?, star_sequence(n)?);
            let mut runs = vec![
                run("/above", d, Exponent::scaled(ExponentSpec::TreeThreshold, above), Direction::Min, Prediction::Exact(vec![p.clone()])),
                run("/at", d, ExponentSpec::TreeThreshold.into(), Direction::Min, Prediction::Exact(vec![s.clone(), p.clone()])),
                run("/below", d, Exponent::scaled(ExponentSpec::TreeThreshold, below), Direction::Min, Prediction::Exact(vec![s])),
            ];
            for f in [1.0, 2.0] {
                let mut r = run(&format!("/f={f}"), d, ExponentSpec::Explicit(f).into(), Direction::Min, Prediction::None);
                r.note = Some(String::from("upper regime sample; path minimality reported, not asserted"));
                runs.push(r);
            }
            runs
        }
        TheoremId::TreeSecondMin => {
            let d = Domain::trees(n)?;
            let mut r = run(
                "",
                d,
                Exponent::scaled(ExponentSpec::TreeThreshold, below),
                Direction::Min,
                Prediction::Exact(vec![path_sequence(n)?]),
            );
            r.exclude = vec![star_sequence(n)?];
            vec![r]
        }
        TheoremId::ChemMax => vec![run(
            "",
            chem_domain(n, opts)?,
            ExponentSpec::ChemicalThreshold.into(),
            Direction::Max,
            Prediction::Exact(chemical_maximizers(n)?),
        )],
        TheoremId::Problem1 => vec![run(
            "",
            graph_domain(n, opts)?,
            ExponentSpec::Reciprocal.into(),
            Direction::Max,
            Prediction::Exact(antiregular_set(n, opts.min_degree_one)?),
        )],
        TheoremId::Problem2 { c } => vec![run(
            &format!("/c={c}"),
            graph_domain(n, opts)?,
            ExponentSpec::Constant(c).into(),
            Direction::Max,
            Prediction::Exact(antiregular_set(n, opts.min_degree_one)?),
        )],
        TheoremId::TreeMaxProblem => vec![run(
            "",
            Domain::trees(n)?,
            ExponentSpec::Reciprocal.into(),
            Direction::Max,
            Prediction::None,
        )],
        TheoremId::ChemConjectures => {
            let d = chem_domain(n, opts)?;
            let set = chemical_maximizers(n)?;
            let mut runs = vec![run("/1/n", d, ExponentSpec::Reciprocal.into(), Direction::Max, Prediction::Exact(set.clone()))];
            for &c in &opts.constants {
                runs.push(run(
                    &format!("/c={c}"),
                    d,
                    ExponentSpec::Constant(c).into(),
                    Direction::Max,
                    Prediction::Exact(set.clone()),
                ));
            }
            runs
        }
    };
    Ok(runs)
}

fn judge(report: &mut ExtremalReport, prediction: &Prediction) {
    let opt = &report.optimizers;
    let (holds, witness, expected) = match prediction {
        Prediction::None => {
            report.verdict = Verdict::Explored;
            return;
        }
        Prediction::Exact(set) => {
            let witness = opt
                .iter()
                .find(|s| !set.contains(s))
                .or_else(|| set.iter().find(|s| !opt.contains(s)))
                .cloned();
            (witness.is_none(), witness, set.clone())
        }
        Prediction::Subset {
            allowed,
            required,
            description,
        } => {
            let witness = opt
                .iter()
                .find(|s| !allowed(s))
                .or_else(|| required.iter().find(|s| !opt.contains(s)))
                .cloned();
            let prefix = report.note.take().map(|n| format!("{n}; ")).unwrap_or_default();
            report.note = Some(format!("{prefix}{description}"));
            (witness.is_none(), witness, required.clone())
        }
    };
    report.expected = Some(expected);
    report.witness = witness;
    report.verdict = if !holds {
        Verdict::Refuted
    } else if report.distinct_profiles > 1 {
        Verdict::TieDetected
    } else {
        Verdict::Confirmed
    };
}

/// Runs every search bound to `theorem` for each `n` in `ns` and judges the
/// optimizer sets against the statement's prediction.
pub fn verify(theorem: TheoremId, ns: RangeInclusive<usize>, opts: &VerifyOptions) -> Result<Vec<ExtremalReport>> {
    if *ns.start() < theorem.min_n() {
        return Err(Error::TooSmall(*ns.start(), theorem.min_n()));
    }
    let mut reports = Vec::new();
    for n in ns {
        for run in plan(theorem, n, opts)? {
            let search = SearchOptions {
                exclude: run.exclude.clone(),
                ..opts.search.clone()
            };
            let mut report = search_extremum(&run.domain, run.exponent, run.direction, &search)?;
            report.label = run.label;
            report.note = run.note;
            judge(&mut report, &run.prediction);
            if theorem == TheoremId::TreeMin && matches!(run.prediction, Prediction::None) {
                let path = path_sequence(n)?;
                let verdict = if report.optimizers == [path] { "path is the minimizer" } else { "path is not the minimizer" };
                report.note = Some(format!("{}; {verdict}", report.note.take().unwrap_or_default()));
            }
            reports.push(report);
        }
    }
    Ok(reports)
}
