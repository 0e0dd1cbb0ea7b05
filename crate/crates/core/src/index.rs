//! Degree-sequence indices: the generalized total σ-irregularity and its
//! integer specializations, the exponent thresholds, and the tie policy.
//!
//! Every index here depends only on the multiset of values, so all of them
//! are computed from a [`DifferenceProfile`] (pair counts per difference)
//! rather than from the O(n²) pairwise sum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance under which two index values are treated as equal.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A non-empty multiset of non-negative integers stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    /// Canonicalizes `values` by sorting them non-increasing.
    pub fn new(mut values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeSequence(values))
    }

    /// Caller guarantees `values` is non-empty and non-increasing.
    pub(crate) fn from_sorted(values: Vec<u32>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        DegreeSequence(values)
    }

    /// Builds `(value^count, ...)`; zero counts are skipped.
    pub fn from_multiplicities(parts: &[(u32, usize)]) -> Result<Self> {
        let mut values = Vec::new();
        for &(value, count) in parts {
            values.extend(std::iter::repeat_n(value, count));
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    pub fn smallest(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.largest() == self.smallest()
    }

    /// `(value, multiplicity)` runs in non-increasing value order.
    pub fn runs(&self) -> Vec<(u32, u64)> {
        let mut runs: Vec<(u32, u64)> = Vec::new();
        for &v in &self.0 {
            match runs.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => runs.push((v, 1)),
            }
        }
        runs
    }

    /// Multiplicities `(a_1, a_2, a_3, a_4)` of degrees 1..=4. Other values are ignored.
    pub fn chemical_multiplicities(&self) -> [u64; 4] {
        let mut a = [0u64; 4];
        for &v in &self.0 {
            if (1..=4).contains(&v) {
                a[v as usize - 1] += 1;
            }
        }
        a
    }

    /// True when every value of `lo..=hi` occurs at least once.
    pub fn covers(&self, lo: u32, hi: u32) -> bool {
        let runs = self.runs();
        (lo..=hi).all(|v| runs.iter().any(|&(r, _)| r == v))
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(seq: DegreeSequence) -> Self {
        seq.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Number of unordered position pairs at each value difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceProfile {
    /// `counts[δ]`, trimmed after the largest occurring difference.
    counts: Vec<u64>,
    n: usize,
}

impl DifferenceProfile {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Count at difference `delta`; zero beyond the stored range.
    pub fn get(&self, delta: usize) -> u64 {
        self.counts.get(delta).copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Pairs whose values differ.
    pub fn distinct_pairs(&self) -> u64 {
        self.total_pairs() - self.get(0)
    }

    /// Exact `Σ counts[δ]·δ^p` for a small integer power.
    pub fn power_sum(&self, p: u32) -> u128 {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &c)| u128::from(c) * (d as u128).pow(p))
            .sum()
    }
}

/// Pair counts per difference, built from value multiplicities in O(D²).
pub fn difference_profile(seq: &DegreeSequence) -> DifferenceProfile {
    let runs = seq.runs();
    let spread = (seq.largest() - seq.smallest()) as usize;
    let mut counts = vec![0u64; spread + 1];
    for (i, &(vi, ci)) in runs.iter().enumerate() {
        counts[0] += ci * (ci - 1) / 2;
        for &(vj, cj) in &runs[i + 1..] {
            counts[(vi - vj) as usize] += ci * cj;
        }
    }
    DifferenceProfile {
        counts,
        n: seq.len(),
    }
}

/// A floating-point index value; compare two with [`compare_values`], which applies [`TIE_TOLERANCE`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexValue {
    pub value: f64,
}

impl IndexValue {
    pub fn new(value: f64) -> Self {
        IndexValue { value }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Tie,
    Greater,
}

/// True when `a` and `b` agree within [`TIE_TOLERANCE`] relative to `max(1, |a|, |b|)`.
pub fn is_tie(a: f64, b: f64) -> bool {
    let scale = 1f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= TIE_TOLERANCE * scale
}

pub fn compare_values(a: IndexValue, b: IndexValue) -> Comparison {
    if is_tie(a.value, b.value) {
        Comparison::Tie
    } else if a.value < b.value {
        Comparison::Less
    } else {
        Comparison::Greater
    }
}

fn check_exponent(f: f64) -> Result<()> {
    if f > 0.0 && f.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveExponent(f))
    }
}

/// `Σ_{δ≥1} counts[δ]·δ^f`, with `δ^f` evaluated as `exp(f·ln δ)`.
pub fn sigma_t_f(profile: &DifferenceProfile, f: f64) -> Result<IndexValue> {
    check_exponent(f)?;
    let mut total = profile.get(1) as f64;
    for (d, &c) in profile.counts.iter().enumerate().skip(2) {
        if c > 0 {
            total += c as f64 * (f * (d as f64).ln()).exp();
        }
    }
    Ok(IndexValue::new(total))
}

/// Convenience wrapper: `sigma_t_f(difference_profile(seq), f)`.
pub fn sigma_t_f_seq(seq: &DegreeSequence, f: f64) -> Result<IndexValue> {
    sigma_t_f(&difference_profile(seq), f)
}

/// Total σ-irregularity `Σ (d_u − d_v)²` over all pairs, exact.
pub fn sigma_t_classic(seq: &DegreeSequence) -> u128 {
    difference_profile(seq).power_sum(2)
}

/// Total irregularity `Σ |d_u − d_v|` over all pairs, exact.
pub fn irr_t(seq: &DegreeSequence) -> u128 {
    difference_profile(seq).power_sum(1)
}

/// First Zagreb index `Σ d²`.
pub fn first_zagreb(seq: &DegreeSequence) -> u128 {
    seq.values().iter().map(|&d| u128::from(d) * u128::from(d)).sum()
}

fn log_base(base: f64, x: f64) -> f64 {
    x.ln() / base.ln()
}

fn need_n4(name: &'static str, n: usize) -> Result<f64> {
    if n < 4 {
        Err(Error::ThresholdUndefined { name, n })
    } else {
        Ok(n as f64)
    }
}

/// `log_{n−2}((n²−n−2)/(n²−n−4))`.
pub fn binomial_threshold(n: usize) -> Result<f64> {
    let x = need_n4("bin-threshold", n)?;
    Ok(log_base(x - 2.0, (x * x - x - 2.0) / (x * x - x - 4.0)))
}

/// `log_{n−2}((C(n,2)−1)/(C(n,2)−2))`: the binomial threshold written through `C(n,2)`.
pub fn corollary_threshold(n: usize) -> Result<f64> {
    let x = need_n4("corollary-threshold", n)?;
    let pairs = x * (x - 1.0) / 2.0;
    Ok(log_base(x - 2.0, (pairs - 1.0) / (pairs - 2.0)))
}

/// `log_{n−2}((n−1)/(n−2))`.
pub fn sequence_threshold(n: usize) -> Result<f64> {
    let x = need_n4("seq-threshold", n)?;
    Ok(log_base(x - 2.0, (x - 1.0) / (x - 2.0)))
}

/// `log_{n−2}((2n−4)/(n−1))`.
pub fn tree_threshold(n: usize) -> Result<f64> {
    let x = need_n4("tree-threshold", n)?;
    Ok(log_base(x - 2.0, (2.0 * x - 4.0) / (x - 1.0)))
}

/// `log_3(3n²/(3n²−8))`.
pub fn chemical_threshold(n: usize) -> Result<f64> {
    let x = need_n4("chem-threshold", n)?;
    Ok(log_base(3.0, 3.0 * x * x / (3.0 * x * x - 8.0)))
}

/// The exponent `f(n)`, either a named threshold family or a fixed value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ExponentSpec {
    BinomialThreshold,
    CorollaryThreshold,
    SequenceThreshold,
    TreeThreshold,
    ChemicalThreshold,
    Reciprocal,
    /// A constant in `(0, 1)`.
    Constant(f64),
    /// Any positive literal.
    Explicit(f64),
}

impl ExponentSpec {
    pub fn resolve(&self, n: usize) -> Result<f64> {
        let f = match *self {
            ExponentSpec::BinomialThreshold => binomial_threshold(n)?,
            ExponentSpec::CorollaryThreshold => corollary_threshold(n)?,
            ExponentSpec::SequenceThreshold => sequence_threshold(n)?,
            ExponentSpec::TreeThreshold => tree_threshold(n)?,
            ExponentSpec::ChemicalThreshold => chemical_threshold(n)?,
            ExponentSpec::Reciprocal => {
                if n == 0 {
                    return Err(Error::InvalidDomain("n must be positive".into()));
                }
                1.0 / n as f64
            }
            ExponentSpec::Constant(c) => {
                if !(c > 0.0 && c < 1.0) {
                    return Err(Error::ConstantOutOfRange(c));
                }
                c
            }
            ExponentSpec::Explicit(v) => v,
        };
        check_exponent(f)?;
        Ok(f)
    }
}

impl fmt::Display for ExponentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentSpec::BinomialThreshold => write!(f, "bin-threshold"),
            ExponentSpec::CorollaryThreshold => write!(f, "corollary-threshold"),
            ExponentSpec::SequenceThreshold => write!(f, "seq-threshold"),
            ExponentSpec::TreeThreshold => write!(f, "tree-threshold"),
            ExponentSpec::ChemicalThreshold => write!(f, "chem-threshold"),
            ExponentSpec::Reciprocal => write!(f, "1/n"),
            ExponentSpec::Constant(c) => write!(f, "c:{c}"),
            ExponentSpec::Explicit(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExponentSpec {
    type Err = Error;

    /// Accepts `1/n`, the named thresholds, `c:<value>` for a constant in
    /// `(0, 1)`, or a positive literal.
    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.trim() {
            "1/n" => ExponentSpec::Reciprocal,
            "bin-threshold" => ExponentSpec::BinomialThreshold,
            "corollary-threshold" => ExponentSpec::CorollaryThreshold,
            "seq-threshold" => ExponentSpec::SequenceThreshold,
            "tree-threshold" => ExponentSpec::TreeThreshold,
            "chem-threshold" => ExponentSpec::ChemicalThreshold,
            other => {
                if let Some(c) = other.strip_prefix("c:") {
                    let c: f64 = c.parse().map_err(|_| Error::BadExponent(s.to_string()))?;
                    if !(c > 0.0 && c < 1.0) {
                        return Err(Error::ConstantOutOfRange(c));
                    }
                    ExponentSpec::Constant(c)
                } else {
                    let v: f64 = other.parse().map_err(|_| Error::BadExponent(s.to_string()))?;
                    check_exponent(v)?;
                    ExponentSpec::Explicit(v)
                }
            }
        };
        Ok(spec)
    }
}
