//! Closed-form checks that accompany the exhaustive searches.

use serde::{Deserialize, Serialize};

use super::verify::star_sequence;
use crate::error::{Error, Result};
use crate::index::{sigma_t_f_seq, DegreeSequence};

/// Degrees of `Y_n`: a claw with one edge subdivided `n − 4` times.
pub fn y_sequence(n: usize) -> Result<DegreeSequence> {
    if n < 5 {
        return Err(Error::TooSmall(n, 5));
    }
    DegreeSequence::from_multiplicities(&[(3, 1), (2, n - 4), (1, 3)])
}

/// `(4n − 16) + 3·2^f`.
pub fn y_closed_form(n: usize, f: f64) -> f64 {
    (4 * n) as f64 - 16.0 + 3.0 * 2f64.powf(f)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YGraphRow {
    pub n: usize,
    pub f: f64,
    pub y_value: f64,
    pub y_closed_form: f64,
    pub closed_form_matches: bool,
    pub star_value: f64,
    /// Whether `σ_t^f(Y_n) < σ_t^f(S_n)` holds at `f = 1/n`.
    pub y_below_star: bool,
}

/// Evaluates `Y_n` and `S_n` at `f = 1/n` for every `n` in `ns`.
pub fn y_graph_check(ns: std::ops::RangeInclusive<usize>) -> Result<Vec<YGraphRow>> {
    ns.map(|n| {
        let y = y_sequence(n)?;
        let f = 1.0 / n as f64;
        let y_value = sigma_t_f_seq(&y, f)?.value;
        let y_closed_form = y_closed_form(n, f);
        let star_value = sigma_t_f_seq(&star_sequence(n)?, f)?.value;
        Ok(YGraphRow {
            n,
            f,
            y_value,
            y_closed_form,
            closed_form_matches: (y_value - y_closed_form).abs() <= 1e-12 * y_closed_form.abs(),
            star_value,
            y_below_star: y_value < star_value,
        })
    })
    .collect()
}

/// Real-valued optimum of the chemical pair objective at `f = 1/n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relaxation {
    pub n: usize,
    pub x: [f64; 4],
    /// `x_1 − n/4`, evaluated without cancellation.
    pub gap_to_quarter: f64,
}

/// `(x1x2 + x2x3 + x3x4) + (x1x3 + x2x4)·2^{1/n} + x1x4·3^{1/n}`.
pub fn relaxation_objective(n: usize, x: [f64; 4]) -> f64 {
    let inv = 1.0 / n as f64;
    let two = 2f64.powf(inv);
    let three = 3f64.powf(inv);
    (x[0] * x[1] + x[1] * x[2] + x[2] * x[3]) + (x[0] * x[2] + x[1] * x[3]) * two + x[0] * x[3] * three
}

/// Closed-form stationary point of [`relaxation_objective`] on `Σx = n`, for `n ≡ 0 (mod 4)`.
pub fn chem_relaxation(n: usize) -> Result<Relaxation> {
    if n < 4 {
        return Err(Error::TooSmall(n, 4));
    }
    if !n.is_multiple_of(4) {
        return Err(Error::InvalidDomain(format!("relaxation needs n divisible by 4, got {n}")));
    }
    let nf = n as f64;
    let inv = 1.0 / nf;
    let two_m1 = (std::f64::consts::LN_2 * inv).exp_m1();
    let three_m1 = (3f64.ln() * inv).exp_m1();
    // 1 + 2·2^{1/n} − 3^{1/n}, written in the small increments
    let denom = 2.0 + 2.0 * two_m1 - three_m1;
    let outer = nf / 2.0 / denom;
    let x1 = outer * (1.0 + two_m1);
    let x2 = outer * (1.0 + two_m1 - three_m1);
    Ok(Relaxation {
        n,
        x: [x1, x2, x2, x1],
        gap_to_quarter: nf / 4.0 * three_m1 / denom,
    })
}

/// Number of pairs of distinct degree for multiplicities `a` of degrees 1..=4.
pub fn distinct_pair_count(a: [u64; 4]) -> u64 {
    let mut total = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            total += a[i] * a[j];
        }
    }
    total
}

/// Gain in distinct-degree pairs from moving one vertex from degree `i` to
/// degree `j` (labels in `1..=4`), recomputed from scratch.
pub fn distinct_pair_exchange_check(a: [u64; 4], i: usize, j: usize) -> Result<i64> {
    for label in [i, j] {
        if !(1..=4).contains(&label) {
            return Err(Error::BadDegreeLabel(label));
        }
    }
    let (ai, aj) = (a[i - 1], a[j - 1]);
    if i == j || ai < aj + 2 {
        return Err(Error::ExchangeGap { a_i: ai, a_j: aj });
    }
    let mut moved = a;
    moved[i - 1] -= 1;
    moved[j - 1] += 1;
    Ok(distinct_pair_count(moved) as i64 - distinct_pair_count(a) as i64)
}
