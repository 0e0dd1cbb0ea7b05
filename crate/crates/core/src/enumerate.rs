//! Canonical enumeration of the search domains.
//!
//! Every domain is a set of non-increasing sequences of length `n` with values
//! in a bounded range, optionally with a fixed sum, filtered by a predicate.
//! Sequences come out in lexicographically decreasing order. A [`Shard`] fixes
//! a block of prefixes of that order, so shards partition the stream.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphical::{erdos_gallai, has_connected_realization};
use crate::index::DegreeSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainKind {
    /// Every multiset with values in `lo..=hi`, no graphicality filter.
    IntegerSequences { lo: u32, hi: u32 },
    /// Graphical sequences with values in `min_degree..=max_degree`
    /// (`max_degree` defaults to `n − 1`).
    GraphicalSequences {
        min_degree: u32,
        max_degree: Option<u32>,
    },
    /// Degree sequences of trees on `n` vertices.
    TreeSequences,
    /// Degrees in `1..=4`; connected-realizable, or merely graphical when
    /// `graphical_only` is set.
    ChemicalSequences { graphical_only: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Domain {
    pub kind: DomainKind,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Filter {
    None,
    Graphical,
    Chemical,
    ChemicalGraphicalOnly,
}

/// Resolved shape of a domain: value bounds, optional exact sum, filter.
#[derive(Clone, Copy, Debug)]
struct Bounds {
    n: usize,
    lo: u32,
    hi: u32,
    target: Option<u64>,
    filter: Filter,
}

impl Domain {
    pub fn new(kind: DomainKind, n: usize) -> Result<Self> {
        let domain = Domain { kind, n };
        domain.bounds()?;
        Ok(domain)
    }

    pub fn integer_sequences(n: usize, lo: u32, hi: u32) -> Result<Self> {
        Self::new(DomainKind::IntegerSequences { lo, hi }, n)
    }

    pub fn graphical(n: usize) -> Result<Self> {
        Self::new(
            DomainKind::GraphicalSequences {
                min_degree: 0,
                max_degree: None,
            },
            n,
        )
    }

    pub fn trees(n: usize) -> Result<Self> {
        Self::new(DomainKind::TreeSequences, n)
    }

    pub fn chemical(n: usize) -> Result<Self> {
        Self::new(
            DomainKind::ChemicalSequences {
                graphical_only: false,
            },
            n,
        )
    }

    fn bounds(&self) -> Result<Bounds> {
        let n = self.n;
        let bad = |msg: String| Err(Error::InvalidDomain(msg));
        match self.kind {
            DomainKind::TreeSequences => {
                if n < 2 {
                    return bad(format!("trees need n >= 2, got {n}"));
                }
                Ok(Bounds {
                    n,
                    lo: 1,
                    hi: n as u32 - 1,
                    target: Some(2 * n as u64 - 2),
                    filter: Filter::None,
                })
            }
            _ if n < 4 => bad(format!("n = {n} is below 4")),
            DomainKind::IntegerSequences { lo, hi } => {
                if lo < 1 || lo > hi || hi > n as u32 - 1 {
                    return bad(format!("need 1 <= lo <= hi <= n-1, got lo = {lo}, hi = {hi}"));
                }
                Ok(Bounds {
                    n,
                    lo,
                    hi,
                    target: None,
                    filter: Filter::None,
                })
            }
            DomainKind::GraphicalSequences {
                min_degree,
                max_degree,
            } => {
                let hi = max_degree.unwrap_or(n as u32 - 1);
                if hi > n as u32 - 1 || min_degree > hi {
                    return bad(format!(
                        "degree bounds [{min_degree}, {hi}] invalid for n = {n}"
                    ));
                }
                Ok(Bounds {
                    n,
                    lo: min_degree,
                    hi,
                    target: None,
                    filter: Filter::Graphical,
                })
            }
            DomainKind::ChemicalSequences { graphical_only } => Ok(Bounds {
                n,
                lo: 1,
                hi: 4.min(n as u32 - 1),
                target: None,
                filter: if graphical_only {
                    Filter::ChemicalGraphicalOnly
                } else {
                    Filter::Chemical
                },
            }),
        }
    }

    /// Number of candidate multisets walked before filtering: an upper bound
    /// on [`domain_size`], available in closed form.
    pub fn candidate_count(&self) -> Result<u128> {
        let b = self.bounds()?;
        Ok(match b.target {
            None => binomial((b.hi - b.lo) as u128 + b.n as u128, b.n as u128),
            // positive multisets of size n summing to 2n−2 ⇔ partitions of n−2
            Some(_) => partitions(b.n - 2),
        })
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn partitions(m: usize) -> u128 {
    let mut p = vec![0u128; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            p[total] += p[total - part];
        }
    }
    p[m]
}

impl Bounds {
    fn accepts(&self, values: &[u32]) -> bool {
        match self.filter {
            Filter::None => true,
            Filter::Graphical => erdos_gallai(values),
            Filter::ChemicalGraphicalOnly => erdos_gallai(values),
            Filter::Chemical => {
                has_connected_realization(&DegreeSequence::from_sorted(values.to_vec()))
            }
        }
    }

    /// Range of values position `pos` may take after a prefix with sum
    /// `prefix_sum` whose last value is `cap`, such that a completion exists.
    fn value_range(&self, pos: usize, prefix_sum: u64, cap: u32) -> Option<(u32, u32)> {
        let cap = cap.min(self.hi);
        if cap < self.lo {
            return None;
        }
        match self.target {
            None => Some((self.lo, cap)),
            Some(t) => {
                let rest = (self.n - pos - 1) as u64;
                let left = t.checked_sub(prefix_sum)?;
                // v + rest·lo ≤ left  and  left ≤ v·(rest + 1)
                let upper = left.checked_sub(rest * u64::from(self.lo))?;
                let upper = upper.min(u64::from(cap));
                let lower = left.div_ceil(rest + 1).max(u64::from(self.lo));
                (lower <= upper).then_some((lower as u32, upper as u32))
            }
        }
    }
}

/// Every sequence in `domain`, in lexicographically decreasing order.
pub fn enumerate(domain: &Domain) -> Result<Sequences> {
    let bounds = domain.bounds()?;
    Ok(Sequences::new(bounds, vec![Vec::new()]))
}

/// Exact number of sequences `enumerate` yields (counted by a filtered walk).
pub fn domain_size(domain: &Domain) -> Result<u128> {
    Ok(enumerate(domain)?.count() as u128)
}

/// A block of the enumeration order defined by fixed prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub domain: Domain,
    pub prefixes: Vec<Vec<u32>>,
}

impl Shard {
    pub fn sequences(&self) -> Result<Sequences> {
        let bounds = self.domain.bounds()?;
        Ok(Sequences::new(bounds, self.prefixes.clone()))
    }
}

/// Splits `domain` into `shard_count` contiguous blocks of prefixes.
///
/// Prefixes are lengthened until there are at least `shard_count` of them or
/// they reach full length. Some shards may be empty.
pub fn shard(domain: &Domain, shard_count: usize) -> Result<Vec<Shard>> {
    if shard_count == 0 {
        return Err(Error::ZeroShards);
    }
    let bounds = domain.bounds()?;
    let mut prefixes: Vec<(Vec<u32>, u64)> = vec![(Vec::new(), 0)];
    let mut len = 0;
    while prefixes.len() < shard_count && len < bounds.n {
        let mut longer = Vec::new();
        for (prefix, sum) in &prefixes {
            let cap = prefix.last().copied().unwrap_or(bounds.hi);
            if let Some((lo, hi)) = bounds.value_range(len, *sum, cap) {
                for v in (lo..=hi).rev() {
                    let mut p = prefix.clone();
                    p.push(v);
                    longer.push((p, sum + u64::from(v)));
                }
            }
        }
        prefixes = longer;
        len += 1;
    }
    let total = prefixes.len();
    let mut shards = Vec::with_capacity(shard_count);
    let mut iter = prefixes.into_iter().map(|(p, _)| p);
    for i in 0..shard_count {
        let take = total / shard_count + usize::from(i < total % shard_count);
        shards.push(Shard {
            domain: *domain,
            prefixes: iter.by_ref().take(take).collect(),
        });
    }
    Ok(shards)
}

/// Stream of canonical sequences completing each of a list of prefixes.
pub struct Sequences {
    bounds: Bounds,
    prefixes: std::vec::IntoIter<Vec<u32>>,
    /// Length of the fixed prefix of `current`.
    fixed: usize,
    current: Vec<u32>,
    /// `current` holds a candidate that has not been emitted yet.
    primed: bool,
}

impl Sequences {
    fn new(bounds: Bounds, prefixes: Vec<Vec<u32>>) -> Self {
        Sequences {
            bounds,
            prefixes: prefixes.into_iter(),
            fixed: 0,
            current: Vec::with_capacity(bounds.n),
            primed: false,
        }
    }

    /// Fills positions `from..n` with the lexicographically largest feasible values.
    fn fill_from(&mut self, from: usize) -> bool {
        self.current.truncate(from);
        let mut sum: u64 = self.current.iter().map(|&v| u64::from(v)).sum();
        for pos in from..self.bounds.n {
            let cap = self.current.last().copied().unwrap_or(self.bounds.hi);
            match self.bounds.value_range(pos, sum, cap) {
                Some((_, hi)) => {
                    self.current.push(hi);
                    sum += u64::from(hi);
                }
                None => return false,
            }
        }
        true
    }

    /// Loads the next prefix that admits a completion.
    fn start_next_prefix(&mut self) -> bool {
        while let Some(prefix) = self.prefixes.next() {
            let mut ok = prefix.len() <= self.bounds.n;
            let mut sum = 0u64;
            for (pos, &v) in prefix.iter().enumerate() {
                if !ok {
                    break;
                }
                let cap = if pos == 0 { self.bounds.hi } else { prefix[pos - 1] };
                ok = matches!(self.bounds.value_range(pos, sum, cap), Some((lo, hi)) if lo <= v && v <= hi);
                sum += u64::from(v);
            }
            if !ok {
                continue;
            }
            self.fixed = prefix.len();
            self.current = prefix;
            if self.fill_from(self.fixed) {
                return true;
            }
        }
        false
    }

    /// Steps `current` to its successor within the fixed prefix.
    fn advance(&mut self) -> bool {
        let n = self.bounds.n;
        for pos in (self.fixed..n).rev() {
            let prefix_sum: u64 = self.current[..pos].iter().map(|&v| u64::from(v)).sum();
            let cap = if pos == 0 { self.bounds.hi } else { self.current[pos - 1] };
            let Some((lo, hi)) = self.bounds.value_range(pos, prefix_sum, cap) else {
                continue;
            };
            let candidate = hi.min(self.current[pos].saturating_sub(1));
            if self.current[pos] == 0 || candidate < lo {
                continue;
            }
            self.current.truncate(pos);
            self.current.push(candidate);
            if self.fill_from(pos + 1) {
                return true;
            }
        }
        false
    }

    fn step(&mut self) -> bool {
        if self.primed
            && self.advance() {
                return true;
            }
        self.start_next_prefix()
    }
}

impl Iterator for Sequences {
    type Item = DegreeSequence;

    fn next(&mut self) -> Option<DegreeSequence> {
        loop {
            if !self.step() {
                self.primed = false;
                return None;
            }
            self.primed = true;
            if self.bounds.accepts(&self.current) {
                return Some(DegreeSequence::from_sorted(self.current.clone()));
            }
        }
    }
}
