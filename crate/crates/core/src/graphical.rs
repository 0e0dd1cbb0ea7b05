//! Graphicality tests and a small-graph realization oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::DegreeSequence;

/// Default vertex bound for [`realizations`].
pub const ORACLE_BOUND: usize = 8;

/// Adjacency masks are `u16`, which caps the oracle at 16 vertices.
const ORACLE_HARD_LIMIT: usize = 16;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallGraph {
    n: usize,
    /// Sorted `(u, v)` pairs with `u < v`.
    edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    /// Rejects loops, parallel edges and endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidDomain(format!("bad edge ({u}, {v}) for n = {n}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        let before = normalized.len();
        normalized.dedup();
        if normalized.len() != before {
            return Err(Error::InvalidDomain("parallel edge".into()));
        }
        Ok(SmallGraph {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degrees indexed by vertex label.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree_sequence(&self) -> Result<DegreeSequence> {
        DegreeSequence::new(self.degrees())
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Albertson irregularity: `Σ |d(u) − d(v)|` over edges.
    pub fn irr(&self) -> u64 {
        let deg = self.degrees();
        self.edges
            .iter()
            .map(|&(u, v)| u64::from(deg[u].abs_diff(deg[v])))
            .sum()
    }

    /// σ-irregularity: `Σ (d(u) − d(v))²` over edges.
    pub fn sigma(&self) -> u64 {
        let deg = self.degrees();
        self.edges
            .iter()
            .map(|&(u, v)| u64::from(deg[u].abs_diff(deg[v])).pow(2))
            .sum()
    }
}

fn check_range(seq: &DegreeSequence) -> Result<()> {
    let n = seq.len();
    let max = n as u32 - 1;
    if seq.largest() > max {
        return Err(Error::DegreeOutOfRange {
            value: seq.largest(),
            max,
            n,
        });
    }
    Ok(())
}

/// Erdős–Gallai: even degree sum, and for every `1 ≤ k ≤ n−1`
/// `d_1 + … + d_k ≤ k(k−1) + Σ_{i>k} min(k, d_i)`.
pub fn is_graphical(seq: &DegreeSequence) -> Result<bool> {
    check_range(seq)?;
    Ok(erdos_gallai(seq.values()))
}

/// Erdős–Gallai on a non-increasing slice already known to lie in `[0, n−1]`.
pub(crate) fn erdos_gallai(d: &[u32]) -> bool {
    let n = d.len();
    let total: u64 = d.iter().map(|&v| u64::from(v)).sum();
    if total % 2 == 1 {
        return false;
    }
    let mut prefix = 0u64;
    for k in 1..n {
        prefix += u64::from(d[k - 1]);
        let k64 = k as u64;
        let tail: u64 = d[k..].iter().map(|&v| u64::from(v).min(k64)).sum();
        if prefix > k64 * (k64 - 1) + tail {
            return false;
        }
    }
    true
}

/// Positive values summing to `2n − 2`, with `n ≥ 2`.
pub fn is_tree_sequence(seq: &DegreeSequence) -> bool {
    let n = seq.len() as u64;
    n >= 2 && seq.smallest() >= 1 && seq.sum() == 2 * n - 2
}

/// Graphical, minimum degree at least 1, and enough edges to connect `n` vertices.
pub fn has_connected_realization(seq: &DegreeSequence) -> bool {
    if seq.len() == 1 {
        return seq.largest() == 0;
    }
    let n = seq.len() as u64;
    seq.smallest() >= 1 && seq.sum() >= 2 * (n - 1) && is_graphical(seq).unwrap_or(false)
}

/// Degree multiset of an antiregular graph on `n ≥ 4` vertices.
///
/// The connected variant has degrees `1..=n−1` with `⌊n/2⌋` twice. The
/// disconnected one is its complement: `0..=n−2` with `n−1−⌊n/2⌋` twice.
pub fn antiregular_sequence(n: usize, connected: bool) -> Result<DegreeSequence> {
    if n < 4 {
        return Err(Error::TooSmall(n, 4));
    }
    let top = n as u32 - 1;
    let repeated = (n / 2) as u32;
    let mut values: Vec<u32> = (1..=top).collect();
    values.push(repeated);
    if !connected {
        for v in &mut values {
            *v = top - *v;
        }
    }
    DegreeSequence::new(values)
}

/// Every labeled simple graph in which vertex `i` has degree `seq[i]`.
pub fn realizations(seq: &DegreeSequence, connected_only: bool) -> Result<Realizations> {
    realizations_with_bound(seq, connected_only, ORACLE_BOUND)
}

pub fn realizations_with_bound(
    seq: &DegreeSequence,
    connected_only: bool,
    bound: usize,
) -> Result<Realizations> {
    let n = seq.len();
    let bound = bound.min(ORACLE_HARD_LIMIT);
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    check_range(seq)?;
    let mut it = Realizations {
        n,
        remaining: seq.values().to_vec(),
        levels: Vec::with_capacity(n),
        connected_only,
        done: false,
    };
    if seq.sum() % 2 == 1 {
        it.done = true;
    } else {
        it.push_level(0);
    }
    Ok(it)
}

struct Level {
    /// Neighbour masks over vertices above this level's vertex.
    options: Vec<u16>,
    next: usize,
    applied: Option<u16>,
}

/// Backtracking stream over realizations: vertex `i` picks its higher-labeled
/// neighbours among those with residual degree left.
pub struct Realizations {
    n: usize,
    remaining: Vec<u32>,
    levels: Vec<Level>,
    connected_only: bool,
    done: bool,
}

impl Realizations {
    fn push_level(&mut self, vertex: usize) {
        let need = self.remaining[vertex];
        let mut options = Vec::new();
        // residual degrees of later vertices can only be met by vertices after `vertex`
        let feasible = (vertex + 1..self.n).all(|j| self.remaining[j] as usize <= self.n - 1 - vertex);
        if feasible {
            let available: u16 = (vertex + 1..self.n)
                .filter(|&j| self.remaining[j] > 0)
                .fold(0, |m, j| m | (1 << j));
            if need == 0 {
                options.push(0);
            } else if available.count_ones() >= need {
                // enumerate submasks of `available` with popcount `need`, high bits first
                let mut sub = available;
                loop {
                    if sub.count_ones() == need {
                        options.push(sub);
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & available;
                }
            }
        }
        self.levels.push(Level {
            options,
            next: 0,
            applied: None,
        });
    }

    fn build(&self) -> SmallGraph {
        let mut edges = Vec::new();
        for (u, level) in self.levels.iter().enumerate() {
            let mask = level.applied.unwrap_or(0);
            for v in u + 1..self.n {
                if mask & (1 << v) != 0 {
                    edges.push((u, v));
                }
            }
        }
        SmallGraph { n: self.n, edges }
    }
}

impl Iterator for Realizations {
    type Item = SmallGraph;

    fn next(&mut self) -> Option<SmallGraph> {
        if self.done {
            return None;
        }
        loop {
            let vertex = match self.levels.len() {
                0 => {
                    self.done = true;
                    return None;
                }
                len => len - 1,
            };
            let level = self.levels.last_mut().expect("non-empty");
            if let Some(mask) = level.applied.take() {
                for j in 0..self.n {
                    if mask & (1 << j) != 0 {
                        self.remaining[j] += 1;
                    }
                }
                self.remaining[vertex] = mask.count_ones();
            }
            if level.next == level.options.len() {
                self.levels.pop();
                continue;
            }
            let mask = level.options[level.next];
            level.next += 1;
            level.applied = Some(mask);
            for j in 0..self.n {
                if mask & (1 << j) != 0 {
                    self.remaining[j] -= 1;
                }
            }
            self.remaining[vertex] = 0;

            if vertex + 1 == self.n {
                let graph = self.build();
                if !self.connected_only || graph.is_connected() {
                    return Some(graph);
                }
            } else {
                self.push_level(vertex + 1);
            }
        }
    }
}
