//! Path and cycle metric spaces and the distance graphs built over them.
//!
//! Vertices are always `0..n`. On a cycle, `i` and `j` are neighbors when
//! `i - j ≡ ±1 (mod n)`, so vertex labels double as elements of `Z_n`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, BabaiError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
        }
    }

    /// Smallest vertex count for which the family is defined.
    pub fn min_vertices(self) -> usize {
        match self {
            Family::Path => 2,
            Family::Cycle => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = BabaiError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "path" | "p" => Ok(Family::Path),
            "cycle" | "c" => Ok(Family::Cycle),
            other => Err(domain!("unknown family `{other}` (expected path or cycle)")),
        }
    }
}

/// A path `P_n` or cycle `C_n` with its shortest-walk distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetricSpace {
    family: Family,
    n: usize,
}

impl MetricSpace {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_vertices() {
            return Err(domain!(
                "{family} needs at least {} vertices, got {n}",
                family.min_vertices()
            ));
        }
        Ok(MetricSpace { family, n })
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(Family::Path, n)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(Family::Cycle, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n - 1` for a path, `⌊n/2⌋` for a cycle.
    pub fn diameter(&self) -> usize {
        match self.family {
            Family::Path => self.n - 1,
            Family::Cycle => self.n / 2,
        }
    }

    /// The positive distances realized between vertex pairs: `1..=diameter`.
    pub fn realized_distances(&self) -> RangeInclusive<usize> {
        1..=self.diameter()
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        if i >= self.n || j >= self.n {
            return Err(domain!("vertex pair ({i}, {j}) out of range for {self}"));
        }
        Ok(self.distance_unchecked(i, j))
    }

    pub(crate) fn distance_unchecked(&self, i: usize, j: usize) -> usize {
        let gap = i.abs_diff(j);
        match self.family {
            Family::Path => gap,
            Family::Cycle => gap.min(self.n - gap),
        }
    }
}

impl fmt::Display for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Path => write!(f, "P_{}", self.n),
            Family::Cycle => write!(f, "C_{}", self.n),
        }
    }
}

/// A non-empty, strictly increasing set of positive distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DistanceSet(Vec<usize>);

impl DistanceSet {
    /// Sorts the input; rejects zeros, duplicates and the empty set.
    pub fn new(mut distances: Vec<usize>) -> Result<Self> {
        if distances.is_empty() {
            return Err(domain!("distance set must be non-empty"));
        }
        distances.sort_unstable();
        if distances[0] == 0 {
            return Err(domain!("distances must be positive"));
        }
        if let Some(w) = distances.windows(2).find(|w| w[0] == w[1]) {
            return Err(domain!("duplicate distance {}", w[0]));
        }
        Ok(DistanceSet(distances))
    }

    /// Caller guarantees a non-empty, strictly increasing, positive list.
    pub(crate) fn from_sorted(distances: Vec<usize>) -> Self {
        debug_assert!(!distances.is_empty());
        debug_assert!(distances[0] > 0);
        debug_assert!(distances.windows(2).all(|w| w[0] < w[1]));
        DistanceSet(distances)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("distance sets are non-empty")
    }

    /// Checks every element is a realized distance of `space`.
    pub fn validate_for(&self, space: &MetricSpace) -> Result<()> {
        let diam = space.diameter();
        match self.0.iter().find(|&&d| d > diam) {
            Some(d) => Err(domain!("distance {d} exceeds diam({space}) = {diam}")),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for DistanceSet {
    type Error = BabaiError;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        DistanceSet::new(v)
    }
}

impl From<DistanceSet> for Vec<usize> {
    fn from(d: DistanceSet) -> Self {
        d.0
    }
}

impl FromStr for DistanceSet {
    type Err = BabaiError;

    /// Comma-separated integers, e.g. `1,4,7`. Surrounding braces are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let parsed = body
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| domain!("`{}` is not a non-negative integer", tok.trim()))
            })
            .collect::<Result<Vec<_>>>()?;
        DistanceSet::new(parsed)
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

/// Finite simple graph stored as sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain!("graphs must have at least one vertex"));
        }
        Ok(SimpleGraph { adj: vec![Vec::new(); n] })
    }

    /// Builds a graph from an edge list; repeated edges collapse, loops are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(domain!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return Err(domain!("self-loop at vertex {u}"));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        g.normalize();
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges)
    }

    fn normalize(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<SimpleGraph> {
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            index[old] = new;
        }
        let edges = vertices.iter().enumerate().flat_map(|(new, &old)| {
            let index = &index;
            self.adj[old]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > new).then(|| (new, index[w])))
        });
        SimpleGraph::from_edges(vertices.len(), edges.collect::<Vec<_>>())
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut part = vec![root];
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        part.push(w);
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// True iff the graph contains a clique on `size` vertices.
    pub fn max_clique_at_least(&self, size: usize) -> bool {
        if size <= 1 {
            return size == 0 || self.n() >= 1;
        }
        if self.max_degree() + 1 < size {
            return false;
        }
        (0..self.n()).any(|v| {
            let higher: Vec<usize> = self.adj[v].iter().copied().filter(|&w| w > v).collect();
            self.extend_clique(&higher, size - 1)
        })
    }

    // candidates are all adjacent to the clique built so far
    fn extend_clique(&self, candidates: &[usize], needed: usize) -> bool {
        if needed == 0 {
            return true;
        }
        if candidates.len() < needed {
            return false;
        }
        candidates.iter().enumerate().any(|(i, &v)| {
            let rest: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(v, w))
                .collect();
            self.extend_clique(&rest, needed - 1)
        })
    }

    /// DIMACS `edge` format with 1-based vertices.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// `G(space, D)`: vertices of `space`, edges between pairs whose distance lies in `D`.
pub fn distance_graph(space: &MetricSpace, distances: &DistanceSet) -> Result<SimpleGraph> {
    distances.validate_for(space)?;
    let n = space.n();
    let mut edges = Vec::with_capacity(n * distances.len());
    for i in 0..n {
        for d in distances.iter() {
            match space.family() {
                Family::Path if i + d < n => edges.push((i, i + d)),
                Family::Path => {}
                Family::Cycle => edges.push((i, (i + d) % n)),
            }
        }
    }
    SimpleGraph::from_edges(n, edges)
}

/// `Cay(Z_n, S)`: `x ~ y` iff `y - x ≡ ±s (mod n)` for some `s ∈ S`.
///
/// Coincides with `distance_graph(C_n, S)` whenever `S ⊆ {1..⌊n/2⌋}`; elements
/// up to `n - 1` are allowed here since `s` and `n - s` give the same edges.
pub fn cayley_graph(n: usize, connection: &DistanceSet) -> Result<SimpleGraph> {
    if let Some(s) = connection.iter().find(|&s| s % n == 0) {
        return Err(domain!("connection element {s} is zero in Z_{n}"));
    }
    let edges = (0..n).flat_map(|x| connection.iter().map(move |s| (x, (x + s) % n)));
    SimpleGraph::from_edges(n, edges.collect::<Vec<_>>())
}
