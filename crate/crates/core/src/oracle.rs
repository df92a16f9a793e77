//! Exact chromatic numbers and proper-coloring checks.
//!
//! The solver works one connected component at a time. Each component gets a
//! greedy clique lower bound and a DSATUR upper bound; the gap is closed by
//! asking a backtracking DSATUR search for a `k`-coloring, `k = lb, lb+1, …`.
//! The first `k` that succeeds is the chromatic number.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, BabaiError, Result};
use crate::graph::{DistanceSet, Family, MetricSpace, SimpleGraph};

/// Total map from vertices `0..n` to color indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: Vec<usize>,
}

const WORD_LETTERS: [char; 4] = ['r', 'b', 'g', 'y'];

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        if colors.is_empty() {
            return Err(domain!("a coloring needs at least one vertex"));
        }
        Ok(Coloring { colors })
    }

    /// Parses a color word over `r, b, g, y` (mapped to `0, 1, 2, 3`); commas and spaces are ignored.
    pub fn from_word(word: &str) -> Result<Self> {
        let colors = word
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                WORD_LETTERS
                    .iter()
                    .position(|&l| l == c)
                    .ok_or_else(|| domain!("unknown color letter `{c}`"))
            })
            .collect::<Result<Vec<_>>>()?;
        Coloring::new(colors)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// One more than the largest color index.
    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen = vec![false; self.num_colors()];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Relabels colors in order of first appearance along `0..n`.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.num_colors()];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { colors }
    }

    /// The coloring as an `r/b/g/y` word, when it uses at most four colors.
    pub fn to_word(&self) -> Option<String> {
        self.colors.iter().map(|&c| WORD_LETTERS.get(c).copied()).collect()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// No edge of `g` joins two vertices of the same color.
pub fn is_proper(g: &SimpleGraph, coloring: &Coloring) -> Result<bool> {
    if g.n() != coloring.len() {
        return Err(domain!(
            "coloring covers {} vertices but the graph has {}",
            coloring.len(),
            g.n()
        ));
    }
    Ok(g.edges().all(|(u, v)| coloring.color(u) != coloring.color(v)))
}

/// No two vertices exactly `d` apart in `space` share a color.
pub fn forbids_distance(space: &MetricSpace, coloring: &Coloring, d: usize) -> Result<bool> {
    if d == 0 || d > space.diameter() {
        return Err(domain!("{d} is not a realized distance of {space}"));
    }
    let n = space.n();
    if coloring.len() != n {
        return Err(domain!("coloring covers {} vertices, {space} has {n}", coloring.len()));
    }
    let partner = |i: usize| match space.family() {
        Family::Path => (i + d < n).then_some(i + d),
        Family::Cycle => Some((i + d) % n),
    };
    Ok((0..n).all(|i| partner(i).is_none_or(|j| coloring.color(i) != coloring.color(j))))
}

/// Colors `v_0, v_1, …` of `G(P_n, D)` in order, each with the smallest color
/// missing among its earlier `D`-neighbors.
pub fn greedy_path_coloring(n: usize, distances: &DistanceSet) -> Result<Coloring> {
    let space = MetricSpace::path(n)?;
    distances.validate_for(&space)?;
    let mut colors: Vec<usize> = Vec::with_capacity(n);
    let mut taken = vec![false; distances.len() + 1];
    for i in 0..n {
        taken.iter_mut().for_each(|t| *t = false);
        for d in distances.iter().filter(|&d| d <= i) {
            if let Some(t) = taken.get_mut(colors[i - d]) {
                *t = true;
            }
        }
        colors.push(taken.iter().position(|&t| !t).expect("at most |D| earlier neighbors"));
    }
    Coloring::new(colors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chromatic {
    pub chi: usize,
    /// Proper coloring with exactly `chi` colors, canonically labelled.
    pub witness: Coloring,
}

/// Exact chromatic number of `g` with a canonical witness coloring.
pub fn chromatic_number(g: &SimpleGraph) -> Chromatic {
    ChromaticSolver::default()
        .solve(g)
        .expect("an unbounded search never exceeds its budget")
}

/// Chromatic-number search with an optional cap on backtracking nodes.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChromaticSolver {
    node_limit: Option<u64>,
}

impl ChromaticSolver {
    pub fn with_node_limit(limit: u64) -> Self {
        ChromaticSolver { node_limit: Some(limit) }
    }

    pub fn solve(&self, g: &SimpleGraph) -> Result<Chromatic> {
        let mut colors = vec![0usize; g.n()];
        let mut chi = 1;
        let mut nodes = 0u64;
        for part in g.components() {
            if part.len() == 1 {
                continue;
            }
            let sub = g.induced_subgraph(&part)?;
            let (k, local) = self.solve_connected(&sub, &mut nodes)?;
            chi = chi.max(k);
            for (i, &v) in part.iter().enumerate() {
                colors[v] = local[i];
            }
        }
        let witness = Coloring::new(colors)?.canonical();
        debug_assert_eq!(witness.num_colors(), chi);
        Ok(Chromatic { chi, witness })
    }

    fn solve_connected(&self, g: &SimpleGraph, nodes: &mut u64) -> Result<(usize, Vec<usize>)> {
        let upper = dsatur_greedy(g);
        let ub = upper.iter().max().map_or(1, |&c| c + 1);
        let lb = greedy_clique_size(g);
        for k in lb..ub {
            let mut search = KColoring::new(g, k, self.node_limit, *nodes);
            let found = search.run()?;
            *nodes = search.nodes;
            if let Some(colors) = found {
                return Ok((k, colors));
            }
        }
        Ok((ub, upper))
    }
}

/// Size of a clique grown greedily from each vertex; a lower bound on `χ`.
pub fn greedy_clique_size(g: &SimpleGraph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for v in 0..g.n() {
        let mut candidates: Vec<usize> = g.neighbors(v).to_vec();
        candidates.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
        let mut clique = vec![v];
        for w in candidates {
            if clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// DSATUR coloring; ties on saturation go to the lowest vertex index.
pub fn dsatur_greedy(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..)
            .find(|&c| !neighbor_colors[v].get(c).copied().unwrap_or(false))
            .expect("some color is free");
        colors[v] = c;
        for &w in g.neighbors(v) {
            let seen = &mut neighbor_colors[w];
            if seen.len() <= c {
                seen.resize(c + 1, false);
            }
            if !seen[c] {
                seen[c] = true;
                saturation[w] += 1;
            }
        }
    }
    colors
}

/// Backtracking DSATUR search for a proper coloring with at most `k` colors.
struct KColoring<'g> {
    g: &'g SimpleGraph,
    k: usize,
    colors: Vec<usize>,
    // counts[v * k + c]: neighbors of v currently colored c
    counts: Vec<u32>,
    saturation: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
}

impl<'g> KColoring<'g> {
    fn new(g: &'g SimpleGraph, k: usize, limit: Option<u64>, nodes: u64) -> Self {
        KColoring {
            g,
            k,
            colors: vec![usize::MAX; g.n()],
            counts: vec![0; g.n() * k],
            saturation: vec![0; g.n()],
            nodes,
            limit,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<usize>>> {
        if self.k == 0 {
            return Ok(None);
        }
        Ok(self.search(0, 0)?.then(|| self.colors.clone()))
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = usize::MAX;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn search(&mut self, colored: usize, used: usize) -> Result<bool> {
        if colored == self.g.n() {
            return Ok(true);
        }
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Err(BabaiError::BudgetExceeded {
                    cost: u128::from(self.nodes),
                    ceiling: u128::from(limit),
                });
            }
        }
        let n = self.g.n();
        let v = (0..n)
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        if self.saturation[v] >= self.k {
            return Ok(false);
        }
        // a fresh color is interchangeable with any other fresh color
        let top = (used + 1).min(self.k);
        for c in 0..top {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(colored + 1, used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::distance_graph;

    fn ds(v: &[usize]) -> DistanceSet {
        DistanceSet::new(v.to_vec()).unwrap()
    }

    fn chi_of(space: MetricSpace, d: &[usize]) -> usize {
        chromatic_number(&distance_graph(&space, &ds(d)).unwrap()).chi
    }

    #[test]
    fn properness_on_triangles() {
        let k3 = SimpleGraph::complete(3).unwrap();
        assert!(is_proper(&k3, &Coloring::new(vec![0, 1, 2]).unwrap()).unwrap());
        assert!(!is_proper(&k3, &Coloring::new(vec![0, 1, 1]).unwrap()).unwrap());
        assert!(is_proper(&k3, &Coloring::new(vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn explicit_ten_cycle_word_is_proper() {
        let g = distance_graph(&MetricSpace::cycle(10).unwrap(), &ds(&[2, 3])).unwrap();
        let word = Coloring::from_word("r,r,b,b,g,r,r,b,g,g").unwrap();
        assert!(is_proper(&g, &word).unwrap());
    }

    #[test]
    fn forbidden_distances() {
        let p4 = MetricSpace::path(4).unwrap();
        let alt = Coloring::new(vec![0, 1, 0, 1]).unwrap();
        assert!(forbids_distance(&p4, &alt, 1).unwrap());
        assert!(!forbids_distance(&p4, &alt, 2).unwrap());
        let c6 = MetricSpace::cycle(6).unwrap();
        let alt6 = Coloring::new(vec![0, 1, 0, 1, 0, 1]).unwrap();
        // antipodes of C_6 sit at opposite parity
        assert!(forbids_distance(&c6, &alt6, 3).unwrap());
        assert!(!forbids_distance(&c6, &alt6, 2).unwrap());
        let p6 = MetricSpace::path(6).unwrap();
        let mod3 = Coloring::new((0..6).map(|i| i % 3).collect()).unwrap();
        assert!(forbids_distance(&p6, &mod3, 4).unwrap());
        assert!(forbids_distance(&p6, &mod3, 6).is_err());
    }

    #[test]
    fn chromatic_numbers_of_named_graphs() {
        assert_eq!(chi_of(MetricSpace::path(6).unwrap(), &[1, 2, 3]), 4);
        assert_eq!(chi_of(MetricSpace::cycle(5).unwrap(), &[1, 2]), 5);
        assert_eq!(chi_of(MetricSpace::cycle(7).unwrap(), &[2, 3]), 4);
        let edgeless = chromatic_number(&SimpleGraph::new(3).unwrap());
        assert_eq!(edgeless.chi, 1);
        assert_eq!(edgeless.witness.colors(), &[0, 0, 0]);
    }

    #[test]
    fn witness_is_canonical() {
        let g = distance_graph(&MetricSpace::cycle(9).unwrap(), &ds(&[1])).unwrap();
        let res = chromatic_number(&g);
        assert_eq!(res.chi, 3);
        assert_eq!(res.witness.colors()[0], 0);
        assert!(is_proper(&g, &res.witness).unwrap());
        assert_eq!(res.witness, res.witness.canonical());
    }

    #[test]
    fn node_limit_is_enforced() {
        // C_7 with {2,3} needs a real search: clique bound 3, answer 4
        let g = distance_graph(&MetricSpace::cycle(7).unwrap(), &ds(&[2, 3])).unwrap();
        let err = ChromaticSolver::with_node_limit(1).solve(&g).unwrap_err();
        assert!(matches!(err, BabaiError::BudgetExceeded { .. }));
        assert_eq!(ChromaticSolver::with_node_limit(1_000_000).solve(&g).unwrap().chi, 4);
    }

    #[test]
    fn greedy_path_examples() {
        let c = greedy_path_coloring(5, &ds(&[1, 2])).unwrap();
        assert_eq!(c.colors(), &[0, 1, 2, 0, 1]);
        let c = greedy_path_coloring(6, &ds(&[2, 4])).unwrap();
        assert!(c.num_colors() <= 3);
        let g = distance_graph(&MetricSpace::path(6).unwrap(), &ds(&[2, 4])).unwrap();
        assert!(is_proper(&g, &c).unwrap());
        let c = greedy_path_coloring(4, &ds(&[3])).unwrap();
        assert_eq!(c.colors(), &[0, 0, 0, 1]);
        assert!(greedy_path_coloring(4, &ds(&[4])).is_err());
    }

    #[test]
    fn words() {
        let c = Coloring::from_word("rbgy").unwrap();
        assert_eq!(c.colors(), &[0, 1, 2, 3]);
        assert_eq!(c.to_word().unwrap(), "rbgy");
        assert!(Coloring::from_word("rx").is_err());
        assert_eq!(Coloring::new(vec![2, 0, 2, 5]).unwrap().canonical().colors(), &[0, 1, 0, 2]);
        assert_eq!(Coloring::new(vec![2, 0, 2, 5]).unwrap().distinct_colors(), 3);
    }
}
