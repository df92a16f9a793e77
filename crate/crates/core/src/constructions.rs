//! Explicit colorings and witness distance sets for paths and cycles.
//!
//! Every function here builds its object directly from a closed recipe; none
//! of them search. Properness and color counts are checked independently by
//! the oracle in tests.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{domain, inapplicable, BabaiError, Result};
use crate::graph::{cayley_graph, distance_graph, DistanceSet, MetricSpace, SimpleGraph};
use crate::numtheory::{exact_power, frobenius_56, gcd_all, strip_factor, weak_freeness_violation};
use crate::oracle::Coloring;

fn coloring(colors: Vec<usize>) -> Coloring {
    Coloring::new(colors).expect("recipes color at least one vertex")
}

fn pow(base: usize, exp: u32) -> usize {
    base.pow(exp)
}

/// The block-division scheme exactly as stated, without repair.
///
/// With `d_1 > d_2 > … > d_k`, start from the constant coloring and lift it
/// through block lengths `d_k, d_{k-1}, …, d_1`. A lift over block length `L`
/// keeps even-numbered blocks as they are and recolors odd-numbered blocks
/// with the shift `0 ↦ c, x ↦ x - 1`, where `c` is the number of colors used
/// so far. Uses at most `|D| + 1` colors but is not always proper: on `P_5`
/// with `{1, 2}` it gives `0 1 2 0 0`.
pub fn path_division_coloring_literal(n: usize, distances: &DistanceSet) -> Result<Coloring> {
    let space = MetricSpace::path(n)?;
    distances.validate_for(&space)?;
    let descending: Vec<usize> = distances.as_slice().iter().rev().copied().collect();
    let k = descending.len();
    let color_of = |j: usize| {
        // walk from the outermost block length inwards, then replay the shifts
        let mut pos = j;
        let mut odd_blocks = Vec::with_capacity(k);
        for &len in &descending {
            odd_blocks.push((pos / len) % 2 == 1);
            pos %= len;
        }
        let mut color = 0;
        for (level, &odd) in odd_blocks.iter().enumerate().rev() {
            if odd {
                let used = k - level;
                color = if color == 0 { used } else { color - 1 };
            }
        }
        color
    };
    Ok(coloring((0..n).map(color_of).collect()))
}

/// Block-division coloring of `G(P_n, D)` with at most `|D| + 1` colors.
///
/// Runs [`path_division_coloring_literal`], then sweeps left to right: a
/// vertex whose block color clashes with an earlier neighbor takes the least
/// color absent from its at most `|D|` earlier neighbors.
pub fn path_division_coloring(n: usize, distances: &DistanceSet) -> Result<Coloring> {
    let mut colors = path_division_coloring_literal(n, distances)?.colors().to_vec();
    for j in 0..n {
        let earlier: Vec<usize> = distances.iter().filter(|&d| d <= j).map(|d| colors[j - d]).collect();
        if earlier.contains(&colors[j]) {
            colors[j] = (0..).find(|c| !earlier.contains(c)).expect("unbounded range");
        }
    }
    Ok(coloring(colors))
}

/// `v_i ↦ i mod m`: vertices share a color iff their distance is a multiple of `m`.
pub fn path_mod_m_coloring(n: usize, m: usize) -> Result<Coloring> {
    MetricSpace::path(n)?;
    if m < 2 || m > n {
        return Err(domain!("need 2 ≤ m ≤ n, got m = {m}, n = {n}"));
    }
    Ok(coloring((0..n).map(|i| i % m).collect()))
}

/// A `k`-subset `D` of `{1, …, n-1}` with `χ(P_n, D) = m`.
///
/// `D = {1, …, m-1}` together with the `k - m + 1` smallest non-multiples of
/// `m` in `(m, n)`. The first part spans a `K_m`; `i mod m` forbids the rest.
pub fn spec_path_witness(n: usize, k: usize, m: usize) -> Result<DistanceSet> {
    MetricSpace::path(n)?;
    if k == 0 || k > n - 1 {
        return Err(domain!("subset size k = {k} outside 1..={}", n - 1));
    }
    if m < 2 || m > k + 1 {
        return Err(domain!("target m = {m} outside 2..={}", k + 1));
    }
    let extra = k + 1 - m;
    let mut set: Vec<usize> = (1..m).collect();
    set.extend((m + 1..n).filter(|d| d % m != 0).take(extra));
    if set.len() < k {
        return Err(BabaiError::Infeasible(format!(
            "only {} non-multiples of {m} in ({m}, {n}); {extra} needed",
            set.len() + 1 - m
        )));
    }
    DistanceSet::new(set)
}

/// `y ↦ y mod r` on `C_n`; proper whenever `r | n` and no distance is a multiple of `r`.
pub fn mod_r_coloring(n: usize, distances: &DistanceSet, r: usize) -> Result<Coloring> {
    let space = MetricSpace::cycle(n)?;
    distances.validate_for(&space)?;
    if r < 2 {
        return Err(domain!("r must exceed 1, got {r}"));
    }
    if n % r != 0 {
        return Err(inapplicable!("{r} does not divide {n}"));
    }
    if let Some(d) = distances.iter().find(|d| d % r == 0) {
        return Err(inapplicable!("distance {d} is a multiple of {r}"));
    }
    Ok(coloring((0..n).map(|y| y % r).collect()))
}

/// Proper `r`-coloring of `Cay(Z_n, S)` for a weakly `r`-free `S`.
///
/// Inside each coset of `⟨S⟩` a vertex `x + Σ m_j s_j` gets color `Σ m_j mod r`,
/// measured from the coset's smallest element.
pub fn weakly_r_free_coloring(n: usize, set: &DistanceSet, r: usize) -> Result<Coloring> {
    if n < 3 {
        return Err(domain!("cycle length must be at least 3, got {n}"));
    }
    if let Some(coeffs) = weak_freeness_violation(n, set.as_slice(), r)? {
        return Err(inapplicable!("{set} is not weakly {r}-free in Z_{n}: coefficients {coeffs:?}"));
    }
    let mut colors = vec![usize::MAX; n];
    for root in 0..n {
        if colors[root] != usize::MAX {
            continue;
        }
        colors[root] = 0;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for s in set.iter().map(|s| s % n) {
                for (y, c) in [((x + s) % n, (colors[x] + 1) % r), ((x + n - s) % n, (colors[x] + r - 1) % r)] {
                    if colors[y] == usize::MAX {
                        colors[y] = c;
                        stack.push(y);
                    } else if colors[y] != c {
                        return Err(inapplicable!("inconsistent labels at {y} for {set} in Z_{n}"));
                    }
                }
            }
        }
    }
    Ok(coloring(colors))
}

/// `D = {1, 4, 7, …, 3(k-1)+1}`, for which `χ(C_n, D) = 3` when `n` is an odd multiple of 3.
pub fn three_in_spec_witness(n: usize, k: usize) -> Result<DistanceSet> {
    MetricSpace::cycle(n)?;
    if n % 3 != 0 || n % 2 == 0 {
        return Err(inapplicable!("n = {n} must be an odd multiple of 3"));
    }
    if k < 2 || 3 * (k - 1) + 1 > n / 2 {
        return Err(inapplicable!("need k > 1 and 3(k-1)+1 ≤ ⌊n/2⌋, got k = {k}, n = {n}"));
    }
    Ok(DistanceSet::from_sorted((0..k).map(|t| 3 * t + 1).collect()))
}

/// `(n / g, D / g)` for `g = gcd(n, D)`; a chromatic-number-preserving reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scaled {
    pub n: usize,
    pub distances: DistanceSet,
    pub divisor: usize,
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{} {} (g = {})", self.n, self.distances, self.divisor)
    }
}

pub fn scaling_reduce(n: usize, distances: &DistanceSet) -> Result<Scaled> {
    let space = MetricSpace::cycle(n)?;
    distances.validate_for(&space)?;
    let g = gcd_all(distances.iter().chain([n]));
    Ok(Scaled {
        n: n / g,
        distances: DistanceSet::from_sorted(distances.iter().map(|d| d / g).collect()),
        divisor: g,
    })
}

/// Pulls a coloring of `C_{n/g}` back to `C_n`: `y ↦ color(⌊y / g⌋)`.
///
/// Writing `y = c + g·y'` with `0 ≤ c < g`, steps of `g·d'` keep `c` and move
/// `y'` by `d'`, so edges of `G(C_n, gD')` map onto edges of `G(C_{n/g}, D')`.
pub fn lift_scaled_coloring(reduced: &Coloring, divisor: usize) -> Coloring {
    let n = reduced.len() * divisor;
    coloring((0..n).map(|y| reduced.color(y / divisor)).collect())
}

/// For every `y ∈ Z_n`, the unique `(λ, μ)` in `[0, λ_len) × [0, μ_len)` with
/// `y ≡ λs + μt (mod n)`; `None` if the box does not map bijectively.
pub fn index_box_map(
    n: usize,
    s: usize,
    t: usize,
    lambda_len: usize,
    mu_len: usize,
) -> Option<Vec<(usize, usize)>> {
    if lambda_len * mu_len != n {
        return None;
    }
    let mut map = vec![None; n];
    for lambda in 0..lambda_len {
        for mu in 0..mu_len {
            let y = (lambda * s + mu * t) % n;
            if map[y].replace((lambda, mu)).is_some() {
                return None;
            }
        }
    }
    map.into_iter().collect()
}

fn lambda_mu_coloring(n: usize, s: usize, t: usize, lambda_len: usize, mu_len: usize, q: usize) -> Result<Coloring> {
    let map = index_box_map(n, s, t, lambda_len, mu_len).ok_or_else(|| {
        inapplicable!("[0,{lambda_len}) × [0,{mu_len}) does not index Z_{n} via {s}λ + {t}μ")
    })?;
    Ok(coloring(map.into_iter().map(|(l, m)| (q * l + m) % 3).collect()))
}

fn check_pair(n: usize, s: usize, t: usize) -> Result<()> {
    if s == t || s == 0 || t == 0 || s > n / 2 || t > n / 2 {
        return Err(domain!("need distinct 1 ≤ s, t ≤ {} for n = {n}, got s = {s}, t = {t}", n / 2));
    }
    Ok(())
}

/// Proper 3-coloring of `G(C_n, {s, t})`, `n = 3^u`, `u ≥ 2`.
///
/// Neither distance divisible by 3: `y mod 3`. Both divisible: scale by
/// `gcd(s, t, n)` and recurse. Exactly one, say `3 | s` with `s = 3^a r`:
/// color `λs + μt` by `qλ + μ mod 3` with `q = 1` if `rt ≡ 1 (mod 3)`, else `q = 2`.
pub fn cycle_3u_coloring(u: u32, s: usize, t: usize) -> Result<Coloring> {
    if u < 2 {
        return Err(domain!("exponent u must be at least 2, got {u}"));
    }
    let n = pow(3, u);
    check_pair(n, s, t)?;
    match (s % 3 == 0, t % 3 == 0) {
        (false, false) => Ok(coloring((0..n).map(|y| y % 3).collect())),
        (true, true) => {
            let g = gcd_all([s, t, n]);
            let a = exact_power(g, 3).expect("divisors of 3^u are powers of 3");
            let reduced = cycle_3u_coloring(u - a, s / g, t / g)?;
            Ok(lift_scaled_coloring(&reduced, g))
        }
        (true, false) => power_of_three_split(u, s, t),
        (false, true) => power_of_three_split(u, t, s),
    }
}

// 3 | s, 3 ∤ t, n = 3^u
fn power_of_three_split(u: u32, s: usize, t: usize) -> Result<Coloring> {
    let n = pow(3, u);
    let (a, r) = strip_factor(s, 3);
    let q = if (r % 3) * (t % 3) % 3 == 1 { 1 } else { 2 };
    lambda_mu_coloring(n, s, t, pow(3, u - a), pow(3, a), q)
}

/// Proper coloring of `G(C_n, {s, t})`, `n = 2·3^u`, `u ≥ 1`: two colors when
/// both distances are odd, three otherwise.
pub fn cycle_2x3u_coloring(u: u32, s: usize, t: usize) -> Result<Coloring> {
    if u < 1 {
        return Err(domain!("exponent u must be at least 1, got {u}"));
    }
    let n = 2 * pow(3, u);
    check_pair(n, s, t)?;
    match (s % 2, t % 2) {
        (1, 1) => Ok(coloring((0..n).map(|y| y % 2).collect())),
        (0, 0) => {
            let reduced = cycle_3u_coloring(u, s / 2, t / 2)?;
            Ok(lift_scaled_coloring(&reduced, 2))
        }
        _ => {
            let g = gcd_all([s, t, n]);
            if g > 1 {
                let a = exact_power(g, 3).expect("odd divisors of 2·3^u are powers of 3");
                let reduced = cycle_2x3u_coloring(u - a, s / g, t / g)?;
                return Ok(lift_scaled_coloring(&reduced, g));
            }
            let (even, odd) = if s % 2 == 0 { (s, t) } else { (t, s) };
            match (even % 3 == 0, odd % 3 == 0) {
                (false, false) => Ok(coloring((0..n).map(|y| y % 3).collect())),
                (true, _) => even_multiple_of_six_split(u, even, odd),
                (false, true) => odd_multiple_of_three_split(u, odd, even),
            }
        }
    }
}

// 6 | s, gcd(t, 6) = 1, n = 2·3^u. s = 2^b 3^a r, q from 2^{b-1} r t mod 3.
fn even_multiple_of_six_split(u: u32, s: usize, t: usize) -> Result<Coloring> {
    let n = 2 * pow(3, u);
    let (b, rest) = strip_factor(s, 2);
    let (a, r) = strip_factor(rest, 3);
    let two_pow = if (b - 1) % 2 == 0 { 1 } else { 2 };
    let q = if two_pow * (r % 3) * (t % 3) % 3 == 1 { 1 } else { 2 };
    lambda_mu_coloring(n, s, t, pow(3, u - a), 2 * pow(3, a), q)
}

// 3 | s, s odd, t even, 3 ∤ t, n = 2·3^u. s = 3^a r, q ≡ tr (mod 3).
fn odd_multiple_of_three_split(u: u32, s: usize, t: usize) -> Result<Coloring> {
    let n = 2 * pow(3, u);
    let (a, r) = strip_factor(s, 3);
    let q = (t % 3) * (r % 3) % 3;
    lambda_mu_coloring(n, s, t, 2 * pow(3, u - a), pow(3, a), q)
}

/// Coloring of `G(C_n, {1, 2})` from the words `(rbg)^*`, `(rbg)^* y` and `(rbg)^* rybgy`.
pub fn word_coloring_12(n: usize) -> Result<Coloring> {
    if n <= 3 {
        return Err(domain!("need n > 3, got {n}"));
    }
    if n == 5 {
        return Err(inapplicable!("C_5 with {{1,2}} is K_5; no 4-coloring exists"));
    }
    let mut word = "rbg".repeat(n / 3);
    match n % 3 {
        0 => {}
        1 => word.push('y'),
        _ => {
            word = "rbg".repeat((n - 5) / 3);
            word.push_str("rybgy");
        }
    }
    Coloring::from_word(&word)
}

/// Proper 3-coloring of `G(C_n, {2, 3})` for `n ∈ {10, 14}` or `n ≥ 20`.
///
/// For `n ≥ 20` the word is `λ` copies of `rrbbg` followed by `μ` copies of
/// `rrbbgg`, where `n = 5λ + 6μ`.
pub fn word_coloring_23(n: usize) -> Result<Coloring> {
    match n {
        10 => Coloring::from_word("rrbbgrrbgg"),
        14 => Coloring::from_word("rrbbgrrbggrbbg"),
        n if n >= 20 => {
            let (five, six) = frobenius_56(n).expect("every n ≥ 20 is 5λ + 6μ");
            Coloring::from_word(&("rrbbg".repeat(five) + &"rrbbgg".repeat(six)))
        }
        _ => Err(inapplicable!("no {{2,3}} word coloring for n = {n}")),
    }
}

/// `0^{k-1} 1^{k-1} 2^3` on `C_{2k+1}`; forbids `{k-1, k}`.
pub fn near_half_block_coloring(k: usize) -> Result<Coloring> {
    if k < 4 {
        return Err(domain!("need k ≥ 4, got {k}"));
    }
    let mut colors = vec![0; k - 1];
    colors.extend(std::iter::repeat_n(1, k - 1));
    colors.extend([2, 2, 2]);
    Ok(coloring(colors))
}

/// Proper 3-coloring of `G(C_{2^a}, {1, 2^{a-1}})`, `a ≥ 3`.
///
/// Parity on `[0, 2^{a-1})`, color 2 at `2^{a-1}`, parity of `j + 1` on the
/// open stretch after it, and color 2 again at `2^a - 1`.
pub fn power_of_two_coloring(a: u32) -> Result<Coloring> {
    if a < 3 {
        return Err(domain!("need a ≥ 3, got {a}"));
    }
    let n = pow(2, a);
    let half = n / 2;
    let colors = (0..n)
        .map(|j| match j {
            j if j < half => j % 2,
            j if j == half || j == n - 1 => 2,
            j => (j + 1) % 2,
        })
        .collect();
    Ok(coloring(colors))
}

/// `D = {n/size, 2n/size}`, whose distance graph on `C_n` contains `K_size`.
pub fn clique_witness(n: usize, size: usize) -> Result<DistanceSet> {
    MetricSpace::cycle(n)?;
    if size != 4 && size != 5 {
        return Err(domain!("clique witnesses exist for sizes 4 and 5, got {size}"));
    }
    if n % size != 0 {
        return Err(BabaiError::Infeasible(format!("{size} does not divide {n}")));
    }
    let m = n / size;
    Ok(DistanceSet::from_sorted(vec![m, 2 * m]))
}

/// The graph a recipe colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    Distance { space: MetricSpace, distances: DistanceSet },
    Cayley { n: usize, connection: DistanceSet },
}

impl Target {
    pub fn graph(&self) -> Result<SimpleGraph> {
        match self {
            Target::Distance { space, distances } => distance_graph(space, distances),
            Target::Cayley { n, connection } => cayley_graph(*n, connection),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Target::Distance { space, .. } => space.n(),
            Target::Cayley { n, .. } => *n,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Distance { space, distances } => write!(f, "G({space}, {distances})"),
            Target::Cayley { n, connection } => write!(f, "Cay(Z_{n}, {connection})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    PathGreedy,
    PathDivision,
    PathModM,
    ModR,
    WeaklyRFree,
    Cycle3u,
    Cycle2x3u,
    Word12,
    Word23,
    NearHalfBlock,
    PowerOfTwo,
}

impl Recipe {
    pub const ALL: [Recipe; 11] = [
        Recipe::PathGreedy,
        Recipe::PathDivision,
        Recipe::PathModM,
        Recipe::ModR,
        Recipe::WeaklyRFree,
        Recipe::Cycle3u,
        Recipe::Cycle2x3u,
        Recipe::Word12,
        Recipe::Word23,
        Recipe::NearHalfBlock,
        Recipe::PowerOfTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::PathGreedy => "path-greedy",
            Recipe::PathDivision => "path-division",
            Recipe::PathModM => "path-mod-m",
            Recipe::ModR => "mod-r",
            Recipe::WeaklyRFree => "weakly-r-free",
            Recipe::Cycle3u => "cycle-3u",
            Recipe::Cycle2x3u => "cycle-2x3u",
            Recipe::Word12 => "word-12",
            Recipe::Word23 => "word-23",
            Recipe::NearHalfBlock => "near-half-block",
            Recipe::PowerOfTwo => "power-of-two",
        }
    }

    pub fn applicability(self) -> &'static str {
        match self {
            Recipe::PathGreedy | Recipe::PathDivision => "any D ⊆ {1..n-1} on P_n",
            Recipe::PathModM => "P_n, 2 ≤ m ≤ n; forbids every non-multiple of m",
            Recipe::ModR => "C_n with r | n and no d ∈ D divisible by r",
            Recipe::WeaklyRFree => "Cay(Z_n, S) with S weakly r-free",
            Recipe::Cycle3u => "C_{3^u}, u ≥ 2, D = {s, t}",
            Recipe::Cycle2x3u => "C_{2·3^u}, u ≥ 1, D = {s, t}",
            Recipe::Word12 => "C_n, n > 3, n ≠ 5, D = {1, 2}",
            Recipe::Word23 => "C_n, n ∈ {10, 14} or n ≥ 20, D = {2, 3}",
            Recipe::NearHalfBlock => "C_{2k+1}, k ≥ 4, D = {k-1, k}",
            Recipe::PowerOfTwo => "C_{2^a}, a ≥ 3, D = {1, 2^{a-1}}",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One application of a recipe, with the color count it is claimed to achieve.
#[derive(Debug, Clone, Serialize)]
pub struct RecipeInstance {
    pub recipe: Recipe,
    pub target: Target,
    pub coloring: Coloring,
    pub claimed_colors: usize,
    /// The claim is `χ = claimed_colors` rather than `χ ≤ claimed_colors`.
    pub exact: bool,
}

fn distance_target(space: MetricSpace, distances: DistanceSet) -> Target {
    Target::Distance { space, distances }
}

fn cycle_target(n: usize, d: Vec<usize>) -> Result<Target> {
    Ok(distance_target(MetricSpace::cycle(n)?, DistanceSet::new(d)?))
}

fn all_subsets_up_to(max: usize, max_size: usize) -> Vec<Vec<usize>> {
    (1u64..1 << max)
        .filter(|mask| mask.count_ones() as usize <= max_size)
        .map(|mask| (1..=max).filter(|d| mask >> (d - 1) & 1 == 1).collect())
        .collect()
}

/// Every applicable parameter choice of `recipe` on at most `max_n` vertices.
///
/// Path recipes taking an arbitrary `D` are enumerated for `n ≤ min(max_n, 16)`
/// and `|D| ≤ 4`, since all subsets of `{1..n-1}` are out of reach beyond that.
pub fn recipe_grid(recipe: Recipe, max_n: usize) -> Result<Vec<RecipeInstance>> {
    let mut out = Vec::new();
    let mut push = |target: Target, coloring: Coloring, claimed_colors: usize, exact: bool| {
        out.push(RecipeInstance { recipe, target, coloring, claimed_colors, exact });
    };
    match recipe {
        Recipe::PathGreedy | Recipe::PathDivision => {
            for n in 2..=max_n.min(16) {
                for d in all_subsets_up_to(n - 1, 4) {
                    let distances = DistanceSet::new(d)?;
                    let col = if recipe == Recipe::PathGreedy {
                        crate::oracle::greedy_path_coloring(n, &distances)?
                    } else {
                        path_division_coloring(n, &distances)?
                    };
                    let claimed = distances.len() + 1;
                    push(distance_target(MetricSpace::path(n)?, distances), col, claimed, false);
                }
            }
        }
        Recipe::PathModM => {
            for n in 2..=max_n {
                for m in 2..=n {
                    let forbidden: Vec<usize> = (1..n).filter(|d| d % m != 0).collect();
                    let col = path_mod_m_coloring(n, m)?;
                    push(distance_target(MetricSpace::path(n)?, DistanceSet::new(forbidden)?), col, m, true);
                }
            }
        }
        Recipe::ModR => {
            for n in 3..=max_n {
                for r in (2..n).filter(|r| n % r == 0) {
                    let d: Vec<usize> = (1..=n / 2).filter(|d| d % r != 0).collect();
                    let distances = DistanceSet::new(d)?;
                    let col = mod_r_coloring(n, &distances, r)?;
                    push(distance_target(MetricSpace::cycle(n)?, distances), col, r, false);
                }
            }
        }
        Recipe::WeaklyRFree => {
            for n in 4..=max_n {
                for r in (2..=5).filter(|r| n % r == 0 && *r < n) {
                    for q in (1..r).filter(|q| q.gcd(&r) == 1) {
                        let set = DistanceSet::new((1..n).filter(|d| d % r == q).collect())?;
                        let col = weakly_r_free_coloring(n, &set, r)?;
                        push(Target::Cayley { n, connection: set }, col, r, false);
                    }
                }
            }
        }
        Recipe::Cycle3u => {
            for u in (2..).take_while(|&u| pow(3, u) <= max_n) {
                let n = pow(3, u);
                for s in 1..=n / 2 {
                    for t in s + 1..=n / 2 {
                        push(cycle_target(n, vec![s, t])?, cycle_3u_coloring(u, s, t)?, 3, true);
                    }
                }
            }
        }
        Recipe::Cycle2x3u => {
            for u in (1..).take_while(|&u| 2 * pow(3, u) <= max_n) {
                let n = 2 * pow(3, u);
                for s in 1..=n / 2 {
                    for t in s + 1..=n / 2 {
                        let claimed = if s % 2 == 1 && t % 2 == 1 { 2 } else { 3 };
                        push(cycle_target(n, vec![s, t])?, cycle_2x3u_coloring(u, s, t)?, claimed, true);
                    }
                }
            }
        }
        Recipe::Word12 => {
            for n in (4..=max_n).filter(|&n| n != 5) {
                let claimed = if n % 3 == 0 { 3 } else { 4 };
                push(cycle_target(n, vec![1, 2])?, word_coloring_12(n)?, claimed, true);
            }
        }
        Recipe::Word23 => {
            for n in [10, 14].into_iter().chain(20..=max_n).filter(|&n| n <= max_n) {
                push(cycle_target(n, vec![2, 3])?, word_coloring_23(n)?, 3, true);
            }
        }
        Recipe::NearHalfBlock => {
            for k in (4..).take_while(|k| 2 * k + 1 <= max_n) {
                push(cycle_target(2 * k + 1, vec![k - 1, k])?, near_half_block_coloring(k)?, 3, true);
            }
        }
        Recipe::PowerOfTwo => {
            for a in (3..).take_while(|&a| pow(2, a) <= max_n) {
                let n = pow(2, a);
                push(cycle_target(n, vec![1, n / 2])?, power_of_two_coloring(a)?, 3, true);
            }
        }
    }
    Ok(out)
}
