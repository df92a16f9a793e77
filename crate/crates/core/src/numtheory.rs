//! Arithmetic in `Z_n`: cyclic subgroups and their cosets, multiple counting,
//! weak r-freeness, and the (5, 6) Frobenius decomposition.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Writes `n = p^e · rest` with `p ∤ rest`; returns `(e, rest)`.
pub fn strip_factor(mut n: usize, p: usize) -> (u32, usize) {
    debug_assert!(p > 1 && n > 0);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

/// If `n = p^e` with `e ≥ 1`, returns `e`.
pub fn exact_power(n: usize, p: usize) -> Option<u32> {
    match strip_factor(n, p) {
        (e, 1) if e >= 1 => Some(e),
        _ => None,
    }
}

pub fn gcd_all(values: impl IntoIterator<Item = usize>) -> usize {
    values.into_iter().fold(0, |acc, v| acc.gcd(&v))
}

/// Order of `d` in the additive group `Z_n`, i.e. `n / gcd(n, d)`.
pub fn order_in_zn(n: usize, d: usize) -> Result<usize> {
    if n == 0 {
        return Err(domain!("modulus must be positive"));
    }
    if d % n == 0 {
        return Err(domain!("{d} is the identity of Z_{n}; its order is undefined here"));
    }
    Ok(n / n.gcd(&d))
}

/// Cosets of `⟨d⟩` in `Z_n`, each listed in generation order `x, x+d, x+2d, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetDecomposition {
    pub n: usize,
    pub d: usize,
    pub cosets: Vec<Vec<usize>>,
}

impl CosetDecomposition {
    pub fn coset_size(&self) -> usize {
        self.cosets[0].len()
    }
}

pub fn coset_decomposition(n: usize, d: usize) -> Result<CosetDecomposition> {
    if d == 0 || d >= n {
        return Err(domain!("generator must satisfy 0 < d < n, got d = {d}, n = {n}"));
    }
    let mut seen = vec![false; n];
    let mut cosets = Vec::with_capacity(n.gcd(&d));
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            coset.push(x);
            x = (x + d) % n;
        }
        cosets.push(coset);
    }
    Ok(CosetDecomposition { n, d, cosets })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    /// The open interval `(m, n)`.
    OpenMN,
    /// The half-open interval `[1, n)`.
    HalfOpenOneN,
}

fn check_counting_args(m: usize, n: usize) -> Result<()> {
    if m <= 1 || n <= m {
        return Err(domain!("counting needs n > m > 1, got m = {m}, n = {n}"));
    }
    Ok(())
}

/// Multiples of `m` inside the interval: `⌈n/m⌉ - 2` on `(m, n)`, `⌈n/m⌉ - 1` on `[1, n)`.
pub fn count_multiples(m: usize, n: usize, interval: Interval) -> Result<usize> {
    check_counting_args(m, n)?;
    Ok(match interval {
        Interval::OpenMN => n.div_ceil(m) - 2,
        Interval::HalfOpenOneN => n.div_ceil(m) - 1,
    })
}

/// Integers in the interval that are not multiples of `m`.
pub fn count_nonmultiples(m: usize, n: usize, interval: Interval) -> Result<usize> {
    let multiples = count_multiples(m, n, interval)?;
    Ok(match interval {
        Interval::OpenMN => (n - m - 1) - multiples,
        Interval::HalfOpenOneN => (n - 1) - multiples,
    })
}

/// Coefficients `m_j` with `Σ m_j s_j ≡ 0 (mod n)` but `Σ m_j ≢ 0 (mod r)`, if any.
///
/// Explores the subgroup of `Z_n × Z_r` generated by the pairs `(s_j, 1)`;
/// each BFS edge adds `±1` to one coefficient, so the path back to the origin
/// spells out a violating combination.
pub fn weak_freeness_violation(n: usize, set: &[usize], r: usize) -> Result<Option<Vec<i64>>> {
    if r <= 1 {
        return Err(domain!("r must exceed 1, got {r}"));
    }
    if n == 0 {
        return Err(domain!("modulus must be positive"));
    }
    if let Some(s) = set.iter().find(|&&s| s % n == 0) {
        return Err(domain!("{s} is zero in Z_{n}"));
    }
    let states = n * r;
    // parent[state] = (previous state, generator index, sign)
    let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; states];
    let mut visited = vec![false; states];
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(state) = queue.pop_front() {
        let (x, c) = (state / r, state % r);
        if x == 0 && c != 0 {
            let mut coeffs = vec![0i64; set.len()];
            let mut cur = state;
            while let Some((prev, j, sign)) = parent[cur] {
                coeffs[j] += sign;
                cur = prev;
            }
            return Ok(Some(coeffs));
        }
        for (j, &s) in set.iter().enumerate() {
            let s = s % n;
            for (dx, dc, sign) in [(s, 1, 1i64), (n - s, r - 1, -1i64)] {
                let next = ((x + dx) % n) * r + (c + dc) % r;
                if !visited[next] {
                    visited[next] = true;
                    parent[next] = Some((state, j, sign));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

/// Whether every integer relation `Σ m_j s_j ≡ 0 (mod n)` has `Σ m_j ≡ 0 (mod r)`.
pub fn is_weakly_r_free(n: usize, set: &[usize], r: usize) -> Result<bool> {
    Ok(weak_freeness_violation(n, set, r)?.is_none())
}

/// `n = 5λ + 6μ` with the smallest possible `λ`, if such a split exists.
pub fn frobenius_56(n: usize) -> Option<(usize, usize)> {
    (0..=n / 5).find(|l| (n - 5 * l) % 6 == 0).map(|l| (l, (n - 5 * l) / 6))
}

/// Endpoints `(lo, hi)` of the half-open interval `J(m) = (n - ⌈n/m⌉, n - ⌈n/(m+1)⌉]`.
pub fn interval_j(n: usize, m: usize) -> (usize, usize) {
    (n - n.div_ceil(m), n - n.div_ceil(m + 1))
}

/// The unique `m ∈ {2, …, n-1}` with `k ∈ J(m)`, for `⌊n/2⌋ < k ≤ n - 1`.
pub fn spec_interval_m(n: usize, k: usize) -> Result<usize> {
    if n < 2 || k <= n / 2 || k > n - 1 {
        return Err(domain!("k = {k} lies outside (⌊n/2⌋, n-1] for n = {n}"));
    }
    (2..n)
        .find(|&m| {
            let (lo, hi) = interval_j(n, m);
            lo < k && k <= hi
        })
        .ok_or_else(|| domain!("no interval J(m) contains k = {k} for n = {n}"))
}
