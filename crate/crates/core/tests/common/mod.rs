#![allow(dead_code)]

use babai_core::SimpleGraph;

/// χ by plain backtracking over restricted growth strings, for small graphs.
pub fn rgs_chromatic(g: &SimpleGraph) -> usize {
    fn fits(g: &SimpleGraph, colors: &mut Vec<usize>, k: usize, used: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors.push(c);
                if fits(g, colors, k, used.max(c + 1)) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=g.n()).find(|&k| fits(g, &mut Vec::new(), k, 0)).expect("n colors always suffice")
}

/// Searches `m ∈ [0, n]^|S|` for `Σ m_j s_j ≡ 0 (mod n)` with `Σ m_j ≢ 0 (mod r)`.
///
/// The relation lattice contains `nZ^|S|`, so it has a Hermite basis with entries
/// in `[0, n]`; coefficient sum mod r is a homomorphism on it, so a violation
/// exists iff one lies in this box.
pub fn weakly_free_bruteforce(n: usize, set: &[usize], r: usize) -> bool {
    let (&last, rest) = set.split_last().expect("non-empty set");
    // masks[t] = residues mod r of the m ∈ [0, n] with m·last ≡ t
    let mut masks = vec![0u32; n];
    for m in 0..=n {
        masks[m * last % n] |= 1 << (m % r);
    }
    let mut coeffs = vec![0usize; rest.len()];
    loop {
        let sum: usize = coeffs.iter().zip(rest).map(|(m, s)| m * s).sum::<usize>() % n;
        let csum: usize = coeffs.iter().sum::<usize>() % r;
        let need = (n - sum) % n;
        let bad_bit = (r - csum) % r;
        if masks[need] & !(1 << bad_bit) != 0 {
            return false;
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return true;
            }
            coeffs[i] += 1;
            if coeffs[i] <= n {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// All subsets of `1..=max` with between 1 and `max_size` elements, smallest first.
pub fn subsets(max: usize, max_size: usize) -> impl Iterator<Item = Vec<usize>> {
    fn extend(max: usize, size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == size {
            out.push(prefix.clone());
            return;
        }
        let from = prefix.last().map_or(1, |&x| x + 1);
        for x in from..=max {
            prefix.push(x);
            extend(max, size, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size.min(max) {
        extend(max, size, &mut Vec::new(), &mut out);
    }
    out.into_iter()
}
