//! Brute-force Babai numbers and spectra, and the closed forms they are checked against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cache::ChiCache;
use crate::error::{domain, BabaiError, Result};
use crate::graph::{distance_graph, DistanceSet, Family, MetricSpace};
use crate::numtheory::{exact_power, spec_interval_m, strip_factor};
use crate::oracle::chromatic_number;

/// Default ceiling on `C(|R|, k) · n`.
pub const DEFAULT_BUDGET: u128 = 200_000_000;

const CHUNK: u64 = 128;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Colex rank of a strictly increasing index set: `Σ C(c_i, i + 1)`.
pub fn colex_rank(indices: &[usize]) -> u128 {
    indices.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Inverse of [`colex_rank`] for `k`-subsets.
pub fn colex_unrank(mut rank: u128, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        out[i - 1] = c;
    }
    out
}

/// Advances to the colex successor within `0..m`; `false` once exhausted.
pub fn colex_next(indices: &mut [usize], m: usize) -> bool {
    let k = indices.len();
    for i in 0..k {
        let limit = if i + 1 < k { indices[i + 1] } else { m };
        if indices[i] + 1 < limit {
            indices[i] += 1;
            for (j, slot) in indices[..i].iter_mut().enumerate() {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// All `k`-subsets of `items` in colex order.
pub fn colex_subsets(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut state = (k <= items.len()).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = state.as_mut()?;
        let out = current.iter().map(|&i| items[i]).collect();
        if !colex_next(current, items.len()) {
            state = None;
        }
        Some(out)
    })
}

fn realized(space: &MetricSpace) -> Vec<usize> {
    space.realized_distances().collect()
}

fn check_k(space: &MetricSpace, k: usize) -> Result<()> {
    let available = space.diameter();
    if k == 0 || k > available {
        return Err(domain!(
            "{space} has no Babai number for k = {k}: it realizes {available} distance(s)"
        ));
    }
    Ok(())
}

/// `C(|R|, k) · n`, the enumeration cost used against the budget.
pub fn estimated_cost(space: &MetricSpace, k: usize) -> u128 {
    binomial(space.diameter(), k) * space.n() as u128
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BabaiResult {
    pub space: MetricSpace,
    pub k: usize,
    pub value: usize,
    pub witness: DistanceSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub space: MetricSpace,
    pub k: usize,
    /// First attaining subset in colex order for each attained value.
    pub entries: BTreeMap<usize, DistanceSet>,
}

impl SpectrumResult {
    pub fn values(&self) -> BTreeSet<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn babai(&self) -> BabaiResult {
        let (&value, witness) = self.entries.last_key_value().expect("spectra are non-empty");
        BabaiResult { space: self.space, k: self.k, value, witness: witness.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct EngineOptions {
    /// Worker threads; 0 uses every core, 1 runs on the calling thread.
    pub jobs: usize,
    pub budget: u128,
    pub cache: Option<Arc<ChiCache>>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { jobs: 1, budget: DEFAULT_BUDGET, cache: None }
    }
}

pub struct Engine {
    options: EngineOptions,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine").field("options", &self.options).finish()
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineOptions::default()).expect("sequential engine needs no pool")
    }
}

type ChunkBest = BTreeMap<usize, (u128, Vec<usize>)>;

impl Engine {
    pub fn new(options: EngineOptions) -> Result<Self> {
        #[cfg(feature = "parallel")]
        let pool = match options.jobs {
            0 | 1 => None,
            n => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| domain!("cannot start {n} workers: {e}"))?,
            ),
        };
        Ok(Engine {
            options,
            #[cfg(feature = "parallel")]
            pool,
        })
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    /// Oracle χ of `G(space, d)`, through the cache when one is attached.
    pub fn chi(&self, space: &MetricSpace, d: &DistanceSet) -> Result<usize> {
        if let Some(hit) = self.options.cache.as_ref().and_then(|c| c.get(space.family(), space.n(), d)) {
            return Ok(hit);
        }
        let chi = chromatic_number(&distance_graph(space, d)?).chi;
        if let Some(cache) = &self.options.cache {
            cache.insert(space.family(), space.n(), d, chi);
        }
        Ok(chi)
    }

    fn check_budget(&self, space: &MetricSpace, k: usize) -> Result<()> {
        let cost = estimated_cost(space, k);
        if cost > self.options.budget {
            return Err(BabaiError::BudgetExceeded { cost, ceiling: self.options.budget });
        }
        Ok(())
    }

    fn scan_chunk(&self, space: &MetricSpace, items: &[usize], k: usize, chunk: u64, total: u128) -> ChunkBest {
        let start = chunk as u128 * CHUNK as u128;
        let end = (start + CHUNK as u128).min(total);
        let mut idx = colex_unrank(start, k);
        let mut best = ChunkBest::new();
        for rank in start..end {
            let d = DistanceSet::new(idx.iter().map(|&i| items[i]).collect()).expect("distinct positive");
            let chi = self.chi(space, &d).expect("subsets of realized distances are valid");
            best.entry(chi).or_insert_with(|| (rank, idx.clone()));
            colex_next(&mut idx, items.len());
        }
        best
    }

    fn map_chunks(&self, chunks: u64, f: impl Fn(u64) -> ChunkBest + Sync + Send) -> Vec<ChunkBest> {
        #[cfg(feature = "parallel")]
        if self.options.jobs != 1 {
            use rayon::prelude::*;
            let work = || (0..chunks).into_par_iter().map(&f).collect();
            return match &self.pool {
                Some(pool) => pool.install(work),
                None => work(),
            };
        }
        (0..chunks).map(f).collect()
    }

    /// Every attained `χ(space, D)` over `k`-subsets `D` of realized distances.
    pub fn spectrum(&self, space: &MetricSpace, k: usize) -> Result<SpectrumResult> {
        check_k(space, k)?;
        self.check_budget(space, k)?;
        let items = realized(space);
        let total = binomial(items.len(), k);
        let chunks = total.div_ceil(CHUNK as u128) as u64;
        let mut merged = ChunkBest::new();
        for part in self.map_chunks(chunks, |c| self.scan_chunk(space, &items, k, c, total)) {
            for (chi, found) in part {
                let slot = merged.entry(chi).or_insert_with(|| found.clone());
                if found.0 < slot.0 {
                    *slot = found;
                }
            }
        }
        let entries = merged
            .into_iter()
            .map(|(chi, (_, idx))| {
                (chi, DistanceSet::new(idx.into_iter().map(|i| items[i]).collect()).expect("valid"))
            })
            .collect();
        Ok(SpectrumResult { space: *space, k, entries })
    }

    pub fn babai(&self, space: &MetricSpace, k: usize) -> Result<BabaiResult> {
        Ok(self.spectrum(space, k)?.babai())
    }
}

/// `B_k(space)` by exhaustive enumeration on the calling thread.
pub fn babai_number_bruteforce(space: &MetricSpace, k: usize) -> Result<BabaiResult> {
    Engine::default().babai(space, k)
}

/// `Spec(space, k)` by exhaustive enumeration on the calling thread.
pub fn spectrum_bruteforce(space: &MetricSpace, k: usize) -> Result<SpectrumResult> {
    Engine::default().spectrum(space, k)
}

fn no_closed_form(space: &MetricSpace, k: usize) -> BabaiError {
    BabaiError::NoClosedForm(format!("{space} with k = {k}"))
}

/// The proven value of `B_k`: `k + 1` on paths; on cycles only `k ∈ {1, 2}`.
pub fn closed_form_babai(space: &MetricSpace, k: usize) -> Result<usize> {
    check_k(space, k)?;
    let n = space.n();
    match (space.family(), k) {
        (Family::Path, k) => Ok(k + 1),
        (Family::Cycle, 1) => Ok(if n.is_power_of_two() { 2 } else { 3 }),
        (Family::Cycle, 2) => Ok(if n % 5 == 0 {
            5
        } else if exact_power(n, 3).is_some() || (n % 2 == 0 && exact_power(n / 2, 3).is_some()) {
            3
        } else {
            4
        }),
        _ => Err(no_closed_form(space, k)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumClaim {
    Exact,
    /// The set is contained in the spectrum.
    LowerBound,
    /// Exact, derived rather than stated: `Spec(C_{2^a}, 1) = {2}`.
    ExactDerived,
}

impl SpectrumClaim {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumClaim::Exact => "exact",
            SpectrumClaim::LowerBound => "lower-bound",
            SpectrumClaim::ExactDerived => "exact-derived",
        }
    }

    pub fn holds(self, predicted: &BTreeSet<usize>, computed: &BTreeSet<usize>) -> bool {
        match self {
            SpectrumClaim::LowerBound => predicted.is_subset(computed),
            _ => predicted == computed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedSpectrum {
    pub values: BTreeSet<usize>,
    pub claim: SpectrumClaim,
}

fn exact(values: impl IntoIterator<Item = usize>) -> PredictedSpectrum {
    PredictedSpectrum { values: values.into_iter().collect(), claim: SpectrumClaim::Exact }
}

/// Which row of the `Spec(C_n, 2)` table `n` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleTwoCase {
    PowerOfThree,
    FourOrSeven,
    Five,
    TwicePowerOfThree,
    OddWithLargePrime,
    EvenWithoutFive,
    OddMultipleOfFive,
    EvenMultipleOfFive,
}

impl CycleTwoCase {
    pub fn classify(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(domain!("Spec(C_n, 2) needs n ≥ 4, got {n}"));
        }
        let (twos, rest) = strip_factor(n, 2);
        let (_, rest) = strip_factor(rest, 3);
        let (fives, rest) = strip_factor(rest, 5);
        Ok(match (fives > 0, rest > 1, twos) {
            (true, ..) if n == 5 => CycleTwoCase::Five,
            (true, _, 0) => CycleTwoCase::OddMultipleOfFive,
            (true, ..) => CycleTwoCase::EvenMultipleOfFive,
            (false, false, 0) => CycleTwoCase::PowerOfThree,
            (false, false, 1) => CycleTwoCase::TwicePowerOfThree,
            (false, false, _) if n == 4 => CycleTwoCase::FourOrSeven,
            (false, false, _) => CycleTwoCase::EvenWithoutFive,
            (false, true, _) if n == 7 => CycleTwoCase::FourOrSeven,
            (false, true, 0) => CycleTwoCase::OddWithLargePrime,
            (false, true, _) => CycleTwoCase::EvenWithoutFive,
        })
    }

    pub fn spectrum(self) -> BTreeSet<usize> {
        let values: &[usize] = match self {
            CycleTwoCase::PowerOfThree => &[3],
            CycleTwoCase::FourOrSeven => &[4],
            CycleTwoCase::Five => &[5],
            CycleTwoCase::TwicePowerOfThree => &[2, 3],
            CycleTwoCase::OddWithLargePrime => &[3, 4],
            CycleTwoCase::EvenWithoutFive => &[2, 3, 4],
            CycleTwoCase::OddMultipleOfFive => &[3, 4, 5],
            CycleTwoCase::EvenMultipleOfFive => &[2, 3, 4, 5],
        };
        values.iter().copied().collect()
    }
}

/// The proven spectrum, tagged with how strong the claim is.
pub fn closed_form_spectrum(space: &MetricSpace, k: usize) -> Result<PredictedSpectrum> {
    check_k(space, k)?;
    let n = space.n();
    match (space.family(), k) {
        (Family::Path, k) if k <= n / 2 => Ok(exact(2..=k + 1)),
        (Family::Path, k) => {
            let m = spec_interval_m(n, k)?;
            Ok(PredictedSpectrum { values: (m + 1..=k + 1).collect(), claim: SpectrumClaim::LowerBound })
        }
        (Family::Cycle, 1) if n.is_power_of_two() => {
            Ok(PredictedSpectrum { values: BTreeSet::from([2]), claim: SpectrumClaim::ExactDerived })
        }
        (Family::Cycle, 1) if n % 2 == 0 => Ok(exact([2, 3])),
        (Family::Cycle, 1) => Ok(exact([3])),
        (Family::Cycle, 2) => Ok(exact(CycleTwoCase::classify(n)?.spectrum())),
        _ => Err(no_closed_form(space, k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[usize]) -> DistanceSet {
        DistanceSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn colex_order_and_ranks() {
        let all: Vec<Vec<usize>> = colex_subsets(&[1, 2, 3, 4], 2).collect();
        assert_eq!(all, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
        for m in 1..=9 {
            for k in 1..=m {
                let items: Vec<usize> = (0..m).collect();
                let subsets: Vec<Vec<usize>> = colex_subsets(&items, k).collect();
                assert_eq!(subsets.len() as u128, binomial(m, k));
                for (r, s) in subsets.iter().enumerate() {
                    assert_eq!(colex_rank(s), r as u128);
                    assert_eq!(&colex_unrank(r as u128, k), s);
                }
            }
        }
        assert_eq!(colex_subsets(&[1, 2], 3).count(), 0);
    }

    #[test]
    fn bruteforce_examples() {
        let r = babai_number_bruteforce(&MetricSpace::path(6).unwrap(), 2).unwrap();
        assert_eq!((r.value, r.witness), (3, ds(&[1, 2])));
        assert_eq!(babai_number_bruteforce(&MetricSpace::cycle(8).unwrap(), 1).unwrap().value, 2);
        let r = babai_number_bruteforce(&MetricSpace::cycle(10).unwrap(), 2).unwrap();
        assert_eq!((r.value, r.witness), (5, ds(&[2, 4])));
        assert!(matches!(
            babai_number_bruteforce(&MetricSpace::cycle(3).unwrap(), 2),
            Err(BabaiError::Domain(_))
        ));
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(spectrum_bruteforce(&MetricSpace::cycle(7).unwrap(), 2).unwrap().values(), set(&[4]));
        assert_eq!(spectrum_bruteforce(&MetricSpace::path(8).unwrap(), 3).unwrap().values(), set(&[2, 3, 4]));
        assert_eq!(spectrum_bruteforce(&MetricSpace::cycle(9).unwrap(), 2).unwrap().values(), set(&[3]));
    }

    #[test]
    fn closed_form_examples() {
        let p = |n| MetricSpace::path(n).unwrap();
        let c = |n| MetricSpace::cycle(n).unwrap();
        assert_eq!(closed_form_babai(&p(9), 4).unwrap(), 5);
        assert_eq!(closed_form_babai(&c(12), 2).unwrap(), 4);
        assert_eq!(closed_form_babai(&c(18), 2).unwrap(), 3);
        assert_eq!(closed_form_babai(&c(16), 1).unwrap(), 2);
        assert!(matches!(closed_form_babai(&c(12), 3), Err(BabaiError::NoClosedForm(_))));
        assert!(matches!(closed_form_babai(&c(3), 2), Err(BabaiError::Domain(_))));

        let s = closed_form_spectrum(&p(10), 4).unwrap();
        assert_eq!((s.values, s.claim), ((2..=5).collect(), SpectrumClaim::Exact));
        let s = closed_form_spectrum(&p(10), 6).unwrap();
        assert_eq!((s.values, s.claim), ((3..=7).collect(), SpectrumClaim::LowerBound));
        assert_eq!(closed_form_spectrum(&c(15), 2).unwrap().values, (3..=5).collect());
        assert_eq!(closed_form_spectrum(&c(14), 2).unwrap().values, (2..=4).collect());
        assert_eq!(closed_form_spectrum(&c(8), 1).unwrap().claim, SpectrumClaim::ExactDerived);
    }

    fn is_prime(p: usize) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
    }

    // rows of the table, each written out as stated
    fn rows(n: usize) -> Vec<CycleTwoCase> {
        let pow3 = |x: usize| x > 1 && exact_power(x, 3).is_some();
        let large_prime_split = |odd: bool| {
            (7..=n).filter(|&p| n % p == 0 && is_prime(p)).any(|p| {
                let m = n / p;
                m % 5 != 0 && if odd { m % 2 == 1 } else { m > 1 && m % 2 == 0 }
            })
        };
        let two_three = (2..).take_while(|a| 1usize << a <= n).any(|a| {
            let m = n >> a;
            m << a == n && (m == 1 || exact_power(m, 3).is_some())
        });
        let mut out = Vec::new();
        if pow3(n) {
            out.push(CycleTwoCase::PowerOfThree);
        }
        if n == 4 || n == 7 {
            out.push(CycleTwoCase::FourOrSeven);
        }
        if n == 5 {
            out.push(CycleTwoCase::Five);
        }
        if n % 2 == 0 && pow3(n / 2) {
            out.push(CycleTwoCase::TwicePowerOfThree);
        }
        if large_prime_split(true) && n > 7 {
            out.push(CycleTwoCase::OddWithLargePrime);
        }
        if (two_three && n != 4) || large_prime_split(false) {
            out.push(CycleTwoCase::EvenWithoutFive);
        }
        if n % 5 == 0 && (n / 5) % 2 == 1 && n / 5 >= 3 {
            out.push(CycleTwoCase::OddMultipleOfFive);
        }
        if n % 5 == 0 && (n / 5) % 2 == 0 {
            out.push(CycleTwoCase::EvenMultipleOfFive);
        }
        out
    }

    #[test]
    fn spectrum_table_rows_partition_n() {
        for n in 4..=10_000 {
            let hits = rows(n);
            assert_eq!(hits.len(), 1, "n = {n} matches {hits:?}");
            assert_eq!(CycleTwoCase::classify(n).unwrap(), hits[0], "n = {n}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let engine = Engine::new(EngineOptions { budget: 10, ..EngineOptions::default() }).unwrap();
        assert!(matches!(
            engine.spectrum(&MetricSpace::path(6).unwrap(), 2),
            Err(BabaiError::BudgetExceeded { cost: 60, ceiling: 10 })
        ));
    }
}
