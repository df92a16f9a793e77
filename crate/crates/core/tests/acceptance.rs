//! One line per acceptance criterion; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use babai_core::constructions::{recipe_grid, scaling_reduce, weakly_r_free_coloring, Recipe};
use babai_core::engine::{CycleTwoCase, SpectrumClaim};
use babai_core::graph::cayley_graph;
use babai_core::numtheory::is_weakly_r_free;
use babai_core::report::{conjecture_csv, Instance, Status};
use babai_core::{
    chromatic_number, distance_graph, is_proper, DistanceSet, Engine, EngineOptions, Family, KSpec, MetricSpace,
    Mode, VerificationReport,
};
use common::{subsets, weakly_free_bruteforce};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        Outcome { pass: false, detail: format!("{} failing: {}", failures.len(), shown.join("; ")) }
    }
}

/// The sweeps behind criteria 1 to 5, in a fixed order.
fn sweeps(jobs: usize) -> Vec<(&'static str, VerificationReport)> {
    let engine = Engine::new(EngineOptions { jobs, ..EngineOptions::default() }).unwrap();
    let run = |family, lo, hi, k: KSpec, mode| engine.verify_range(family, lo..=hi, k, mode).unwrap();
    let mut out = vec![
        ("path-babai", run(Family::Path, 2, 12, KSpec::All, Mode::Babai)),
        ("path-spectrum", run(Family::Path, 2, 12, KSpec::All, Mode::Spectrum)),
        ("cycle-1-babai", run(Family::Cycle, 3, 32, KSpec::Range(1, 1), Mode::Babai)),
        ("cycle-1-spectrum", run(Family::Cycle, 3, 32, KSpec::Range(1, 1), Mode::Spectrum)),
        ("cycle-2-babai", run(Family::Cycle, 4, 30, KSpec::Range(2, 2), Mode::Babai)),
        ("cycle-2-spectrum", run(Family::Cycle, 4, 30, KSpec::Range(2, 2), Mode::Spectrum)),
    ];
    for n in [32, 36] {
        out.push(("cycle-2-babai", run(Family::Cycle, n, n, KSpec::Range(2, 2), Mode::Babai)));
        out.push(("cycle-2-spectrum", run(Family::Cycle, n, n, KSpec::Range(2, 2), Mode::Spectrum)));
    }
    out
}

fn instances<'a>(
    reports: &'a [(&'static str, VerificationReport)],
    name: &'a str,
) -> impl Iterator<Item = &'a Instance> + 'a {
    reports.iter().filter(move |(n, _)| *n == name).flat_map(|(_, r)| &r.instances)
}

fn describe(i: &Instance) -> String {
    let show = |v: &Option<_>| v.as_ref().map_or("-".to_string(), |v: &babai_core::report::Value| v.to_string());
    format!("{} n={} k={} predicted {} computed {}", i.family, i.n, i.k, show(&i.predicted), show(&i.computed))
}

fn failures<'a>(it: impl Iterator<Item = &'a Instance>) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for i in it {
        count += 1;
        if i.status != Status::Pass {
            bad.push(describe(i));
        }
    }
    (count, bad)
}

fn criterion_1(reports: &[(&'static str, VerificationReport)]) -> Outcome {
    let (count, bad) = failures(instances(reports, "path-babai"));
    outcome(&bad, format!("B_k(P_n) = k+1 on {count} instances, 2 ≤ n ≤ 12"))
}

fn criterion_2(reports: &[(&'static str, VerificationReport)]) -> Outcome {
    let (count, bad) = failures(instances(reports, "path-spectrum").filter(|i| i.k <= i.n / 2));
    let tagged = instances(reports, "path-spectrum")
        .filter(|i| i.k <= i.n / 2)
        .all(|i| i.claim == Some(SpectrumClaim::Exact));
    let mut bad = bad;
    if !tagged {
        bad.push("exact claim missing".into());
    }
    outcome(&bad, format!("Spec(P_n,k) = {{2..k+1}} on {count} instances"))
}

fn criterion_3(reports: &[(&'static str, VerificationReport)]) -> Outcome {
    let (count, bad) = failures(instances(reports, "path-spectrum").filter(|i| i.k > i.n / 2));
    let rows = Engine::default().conjecture_range(2..=12, None).unwrap();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("conjecture.csv");
    std::fs::write(&path, conjecture_csv(&rows)).unwrap();
    let unequal: Vec<String> = rows
        .iter()
        .filter(|r| r.equal != Some(true))
        .map(|r| format!("(n={}, k={})", r.n, r.k))
        .collect();
    let mut detail = format!(
        "lower bound holds on {count} instances; conjecture equal on {}/{} rows",
        rows.len() - unequal.len(),
        rows.len()
    );
    if !unequal.is_empty() {
        write!(detail, ", unequal at {}", unequal.join(" ")).unwrap();
    }
    write!(detail, "; table at {}", path.display()).unwrap();
    outcome(&bad, detail)
}

fn criterion_4(reports: &[(&'static str, VerificationReport)]) -> Outcome {
    let (a, mut bad) = failures(instances(reports, "cycle-1-babai"));
    let (b, more) = failures(instances(reports, "cycle-1-spectrum"));
    bad.extend(more);
    let derived: Vec<usize> = instances(reports, "cycle-1-spectrum")
        .filter(|i| i.claim == Some(SpectrumClaim::ExactDerived))
        .map(|i| i.n)
        .collect();
    if derived != [4, 8, 16, 32] {
        bad.push(format!("derived {{2}} rows at {derived:?}"));
    }
    outcome(&bad, format!("{a} Babai and {b} spectrum instances, 3 ≤ n ≤ 32"))
}

fn criterion_5(reports: &[(&'static str, VerificationReport)]) -> Outcome {
    let (a, mut bad) = failures(instances(reports, "cycle-2-babai"));
    let (b, more) = failures(instances(reports, "cycle-2-spectrum"));
    bad.extend(more);
    let covered: BTreeSet<String> = instances(reports, "cycle-2-spectrum")
        .map(|i| format!("{:?}", CycleTwoCase::classify(i.n).unwrap()))
        .collect();
    if covered.len() != 8 {
        bad.push(format!("only {} table rows covered", covered.len()));
    }
    outcome(&bad, format!("{a} Babai and {b} spectrum instances, all 8 table rows covered"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for recipe in Recipe::ALL {
        for inst in recipe_grid(recipe, 60).unwrap() {
            total += 1;
            let g = inst.target.graph().unwrap();
            if !is_proper(&g, &inst.coloring).unwrap() {
                bad.push(format!("{recipe} improper on {}", inst.target));
            } else if inst.coloring.num_colors() > inst.claimed_colors {
                bad.push(format!("{recipe} uses {} colors on {}", inst.coloring.num_colors(), inst.target));
            } else if inst.exact && chromatic_number(&g).chi != inst.claimed_colors {
                bad.push(format!("{recipe} claims χ = {} on {}", inst.claimed_colors, inst.target));
            }
        }
    }
    outcome(&bad, format!("{total} recipe instances over {} recipes, n ≤ 60", Recipe::ALL.len()))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let (mut checked, mut free) = (0, 0);
    for n in 3..=40 {
        for r in 2..=5 {
            for set in subsets(n - 1, 3) {
                checked += 1;
                let fast = is_weakly_r_free(n, &set, r).unwrap();
                if fast != weakly_free_bruteforce(n, &set, r) {
                    bad.push(format!("n={n} S={set:?} r={r}"));
                    continue;
                }
                if fast {
                    free += 1;
                    let s = DistanceSet::new(set.clone()).unwrap();
                    let col = weakly_r_free_coloring(n, &s, r).unwrap();
                    if col.num_colors() > r || !is_proper(&cayley_graph(n, &s).unwrap(), &col).unwrap() {
                        bad.push(format!("coloring n={n} S={set:?} r={r}"));
                    }
                }
            }
        }
    }
    outcome(&bad, format!("{checked} (n, S, r) triples agree; {free} weakly free sets colored"))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let chi = |n, d: &DistanceSet| chromatic_number(&distance_graph(&MetricSpace::cycle(n).unwrap(), d).unwrap()).chi;
    for n in 4..=36 {
        for s in 1..=n / 2 {
            for t in s + 1..=n / 2 {
                let d = DistanceSet::new(vec![s, t]).unwrap();
                let red = scaling_reduce(n, &d).unwrap();
                if red.divisor == 1 {
                    continue;
                }
                checked += 1;
                if chi(n, &d) != chi(red.n, &red.distances) {
                    bad.push(format!("C_{n} {d}"));
                }
            }
        }
    }
    outcome(&bad, format!("χ preserved on {checked} scaled pairs"))
}

fn criterion_9(serial: &[(&'static str, VerificationReport)]) -> Outcome {
    let render = |reports: &[(&'static str, VerificationReport)]| {
        reports.iter().map(|(_, r)| r.to_json() + &r.to_csv() + &r.to_text()).collect::<String>()
    };
    let base = render(serial);
    let mut bad = Vec::new();
    for jobs in [2, 8] {
        if render(&sweeps(jobs)) != base {
            bad.push(format!("jobs = {jobs} differs"));
        }
    }
    outcome(&bad, format!("{} report bytes identical for jobs 1, 2, 8", base.len()))
}

fn main() {
    let started = Instant::now();
    let reports = sweeps(1);
    let setup = started.elapsed();
    let criteria: [(&str, Box<dyn Fn() -> Outcome + '_>); 9] = [
        ("path Babai numbers", Box::new(|| criterion_1(&reports))),
        ("path spectra", Box::new(|| criterion_2(&reports))),
        ("path spectrum lower bound", Box::new(|| criterion_3(&reports))),
        ("cycles, k = 1", Box::new(|| criterion_4(&reports))),
        ("cycles, k = 2", Box::new(|| criterion_5(&reports))),
        ("constructive colorings", Box::new(criterion_6)),
        ("weak r-freeness", Box::new(criterion_7)),
        ("scaling reduction", Box::new(criterion_8)),
        ("determinism across workers", Box::new(|| criterion_9(&reports))),
    ];
    println!("acceptance: sweeps for criteria 1-5 computed in {:.2}s", setup.as_secs_f64());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {} [{:.2}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
