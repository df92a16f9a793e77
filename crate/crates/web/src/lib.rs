//! Browser bindings. Every function takes plain strings and numbers and
//! returns a JSON string; errors come back as `{"error": "..."}`.

use babai_core::numtheory::weak_freeness_violation;
use babai_core::constructions::weakly_r_free_coloring;
use babai_core::graph::cayley_graph;
use babai_core::{chromatic_number, closed_form_spectrum, distance_graph, DistanceSet, Engine, Family, MetricSpace};
use serde::Serialize;
use wasm_bindgen::prelude::*;

// keeps the page responsive; anything larger belongs on the command line
const WEB_BUDGET: u128 = 1_000_000;

#[derive(Serialize)]
struct Colored {
    n: usize,
    chi: usize,
    colors: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Spectrum {
    computed: Vec<usize>,
    witnesses: Vec<(usize, String)>,
    predicted: Option<Vec<usize>>,
    claim: Option<&'static str>,
    agrees: Option<bool>,
}

#[derive(Serialize)]
struct Freeness {
    free: bool,
    violation: Option<Vec<i64>>,
    colors: Option<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

fn reply<T: Serialize>(r: babai_core::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

fn color_inner(family: &str, n: usize, distances: &str) -> babai_core::Result<Colored> {
    let space = MetricSpace::new(family.parse::<Family>()?, n)?;
    let d: DistanceSet = distances.parse()?;
    let g = distance_graph(&space, &d)?;
    let result = chromatic_number(&g);
    Ok(Colored { n, chi: result.chi, colors: result.witness.colors().to_vec(), edges: g.edges().collect() })
}

/// Exact chromatic number and an optimal coloring of `G(X_n, D)`.
#[wasm_bindgen]
pub fn color_distance_graph(family: &str, n: usize, distances: &str) -> String {
    reply(color_inner(family, n, distances))
}

fn spectrum_inner(family: &str, n: usize, k: usize) -> babai_core::Result<Spectrum> {
    let space = MetricSpace::new(family.parse::<Family>()?, n)?;
    let mut options = babai_core::EngineOptions::default();
    options.budget = WEB_BUDGET;
    let s = Engine::new(options)?.spectrum(&space, k)?;
    let computed: Vec<usize> = s.values().into_iter().collect();
    let witnesses = s.entries.iter().map(|(c, d)| (*c, d.to_string())).collect();
    let (predicted, claim, agrees) = match closed_form_spectrum(&space, k) {
        Ok(p) => {
            let ok = p.claim.holds(&p.values, &s.values());
            (Some(p.values.into_iter().collect()), Some(p.claim.as_str()), Some(ok))
        }
        Err(_) => (None, None, None),
    };
    Ok(Spectrum { computed, witnesses, predicted, claim, agrees })
}

/// Brute-force k-spectrum next to the closed form, where one exists.
#[wasm_bindgen]
pub fn spectrum(family: &str, n: usize, k: usize) -> String {
    reply(spectrum_inner(family, n, k))
}

fn freeness_inner(n: usize, set: &str, r: usize) -> babai_core::Result<Freeness> {
    let s: DistanceSet = set.parse()?;
    let violation = weak_freeness_violation(n, s.as_slice(), r)?;
    let colors = match violation {
        None => Some(weakly_r_free_coloring(n, &s, r)?.colors().to_vec()),
        Some(_) => None,
    };
    let edges = cayley_graph(n, &s)?.edges().collect();
    Ok(Freeness { free: violation.is_none(), violation, colors, edges })
}

/// Weak r-freeness of S in Z_n, with the r-coloring of Cay(Z_n, S) when free.
#[wasm_bindgen]
pub fn weak_freeness(n: usize, set: &str, r: usize) -> String {
    reply(freeness_inner(n, set, r))
}
