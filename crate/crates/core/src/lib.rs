//! Babai numbers and Babai spectra of path and cycle distance graphs.
//!
//! A distance graph `G(X, D)` joins two vertices of a path or cycle when their
//! distance lies in `D`. The `k`-th Babai number is the largest chromatic
//! number over all `k`-element distance sets; the `k`-spectrum is the set of
//! all chromatic numbers attained.

pub mod cache;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod graph;
pub mod numtheory;
pub mod oracle;
pub mod report;

pub use error::{BabaiError, Result};
pub use graph::{distance_graph, DistanceSet, Family, MetricSpace, SimpleGraph};
pub use oracle::{chromatic_number, is_proper, Chromatic, Coloring};
pub use engine::{babai_number_bruteforce, closed_form_babai, closed_form_spectrum, spectrum_bruteforce, Engine, EngineOptions};
pub use report::{conjecture_report, KSpec, Mode, VerificationReport};
