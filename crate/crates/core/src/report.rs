//! Theorem-versus-brute-force sweeps and the conjecture explorer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{closed_form_babai, closed_form_spectrum, Engine, SpectrumClaim};
use crate::error::{domain, BabaiError, Result};
use crate::graph::{DistanceSet, Family, MetricSpace};
use crate::numtheory::spec_interval_m;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Babai,
    Spectrum,
}

impl FromStr for Mode {
    type Err = BabaiError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "babai" => Ok(Mode::Babai),
            "spectrum" => Ok(Mode::Spectrum),
            _ => Err(domain!("unknown mode {s:?}; expected babai or spectrum")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DomainError,
    NoClosedForm,
    Truncated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DomainError => "domain-error",
            Status::NoClosedForm => "no-closed-form",
            Status::Truncated => "truncated",
        }
    }
}

/// The `k` values a sweep covers for each `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KSpec {
    /// `1..=|R|`, which depends on `n`.
    All,
    Range(usize, usize),
}

impl KSpec {
    pub fn values(&self, space: &MetricSpace) -> RangeInclusive<usize> {
        match *self {
            KSpec::All => 1..=space.diameter(),
            KSpec::Range(lo, hi) => lo..=hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Number(usize),
    Set(BTreeSet<usize>),
}

pub fn fmt_set<'a>(values: impl IntoIterator<Item = &'a usize>) -> String {
    let parts: Vec<String> = values.into_iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(v) => write!(f, "{v}"),
            Value::Set(s) => f.write_str(&fmt_set(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Single(DistanceSet),
    PerValue(BTreeMap<usize, DistanceSet>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Single(d) => write!(f, "{d}"),
            Witness::PerValue(map) => {
                let parts: Vec<String> = map.iter().map(|(chi, d)| format!("{chi}:{d}")).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub claim: Option<SpectrumClaim>,
    pub predicted: Option<Value>,
    pub computed: Option<Value>,
    pub witness: Option<Witness>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub domain_error: usize,
    pub no_closed_form: usize,
    pub truncated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub family: Family,
    pub mode: Mode,
    pub n_range: (usize, usize),
    pub k_range: KSpec,
    pub instances: Vec<Instance>,
    pub summary: Summary,
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl VerificationReport {
    /// No failures and nothing truncated; domain errors and missing closed forms are not failures.
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.truncated == 0
    }

    pub fn truncated(&self) -> bool {
        self.summary.truncated > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["family", "n", "k", "predicted", "computed", "witness", "status"])
            .expect("in-memory write");
        for i in &self.instances {
            w.write_record([
                i.family.as_str().to_string(),
                i.n.to_string(),
                i.k.to_string(),
                opt(&i.predicted),
                opt(&i.computed),
                opt(&i.witness),
                i.status.as_str().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_text(&self) -> String {
        let header = ["family", "n", "k", "predicted", "computed", "witness", "status"].map(String::from);
        let rows: Vec<[String; 7]> = self
            .instances
            .iter()
            .map(|i| {
                [
                    i.family.as_str().to_string(),
                    i.n.to_string(),
                    i.k.to_string(),
                    opt(&i.predicted),
                    opt(&i.computed),
                    opt(&i.witness),
                    i.status.as_str().to_string(),
                ]
            })
            .collect();
        let mut out = aligned(&header, &rows);
        let s = &self.summary;
        writeln!(
            out,
            "{} instances: {} pass, {} fail, {} domain-error, {} no-closed-form, {} truncated",
            s.total, s.pass, s.fail, s.domain_error, s.no_closed_form, s.truncated
        )
        .expect("string write");
        out
    }
}

/// Left-aligned columns separated by two spaces, numbers right-aligned.
pub fn aligned<const N: usize>(header: &[String; N], rows: &[[String; N]]) -> String {
    let mut widths: [usize; N] = std::array::from_fn(|i| header[i].chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows) {
        let mut line = String::new();
        for (c, (cell, w)) in row.iter().zip(widths).enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let pad = w - cell.chars().count();
            if cell.parse::<usize>().is_ok() {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn instance(family: Family, n: usize, k: usize, status: Status) -> Instance {
    Instance { family, n, k, claim: None, predicted: None, computed: None, witness: None, status, note: None }
}

impl Engine {
    fn verify_one(&self, space: &MetricSpace, k: usize, mode: Mode) -> Instance {
        let mut inst = instance(space.family(), space.n(), k, Status::Pass);
        let predicted = match mode {
            Mode::Babai => closed_form_babai(space, k).map(|v| (Value::Number(v), None)),
            Mode::Spectrum => closed_form_spectrum(space, k).map(|p| (Value::Set(p.values), Some(p.claim))),
        };
        match predicted {
            Ok((value, claim)) => {
                inst.predicted = Some(value);
                inst.claim = claim;
            }
            Err(BabaiError::NoClosedForm(msg)) => {
                inst.status = Status::NoClosedForm;
                inst.note = Some(msg);
            }
            Err(e) => {
                inst.status = Status::DomainError;
                inst.note = Some(e.to_string());
                return inst;
            }
        }
        let spectrum = match self.spectrum(space, k) {
            Ok(s) => s,
            Err(e) => {
                inst.status = match e {
                    BabaiError::BudgetExceeded { .. } => Status::Truncated,
                    _ => Status::DomainError,
                };
                inst.note = Some(e.to_string());
                return inst;
            }
        };
        let (computed, witness) = match mode {
            Mode::Babai => {
                let b = spectrum.babai();
                (Value::Number(b.value), Witness::Single(b.witness))
            }
            Mode::Spectrum => (Value::Set(spectrum.values()), Witness::PerValue(spectrum.entries.clone())),
        };
        if inst.status == Status::Pass {
            let ok = match (&inst.predicted, &computed) {
                (Some(Value::Set(p)), Value::Set(c)) => inst.claim.unwrap_or(SpectrumClaim::Exact).holds(p, c),
                (Some(p), c) => p == c,
                (None, _) => true,
            };
            if !ok {
                inst.status = Status::Fail;
            }
        }
        inst.computed = Some(computed);
        inst.witness = Some(witness);
        inst
    }

    /// Closed form against brute force for every `(n, k)` in the ranges.
    pub fn verify_range(
        &self,
        family: Family,
        n_range: RangeInclusive<usize>,
        k: KSpec,
        mode: Mode,
    ) -> Result<VerificationReport> {
        if n_range.is_empty() {
            return Err(domain!("empty n range {}..{}", n_range.start(), n_range.end()));
        }
        if *n_range.start() < family.min_vertices() {
            return Err(domain!("{family} needs n ≥ {}, range starts at {}", family.min_vertices(), n_range.start()));
        }
        if let KSpec::Range(lo, hi) = k {
            if lo > hi {
                return Err(domain!("empty k range {lo}..{hi}"));
            }
        }
        let mut instances = Vec::new();
        for n in n_range.clone() {
            let space = MetricSpace::new(family, n)?;
            for kk in k.values(&space) {
                instances.push(self.verify_one(&space, kk, mode));
            }
        }
        let mut summary = Summary { total: instances.len(), ..Summary::default() };
        for i in &instances {
            *match i.status {
                Status::Pass => &mut summary.pass,
                Status::Fail => &mut summary.fail,
                Status::DomainError => &mut summary.domain_error,
                Status::NoClosedForm => &mut summary.no_closed_form,
                Status::Truncated => &mut summary.truncated,
            } += 1;
        }
        Ok(VerificationReport {
            schema: SCHEMA,
            family,
            mode,
            n_range: (*n_range.start(), *n_range.end()),
            k_range: k,
            instances,
            summary,
        })
    }

    /// Predicted `{m+1, …, k+1}` against the brute-force `Spec(P_n, k)`, for `⌊n/2⌋ < k ≤ n-1`.
    pub fn conjecture(&self, n: usize, k: usize) -> Result<ConjectureRow> {
        let space = MetricSpace::path(n)?;
        if k <= n / 2 || k >= n {
            return Err(domain!("conjecture range for n = {n} is {}..={}, got k = {k}", n / 2 + 1, n - 1));
        }
        let m = spec_interval_m(n, k)?;
        let predicted: BTreeSet<usize> = (m + 1..=k + 1).collect();
        let (computed, equal) = match self.spectrum(&space, k) {
            Ok(s) => {
                let c = s.values();
                let eq = c == predicted;
                (Some(c), Some(eq))
            }
            Err(BabaiError::BudgetExceeded { .. }) => (None, None),
            Err(e) => return Err(e),
        };
        Ok(ConjectureRow { n, k, m, predicted, computed, equal })
    }

    /// Every row with `n` in range and `k` in `(⌊n/2⌋, n-1]`, intersected with `k_range` if given.
    pub fn conjecture_range(
        &self,
        n_range: RangeInclusive<usize>,
        k_range: Option<RangeInclusive<usize>>,
    ) -> Result<Vec<ConjectureRow>> {
        let mut rows = Vec::new();
        for n in n_range {
            MetricSpace::path(n)?;
            for k in n / 2 + 1..n {
                if k_range.as_ref().is_none_or(|r| r.contains(&k)) {
                    rows.push(self.conjecture(n, k)?);
                }
            }
        }
        Ok(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub predicted: BTreeSet<usize>,
    /// `None` when the enumeration was over budget.
    pub computed: Option<BTreeSet<usize>>,
    pub equal: Option<bool>,
}

pub fn conjecture_report(n: usize, k: usize) -> Result<ConjectureRow> {
    Engine::default().conjecture(n, k)
}

pub fn conjecture_csv(rows: &[ConjectureRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "k", "m", "predicted", "computed", "equal"]).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.m.to_string(),
            fmt_set(&r.predicted),
            r.computed.as_ref().map(fmt_set).unwrap_or_default(),
            r.equal.map_or("truncated".to_string(), |e| e.to_string()),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::EngineOptions;

    #[test]
    fn verify_examples() {
        let engine = Engine::default();
        let r = engine.verify_range(Family::Path, 2..=8, KSpec::All, Mode::Babai).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.summary.total, (2..=8).map(|n| n - 1).sum::<usize>());
        let r = engine.verify_range(Family::Cycle, 3..=3, KSpec::Range(2, 2), Mode::Babai).unwrap();
        assert_eq!(r.instances[0].status, Status::DomainError);
        assert!(r.all_pass());
        let r = engine.verify_range(Family::Cycle, 8..=8, KSpec::Range(3, 3), Mode::Babai).unwrap();
        assert_eq!(r.instances[0].status, Status::NoClosedForm);
        assert_eq!(r.instances[0].computed, Some(Value::Number(4)));
        assert!(engine.verify_range(Family::Cycle, 2..=5, KSpec::All, Mode::Babai).is_err());
    }

    #[test]
    fn csv_and_text_shapes() {
        let r = Engine::default().verify_range(Family::Cycle, 5..=6, KSpec::Range(2, 2), Mode::Spectrum).unwrap();
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("family,n,k,predicted,computed,witness,status"));
        assert_eq!(lines.next(), Some("cycle,5,2,{5},{5},\"5:{1,2}\",pass"));
        assert_eq!(lines.next(), Some("cycle,6,2,\"{2,3}\",\"{2,3}\",\"2:{1,3} 3:{1,2}\",pass"));
        let text = r.to_text();
        assert!(text.starts_with("family  n  k  predicted  computed  witness"));
        assert!(text.ends_with("2 instances: 2 pass, 0 fail, 0 domain-error, 0 no-closed-form, 0 truncated\n"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["instances"][1]["predicted"], serde_json::json!([2, 3]));
        assert_eq!(json["instances"][1]["witness"]["3"], serde_json::json!([1, 2]));
    }

    #[test]
    fn truncation_is_flagged() {
        let engine = Engine::new(EngineOptions { budget: 100, ..EngineOptions::default() }).unwrap();
        let r = engine.verify_range(Family::Path, 10..=10, KSpec::Range(1, 2), Mode::Babai).unwrap();
        assert_eq!(r.instances[0].status, Status::Pass);
        assert_eq!(r.instances[1].status, Status::Truncated);
        assert!(r.truncated() && !r.all_pass());
    }

    #[test]
    fn conjecture_examples() {
        let row = conjecture_report(6, 5).unwrap();
        assert_eq!((row.m, row.predicted.clone(), row.equal), (5, BTreeSet::from([6]), Some(true)));
        let row = conjecture_report(8, 5).unwrap();
        assert_eq!((row.m, row.predicted), (2, (3..=6).collect()));
        let row = conjecture_report(7, 4).unwrap();
        assert_eq!((row.m, row.predicted), (2, (3..=5).collect()));
        assert!(conjecture_report(8, 4).is_err());
        let rows = Engine::default().conjecture_range(6..=6, None).unwrap();
        assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), vec![4, 5]);
        let csv = conjecture_csv(&rows);
        assert!(csv.starts_with("n,k,m,predicted,computed,equal\n"));
    }
}
