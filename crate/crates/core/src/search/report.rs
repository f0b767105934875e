use serde::Serialize;

use crate::equiangular::{BoundReport, Certificate, Configuration, ConfigurationRepr};
use crate::padic::{PadicAbs, Prime, Rational};
use crate::search::SearchSpace;

pub const FRONTIER_HEADER: &str = "p\td\tgamma\tn_max\tbound_rhs\tholds";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundConfiguration {
    pub gamma: PadicAbs,
    /// Indices into the line representatives of the space.
    pub vertices: Vec<usize>,
    pub configuration: Configuration,
    pub certificate: Certificate,
}

/// Largest certified family for one angle, with the relative bound at that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierEntry {
    pub p: Prime,
    pub d: usize,
    pub gamma: PadicAbs,
    pub n_max: usize,
    pub bound: BoundReport,
}

impl FrontierEntry {
    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.p,
            self.d,
            self.gamma.render(self.p),
            self.n_max,
            self.bound.render_rhs(),
            self.bound.holds
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub p: Prime,
    pub d: usize,
    pub numerator_bound: u64,
    pub denominators: Vec<u64>,
    pub a: Rational,
    pub target_gamma: Option<PadicAbs>,
    pub candidates: u128,
    pub unit_vectors: usize,
    pub lines: usize,
    pub found: Vec<FoundConfiguration>,
    pub frontier: Vec<FrontierEntry>,
    pub counterexamples: Vec<FoundConfiguration>,
    pub truncated: bool,
    pub notes: Vec<String>,
}

impl SearchResult {
    pub(crate) fn empty(space: &SearchSpace, candidates: u128, unit_vectors: usize, lines: usize) -> Self {
        SearchResult {
            p: space.p,
            d: space.d,
            numerator_bound: space.numerator_bound,
            denominators: space.denominators.clone(),
            a: space.target_a.clone(),
            target_gamma: space.target_gamma,
            candidates,
            unit_vectors,
            lines,
            found: Vec::new(),
            frontier: Vec::new(),
            counterexamples: Vec::new(),
            truncated: false,
            notes: Vec::new(),
        }
    }

    pub fn to_repr(&self) -> SearchResultRepr<'_> {
        let p = self.p;
        let found = move |f| found_repr(f, p);
        SearchResultRepr {
            p: self.p.to_string(),
            d: self.d,
            numerator_bound: self.numerator_bound,
            denominators: self.denominators.clone(),
            a: self.a.to_string(),
            gamma: self.target_gamma.map(|g| g.render(self.p)),
            candidates: self.candidates.to_string(),
            unit_vectors: self.unit_vectors,
            lines: self.lines,
            truncated: self.truncated,
            frontier: self
                .frontier
                .iter()
                .map(|e| FrontierRepr {
                    gamma: e.gamma.render(self.p),
                    n_max: e.n_max,
                    bound: &e.bound,
                })
                .collect(),
            counterexamples: self.counterexamples.iter().map(found).collect(),
            found: self.found.iter().map(found).collect(),
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("search result serializes")
    }
}

#[derive(Serialize)]
pub struct SearchResultRepr<'a> {
    p: String,
    d: usize,
    numerator_bound: u64,
    denominators: Vec<u64>,
    a: String,
    gamma: Option<String>,
    candidates: String,
    unit_vectors: usize,
    lines: usize,
    truncated: bool,
    frontier: Vec<FrontierRepr<'a>>,
    counterexamples: Vec<FoundRepr<'a>>,
    found: Vec<FoundRepr<'a>>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct FrontierRepr<'a> {
    gamma: String,
    n_max: usize,
    bound: &'a BoundReport,
}

fn found_repr(f: &FoundConfiguration, p: Prime) -> FoundRepr<'_> {
    FoundRepr {
        gamma: f.gamma.render(p),
        n: f.configuration.n(),
        configuration: f.configuration.to_repr(),
        certificate: &f.certificate,
    }
}

#[derive(Serialize)]
struct FoundRepr<'a> {
    gamma: String,
    n: usize,
    configuration: ConfigurationRepr,
    certificate: &'a Certificate,
}

/// Tab-separated frontier of several searches, header first, one row per
/// (space, angle) in search order.
pub fn frontier_table(results: &[SearchResult]) -> String {
    let mut out = String::from(FRONTIER_HEADER);
    out.push('\n');
    for r in results {
        for e in &r.frontier {
            out.push_str(&e.tsv_row());
            out.push('\n');
        }
    }
    out
}
