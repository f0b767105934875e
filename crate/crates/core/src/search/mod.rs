//! Exhaustive search for equiangular families over bounded rational lattices.
//!
//! Pipeline: enumerate unit vectors, keep one vector per line, build the
//! compatibility graph for each attained angle, grow maximal cliques, certify.
//! A clique that fails to certify is replaced by its subsets one vertex
//! smaller until certified families are found.

mod enumerate;
mod graph;
mod random;
mod report;

pub use enumerate::{candidate_count, chunks, enumerate_chunk, enumerate_unit_vectors, Chunk};
pub use graph::{
    build_compatibility_graph, grow_cliques, pairwise_angles, sign_class_representatives, BitSet, Cliques,
    CompatibilityGraph,
};
pub use random::Sampler;
pub use report::{frontier_table, FoundConfiguration, FrontierEntry, SearchResult, FRONTIER_HEADER};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equiangular::{bound_ga_relative, bound_padic_relative, certify_with, CertifyOptions, Configuration};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::padic::{PadicAbs, Prime, Rational};

pub const DEFAULT_MAX_N: usize = 16;
pub const DEFAULT_MAX_CLIQUES: usize = 100_000;
pub const DEFAULT_MAX_CONFIGS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub p: Prime,
    pub d: usize,
    pub numerator_bound: u64,
    pub denominators: Vec<u64>,
    pub target_a: Rational,
    /// `None` searches every angle attained by a pair of candidates.
    pub target_gamma: Option<PadicAbs>,
    pub max_n: usize,
    pub max_cliques: usize,
    /// Budget on the number of sets passed to certification.
    pub max_configs: usize,
    /// Only used by randomized sampling.
    pub seed: u64,
}

impl SearchSpace {
    /// Denominators `{1, p, p^2}`, `a = 1`, every angle.
    pub fn new(p: Prime, d: usize, numerator_bound: u64) -> Self {
        let q = p.get();
        SearchSpace {
            p,
            d,
            numerator_bound,
            denominators: vec![1, q, q.saturating_mul(q)],
            target_a: Rational::one(),
            target_gamma: None,
            max_n: DEFAULT_MAX_N,
            max_cliques: DEFAULT_MAX_CLIQUES,
            max_configs: DEFAULT_MAX_CONFIGS,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.numerator_bound == 0 {
            return Err(Error::field("numerator_bound", "must be positive"));
        }
        if self.numerator_bound > 1 << 20 {
            return Err(Error::field("numerator_bound", "larger than 2^20"));
        }
        if self.d > 64 {
            return Err(Error::field("d", "larger than 64"));
        }
        if let Some(&q) = self.denominators.iter().find(|&&q| q == 0) {
            return Err(Error::field("denominators", format!("{q} is not positive")));
        }
        if self.target_a.is_zero() {
            return Err(Error::field("a", "must be nonzero"));
        }
        if self.max_n < 2 {
            return Err(Error::field("max_n", "must be at least 2"));
        }
        Ok(())
    }
}

/// Job-file form of one or more search spaces. `p` and `d` may be lists, in
/// which case every combination is searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub p: OneOrMany<u64>,
    pub d: OneOrMany<usize>,
    pub numerator_bound: u64,
    /// Default `{1, p, p^2}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominators: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cliques: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_configs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

impl SearchSpec {
    /// Spaces ordered by prime, then dimension.
    pub fn spaces(&self) -> Result<Vec<SearchSpace>> {
        let primes = self.p.to_vec();
        let dims = self.d.to_vec();
        if primes.is_empty() {
            return Err(Error::field("p", "empty list"));
        }
        if dims.is_empty() {
            return Err(Error::field("d", "empty list"));
        }
        let a = match &self.a {
            None => Rational::one(),
            Some(s) => s.parse().map_err(|e| Error::field("a", e))?,
        };
        let mut out = Vec::new();
        for &p in &primes {
            let p = Prime::new(p).map_err(|e| Error::field("p", e))?;
            let gamma = self
                .gamma
                .as_deref()
                .map(|g| PadicAbs::parse(g, p))
                .transpose()
                .map_err(|e| Error::field("gamma", e))?;
            for &d in &dims {
                let mut s = SearchSpace::new(p, d, self.numerator_bound);
                if let Some(dens) = &self.denominators {
                    s.denominators = dens.clone();
                }
                s.target_a = a.clone();
                s.target_gamma = gamma;
                s.max_n = self.max_n.unwrap_or(DEFAULT_MAX_N);
                s.max_cliques = self.max_cliques.unwrap_or(DEFAULT_MAX_CLIQUES);
                s.max_configs = self.max_configs.unwrap_or(DEFAULT_MAX_CONFIGS);
                s.seed = self.seed.unwrap_or(0);
                s.validate()?;
                out.push(s);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub certify: CertifyOptions,
    /// Test hook: marks the relative bound of the first certified family as
    /// violated, to exercise the counterexample path.
    pub inject_counterexample: bool,
}

pub fn run_search(space: &SearchSpace) -> Result<SearchResult> {
    run_search_with(space, &SearchOptions::default())
}

pub fn run_search_with(space: &SearchSpace, opts: &SearchOptions) -> Result<SearchResult> {
    match opts.workers {
        None => search_inner(space, opts),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(|| search_inner(space, opts)),
    }
}

/// Searches each space in order; the fault hook fires at most once overall.
pub fn run_sweep(spaces: &[SearchSpace], opts: &SearchOptions) -> Result<Vec<SearchResult>> {
    let mut opts = opts.clone();
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        let r = run_search_with(s, &opts)?;
        if !r.counterexamples.is_empty() {
            opts.inject_counterexample = false;
        }
        out.push(r);
    }
    Ok(out)
}

fn search_inner(space: &SearchSpace, opts: &SearchOptions) -> Result<SearchResult> {
    space.validate()?;
    let p = space.p;
    let unit = enumerate_unit_vectors(space)?;
    let lines = sign_class_representatives(&unit);
    let mut result = SearchResult::empty(space, candidate_count(space), unit.len(), lines.len());
    if lines.is_empty() {
        result.notes.push("no candidates".to_string());
        return Ok(result);
    }
    let angles = pairwise_angles(&lines, p)?;
    let gammas: Vec<PadicAbs> = match space.target_gamma {
        Some(g) => vec![g],
        None => {
            let set: BTreeSet<PadicAbs> =
                (0..lines.len()).flat_map(|i| (i + 1..lines.len()).map(move |j| (i, j))).map(|(i, j)| angles[i][j]).collect();
            set.into_iter().collect()
        }
    };

    let mut budget = space.max_configs;
    let mut inject = opts.inject_counterexample;
    for gamma in gammas {
        let graph = CompatibilityGraph::from_angles(lines.clone(), &angles, gamma);
        let cliques = grow_cliques(&graph, space.max_n, space.max_cliques);
        result.truncated |= cliques.truncated;
        let mut seen: BTreeSet<Vec<usize>> = cliques.sets.iter().cloned().collect();
        let mut level: Vec<Vec<usize>> = cliques.sets;
        let mut best = 0usize;
        while !level.is_empty() {
            if level.len() > budget {
                level.truncate(budget);
                result.truncated = true;
            }
            budget -= level.len();
            let certs: Vec<_> = level
                .par_iter()
                .map(|set| {
                    let cfg = configuration_for(space, &graph.vertices, set, gamma)?;
                    let cert = certify_with(&cfg, &opts.certify)?;
                    Ok((cfg, cert))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut next = BTreeSet::new();
            for (set, (cfg, mut cert)) in level.iter().zip(certs) {
                if cert.is_certified() {
                    if inject {
                        if let Some(b) = cert.bounds.first_mut() {
                            b.holds = false;
                            cert.notes.push(format!("test hook: {} comparison corrupted", b.name));
                        }
                        inject = false;
                    }
                    best = best.max(set.len());
                    let found = FoundConfiguration { gamma, vertices: set.clone(), configuration: cfg, certificate: cert };
                    if !found.certificate.violated_bounds().is_empty() {
                        result.counterexamples.push(found.clone());
                    }
                    result.found.push(found);
                } else if set.len() > 2 {
                    for skip in 0..set.len() {
                        let sub: Vec<usize> =
                            set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        if seen.insert(sub.clone()) {
                            next.insert(sub);
                        }
                    }
                }
            }
            level = next.into_iter().collect();
            if budget == 0 && !level.is_empty() {
                result.truncated = true;
                break;
            }
        }
        if best >= 2 {
            result.frontier.push(frontier_entry(space, gamma, best)?);
        }
    }
    Ok(result)
}

fn configuration_for(space: &SearchSpace, vertices: &[Vector], set: &[usize], gamma: PadicAbs) -> Result<Configuration> {
    let vectors = set.iter().map(|&i| vertices[i].clone()).collect();
    Ok(Configuration::new(space.p, vectors)?.with_a(space.target_a.clone())?.with_gamma(gamma))
}

fn frontier_entry(space: &SearchSpace, gamma: PadicAbs, n_max: usize) -> Result<FrontierEntry> {
    let (n, d) = (n_max as u64, space.d as u64);
    let bound = if space.target_a.is_one() {
        bound_padic_relative(n, d, gamma, space.p)
    } else {
        bound_ga_relative(n, d, gamma, &space.target_a, space.p)?
    };
    Ok(FrontierEntry { p: space.p, d: space.d, gamma, n_max, bound })
}
