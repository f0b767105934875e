use std::path::Path;

use anyhow::{bail, Context, Result};
use padic_equiangular::equiangular::ConfigurationRepr;
use padic_equiangular::search::SearchSpec;
use serde::Deserialize;

/// Parameters of the `bound` command as they appear in a job file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundParams {
    pub p: Option<u64>,
    pub n: u64,
    pub d: u64,
    pub gamma: Option<String>,
    pub a: Option<String>,
    #[serde(default)]
    pub classical: bool,
    pub gamma2: Option<String>,
}

/// A job file: `mode` selects the command, and the table named after the
/// mode carries its input.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub mode: Mode,
    pub configuration: Option<ConfigurationRepr>,
    pub bound: Option<BoundParams>,
    pub search: Option<SearchSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Certify,
    Bound,
    Search,
}

pub enum Job {
    Certify(ConfigurationRepr),
    Bound(BoundParams),
    Search(SearchSpec),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn is_toml(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"))
}

/// Parses a TOML (by extension) or JSON document.
pub fn parse_document<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read(path)?;
    if is_toml(path) {
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    } else {
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

impl JobFile {
    pub fn load(path: &Path) -> Result<Job> {
        let file: JobFile = parse_document(path)?;
        let present = [
            ("configuration", file.configuration.is_some()),
            ("bound", file.bound.is_some()),
            ("search", file.search.is_some()),
        ];
        let wanted = match file.mode {
            Mode::Certify => "configuration",
            Mode::Bound => "bound",
            Mode::Search => "search",
        };
        for (name, is_set) in present {
            if is_set && name != wanted {
                bail!("{}: section `{name}` does not belong to mode {:?}", path.display(), file.mode);
            }
        }
        let missing = || anyhow::anyhow!("{}: mode {:?} needs a `{wanted}` section", path.display(), file.mode);
        Ok(match file.mode {
            Mode::Certify => Job::Certify(file.configuration.ok_or_else(missing)?),
            Mode::Bound => Job::Bound(file.bound.ok_or_else(missing)?),
            Mode::Search => Job::Search(file.search.ok_or_else(missing)?),
        })
    }
}
