use serde::{Deserialize, Serialize};

use crate::equiangular::bounds::{BoundName, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::{PadicRoot, Polynomial};
use crate::padic::{PadicAbs, Prime, Rational};

/// How much of "similar to a diagonal operator over `Q_p`" was proved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    RationalSpectrumProved,
    HenselWitnessed,
    NewtonValuationsOnly,
    TraceInequalityOnly,
    Failed,
}

impl Evidence {
    /// Eigenvalues were exhibited in `Q_p` and diagonalizability confirmed.
    pub fn certifies(self) -> bool {
        matches!(self, Evidence::RationalSpectrumProved | Evidence::HenselWitnessed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// All three conditions proved.
    Certified,
    /// Conditions (i), (ii) and the trace inequality hold, but the
    /// eigenvalues were not exhibited in `Q_p`.
    Conditional,
    NotEquiangular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenKind {
    /// A rational eigenvalue, exact.
    Exact,
    /// An eigenvalue in `Q_p \ Q`, shown as a truncated expansion.
    Padic,
    /// Only the valuation is known.
    Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenEntry {
    pub kind: EigenKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<Rational>,
    pub multiplicity: usize,
}

impl EigenEntry {
    pub fn exact(value: Rational, multiplicity: usize) -> Self {
        EigenEntry { kind: EigenKind::Exact, value: Some(value.to_string()), valuation: None, multiplicity }
    }

    pub fn padic(root: &PadicRoot, p: Prime, multiplicity: usize) -> Self {
        EigenEntry {
            kind: EigenKind::Padic,
            value: Some(root.expansion(p).to_string()),
            valuation: Some(Rational::from_integer(root.valuation)),
            multiplicity,
        }
    }

    pub fn valuation(valuation: Rational, multiplicity: usize) -> Self {
        EigenEntry { kind: EigenKind::Valuation, value: None, valuation: Some(valuation), multiplicity }
    }

    /// The eigenvalue for `Exact` entries.
    pub fn value_rational(&self) -> Option<Rational> {
        match self.kind {
            EigenKind::Exact => self.value.as_deref().and_then(|s| s.parse().ok()),
            _ => None,
        }
    }
}

/// Machine-readable verdict on a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: Prime,
    pub d: usize,
    pub n: usize,
    pub a: Rational,
    pub verdict: Verdict,
    pub condition_i: bool,
    pub condition_ii: bool,
    /// Common off-diagonal absolute value, when all pairings share one.
    pub gamma: Option<PadicAbs>,
    pub max_off_diagonal: PadicAbs,
    pub condition_iii_evidence: Evidence,
    pub condition_iii_inequality: bool,
    pub eigenvalues_outside_qp: bool,
    pub trace_s: Rational,
    pub trace_s2: Rational,
    pub char_poly: Option<Polynomial>,
    pub eigen_info: Vec<EigenEntry>,
    pub tight_frame_b: Option<Rational>,
    pub bounds: Vec<BoundReport>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn bound(&self, name: BoundName) -> Option<&BoundReport> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// p-adic bounds that must hold for a certified configuration.
    pub fn violated_bounds(&self) -> Vec<&BoundReport> {
        self.bounds
            .iter()
            .filter(|b| b.name != BoundName::ClassicalGerzon && !b.holds)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::field("certificate", e))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateRepr {
    p: String,
    d: usize,
    n: usize,
    a: Rational,
    verdict: Verdict,
    certified: bool,
    condition_i: bool,
    condition_ii: bool,
    gamma: Option<String>,
    max_off_diagonal: String,
    condition_iii_evidence: Evidence,
    condition_iii_inequality: bool,
    eigenvalues_outside_qp: bool,
    #[serde(rename = "trace_S")]
    trace_s: Rational,
    #[serde(rename = "trace_S2")]
    trace_s2: Rational,
    char_poly: Option<Polynomial>,
    eigen_info: Vec<EigenEntry>,
    tight_frame_b: Option<Rational>,
    bounds: Vec<BoundReport>,
    notes: Vec<String>,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateRepr {
            p: self.p.to_string(),
            d: self.d,
            n: self.n,
            a: self.a.clone(),
            verdict: self.verdict,
            certified: self.is_certified(),
            condition_i: self.condition_i,
            condition_ii: self.condition_ii,
            gamma: self.gamma.map(|g| g.render(self.p)),
            max_off_diagonal: self.max_off_diagonal.render(self.p),
            condition_iii_evidence: self.condition_iii_evidence,
            condition_iii_inequality: self.condition_iii_inequality,
            eigenvalues_outside_qp: self.eigenvalues_outside_qp,
            trace_s: self.trace_s.clone(),
            trace_s2: self.trace_s2.clone(),
            char_poly: self.char_poly.clone(),
            eigen_info: self.eigen_info.clone(),
            tight_frame_b: self.tight_frame_b.clone(),
            bounds: self.bounds.clone(),
            notes: self.notes.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CertificateRepr::deserialize(d)?;
        let p: Prime = r.p.parse().map_err(D::Error::custom)?;
        let gamma = r.gamma.as_deref().map(|g| PadicAbs::parse(g, p)).transpose().map_err(D::Error::custom)?;
        let max_off_diagonal = PadicAbs::parse(&r.max_off_diagonal, p).map_err(D::Error::custom)?;
        let cert = Certificate {
            p,
            d: r.d,
            n: r.n,
            a: r.a,
            verdict: r.verdict,
            condition_i: r.condition_i,
            condition_ii: r.condition_ii,
            gamma,
            max_off_diagonal,
            condition_iii_evidence: r.condition_iii_evidence,
            condition_iii_inequality: r.condition_iii_inequality,
            eigenvalues_outside_qp: r.eigenvalues_outside_qp,
            trace_s: r.trace_s,
            trace_s2: r.trace_s2,
            char_poly: r.char_poly,
            eigen_info: r.eigen_info,
            tight_frame_b: r.tight_frame_b,
            bounds: r.bounds,
            notes: r.notes,
        };
        if cert.is_certified() != r.certified {
            return Err(D::Error::custom("certified flag disagrees with verdict"));
        }
        Ok(cert)
    }
}
