//! Relative, Welch and classical bounds on the number of equiangular lines.
//!
//! p-adic bounds are evaluated entirely in the exponent arithmetic of
//! [`PadicAbs`]; classical bounds in exact rationals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equiangular::config::Configuration;
use crate::error::{Error, Result};
use crate::linalg::inner_product;
use crate::padic::{abs_count, abs_max, abs_p, PadicAbs, Prime, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundName {
    PadicRelative,
    PadicWelch,
    GaRelative,
    GaWelch,
    ClassicalRelative,
    ClassicalGerzon,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundName::PadicRelative => "padic-relative",
            BoundName::PadicWelch => "padic-welch",
            BoundName::GaRelative => "ga-relative",
            BoundName::GaWelch => "ga-welch",
            BoundName::ClassicalRelative => "classical-relative",
            BoundName::ClassicalGerzon => "classical-gerzon",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Abs(PadicAbs),
    Rational(Rational),
}

impl BoundValue {
    fn render(&self, p: Option<Prime>) -> String {
        match (self, p) {
            (BoundValue::Abs(a), Some(p)) => a.render(p),
            (BoundValue::Abs(a), None) => format!("{a:?}"),
            (BoundValue::Rational(r), _) => r.to_string(),
        }
    }

    pub fn as_abs(&self) -> Option<PadicAbs> {
        match self {
            BoundValue::Abs(a) => Some(*a),
            BoundValue::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            BoundValue::Rational(r) => Some(r),
            BoundValue::Abs(_) => None,
        }
    }
}

/// One evaluated inequality `lhs <= rhs`. `p` is set for p-adic bounds and
/// fixes the text encoding of absolute values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: BoundName,
    pub p: Option<Prime>,
    pub lhs: BoundValue,
    pub rhs: BoundValue,
    pub holds: bool,
    /// Which specialization applies, e.g. `"|n| >= gamma^2: |n| <= |d|"`.
    pub case: Option<String>,
    pub case_holds: Option<bool>,
}

impl BoundReport {
    /// `lhs == rhs`.
    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn render_lhs(&self) -> String {
        self.lhs.render(self.p)
    }

    pub fn render_rhs(&self) -> String {
        self.rhs.render(self.p)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundReportRepr {
    name: BoundName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<String>,
    lhs: String,
    rhs: String,
    holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case_holds: Option<bool>,
}

impl Serialize for BoundReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundReportRepr {
            name: self.name,
            p: self.p.map(|p| p.to_string()),
            lhs: self.render_lhs(),
            rhs: self.render_rhs(),
            holds: self.holds,
            case: self.case.clone(),
            case_holds: self.case_holds,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = BoundReportRepr::deserialize(d)?;
        let p: Option<Prime> = r.p.as_deref().map(str::parse).transpose().map_err(D::Error::custom)?;
        let value = |text: &str| -> Result<BoundValue> {
            match p {
                Some(p) => PadicAbs::parse(text, p).map(BoundValue::Abs),
                None => text.parse().map(BoundValue::Rational),
            }
        };
        Ok(BoundReport {
            name: r.name,
            p,
            lhs: value(&r.lhs).map_err(D::Error::custom)?,
            rhs: value(&r.rhs).map_err(D::Error::custom)?,
            holds: r.holds,
            case: r.case,
            case_holds: r.case_holds,
        })
    }
}

fn abs_report(
    name: BoundName,
    p: Prime,
    lhs: PadicAbs,
    rhs: PadicAbs,
    case: String,
    case_holds: bool,
) -> BoundReport {
    BoundReport {
        name,
        p: Some(p),
        lhs: BoundValue::Abs(lhs),
        rhs: BoundValue::Abs(rhs),
        holds: lhs <= rhs,
        case: Some(case),
        case_holds: Some(case_holds),
    }
}

/// `|n|^2 <= |d| max(|n|, angle)` together with its two specializations,
/// where `angle` is `gamma^2` or `gamma^2 / |a|^2`.
fn relative_shape(name: BoundName, n: u64, d: u64, angle: PadicAbs, p: Prime, scaled: bool) -> BoundReport {
    let an = abs_count(n, p);
    let ad = abs_count(d, p);
    let lhs = an.square();
    let rhs = ad * an.max(angle);
    let (lhs_case, rhs_case) = if scaled {
        ("|a^2 n| <= gamma^2", "|a^2 n| >= gamma^2")
    } else {
        ("|n| <= gamma^2", "|n| >= gamma^2")
    };
    let (case, case_holds) = if an <= angle {
        let angle_text = if scaled { "gamma^2/|a^2|" } else { "gamma^2" };
        (format!("{lhs_case}: |n|^2 <= |d| {angle_text}"), lhs <= ad * angle)
    } else {
        (format!("{rhs_case}: |n| <= |d|"), an <= ad)
    };
    abs_report(name, p, lhs, rhs, case, case_holds)
}

/// Relative bound for `gamma`-equiangular lines with `<tau_j, tau_j> = 1`.
pub fn bound_padic_relative(n: u64, d: u64, gamma: PadicAbs, p: Prime) -> BoundReport {
    relative_shape(BoundName::PadicRelative, n, d, gamma.square(), p, false)
}

/// Relative bound for `(gamma, a)`-equiangular lines.
pub fn bound_ga_relative(n: u64, d: u64, gamma: PadicAbs, a: &Rational, p: Prime) -> Result<BoundReport> {
    let abs_a2 = abs_p(&a.square(), p);
    let angle = gamma.square().checked_div(abs_a2).ok_or(Error::ZeroA)?;
    Ok(relative_shape(BoundName::GaRelative, n, d, angle, p, true))
}

/// `max_{j != k} |<tau_j, tau_k>|`.
pub fn max_off_diagonal(cfg: &Configuration) -> Result<PadicAbs> {
    let n = cfg.n();
    if n < 2 {
        return Err(Error::NeedTwoLines);
    }
    let mut abs = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            abs.push(abs_p(&inner_product(&cfg.vectors[j], &cfg.vectors[k])?, cfg.p));
        }
    }
    abs_max(abs)
}

fn welch_shape(name: BoundName, cfg: &Configuration, scaled: bool) -> Result<BoundReport> {
    let p = cfg.p;
    let max_angle = max_off_diagonal(cfg)?.square();
    let angle = if scaled {
        max_angle.checked_div(abs_p(&cfg.a.square(), p)).ok_or(Error::ZeroA)?
    } else {
        max_angle
    };
    let mut report = relative_shape(name, cfg.n() as u64, cfg.d as u64, angle, p, scaled);
    report.case = None;
    report.case_holds = None;
    Ok(report)
}

/// General Welch bound: `|n|^2 <= |d| max(|n|, max_{j != k} |<tau_j, tau_k>|^2)`.
pub fn bound_padic_welch(cfg: &Configuration) -> Result<BoundReport> {
    welch_shape(BoundName::PadicWelch, cfg, false)
}

/// Welch bound with diagonal `a`: the angle term is divided by `|a|^2`.
pub fn bound_ga_welch(cfg: &Configuration) -> Result<BoundReport> {
    welch_shape(BoundName::GaWelch, cfg, true)
}

/// `d (1 - gamma^2) / (1 - d gamma^2)` when `d gamma^2 < 1`.
pub fn classical_relative_cap(d: u64, gamma_sq: &Rational) -> Option<Rational> {
    let d = Rational::from_integer(d);
    let one = Rational::one();
    let denom = &one - &(&d * gamma_sq);
    if denom.is_negative() || denom.is_zero() {
        return None;
    }
    (&d * &(&one - gamma_sq)).checked_div(&denom)
}

/// Real relative bound `n (1 - d gamma^2) <= d (1 - gamma^2)`, taking
/// `gamma^2` so that irrational angles such as `1/sqrt(3)` stay exact.
pub fn bound_classical_relative(n: u64, d: u64, gamma_sq: &Rational) -> Result<BoundReport> {
    if gamma_sq.is_negative() || *gamma_sq > Rational::one() {
        return Err(Error::ClassicalGammaRange(gamma_sq.clone()));
    }
    let nr = Rational::from_integer(n);
    let dr = Rational::from_integer(d);
    let one = Rational::one();
    let lhs = &nr * &(&one - &(&dr * gamma_sq));
    let rhs = &dr * &(&one - gamma_sq);
    let (case, case_holds) = match classical_relative_cap(d, gamma_sq) {
        Some(cap) => (Some(format!("d*gamma^2 < 1: n <= {cap}")), Some(nr <= cap)),
        None => (None, None),
    };
    Ok(BoundReport {
        name: BoundName::ClassicalRelative,
        p: None,
        holds: lhs <= rhs,
        lhs: BoundValue::Rational(lhs),
        rhs: BoundValue::Rational(rhs),
        case,
        case_holds,
    })
}

pub fn gerzon_cap(d: u64) -> u64 {
    d * (d + 1) / 2
}

/// Real universal bound `n <= d (d + 1) / 2`; informational only.
pub fn bound_classical_gerzon(n: u64, d: u64) -> BoundReport {
    let cap = gerzon_cap(d);
    BoundReport {
        name: BoundName::ClassicalGerzon,
        p: None,
        lhs: BoundValue::Rational(Rational::from_integer(n)),
        rhs: BoundValue::Rational(Rational::from_integer(cap)),
        holds: n <= cap,
        case: None,
        case_holds: None,
    }
}
