//! Certification of p-adic `(gamma, a)`-equiangular lines and evaluation of
//! the bounds they satisfy.
//!
//! Condition (iii) asks for the frame operator to be similar to a diagonal
//! operator over `Q_p`. The check climbs an evidence ladder:
//!
//! 1. `S = b I` (tight frame): the spectrum is `{b}`.
//! 2. Every eigenvalue rational and the radical of the characteristic
//!    polynomial annihilates `S`.
//! 3. Remaining eigenvalues witnessed in `Q_p` by Hensel lifting.
//! 4. Otherwise only Newton-polygon valuations are known.
//!
//! The trace inequality `|Tr S|^2 <= |d| |Tr S^2|` is evaluated exactly and
//! reported separately from the evidence level. Only levels 1-3 certify.

mod bounds;
mod certificate;
mod config;

pub use bounds::{
    bound_classical_gerzon, bound_classical_relative, bound_ga_relative, bound_ga_welch,
    bound_padic_relative, bound_padic_welch, classical_relative_cap, gerzon_cap, max_off_diagonal,
    BoundName, BoundReport, BoundValue,
};
pub use certificate::{Certificate, EigenEntry, EigenKind, Evidence, Verdict};
pub use config::{Configuration, ConfigurationRepr, PrimeText};

use crate::error::{Error, Result};
use crate::linalg::{
    char_poly_capped, frame_operator, hensel_roots, inner_product, newton_polygon, rational_roots,
    trace, trace_of_square, HenselOutcome, Matrix, Polynomial, DEFAULT_CHAR_POLY_CAP,
    DEFAULT_HENSEL_PRECISION,
};
use crate::padic::{abs_count, abs_p, PadicAbs, Prime, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub char_poly_cap: usize,
    pub hensel_precision: usize,
    /// Past the cap, fall back to trace-inequality-only evidence instead of
    /// failing.
    pub trace_fallback: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            char_poly_cap: DEFAULT_CHAR_POLY_CAP,
            hensel_precision: DEFAULT_HENSEL_PRECISION,
            trace_fallback: false,
        }
    }
}

/// Every `<tau_j, tau_j>` equals the declared `a`.
pub fn check_condition_i(cfg: &Configuration) -> bool {
    cfg.vectors
        .iter()
        .all(|v| inner_product(v, v).is_ok_and(|ip| ip == cfg.a))
}

/// Common absolute value of all off-diagonal pairings, if there is one.
/// When a gamma is declared it must also match.
pub fn check_condition_ii(cfg: &Configuration) -> Result<(bool, Option<PadicAbs>)> {
    let common = common_angle(cfg)?;
    let ok = match (common, cfg.declared_gamma) {
        (None, _) => false,
        (Some(g), Some(declared)) => g == declared,
        (Some(_), None) => true,
    };
    Ok((ok, common))
}

fn common_angle(cfg: &Configuration) -> Result<Option<PadicAbs>> {
    let n = cfg.n();
    if n < 2 {
        return Err(Error::NeedTwoLines);
    }
    let mut common = None;
    for j in 0..n {
        for k in j + 1..n {
            let g = abs_p(&inner_product(&cfg.vectors[j], &cfg.vectors[k])?, cfg.p);
            match common {
                None => common = Some(g),
                Some(c) if c != g => return Ok(None),
                Some(_) => {}
            }
        }
    }
    Ok(common)
}

/// Outcome of the condition (iii) analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIii {
    pub evidence: Evidence,
    pub eigen_info: Vec<EigenEntry>,
    /// `|Tr S|^2 <= |d| |Tr S^2|`.
    pub inequality_holds: bool,
    /// Some eigenvalue provably lies outside `Q_p`.
    pub outside_qp: bool,
    pub trace_s: Rational,
    pub trace_s2: Rational,
    pub char_poly: Option<Polynomial>,
    pub tight_frame_b: Option<Rational>,
    pub detail: Option<String>,
}

impl ConditionIii {
    pub fn holds(&self) -> bool {
        self.inequality_holds && self.evidence.certifies()
    }
}

pub fn check_condition_iii(cfg: &Configuration) -> Result<ConditionIii> {
    check_condition_iii_with(cfg, &CertifyOptions::default())
}

pub fn check_condition_iii_with(cfg: &Configuration, opts: &CertifyOptions) -> Result<ConditionIii> {
    cfg.validate()?;
    let p = cfg.p;
    let s = frame_operator(&cfg.vectors)?;
    let trace_s = trace(&s)?;
    let trace_s2 = trace_of_square(&s)?;
    let inequality_holds =
        abs_p(&trace_s, p).square() <= abs_count(cfg.d as u64, p) * abs_p(&trace_s2, p);
    let mut out = ConditionIii {
        evidence: Evidence::Failed,
        eigen_info: Vec::new(),
        inequality_holds,
        outside_qp: false,
        trace_s,
        trace_s2,
        char_poly: None,
        tight_frame_b: None,
        detail: None,
    };

    if let Some(b) = s.as_scalar().filter(|b| !b.is_zero()) {
        out.evidence = Evidence::RationalSpectrumProved;
        out.eigen_info = vec![EigenEntry::exact(b.clone(), cfg.d)];
        out.tight_frame_b = Some(b);
        return Ok(out);
    }

    if cfg.d > opts.char_poly_cap {
        if opts.trace_fallback {
            out.evidence = Evidence::TraceInequalityOnly;
            out.detail = Some(format!(
                "dimension {} exceeds the characteristic polynomial cap {}",
                cfg.d, opts.char_poly_cap
            ));
            return Ok(out);
        }
        return Err(Error::DimensionCap { dim: cfg.d, cap: opts.char_poly_cap });
    }
    let spectrum = spectrum_evidence(&s, p, opts)?;
    out.evidence = spectrum.evidence;
    out.eigen_info = spectrum.eigen_info;
    out.outside_qp = spectrum.outside_qp;
    out.detail = spectrum.detail;
    out.char_poly = Some(spectrum.char_poly);
    Ok(out)
}

/// What the eigenvalue ladder established about a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEvidence {
    pub evidence: Evidence,
    pub eigen_info: Vec<EigenEntry>,
    pub outside_qp: bool,
    pub char_poly: Polynomial,
    pub detail: Option<String>,
}

/// Runs the ladder rational roots -> Hensel lifting -> Newton valuations on
/// the characteristic polynomial of `s`, after checking that its radical
/// annihilates `s`.
pub fn spectrum_evidence(s: &Matrix, p: Prime, opts: &CertifyOptions) -> Result<SpectrumEvidence> {
    let f = char_poly_capped(s, opts.char_poly_cap)?;
    let mut out = SpectrumEvidence {
        evidence: Evidence::Failed,
        eigen_info: Vec::new(),
        outside_qp: false,
        char_poly: f.clone(),
        detail: None,
    };
    let parts = f.squarefree_decomposition();
    let radical = parts.iter().fold(Polynomial::one(), |acc, g| acc.mul(g));
    if !radical.eval_matrix(s)?.is_zero() {
        out.detail = Some("minimal polynomial is not squarefree: not diagonalizable".into());
        return Ok(out);
    }

    let mut exact = Vec::new();
    let mut pending = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let mult = i + 1;
        let mut rest = part.clone();
        for (r, _) in rational_roots(part)? {
            rest = rest.deflate(&r).expect("rational root divides");
            exact.push(EigenEntry::exact(r, mult));
        }
        if !rest.is_constant() {
            pending.push((mult, rest));
        }
    }
    exact.sort_by_key(|e| e.value_rational());
    out.eigen_info = exact;
    if pending.is_empty() {
        out.evidence = Evidence::RationalSpectrumProved;
        return Ok(out);
    }

    let mut lifted = Vec::new();
    let mut reasons = Vec::new();
    let mut all_split = true;
    for (mult, g) in &pending {
        match hensel_roots(g, p, opts.hensel_precision)? {
            HenselOutcome::Split(roots) => {
                for r in roots {
                    lifted.push(EigenEntry::padic(&r, p, *mult));
                }
            }
            HenselOutcome::OutsideQp(why) => {
                all_split = false;
                out.outside_qp = true;
                reasons.push(why);
            }
            HenselOutcome::Inconclusive(why) => {
                all_split = false;
                reasons.push(why);
            }
        }
    }
    if all_split {
        out.evidence = Evidence::HenselWitnessed;
        out.eigen_info.extend(lifted);
        return Ok(out);
    }
    out.evidence = Evidence::NewtonValuationsOnly;
    for (mult, g) in &pending {
        for seg in newton_polygon(g, p)?.segments {
            out.eigen_info.push(EigenEntry::valuation(seg.root_valuation(), seg.length * mult));
        }
    }
    out.detail = Some(reasons.join("; "));
    Ok(out)
}

/// `b` with `S = b I`, if the frame is tight.
pub fn check_tight_frame(cfg: &Configuration) -> Result<Option<Rational>> {
    Ok(frame_operator(&cfg.vectors)?.as_scalar().filter(|b| !b.is_zero()))
}

pub fn certify(cfg: &Configuration) -> Result<Certificate> {
    certify_with(cfg, &CertifyOptions::default())
}

pub fn certify_with(cfg: &Configuration, opts: &CertifyOptions) -> Result<Certificate> {
    cfg.validate()?;
    let p = cfg.p;
    let n = cfg.n();
    if n < 2 {
        return Err(Error::NeedTwoLines);
    }
    let condition_i = check_condition_i(cfg);
    let common = common_angle(cfg)?;
    if let Some(declared) = cfg.declared_gamma {
        if common != Some(declared) {
            return Err(Error::GammaMismatch {
                declared: declared.render(p),
                measured: common.map_or_else(|| "unequal angles".to_string(), |g| g.render(p)),
            });
        }
    }
    let condition_ii = common.is_some();
    let max_angle = max_off_diagonal(cfg)?;
    let iii = check_condition_iii_with(cfg, opts)?;

    let mut notes = Vec::new();
    let mut bounds = Vec::new();
    let (nn, dd) = (n as u64, cfg.d as u64);
    let relative_gamma = match common {
        Some(g) => Some(g),
        None if iii.tight_frame_b.is_some() => {
            notes.push(
                "tight frame with unequal angles: relative bound evaluated with gamma = max off-diagonal |<tau_j, tau_k>|"
                    .to_string(),
            );
            Some(max_angle)
        }
        None => None,
    };
    if cfg.a.is_one() {
        if let Some(g) = relative_gamma {
            bounds.push(bound_padic_relative(nn, dd, g, p));
        }
        bounds.push(bound_padic_welch(cfg)?);
    } else {
        if let Some(g) = relative_gamma {
            bounds.push(bound_ga_relative(nn, dd, g, &cfg.a, p)?);
        }
        bounds.push(bound_ga_welch(cfg)?);
    }
    bounds.push(bound_classical_gerzon(nn, dd));

    if let Some(detail) = &iii.detail {
        notes.push(detail.clone());
    }
    let verdict = if !(condition_i && condition_ii && iii.inequality_holds) {
        Verdict::NotEquiangular
    } else if iii.evidence.certifies() {
        Verdict::Certified
    } else if iii.outside_qp || iii.evidence == Evidence::Failed {
        Verdict::NotEquiangular
    } else {
        Verdict::Conditional
    };

    Ok(Certificate {
        p,
        d: cfg.d,
        n,
        a: cfg.a.clone(),
        verdict,
        condition_i,
        condition_ii,
        gamma: common,
        max_off_diagonal: max_angle,
        condition_iii_evidence: iii.evidence,
        condition_iii_inequality: iii.inequality_holds,
        eigenvalues_outside_qp: iii.outside_qp,
        trace_s: iii.trace_s,
        trace_s2: iii.trace_s2,
        char_poly: iii.char_poly,
        eigen_info: iii.eigen_info,
        tight_frame_b: iii.tight_frame_b,
        bounds,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn v(xs: &[&str]) -> Vector {
        Vector::new(xs.iter().map(|s| q(s)).collect())
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn pair() -> Configuration {
        Configuration::new(p(5), vec![v(&["3/5", "4/5"]), v(&["1", "0"])]).unwrap()
    }

    fn basis(d: usize, pr: u64) -> Configuration {
        Configuration::new(p(pr), (0..d).map(|i| Vector::basis(d, i)).collect()).unwrap()
    }

    #[test]
    fn condition_i_examples() {
        assert!(check_condition_i(&basis(2, 5)));
        assert!(check_condition_i(&pair()));
        let bad = Configuration::new(p(3), vec![v(&["1", "1"]), v(&["1", "0"])]).unwrap();
        assert!(!check_condition_i(&bad));
    }

    #[test]
    fn condition_ii_examples() {
        assert_eq!(check_condition_ii(&basis(3, 7)).unwrap(), (true, Some(PadicAbs::Zero)));
        assert_eq!(check_condition_ii(&pair()).unwrap(), (true, Some(PadicAbs::Pow(1))));
        let three = Configuration::new(p(5), vec![v(&["3/5", "4/5"]), v(&["1", "0"]), v(&["0", "1"])])
            .unwrap();
        assert_eq!(check_condition_ii(&three).unwrap(), (false, None));
        let single = Configuration::new(p(5), vec![v(&["1", "0"])]).unwrap();
        assert_eq!(check_condition_ii(&single), Err(Error::NeedTwoLines));
        let wrong = pair().with_gamma(PadicAbs::ONE);
        assert_eq!(check_condition_ii(&wrong).unwrap(), (false, Some(PadicAbs::Pow(1))));
    }

    #[test]
    fn condition_iii_identity() {
        let iii = check_condition_iii(&basis(3, 3)).unwrap();
        assert_eq!(iii.evidence, Evidence::RationalSpectrumProved);
        assert_eq!(iii.eigen_info, vec![EigenEntry::exact(q("1"), 3)]);
        assert!(iii.inequality_holds);
        assert_eq!(iii.tight_frame_b, Some(q("1")));
    }

    #[test]
    fn condition_iii_pair() {
        let iii = check_condition_iii(&pair()).unwrap();
        assert_eq!(iii.evidence, Evidence::RationalSpectrumProved);
        assert_eq!(
            iii.eigen_info,
            vec![EigenEntry::exact(q("2/5"), 1), EigenEntry::exact(q("8/5"), 1)]
        );
        assert_eq!((iii.trace_s.clone(), iii.trace_s2.clone()), (q("2"), q("68/25")));
        assert!(iii.inequality_holds);
    }

    #[test]
    fn ladder_on_eisenstein_char_poly() {
        // companion matrix of x^2 - 5
        let m = Matrix::from_int_rows(&[&[0, 5], &[1, 0]]).unwrap();
        let ev = spectrum_evidence(&m, p(5), &CertifyOptions::default()).unwrap();
        assert_eq!(ev.char_poly, Polynomial::from_ints(&[-5, 0, 1]));
        assert_eq!(ev.evidence, Evidence::NewtonValuationsOnly);
        assert!(ev.outside_qp);
        assert_eq!(ev.eigen_info, vec![EigenEntry::valuation(q("1/2"), 2)]);
    }

    #[test]
    fn ladder_rejects_jordan_block() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let ev = spectrum_evidence(&m, p(3), &CertifyOptions::default()).unwrap();
        assert_eq!(ev.evidence, Evidence::Failed);
    }

    #[test]
    fn condition_iii_irrational_eigenvalues() {
        // (1, 2), (1, 0): S = [[2, 2], [2, 4]], char poly x^2 - 6x + 4 with
        // eigenvalues 3 +- sqrt(5)
        let cfg = Configuration::new(p(5), vec![v(&["1", "2"]), v(&["1", "0"])]).unwrap();
        let iii = check_condition_iii(&cfg).unwrap();
        assert_eq!(iii.char_poly, Some(Polynomial::from_ints(&[4, -6, 1])));
        assert_eq!(iii.evidence, Evidence::NewtonValuationsOnly);
        assert!(iii.outside_qp);
        assert!(!iii.holds());
        // 5 = 4 mod 11 is a square, so both eigenvalues lie in Q_11
        let cfg11 = Configuration::new(p(11), cfg.vectors.clone()).unwrap();
        let iii = check_condition_iii(&cfg11).unwrap();
        assert_eq!(iii.evidence, Evidence::HenselWitnessed);
        assert_eq!(iii.eigen_info.len(), 2);
    }

    #[test]
    fn trace_fallback_past_cap() {
        let opts = CertifyOptions { char_poly_cap: 1, trace_fallback: false, ..Default::default() };
        assert!(matches!(
            check_condition_iii_with(&pair(), &opts),
            Err(Error::DimensionCap { dim: 2, cap: 1 })
        ));
        let opts = CertifyOptions { char_poly_cap: 1, trace_fallback: true, ..Default::default() };
        let iii = check_condition_iii_with(&pair(), &opts).unwrap();
        assert_eq!(iii.evidence, Evidence::TraceInequalityOnly);
        let cert = certify_with(&pair(), &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Conditional);
    }

    #[test]
    fn certify_examples() {
        let c = certify(&basis(4, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.gamma, Some(PadicAbs::Zero));

        let c = certify(&pair()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.gamma, Some(PadicAbs::Pow(1)));
        let rel = c.bound(BoundName::PadicRelative).unwrap();
        assert_eq!(rel.lhs.as_abs(), Some(PadicAbs::ONE));
        assert_eq!(rel.rhs.as_abs(), Some(PadicAbs::Pow(2)));

        let bad = Configuration::new(p(5), vec![v(&["1", "1"]), v(&["1", "0"])]).unwrap();
        let c = certify(&bad).unwrap();
        assert!(!c.condition_i);
        assert_eq!(c.verdict, Verdict::NotEquiangular);
    }

    #[test]
    fn certify_gamma_mismatch_is_an_error() {
        assert!(matches!(
            certify(&pair().with_gamma(PadicAbs::Zero)),
            Err(Error::GammaMismatch { .. })
        ));
        assert!(certify(&pair().with_gamma(PadicAbs::Pow(1))).is_ok());
    }

    #[test]
    fn certify_requires_two_lines() {
        let single = Configuration::new(p(5), vec![v(&["1", "0"])]).unwrap();
        assert_eq!(certify(&single), Err(Error::NeedTwoLines));
    }

    #[test]
    fn tight_frames() {
        assert_eq!(check_tight_frame(&basis(3, 5)).unwrap(), Some(q("1")));
        let cfg = Configuration::new(p(5), vec![v(&["1", "0"]), v(&["0", "1"]), v(&["1", "0"])])
            .unwrap();
        assert_eq!(check_tight_frame(&cfg).unwrap(), None);
    }

    #[test]
    fn scaled_pair_with_a() {
        let scaled: Vec<Vector> = pair().vectors.iter().map(|x| x.scale(&q("5"))).collect();
        let cfg = Configuration::new(p(5), scaled).unwrap().with_a(q("25")).unwrap();
        let c = certify(&cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.gamma, Some(PadicAbs::Pow(-1)));
        let rel = c.bound(BoundName::GaRelative).unwrap();
        assert!(rel.holds);
        assert!(c.bound(BoundName::PadicRelative).is_none());
    }
}
