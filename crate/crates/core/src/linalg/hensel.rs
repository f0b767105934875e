//! Decides whether the roots of a squarefree rational polynomial lie in
//! `Q_p`, and exhibits them when they do.
//!
//! Each integer-slope edge of the Newton polygon is rescaled so that its
//! roots become units. Unit roots in `Z_p` are then counted exactly: a simple
//! residue root lifts uniquely by Newton iteration, and a repeated residue
//! root `r` is refined by substituting `x = r + p y` and recursing. For a
//! squarefree polynomial the recursion terminates, so the count is exact up
//! to the depth limit. Fractional slopes, or fewer roots than the edge
//! length, prove that some root lies outside `Q_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::mod_inverse;
use crate::error::{Error, Result};
use crate::linalg::newton::newton_polygon;
use crate::linalg::poly::Polynomial;
use crate::padic::{valuation, PadicAbs, PadicExpansion, Prime, Rational};

pub const DEFAULT_HENSEL_PRECISION: usize = 64;

/// Largest prime for which residue roots are found by exhaustive search.
pub const RESIDUE_SEARCH_LIMIT: u64 = 1 << 16;

/// A root `p^valuation * u` with the unit `u` known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicRoot {
    pub valuation: i64,
    pub unit_residue: BigInt,
    pub precision: usize,
}

impl PadicRoot {
    pub fn expansion(&self, p: Prime) -> PadicExpansion {
        PadicExpansion::from_residue(p, self.valuation, &self.unit_residue, self.precision)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenselOutcome {
    /// Every root lies in `Q_p`; one entry per root.
    Split(Vec<PadicRoot>),
    /// Some root provably lies outside `Q_p`.
    OutsideQp(String),
    /// Neither conclusion was reached.
    Inconclusive(String),
}

/// Polynomial with coefficients in `Z / p^k`.
struct ModPoly {
    coeffs: Vec<BigInt>,
    modulus: BigInt,
}

impl ModPoly {
    fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(&self.modulus))
    }

    fn derivative_eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = (acc * x + c * BigInt::from(i)).mod_floor(&self.modulus);
        }
        acc
    }
}

fn residue_poly(coeffs: &[u64], p: u64) -> impl Fn(u64) -> u64 + '_ {
    move |x| {
        coeffs.iter().rev().fold(0u64, |acc, &c| {
            ((acc as u128 * x as u128 + c as u128) % p as u128) as u64
        })
    }
}

/// Decides whether every root of `f` lies in `Q_p`. `f` must be
/// squarefree with nonzero constant term.
pub fn hensel_roots(f: &Polynomial, p: Prime, precision: usize) -> Result<HenselOutcome> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.zero_root_multiplicity() > 0 {
        return Err(Error::Invalid("hensel_roots expects a nonzero constant term".into()));
    }
    let np = newton_polygon(f, p)?;
    if let Some(seg) = np.segments.iter().find(|s| !s.has_integer_slope()) {
        return Ok(HenselOutcome::OutsideQp(format!(
            "Newton polygon edge of slope {} gives roots of valuation {}",
            seg.slope,
            seg.root_valuation()
        )));
    }
    if p.get() > RESIDUE_SEARCH_LIMIT {
        return Ok(HenselOutcome::Inconclusive(format!(
            "residue root search skipped for p > {RESIDUE_SEARCH_LIMIT}"
        )));
    }
    let precision = precision.max(1);
    let mut roots = Vec::new();

    for seg in &np.segments {
        let v = seg.root_valuation().numer().to_i64().expect("small valuation");
        // h(y) = f(p^v y) / p^m, coefficients in Z_(p), minimal valuation 0
        let scale = PadicAbs::Pow(v).to_rational(p); // p^v
        let mut scaled = Vec::with_capacity(f.coeffs().len());
        let mut power = Rational::one();
        for c in f.coeffs() {
            scaled.push(c * &power);
            power *= &scale;
        }
        let h = normalize(&Polynomial::new(scaled), p);

        let Some(units) = zp_roots(&h, p, precision, 0, true) else {
            return Ok(HenselOutcome::Inconclusive(format!(
                "residue refinement deeper than {MAX_REFINE_DEPTH} on the edge of root valuation {v}"
            )));
        };
        let found = units.len();
        roots.extend(units.into_iter().map(|u| PadicRoot { valuation: v, unit_residue: u, precision }));
        if found < seg.length {
            return Ok(HenselOutcome::OutsideQp(format!(
                "edge of root valuation {v} carries {} roots but only {found} lie in Q_{p}",
                seg.length
            )));
        }
    }
    Ok(HenselOutcome::Split(roots))
}

/// Limit on nested `x = r + p y` refinements.
pub const MAX_REFINE_DEPTH: usize = 64;

/// `h / p^m` with `m` the least coefficient valuation, so that the result
/// has coefficients in `Z_(p)` and a nonzero reduction mod `p`.
fn normalize(h: &Polynomial, p: Prime) -> Polynomial {
    let min_val = h
        .coeffs()
        .iter()
        .filter_map(|c| valuation(c, p).finite())
        .min()
        .expect("nonzero polynomial");
    h.scale(&PadicAbs::Pow(-min_val).to_rational(p))
}

/// `c mod m` for `c` in `Z_(p)`.
fn reduce(c: &Rational, m: &BigInt) -> BigInt {
    let inv = mod_inverse(c.denom(), m).expect("denominator coprime to p");
    (c.numer() * inv).mod_floor(m)
}

/// `h(a + b y)`.
fn substitute_linear(h: &Polynomial, a: &Rational, b: &Rational) -> Polynomial {
    let lin = Polynomial::new(vec![a.clone(), b.clone()]);
    h.coeffs()
        .iter()
        .rev()
        .fold(Polynomial::zero(), |acc, c| acc.mul(&lin).add(&Polynomial::constant(c.clone())))
}

/// Roots of `h` in `Z_p` modulo `p^precision` (units only when `units_only`).
/// `h` must be normalized. `None` when the depth limit is reached.
fn zp_roots(h: &Polynomial, p: Prime, precision: usize, depth: usize, units_only: bool) -> Option<Vec<BigInt>> {
    if depth > MAX_REFINE_DEPTH {
        return None;
    }
    let pb = p.to_bigint();
    let modulus = pb.pow(precision as u32);
    let residue: Vec<u64> = h.coeffs().iter().map(|c| reduce(c, &pb).to_u64().unwrap()).collect();
    let derivative: Vec<u64> = h.derivative().coeffs().iter().map(|c| reduce(c, &pb).to_u64().unwrap()).collect();
    let eval = residue_poly(&residue, p.get());
    let deval = residue_poly(&derivative, p.get());
    let mut out = Vec::new();
    for r in u64::from(units_only)..p.get() {
        if eval(r) != 0 {
            continue;
        }
        if deval(r) != 0 {
            let lifted = ModPoly { coeffs: h.coeffs().iter().map(|c| reduce(c, &modulus)).collect(), modulus: modulus.clone() };
            out.push(newton_lift(&lifted, BigInt::from(r), precision));
            continue;
        }
        let g = normalize(&substitute_linear(h, &Rational::from_integer(r), &p.to_rational()), p);
        for y in zp_roots(&g, p, precision, depth + 1, false)? {
            out.push((BigInt::from(r) + &pb * y).mod_floor(&modulus));
        }
    }
    Some(out)
}

fn newton_lift(h: &ModPoly, mut r: BigInt, precision: usize) -> BigInt {
    let mut correct = 1usize;
    while correct < precision {
        let fx = h.eval(&r);
        let dfx = h.derivative_eval(&r);
        let inv = mod_inverse(&dfx, &h.modulus).expect("simple root has unit derivative");
        r = (r - fx * inv).mod_floor(&h.modulus);
        correct *= 2;
    }
    debug_assert!(h.eval(&r).is_zero());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn sqrt_minus_one_in_q5() {
        // x^2 + 1 splits over Q_5 (2^2 = -1 mod 5)
        let out = hensel_roots(&Polynomial::from_ints(&[1, 0, 1]), p(5), 20).unwrap();
        let HenselOutcome::Split(roots) = out else { panic!("{out:?}") };
        assert_eq!(roots.len(), 2);
        let m = BigInt::from(5).pow(20);
        for r in &roots {
            assert_eq!(r.valuation, 0);
            assert!((&r.unit_residue * &r.unit_residue + BigInt::one()).mod_floor(&m).is_zero());
        }
    }

    #[test]
    fn sqrt_minus_one_not_in_q3() {
        let out = hensel_roots(&Polynomial::from_ints(&[1, 0, 1]), p(3), 20).unwrap();
        assert!(matches!(out, HenselOutcome::OutsideQp(_)), "{out:?}");
    }

    #[test]
    fn eisenstein_is_outside() {
        let out = hensel_roots(&Polynomial::from_ints(&[-5, 0, 1]), p(5), 8).unwrap();
        assert!(matches!(out, HenselOutcome::OutsideQp(_)));
    }

    #[test]
    fn nonunit_roots() {
        // x^2 - 2x - 1/25: roots 1 +- sqrt(26)/5, both of valuation -1; 26 = 1 mod 5
        // so sqrt(26) is in Z_5
        let f = Polynomial::new(vec![q("-1/25"), q("-2"), q("1")]);
        let HenselOutcome::Split(roots) = hensel_roots(&f, p(5), 16).unwrap() else {
            panic!()
        };
        let mut vals: Vec<i64> = roots.iter().map(|r| r.valuation).collect();
        vals.sort();
        assert_eq!(vals, vec![-1, -1]);
    }

    #[test]
    fn repeated_residue_is_refined() {
        // x^2 - 17 at p = 2: x^2 - 1 has a double root mod 2, but 17 = 1 mod 8
        // so both roots are in Q_2
        let HenselOutcome::Split(roots) = hensel_roots(&Polynomial::from_ints(&[-17, 0, 1]), p(2), 12).unwrap()
        else {
            panic!()
        };
        let m = BigInt::from(2).pow(12);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((&r.unit_residue * &r.unit_residue - BigInt::from(17)).mod_floor(&m).is_zero());
        }
        // 5 = 5 mod 8 is not a 2-adic square
        let out = hensel_roots(&Polynomial::from_ints(&[-5, 0, 1]), p(2), 12).unwrap();
        assert!(matches!(out, HenselOutcome::OutsideQp(_)), "{out:?}");
    }

    #[test]
    fn double_residue_at_five() {
        // x^2 - 6x + 4 = (x - 3)^2 mod 5, roots 3 +- sqrt(5)
        let out = hensel_roots(&Polynomial::from_ints(&[4, -6, 1]), p(5), 12).unwrap();
        assert!(matches!(out, HenselOutcome::OutsideQp(_)), "{out:?}");
        // x^2 - 6x + 9 - 25 = (x - 8)(x + 2)
        let HenselOutcome::Split(roots) = hensel_roots(&Polynomial::from_ints(&[-16, -6, 1]), p(5), 12).unwrap()
        else {
            panic!()
        };
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn count_matches_quadratic_residue_test() {
        // x^2 - c for odd p splits iff v(c) is even and the unit part is a square mod p
        for pr in [3u64, 5, 7, 11] {
            for c in 1i64..200 {
                let f = Polynomial::from_ints(&[-c, 0, 1]);
                if crate::linalg::rational_roots(&f).unwrap().len() == 2 {
                    continue;
                }
                let mut u = c;
                let mut v = 0;
                while u % pr as i64 == 0 {
                    u /= pr as i64;
                    v += 1;
                }
                let square = (1..pr as i64).any(|t| (t * t - u).rem_euclid(pr as i64) == 0);
                let want = v % 2 == 0 && square;
                let out = hensel_roots(&f, p(pr), 8).unwrap();
                assert_eq!(matches!(out, HenselOutcome::Split(_)), want, "p={pr} c={c} {out:?}");
                assert!(!matches!(out, HenselOutcome::Inconclusive(_)));
            }
        }
    }

    #[test]
    fn expansion_matches_rational_root() {
        // (x - 2/3)(x - 7) at p = 5
        let f = Polynomial::linear_root(&q("2/3")).mul(&Polynomial::linear_root(&q("7")));
        let HenselOutcome::Split(roots) = hensel_roots(&f, p(5), 10).unwrap() else { panic!() };
        let mut got: Vec<Vec<u64>> = roots.iter().map(|r| r.expansion(p(5)).digits).collect();
        got.sort();
        let mut want = vec![
            PadicExpansion::of_rational(&q("2/3"), p(5), 10).digits,
            PadicExpansion::of_rational(&q("7"), p(5), 10).digits,
        ];
        want.sort();
        assert_eq!(got, want);
    }
}
