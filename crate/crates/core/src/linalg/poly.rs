use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::padic::Rational;

/// Default cap on the dimension accepted by [`char_poly`].
pub const DEFAULT_CHAR_POLY_CAP: usize = 64;

/// Univariate polynomial over `Q`, coefficients lowest degree first. The
/// zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Polynomial {
    fn from(coeffs: Vec<Rational>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Rational> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        m.require_square()?;
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::scalar(n, c))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => self.scale(&l.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inverse()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out the factor `x - r` once; the remainder must be zero.
    pub fn deflate(&self, r: &Rational) -> Option<Polynomial> {
        let (q, rem) = self.div_rem(&Polynomial::linear_root(r))?;
        rem.is_zero().then_some(q)
    }

    /// Number of roots at zero, i.e. the count of trailing zero coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `f / x^k` where `k` is the multiplicity of the root zero.
    pub fn strip_zero_roots(&self) -> Polynomial {
        let k = self.zero_root_multiplicity();
        Polynomial::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Radical `f / gcd(f, f')`, made monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    /// Squarefree decomposition (Yun): monic `f_1, f_2, ...` with
    /// `f = lc * prod f_k^k`, pairwise coprime and each squarefree. Entry
    /// `k - 1` holds `f_k`; trailing constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).expect("nonzero gcd").0;
        let mut c = df.div_rem(&a0).expect("nonzero gcd").0;
        let mut d = c.sub(&b.derivative());
        while !b.is_constant() {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).expect("nonzero gcd").0;
            c = d.div_rem(&a).expect("nonzero gcd").0;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(Polynomial::is_constant) {
            out.pop();
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient, keeping the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
        ints.iter().map(|c| c / &content * sign).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monic characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier.
pub fn char_poly(m: &Matrix) -> Result<Polynomial> {
    char_poly_capped(m, DEFAULT_CHAR_POLY_CAP)
}

pub fn char_poly_capped(m: &Matrix, cap: usize) -> Result<Polynomial> {
    m.require_square()?;
    let n = m.rows();
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    // c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let am = m.mul(&mk)?;
        mk = am.add(&Matrix::scalar(n, &coeffs[n + 1 - k]))?;
        let amk = m.mul(&mk)?;
        let tr: Rational = (0..n).map(|i| amk.get(i, i)).sum();
        coeffs[n - k] = -(tr * Rational::new(1, k as i64));
    }
    Ok(Polynomial::new(coeffs))
}

/// True iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &Polynomial) -> bool {
    f.gcd(&f.derivative()).is_constant()
}
