#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use padic_equiangular::linalg::{Matrix, Polynomial};
use padic_equiangular::{PadicAbs, Prime, Rational};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// `v_p` of a nonzero rational by repeated division of numerator and denominator.
pub fn valuation_by_division(x: &Rational, p: u64) -> i64 {
    let count = |n: &BigInt| {
        let pb = BigInt::from(p);
        let mut n = n.clone();
        let mut k = 0i64;
        while (&n % &pb).is_zero() {
            n /= &pb;
            k += 1;
        }
        k
    };
    assert!(!x.is_zero());
    count(x.numer()) - count(x.denom())
}

/// `|x|_p` from [`valuation_by_division`].
pub fn abs_by_division(x: &Rational, p: u64) -> PadicAbs {
    if x.is_zero() {
        PadicAbs::Zero
    } else {
        PadicAbs::Pow(-valuation_by_division(x, p))
    }
}

/// The real number `p^e` as a float, for order checks on small exponents.
pub fn abs_as_f64(a: PadicAbs, p: u64) -> f64 {
    match a {
        PadicAbs::Zero => 0.0,
        PadicAbs::Pow(e) => (p as f64).powi(e.to_i32().unwrap()),
    }
}

/// `det(x I - m)` by cofactor expansion along the first row.
pub fn cofactor_char_poly(m: &Matrix) -> Polynomial {
    let n = m.rows();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::constant(-m.get(i, j).clone());
                    if i == j {
                        c.add(&Polynomial::from_ints(&[0, 1]))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    det(&entries)
}

fn det(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        let minor: Vec<Vec<Polynomial>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = a[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

pub fn trace_of_power(m: &Matrix, k: u32) -> Rational {
    let mut acc = Matrix::identity(m.rows());
    for _ in 0..k {
        acc = acc.mul(m).unwrap();
    }
    (0..m.rows()).map(|i| acc.get(i, i).clone()).sum()
}
