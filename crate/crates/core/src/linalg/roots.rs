use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{abs_biguint, divisors};
use crate::error::{Error, Result};
use crate::linalg::poly::Polynomial;
use crate::padic::Rational;

/// All rational roots of `f` with multiplicities, ascending by value.
///
/// Uses the rational root theorem on the primitive integer multiple of `f`
/// (candidates `±u/v` with `u | a_0`, `v | a_n`) and exact deflation.
pub fn rational_roots(f: &Polynomial) -> Result<Vec<(Rational, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let zeros = f.zero_root_multiplicity();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros));
    }
    let mut rest = f.strip_zero_roots();
    if rest.is_constant() {
        return Ok(sorted(roots));
    }
    // candidates only need the squarefree part
    let ints = rest.squarefree_part().primitive_integer();
    let constant = abs_biguint(&ints[0]);
    let leading = abs_biguint(ints.last().expect("nonconstant"));
    let us = divisors(&constant);
    let vs = divisors(&leading);
    let int_poly: Vec<BigInt> = ints;

    for v in &vs {
        for u in &us {
            if !u.gcd(v).is_one() {
                continue;
            }
            for negative in [false, true] {
                let num = BigInt::from(u.clone()) * if negative { -1 } else { 1 };
                let den = BigInt::from(v.clone());
                if !is_root_scaled(&int_poly, &num, &den) {
                    continue;
                }
                let r = Rational::new(num, den);
                let mut mult = 0;
                while let Some(next) = rest.deflate(&r) {
                    rest = next;
                    mult += 1;
                }
                debug_assert!(mult > 0);
                roots.push((r, mult));
            }
        }
    }
    Ok(sorted(roots))
}

/// `v^n f(u/v) == 0`, evaluated in integers.
fn is_root_scaled(coeffs: &[BigInt], u: &BigInt, v: &BigInt) -> bool {
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut v_pow = BigInt::one();
    // Horner on homogenized form: sum c_i u^i v^(n-i)
    let mut u_pows = Vec::with_capacity(n + 1);
    let mut up = BigInt::one();
    for _ in 0..=n {
        u_pows.push(up.clone());
        up *= u;
    }
    for i in (0..=n).rev() {
        acc += &coeffs[i] * &u_pows[i] * &v_pow;
        v_pow *= v;
    }
    acc.is_zero()
}

fn sorted(mut roots: Vec<(Rational, usize)>) -> Vec<(Rational, usize)> {
    roots.sort();
    roots
}
