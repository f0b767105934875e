//! Integer helpers: primality, factorization and modular inverses.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on big integers. Deterministic below 3.3e24, probabilistic
/// (with the first twelve prime bases) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut x = BigUint::from(2u32);
    let mut y = x.clone();
    let mut d = BigUint::one();
    let mut steps = 0u64;
    while d.is_one() {
        x = f(&x);
        y = f(&f(&y));
        let diff = if x > y { &x - &y } else { &y - &x };
        d = diff.gcd(n);
        steps += 1;
        if steps > 5_000_000 {
            return None;
        }
    }
    if &d == n {
        None
    } else {
        Some(d)
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let rest = &n / &d;
            factor_into(d, out);
            factor_into(rest, out);
            return;
        }
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `n` must be nonzero.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut n = n.clone();
    let mut primes = Vec::new();
    let mut trial = 2u64;
    while trial < 10_000 {
        let t = BigUint::from(trial);
        if &t * &t > n {
            break;
        }
        while (&n % &t).is_zero() {
            primes.push(t.clone());
            n /= &t;
        }
        trial += if trial == 2 { 1 } else { 2 };
    }
    factor_into(n, &mut primes);
    primes.sort();
    let mut grouped: Vec<(BigUint, u32)> = Vec::new();
    for q in primes {
        match grouped.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => grouped.push((q, 1)),
        }
    }
    grouped
}

/// All positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (q, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..e {
                power *= &q;
                next.push(power.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Inverse of `a` modulo `m`, if it exists. The result lies in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let egcd = a.extended_gcd(m);
    if !egcd.gcd.is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

/// Multiplicity of `p` in a nonzero integer.
pub fn multiplicity(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        n = q;
        count += 1;
    }
}

pub(crate) fn abs_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}
