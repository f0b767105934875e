use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equiangular::Configuration;
use crate::linalg::{Matrix, Vector};
use crate::padic::{Prime, Rational};

/// Shape of random entries `m / p^k` (or `m * p^k`) with `|m| <= numerator_bound`
/// and `|k| <= max_power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    pub p: Prime,
    pub numerator_bound: i64,
    pub max_power: i32,
}

impl Sampler {
    pub fn new(p: Prime, numerator_bound: i64, max_power: i32) -> Self {
        Sampler { p, numerator_bound, max_power }
    }

    /// Independent generator for item `index` of the stream seeded by `seed`.
    pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        rng
    }

    pub fn rational(&self, rng: &mut impl Rng) -> Rational {
        let m = rng.gen_range(-self.numerator_bound..=self.numerator_bound);
        let k = rng.gen_range(-self.max_power..=self.max_power);
        Rational::from_integer(m) * self.p.to_rational().pow(k)
    }

    pub fn nonzero_rational(&self, rng: &mut impl Rng) -> Rational {
        loop {
            let x = self.rational(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn vector(&self, rng: &mut impl Rng, d: usize) -> Vector {
        Vector::new((0..d).map(|_| self.rational(rng)).collect())
    }

    pub fn matrix(&self, rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| self.rational(rng)).collect()).collect())
            .expect("rectangular")
    }

    /// `n` random vectors in dimension `d`; `a` is left at 1 and need not match.
    pub fn configuration(&self, rng: &mut impl Rng, d: usize, n: usize) -> Configuration {
        Configuration::new(self.p, (0..n).map(|_| self.vector(rng, d)).collect()).expect("n >= 1 and d >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{valuation, Valuation};

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = Sampler::new(Prime::new(3).unwrap(), 9, 2);
        let a: Vec<Rational> = (0..20).map(|_| s.rational(&mut Sampler::rng(1, 4))).collect();
        let b: Vec<Rational> = (0..20).map(|_| s.rational(&mut Sampler::rng(1, 4))).collect();
        assert_eq!(a, b);
        let mut r4 = Sampler::rng(1, 4);
        let mut r5 = Sampler::rng(1, 5);
        let x: Vec<Rational> = (0..20).map(|_| s.rational(&mut r4)).collect();
        let y: Vec<Rational> = (0..20).map(|_| s.rational(&mut r5)).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn valuations_are_bounded() {
        let p = Prime::new(2).unwrap();
        let s = Sampler::new(p, 7, 3);
        let mut rng = Sampler::rng(0, 0);
        for _ in 0..1000 {
            match valuation(&s.rational(&mut rng), p) {
                Valuation::Infinite => {}
                // |m| <= 7 adds at most 2 to the power of 2
                Valuation::Finite(v) => assert!((-3..=5).contains(&v)),
            }
        }
    }
}
