use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::padic::Rational;
use crate::search::SearchSpace;

/// One unit of work: a denominator together with a fixed first numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chunk {
    pub denominator: u64,
    pub first: i64,
}

/// Disjoint chunks covering the space, in enumeration order.
pub fn chunks(space: &SearchSpace) -> Result<Vec<Chunk>> {
    if space.d == 0 {
        return Err(Error::EmptySpace("dimension is zero".into()));
    }
    if space.denominators.is_empty() {
        return Err(Error::EmptySpace("no denominators".into()));
    }
    let b = space.numerator_bound as i64;
    Ok(space
        .denominators
        .iter()
        .flat_map(|&q| (-b..=b).map(move |first| Chunk { denominator: q, first }))
        .collect())
}

/// `a * q^2` when it is an integer small enough to be hit by a numerator sum.
fn target_norm(a: &Rational, q: u64) -> Option<i128> {
    let t = a * &Rational::from_integer(BigInt::from(q) * BigInt::from(q));
    if !t.is_integer() || t.is_negative() {
        return None;
    }
    t.numer().to_i128()
}

/// Unit vectors of one chunk, numerators in lexicographic order.
pub fn enumerate_chunk(space: &SearchSpace, chunk: Chunk) -> Vec<Vector> {
    let Some(target) = target_norm(&space.target_a, chunk.denominator) else {
        return Vec::new();
    };
    let b = space.numerator_bound as i64;
    let d = space.d;
    let mut out = Vec::new();
    let mut x = vec![-b; d];
    x[0] = chunk.first;
    let q = Rational::from_integer(chunk.denominator);
    loop {
        let norm: i128 = x.iter().map(|&t| (t as i128) * (t as i128)).sum();
        if norm == target {
            out.push(Vector::new(x.iter().map(|&t| Rational::from_integer(t).checked_div(&q).unwrap()).collect()));
        }
        // odometer over coordinates 1..d
        let mut i = d;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
        }
    }
}

/// Every lattice vector `m / q` (`|m_i| <= B`, `q` a listed denominator) with
/// `<v, v> = a`, sorted, without duplicates. The chunks run on the current
/// rayon pool; the merge keeps chunk order so the result does not depend on
/// the number of workers.
pub fn enumerate_unit_vectors(space: &SearchSpace) -> Result<Vec<Vector>> {
    let parts: Vec<Vec<Vector>> = chunks(space)?.into_par_iter().map(|c| enumerate_chunk(space, c)).collect();
    let mut all: Vec<Vector> = parts.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// Number of lattice points examined: `(2B + 1)^d` per denominator.
pub fn candidate_count(space: &SearchSpace) -> u128 {
    let side = 2 * space.numerator_bound as u128 + 1;
    side.pow(space.d as u32) * space.denominators.len() as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Prime;

    fn space(p: u64, d: usize, b: u64, dens: &[u64]) -> SearchSpace {
        let mut s = SearchSpace::new(Prime::new(p).unwrap(), d, b);
        s.denominators = dens.to_vec();
        s
    }

    fn v(entries: &[&str]) -> Vector {
        Vector::new(entries.iter().map(|s| s.parse().unwrap()).collect())
    }

    #[test]
    fn small_plane() {
        let got = enumerate_unit_vectors(&space(5, 2, 1, &[1])).unwrap();
        let want = vec![v(&["-1", "0"]), v(&["0", "-1"]), v(&["0", "1"]), v(&["1", "0"])];
        assert_eq!(got, want);
    }

    #[test]
    fn line() {
        assert_eq!(enumerate_unit_vectors(&space(5, 1, 1, &[1])).unwrap(), vec![v(&["-1"]), v(&["1"])]);
    }

    #[test]
    fn pythagorean_over_five() {
        let got = enumerate_unit_vectors(&space(5, 2, 4, &[5])).unwrap();
        for w in [["3/5", "4/5"], ["4/5", "3/5"], ["-3/5", "4/5"], ["3/5", "-4/5"], ["-4/5", "-3/5"]] {
            assert!(got.contains(&v(&w)), "missing {w:?}");
        }
        // 3^2 + 4^2 = 5^2 and 0^2 + 5^2 (out of range): eight signed permutations
        assert_eq!(got.len(), 8);
    }

    #[test]
    fn brute_force_agrees() {
        let s = space(3, 3, 3, &[1, 3, 9]);
        let got = enumerate_unit_vectors(&s).unwrap();
        let mut want = Vec::new();
        for &q in &s.denominators {
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    for z in -3i64..=3 {
                        if (x * x + y * y + z * z) as u64 == q * q {
                            want.push(Vector::new(
                                [x, y, z].iter().map(|&t| Rational::new(t, q as i64)).collect(),
                            ));
                        }
                    }
                }
            }
        }
        want.sort();
        want.dedup();
        assert_eq!(got, want);
    }

    #[test]
    fn non_unit_target() {
        let mut s = space(5, 2, 2, &[1]);
        s.target_a = Rational::from_integer(2);
        assert_eq!(enumerate_unit_vectors(&s).unwrap().len(), 4);
        s.target_a = Rational::from_integer(3);
        assert!(enumerate_unit_vectors(&s).unwrap().is_empty());
    }

    #[test]
    fn empty_space_is_error() {
        assert!(matches!(enumerate_unit_vectors(&space(5, 2, 1, &[])), Err(Error::EmptySpace(_))));
        assert!(matches!(enumerate_unit_vectors(&space(5, 0, 1, &[1])), Err(Error::EmptySpace(_))));
    }

    #[test]
    fn counts() {
        assert_eq!(candidate_count(&space(5, 2, 1, &[1])), 9);
        assert_eq!(candidate_count(&space(2, 3, 6, &[1, 2, 4])), 3 * 13u128.pow(3));
    }
}
