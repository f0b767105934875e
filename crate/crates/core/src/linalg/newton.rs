use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::poly::Polynomial;
use crate::padic::{valuation, Prime, Rational};

/// One edge of the lower convex hull of `(i, v_p(c_i))`.
///
/// `slope` is the geometric slope of the edge; the edge certifies exactly
/// `length` roots (in an algebraic closure of `Q_p`) of valuation `-slope`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub slope: Rational,
    pub length: usize,
}

impl Segment {
    pub fn root_valuation(&self) -> Rational {
        -&self.slope
    }

    /// Whether the roots on this edge could lie in `Q_p` at all.
    pub fn has_integer_slope(&self) -> bool {
        self.slope.is_integer()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    /// Slopes strictly increasing.
    pub segments: Vec<Segment>,
    /// Roots equal to zero (valuation `+inf`), from trailing zero coefficients.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn nonzero_root_count(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

pub fn newton_polygon(f: &Polynomial, p: Prime) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, p).finite().map(|v| (i as i64, v)))
        .collect();
    let zero_roots = points[0].0 as usize;

    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            Segment { slope: Rational::new(dy, dx), length: dx as usize }
        })
        .collect();
    Ok(NewtonPolygon { segments, zero_roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn eisenstein_quadratic() {
        let p = Prime::new(5).unwrap();
        let np = newton_polygon(&Polynomial::from_ints(&[-5, 0, 1]), p).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: q("-1/2"), length: 2 }]);
        assert_eq!(np.segments[0].root_valuation(), q("1/2"));
        assert!(!np.segments[0].has_integer_slope());
        assert_eq!(np.zero_roots, 0);
    }

    #[test]
    fn pair_frame_char_poly() {
        // points (0,-2), (1,0), (2,0): (1,0) lies above the chord, one edge of slope 1.
        // Both roots 8/5 and 2/5 have 5-adic valuation -1.
        let f = Polynomial::new(vec![q("16/25"), q("-2"), q("1")]);
        let np = newton_polygon(&f, Prime::new(5).unwrap()).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: q("1"), length: 2 }]);
        assert_eq!(np.segments[0].root_valuation(), q("-1"));
    }

    #[test]
    fn unit_roots() {
        for p in [2, 3, 7] {
            let np = newton_polygon(&Polynomial::from_ints(&[-1, 0, 1]), Prime::new(p).unwrap())
                .unwrap();
            assert_eq!(np.segments, vec![Segment { slope: q("0"), length: 2 }]);
        }
    }

    #[test]
    fn zero_roots_and_two_edges() {
        // x^2 (x - 1)(x - 1/3) at p = 3: roots of valuation 0 and -1, two at zero
        let f = Polynomial::linear_root(&q("1"))
            .mul(&Polynomial::linear_root(&q("1/3")))
            .mul(&Polynomial::from_ints(&[0, 0, 1]));
        let np = newton_polygon(&f, Prime::new(3).unwrap()).unwrap();
        assert_eq!(np.zero_roots, 2);
        let vals: Vec<Rational> = np.segments.iter().map(Segment::root_valuation).collect();
        assert_eq!(vals, vec![q("0"), q("-1")]);
        assert_eq!(np.nonzero_root_count(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            newton_polygon(&Polynomial::zero(), Prime::new(2).unwrap()),
            Err(Error::ZeroPolynomial)
        );
    }
}
