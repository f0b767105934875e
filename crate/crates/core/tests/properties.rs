mod common;

use common::*;
use padic_equiangular::equiangular::{
    bound_ga_relative, bound_padic_relative, bound_padic_welch, certify, check_tight_frame, Configuration,
};
use padic_equiangular::linalg::{char_poly, frame_operator, gram_matrix, inner_product, trace, trace_of_square};
use padic_equiangular::search::{run_search, sign_class_representatives, Sampler, SearchSpace};
use padic_equiangular::{abs_p, valuation, PadicAbs, Rational, Valuation, Vector};
use proptest::prelude::*;

fn primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..=500, 1i64..=500).prop_map(|(n, d)| Rational::new(n, d))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30).prop_map(|(n, d)| Rational::new(n, d))
}

fn vectors(d: usize, n: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(small_rational(), d).prop_map(Vector::new), n)
}

fn config_shape() -> impl Strategy<Value = (u64, Vec<Vector>)> {
    (primes(), 1usize..=4, 1usize..=6).prop_flat_map(|(p, d, n)| (Just(p), vectors(d, n)))
}

proptest! {
    #[test]
    fn valuation_matches_division_oracle(x in rational(), p in primes()) {
        match valuation(&x, prime(p)) {
            Valuation::Infinite => prop_assert!(x.is_zero()),
            Valuation::Finite(v) => prop_assert_eq!(v, valuation_by_division(&x, p)),
        }
        prop_assert_eq!(abs_p(&x, prime(p)), abs_by_division(&x, p));
    }

    #[test]
    fn abs_order_matches_real_order(x in rational(), y in rational(), p in primes()) {
        let (a, b) = (abs_p(&x, prime(p)), abs_p(&y, prime(p)));
        let (fa, fb) = (abs_as_f64(a, p), abs_as_f64(b, p));
        prop_assert_eq!(a.cmp(&b), fa.partial_cmp(&fb).unwrap());
    }

    #[test]
    fn rational_text_roundtrip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_identities((_, vs) in config_shape()) {
        let s = frame_operator(&vs).unwrap();
        let g = gram_matrix(&vs).unwrap();
        let diag: Rational = vs.iter().map(|v| inner_product(v, v).unwrap()).sum();
        prop_assert_eq!(trace(&s).unwrap(), diag);
        let all: Rational = vs
            .iter()
            .flat_map(|u| vs.iter().map(move |v| inner_product(u, v).unwrap().square()))
            .sum();
        prop_assert_eq!(trace_of_square(&s).unwrap(), all);
        for k in 1..=3 {
            prop_assert_eq!(trace_of_power(&s, k), trace_of_power(&g, k));
        }
    }

    #[test]
    fn char_poly_matches_cofactor((_, vs) in config_shape(), extra in vectors(4, 4)) {
        let s = frame_operator(&vs).unwrap();
        prop_assert_eq!(char_poly(&s).unwrap(), cofactor_char_poly(&s));
        // non-symmetric input as well
        let d = vs[0].dim();
        let m = padic_equiangular::Matrix::from_rows(
            extra.iter().take(d).map(|v| v.entries()[..d].to_vec()).collect(),
        )
        .unwrap();
        prop_assert_eq!(char_poly(&m).unwrap(), cofactor_char_poly(&m));
    }

}

proptest! {
    #[test]
    fn ga_relative_reduces_at_a_one(n in 1u64..5000, d in 1u64..5000, e in -6i64..6, zero in any::<bool>(), p in primes()) {
        let gamma = if zero { PadicAbs::Zero } else { PadicAbs::Pow(e) };
        let ga = bound_ga_relative(n, d, gamma, &Rational::one(), prime(p)).unwrap();
        let pr = bound_padic_relative(n, d, gamma, prime(p));
        prop_assert_eq!((ga.lhs, ga.rhs, ga.holds), (pr.lhs, pr.rhs, pr.holds));
    }

    #[test]
    fn certified_families_obey_relative_bound(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5])) {
        // random sign flips and subsets of a searched lattice
        let space = SearchSpace::new(prime(p), 3, 3);
        let lines = sign_class_representatives(&padic_equiangular::search::enumerate_unit_vectors(&space).unwrap());
        let mut rng = Sampler::rng(seed, 0);
        use rand::Rng;
        let picks: Vec<Vector> = lines
            .iter()
            .filter_map(|v| {
                let keep = rng.gen_bool(0.3);
                let flip = rng.gen_bool(0.5);
                keep.then(|| if flip { v.negate() } else { v.clone() })
            })
            .collect();
        prop_assume!(picks.len() >= 2);
        let cfg = Configuration::new(prime(p), picks).unwrap();
        let cert = certify(&cfg).unwrap();
        if cert.is_certified() {
            let b = bound_padic_relative(cfg.n() as u64, 3, cert.gamma.unwrap(), prime(p));
            prop_assert!(b.holds);
            prop_assert_eq!(&bound_padic_welch(&cfg).unwrap().rhs, &b.rhs);
        }
    }
}

#[test]
fn search_results_recertify_in_isolation() {
    for p in [3u64, 5] {
        let r = run_search(&SearchSpace::new(prime(p), 3, 4)).unwrap();
        assert!(!r.found.is_empty());
        for f in &r.found {
            let again = certify(&f.configuration).unwrap();
            assert_eq!(again, f.certificate);
        }
    }
}

#[test]
fn tight_frames_by_exhaustive_search() {
    // all 4-element families of integer vectors in {-2..2}^2 with a common norm
    let pts: Vec<Vector> = (-2i64..=2)
        .flat_map(|x| (-2i64..=2).map(move |y| Vector::from_ints(&[x, y])))
        .filter(|v| !v.is_zero())
        .collect();
    let mut tight = 0;
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let fam = vec![pts[a].clone(), pts[b].clone(), pts[c].clone(), pts[d].clone()];
                    let norm = inner_product(&fam[0], &fam[0]).unwrap();
                    if fam.iter().any(|v| inner_product(v, v).unwrap() != norm) {
                        continue;
                    }
                    let cfg = Configuration::new(prime(3), fam).unwrap().with_a(norm.clone()).unwrap();
                    if let Some(bb) = check_tight_frame(&cfg).unwrap() {
                        tight += 1;
                        assert_eq!(bb * Rational::from_integer(2), Rational::from_integer(4) * norm);
                    }
                }
            }
        }
    }
    // e.g. {e1, -e1, e2, -e2} and {(1,1), (1,-1), (-1,1), (-1,-1)}
    assert!(tight > 0);
}
