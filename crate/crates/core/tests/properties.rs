use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use symsig::bundles::{rank_degree_slope, tensor_bundles, Bundle, BundleError, BundleSum, TorsionLabel};
use symsig::lattice::{count_simplex_points, count_simplex_points_lattice, kernel_lattice, WeightRep};
use symsig::{CycloNum, Matrix, Rational, RationalPoly};

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn cyclo(n: u64) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n as usize)
        .prop_map(move |cs| CycloNum::from_power_coeffs(n, &cs.iter().map(|&(a, b)| rat(a, b)).collect::<Vec<_>>()))
}

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 4, 5, 8, 9, 12])
}

fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    conductor().prop_flat_map(|n| (cyclo(n), cyclo(n), cyclo(n)))
}

fn binary_form(d: u32) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(-5i64..=5, d as usize + 1).prop_map(move |cs| {
        let exps: Vec<[u32; 2]> = (0..=d).map(|i| [i, d - i]).collect();
        let terms: Vec<(i64, &[u32])> = cs.iter().zip(&exps).map(|(&c, e)| (c, &e[..])).collect();
        RationalPoly::from_int_terms(2, &terms)
    })
}

fn int_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_map(|v| Matrix::from_rows(vec![vec![rat(v[0], 1), rat(v[1], 1)], vec![rat(v[2], 1), rat(v[3], 1)]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            let inv = x.inverse().unwrap();
            prop_assert_eq!(&x * &inv, CycloNum::from_int(1));
        }
    }

    #[test]
    fn cyclotomic_text_round_trip((x, _, _) in triple()) {
        let back = CycloNum::parse_text(&x.to_text(), x.conductor()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn substitution_is_a_ring_action(p in binary_form(3), r in binary_form(2), m in int_matrix(), n in int_matrix()) {
        let mn = &m * &n;
        prop_assert_eq!(p.substitute_linear(&m).substitute_linear(&n), p.substitute_linear(&mn));
        prop_assert_eq!((&p * &r).substitute_linear(&m), &p.substitute_linear(&m) * &r.substitute_linear(&m));
        let image = p.substitute_linear(&m);
        prop_assert!(image.is_homogeneous());
        prop_assert!(image.is_zero() || image.degree() == Some(3));
    }

    #[test]
    fn lattice_routes_agree(n in 1u64..=30, w1 in 0u64..30, w2 in 0u64..30, t in 0u64..30, q in 0u64..80) {
        let w = WeightRep::new(n, vec![w1 % n, w2 % n]).unwrap();
        let t = t % n;
        let direct = count_simplex_points(&w, t, q).unwrap();
        prop_assert_eq!(direct, count_simplex_points_lattice(&w, t, q).unwrap());
        if t % w.weight_gcd() != 0 {
            prop_assert_eq!(direct, 0);
        }
    }

    #[test]
    fn kernel_index_is_image_size(n in 1u64..=40, w1 in 0u64..40, w2 in 0u64..40) {
        let w = WeightRep::new(n, vec![w1 % n, w2 % n]).unwrap();
        prop_assert_eq!(kernel_lattice(&w, 0).unwrap().index, n / w.weight_gcd());
    }

    #[test]
    fn tensor_conserves_rank_and_degree(
        r1 in prop::sample::select(vec![1u64, 2, 3, 4, 5, 7, 8, 9, 16]),
        r2 in prop::sample::select(vec![1u64, 2, 3, 4, 5, 7, 8, 9, 16]),
        d1 in -20i64..=20,
        d2 in -20i64..=20,
        k in 0usize..4,
    ) {
        let x = Bundle::new(r1, d1, TorsionLabel::two_torsion(k));
        let y = Bundle::atiyah(r2, d2);
        match tensor_bundles(&x, &y) {
            Ok(s) => {
                let (rank, degree, _) = rank_degree_slope(&s).unwrap();
                prop_assert_eq!(rank, r1 * r2);
                prop_assert_eq!(degree, r1 as i64 * d2 + r2 as i64 * d1);
                prop_assert_eq!(s, tensor_bundles(&y, &x).unwrap());
            }
            Err(BundleError::Unsupported(_)) => {
                let h1 = r1 / r1.gcd(&d1.unsigned_abs());
                let h2 = r2 / r2.gcd(&d2.unsigned_abs());
                prop_assert!(h1.gcd(&h2) != 1, "coprime parts {h1}, {h2} must be supported");
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn sums_are_additive(r1 in 1u64..10, r2 in 1u64..10, d1 in -10i64..10, d2 in -10i64..10) {
        let s = BundleSum::from_parts([(Bundle::atiyah(r1, d1), 1), (Bundle::atiyah(r2, d2), 2)]);
        let (rank, degree, slope) = rank_degree_slope(&s).unwrap();
        prop_assert_eq!(rank, r1 + 2 * r2);
        prop_assert_eq!(degree, d1 + 2 * d2);
        prop_assert_eq!(slope, rat(degree, rank as i64));
    }
}
