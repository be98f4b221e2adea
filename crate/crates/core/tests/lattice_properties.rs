use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use surfdyn::exact::{char_poly, frac, radius_interval, IntMatrix, Precision, QuadraticSurd};
use surfdyn::lattice::{
    classify_isometry, cone_reduce, construct_hyperbolic_isometry, parabolic_invariant_line, periodic_class_test,
    volume_growth, GramLattice, GrowthReport, IsometryType, LatticeClass,
};
use surfdyn::surfaces::{involution_word, InvolutionModel, Surface222Model};

fn int_matrix(n: usize, v: &[i64]) -> IntMatrix {
    let rows: Vec<&[i64]> = v.chunks(n).collect();
    IntMatrix::from_i64(&rows)
}

fn golden_cat() -> surfdyn::lattice::LatticeIsometry {
    let l = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
    construct_hyperbolic_isometry(&l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_hamilton(n in 1usize..=4, v in prop::collection::vec(-6i64..=6, 16)) {
        let m = int_matrix(n, &v[..n * n]).to_rat();
        let p = char_poly(&m).unwrap();
        prop_assert_eq!(p.degree(), Some(n));
        let z = p.eval_matrix(&m);
        prop_assert!(z.entries().iter().all(Zero::is_zero));
    }

    #[test]
    fn two_by_two_radius_encloses_float_root(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9) {
        let tr = (a + d) as f64;
        let det = (a * d - b * c) as f64;
        let disc = tr * tr - 4.0 * det;
        let rho = if disc >= 0.0 {
            ((tr + disc.sqrt()) / 2.0).abs().max(((tr - disc.sqrt()) / 2.0).abs())
        } else {
            det.abs().sqrt()
        };
        let iv = radius_interval(&int_matrix(2, &[a, b, c, d]).to_rat(), Precision(80)).unwrap();
        let slack = 1e-9 * (1.0 + rho);
        prop_assert!(iv.to_f64() - slack <= rho && rho <= iv.to_f64() + slack, "{} vs {}", iv.to_f64(), rho);
    }

    #[test]
    fn surd_satisfies_its_minimal_polynomial(a in -20i64..=20, b in 1i64..=9, d in 2i64..=30, q in 1i64..=4) {
        let s = QuadraticSurd::new(frac(a, q), frac(b, q), BigInt::from(d));
        let p = s.min_poly();
        // p(s) evaluated in ℚ(√d)
        let mut acc = QuadraticSurd::rational(BigRational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&s).add(&QuadraticSurd::rational(c.clone()));
        }
        prop_assert!(acc.a().is_zero() && acc.b().is_zero());
        match s.inv() {
            Some(i) => prop_assert!(s.mul(&i).sub(&QuadraticSurd::rational(frac(1, 1))).signum() == 0),
            None => prop_assert_eq!(s.signum(), 0),
        }
    }

    #[test]
    fn cone_reduction_lands_in_the_domain(x in -100i64..=100, y in -100i64..=100) {
        let iso = golden_cat();
        let l = &iso.lattice;
        let c = LatticeClass::from_i64(&[x, y]);
        prop_assume!(l.in_positive_cone(&c));
        let t1 = LatticeClass::from_i64(&[1, 0]);
        prop_assume!(l.in_positive_cone(&t1));
        let t2 = t1.apply(&iso.matrix);
        let r = cone_reduce(&iso, &c, (&t1, &t2)).unwrap();
        prop_assert!(r.k.0.is_positive() && !r.k.1.is_negative());
        let m = if r.n >= 0 { iso.matrix.pow(r.n as u64) } else { iso.matrix.inverse().unwrap().pow((-r.n) as u64) };
        prop_assert_eq!(r.residual.apply(&m), c);
    }

    #[test]
    fn parabolic_line_is_stable_under_squaring(word in prop::sample::select(vec![vec![1usize, 2], vec![2, 3], vec![1, 3], vec![2, 1], vec![3, 1, 2, 1]])) {
        let s = Surface222Model::new();
        let iso = involution_word(&s, &word).unwrap();
        prop_assume!(iso.kind == IsometryType::Parabolic);
        let line = parabolic_invariant_line(&iso).unwrap();
        let sq = classify_isometry(&(&iso.matrix * &iso.matrix), s.lattice()).unwrap();
        let line2 = parabolic_invariant_line(&sq).unwrap();
        prop_assert!(line2 == line || line2 == line.neg());
        prop_assert!(s.lattice().square(&line).is_zero());
    }

    #[test]
    fn no_periodic_classes_for_the_cat_map(x in -50i64..=50, y in -50i64..=50) {
        prop_assume!((x, y) != (0, 0));
        let iso = golden_cat();
        prop_assert!(!periodic_class_test(&iso, &LatticeClass::from_i64(&[x, y])).unwrap());
    }
}

#[test]
fn loxodromic_growth_ratio_by_thirty() {
    let s = Surface222Model::new();
    let iso = involution_word(&s, &[1, 2, 3]).unwrap();
    let k = s.polarization();
    let g = volume_growth(&iso, &k, &k, 30).unwrap();
    match g.report {
        GrowthReport::Loxodromic { ratio_error, .. } => assert!(ratio_error < 1e-30, "{ratio_error}"),
        other => panic!("{other:?}"),
    }
    // exact integer recurrence from the characteristic polynomial x³ - 17x² - 17x + 1
    for w in g.values.windows(4) {
        assert_eq!(&w[3], &(BigInt::from(17) * &w[2] + BigInt::from(17) * &w[1] - &w[0]));
    }
}

#[test]
fn zero_class_is_periodic() {
    assert!(periodic_class_test(&golden_cat(), &LatticeClass::zero(2)).unwrap());
}
