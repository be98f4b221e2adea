use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use surfdyn::abelian::{
    exe_lattice, is_ample, line_class, minkowski_chain_check, ns_pairing, reduce_to_triangle, RealScalar,
    ScalarField,
};
use surfdyn::birational::{degree_matrix_product, stability_check, BirationalSelfMap};
use surfdyn::crofton::{crofton_estimate, crofton_estimate_with, real_intersections, ProjectiveCurve};
use surfdyn::exact::roots::count_real_roots;
use surfdyn::exact::{frac, Interval, IntMatrix, Polynomial, Precision};
use surfdyn::lattice::{
    classify_isometry, construct_hyperbolic_isometry, represents_zero, GramLattice, LatticeClass, RepresentsZero,
};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
    IntMatrix::from_i64(&[&[a, b], &[c, d]])
}

fn det2(m: [i64; 4]) -> i64 {
    m[0] * m[3] - m[1] * m[2]
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let s = (n as f64).sqrt().round() as i64;
        (s - 1..=s + 1).any(|t| t >= 0 && t * t == n)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_counts_distinct_integer_roots(roots in prop::collection::vec(-20i64..20, 1..6), extra in 0u32..3) {
        // ∏ (x - r) · (x² + 1)^extra
        let mut p = Polynomial::one();
        for &z in &roots {
            p = &p * &Polynomial::from_ints(&[-z, 1]);
        }
        p = &p * &Polynomial::from_ints(&[1, 0, 1]).pow(extra);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(count_real_roots(&p), distinct.len());
    }

    #[test]
    fn interval_ops_enclose(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
        let (x, y) = (r(a, b), r(c, d));
        let p = Precision(64);
        let (ix, iy) = (Interval::point(x.clone()).round_out(p), Interval::point(y.clone()).round_out(p));
        prop_assert!(ix.add(&iy).contains(&(&x + &y)));
        prop_assert!(ix.mul(&iy).contains(&(&x * &y)));
        prop_assert!(ix.sub(&iy).contains(&(&x - &y)));
    }

    #[test]
    fn rank_two_isometries_preserve_gram(a in -6i64..=6, b in -9i64..=9, c in -6i64..=6) {
        let disc = b * b - 4 * a * c;
        prop_assume!(disc > 0 && !is_square(disc));
        let l = GramLattice::from_i64(&[&[2 * a, b], &[b, 2 * c]]).unwrap();
        let iso = match construct_hyperbolic_isometry(&l) {
            Ok(iso) => iso,
            Err(surfdyn::Error::SearchExhausted(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let m = &iso.matrix;
        prop_assert_eq!(&(&m.transpose() * l.gram()) * m, l.gram().clone());
        let inv = classify_isometry(&m.inverse().unwrap(), &l).unwrap();
        prop_assert_eq!(inv.kind, iso.kind);
        prop_assert!(inv.lambda.same_as(&iso.lambda));
    }

    #[test]
    fn binary_forms_represent_zero_iff_square_discriminant(a in -8i64..=8, b in -8i64..=8, c in -8i64..=8) {
        let disc = b * b - 4 * a * c;
        prop_assume!(disc > 0);
        let l = GramLattice::from_i64(&[&[2 * a, b], &[b, 2 * c]]).unwrap();
        match represents_zero(&l).unwrap() {
            RepresentsZero::Yes(v) => {
                prop_assert!(!v.is_zero());
                prop_assert!(l.square(&v).is_zero());
                prop_assert!(is_square(disc));
            }
            RepresentsZero::No => prop_assert!(!is_square(disc)),
            RepresentsZero::Unknown => prop_assert!(false, "rank two is always decided"),
        }
    }

    #[test]
    fn ternary_no_means_no_small_isotropic_vector(a in 1i64..=4, b in 1i64..=4, c in 1i64..=4) {
        // x² a - b y² - c z², diagonal of signature (1, 2)
        let l = GramLattice::from_i64(&[&[a, 0, 0], &[0, -b, 0], &[0, 0, -c]]).unwrap();
        let brute = (-12i64..=12).any(|x| (-12i64..=12).any(|y| (-12i64..=12).any(|z| {
            (x, y, z) != (0, 0, 0) && a * x * x - b * y * y - c * z * z == 0
        })));
        match represents_zero(&l).unwrap() {
            RepresentsZero::Yes(v) => prop_assert!(l.square(&v).is_zero() && !v.is_zero()),
            RepresentsZero::No => prop_assert!(!brute),
            RepresentsZero::Unknown => {}
        }
    }

    #[test]
    fn ns_pairing_is_the_polarisation_of_twice_det(b in prop::array::uniform4(-5i64..=5), c in prop::array::uniform4(-5i64..=5)) {
        // q(B) = 2 det B, so (B, C) = det(B + C) - det B - det C
        let s = [b[0] + c[0], b[1] + c[1], b[2] + c[2], b[3] + c[3]];
        let expected = det2(s) - det2(b) - det2(c);
        let (mb, mc) = (m2(b[0], b[1], b[2], b[3]), m2(c[0], c[1], c[2], c[3]));
        prop_assert_eq!(ns_pairing(&mb, &mc), BigInt::from(expected));
        prop_assert_eq!(ns_pairing(&mc, &mb), BigInt::from(expected));
        prop_assert_eq!(ns_pairing(&mb, &mb), BigInt::from(2 * det2(b)));
    }

    #[test]
    fn line_classes_meet_in_squared_determinant(a in -7i64..=7, b in -7i64..=7, c in -7i64..=7, d in -7i64..=7) {
        prop_assume!(gcd(a, b) == 1 && gcd(c, d) == 1);
        let l = exe_lattice();
        let (u, v) = (line_class(a, b).unwrap(), line_class(c, d).unwrap());
        prop_assert!(l.square(&u).is_zero());
        let n = a * d - b * c;
        prop_assert_eq!(l.pair(&u, &v), BigInt::from(n * n));
    }

    #[test]
    fn ample_classes_reduce_and_satisfy_the_chain(h in -30i64..=30, v in -30i64..=30, d in -30i64..=30) {
        let c = LatticeClass::from_i64(&[h, v, d]);
        prop_assume!(is_ample(&c).unwrap());
        let red = reduce_to_triangle(&c).unwrap();
        prop_assert!(red.k.iter().all(|k| !k.is_negative()));
        let k: Vec<i64> = red.k.iter().map(|x| i64::try_from(x).unwrap()).collect();
        let again = reduce_to_triangle(&LatticeClass::from_i64(&k)).unwrap();
        prop_assert_eq!(&again.k, &red.k);
        let field = ScalarField::new();
        let chain = minkowski_chain_check(&c, &RealScalar::from_int(1), &field, Precision(128)).unwrap();
        prop_assert!(chain.holds);
    }
}

fn twist_strategy() -> impl Strategy<Value = BirationalSelfMap> {
    (1i64..9, 2i64..11, 1i64..9, 2i64..11).prop_map(|(a, b, c, d)| BirationalSelfMap::twist(&r(a, b), &r(c, d)))
}

fn small_map() -> impl Strategy<Value = BirationalSelfMap> {
    prop_oneof![
        twist_strategy(),
        Just(BirationalSelfMap::swap()),
        Just(BirationalSelfMap::g_n(2, 1).unwrap()),
        Just(BirationalSelfMap::g_n(3, 1).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_associative(f in small_map(), g in small_map(), h in small_map()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left.components(), right.components());
        for comp in left.components() {
            prop_assert_eq!(&comp.reduce().unwrap(), comp);
        }
        prop_assert!(left.undoes(&left.inverse().unwrap()));
        prop_assert!(left.inverse().unwrap().undoes(&left));
    }

    #[test]
    fn crofton_line_counts_never_exceed_degree(coords in prop::array::uniform6(-20i64..=20)) {
        let p = [r(coords[0], 7), r(coords[1], 7), r(coords[2], 7)];
        let q = [r(coords[3], 5), r(coords[4], 5), r(coords[5], 5)];
        for curve in [ProjectiveCurve::unit_circle(), ProjectiveCurve::two_lines(), ProjectiveCurve::empty_conic()] {
            if let Ok(k) = real_intersections(&curve, &p, &q) {
                prop_assert!(k <= curve.degree());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn disjoint_indeterminacy_certifies_the_square(t in (1i64..6, 2i64..8, 1i64..6, 2i64..8)) {
        let f = BirationalSelfMap::family(2, 1, &r(t.0, t.1), &r(t.2, t.3)).unwrap();
        let s = stability_check(&f).unwrap();
        if s.disjoint {
            prop_assert!(s.certified_identity);
            prop_assert_eq!(s.degree_f2, degree_matrix_product(&s.degree_f, &s.degree_f));
        }
    }
}

#[test]
fn crofton_is_deterministic_per_seed() {
    let c = ProjectiveCurve::unit_circle();
    let a = crofton_estimate(&c, 4000, 17).unwrap();
    let b = crofton_estimate(&c, 4000, 17).unwrap();
    assert_eq!(a, b);
    let other = crofton_estimate(&c, 4000, 18).unwrap();
    assert_ne!(a.total_count, other.total_count);
}

#[test]
fn crofton_is_rotation_invariant() {
    // rotation by the Pythagorean angle with cos = 3/5 in the x₁x₂ plane,
    // and a rotation mixing x₀ with x₁
    let z = BigRational::zero;
    let o = BigRational::one;
    let rots = [
        [[o(), z(), z()], [z(), frac(3, 5), frac(-4, 5)], [z(), frac(4, 5), frac(3, 5)]],
        [[frac(5, 13), frac(-12, 13), z()], [frac(12, 13), frac(5, 13), z()], [z(), z(), o()]],
    ];
    for curve in [ProjectiveCurve::unit_circle(), ProjectiveCurve::two_lines()] {
        let base = crofton_estimate_with(&curve, 20_000, 5, 40).unwrap();
        for m in &rots {
            let moved = curve.substitute_linear(m).unwrap();
            let est = crofton_estimate_with(&moved, 20_000, 6, 40).unwrap();
            let tol = 5.0 * (base.stderr.hypot(est.stderr)).max(1e-9);
            assert!(
                (base.estimate - est.estimate).abs() <= tol,
                "{} vs {}",
                base.estimate,
                est.estimate
            );
        }
    }
}
