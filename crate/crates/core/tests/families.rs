use finfree_core::families::{hermite, hermite_coefficients, hermite_roots, laguerre_coefficients};
use finfree_core::scalar::rat;
use finfree_core::transforms::finite_free_cumulants;
use finfree_core::{Polynomial, Rational, Scalar};

#[test]
fn derivatives_of_hermite_are_hermite() {
    for l in 1..=10 {
        let he = hermite::<Rational>(l).unwrap();
        for k in 1..=l {
            let d = he.normalized_derivative(k).unwrap().coefficients().unwrap();
            assert_eq!(d, hermite_coefficients::<Rational>(k), "k = {k}, l = {l}");
        }
    }
}

#[test]
fn hermite_cumulants_are_a_single_spike() {
    for l in 1..=10 {
        let kappa = finite_free_cumulants(&hermite::<Rational>(l).unwrap(), l).unwrap();
        for j in 1..=l {
            let expected = if j == 2 { rat(l as i64) } else { rat(0) };
            assert_eq!(kappa.get(j), &expected, "j = {j}, l = {l}");
        }
    }
}

#[test]
fn laguerre_reflection_identity() {
    // (-1)^Y Y! x^(l-Y) L_Y^(l-Y) = l! (-1)^l L_l^(Y-l), compared monic
    for l in 1..=8usize {
        for y in 0..=l {
            let mut lhs = laguerre_coefficients::<Rational>(y, &rat((l - y) as i64));
            lhs.extend(core::iter::repeat_n(rat(0), l - y));
            let rhs = laguerre_coefficients::<Rational>(l, &rat(y as i64 - l as i64));
            assert_eq!(lhs, rhs, "Y = {y}, l = {l}");
        }
    }
}

#[test]
fn laguerre_is_monic_and_matches_small_cases() {
    // 2 L_2^(a) = x^2 - 2(a+2)x + (a+1)(a+2)
    let a = rat(3);
    assert_eq!(
        laguerre_coefficients::<Rational>(2, &a),
        vec![rat(1), rat(-10), rat(20)]
    );
    assert_eq!(
        laguerre_coefficients::<Rational>(1, &a),
        vec![rat(1), rat(-4)]
    );
}

#[test]
fn hermite_roots_are_symmetric_and_are_roots() {
    for l in 1..=20 {
        let r = hermite_roots(l).unwrap();
        assert_eq!(r.len(), l);
        for i in 0..l {
            assert!((r[i] + r[l - 1 - i]).abs() < 1e-10, "l = {l}");
        }
        let he: Polynomial<f64> = hermite(l).unwrap();
        let coeffs = he.coefficients().unwrap();
        for &x in &r {
            let scale: f64 = coeffs.iter().fold(0.0, |acc, c| acc * x.abs() + c.abs());
            let value = coeffs.iter().fold(0.0, |acc, c| acc * x + c);
            assert!(value.abs() <= 1e-12 * scale, "l = {l}, x = {x}");
        }
        assert!(r.windows(2).all(|w| w[0] > w[1]));
    }
}

#[test]
fn hermite_float_and_exact_agree() {
    for l in 1..=12 {
        let exact: Vec<f64> = hermite_coefficients::<Rational>(l)
            .iter()
            .map(Scalar::to_f64)
            .collect();
        assert_eq!(exact, hermite_coefficients::<f64>(l));
    }
}
