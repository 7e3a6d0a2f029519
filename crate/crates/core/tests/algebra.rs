use finfree_core::scalar::{rat, ratio};
use finfree_core::transforms::{
    coeffs_to_cumulants, cumulants_to_coeffs, cumulants_to_coeffs_by_enumeration,
    cumulants_via_r_transform, derivative_cumulant_map, finite_free_convolve,
    finite_free_convolve_via_series, finite_free_cumulants,
};
use finfree_core::{Polynomial, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 200;

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Polynomial<Rational> {
    let roots = (0..n).map(|_| rat(rng.random_range(-5..=5))).collect();
    Polynomial::from_roots(roots).unwrap()
}

fn cases(seed: u64) -> impl Iterator<Item = (Polynomial<Rational>, Polynomial<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CASES).map(move |_| {
        let n = rng.random_range(1..=8);
        (random_poly(&mut rng, n), random_poly(&mut rng, n))
    })
}

#[test]
fn derivative_scales_cumulants() {
    for (p, _) in cases(1) {
        let n = p.degree();
        let kappa = finite_free_cumulants(&p, n).unwrap();
        for k in 1..=n {
            let d = p.normalized_derivative(k).unwrap();
            let direct = finite_free_cumulants(&d, k).unwrap();
            let mapped = derivative_cumulant_map(&kappa, k).unwrap();
            assert_eq!(direct, mapped, "k = {k}, p = {p:?}");
            for j in 1..=k {
                let expected = kappa.get(j).clone() * ratio(k as i64, n as i64).powi(j as u32 - 1);
                assert_eq!(direct.get(j), &expected);
            }
        }
    }
}

#[test]
fn cumulants_add_under_convolution() {
    for (p, q) in cases(2) {
        let n = p.degree();
        let pq = finite_free_convolve(&p, &q).unwrap();
        let (kp, kq, kpq) = (
            finite_free_cumulants(&p, n).unwrap(),
            finite_free_cumulants(&q, n).unwrap(),
            finite_free_cumulants(&pq, n).unwrap(),
        );
        for j in 1..=n {
            assert_eq!(kpq.get(j).clone(), kp.get(j).clone() + kq.get(j).clone());
        }
    }
}

#[test]
fn r_transform_matches_inversion() {
    for (p, _) in cases(3) {
        let n = p.degree();
        assert_eq!(
            cumulants_via_r_transform(&p, n).unwrap(),
            finite_free_cumulants(&p, n).unwrap()
        );
    }
}

#[test]
fn convolution_formula_matches_operator_product() {
    for (p, q) in cases(4) {
        let a = finite_free_convolve(&p, &q)
            .unwrap()
            .coefficients()
            .unwrap();
        let b = finite_free_convolve_via_series(&p, &q)
            .unwrap()
            .coefficients()
            .unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn cumulant_round_trip_and_both_partition_routes() {
    for (p, _) in cases(5) {
        let n = p.degree();
        let top = p.top_coefficients(n).unwrap();
        let kappa = coeffs_to_cumulants(&top, n).unwrap();
        assert_eq!(cumulants_to_coeffs(&kappa, n).unwrap(), top);
        assert_eq!(cumulants_to_coeffs_by_enumeration(&kappa, n).unwrap(), top);
    }
}

#[test]
fn shift_moves_only_the_first_cumulant() {
    let c = ratio(-3, 2);
    for (p, _) in cases(6) {
        let n = p.degree();
        let before = finite_free_cumulants(&p, n).unwrap();
        let by_roots = finite_free_cumulants(&p.shift_roots(c.clone()), n).unwrap();
        let by_prefix = Polynomial::from_prefix(n, p.top_coefficients(n).unwrap())
            .unwrap()
            .shift_roots(c.clone());
        let by_prefix = finite_free_cumulants(&by_prefix, n).unwrap();
        assert_eq!(by_roots, by_prefix);
        assert_eq!(by_roots.get(1).clone(), before.get(1).clone() + c.clone());
        for j in 2..=n {
            assert_eq!(by_roots.get(j), before.get(j));
        }
    }
}

#[test]
fn dilation_is_homogeneous() {
    let a = ratio(5, 3);
    for (p, _) in cases(7) {
        let n = p.degree();
        let before = finite_free_cumulants(&p, n).unwrap();
        let after = finite_free_cumulants(&p.dilate(a.clone()).unwrap(), n).unwrap();
        for j in 1..=n {
            assert_eq!(
                after.get(j).clone(),
                before.get(j).clone() * a.powi(j as u32)
            );
        }
    }
}

#[test]
fn moments_of_derivative_from_prefix_and_roots_agree() {
    for (p, _) in cases(8) {
        let n = p.degree();
        let from_prefix = Polynomial::from_prefix(n, p.top_coefficients(n).unwrap()).unwrap();
        assert_eq!(p.moments(n).unwrap(), from_prefix.moments(n).unwrap());
        assert_eq!(
            p.coefficients().unwrap(),
            from_prefix.coefficients().unwrap()
        );
    }
}
