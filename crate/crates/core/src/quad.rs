//! Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `int_a^b f` to absolute-or-relative tolerance `tol`, bisecting the worst
/// interval until the summed error estimate falls below it.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("integration bounds"));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut parts: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = kronrod(&f, a, b);
    parts.push((a, b, v, e));
    for _ in 0..2000 {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::NonFinite("integrand"));
        }
        if err <= tol.max(tol * total.abs()) {
            return Ok(total);
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    Err(Error::Quadrature(parts.iter().map(|p| p.3).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_transcendentals() {
        assert!((integrate(|x| x * x, 0.0, 3.0, 1e-12).unwrap() - 9.0).abs() < 1e-12);
        let atan = integrate(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, 1e-12).unwrap();
        assert!((atan - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let sqrt = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((sqrt - 2.0 / 3.0).abs() < 1e-9);
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-8).unwrap(), 0.0);
    }

    #[test]
    fn singular_integrand_fails() {
        assert!(integrate(|x: f64| 1.0 / x, 0.0, 1.0, 1e-8).is_err());
    }
}
