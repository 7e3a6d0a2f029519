//! Real roots of real-rooted polynomials via companion-matrix eigenvalues.
//!
//! The companion matrix is balanced and reduced with the Francis double-shift
//! QR iteration. Eigenvalues closer than a relative `1e-4` are treated as one
//! repeated root: their mean is well conditioned even though the individual
//! eigenvalues are not, and it is refined by Newton on `p^(m-1)`. Simple roots
//! get a single Newton polish on `p`.

#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::horner;

const RADIX: f64 = 2.0;
const MAX_ITS: usize = 60;
const CLUSTER_REL: f64 = 1e-4;

/// Roots of `coeffs` (highest degree first, any non-zero leading entry),
/// sorted non-increasing.
///
/// Fails with [`Error::ComplexRoots`] when the imaginary residue exceeds
/// `1e-6 * (1 + max |c_i|)` on the monic-normalized coefficients.
pub fn real_roots_sorted(coeffs: &[f64]) -> Result<Vec<f64>> {
    let lead = *coeffs.first().ok_or(Error::EmptyRoots)?;
    if lead == 0.0 || !lead.is_finite() {
        return Err(Error::InvalidParameter(
            "leading coefficient must be finite and non-zero".into(),
        ));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("coefficients"));
    }
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let tolerance = 1e-6 * (1.0 + monic.iter().fold(0.0_f64, |m, c| m.max(c.abs())));
    if n == 1 {
        return Ok(vec![-monic[1]]);
    }

    let (wr, wi) = companion_eigenvalues(&monic)?;
    let mut eig: Vec<(f64, f64)> = wr.into_iter().zip(wi).collect();
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut roots = Vec::with_capacity(n);
    let mut residue = 0.0_f64;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n {
            let (a, b) = (eig[end - 1], eig[end]);
            let dist = (a.0 - b.0).hypot(a.1 - b.1);
            if dist > CLUSTER_REL * (1.0 + a.0.hypot(a.1)) {
                break;
            }
            end += 1;
        }
        let m = end - start;
        let re = eig[start..end].iter().map(|e| e.0).sum::<f64>() / m as f64;
        let im = eig[start..end].iter().map(|e| e.1).sum::<f64>() / m as f64;
        residue = residue.max(im.abs());
        let root = if m == 1 {
            newton_polish(&monic, re)
        } else {
            refine_cluster(&monic, re, m)
        };
        roots.extend(core::iter::repeat_n(root, m));
        start = end;
    }
    if residue > tolerance {
        return Err(Error::ComplexRoots { residue, tolerance });
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (n - i) as f64)
        .collect()
}

fn newton_polish(coeffs: &[f64], x: f64) -> f64 {
    let d = derivative(coeffs);
    let (fx, dx) = (horner(coeffs, x), horner(&d, x));
    if dx == 0.0 {
        return x;
    }
    let next = x - fx / dx;
    if next.is_finite() && horner(coeffs, next).abs() <= fx.abs() {
        next
    } else {
        x
    }
}

/// A root of multiplicity `m` is a simple root of `p^(m-1)`.
fn refine_cluster(coeffs: &[f64], center: f64, m: usize) -> f64 {
    let mut g = coeffs.to_vec();
    for _ in 1..m {
        g = derivative(&g);
    }
    let dg = derivative(&g);
    let mut x = center;
    for _ in 0..4 {
        let (fx, dx) = (horner(&g, x), horner(&dg, x));
        if dx == 0.0 {
            break;
        }
        let next = x - fx / dx;
        if !next.is_finite() || horner(&g, next).abs() >= fx.abs() {
            break;
        }
        x = next;
    }
    if (x - center).abs() <= CLUSTER_REL * (1.0 + center.abs()) {
        x
    } else {
        center
    }
}

/// Eigenvalues of the companion matrix of a monic polynomial
/// (`coeffs[0] == 1`), as real and imaginary parts.
fn companion_eigenvalues(coeffs: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = coeffs.len() - 1;
    // 1-based storage, row 0 / column 0 unused
    let mut a = vec![vec![0.0_f64; n + 1]; n + 1];
    for j in 1..=n {
        a[1][j] = -coeffs[j];
    }
    for i in 2..=n {
        a[i][i - 1] = 1.0;
    }
    balance(&mut a, n);
    hqr(&mut a, n)
}

fn balance(a: &mut [Vec<f64>], n: usize) {
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for row in a.iter_mut().take(n + 1).skip(1) {
                        row[i] *= f;
                    }
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (1-based).
#[allow(clippy::many_single_char_names)]
fn hqr(a: &mut [Vec<f64>], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
            } else {
                y = a[nn - 1][nn - 1];
                w = a[nn][nn - 1] * a[nn - 1][nn];
                if l == nn - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[nn - 1] = x + z;
                        wr[nn] = x + z;
                        if z != 0.0 {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = 0.0;
                        wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = x + p;
                        wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    nn -= 2;
                } else {
                    if its == MAX_ITS {
                        return Err(Error::NoConvergence);
                    }
                    if its == 10 || its == 20 {
                        // exceptional shift
                        t += x;
                        for i in 1..=nn {
                            a[i][i] -= x;
                        }
                        let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nn - 2;
                    loop {
                        z = a[m][m];
                        r = x - z;
                        let s0 = y - z;
                        p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s0;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        a[i][i - 2] = 0.0;
                        if i != m + 2 {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if k != nn - 1 {
                                r = a[k + 2][k - 1];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = a[k][j] + q * a[k + 1][j];
                                if k != nn - 1 {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if k != nn - 1 {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 2 || l + 1 >= nn {
                break;
            }
        }
    }
    wr.remove(0);
    wi.remove(0);
    Ok((wr, wi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn quadratics() {
        assert_eq!(
            real_roots_sorted(&[1.0, -2.0, 0.0]).unwrap(),
            vec![2.0, 0.0]
        );
        assert!(close(
            &real_roots_sorted(&[1.0, 0.0, -1.0]).unwrap(),
            &[1.0, -1.0],
            1e-15
        ));
    }

    #[test]
    fn repeated_roots_are_recovered() {
        let p = crate::poly::Polynomial::from_roots(vec![2.0, 2.0, 2.0, -1.0, -1.0]).unwrap();
        let roots = real_roots_sorted(&p.coefficients().unwrap()).unwrap();
        assert!(
            close(&roots, &[2.0, 2.0, 2.0, -1.0, -1.0], 1e-9),
            "{roots:?}"
        );
        assert_eq!(
            real_roots_sorted(&[1.0, 0.0, 0.0, 0.0]).unwrap(),
            vec![0.0; 3]
        );
    }

    #[test]
    fn complex_input_is_rejected() {
        assert!(matches!(
            real_roots_sorted(&[1.0, 0.0, 1.0]),
            Err(Error::ComplexRoots { .. })
        ));
        assert!(matches!(
            real_roots_sorted(&[1.0, -1.0, 0.0, 4.0]),
            Err(Error::ComplexRoots { .. })
        ));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(real_roots_sorted(&[3.0]).unwrap(), Vec::<f64>::new());
        assert_eq!(real_roots_sorted(&[2.0, -4.0]).unwrap(), vec![2.0]);
        assert!(real_roots_sorted(&[]).is_err());
        assert!(real_roots_sorted(&[0.0, 1.0]).is_err());
    }
}
