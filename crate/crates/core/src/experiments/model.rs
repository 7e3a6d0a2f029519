//! Target covariances of the root, moment and cumulant fluctuations.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::{hermite_coefficients, hermite_roots};
use crate::linalg::Matrix;
use crate::poly::newton::power_sums_from_elementary;
use crate::scalar::{Rational, Scalar};

/// Limit covariances at order `l` for a root law with fourth moment `m4`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CovarianceModel {
    pub ell: usize,
    pub m4: f64,
    /// `m_1..m_l` of the roots of `He_l`.
    pub hermite_moments: Vec<f64>,
    /// Moments: `(ij/4)(m4 - 1) m_i m_j`.
    pub sigma_m: Matrix,
    /// `V[i][j] = (j/l) z_i^(j-1)`.
    pub v: Matrix,
    /// Solution of `V L = I`.
    pub l: Matrix,
    /// Roots: `L^T Sigma_m L`.
    pub sigma_z: Matrix,
    /// Cumulants: `l^2 (m4 - 1)` at `(2,2)`, zero elsewhere.
    pub sigma_kappa: Matrix,
}

pub fn covariance_model(ell: usize, m4: f64) -> Result<CovarianceModel> {
    if ell == 0 {
        return Err(Error::OrderOutOfRange { order: 0, max: 0 });
    }
    if !(m4.is_finite() && m4 >= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "m4 must be >= 1, got {m4}"
        )));
    }
    // exact moments: He_l coefficients are c_j = (-1)^j e_j
    let coeffs = hermite_coefficients::<Rational>(ell);
    let elementary: Vec<Rational> = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { -c.clone() } else { c.clone() })
        .collect();
    let lf = crate::scalar::rat(ell as i64);
    let hermite_moments: Vec<f64> = power_sums_from_elementary(&elementary)
        .into_iter()
        .map(|p| (p / lf.clone()).to_f64())
        .collect();
    let z = hermite_roots(ell)?;
    let sigma_m = Matrix::from_fn(ell, ell, |i, j| {
        let (a, b) = ((i + 1) as f64, (j + 1) as f64);
        a * b / 4.0 * (m4 - 1.0) * hermite_moments[i] * hermite_moments[j]
    });
    let v = Matrix::from_fn(ell, ell, |i, j| {
        (j + 1) as f64 / ell as f64 * num_traits::Float::powi(z[i], j as i32)
    });
    let l = v.solve(&Matrix::identity(ell))?;
    let sigma_z = l.transpose().mul(&sigma_m)?.mul(&l)?;
    let mut sigma_kappa = Matrix::zeros(ell, ell);
    if ell >= 2 {
        sigma_kappa[(1, 1)] = (ell * ell) as f64 * (m4 - 1.0);
    }
    Ok(CovarianceModel {
        ell,
        m4,
        hermite_moments,
        sigma_m,
        v,
        l,
        sigma_z,
        sigma_kappa,
    })
}
