//! Newton's identities between power sums and elementary symmetric functions.
//!
//! Everything downstream of a root vector only ever needs the top `k`
//! coefficients, so these routines work on prefixes and never expand the full
//! degree-`N` product.

use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Power sums `p_1..p_k` of a root list.
pub fn power_sums_from_roots<T: Scalar>(roots: &[T], k: usize) -> Vec<T> {
    let mut sums = alloc::vec![T::zero(); k];
    for r in roots {
        let mut pow = T::one();
        for s in sums.iter_mut() {
            pow = pow * r.clone();
            *s = s.clone() + pow.clone();
        }
    }
    sums
}

/// Elementary symmetric functions `e_1..e_k` from power sums `p_1..p_k`.
///
/// `k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`.
pub fn elementary_from_power_sums<T: Scalar>(power_sums: &[T]) -> Vec<T> {
    let k = power_sums.len();
    let mut e: Vec<T> = Vec::with_capacity(k + 1);
    e.push(T::one());
    for j in 1..=k {
        let mut acc = T::zero();
        for i in 1..=j {
            let term = e[j - i].clone() * power_sums[i - 1].clone();
            if i % 2 == 1 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        e.push(acc / T::from_usize(j));
    }
    e.remove(0);
    e
}

/// Power sums `p_1..p_k` from elementary symmetric functions `e_1..e_k`.
pub fn power_sums_from_elementary<T: Scalar>(elementary: &[T]) -> Vec<T> {
    let k = elementary.len();
    let mut p: Vec<T> = Vec::with_capacity(k);
    for j in 1..=k {
        let mut acc = T::from_usize(j) * elementary[j - 1].clone();
        if j % 2 == 0 {
            acc = -acc;
        }
        for i in 1..j {
            let term = elementary[i - 1].clone() * p[j - i - 1].clone();
            if i % 2 == 1 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        p.push(acc);
    }
    p
}
