//! The orange dimension formula, Hilbert series prefixes, and the checks
//! relating an orange to its projection and to its standard form.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::exactmath::binom;
use crate::projection::Orange;
use crate::splinedim::spline_dim;

/// Coefficient of `t^l` in `(1 - t)^{-m}`: `binom(l + m - 1, m - 1)`, and the
/// Kronecker delta `[l = 0]` when `m = 0`.
pub fn series_weight(l: u32, m: usize) -> u64 {
    if m == 0 {
        return u64::from(l == 0);
    }
    binom(u64::from(l) + m as u64 - 1, m as i64 - 1)
}

/// `Σ_j w(d - j) dims[j]` with `w` the weights of `(1 - t)^{-(k-i)}`.
pub fn weighted_sum(projected_dims: &[u64], k_minus_i: usize, d: u32) -> u64 {
    (0..=d).map(|j| series_weight(d - j, k_minus_i) * projected_dims[j as usize]).sum()
}

/// Dimension of `S^r_d` on an orange from spline dimensions on its
/// projection. Extremal cases: a simplex (`i = 0`) gives `binom(d + k, k)`,
/// and a vertex star (`i = k`) is its own projection.
pub fn orange_dim_formula(orange: &Orange, r: u32, d: u32) -> Result<u64> {
    let (k, i) = (orange.k(), orange.i());
    if i == 0 {
        return Ok(binom(u64::from(d) + k as u64, k as i64));
    }
    if i == k {
        return Ok(spline_dim(&orange.projected.complex, r, d)? as u64);
    }
    let dims = hilbert_prefix(&orange.projected.complex, r, d)?.coeffs;
    Ok(weighted_sum(&dims, k - i, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPrefix {
    pub r: u32,
    pub dmax: u32,
    pub coeffs: Vec<u64>,
}

/// `dim S^r_d` for `d = 0..=dmax`.
pub fn hilbert_prefix(complex: &SimplicialComplex, r: u32, dmax: u32) -> Result<HilbertPrefix> {
    let coeffs =
        (0..=dmax).into_par_iter().map(|d| spline_dim(complex, r, d).map(|n| n as u64)).collect::<Result<Vec<_>>>()?;
    Ok(HilbertPrefix { r, dmax, coeffs })
}

/// Multiplies a truncated series by `(1 - t)^m`.
pub fn times_one_minus_t_pow(series: &[u64], m: usize) -> Vec<i128> {
    (0..series.len())
        .map(|d| {
            (0..=d.min(m))
                .map(|l| {
                    let sign = if l % 2 == 0 { 1 } else { -1 };
                    sign * binom(m as u64, l as i64) as i128 * series[d - l] as i128
                })
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertCheck {
    pub r: u32,
    pub dmax: u32,
    pub k: usize,
    pub i: usize,
    pub orange: Vec<u64>,
    pub projected: Vec<u64>,
    /// `[Hilb(O) (1-t)^{k-i}]_d - [Hilb(C)]_d`.
    pub residuals: Vec<i128>,
    pub holds: bool,
}

/// Compares `Hilb(S^r(O)) (1 - t)^{k-i}` with `Hilb(S^r(C))` through degree
/// `dmax`, both sides from the cofactor system.
pub fn verify_hilbert_identity(orange: &Orange, r: u32, dmax: u32) -> Result<HilbertCheck> {
    let lhs = hilbert_prefix(&orange.complex, r, dmax)?.coeffs;
    let rhs = hilbert_prefix(&orange.projected.complex, r, dmax)?.coeffs;
    let scaled = times_one_minus_t_pow(&lhs, orange.k() - orange.i());
    let residuals: Vec<i128> = scaled.iter().zip(&rhs).map(|(a, b)| a - *b as i128).collect();
    let holds = residuals.iter().all(|&x| x == 0);
    Ok(HilbertCheck { r, dmax, k: orange.k(), i: orange.i(), orange: lhs, projected: rhs, residuals, holds })
}

/// `dim S^r_d(O) = dim S^r_d(O')` for the standard orange `O' = C * τ`.
pub fn verify_standard_orange(orange: &Orange, r: u32, d: u32) -> Result<bool> {
    let standard = orange.standard()?;
    Ok(spline_dim(&orange.complex, r, d)? == spline_dim(&standard.complex, r, d)?)
}
