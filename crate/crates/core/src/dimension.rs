//! Box-counting dimension of coded-message sets as a function of temperature.
//!
//! In the thermodynamic limit (`L, N → ∞` with `L/N = λ(β)`) the set of coded
//! messages has dimension `β + log2 Z(β) / λ(β)`. For a Kraft-complete code
//! this reaches its maximum 1 at `β = 1` and is strictly below 1 elsewhere
//! unless every codeword has the same length.

use std::str::FromStr;

use crate::code::LengthSpectrum;
use crate::error::{Error, Result};
use crate::gibbs::gibbs_state;
use crate::microcanonical::{omega_log, EntropyTable};

/// `dim(β) = β + log2 Z(β) / λ(β)`.
pub fn dim_formula(spectrum: &LengthSpectrum, beta: f64) -> f64 {
    let g = gibbs_state(spectrum, beta);
    beta + g.log2_z / g.lambda
}

/// Closed-form dimension limits in increasing order of `L/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionLimits {
    /// `T → +0`: `log2 d_min / l_min`.
    pub t_to_zero_plus: f64,
    /// `T = 1`: exactly 1 for Kraft-complete spectra.
    pub t_equal_one: f64,
    /// `T → ±∞`: `n log2 n / Σ l(x)`.
    pub t_to_infinity: f64,
    /// `T → -0`: `log2 d_max / l_max`.
    pub t_to_zero_minus: f64,
}

pub fn dim_limits(spectrum: &LengthSpectrum) -> DimensionLimits {
    let n = spectrum.n() as f64;
    DimensionLimits {
        t_to_zero_plus: (spectrum.d_min() as f64).log2() / spectrum.l_min() as f64,
        t_equal_one: if spectrum.is_complete() {
            1.0
        } else {
            dim_formula(spectrum, 1.0)
        },
        t_to_infinity: n * n.log2() / spectrum.total_length() as f64,
        t_to_zero_minus: (spectrum.d_max() as f64).log2() / spectrum.l_max() as f64,
    }
}

/// Central finite differences of `dim` with respect to `T` at `T = 1`: `(first, second)`.
pub fn dim_derivatives_at_one(spectrum: &LengthSpectrum, h: f64) -> Result<(f64, f64)> {
    if spectrum.is_degenerate() {
        return Err(Error::DegenerateSpectrum);
    }
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::InvalidArgument(format!("step {h} outside [1e-6, 1e-2]")));
    }
    let at_t = |t: f64| dim_formula(spectrum, 1.0 / t);
    let (plus, mid, minus) = (at_t(1.0 + h), at_t(1.0), at_t(1.0 - h));
    Ok(((plus - minus) / (2.0 * h), (plus - 2.0 * mid + minus) / (h * h)))
}

/// Evenly spaced `β` values `lo..=hi`, `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaGrid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Default for BetaGrid {
    fn default() -> Self {
        BetaGrid {
            lo: -5.0,
            hi: 5.0,
            count: 201,
        }
    }
}

impl BetaGrid {
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.lo],
            c => (0..c)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (c - 1) as f64)
                .collect(),
        }
    }
}

impl FromStr for BetaGrid {
    type Err = Error;

    /// Parses `LO:HI:COUNT`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid `{s}` is not LO:HI:COUNT"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(bad());
        };
        let grid = BetaGrid {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            count: count.trim().parse().map_err(|_| bad())?,
        };
        if !(grid.lo.is_finite() && grid.hi.is_finite()) || grid.lo > grid.hi || grid.count == 0 {
            return Err(bad());
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionSample {
    pub beta: f64,
    pub lambda: f64,
    pub dim: f64,
}

impl DimensionSample {
    pub fn temperature(&self) -> f64 {
        if self.beta == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.beta
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionCurve {
    pub samples: Vec<DimensionSample>,
    pub limits: DimensionLimits,
}

/// Samples `dim` on the grid plus the exact point `β = 1`, in increasing `β`.
pub fn dimension_curve(spectrum: &LengthSpectrum, grid: &BetaGrid) -> DimensionCurve {
    let mut betas = grid.points();
    betas.push(1.0);
    betas.sort_by(f64::total_cmp);
    betas.dedup();
    let samples = betas
        .into_iter()
        .map(|beta| {
            let g = gibbs_state(spectrum, beta);
            DimensionSample {
                beta,
                lambda: g.lambda,
                dim: beta + g.log2_z / g.lambda,
            }
        })
        .collect();
    DimensionCurve {
        samples,
        limits: dim_limits(spectrum),
    }
}

/// Finite-`N` counterpart `S(L, N) / L`, with `L` the achievable length nearest to `N·λ(β)`.
///
/// Returns `(L, S(L, N) / L)`. Ties between two nearest lengths go to the smaller one.
pub fn finite_size_dimension(spectrum: &LengthSpectrum, beta: f64, n: usize) -> Result<(u64, f64)> {
    let table = omega_log(spectrum, n)?;
    let target = n as f64 * gibbs_state(spectrum, beta).lambda;
    let length = table
        .support()
        .into_iter()
        .min_by(|&a, &b| (a as f64 - target).abs().total_cmp(&(b as f64 - target).abs()))
        .expect("tables have non-empty support");
    let s = table.log2_omega(length).unwrap();
    Ok((length, s / length as f64))
}
