//! Canonical side: Gibbs distribution over codeword lengths.
//!
//! The canonical parameter is the inverse temperature `β = 1/T`. Symbol `x`
//! gets weight `2^(-l(x)·β)`; `β = 0` is `T = ±∞`, negative `β` is negative
//! temperature. All exponentials are taken relative to the dominant length
//! (`l_min` for `β ≥ 0`, `l_max` otherwise) so large `|β|` cannot overflow.

use std::f64::consts::LN_2;
use std::fmt;

use crate::code::{Code, LengthSpectrum};
use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::root::solve_decreasing;

/// Tolerance on `|λ(β) - target|` for [`solve_beta_for_lambda`].
pub const LAMBDA_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct InverseTemperature(f64);

impl InverseTemperature {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidArgument(format!("beta must be finite, got {beta}")));
        }
        Ok(InverseTemperature(beta))
    }

    /// `β = 1/T`; either infinite temperature maps to `β = 0`.
    pub fn from_temperature(t: f64) -> Result<Self> {
        if t == 0.0 || t.is_nan() {
            return Err(Error::InvalidArgument(format!("temperature must be nonzero, got {t}")));
        }
        Ok(InverseTemperature(if t.is_infinite() { 0.0 } else { 1.0 / t }))
    }

    pub fn beta(self) -> f64 {
        self.0
    }

    /// `T = 1/β`, with `β = 0` reported as `+inf`.
    pub fn temperature(self) -> f64 {
        if self.0 == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.0
        }
    }
}

impl fmt::Display for InverseTemperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One length level of the Gibbs distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsLevel {
    pub length: u32,
    pub degeneracy: u64,
    /// Probability of each individual symbol of this length.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GibbsState {
    pub beta: InverseTemperature,
    /// `log2 Z(β)`, finite even where `Z` itself overflows.
    pub log2_z: f64,
    pub levels: Vec<GibbsLevel>,
    /// Mean codeword length `λ(β)`.
    pub lambda: f64,
    /// Variance of the codeword length under the Gibbs pmf.
    pub variance: f64,
}

impl GibbsState {
    /// `Z(β) = Σ 2^(-l(x)·β)`; may be `inf` for large `|β|`.
    pub fn z(&self) -> f64 {
        self.log2_z.exp2()
    }

    /// Shannon entropy of the Gibbs pmf, `β·λ + log2 Z`, in bits.
    pub fn entropy(&self) -> f64 {
        self.beta.0 * self.lambda + self.log2_z
    }

    pub fn probability_of_length(&self, length: u32) -> f64 {
        self.levels
            .iter()
            .find(|lv| lv.length == length)
            .map_or(0.0, |lv| lv.probability)
    }

    /// The Gibbs pmf on the symbols of `code` (whose spectrum produced this state).
    pub fn pmf(&self, code: &Code) -> Result<Pmf> {
        Pmf::from_floats(
            code.iter()
                .map(|(s, c)| (s.clone(), self.probability_of_length(c.len()))),
        )
    }
}

pub fn gibbs_state(spectrum: &LengthSpectrum, beta: f64) -> GibbsState {
    let anchor = if beta >= 0.0 {
        spectrum.l_min()
    } else {
        spectrum.l_max()
    } as f64;
    let relative: Vec<(u32, u64, f64)> = spectrum
        .levels()
        .map(|(l, d)| (l, d, (-(l as f64 - anchor) * beta).exp2()))
        .collect();
    let sum: f64 = relative.iter().map(|&(_, d, w)| d as f64 * w).sum();
    let levels: Vec<GibbsLevel> = relative
        .iter()
        .map(|&(length, degeneracy, w)| GibbsLevel {
            length,
            degeneracy,
            probability: w / sum,
        })
        .collect();
    let lambda: f64 = levels
        .iter()
        .map(|lv| lv.length as f64 * lv.degeneracy as f64 * lv.probability)
        .sum();
    let variance = levels
        .iter()
        .map(|lv| (lv.length as f64 - lambda).powi(2) * lv.degeneracy as f64 * lv.probability)
        .sum();
    GibbsState {
        beta: InverseTemperature(beta),
        log2_z: sum.log2() - anchor * beta,
        levels,
        lambda,
        variance,
    }
}

/// Gibbs-mean codeword length `λ(β)`; strictly decreasing unless all lengths are equal.
pub fn lambda_of_beta(spectrum: &LengthSpectrum, beta: f64) -> f64 {
    gibbs_state(spectrum, beta).lambda
}

/// `dλ/dβ = -ln 2 · Var_G(l)`.
pub fn lambda_derivative(spectrum: &LengthSpectrum, beta: f64) -> f64 {
    -LN_2 * gibbs_state(spectrum, beta).variance
}

fn check_nondegenerate(spectrum: &LengthSpectrum) -> Result<()> {
    if spectrum.is_degenerate() {
        Err(Error::DegenerateSpectrum)
    } else {
        Ok(())
    }
}

/// The `β` with `λ(β) = lambda_target`, for `l_min < lambda_target < l_max`.
pub fn solve_beta_for_lambda(
    spectrum: &LengthSpectrum,
    lambda_target: f64,
) -> Result<InverseTemperature> {
    check_nondegenerate(spectrum)?;
    let (lo, hi) = (spectrum.l_min() as f64, spectrum.l_max() as f64);
    if !(lambda_target > lo && lambda_target < hi) {
        return Err(Error::InfeasibleMeanLength {
            target: lambda_target,
            lo,
            hi,
        });
    }
    let root = solve_decreasing(
        |beta| {
            let g = gibbs_state(spectrum, beta);
            (g.lambda, -LN_2 * g.variance)
        },
        lambda_target,
        LAMBDA_TOLERANCE,
    )?;
    InverseTemperature::new(root.x)
}

/// Leading-order entropy `N·H(G(β))` with `λ(β) = L/N`, in bits.
pub fn boltzmann_planck_entropy(spectrum: &LengthSpectrum, length: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let beta = solve_beta_for_lambda(spectrum, length / n as f64)?;
    Ok(n as f64 * gibbs_state(spectrum, beta.beta()).entropy())
}
