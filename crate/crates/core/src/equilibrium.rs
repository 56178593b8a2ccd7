//! Thermal equilibrium between two codes sharing a total coded length.
//!
//! The most probable split `L = L_I + L_II` maximizes `Ω_I(L_I)·Ω_II(L_II)`,
//! which in the continuum equates the two temperatures. With a common `β` this
//! is the single monotone equation `N_I·λ_I(β) + N_II·λ_II(β) = L`.

use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::code::LengthSpectrum;
use crate::error::{Error, Result};
use crate::gibbs::{gibbs_state, InverseTemperature};
use crate::microcanonical::omega_exact;
use crate::root::solve_decreasing;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoCodeSystem {
    pub spectrum_i: LengthSpectrum,
    pub n_i: usize,
    pub spectrum_ii: LengthSpectrum,
    pub n_ii: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    pub l_i_star: f64,
    pub l_ii_star: f64,
    pub beta_star: InverseTemperature,
    /// `N_I·λ_I(β*) + N_II·λ_II(β*) - L`.
    pub residual: f64,
    /// Closed range of total lengths `[min, max]`; equilibrium needs `L` strictly inside.
    pub feasible_range: (u64, u64),
}

/// One candidate split in the brute-force scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub l_i: u64,
    pub l_ii: u64,
    pub omega_i: BigUint,
    pub omega_ii: BigUint,
    pub product: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceAllocation {
    /// Argmax of the product; ties go to the smallest `L_I`.
    pub l_i: u64,
    /// Every split with both parts achievable, in increasing `L_I`.
    pub splits: Vec<Split>,
}

impl TwoCodeSystem {
    pub fn new(
        spectrum_i: LengthSpectrum,
        n_i: usize,
        spectrum_ii: LengthSpectrum,
        n_ii: usize,
    ) -> Result<Self> {
        if n_i == 0 || n_ii == 0 {
            return Err(Error::InvalidArgument("N_I and N_II must be at least 1".into()));
        }
        Ok(TwoCodeSystem {
            spectrum_i,
            n_i,
            spectrum_ii,
            n_ii,
        })
    }

    pub fn feasible_range(&self) -> (u64, u64) {
        let lo = self.n_i as u64 * self.spectrum_i.l_min() as u64
            + self.n_ii as u64 * self.spectrum_ii.l_min() as u64;
        let hi = self.n_i as u64 * self.spectrum_i.l_max() as u64
            + self.n_ii as u64 * self.spectrum_ii.l_max() as u64;
        (lo, hi)
    }

    /// Spacing of the achievable `L_I` values for a fixed total: the lcm of both
    /// lattice steps, ignoring a degenerate side. Zero when both are degenerate.
    pub fn split_lattice_step(&self) -> u64 {
        let (a, b) = (self.spectrum_i.lattice_step(), self.spectrum_ii.lattice_step());
        match (a, b) {
            (0, g) | (g, 0) => g,
            (a, b) => a.lcm(&b),
        }
    }

    /// `N_I·λ_I(β) + N_II·λ_II(β)` and its derivative in `β`.
    pub fn total_mean_length(&self, beta: f64) -> (f64, f64) {
        let gi = gibbs_state(&self.spectrum_i, beta);
        let gii = gibbs_state(&self.spectrum_ii, beta);
        let ni = self.n_i as f64;
        let nii = self.n_ii as f64;
        (
            ni * gi.lambda + nii * gii.lambda,
            -LN_2 * (ni * gi.variance + nii * gii.variance),
        )
    }
}

/// Common `β*` and the split `L_I* = N_I·λ_I(β*)`, `L_II* = N_II·λ_II(β*)`.
pub fn solve_equilibrium(system: &TwoCodeSystem, total: f64) -> Result<Allocation> {
    if system.spectrum_i.is_degenerate() && system.spectrum_ii.is_degenerate() {
        return Err(Error::DegenerateSpectrum);
    }
    let feasible_range = system.feasible_range();
    let (lo, hi) = (feasible_range.0 as f64, feasible_range.1 as f64);
    if !(total > lo && total < hi) {
        return Err(Error::InfeasibleTotalLength { total, lo, hi });
    }
    let tol = 1e-12 * total.max(1.0);
    let root = solve_decreasing(|beta| system.total_mean_length(beta), total, tol)?;
    let beta = root.x;
    let l_i_star = system.n_i as f64 * gibbs_state(&system.spectrum_i, beta).lambda;
    let l_ii_star = system.n_ii as f64 * gibbs_state(&system.spectrum_ii, beta).lambda;
    Ok(Allocation {
        l_i_star,
        l_ii_star,
        beta_star: InverseTemperature::new(beta)?,
        residual: l_i_star + l_ii_star - total,
        feasible_range,
    })
}

/// Scans every integer split of `total` and maximizes `Ω_I(L_I)·Ω_II(L - L_I)` exactly.
pub fn brute_force_allocation(system: &TwoCodeSystem, total: u64) -> Result<BruteForceAllocation> {
    let table_i = omega_exact(&system.spectrum_i, system.n_i)?;
    let table_ii = omega_exact(&system.spectrum_ii, system.n_ii)?;
    let mut splits = Vec::new();
    for (l_i, omega_i) in table_i.entries() {
        let Some(l_ii) = total.checked_sub(l_i) else {
            break;
        };
        let omega_ii = table_ii.omega(l_ii);
        if omega_ii == BigUint::default() {
            continue;
        }
        splits.push(Split {
            l_i,
            l_ii,
            omega_i: omega_i.clone(),
            product: omega_i * &omega_ii,
            omega_ii,
        });
    }
    let mut best: Option<&Split> = None;
    for s in &splits {
        if best.is_none_or(|b| s.product > b.product) {
            best = Some(s);
        }
    }
    let l_i = best.ok_or(Error::NoAchievableSplit(total))?.l_i;
    Ok(BruteForceAllocation { l_i, splits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::lambda_of_beta;

    fn spectrum(lengths: &[u32]) -> LengthSpectrum {
        LengthSpectrum::from_lengths(lengths.iter().copied()).unwrap()
    }

    fn system(a: &[u32], n_i: usize, b: &[u32], n_ii: usize) -> TwoCodeSystem {
        TwoCodeSystem::new(spectrum(a), n_i, spectrum(b), n_ii).unwrap()
    }

    #[test]
    fn symmetric_split_is_even() {
        let sys = system(&[1, 3, 3, 3, 4, 4], 7, &[1, 3, 3, 3, 4, 4], 7);
        for total in [15.0, 30.5, 40.0, 55.0] {
            let a = solve_equilibrium(&sys, total).unwrap();
            assert!((a.l_i_star - total / 2.0).abs() < 1e-9);
            assert!((a.l_ii_star - total / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn unit_temperature_split() {
        let n = 10;
        let sys = system(&[1, 2, 2], n, &[1, 3, 3, 3, 3], n);
        let a = solve_equilibrium(&sys, 3.5 * n as f64).unwrap();
        assert!((a.beta_star.beta() - 1.0).abs() < 1e-10);
        assert!((a.l_i_star - 1.5 * n as f64).abs() < 1e-9);
        assert!((a.l_ii_star - 2.0 * n as f64).abs() < 1e-9);
    }

    #[test]
    fn shorter_total_is_colder() {
        let sys = system(&[1, 2, 2], 10, &[1, 3, 3, 3, 3], 10);
        let a = solve_equilibrium(&sys, 34.0).unwrap();
        let beta = a.beta_star.beta();
        // β = 1 gives L = 35; a shorter total needs a larger β.
        assert!(beta > 1.0);
        let check = 10.0 * lambda_of_beta(&sys.spectrum_i, beta)
            + 10.0 * lambda_of_beta(&sys.spectrum_ii, beta);
        assert!((check - 34.0).abs() <= 1e-9);
        assert!((a.l_i_star + a.l_ii_star - 34.0).abs() <= 1e-9);
    }

    #[test]
    fn infeasible_and_degenerate() {
        let sys = system(&[1, 2, 2], 2, &[1, 3, 3, 3, 3], 1);
        assert!(matches!(
            solve_equilibrium(&sys, 3.0),
            Err(Error::InfeasibleTotalLength { .. })
        ));
        assert!(solve_equilibrium(&sys, 7.0).is_err());
        let flat = system(&[2, 2], 2, &[1, 1], 3);
        assert!(matches!(solve_equilibrium(&flat, 6.0), Err(Error::DegenerateSpectrum)));
        // One degenerate side reduces to the single-code solver.
        let half = system(&[2, 2, 2, 2], 3, &[1, 2, 2], 2);
        let a = solve_equilibrium(&half, 9.0).unwrap();
        assert_eq!(a.l_i_star, 6.0);
        assert!((a.beta_star.beta() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn brute_force_examples() {
        // L_I ∈ {2, 3, 4} and L_II ∈ {1, 3}; for L = 6 only (3, 3) is achievable.
        let sys = system(&[1, 2, 2], 2, &[1, 3, 3, 3, 3], 1);
        let b = brute_force_allocation(&sys, 6).unwrap();
        assert_eq!(b.l_i, 3);
        assert_eq!(b.splits.len(), 1);
        assert_eq!(b.splits[0].product, BigUint::from(16u32));

        let b = brute_force_allocation(&sys, 5).unwrap();
        let products: Vec<(u64, u64)> = b
            .splits
            .iter()
            .map(|s| (s.l_i, u64::try_from(&s.product).unwrap()))
            .collect();
        assert_eq!(products, [(2, 4), (4, 4)]);
        assert_eq!(b.l_i, 2);

        let sym = system(&[1, 2, 2], 4, &[1, 2, 2], 4);
        assert_eq!(brute_force_allocation(&sym, 12).unwrap().l_i, 6);
        assert!(matches!(
            brute_force_allocation(&sys, 100),
            Err(Error::NoAchievableSplit(100))
        ));
    }

    #[test]
    fn small_blocks_split_away_from_the_mean() {
        // Ω_I = 1, 1, 1, 2 at L_I = 1..4 and Ω_II = 7, 4, 3, 2 at L_II = 6..3,
        // so the products are 7, 4, 3, 4: the exact argmax is L_I = 1 while
        // N_I·λ_I(β*) is above 2, more than one lattice step away.
        let sys = system(&[1, 2, 3, 4, 4], 1, &[1, 2, 3, 4, 5, 5], 2);
        let b = brute_force_allocation(&sys, 7).unwrap();
        let products: Vec<u64> = b.splits.iter().map(|s| u64::try_from(&s.product).unwrap()).collect();
        assert_eq!(products, [7, 4, 3, 4]);
        assert_eq!(b.l_i, 1);
        let a = solve_equilibrium(&sys, 7.0).unwrap();
        assert!(a.l_i_star > 2.0 && a.l_i_star < 2.5);
        assert_eq!(sys.split_lattice_step(), 1);
    }

    #[test]
    fn lattice_steps() {
        assert_eq!(system(&[1, 2, 2], 2, &[1, 3, 3, 3, 3], 1).split_lattice_step(), 2);
        assert_eq!(system(&[2, 2], 2, &[1, 3, 3, 3, 3], 1).split_lattice_step(), 2);
        assert_eq!(system(&[2, 2], 2, &[1, 1], 1).split_lattice_step(), 0);
    }
}
