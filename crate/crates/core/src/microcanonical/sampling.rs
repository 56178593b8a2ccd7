use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::microcanonical::ensemble::omega_exact;
use crate::pmf::{is_absolutely_optimal, Pmf};

/// Largest `Ω(focus_L, N)` for which per-message counts are kept.
pub const MAX_FOCUS_MESSAGES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub message_count: usize,
    pub draws: u64,
    /// Total coded length -> number of draws.
    pub histogram: BTreeMap<u64, u64>,
    pub focus: Option<FocusReport>,
}

/// Draws conditioned on one total coded length.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusReport {
    pub length: u64,
    /// `Ω(length, N)`: number of distinct coded messages of this length.
    pub omega: u64,
    /// Coded message -> count, for messages that were drawn at least once.
    pub conditional_counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub p_value: f64,
}

impl SampleReport {
    /// Empirical mean of `L / N`.
    pub fn mean_length_per_symbol(&self) -> f64 {
        let total: f64 = self
            .histogram
            .iter()
            .map(|(&l, &c)| l as f64 * c as f64)
            .sum();
        total / (self.draws as f64 * self.message_count as f64)
    }
}

impl FocusReport {
    pub fn conditional_draws(&self) -> u64 {
        self.conditional_counts.values().sum()
    }

    /// Pearson chi-square of the conditional counts against the uniform law on
    /// all `Ω` coded messages of the focus length (unseen messages count as zero).
    pub fn chi_square_uniformity(&self) -> ChiSquareTest {
        let draws = self.conditional_draws() as f64;
        let expected = draws / self.omega as f64;
        let seen: f64 = self
            .conditional_counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let unseen = (self.omega - self.conditional_counts.len() as u64) as f64 * expected;
        let statistic = seen + unseen;
        let degrees_of_freedom = self.omega.saturating_sub(1).max(1);
        let p_value = ChiSquared::new(degrees_of_freedom as f64)
            .map(|d| d.sf(statistic))
            .unwrap_or(f64::NAN);
        ChiSquareTest {
            statistic,
            degrees_of_freedom,
            p_value,
        }
    }
}

/// Draws `draws` i.i.d. messages of `n` symbols from `pmf` and records total coded lengths.
///
/// With `focus_length` set, and when the code is absolutely optimal for `pmf`
/// with `Ω(focus_length, n) ≤ MAX_FOCUS_MESSAGES`, per-message counts among the
/// draws of that total length are kept as well.
pub fn sample_messages(
    code: &Code,
    pmf: &Pmf,
    n: usize,
    draws: u64,
    seed: u64,
    focus_length: Option<u64>,
) -> Result<SampleReport> {
    if draws == 0 || n == 0 {
        return Err(Error::InvalidArgument("draws and N must be at least 1".into()));
    }
    let optimal = is_absolutely_optimal(code, pmf)?;
    let weights: Vec<f64> = code.symbols().map(|s| pmf.get(s).unwrap()).collect();
    let lengths: Vec<u64> = code.iter().map(|(_, c)| c.len() as u64).collect();
    let picker = WeightedIndex::new(&weights).map_err(|e| Error::InvalidPmf(e.to_string()))?;

    let mut focus = match focus_length {
        Some(length) if optimal => {
            let omega = omega_exact(&code.spectrum(), n)?.omega(length);
            omega
                .to_u64()
                .filter(|&w| w <= MAX_FOCUS_MESSAGES && w > 0)
                .map(|omega| FocusReport {
                    length,
                    omega,
                    conditional_counts: BTreeMap::new(),
                })
        }
        _ => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    let mut message = vec![0usize; n];
    for _ in 0..draws {
        let mut total = 0;
        for slot in message.iter_mut() {
            *slot = picker.sample(&mut rng);
            total += lengths[*slot];
        }
        *histogram.entry(total).or_insert(0) += 1;
        if let Some(f) = focus.as_mut().filter(|f| f.length == total) {
            let coded = code.encode(message.iter().map(|&i| &code.entry(i).0))?;
            *f.conditional_counts.entry(coded).or_insert(0) += 1;
        }
    }
    Ok(SampleReport {
        message_count: n,
        draws,
        histogram,
        focus,
    })
}
