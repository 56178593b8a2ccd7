use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::code::{Code, LengthSpectrum};
use crate::error::{Error, Result};
use crate::log2_big;

/// Default cap on `N·(l_max - l_min)` for exact tables.
pub const DEFAULT_MAX_CELLS: u64 = 1_000_000;

/// Default guard on `|H|^N` for brute-force enumeration.
pub const BRUTE_FORCE_GUARD: u64 = 10_000_000;

/// Values of `log2 Ω` closer than this to the maximum count as ties.
pub const LOG_TIE_TOLERANCE: f64 = 1e-9;

/// Common read access to exact and log-domain ensemble tables.
pub trait EntropyTable {
    /// Number of codewords per message, `N`.
    fn message_count(&self) -> usize;

    /// `N·l_min`.
    fn min_length(&self) -> u64;

    /// `N·l_max`.
    fn max_length(&self) -> u64;

    /// `log2 Ω(L, N)`, or `None` when `L` is not achievable.
    fn log2_omega(&self, length: u64) -> Option<f64>;

    /// Achievable lengths in increasing order.
    fn support(&self) -> Vec<u64> {
        (self.min_length()..=self.max_length())
            .filter(|&l| self.log2_omega(l).is_some())
            .collect()
    }
}

/// Exact `Ω(L, N)` for one `N`, indexed by `L - N·l_min`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleTable {
    n: usize,
    min_length: u64,
    omega: Vec<BigUint>,
}

impl EnsembleTable {
    /// The empty message: `Ω(0, 0) = 1`.
    pub fn empty_message() -> Self {
        EnsembleTable {
            n: 0,
            min_length: 0,
            omega: vec![BigUint::one()],
        }
    }

    /// Appends one codeword: convolves with `Σ_l d(l) z^l`.
    pub fn extend(&self, spectrum: &LengthSpectrum) -> Self {
        let l_min = spectrum.l_min() as u64;
        let span = (spectrum.l_max() - spectrum.l_min()) as usize;
        let mut omega = vec![BigUint::zero(); self.omega.len() + span];
        for (l, d) in spectrum.levels() {
            let offset = (l as u64 - l_min) as usize;
            let d = BigUint::from(d);
            for (i, w) in self.omega.iter().enumerate() {
                if !w.is_zero() {
                    omega[i + offset] += w * &d;
                }
            }
        }
        EnsembleTable {
            n: self.n + 1,
            min_length: self.min_length + l_min,
            omega,
        }
    }

    /// `Ω(L, N)`; zero outside the support.
    pub fn omega(&self, length: u64) -> BigUint {
        self.index(length)
            .map(|i| self.omega[i].clone())
            .unwrap_or_default()
    }

    pub(crate) fn omega_ref(&self, length: u64) -> Option<&BigUint> {
        self.index(length)
            .map(|i| &self.omega[i])
            .filter(|w| !w.is_zero())
    }

    fn index(&self, length: u64) -> Option<usize> {
        let i = length.checked_sub(self.min_length)? as usize;
        (i < self.omega.len()).then_some(i)
    }

    /// `Σ Ω(L', N)` over `L ≤ L' ≤ L + window`.
    pub fn omega_window(&self, length: u64, window: u64) -> BigUint {
        (length..=length.saturating_add(window))
            .take_while(|&l| l <= self.max_length())
            .map(|l| self.omega(l))
            .sum()
    }

    /// `(L, Ω)` for every achievable `L`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.omega
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(move |(i, w)| (self.min_length + i as u64, w))
    }

    /// `Σ_L Ω(L, N) 2^-L` as an exact dyadic; one for Kraft-complete codes.
    pub fn probability_mass(&self) -> crate::Dyadic {
        let top = self.max_length();
        let scaled: BigUint = self
            .entries()
            .map(|(l, w)| w << (top - l) as usize)
            .sum();
        crate::Dyadic::new(scaled, top)
    }

    pub fn to_log(&self) -> LogEnsembleTable {
        LogEnsembleTable {
            n: self.n,
            min_length: self.min_length,
            log2_omega: self.omega.iter().map(log2_big).collect(),
        }
    }
}

impl EntropyTable for EnsembleTable {
    fn message_count(&self) -> usize {
        self.n
    }

    fn min_length(&self) -> u64 {
        self.min_length
    }

    fn max_length(&self) -> u64 {
        self.min_length + self.omega.len() as u64 - 1
    }

    fn log2_omega(&self, length: u64) -> Option<f64> {
        self.omega_ref(length).map(log2_big)
    }
}

fn check_capacity(spectrum: &LengthSpectrum, n: usize, cap: u64) -> Result<()> {
    let cells = (n as u64).saturating_mul((spectrum.l_max() - spectrum.l_min()) as u64);
    if cells > cap {
        return Err(Error::Capacity { cells, cap });
    }
    Ok(())
}

/// `Ω(L, N)` as the coefficients of `(Σ_l d(l) z^l)^N`, by iterated convolution.
pub fn omega_exact(spectrum: &LengthSpectrum, n: usize) -> Result<EnsembleTable> {
    omega_exact_with_cap(spectrum, n, DEFAULT_MAX_CELLS)
}

pub fn omega_exact_with_cap(spectrum: &LengthSpectrum, n: usize, cap: u64) -> Result<EnsembleTable> {
    Ok(omega_rows_with_cap(spectrum, n, cap)?.pop().unwrap())
}

/// Tables for every message length `0..=n`.
pub fn omega_rows(spectrum: &LengthSpectrum, n: usize) -> Result<Vec<EnsembleTable>> {
    omega_rows_with_cap(spectrum, n, DEFAULT_MAX_CELLS)
}

fn omega_rows_with_cap(spectrum: &LengthSpectrum, n: usize, cap: u64) -> Result<Vec<EnsembleTable>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    check_capacity(spectrum, n, cap)?;
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(EnsembleTable::empty_message());
    for _ in 0..n {
        let next = rows.last().unwrap().extend(spectrum);
        rows.push(next);
    }
    Ok(rows)
}

/// Enumerates all `|H|^N` messages and tallies their coded lengths.
pub fn omega_brute(code: &Code, n: usize) -> Result<EnsembleTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let lengths: Vec<u64> = code.iter().map(|(_, c)| c.len() as u64).collect();
    let messages = (lengths.len() as f64).powi(n as i32);
    if messages > BRUTE_FORCE_GUARD as f64 {
        return Err(Error::BruteForceGuard {
            messages,
            guard: BRUTE_FORCE_GUARD,
        });
    }
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    let mut digits = vec![0usize; n];
    'odometer: loop {
        let total: u64 = digits.iter().map(|&i| lengths[i]).sum();
        *tally.entry(total).or_insert(0) += 1;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < lengths.len() {
                continue 'odometer;
            }
            *d = 0;
        }
        break;
    }
    let l_min = *lengths.iter().min().unwrap();
    let l_max = *lengths.iter().max().unwrap();
    let min_length = n as u64 * l_min;
    let mut omega = vec![BigUint::zero(); (n as u64 * (l_max - l_min)) as usize + 1];
    for (l, count) in tally {
        omega[(l - min_length) as usize] = BigUint::from(count);
    }
    Ok(EnsembleTable {
        n,
        min_length,
        omega,
    })
}

/// `log2 Ω(L, N)` for one `N`; `-inf` marks unachievable lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct LogEnsembleTable {
    n: usize,
    min_length: u64,
    log2_omega: Vec<f64>,
}

impl LogEnsembleTable {
    pub fn empty_message() -> Self {
        LogEnsembleTable {
            n: 0,
            min_length: 0,
            log2_omega: vec![0.0],
        }
    }

    /// Appends one codeword, combining terms with a max-shifted log-sum-exp.
    pub fn extend(&self, spectrum: &LengthSpectrum) -> Self {
        let l_min = spectrum.l_min() as u64;
        let span = (spectrum.l_max() - spectrum.l_min()) as usize;
        let levels: Vec<(usize, f64)> = spectrum
            .levels()
            .map(|(l, d)| ((l as u64 - l_min) as usize, (d as f64).log2()))
            .collect();
        let len = self.log2_omega.len() + span;
        let mut terms = Vec::with_capacity(levels.len());
        let log2_omega = (0..len)
            .map(|i| {
                terms.clear();
                terms.extend(levels.iter().filter_map(|&(offset, log_d)| {
                    let j = i.checked_sub(offset)?;
                    let v = *self.log2_omega.get(j)?;
                    (v > f64::NEG_INFINITY).then_some(v + log_d)
                }));
                log2_sum_exp2(&terms)
            })
            .collect();
        LogEnsembleTable {
            n: self.n + 1,
            min_length: self.min_length + l_min,
            log2_omega,
        }
    }

    /// `(L, log2 Ω)` for every achievable `L`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.log2_omega
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(move |(i, &v)| (self.min_length + i as u64, v))
    }
}

impl EntropyTable for LogEnsembleTable {
    fn message_count(&self) -> usize {
        self.n
    }

    fn min_length(&self) -> u64 {
        self.min_length
    }

    fn max_length(&self) -> u64 {
        self.min_length + self.log2_omega.len() as u64 - 1
    }

    fn log2_omega(&self, length: u64) -> Option<f64> {
        let i = length.checked_sub(self.min_length)? as usize;
        self.log2_omega.get(i).copied().filter(|v| v.is_finite())
    }
}

/// `log2 Σ 2^t`; `-inf` for an empty slice.
pub fn log2_sum_exp2(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + pairwise_sum(terms, max).log2()
}

fn pairwise_sum(terms: &[f64], shift: f64) -> f64 {
    if terms.len() <= 8 {
        return terms.iter().map(|&t| (t - shift).exp2()).sum();
    }
    let (a, b) = terms.split_at(terms.len() / 2);
    pairwise_sum(a, shift) + pairwise_sum(b, shift)
}

/// Log-domain table for `n` codewords.
pub fn omega_log(spectrum: &LengthSpectrum, n: usize) -> Result<LogEnsembleTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    Ok(LogEnsembleSeries::new(spectrum).nth(n - 1).unwrap())
}

/// Log-domain tables for `N = 1, 2, 3, ...`, each built from the previous one.
#[derive(Debug, Clone)]
pub struct LogEnsembleSeries<'a> {
    spectrum: &'a LengthSpectrum,
    current: LogEnsembleTable,
}

impl<'a> LogEnsembleSeries<'a> {
    pub fn new(spectrum: &'a LengthSpectrum) -> Self {
        LogEnsembleSeries {
            spectrum,
            current: LogEnsembleTable::empty_message(),
        }
    }
}

impl Iterator for LogEnsembleSeries<'_> {
    type Item = LogEnsembleTable;

    fn next(&mut self) -> Option<LogEnsembleTable> {
        self.current = self.current.extend(self.spectrum);
        Some(self.current.clone())
    }
}

/// `S(L, N) = log2 Ω(L, N)`, in bits.
pub fn entropy_s(table: &impl EntropyTable, length: u64) -> Result<f64> {
    table.log2_omega(length).ok_or(Error::OutsideSupport {
        length,
        n: table.message_count(),
    })
}

/// Discrete temperature from the nearest achievable neighbours of `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteTemperature {
    /// `T`; `±inf` when the entropy difference vanishes.
    pub value: f64,
    /// Set when `L` sits on the support boundary and a one-sided difference was used.
    pub one_sided: bool,
}

/// `T = ΔL / ΔS` between the achievable neighbours `L₋ < L < L₊`.
///
/// At the support boundary the one-sided difference against the single
/// neighbour is used and flagged. A zero entropy difference gives `+inf`
/// (the `β → 0⁺` side).
pub fn discrete_temperature(table: &impl EntropyTable, length: u64) -> Result<DiscreteTemperature> {
    entropy_s(table, length)?;
    let support = table.support();
    let pos = support.binary_search(&length).expect("length is in the support");
    temperature_at(table, &support, pos).ok_or(Error::DegenerateSpectrum)
}

/// [`discrete_temperature`] at every achievable length; `None` for a one-point support.
pub fn temperature_profile(table: &impl EntropyTable) -> Vec<(u64, Option<DiscreteTemperature>)> {
    let support = table.support();
    (0..support.len())
        .map(|pos| (support[pos], temperature_at(table, &support, pos)))
        .collect()
}

fn temperature_at(table: &impl EntropyTable, support: &[u64], pos: usize) -> Option<DiscreteTemperature> {
    let entropy = |l: u64| table.log2_omega(l).expect("support entry");
    let length = support[pos];
    let below = pos.checked_sub(1).map(|i| support[i]);
    let above = support.get(pos + 1).copied();
    let (lo, hi, one_sided) = match (below, above) {
        (Some(lo), Some(hi)) => (lo, hi, false),
        (None, Some(hi)) => (length, hi, true),
        (Some(lo), None) => (lo, length, true),
        (None, None) => return None,
    };
    let ds = entropy(hi) - entropy(lo);
    let value = if ds == 0.0 {
        f64::INFINITY
    } else {
        (hi - lo) as f64 / ds
    };
    Some(DiscreteTemperature { value, one_sided })
}

/// `argmax_L 2^-L Ω(L, N)`, compared exactly as `Ω(L, N)·2^(L_top - L)`; ties go to the smallest `L`.
pub fn most_probable_length(table: &EnsembleTable) -> u64 {
    let top = table.max_length();
    let mut best: Option<(u64, BigUint)> = None;
    for (l, w) in table.entries() {
        let weight = w << (top - l) as usize;
        if best.as_ref().is_none_or(|(_, b)| weight > *b) {
            best = Some((l, weight));
        }
    }
    best.expect("tables have non-empty support").0
}

/// Log-domain `argmax_L (log2 Ω(L, N) - L)`; values within [`LOG_TIE_TOLERANCE`] tie to the smallest `L`.
pub fn most_probable_length_log(table: &LogEnsembleTable) -> u64 {
    let scores: Vec<(u64, f64)> = table.entries().map(|(l, v)| (l, v - l as f64)).collect();
    let max = scores.iter().map(|&(_, s)| s).fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .find(|&&(_, s)| s >= max - LOG_TIE_TOLERANCE)
        .expect("tables have non-empty support")
        .0
}

/// `argmax_L S(L, N)`, ties to the smallest `L`.
pub fn entropy_mode(table: &impl EntropyTable) -> u64 {
    let support = table.support();
    let mut best = (support[0], f64::NEG_INFINITY);
    for l in support {
        let s = table.log2_omega(l).unwrap();
        if s > best.1 {
            best = (l, s);
        }
    }
    best.0
}
