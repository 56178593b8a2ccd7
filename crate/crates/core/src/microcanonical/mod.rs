//! Microcanonical ensemble over coded messages.
//!
//! `Ω(L, N)` counts the coded messages of `N` codewords whose total length is
//! exactly `L` bits. Exact tables hold arbitrary-precision counts; log-domain
//! tables hold `log2 Ω` and scale to large `N`. Both are built by appending one
//! codeword at a time and are deterministic.

mod ensemble;
mod sampling;

pub use ensemble::{
    discrete_temperature, entropy_mode, entropy_s, log2_sum_exp2, most_probable_length,
    most_probable_length_log, omega_brute, omega_exact, omega_exact_with_cap, omega_log,
    omega_rows, temperature_profile, DiscreteTemperature, EnsembleTable, EntropyTable, LogEnsembleSeries,
    LogEnsembleTable, BRUTE_FORCE_GUARD, DEFAULT_MAX_CELLS, LOG_TIE_TOLERANCE,
};
pub use sampling::{sample_messages, ChiSquareTest, FocusReport, SampleReport, MAX_FOCUS_MESSAGES};
