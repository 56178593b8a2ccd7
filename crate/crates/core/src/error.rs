use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed code document: {0}")]
    Malformed(String),

    #[error("invalid symbol `{0}`: symbols must be non-empty and contain no whitespace")]
    InvalidSymbol(String),

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("invalid codeword `{codeword}` for symbol `{symbol}`: codewords are non-empty strings over '0'/'1'")]
    InvalidCodeword { symbol: String, codeword: String },

    #[error("duplicate codeword `{codeword}` shared by symbols `{first}` and `{second}`")]
    DuplicateCodeword {
        codeword: String,
        first: String,
        second: String,
    },

    #[error("prefix violation: codeword `{prefix}` of `{prefix_symbol}` is a prefix of codeword `{codeword}` of `{symbol}`")]
    PrefixViolation {
        prefix_symbol: String,
        prefix: String,
        symbol: String,
        codeword: String,
    },

    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    #[error("alphabet mismatch between code and probability mass function")]
    AlphabetMismatch,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("bits do not decode: position {position} leaves the code tree")]
    Undecodable { position: usize },

    #[error("trailing garbage after {decoded} decoded symbols: dangling bits `{dangling}`")]
    TrailingBits { decoded: usize, dangling: String },

    #[error("code is not Kraft-complete (Kraft sum {kraft}); it cannot be absolutely optimal")]
    NotComplete { kraft: String },

    #[error("leaf count must be at least 2, got {0}")]
    InvalidLeafCount(usize),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("length {length} bits is not achievable with N = {n} codewords")]
    OutsideSupport { length: u64, n: usize },

    #[error("target mean length outside ({lo}, {hi})")]
    InfeasibleMeanLength { target: f64, lo: f64, hi: f64 },

    #[error("total length {total} outside ({lo}, {hi})")]
    InfeasibleTotalLength { total: f64, lo: f64, hi: f64 },

    #[error("no achievable split of total length {0}")]
    NoAchievableSplit(u64),

    #[error("degenerate spectrum: all codewords have the same length, temperature is undefined")]
    DegenerateSpectrum,

    #[error("exact table needs {cells} cells, above the cap of {cap}; use the log-domain mode")]
    Capacity { cells: u64, cap: u64 },

    #[error("brute-force enumeration of {messages} messages exceeds the guard of {guard}")]
    BruteForceGuard { messages: f64, guard: u64 },

    #[error("root finder did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 invalid input, 2 infeasible parameter, 3 capacity guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleMeanLength { .. }
            | Error::InfeasibleTotalLength { .. }
            | Error::OutsideSupport { .. }
            | Error::NoAchievableSplit(_)
            | Error::DegenerateSpectrum
            | Error::NoConvergence { .. } => 2,
            Error::Capacity { .. } | Error::BruteForceGuard { .. } => 3,
            _ => 1,
        }
    }
}
