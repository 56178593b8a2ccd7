//! Command-line front end.
//!
//! Every length is in bits and every logarithm is base 2. Temperatures may be
//! given as `--temp T` or as the inverse temperature `--beta B` (`B = 1/T`);
//! `β = 0` is infinite temperature and negative values are negative
//! temperatures.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::Code;
use crate::dimension::{dim_derivatives_at_one, dim_limits, dimension_curve, BetaGrid};
use crate::document::{parse_code, write_code};
use crate::equilibrium::{brute_force_allocation, solve_equilibrium, TwoCodeSystem};
use crate::error::{Error, Result};
use crate::generate::random_complete_code;
use crate::gibbs::{gibbs_state, solve_beta_for_lambda, InverseTemperature};
use crate::microcanonical::{
    discrete_temperature, entropy_s, most_probable_length, most_probable_length_log,
    omega_exact_with_cap, omega_log, sample_messages, EntropyTable, DEFAULT_MAX_CELLS,
};
use crate::output::{self, real, temperature_of_beta, AnyEnsemble};
use crate::pmf::{average_codeword_length, dyadic_pmf, is_absolutely_optimal, shannon_entropy, Pmf};
use crate::prefix::{default_fit_range, empirical_dimension, empirical_prefix_count};

const UNITS: &str = "All lengths are in bits and all logarithms are base 2. \
Inverse temperature β = 1/T: β = 0 is T = ±∞, β > 0 is positive and β < 0 negative temperature.";

#[derive(Debug, Parser)]
#[command(name = "codetherm", version, about = "Statistical mechanics of absolutely optimal prefix codes", long_about = UNITS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a code; report Kraft sum, entropy H and average length L_X (bits), and optimality.
    #[command(long_about = UNITS)]
    Check(CheckArgs),
    /// Ensemble table CSV `L,omega,log2_omega,S,T` for N codewords (L and S in bits).
    #[command(long_about = UNITS)]
    Omega(OmegaArgs),
    /// Entropy S (bits) and discrete temperature at length L, or the most probable length L*.
    #[command(long_about = UNITS)]
    Temperature(TemperatureArgs),
    /// Gibbs state CSV `beta,T,Z,lambda,H_G` at one β (or T), or over a β grid.
    #[command(long_about = UNITS)]
    Gibbs(GibbsArgs),
    /// Inverse temperature β whose Gibbs mean length equals --lambda, or L/N.
    #[command(name = "solve-temp", long_about = UNITS)]
    SolveTemp(SolveTempArgs),
    /// Most probable split of a total length L between two codes.
    #[command(long_about = UNITS)]
    Equilibrium(EquilibriumArgs),
    /// Box-counting dimension curve CSV `beta,T,lambda,dim`, or its limits.
    #[command(long_about = UNITS)]
    Dimension(DimensionArgs),
    /// Distinct n-bit prefix counts of coded messages of length L, with fitted slope.
    #[command(long_about = UNITS)]
    Prefixes(PrefixesArgs),
    /// Monte Carlo histogram of total coded length (bits) over random messages.
    #[command(long_about = UNITS)]
    Sample(SampleArgs),
    /// Write a random Kraft-complete code document.
    #[command(long_about = UNITS)]
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Mode {
    /// Exact below the table-size cap, log-domain above it.
    #[default]
    Auto,
    Exact,
    Log,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (standard output when omitted).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CodeInput {
    /// Code document (JSON).
    #[arg(long, value_name = "FILE")]
    pub code: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: CodeInput,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// Number of codewords per message.
    #[arg(short = 'N', value_name = "INT")]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    /// Also report Ω summed over [L, L + window] bits (exact mode).
    #[arg(long, value_name = "BITS")]
    pub window: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TemperatureArgs {
    #[command(flatten)]
    pub input: CodeInput,
    #[arg(short = 'N', value_name = "INT")]
    pub n: usize,
    /// Total coded length in bits; omit to report the most probable length.
    #[arg(short = 'L', value_name = "BITS")]
    pub length: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GibbsArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// Inverse temperature β = 1/T.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["temp", "grid"])]
    pub beta: Option<f64>,
    /// Temperature T (`inf` for β = 0).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    pub temp: Option<f64>,
    /// β grid LO:HI:COUNT.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<BetaGrid>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SolveTempArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// Target Gibbs mean codeword length in bits, strictly inside (l_min, l_max).
    #[arg(long, conflicts_with_all = ["length", "n"])]
    pub lambda: Option<f64>,
    /// Total coded length in bits (with -N): target λ = L/N.
    #[arg(short = 'L', value_name = "BITS", requires = "n")]
    pub length: Option<f64>,
    #[arg(short = 'N', value_name = "INT", requires = "length")]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    /// First code document.
    #[arg(long, value_name = "FILE")]
    pub code: PathBuf,
    /// Second code document.
    #[arg(long, value_name = "FILE")]
    pub code2: PathBuf,
    /// Codewords in the first message block.
    #[arg(short = 'N', value_name = "INT")]
    pub n: usize,
    /// Codewords in the second message block.
    #[arg(long = "n2", value_name = "INT")]
    pub n2: usize,
    /// Total coded length in bits.
    #[arg(short = 'L', value_name = "BITS")]
    pub length: f64,
    /// Emit the exact product table `L_I,L_II,omega_I,omega_II,product` instead.
    #[arg(long)]
    pub brute: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DimensionArgs {
    #[command(flatten)]
    pub input: CodeInput,
    /// β grid LO:HI:COUNT; β = 1 is always added.
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:201")]
    pub grid: BetaGrid,
    /// Emit `quantity,value` rows for the four limits and the derivatives at T = 1.
    #[arg(long)]
    pub limits: bool,
    /// Finite-difference step in T for the derivative check.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PrefixesArgs {
    #[command(flatten)]
    pub input: CodeInput,
    #[arg(short = 'N', value_name = "INT")]
    pub n: usize,
    /// Total coded length in bits.
    #[arg(short = 'L', value_name = "BITS")]
    pub length: f64,
    /// Longest prefix counted (defaults to L).
    #[arg(long, value_name = "BITS")]
    pub nmax: Option<u64>,
    /// Slope fit range LO:HI in prefix bits (defaults to ceil(0.2 L):nmax).
    #[arg(long, value_name = "LO:HI")]
    pub fit: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: CodeInput,
    #[arg(short = 'N', value_name = "INT")]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub draws: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report per-message counts conditioned on this total length (bits).
    #[arg(long, value_name = "BITS")]
    pub focus: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of codewords (at least 2).
    #[arg(long, value_name = "INT")]
    pub leaves: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Attach the dyadic probabilities 2^-l(x).
    #[arg(long)]
    pub with_probs: bool,
    #[command(flatten)]
    pub output: Output,
}

fn load(path: &PathBuf) -> Result<(Code, Option<Pmf>)> {
    parse_code(&fs::read_to_string(path)?)
}

fn writer(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn integer_length(length: f64) -> Result<u64> {
    if length >= 0.0 && length.fract() == 0.0 && length < 2f64.powi(53) {
        Ok(length as u64)
    } else {
        Err(Error::InvalidArgument(format!("length {length} must be a nonnegative integer number of bits")))
    }
}

fn use_exact(code: &Code, n: usize, mode: Mode) -> bool {
    match mode {
        Mode::Exact => true,
        Mode::Log => false,
        Mode::Auto => {
            let s = code.spectrum();
            (n as u64).saturating_mul((s.l_max() - s.l_min()) as u64) <= DEFAULT_MAX_CELLS
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check(a) => check(a),
        Command::Omega(a) => omega(a),
        Command::Temperature(a) => temperature(a),
        Command::Gibbs(a) => gibbs(a),
        Command::SolveTemp(a) => solve_temp(a),
        Command::Equilibrium(a) => equilibrium(a),
        Command::Dimension(a) => dimension(a),
        Command::Prefixes(a) => prefixes(a),
        Command::Sample(a) => sample(a),
        Command::Gen(a) => gen(a),
    }
}

fn check(a: CheckArgs) -> Result<()> {
    let (code, pmf) = load(&a.input.code)?;
    let kraft = code.kraft_sum();
    let mut out = writer(&a.output)?;
    writeln!(out, "symbols={}", code.len())?;
    writeln!(out, "prefix_free=true")?;
    writeln!(out, "kraft={kraft}")?;
    writeln!(out, "complete={}", kraft.is_one())?;
    let (source, pmf) = match pmf {
        Some(p) => ("given", Some(p)),
        None if kraft.is_one() => ("dyadic", Some(dyadic_pmf(&code)?)),
        None => ("none", None),
    };
    writeln!(out, "pmf={source}")?;
    match pmf {
        Some(p) => {
            writeln!(out, "H={}", real(shannon_entropy(&p)))?;
            writeln!(out, "L_X={}", real(average_codeword_length(&code, &p)?))?;
            writeln!(out, "optimal={}", is_absolutely_optimal(&code, &p)?)?;
        }
        None => writeln!(out, "optimal=false")?,
    }
    out.flush()?;
    Ok(())
}

fn omega(a: OmegaArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let spectrum = code.spectrum();
    let window = a.window.map(integer_length).transpose()?;
    let mut out = writer(&a.output)?;
    if use_exact(&code, a.n, a.mode) {
        let table = omega_exact_with_cap(&spectrum, a.n, DEFAULT_MAX_CELLS)?;
        output::write_ensemble(&mut out, AnyEnsemble::Exact(&table), window)?;
    } else {
        let table = omega_log(&spectrum, a.n)?;
        output::write_ensemble(&mut out, AnyEnsemble::Log(&table), None)?;
    }
    out.flush()?;
    Ok(())
}

fn temperature(a: TemperatureArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let spectrum = code.spectrum();
    let length = a.length.map(integer_length).transpose()?;
    let mut out = writer(&a.output)?;
    let report = |out: &mut dyn Write, table: &dyn Fn(u64) -> Result<(f64, f64, bool)>, l: u64, header: &str, prefix: &str| -> Result<()> {
        let (s, t, one_sided) = table(l)?;
        writeln!(out, "{header}")?;
        writeln!(out, "{prefix}{l},{},{},{one_sided}", real(s), real(t))?;
        Ok(())
    };
    if use_exact(&code, a.n, a.mode) {
        let table = omega_exact_with_cap(&spectrum, a.n, DEFAULT_MAX_CELLS)?;
        let eval = |l: u64| -> Result<(f64, f64, bool)> {
            let s = entropy_s(&table, l)?;
            let t = discrete_temperature(&table, l)?;
            Ok((s, t.value, t.one_sided))
        };
        match length {
            Some(l) => report(&mut out, &eval, l, "L,S,T,one_sided", "")?,
            None => {
                let l = most_probable_length(&table);
                report(&mut out, &eval, l, "N,L_star,S,T,one_sided", &format!("{},", a.n))?
            }
        }
    } else {
        let table = omega_log(&spectrum, a.n)?;
        let eval = |l: u64| -> Result<(f64, f64, bool)> {
            let s = entropy_s(&table, l)?;
            let t = discrete_temperature(&table, l)?;
            Ok((s, t.value, t.one_sided))
        };
        match length {
            Some(l) => report(&mut out, &eval, l, "L,S,T,one_sided", "")?,
            None => {
                let l = most_probable_length_log(&table);
                report(&mut out, &eval, l, "N,L_star,S,T,one_sided", &format!("{},", table.message_count()))?
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn gibbs(a: GibbsArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let spectrum = code.spectrum();
    let betas: Vec<f64> = match (a.beta, a.temp, a.grid) {
        (Some(b), _, _) => vec![InverseTemperature::new(b)?.beta()],
        (_, Some(t), _) => vec![InverseTemperature::from_temperature(t)?.beta()],
        (_, _, Some(g)) => g.points(),
        _ => vec![1.0],
    };
    let states: Vec<_> = betas.iter().map(|&b| gibbs_state(&spectrum, b)).collect();
    let mut out = writer(&a.output)?;
    output::write_gibbs(&mut out, &states)?;
    out.flush()?;
    Ok(())
}

fn solve_temp(a: SolveTempArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let spectrum = code.spectrum();
    let target = match (a.lambda, a.length, a.n) {
        (Some(l), _, _) => l,
        (None, Some(l), Some(n)) if n > 0 => l / n as f64,
        _ => {
            return Err(Error::InvalidArgument(
                "give --lambda, or -L together with -N".into(),
            ))
        }
    };
    let beta = solve_beta_for_lambda(&spectrum, target)?;
    let g = gibbs_state(&spectrum, beta.beta());
    let mut out = writer(&a.output)?;
    writeln!(out, "beta,T,lambda,residual")?;
    writeln!(
        out,
        "{},{},{},{}",
        real(beta.beta()),
        temperature_of_beta(beta.beta()),
        real(g.lambda),
        real(g.lambda - target)
    )?;
    out.flush()?;
    Ok(())
}

fn equilibrium(a: EquilibriumArgs) -> Result<()> {
    let (first, _) = load(&a.code)?;
    let (second, _) = load(&a.code2)?;
    let system = TwoCodeSystem::new(first.spectrum(), a.n, second.spectrum(), a.n2)?;
    let mut out = writer(&a.output)?;
    if a.brute {
        let b = brute_force_allocation(&system, integer_length(a.length)?)?;
        output::write_splits(&mut out, &b)?;
    } else {
        let alloc = solve_equilibrium(&system, a.length)?;
        output::write_allocation(&mut out, &alloc)?;
    }
    out.flush()?;
    Ok(())
}

fn dimension(a: DimensionArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let spectrum = code.spectrum();
    let mut out = writer(&a.output)?;
    if a.limits {
        let l = dim_limits(&spectrum);
        writeln!(out, "quantity,value")?;
        writeln!(out, "T_to_0_plus,{}", real(l.t_to_zero_plus))?;
        writeln!(out, "T_equal_1,{}", real(l.t_equal_one))?;
        writeln!(out, "T_to_inf,{}", real(l.t_to_infinity))?;
        writeln!(out, "T_to_0_minus,{}", real(l.t_to_zero_minus))?;
        match dim_derivatives_at_one(&spectrum, a.step) {
            Ok((first, second)) => {
                writeln!(out, "d_dim_dT_at_1,{}", real(first))?;
                writeln!(out, "d2_dim_dT2_at_1,{}", real(second))?;
            }
            Err(Error::DegenerateSpectrum) => {}
            Err(e) => return Err(e),
        }
    } else {
        output::write_dimension_curve(&mut out, &dimension_curve(&spectrum, &a.grid))?;
    }
    out.flush()?;
    Ok(())
}

fn parse_fit(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("fit range `{text}` is not LO:HI"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn prefixes(a: PrefixesArgs) -> Result<()> {
    let (code, _) = load(&a.input.code)?;
    let length = integer_length(a.length)?;
    let n_max = a.nmax.unwrap_or(length);
    let table = empirical_prefix_count(&code, a.n, length, n_max)?;
    let (lo, hi) = match &a.fit {
        Some(text) => parse_fit(text)?,
        None => (default_fit_range(length).0, n_max as usize),
    };
    let slope = empirical_dimension(&table, lo, hi)?;
    let mut out = writer(&a.output)?;
    output::write_prefix_counts(&mut out, &table)?;
    out.flush()?;
    eprintln!("slope over n in [{lo}, {hi}]: {}", real(slope));
    Ok(())
}

fn sample(a: SampleArgs) -> Result<()> {
    let (code, pmf) = load(&a.input.code)?;
    let pmf = match pmf {
        Some(p) => p,
        None => dyadic_pmf(&code)?,
    };
    let focus = a.focus.map(integer_length).transpose()?;
    let report = sample_messages(&code, &pmf, a.n, a.draws, a.seed, focus)?;
    let mut out = writer(&a.output)?;
    match (&report.focus, focus) {
        (Some(f), _) => {
            writeln!(out, "message,count")?;
            for (message, count) in &f.conditional_counts {
                writeln!(out, "{message},{count}")?;
            }
            let chi = f.chi_square_uniformity();
            eprintln!(
                "conditional draws {} over {} messages: chi-square {} (dof {}), p = {}",
                f.conditional_draws(),
                f.omega,
                real(chi.statistic),
                chi.degrees_of_freedom,
                real(chi.p_value)
            );
        }
        (None, Some(l)) => {
            eprintln!("no conditional counts for L = {l}: code not absolutely optimal for the pmf, L unachievable, or too many messages");
            write_histogram(&mut out, &report.histogram)?;
        }
        (None, None) => write_histogram(&mut out, &report.histogram)?,
    }
    out.flush()?;
    eprintln!("mean L/N: {}", real(report.mean_length_per_symbol()));
    Ok(())
}

fn write_histogram(out: &mut dyn Write, histogram: &std::collections::BTreeMap<u64, u64>) -> Result<()> {
    writeln!(out, "L,count")?;
    for (l, c) in histogram {
        writeln!(out, "{l},{c}")?;
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<()> {
    let code = random_complete_code(a.leaves, a.seed)?;
    let pmf = if a.with_probs {
        Some(dyadic_pmf(&code)?)
    } else {
        None
    };
    let mut out = writer(&a.output)?;
    out.write_all(write_code(&code, pmf.as_ref()).as_bytes())?;
    out.flush()?;
    Ok(())
}
