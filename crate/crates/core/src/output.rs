//! CSV emission. Reals use the shortest representation that round-trips
//! (at most 17 significant digits), switching to exponent form outside
//! `[1e-5, 1e16)`. Integers are exact decimals.

use std::io::{self, Write};

use crate::dimension::DimensionCurve;
use crate::equilibrium::{Allocation, BruteForceAllocation};
use crate::gibbs::GibbsState;
use crate::microcanonical::{
    temperature_profile, EnsembleTable, EntropyTable, LogEnsembleTable,
};
use crate::prefix::PrefixCountTable;

/// Formats a real; infinities as `+inf` / `-inf`.
pub fn real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else if x == 0.0 || (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Temperature for `β`, with `β = 0` printed as `inf`.
pub fn temperature_of_beta(beta: f64) -> String {
    if beta == 0.0 {
        "inf".into()
    } else {
        real(1.0 / beta)
    }
}

/// Either kind of ensemble table, for CSV emission.
pub enum AnyEnsemble<'a> {
    Exact(&'a EnsembleTable),
    Log(&'a LogEnsembleTable),
}

/// `L,omega,log2_omega,S,T` for every `L` in `[N·l_min, N·l_max]`.
///
/// Log-domain tables leave `omega` empty. Unachievable rows carry `-inf` entropy
/// and `nan` temperature. With a window, an `omega_window` column is appended.
pub fn write_ensemble(out: &mut impl Write, table: AnyEnsemble<'_>, window: Option<u64>) -> io::Result<()> {
    let (min, max, temps) = match &table {
        AnyEnsemble::Exact(t) => (t.min_length(), t.max_length(), temperature_profile(*t)),
        AnyEnsemble::Log(t) => (t.min_length(), t.max_length(), temperature_profile(*t)),
    };
    let with_window = window.is_some() && matches!(table, AnyEnsemble::Exact(_));
    write!(out, "L,omega,log2_omega,S,T")?;
    if with_window {
        write!(out, ",omega_window")?;
    }
    writeln!(out)?;
    let mut temps = temps.into_iter().peekable();
    for l in min..=max {
        let (omega, log2) = match &table {
            AnyEnsemble::Exact(t) => (t.omega(l).to_string(), t.log2_omega(l)),
            AnyEnsemble::Log(t) => (String::new(), t.log2_omega(l)),
        };
        let log2 = log2.unwrap_or(f64::NEG_INFINITY);
        let t = match temps.peek() {
            Some(&(tl, t)) if tl == l => {
                temps.next();
                t.map_or(f64::NAN, |t| t.value)
            }
            _ => f64::NAN,
        };
        write!(out, "{l},{omega},{},{},{}", real(log2), real(log2), real(t))?;
        if let (true, Some(w), AnyEnsemble::Exact(tab)) = (with_window, window, &table) {
            write!(out, ",{}", tab.omega_window(l, w))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_gibbs(out: &mut impl Write, states: &[GibbsState]) -> io::Result<()> {
    writeln!(out, "beta,T,Z,lambda,H_G")?;
    for g in states {
        let beta = g.beta.beta();
        writeln!(
            out,
            "{},{},{},{},{}",
            real(beta),
            temperature_of_beta(beta),
            real(g.z()),
            real(g.lambda),
            real(g.entropy())
        )?;
    }
    Ok(())
}

pub fn write_dimension_curve(out: &mut impl Write, curve: &DimensionCurve) -> io::Result<()> {
    writeln!(out, "beta,T,lambda,dim")?;
    for s in &curve.samples {
        writeln!(
            out,
            "{},{},{},{}",
            real(s.beta),
            temperature_of_beta(s.beta),
            real(s.lambda),
            real(s.dim)
        )?;
    }
    Ok(())
}

pub fn write_prefix_counts(out: &mut impl Write, table: &PrefixCountTable) -> io::Result<()> {
    writeln!(out, "n,count,log2_count")?;
    for (n, c) in table.counts.iter().enumerate() {
        writeln!(out, "{n},{c},{}", real(table.log2_count(n)))?;
    }
    Ok(())
}

pub fn write_allocation(out: &mut impl Write, a: &Allocation) -> io::Result<()> {
    writeln!(out, "beta_star,T_star,L_I_star,L_II_star,residual")?;
    let beta = a.beta_star.beta();
    writeln!(
        out,
        "{},{},{},{},{}",
        real(beta),
        temperature_of_beta(beta),
        real(a.l_i_star),
        real(a.l_ii_star),
        real(a.residual)
    )
}

pub fn write_splits(out: &mut impl Write, b: &BruteForceAllocation) -> io::Result<()> {
    writeln!(out, "L_I,L_II,omega_I,omega_II,product")?;
    for s in &b.splits {
        writeln!(
            out,
            "{},{},{},{},{}",
            s.l_i, s.l_ii, s.omega_i, s.omega_ii, s.product
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(real(1.5), "1.5");
        assert_eq!(real(2.0), "2");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(f64::INFINITY), "+inf");
        assert_eq!(real(f64::NEG_INFINITY), "-inf");
        assert_eq!(real(f64::NAN), "nan");
        assert_eq!(real(1e-300), "1e-300");
        assert_eq!(real(0.1 + 0.2), "0.30000000000000004");
        for x in [std::f64::consts::PI, 1e-7 / 3.0, -2.5e20, 0.950977500432694] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(temperature_of_beta(0.0), "inf");
        assert_eq!(temperature_of_beta(-0.5), "-2");
    }
}
