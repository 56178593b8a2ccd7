//! Probability mass functions, Shannon entropy, and absolute optimality.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::code::{Code, Symbol};
use crate::error::{Error, Result};

/// Tolerance for float-mode normalization and optimality checks.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Strictly positive probabilities over an alphabet.
///
/// When built from exact rationals the pmf sums to exactly one and keeps the
/// rationals around for exact comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: BTreeMap<Symbol, f64>,
    exact: Option<BTreeMap<Symbol, BigRational>>,
}

impl Pmf {
    pub fn from_floats(entries: impl IntoIterator<Item = (Symbol, f64)>) -> Result<Self> {
        let mut probs = BTreeMap::new();
        for (s, p) in entries {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidPmf(format!("probability of `{s}` is {p}")));
            }
            if probs.insert(s.clone(), p).is_some() {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
        }
        if probs.is_empty() {
            return Err(Error::InvalidPmf("empty pmf".into()));
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > FLOAT_TOLERANCE {
            return Err(Error::InvalidPmf(format!("probabilities sum to {total}")));
        }
        Ok(Pmf { probs, exact: None })
    }

    pub fn from_exact(entries: impl IntoIterator<Item = (Symbol, BigRational)>) -> Result<Self> {
        let mut exact = BTreeMap::new();
        for (s, p) in entries {
            if !p.is_positive() || p > BigRational::one() {
                return Err(Error::InvalidPmf(format!("probability of `{s}` is {p}")));
            }
            if exact.insert(s.clone(), p).is_some() {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
        }
        if exact.is_empty() {
            return Err(Error::InvalidPmf("empty pmf".into()));
        }
        let total: BigRational = exact.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidPmf(format!("probabilities sum to {total}, not exactly 1")));
        }
        let probs = exact
            .iter()
            .map(|(s, p)| (s.clone(), rational_to_f64(p)))
            .collect();
        Ok(Pmf {
            probs,
            exact: Some(exact),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, symbol: &Symbol) -> Option<f64> {
        self.probs.get(symbol).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, f64)> {
        self.probs.iter().map(|(s, &p)| (s, p))
    }

    pub fn exact(&self) -> Option<&BTreeMap<Symbol, BigRational>> {
        self.exact.as_ref()
    }

    fn check_alphabet(&self, code: &Code) -> Result<()> {
        if self.probs.len() != code.len() || !code.symbols().all(|s| self.probs.contains_key(s)) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }
}

/// Parses a decimal literal such as `"0.25"` or `"1e-3"` into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().ok()?);
    let scale = exp - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -value } else { value })
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on log-scale division when numerator or denominator overflow f64.
        let n = r.numer().to_biguint().unwrap_or_default();
        let d = r.denom().to_biguint().unwrap_or_default();
        (crate::log2_big(&n) - crate::log2_big(&d)).exp2()
    })
}

/// `-Σ p log2 p`, in bits.
pub fn shannon_entropy(pmf: &Pmf) -> f64 {
    -pmf.probs.values().map(|&p| p * p.log2()).sum::<f64>()
}

/// Exact entropy when every probability is an exact power of 1/2.
pub fn exact_dyadic_entropy(pmf: &Pmf) -> Option<BigRational> {
    let exact = pmf.exact.as_ref()?;
    let mut total = BigRational::zero();
    for p in exact.values() {
        let info = exact_power_of_half(p)?;
        total += p * BigRational::from_integer(BigInt::from(info));
    }
    Some(total)
}

fn exact_power_of_half(p: &BigRational) -> Option<u64> {
    if !p.numer().is_one() {
        return None;
    }
    let d: BigUint = p.denom().to_biguint()?;
    let tz = d.trailing_zeros().unwrap_or(0);
    (d == BigUint::one() << tz).then_some(tz)
}

/// `Σ p(x) l(x)`, in bits.
pub fn average_codeword_length(code: &Code, pmf: &Pmf) -> Result<f64> {
    pmf.check_alphabet(code)?;
    Ok(code
        .iter()
        .map(|(s, c)| pmf.probs[s] * c.len() as f64)
        .sum())
}

/// Exact `Σ p(x) l(x)` for an exact pmf.
pub fn exact_average_codeword_length(code: &Code, pmf: &Pmf) -> Result<Option<BigRational>> {
    pmf.check_alphabet(code)?;
    Ok(pmf.exact.as_ref().map(|exact| {
        code.iter()
            .map(|(s, c)| &exact[s] * BigRational::from_integer(BigInt::from(c.len())))
            .sum()
    }))
}

/// True iff `p(x) = 2^-l(x)` for every symbol; exact for exact pmfs.
pub fn is_absolutely_optimal(code: &Code, pmf: &Pmf) -> Result<bool> {
    pmf.check_alphabet(code)?;
    if let Some(exact) = &pmf.exact {
        return Ok(code.iter().all(|(s, c)| {
            exact[s] == BigRational::new(BigInt::one(), BigInt::one() << c.len())
        }));
    }
    Ok(code
        .iter()
        .all(|(s, c)| (pmf.probs[s] - (-(c.len() as f64)).exp2()).abs() <= FLOAT_TOLERANCE))
}

/// The unique pmf `p(x) = 2^-l(x)` for which a Kraft-complete code is absolutely optimal.
pub fn dyadic_pmf(code: &Code) -> Result<Pmf> {
    let kraft = code.kraft_sum();
    if !kraft.is_one() {
        return Err(Error::NotComplete {
            kraft: kraft.to_string(),
        });
    }
    Pmf::from_exact(code.iter().map(|(s, c)| {
        (
            s.clone(),
            BigRational::new(BigInt::one(), BigInt::one() << c.len()),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Codeword;

    fn code(lengths: &[u32]) -> Code {
        // Canonical code for a lengths list in nondecreasing order.
        let mut next = 0u64;
        let mut prev = lengths[0];
        let entries = lengths.iter().enumerate().map(|(i, &l)| {
            next <<= l - prev;
            prev = l;
            let cw = format!("{:0width$b}", next, width = l as usize);
            next += 1;
            (
                Symbol::new(format!("s{i}")).unwrap(),
                Codeword::parse(&cw).unwrap(),
            )
        });
        Code::new(entries.collect::<Vec<_>>()).unwrap()
    }

    fn floats(ps: &[f64]) -> Pmf {
        Pmf::from_floats(
            ps.iter()
                .enumerate()
                .map(|(i, &p)| (Symbol::new(format!("s{i}")).unwrap(), p)),
        )
        .unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&floats(&[0.5, 0.25, 0.25])), 1.5);
        assert_eq!(shannon_entropy(&floats(&[0.5, 0.5])), 1.0);
        assert_eq!(shannon_entropy(&floats(&[1.0])), 0.0);
    }

    #[test]
    fn average_length_examples() {
        let c = code(&[1, 2, 2]);
        assert_eq!(average_codeword_length(&c, &floats(&[0.5, 0.25, 0.25])).unwrap(), 1.5);
        let uniform = floats(&[0.25; 4]);
        assert_eq!(average_codeword_length(&code(&[2, 2, 2, 2]), &uniform).unwrap(), 2.0);
        let skewed = floats(&[0.9, 0.05, 0.05]);
        let l = average_codeword_length(&c, &skewed).unwrap();
        let h = shannon_entropy(&skewed);
        assert!((l - 1.1).abs() < 1e-15);
        // -0.9 log2 0.9 - 2 * 0.05 log2 0.05
        let oracle = -(0.9f64 * 0.9f64.log2()) - 0.1 * 0.05f64.log2();
        assert!((h - oracle).abs() < 1e-15 && (h - 0.569).abs() < 1e-3);
        assert!(l >= h);
        assert!(matches!(
            average_codeword_length(&c, &uniform),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn optimality_examples() {
        let c = code(&[1, 2, 2]);
        assert!(is_absolutely_optimal(&c, &floats(&[0.5, 0.25, 0.25])).unwrap());
        assert!(!is_absolutely_optimal(&c, &floats(&[0.6, 0.2, 0.2])).unwrap());
        let incomplete = code(&[1, 2, 3]);
        for ps in [[0.5, 0.25, 0.25], [0.4, 0.3, 0.3], [0.5, 0.25, 0.125 + 0.125]] {
            assert!(!is_absolutely_optimal(&incomplete, &floats(&ps)).unwrap());
        }
    }

    #[test]
    fn dyadic_pmf_examples() {
        let p = dyadic_pmf(&code(&[1, 2, 2])).unwrap();
        let got: Vec<f64> = p.iter().map(|(_, p)| p).collect();
        assert_eq!(got, vec![0.5, 0.25, 0.25]);
        let u = dyadic_pmf(&code(&[2, 2, 2, 2])).unwrap();
        assert!(u.iter().all(|(_, p)| p == 0.25));
        assert!(matches!(
            dyadic_pmf(&code(&[1, 2, 3])),
            Err(Error::NotComplete { .. })
        ));
    }

    #[test]
    fn exact_entropy_equals_exact_length_for_dyadic() {
        let c = code(&[1, 3, 3, 3, 4, 4]);
        let p = dyadic_pmf(&c).unwrap();
        assert!(is_absolutely_optimal(&c, &p).unwrap());
        let h = exact_dyadic_entropy(&p).unwrap();
        let l = exact_average_codeword_length(&c, &p).unwrap().unwrap();
        assert_eq!(h, l);
    }

    #[test]
    fn decimal_parsing_is_exact() {
        let q = parse_decimal("0.25").unwrap();
        assert_eq!(q, BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_decimal("1e-1").unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(parse_decimal(".5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal(".").is_none());
    }

    #[test]
    fn rejects_bad_pmfs() {
        let s = |i: u32| Symbol::new(format!("s{i}")).unwrap();
        assert!(Pmf::from_floats([(s(0), 0.5), (s(1), 0.4)]).is_err());
        assert!(Pmf::from_floats([(s(0), 1.0), (s(1), 0.0)]).is_err());
        let third = BigRational::new(1.into(), 3.into());
        assert!(Pmf::from_exact([(s(0), third.clone()), (s(1), third.clone()), (s(2), third)]).is_ok());
        assert!(Pmf::from_exact([(s(0), parse_decimal("0.3").unwrap()), (s(1), parse_decimal("0.6").unwrap())]).is_err());
    }
}
