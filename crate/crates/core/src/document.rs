//! JSON code documents:
//!
//! ```json
//! {"code": [{"symbol": "a", "codeword": "0", "prob": 0.5}, ...]}
//! ```
//!
//! `prob` is optional but must be present on all entries or none. It may be a
//! number (float mode) or a decimal string such as `"0.25"` (exact mode, used
//! when every entry is a string).

use serde::{Deserialize, Serialize};

use crate::code::{Code, Codeword, Symbol};
use crate::error::{Error, Result};
use crate::pmf::{parse_decimal, Pmf};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    code: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    symbol: String,
    codeword: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prob: Option<Prob>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Prob {
    Number(f64),
    Decimal(String),
}

/// Parses and validates a code document, returning the pmf when probabilities are given.
pub fn parse_code(document: &str) -> Result<(Code, Option<Pmf>)> {
    let doc: Document =
        serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;

    let with_prob = doc.code.iter().filter(|e| e.prob.is_some()).count();
    if with_prob != 0 && with_prob != doc.code.len() {
        return Err(Error::Malformed(
            "either every entry carries \"prob\" or none does".into(),
        ));
    }

    let mut entries = Vec::with_capacity(doc.code.len());
    for e in &doc.code {
        let symbol = Symbol::new(e.symbol.as_str())?;
        let codeword = Codeword::parse(&e.codeword).ok_or_else(|| Error::InvalidCodeword {
            symbol: e.symbol.clone(),
            codeword: e.codeword.clone(),
        })?;
        entries.push((symbol, codeword));
    }
    let code = Code::new(entries.iter().cloned())?;

    if with_prob == 0 {
        return Ok((code, None));
    }
    let all_decimal = doc
        .code
        .iter()
        .all(|e| matches!(e.prob, Some(Prob::Decimal(_))));
    let pmf = if all_decimal {
        let mut exact = Vec::with_capacity(entries.len());
        for ((symbol, _), e) in entries.iter().zip(&doc.code) {
            let Some(Prob::Decimal(text)) = &e.prob else {
                unreachable!()
            };
            let p = parse_decimal(text)
                .ok_or_else(|| Error::Malformed(format!("probability `{text}` is not a decimal")))?;
            exact.push((symbol.clone(), p));
        }
        Pmf::from_exact(exact)?
    } else {
        let mut floats = Vec::with_capacity(entries.len());
        for ((symbol, _), e) in entries.iter().zip(&doc.code) {
            let p = match e.prob.as_ref().unwrap() {
                Prob::Number(p) => *p,
                Prob::Decimal(text) => text.trim().parse::<f64>().map_err(|_| {
                    Error::Malformed(format!("probability `{text}` is not a decimal"))
                })?,
            };
            floats.push((symbol.clone(), p));
        }
        Pmf::from_floats(floats)?
    };
    Ok((code, Some(pmf)))
}

/// Serializes a code, with probabilities as JSON numbers when a pmf is given.
pub fn write_code(code: &Code, pmf: Option<&Pmf>) -> String {
    let entries = code
        .iter()
        .map(|(s, c)| Entry {
            symbol: s.to_string(),
            codeword: c.to_string(),
            prob: pmf.and_then(|p| p.get(s)).map(Prob::Number),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&Document { code: entries })
        .expect("code documents always serialize");
    out.push('\n');
    out
}
