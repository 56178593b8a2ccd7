//! Instantaneous (prefix-free) binary codes and their length spectra.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Opaque symbol token. Non-empty, no whitespace; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidSymbol(id));
        }
        Ok(Symbol(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A non-empty string over `'0'`/`'1'`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword(String);

impl Codeword {
    pub fn parse(bits: &str) -> Option<Self> {
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        Some(Codeword(bits.to_owned()))
    }

    pub fn len(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn bits(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.bytes().map(|b| (b - b'0') as usize)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct TrieNode {
    pub children: [Option<usize>; 2],
    /// Index into the code's entries when this node is a codeword.
    pub leaf: Option<usize>,
}

/// An injective, prefix-free map from symbols to codewords.
#[derive(Debug, Clone)]
pub struct Code {
    /// Sorted by symbol.
    entries: Vec<(Symbol, Codeword)>,
    trie: Vec<TrieNode>,
}

impl Code {
    /// Validates injectivity and prefix-freeness.
    pub fn new(entries: impl IntoIterator<Item = (Symbol, Codeword)>) -> Result<Self> {
        let mut entries: Vec<(Symbol, Codeword)> = entries.into_iter().collect();
        if entries.is_empty() {
            return Err(Error::Malformed("a code needs at least one symbol".into()));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateSymbol(pair[0].0.to_string()));
            }
        }
        check_prefix_free(&entries)?;
        let trie = build_trie(&entries);
        Ok(Code { entries, trie })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Codeword)> {
        self.entries.iter().map(|(s, c)| (s, c))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.entries.iter().map(|(s, _)| s)
    }

    pub fn codeword(&self, symbol: &Symbol) -> Option<&Codeword> {
        self.index_of(symbol).map(|i| &self.entries[i].1)
    }

    pub(crate) fn index_of(&self, symbol: &Symbol) -> Option<usize> {
        self.entries.binary_search_by(|(s, _)| s.cmp(symbol)).ok()
    }

    pub(crate) fn entry(&self, index: usize) -> &(Symbol, Codeword) {
        &self.entries[index]
    }

    pub(crate) fn trie(&self) -> &[TrieNode] {
        &self.trie
    }

    pub fn spectrum(&self) -> LengthSpectrum {
        LengthSpectrum::from_lengths(self.entries.iter().map(|(_, c)| c.len()))
            .expect("codes are non-empty")
    }

    /// Exact `Σ 2^-l(x)`.
    pub fn kraft_sum(&self) -> Dyadic {
        self.spectrum().kraft_sum()
    }

    /// Concatenates codewords of `message`.
    pub fn encode<'a>(&self, message: impl IntoIterator<Item = &'a Symbol>) -> Result<String> {
        let mut out = String::new();
        for symbol in message {
            let cw = self
                .codeword(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
            out.push_str(cw.as_str());
        }
        Ok(out)
    }

    /// Decodes left to right, emitting a symbol as soon as a codeword is matched.
    pub fn decode(&self, bits: &str) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        let mut node = 0;
        let mut start = 0;
        for (position, b) in bits.bytes().enumerate() {
            let bit = match b {
                b'0' => 0,
                b'1' => 1,
                _ => return Err(Error::Undecodable { position }),
            };
            node = self.trie[node].children[bit].ok_or(Error::Undecodable { position })?;
            if let Some(leaf) = self.trie[node].leaf {
                out.push(self.entries[leaf].0.clone());
                node = 0;
                start = position + 1;
            }
        }
        if node != 0 {
            return Err(Error::TrailingBits {
                decoded: out.len(),
                dangling: bits[start..].to_owned(),
            });
        }
        Ok(out)
    }
}

/// Sorted lexicographically, a codeword set is prefix-free iff no codeword is a
/// prefix of its successor.
fn check_prefix_free(entries: &[(Symbol, Codeword)]) -> Result<()> {
    let mut order: Vec<&(Symbol, Codeword)> = entries.iter().collect();
    order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    for pair in order.windows(2) {
        let (s0, c0) = pair[0];
        let (s1, c1) = pair[1];
        if c0 == c1 {
            return Err(Error::DuplicateCodeword {
                codeword: c0.to_string(),
                first: s0.to_string(),
                second: s1.to_string(),
            });
        }
        if c1.as_str().starts_with(c0.as_str()) {
            return Err(Error::PrefixViolation {
                prefix_symbol: s0.to_string(),
                prefix: c0.to_string(),
                symbol: s1.to_string(),
                codeword: c1.to_string(),
            });
        }
    }
    Ok(())
}

fn build_trie(entries: &[(Symbol, Codeword)]) -> Vec<TrieNode> {
    let mut trie = vec![TrieNode::default()];
    for (index, (_, cw)) in entries.iter().enumerate() {
        let mut node = 0;
        for bit in cw.bits() {
            node = match trie[node].children[bit] {
                Some(next) => next,
                None => {
                    trie.push(TrieNode::default());
                    let next = trie.len() - 1;
                    trie[node].children[bit] = Some(next);
                    next
                }
            };
        }
        trie[node].leaf = Some(index);
    }
    trie
}

/// Multiset of codeword lengths: length (bits) -> number of codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSpectrum {
    degeneracy: BTreeMap<u32, u64>,
}

impl LengthSpectrum {
    pub fn from_lengths(lengths: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut degeneracy = BTreeMap::new();
        for l in lengths {
            if l == 0 {
                return Err(Error::InvalidArgument("codeword lengths must be positive".into()));
            }
            *degeneracy.entry(l).or_insert(0) += 1;
        }
        if degeneracy.is_empty() {
            return Err(Error::InvalidArgument("empty length spectrum".into()));
        }
        Ok(LengthSpectrum { degeneracy })
    }

    pub fn from_degeneracy(degeneracy: BTreeMap<u32, u64>) -> Result<Self> {
        if degeneracy.is_empty() || degeneracy.iter().any(|(&l, &d)| l == 0 || d == 0) {
            return Err(Error::InvalidArgument(
                "degeneracies need positive lengths and positive counts".into(),
            ));
        }
        Ok(LengthSpectrum { degeneracy })
    }

    /// `(length, count)` in increasing length.
    pub fn levels(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.degeneracy.iter().map(|(&l, &d)| (l, d))
    }

    pub fn degeneracy(&self, length: u32) -> u64 {
        self.degeneracy.get(&length).copied().unwrap_or(0)
    }

    pub fn l_min(&self) -> u32 {
        *self.degeneracy.keys().next().unwrap()
    }

    pub fn l_max(&self) -> u32 {
        *self.degeneracy.keys().next_back().unwrap()
    }

    pub fn d_min(&self) -> u64 {
        self.degeneracy(self.l_min())
    }

    pub fn d_max(&self) -> u64 {
        self.degeneracy(self.l_max())
    }

    /// Alphabet size.
    pub fn n(&self) -> u64 {
        self.degeneracy.values().sum()
    }

    /// `Σ_x l(x)`.
    pub fn total_length(&self) -> u64 {
        self.levels().map(|(l, d)| l as u64 * d).sum()
    }

    pub fn distinct_lengths(&self) -> usize {
        self.degeneracy.len()
    }

    /// True when every codeword has the same length.
    pub fn is_degenerate(&self) -> bool {
        self.degeneracy.len() == 1
    }

    /// Step of the lattice of achievable totals: gcd of `l - l_min`. Zero when degenerate.
    pub fn lattice_step(&self) -> u64 {
        let l_min = self.l_min();
        self.degeneracy
            .keys()
            .fold(0u64, |g, &l| g.gcd(&((l - l_min) as u64)))
    }

    pub fn kraft_sum(&self) -> Dyadic {
        self.levels()
            .map(|(l, d)| &Dyadic::pow2_neg(l as u64) * &Dyadic::new(d.into(), 0))
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.kraft_sum().is_one()
    }
}
