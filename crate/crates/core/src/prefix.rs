//! Finite-scale box counting: distinct `n`-bit prefixes of the coded messages
//! in `C(L, N)`.
//!
//! Reading a binary string as the real number `0.b1b2...`, the `2^-n` mesh
//! intervals meeting the set correspond to the distinct `n`-bit prefixes of its
//! members. Counts are exact.
//!
//! Every prefix parses uniquely into `m` complete codewords (total `j` bits)
//! followed by a partial path to a trie node at depth `n - j`. The prefix is
//! extendable when the remaining `N - m` codewords can make up the remaining
//! `L - j` bits, with the first of them below that node. Counting therefore
//! sums `Ω(j, m)` over `(m, j, node)` states that pass this feasibility test.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::log2_big;
use crate::microcanonical::omega_rows;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCountTable {
    pub message_count: usize,
    pub length: u64,
    /// `counts[n]` = number of distinct `n`-bit prefixes, for `n = 0..=n_max`.
    pub counts: Vec<BigUint>,
}

impl PrefixCountTable {
    pub fn log2_count(&self, n: usize) -> f64 {
        log2_big(&self.counts[n])
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Internal trie nodes grouped by depth and the set of codeword lengths below them.
fn partial_node_groups(code: &Code) -> BTreeMap<(u64, Vec<u32>), u64> {
    fn walk(
        code: &Code,
        node: usize,
        depth: u64,
        groups: &mut BTreeMap<(u64, Vec<u32>), u64>,
    ) -> Vec<u32> {
        let trie = code.trie();
        if let Some(leaf) = trie[node].leaf {
            return vec![code.entry(leaf).1.len()];
        }
        let mut below: Vec<u32> = trie[node]
            .children
            .iter()
            .flatten()
            .flat_map(|&child| walk(code, child, depth + 1, groups))
            .collect();
        below.sort_unstable();
        below.dedup();
        if depth > 0 {
            *groups.entry((depth, below.clone())).or_insert(0) += 1;
        }
        below
    }
    let mut groups = BTreeMap::new();
    walk(code, 0, 0, &mut groups);
    groups
}

/// Counts distinct `n`-bit prefixes of `C(length, message_count)` for `n = 0..=n_max`.
pub fn empirical_prefix_count(
    code: &Code,
    message_count: usize,
    length: u64,
    n_max: u64,
) -> Result<PrefixCountTable> {
    let rows = omega_rows(&code.spectrum(), message_count)?;
    let full = &rows[message_count];
    if full.omega_ref(length).is_none() {
        return Err(Error::OutsideSupport {
            length,
            n: message_count,
        });
    }
    if n_max > length {
        return Err(Error::InvalidArgument(format!(
            "prefix length {n_max} exceeds the message length {length}"
        )));
    }
    let groups = partial_node_groups(code);
    let reachable = |k: usize, t: u64| rows[k].omega_ref(t).is_some();
    let ways = |m: usize, j: u64| -> Option<&BigUint> { rows[m].omega_ref(j) };

    let counts = (0..=n_max)
        .map(|n| {
            let mut total = BigUint::zero();
            // Prefix ends on a codeword boundary.
            for m in 0..=message_count {
                if let Some(a) = ways(m, n) {
                    if reachable(message_count - m, length - n) {
                        total += a;
                    }
                }
            }
            // Prefix ends inside a codeword, at an internal trie node.
            for ((depth, below), &mult) in &groups {
                let Some(j) = n.checked_sub(*depth) else {
                    continue;
                };
                for m in 0..message_count {
                    let Some(a) = ways(m, j) else {
                        continue;
                    };
                    let completes = below.iter().any(|&l| {
                        (length - j)
                            .checked_sub(l as u64)
                            .is_some_and(|rest| reachable(message_count - m - 1, rest))
                    });
                    if completes {
                        total += a * mult;
                    }
                }
            }
            total
        })
        .collect();
    Ok(PrefixCountTable {
        message_count,
        length,
        counts,
    })
}

/// Default fit window `[ceil(0.2·L), L]`.
pub fn default_fit_range(length: u64) -> (usize, usize) {
    (length.div_ceil(5) as usize, length as usize)
}

/// Least-squares slope of `log2 counts(n)` against `n` over `n_lo..=n_hi`.
pub fn empirical_dimension(table: &PrefixCountTable, n_lo: usize, n_hi: usize) -> Result<f64> {
    if n_lo >= n_hi || n_hi > table.n_max() {
        return Err(Error::InvalidArgument(format!(
            "empty fit range [{n_lo}, {n_hi}] for prefix lengths 0..={}",
            table.n_max()
        )));
    }
    let points: Vec<(f64, f64)> = (n_lo..=n_hi)
        .map(|n| (n as f64, table.log2_count(n)))
        .collect();
    let k = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(sxy / sxx)
}
