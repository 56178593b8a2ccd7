//! Random Kraft-complete codes for tests and exploration.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`). Starting
//! from the root of an empty code tree, it performs `leaf_count - 1` splits; each
//! split picks one current leaf uniformly (`random_range` over the leaf list in
//! insertion order), replaces it by its `0` child and appends its `1` child.
//! Leaves are then sorted lexicographically and named `x0`, `x1`, ... with the
//! index zero-padded to a common width so that symbol order matches codeword order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{Code, Codeword, Symbol};
use crate::error::{Error, Result};

pub fn random_complete_code(leaf_count: usize, seed: u64) -> Result<Code> {
    if leaf_count < 2 {
        return Err(Error::InvalidLeafCount(leaf_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = vec![String::new()];
    for _ in 1..leaf_count {
        let i = rng.random_range(0..leaves.len());
        let parent = std::mem::take(&mut leaves[i]);
        leaves[i] = format!("{parent}0");
        leaves.push(format!("{parent}1"));
    }
    leaves.sort();
    let width = (leaf_count - 1).to_string().len();
    Code::new(leaves.into_iter().enumerate().map(|(i, bits)| {
        (
            Symbol::new(format!("x{i:0width$}")).expect("generated symbols are valid"),
            Codeword::parse(&bits).expect("generated codewords are non-empty"),
        )
    }))
}
