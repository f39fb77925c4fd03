use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::binomial;
use crate::error::{Error, Result};

/// Default ceiling on the number of exhaustively enumerated subsets.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Enumeration {
    Exhaustive,
    /// `count` independent uniform draws of a `j`-subset; repeats across
    /// draws are allowed.
    Sampled { count: u64, seed: u64 },
}

/// A materialized list of `j`-subsets of `0..n`, stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetList {
    j: usize,
    flat: Vec<u32>,
}

impl SubsetList {
    pub fn subset_size(&self) -> usize {
        self.j
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.j
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.flat[i * self.j..(i + 1) * self.j]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.flat.chunks_exact(self.j)
    }
}

/// `C(n, j)` or a configuration error when it does not fit.
pub fn subset_total(n: usize, j: usize) -> Result<u128> {
    binomial(n as u64, j as u64).ok_or_else(|| Error::config(format!("C({n}, {j}) overflows 128 bits")))
}

/// Enumerates the subsets a depth estimate averages over.
///
/// Exhaustive mode lists all `C(n, j)` subsets in lexicographic order and
/// refuses when that exceeds `cap`. Sampled mode draws from a ChaCha8
/// stream seeded with `seed`, so the sequence is reproducible.
pub fn subset_enumerator(n: usize, j: usize, enumeration: Enumeration, cap: u64) -> Result<SubsetList> {
    if j == 0 {
        return Err(Error::config("j must be at least 1"));
    }
    if j > n {
        return Err(Error::input(format!("j = {j} exceeds the sample size n = {n}")));
    }
    if n > u32::MAX as usize {
        return Err(Error::input("sample too large"));
    }
    match enumeration {
        Enumeration::Exhaustive => {
            let total = subset_total(n, j)?;
            if total > u128::from(cap) {
                return Err(Error::config(format!(
                    "C({n}, {j}) = {total} subsets exceeds the exhaustive cap {cap}; use sampled enumeration"
                )));
            }
            let mut flat = Vec::with_capacity(total as usize * j);
            let mut idx: Vec<u32> = (0..j as u32).collect();
            let n32 = n as u32;
            let j32 = j as u32;
            loop {
                flat.extend_from_slice(&idx);
                let mut i = j;
                while i > 0 && idx[i - 1] == n32 - j32 + i as u32 - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for p in i..j {
                    idx[p] = idx[p - 1] + 1;
                }
            }
            Ok(SubsetList { j, flat })
        }
        Enumeration::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::config("sampled enumeration needs a positive count"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut flat = Vec::with_capacity(count as usize * j);
            for _ in 0..count {
                let mut draw: Vec<u32> = rand::seq::index::sample(&mut rng, n, j)
                    .into_iter()
                    .map(|i| i as u32)
                    .collect();
                draw.sort_unstable();
                flat.extend_from_slice(&draw);
            }
            Ok(SubsetList { j, flat })
        }
    }
}
