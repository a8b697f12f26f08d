//! Sumsets and the counting machinery behind the lower bounds.
//!
//! For `A` with distinct consecutive differences, every two-element subset of
//! `C = A + B` of the form `{a_i + b_j, a_{i+1} + b_j}` determines `(i, j)`
//! uniquely, so `C` holds exactly `(k-1)ℓ` such pairs. Splitting `C` into `t`
//! consecutive blocks, at least `ℓ(k-t)` of those pairs land inside a single
//! block, while a block of size `s` can hold at most `C(s, 2)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sets::SortedSet;
use crate::sigma::{verify_sigma, SigmaMap};

/// `{a + b : a ∈ A, b ∈ B}`.
pub fn sumset(a: &SortedSet, b: &SortedSet) -> SortedSet {
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            sums.push(x + y);
        }
    }
    SortedSet::from_multiset(sums)
}

/// The pair `{a_i + b_j, a_{i+1} + b_j}`. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub low: Rational,
    pub high: Rational,
}

fn require_distinct_gaps(a: &SortedSet) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: a.len() });
    }
    if !a.has_distinct_consecutive_differences() {
        return Err(Error::Hypothesis(
            "A does not have distinct consecutive differences".into(),
        ));
    }
    Ok(())
}

/// All `(k-1)ℓ` pairs, ordered by `j` then `i`.
pub fn enumerate_pairs(a: &SortedSet, b: &SortedSet) -> Result<Vec<PairWitness>> {
    require_distinct_gaps(a)?;
    let mut out = Vec::with_capacity((a.len() - 1) * b.len());
    for (j, bj) in b.iter().enumerate() {
        for i in 0..a.len() - 1 {
            out.push(PairWitness {
                i: i + 1,
                j: j + 1,
                low: &a[i] + bj,
                high: &a[i + 1] + bj,
            });
        }
    }
    Ok(out)
}

/// Recovers `(i, j)` from a pair `{c, c'}` of `A + B`.
///
/// Built once per `(A, B)`; lookups are `O(log k + log ℓ)`.
#[derive(Clone, Debug)]
pub struct PairDecoder<'a> {
    a: &'a SortedSet,
    b: &'a SortedSet,
    gap_index: BTreeMap<Rational, usize>,
}

impl<'a> PairDecoder<'a> {
    pub fn new(a: &'a SortedSet, b: &'a SortedSet) -> Result<Self> {
        require_distinct_gaps(a)?;
        let gap_index = a.gaps().into_iter().enumerate().map(|(i, d)| (d, i)).collect();
        Ok(PairDecoder { a, b, gap_index })
    }

    /// 1-based `(i, j)` with `c = a_i + b_j` and `c' = a_{i+1} + b_j`, if any.
    pub fn decode(&self, c: &Rational, c2: &Rational) -> Option<(usize, usize)> {
        if c >= c2 {
            return None;
        }
        let i = *self.gap_index.get(&(c2 - c))?;
        let j = self.b.position(&(c - &self.a[i]))?;
        Some((i + 1, j + 1))
    }
}

pub fn decode_pair(
    a: &SortedSet,
    b: &SortedSet,
    c: &Rational,
    c2: &Rational,
) -> Result<Option<(usize, usize)>> {
    Ok(PairDecoder::new(a, b)?.decode(c, c2))
}

/// `(a_i + b_j, a_{i+1} + b_j, a'_{σ(i)} + b'_{j'}, a'_{σ(i)+1} + b'_{j'})`,
/// indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadWitness {
    pub i: usize,
    pub j: usize,
    pub j2: usize,
    pub values: [Rational; 4],
}

/// Lazy stream of quadruples in `(i, j, j')` order.
#[derive(Clone, Debug)]
pub struct Quadruples<'a> {
    a: &'a SortedSet,
    a2: &'a SortedSet,
    b: &'a SortedSet,
    b2: &'a SortedSet,
    sigma: SigmaMap,
    next: (usize, usize, usize),
}

impl Quadruples<'_> {
    /// `(k-1)·ℓ·ℓ'`, without materializing anything.
    pub fn count_total(&self) -> u128 {
        (self.a.len() as u128 - 1) * self.b.len() as u128 * self.b2.len() as u128
    }
}

impl Iterator for Quadruples<'_> {
    type Item = QuadWitness;

    fn next(&mut self) -> Option<QuadWitness> {
        let (i, j, j2) = self.next;
        if i + 1 >= self.a.len() {
            return None;
        }
        self.next = if j2 + 1 < self.b2.len() {
            (i, j, j2 + 1)
        } else if j + 1 < self.b.len() {
            (i, j + 1, 0)
        } else {
            (i + 1, 0, 0)
        };
        let s = self.sigma.image()[i] - 1;
        let (bj, bj2) = (&self.b[j], &self.b2[j2]);
        Some(QuadWitness {
            i: i + 1,
            j: j + 1,
            j2: j2 + 1,
            values: [
                &self.a[i] + bj,
                &self.a[i + 1] + bj,
                &self.a2[s] + bj2,
                &self.a2[s + 1] + bj2,
            ],
        })
    }
}

pub fn enumerate_quadruples<'a>(
    a: &'a SortedSet,
    a2: &'a SortedSet,
    sigma: &SigmaMap,
    b: &'a SortedSet,
    b2: &'a SortedSet,
) -> Result<Quadruples<'a>> {
    if !verify_sigma(a, a2, sigma)? {
        return Err(Error::Hypothesis(
            "sigma does not give distinct pairs of consecutive differences".into(),
        ));
    }
    Ok(Quadruples { a, a2, b, b2, sigma: sigma.clone(), next: (0, 0, 0) })
}

/// Splits `0..m` into `t` consecutive blocks. With `m = qt + r`, the first
/// `r` blocks have `q + 1` elements and the remaining ones `q`.
pub fn partition_blocks(m: usize, t: usize) -> Result<Vec<Range<usize>>> {
    if t == 0 || t > m {
        return Err(Error::InvalidBlockCount { t, m });
    }
    let (q, r) = (m / t, m % t);
    let mut start = 0;
    Ok((0..t)
        .map(|u| {
            let len = if u < r { q + 1 } else { q };
            let block = start..start + len;
            start += len;
            block
        })
        .collect())
}

/// How many pairs fall inside the blocks of an interval partition of `A + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCensus {
    pub t: usize,
    pub block_sizes: Vec<usize>,
    pub within_block_pairs: u64,
    /// `ℓ(k - t)`; negative when `t > k`.
    pub lower_bound: i64,
    /// `Σ_u C(|C_u|, 2)`.
    pub upper_bound: u64,
}

impl BlockCensus {
    pub fn bounds_hold(&self) -> bool {
        self.lower_bound <= self.within_block_pairs as i64
            && self.within_block_pairs <= self.upper_bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMethod {
    /// Per translate `b_j`, count consecutive elements landing in the same
    /// block: `Σ_j Σ_u max(k_{j,u} - 1, 0)`.
    RunLength,
    /// Decode every two-element subset of every block.
    SubsetDecode,
    /// `SubsetDecode` while the blocks hold at most [`SUBSET_DECODE_LIMIT`]
    /// candidate subsets, `RunLength` beyond.
    Auto,
}

pub const SUBSET_DECODE_LIMIT: u64 = 4096;

pub fn block_pair_census(a: &SortedSet, b: &SortedSet, t: usize) -> Result<BlockCensus> {
    block_pair_census_with(a, b, t, CensusMethod::Auto)
}

pub fn block_pair_census_with(
    a: &SortedSet,
    b: &SortedSet,
    t: usize,
    method: CensusMethod,
) -> Result<BlockCensus> {
    let decoder = PairDecoder::new(a, b)?;
    let c = sumset(a, b);
    let blocks = partition_blocks(c.len(), t)?;
    let block_sizes: Vec<usize> = blocks.iter().map(|r| r.len()).collect();
    let upper_bound: u64 = block_sizes.iter().map(|&s| choose2(s as u64)).sum();
    let lower_bound = i64::try_from(b.len() as i128 * (a.len() as i128 - t as i128))
        .map_err(|_| Error::InvalidBlockCount { t, m: c.len() })?;

    let method = match method {
        CensusMethod::Auto if upper_bound <= SUBSET_DECODE_LIMIT => CensusMethod::SubsetDecode,
        CensusMethod::Auto => CensusMethod::RunLength,
        m => m,
    };
    let within_block_pairs = match method {
        CensusMethod::SubsetDecode => subset_decode_count(&decoder, &c, &blocks),
        _ => run_length_count(a, b, &c, &block_sizes),
    };
    Ok(BlockCensus { t, block_sizes, within_block_pairs, lower_bound, upper_bound })
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn run_length_count(a: &SortedSet, b: &SortedSet, c: &SortedSet, sizes: &[usize]) -> u64 {
    let t = sizes.len();
    let q = c.len() / t;
    let r = c.len() % t;
    let head = r * (q + 1);
    let block_of = |pos: usize| {
        if pos < head {
            pos / (q + 1)
        } else {
            r + (pos - head) / q
        }
    };
    let mut count = 0;
    for bj in b {
        let mut prev = None;
        for ai in a {
            let pos = c
                .position(&(ai + bj))
                .expect("every a + b lies in the sumset");
            let blk = block_of(pos);
            if prev == Some(blk) {
                count += 1;
            }
            prev = Some(blk);
        }
    }
    count
}

fn subset_decode_count(decoder: &PairDecoder<'_>, c: &SortedSet, blocks: &[Range<usize>]) -> u64 {
    let elems = c.as_slice();
    let mut count = 0;
    for block in blocks {
        let part = &elems[block.clone()];
        for (x, lo) in part.iter().enumerate() {
            for hi in &part[x + 1..] {
                if decoder.decode(lo, hi).is_some() {
                    count += 1;
                }
            }
        }
    }
    count
}
