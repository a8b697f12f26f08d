//! Minimal `|A + A|` over convex sets of integers.
//!
//! A convex set, translated so that `a_1 = 0`, is the same as a strictly
//! increasing vector of positive gaps `d_1 < d_2 < ... < d_{n-1}`. Its width
//! is `Σ d_i`. Since `|A + A|` is invariant under dilation, the exhaustive
//! search only visits gap vectors with `gcd = 1`.
//!
//! Nobody knows a width that provably contains the global minimum, so an
//! exhaustive result is a minimum *within its budget*. `complete` marks the
//! case where the best value already appears at half the budget.

use alloc::vec::Vec;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sets::SortedSet;
use crate::sumset::sumset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Anneal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub n: usize,
    pub best_size: u64,
    pub witness_diffs: Vec<u64>,
    pub mode: SearchMode,
    /// Exhaustive only.
    pub width_budget: Option<u64>,
    /// Exhaustive only: the search was restricted to `gcd(d) = 1`.
    pub gcd_normalized: bool,
    pub complete: bool,
    /// Anneal only.
    pub seed: Option<u64>,
    /// Anneal only.
    pub steps: Option<u64>,
    /// Seconds since the Unix epoch; stamped by the record store, never by
    /// the search itself.
    pub timestamp: Option<u64>,
}

impl SearchRecord {
    /// The witness as a set `{0, d_1, d_1 + d_2, ...}`.
    pub fn witness_set(&self) -> SortedSet {
        set_from_gaps(&self.witness_diffs)
    }

    /// Recomputes the witness through the generic sumset code.
    pub fn verify(&self) -> bool {
        let a = self.witness_set();
        a.len() == self.n
            && a.is_convex()
            && sumset(&a, &a).len() as u64 == self.best_size
    }
}

pub fn set_from_gaps(gaps: &[u64]) -> SortedSet {
    let mut acc = 0u64;
    let mut elems = Vec::with_capacity(gaps.len() + 1);
    elems.push(Rational::zero());
    for &g in gaps {
        acc += g;
        elems.push(Rational::from(acc));
    }
    SortedSet::new(elems).expect("positive gaps give a strictly increasing set")
}

/// `|A + A|` for `A = {0, d_1, d_1 + d_2, ...}`, using `scratch` for the sums.
fn self_sumset_size(gaps: &[u64], elems: &mut Vec<u64>, scratch: &mut Vec<u64>) -> u64 {
    elems.clear();
    elems.push(0);
    let mut acc = 0;
    for &g in gaps {
        acc += g;
        elems.push(acc);
    }
    scratch.clear();
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i..] {
            scratch.push(x + y);
        }
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len() as u64
}

/// Smallest possible width `1 + 2 + ... + (n-1)`.
pub fn minimum_width(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

struct Exhaustive {
    len: usize,
    budget: u64,
    gaps: Vec<u64>,
    elems: Vec<u64>,
    scratch: Vec<u64>,
    best: Option<(u64, Vec<u64>)>,
    /// Smallest width at which the current best size occurs.
    best_width: u64,
}

impl Exhaustive {
    /// Lexicographic DFS; `used` is the width spent on `gaps` so far.
    fn descend(&mut self, used: u64) {
        let depth = self.gaps.len();
        if depth == self.len {
            self.visit(used);
            return;
        }
        let floor = self.gaps.last().map_or(1, |&g| g + 1);
        // after choosing d, the remaining r gaps need at least r·d + r(r+1)/2
        let r = (self.len - depth - 1) as u64;
        let mut d = floor;
        while used + d + r * d + r * (r + 1) / 2 <= self.budget {
            self.gaps.push(d);
            self.descend(used + d);
            self.gaps.pop();
            d += 1;
        }
    }

    fn visit(&mut self, width: u64) {
        let g = self.gaps.iter().fold(0u64, |acc, &d| acc.gcd(&d));
        if g > 1 {
            return;
        }
        let size = self_sumset_size(&self.gaps, &mut self.elems, &mut self.scratch);
        match &self.best {
            Some((best, _)) if size > *best => {}
            Some((best, _)) if size == *best => {
                self.best_width = self.best_width.min(width);
            }
            _ => {
                // first strict improvement in lexicographic order is the
                // lexicographically least witness for this size
                self.best = Some((size, self.gaps.clone()));
                self.best_width = width;
            }
        }
    }
}

/// Minimum `|A + A|` over convex `n`-sets of integers with width at most
/// `width_budget`, with the lexicographically least gap vector attaining it.
pub fn exhaustive_min_sumset(n: usize, width_budget: u64) -> Result<SearchRecord> {
    if n < 2 {
        return Err(Error::TooSmall { need: 2, got: n });
    }
    let minimum = minimum_width(n);
    if width_budget < minimum {
        return Err(Error::BudgetTooSmall { budget: width_budget, minimum });
    }
    let mut search = Exhaustive {
        len: n - 1,
        budget: width_budget,
        gaps: Vec::with_capacity(n - 1),
        elems: Vec::with_capacity(n),
        scratch: Vec::with_capacity(n * (n + 1) / 2),
        best: None,
        best_width: u64::MAX,
    };
    search.descend(0);
    let (best_size, witness_diffs) = search.best.expect("(1, 2, ..., n-1) fits the budget");
    let record = SearchRecord {
        n,
        best_size,
        witness_diffs,
        mode: SearchMode::Exhaustive,
        width_budget: Some(width_budget),
        gcd_normalized: true,
        complete: search.best_width.saturating_mul(2) <= width_budget,
        seed: None,
        steps: None,
        timestamp: None,
    };
    assert!(record.verify(), "exhaustive witness failed re-verification");
    Ok(record)
}

/// Annealing schedule: temperature falls geometrically from `START` to `END`.
const START_TEMPERATURE: f64 = 2.0;
const END_TEMPERATURE: f64 = 0.02;

/// Simulated annealing over convex gap vectors, starting from
/// `(1, 2, ..., n-1)`.
///
/// `steps` counts objective evaluations including the starting vector, so
/// `steps = 1` returns the start. Each further step nudges one gap by ±1;
/// moves that break positivity or strict monotonicity are rejected. The best
/// vector seen is returned; it is never claimed minimal.
pub fn anneal_min_sumset(n: usize, steps: u64, seed: u64) -> Result<SearchRecord> {
    if n < 2 {
        return Err(Error::TooSmall { need: 2, got: n });
    }
    if steps == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaps: Vec<u64> = (1..n as u64).collect();
    let mut elems = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(n * (n + 1) / 2);
    let mut current = self_sumset_size(&gaps, &mut elems, &mut scratch);
    let mut best = (current, gaps.clone());

    let moves = steps - 1;
    let cooling = if moves > 0 {
        libm::pow(END_TEMPERATURE / START_TEMPERATURE, 1.0 / moves as f64)
    } else {
        1.0
    };
    let mut temperature = START_TEMPERATURE;
    for _ in 0..moves {
        let i = rng.gen_range(0..gaps.len());
        let up = rng.gen::<bool>();
        let old = gaps[i];
        let new = if up { old + 1 } else { old - 1 };
        let above_prev = if i == 0 { new >= 1 } else { new > gaps[i - 1] };
        let below_next = i + 1 == gaps.len() || new < gaps[i + 1];
        if above_prev && below_next {
            gaps[i] = new;
            let size = self_sumset_size(&gaps, &mut elems, &mut scratch);
            let accept = size <= current || {
                let delta = (size - current) as f64;
                rng.gen::<f64>() < libm::exp(-delta / temperature)
            };
            if accept {
                current = size;
                if size < best.0 || (size == best.0 && gaps < best.1) {
                    best = (size, gaps.clone());
                }
            } else {
                gaps[i] = old;
            }
        }
        temperature *= cooling;
    }

    let record = SearchRecord {
        n,
        best_size: best.0,
        witness_diffs: best.1,
        mode: SearchMode::Anneal,
        width_budget: None,
        gcd_normalized: false,
        complete: false,
        seed: Some(seed),
        steps: Some(steps),
        timestamp: None,
    };
    assert!(record.verify(), "annealing witness failed re-verification");
    Ok(record)
}
