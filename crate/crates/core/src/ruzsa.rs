//! Ruzsa's construction showing the `k^{3/2}` bound is sharp.
//!
//! Take a Sidon set `S` of odd size. The complete graph on `S` is Eulerian,
//! and walking an Eulerian circuit lists the elements of `S` (with
//! repetition) so that consecutive differences are distinct: two distinct
//! edges of a Sidon set never share a signed difference. Reading the first
//! `k = C(|S|, 2)` vertices as `L` gives `A = {i + L_i}`, whose sumset with
//! `[k] = {1, ..., k}` stays of order `|S|^3 ~ k^{3/2}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::bounds::{Check, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sets::SortedSet;
use crate::sumset::sumset;

/// First `n` terms of the greedy Sidon sequence starting at 1
/// (1, 2, 4, 8, 13, 21, 31, ...).
pub fn greedy_sidon(n: usize) -> Result<SortedSet> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let terms = greedy_sidon_terms(n);
    SortedSet::new(terms.into_iter().map(Rational::from))
}

fn greedy_sidon_terms(n: usize) -> Vec<u64> {
    let mut terms: Vec<u64> = Vec::with_capacity(n);
    // used[d] is set once d occurs as a difference
    let mut used: Vec<bool> = vec![false; 1];
    let mut candidate = 1u64;
    while terms.len() < n {
        let fresh = terms.iter().all(|&s| {
            let d = (candidate - s) as usize;
            d >= used.len() || !used[d]
        });
        // new differences must also be distinct among themselves, which holds
        // automatically since the existing terms are distinct
        if fresh {
            for &s in &terms {
                let d = (candidate - s) as usize;
                if d >= used.len() {
                    used.resize(d + 1, false);
                }
                used[d] = true;
            }
            terms.push(candidate);
        }
        candidate += 1;
    }
    terms
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// `{2pk + (k² mod p) : 0 ≤ k < p}` for a prime `p`, a Sidon set of size `p`.
pub fn modular_sidon(p: u64) -> Result<SortedSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let set = SortedSet::new((0..p).map(|k| {
        let sq = (u128::from(k) * u128::from(k) % u128::from(p)) as u64;
        Rational::from_integer(BigInt::from(2 * p) * k + sq)
    }))?;
    debug_assert!(set.is_sidon());
    Ok(set)
}

/// Elements of a Sidon set listed with repetition so that consecutive
/// differences are pairwise distinct and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    entries: Vec<Rational>,
}

impl Listing {
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_distinct_steps(&self) -> bool {
        let mut steps: Vec<Rational> =
            self.entries.windows(2).map(|w| &w[1] - &w[0]).collect();
        if steps.iter().any(Rational::is_zero) {
            return false;
        }
        let n = steps.len();
        steps.sort_unstable();
        steps.dedup();
        steps.len() == n
    }
}

/// Eulerian circuit of the complete graph on `S` (Hierholzer, starting at
/// `min(S)`, always taking the smallest unused neighbour), minus its closing
/// vertex. The result has exactly `C(|S|, 2)` entries.
pub fn eulerian_listing(s: &SortedSet) -> Result<Listing> {
    let n = s.len();
    if n.is_multiple_of(2) {
        return Err(Error::NeedOddSize(n));
    }
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    if !s.is_sidon() {
        return Err(Error::Hypothesis("S is not a Sidon set".into()));
    }

    let circuit = hierholzer_complete(n);
    debug_assert_eq!(circuit.len(), n * (n - 1) / 2 + 1);
    debug_assert_eq!(circuit.first(), circuit.last());
    let k = circuit.len() - 1;
    let entries = circuit[..k].iter().map(|&v| s[v].clone()).collect();
    Ok(Listing { entries })
}

/// Vertex sequence of an Eulerian circuit of `K_n` (n odd) from vertex 0.
fn hierholzer_complete(n: usize) -> Vec<usize> {
    let mut used = vec![false; n * n];
    // next[v]: smallest neighbour of v not yet ruled out
    let mut next = vec![0usize; n];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(n * (n - 1) / 2 + 1);
    while let Some(&v) = stack.last() {
        while next[v] < n && (next[v] == v || used[v * n + next[v]]) {
            next[v] += 1;
        }
        if next[v] < n {
            let u = next[v];
            used[v * n + u] = true;
            used[u * n + v] = true;
            stack.push(u);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuzsaArtifacts {
    pub sidon: SortedSet,
    /// `S` translated to start at 0 and divided by `max + 1`: inside `[0, 1)`.
    pub scaled: SortedSet,
    pub listing: Listing,
    /// `{i + L_i : 1 ≤ i ≤ k}`.
    pub set: SortedSet,
    pub k: u64,
    /// `|A + [k]|`.
    pub sumset_size: u64,
}

pub fn build_ruzsa_set(s: &SortedSet) -> Result<RuzsaArtifacts> {
    // validate before scaling so errors refer to the caller's S
    if s.len().is_multiple_of(2) {
        return Err(Error::NeedOddSize(s.len()));
    }
    let scaled = scale_into_unit_interval(s)?;
    let listing = eulerian_listing(&scaled)?;
    let k = listing.len() as u64;

    let set = SortedSet::new(
        listing
            .entries()
            .iter()
            .enumerate()
            .map(|(i, l)| Rational::from(i as u64 + 1) + l),
    )?;
    let sumset_size = sumset(&set, &SortedSet::interval(k)?).len() as u64;
    debug_assert!(set.has_distinct_consecutive_differences());
    // every element is i + j + s with i + j in 2..=2k and s in S
    debug_assert!(sumset_size <= (2 * k - 1) * s.len() as u64);

    Ok(RuzsaArtifacts { sidon: s.clone(), scaled, listing, set, k, sumset_size })
}

fn scale_into_unit_interval(s: &SortedSet) -> Result<SortedSet> {
    let shift = -s.min();
    let width = s.max() - s.min() + Rational::one();
    let scale = &Rational::one() / &width;
    s.affine(&scale, &(&shift * &scale))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    pub k: u64,
    pub sidon_size: u64,
    pub sumset_size: u64,
    pub checks: Vec<Check>,
}

impl TightnessReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Exact comparisons placing `|A + [k]|` within a constant of `k^{3/2}`:
///
/// - `envelope`: `|A+[k]| ≤ (2k-1)|S|`
/// - `cubic_envelope`: `|A+[k]| ≤ |S|^3`
/// - `upper`: `|A+[k]|² ≤ 9k³`
/// - `floor`: `9|A+[k]|² ≥ k³` (the distinct-gap lower bound with `ℓ = k`)
pub fn tightness_report(art: &RuzsaArtifacts) -> TightnessReport {
    let k = BigInt::from(art.k);
    let size = BigInt::from(art.sumset_size);
    let s = BigInt::from(art.sidon.len());
    let k3 = &k * &k * &k;
    let checks = vec![
        Check::new("envelope", size.clone(), Relation::Le, (&k * 2u32 - 1u32) * &s),
        Check::new("cubic_envelope", size.clone(), Relation::Le, &s * &s * &s),
        Check::new("upper", &size * &size, Relation::Le, &k3 * 9u32),
        Check::new("floor", &size * &size * 9u32, Relation::Ge, k3),
    ];
    TightnessReport {
        k: art.k,
        sidon_size: art.sidon.len() as u64,
        sumset_size: art.sumset_size,
        checks,
    }
}
