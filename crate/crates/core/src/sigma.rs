//! Gap bijections σ with pairwise distinct ordered pairs `(d_i, d'_{σ(i)})`.
//!
//! Deciding whether σ exists reduces to a transportation problem on
//! difference-value classes: group the indices of `d` into classes of equal
//! value (sizes `g_a`) and likewise for `d'` (sizes `h_b`). A valid σ is the
//! same thing as a 0/1 matrix with row sums `g_a` and column sums `h_b`,
//! since two indices of one `d`-class may not land in the same `d'`-class.
//! That is a unit-capacity max-flow between the classes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::sets::{PointMap, SortedSet};

/// A permutation of `{1, ..., k-1}`; `image()[i - 1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaMap {
    image: Vec<usize>,
}

impl SigmaMap {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = alloc::vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::InvalidSigma(format!("value {v} outside 1..={n}")));
            }
            if core::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidSigma(format!("value {v} repeated")));
            }
        }
        Ok(SigmaMap { image })
    }

    pub fn identity(len: usize) -> Self {
        SigmaMap { image: (1..=len).collect() }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }
}

/// Finds a σ for two gap sequences of equal length, or `None` if none exists.
///
/// Deterministic: classes are ordered by value, augmenting paths prefer the
/// lowest class index, and within a class indices are assigned in ascending
/// order.
pub fn find_sigma_for_gaps<T: Ord>(d: &[T], d2: &[T]) -> Result<Option<SigmaMap>> {
    if d.len() != d2.len() {
        return Err(Error::SizeMismatch { left: d.len(), right: d2.len() });
    }
    let rows = classes(d);
    let cols = classes(d2);
    let (p, q) = (rows.len(), cols.len());
    let source = 0;
    let sink = p + q + 1;
    let mut net = FlowNetwork::new(p + q + 2);
    for (a, members) in rows.iter().enumerate() {
        net.add_arc(source, 1 + a, members.len() as u64);
    }
    let mut cells = Vec::with_capacity(p * q);
    for a in 0..p {
        for b in 0..q {
            cells.push((a, b, net.add_arc(1 + a, 1 + p + b, 1)));
        }
    }
    for (b, members) in cols.iter().enumerate() {
        net.add_arc(1 + p + b, sink, members.len() as u64);
    }
    if net.max_flow(source, sink) != d.len() as u64 {
        return Ok(None);
    }

    let mut row_next = alloc::vec![0usize; p];
    let mut col_next = alloc::vec![0usize; q];
    let mut image = alloc::vec![0usize; d.len()];
    for (a, b, arc) in cells {
        if net.flow(arc) == 1 {
            let i = rows[a][row_next[a]];
            let j = cols[b][col_next[b]];
            row_next[a] += 1;
            col_next[b] += 1;
            image[i] = j + 1;
        }
    }
    let sigma = SigmaMap::new(image)?;
    debug_assert!(pairs_distinct(d, d2, &sigma));
    Ok(Some(sigma))
}

/// Index classes of equal value, ordered by value; members ascending.
fn classes<T: Ord>(values: &[T]) -> Vec<Vec<usize>> {
    let mut by_value: BTreeMap<&T, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        by_value.entry(v).or_default().push(i);
    }
    by_value.into_values().collect()
}

pub fn verify_sigma_for_gaps<T: Ord>(d: &[T], d2: &[T], sigma: &SigmaMap) -> Result<bool> {
    if d.len() != d2.len() {
        return Err(Error::SizeMismatch { left: d.len(), right: d2.len() });
    }
    if sigma.len() != d.len() {
        return Err(Error::InvalidSigma(format!(
            "sigma has {} entries, expected {}",
            sigma.len(),
            d.len()
        )));
    }
    Ok(pairs_distinct(d, d2, sigma))
}

fn pairs_distinct<T: Ord>(d: &[T], d2: &[T], sigma: &SigmaMap) -> bool {
    let mut pairs: Vec<(&T, &T)> = d
        .iter()
        .zip(sigma.image())
        .map(|(x, &s)| (x, &d2[s - 1]))
        .collect();
    pairs.sort_unstable();
    pairs.windows(2).all(|w| w[0] != w[1])
}

fn require_same_size(a: &SortedSet, a2: &SortedSet) -> Result<()> {
    if a.len() != a2.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: a2.len() });
    }
    Ok(())
}

pub fn find_sigma(a: &SortedSet, a2: &SortedSet) -> Result<Option<SigmaMap>> {
    require_same_size(a, a2)?;
    find_sigma_for_gaps(&a.gaps(), &a2.gaps())
}

pub fn verify_sigma(a: &SortedSet, a2: &SortedSet, sigma: &SigmaMap) -> Result<bool> {
    require_same_size(a, a2)?;
    verify_sigma_for_gaps(&a.gaps(), &a2.gaps(), sigma)
}

/// The identity works for `A` and `F(A)` whenever `F` is strictly convex on
/// `A`. Verified directly on the image rather than assumed.
pub fn identity_sigma_for_convex_map(a: &SortedSet, map: &PointMap) -> Result<SigmaMap> {
    let image = a.apply_map(map)?;
    let id = SigmaMap::identity(a.len().saturating_sub(1));
    if verify_sigma(a, &image, &id)? {
        Ok(id)
    } else {
        Err(Error::Hypothesis(
            "identity does not give distinct pairs of consecutive differences for A and F(A)"
                .into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use alloc::vec;

    fn sigma(v: &[usize]) -> SigmaMap {
        SigmaMap::new(v.to_vec()).unwrap()
    }

    fn set(v: &[i64]) -> SortedSet {
        SortedSet::from_integers(v).unwrap()
    }

    #[test]
    fn find_examples() {
        assert_eq!(find_sigma_for_gaps(&[1, 2], &[1, 3]).unwrap(), Some(sigma(&[1, 2])));
        let s = find_sigma_for_gaps(&[1, 1, 2], &[3, 4, 3]).unwrap().unwrap();
        assert!(verify_sigma_for_gaps(&[1, 1, 2], &[3, 4, 3], &s).unwrap());
        assert_eq!(find_sigma_for_gaps(&[1, 1], &[3, 3]).unwrap(), None);
        assert_eq!(find_sigma_for_gaps::<u8>(&[], &[]).unwrap(), Some(sigma(&[])));
        assert_eq!(
            find_sigma_for_gaps(&[1], &[1, 2]),
            Err(Error::SizeMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn find_on_sets() {
        // d = (1, 1, 2), d' = (3, 4, 3)
        let a = set(&[0, 1, 2, 4]);
        let a2 = set(&[0, 3, 7, 10]);
        let s = find_sigma(&a, &a2).unwrap().unwrap();
        assert!(verify_sigma(&a, &a2, &s).unwrap());
        assert_eq!(find_sigma(&a, &set(&[0, 1])), Err(Error::SizeMismatch { left: 4, right: 2 }));
    }

    #[test]
    fn verify_examples() {
        let (d, d2) = ([1, 1, 2], [3, 4, 3]);
        assert!(verify_sigma_for_gaps(&d, &d2, &sigma(&[1, 2, 3])).unwrap());
        assert!(!verify_sigma_for_gaps(&d, &d2, &sigma(&[1, 3, 2])).unwrap());
        assert!(verify_sigma_for_gaps(&[5], &[5], &sigma(&[1])).unwrap());
        assert!(matches!(
            verify_sigma_for_gaps(&d, &d2, &sigma(&[1, 2])),
            Err(Error::InvalidSigma(_))
        ));
    }

    #[test]
    fn malformed_sigma() {
        assert!(matches!(SigmaMap::new(vec![1, 1]), Err(Error::InvalidSigma(_))));
        assert!(matches!(SigmaMap::new(vec![0, 1]), Err(Error::InvalidSigma(_))));
        assert!(matches!(SigmaMap::new(vec![3, 1]), Err(Error::InvalidSigma(_))));
    }

    #[test]
    fn identity_for_convex_maps() {
        let sq = PointMap::Power(2);
        assert_eq!(identity_sigma_for_convex_map(&set(&[1, 2, 3]), &sq).unwrap(), sigma(&[1, 2]));
        assert_eq!(identity_sigma_for_convex_map(&set(&[0, 1, 3]), &sq).unwrap(), sigma(&[1, 2]));
        let affine = PointMap::Polynomial(vec![Rational::zero(), 2.into()]);
        assert!(matches!(
            identity_sigma_for_convex_map(&set(&[1, 2, 3]), &affine),
            Err(Error::Hypothesis(_))
        ));
        assert_eq!(identity_sigma_for_convex_map(&set(&[4]), &sq).unwrap(), sigma(&[]));
    }

    #[test]
    fn deterministic_output() {
        let d = [2, 1, 2, 1, 3, 3];
        let d2 = [1, 1, 2, 2, 3, 3];
        let first = find_sigma_for_gaps(&d, &d2).unwrap();
        for _ in 0..5 {
            assert_eq!(find_sigma_for_gaps(&d, &d2).unwrap(), first);
        }
    }
}
