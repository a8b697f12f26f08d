//! Canonical finite sets of rationals and the hypothesis predicates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A strictly increasing, nonempty sequence of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SortedSet {
    elements: Vec<Rational>,
}

impl SortedSet {
    /// Sorts `values`; duplicates are an error rather than silently merged,
    /// since every bound downstream depends on the cardinality.
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut elements: Vec<Rational> = values.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::Empty);
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        Ok(SortedSet { elements })
    }

    pub fn from_integers<T: Copy + Into<Rational>>(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&v| v.into()))
    }

    /// Sorts and merges duplicates. Only for values that are a set by
    /// construction, such as sumsets.
    pub(crate) fn from_multiset(mut elements: Vec<Rational>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(!elements.is_empty());
        SortedSet { elements }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<Rational>) -> Self {
        debug_assert!(!elements.is_empty());
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        SortedSet { elements }
    }

    /// `{1, 2, ..., k}`.
    pub fn interval(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        Ok(Self::from_sorted_unchecked((1..=k).map(Rational::from).collect()))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false for a constructed set; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.elements
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.elements.iter()
    }

    pub fn min(&self) -> &Rational {
        &self.elements[0]
    }

    pub fn max(&self) -> &Rational {
        &self.elements[self.elements.len() - 1]
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Zero-based position of `x`, if present.
    pub fn position(&self, x: &Rational) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.elements
    }

    /// `{u·a + v : a ∈ A}`; `u` must be nonzero.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidMap("affine scale must be nonzero".into()));
        }
        Self::new(self.elements.iter().map(|a| a * scale + shift))
    }

    /// Gaps `a_{i+1} - a_i`; empty for a singleton.
    pub(crate) fn gaps(&self) -> Vec<Rational> {
        self.elements.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    pub fn consecutive_differences(&self) -> Result<DiffSeq> {
        if self.len() < 2 {
            return Err(Error::TooSmall { need: 2, got: self.len() });
        }
        Ok(DiffSeq(self.gaps()))
    }

    /// Consecutive differences strictly increase. Vacuously true for `|A| ≤ 2`.
    pub fn is_convex(&self) -> bool {
        self.gaps().windows(2).all(|w| w[0] < w[1])
    }

    pub fn has_distinct_consecutive_differences(&self) -> bool {
        let gaps = self.gaps();
        distinct_count(&gaps) == gaps.len()
    }

    /// `|D| / |A|` where `D` is the set of distinct consecutive differences.
    pub fn delta_ratio(&self) -> Result<Rational> {
        let diffs = self.consecutive_differences()?;
        Ok(Rational::ratio(diffs.distinct_count() as i64, self.len() as i64))
    }

    /// All `C(|S|, 2)` positive differences are pairwise distinct.
    pub fn is_sidon(&self) -> bool {
        let n = self.len();
        let mut diffs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                diffs.push(b - a);
            }
        }
        distinct_count(&diffs) == diffs.len()
    }

    pub fn apply_map(&self, map: &PointMap) -> Result<Self> {
        let image = self
            .elements
            .iter()
            .map(|a| map.eval(a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

impl Index<usize> for SortedSet {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.elements[i]
    }
}

impl<'a> IntoIterator for &'a SortedSet {
    type Item = &'a Rational;
    type IntoIter = core::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

fn distinct_count<T: Ord + Clone>(values: &[T]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Consecutive differences `d_i = a_{i+1} - a_i` of a set with at least two
/// elements. Every entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffSeq(Vec<Rational>);

impl DiffSeq {
    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        distinct_count(&self.0)
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }
}

/// A map applied pointwise to a set: a closed family of builtins or an
/// explicit table, so results stay reproducible and serializable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointMap {
    /// `x^p`, `p ≥ 2`.
    Power(u32),
    /// `c_0 + c_1 x + c_2 x^2 + ...`, coefficients in ascending degree.
    Polynomial(Vec<Rational>),
    Table(BTreeMap<Rational, Rational>),
}

impl PointMap {
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        match self {
            PointMap::Power(p) if *p < 2 => Err(Error::InvalidMap(format!(
                "power family needs an exponent of at least 2, got {p}"
            ))),
            PointMap::Power(p) => Ok(x.pow(*p)),
            PointMap::Polynomial(coeffs) => {
                // Horner
                Ok(coeffs
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * x + c))
            }
            PointMap::Table(table) => table
                .get(x)
                .cloned()
                .ok_or_else(|| Error::IncompleteMap(x.clone())),
        }
    }
}
