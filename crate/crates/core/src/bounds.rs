//! Exact verification of the sumset lower bounds.
//!
//! Every inequality involving a square root is squared into integer form
//! before comparing, so nothing here touches floating point:
//!
//! | report | inequality checked |
//! |--------|--------------------|
//! | T1 `main`  | `9m² ≥ k²ℓ` |
//! | T1 `sharp` | `(2m + k - 1)² > 2ℓ(k-1)²` for `k, ℓ ≥ 3` |
//! | T2         | measurement only: `δ` and the pair `(m², kℓ²)` |
//! | T3 `main`  | `8(mm')² ≥ k³ℓℓ'` |
//! | T4 `main`  | `8·max(m, m')⁴ ≥ n⁵` |

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sets::{PointMap, SortedSet};
use crate::sigma::{find_sigma, identity_sigma_for_convex_map};
use crate::sumset::sumset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Gt,
    Le,
}

impl Relation {
    pub fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Le => lhs <= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
        }
    }
}

/// One exact integer comparison `lhs op rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub lhs: BigInt,
    pub op: Relation,
    pub rhs: BigInt,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &'static str, lhs: BigInt, op: Relation, rhs: BigInt) -> Self {
        let pass = op.holds(&lhs, &rhs);
        Check { name, lhs, op, rhs, pass }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.name,
            self.lhs,
            self.op.symbol(),
            self.rhs,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// `|A+B| ≥ k√ℓ / 3` for `A` with distinct consecutive differences.
    T1,
    /// Many distinct consecutive differences (`|D| ≥ δ|A|`).
    T2,
    /// Two sets with distinct pairs of consecutive differences.
    T3,
    /// `max(|A+B|, |F(A)+C|)` for a convex map `F`.
    T4,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::T1 => 1,
            Theorem::T2 => 2,
            Theorem::T3 => 3,
            Theorem::T4 => 4,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sizes {
    pub k: u64,
    pub l: u64,
    pub l2: Option<u64>,
    pub m: u64,
    pub m2: Option<u64>,
}

/// An empirical constant as an exact ratio `num / den` (already squared or
/// raised to the needed power, so no roots appear).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Empirical {
    pub num: BigInt,
    pub den: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub theorem: Theorem,
    /// When false the checks are still computed but carry no guarantee.
    pub hypothesis_ok: bool,
    pub sizes: Sizes,
    pub checks: Vec<Check>,
    pub empirical: Option<Empirical>,
    pub delta: Option<Rational>,
}

impl BoundReport {
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Hypothesis holds and every check passes.
    pub fn verified(&self) -> bool {
        self.hypothesis_ok && self.checks_pass()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

pub fn check_theorem1(a: &SortedSet, b: &SortedSet) -> BoundReport {
    let (k, l) = (big(a.len()), big(b.len()));
    let m = big(sumset(a, b).len());
    let mut checks = vec![Check::new("main", &m * &m * 9u32, Relation::Ge, &k * &k * &l)];
    if a.len() >= 3 && b.len() >= 3 {
        // m > (k-1)(√(2ℓ) - 1)/2  <=>  (2m + k - 1)² > 2ℓ(k-1)²
        let k1 = &k - 1u32;
        let lhs = &m * 2u32 + &k1;
        checks.push(Check::new("sharp", &lhs * &lhs, Relation::Gt, &l * 2u32 * &k1 * &k1));
    }
    BoundReport {
        theorem: Theorem::T1,
        hypothesis_ok: a.has_distinct_consecutive_differences(),
        sizes: Sizes { k: a.len() as u64, l: b.len() as u64, m: to_u64(&m), ..Sizes::default() },
        checks,
        empirical: Some(Empirical { num: &m * &m, den: &k * &k * &l }),
        delta: None,
    }
}

/// Measurement only: reports `δ = |D|/|A|` and `c² = m² / (kℓ²)`.
pub fn check_theorem2(a: &SortedSet, b: &SortedSet) -> Result<BoundReport> {
    let delta = a.delta_ratio()?;
    let (k, l) = (big(a.len()), big(b.len()));
    let m = big(sumset(a, b).len());
    Ok(BoundReport {
        theorem: Theorem::T2,
        hypothesis_ok: true,
        sizes: Sizes { k: a.len() as u64, l: b.len() as u64, m: to_u64(&m), ..Sizes::default() },
        checks: Vec::new(),
        empirical: Some(Empirical { num: &m * &m, den: &k * &l * &l }),
        delta: Some(delta),
    })
}

pub fn check_theorem3(
    a: &SortedSet,
    a2: &SortedSet,
    b: &SortedSet,
    b2: &SortedSet,
) -> Result<BoundReport> {
    let hypothesis_ok = find_sigma(a, a2)?.is_some();
    let k = big(a.len());
    let (l, l2) = (big(b.len()), big(b2.len()));
    let m = big(sumset(a, b).len());
    let m2 = big(sumset(a2, b2).len());
    let mm = &m * &m2;
    let rhs = &k * &k * &k * &l * &l2;
    Ok(BoundReport {
        theorem: Theorem::T3,
        hypothesis_ok,
        sizes: Sizes {
            k: a.len() as u64,
            l: b.len() as u64,
            l2: Some(b2.len() as u64),
            m: to_u64(&m),
            m2: Some(to_u64(&m2)),
        },
        checks: vec![Check::new("main", &mm * &mm * 8u32, Relation::Ge, rhs.clone())],
        empirical: Some(Empirical { num: &mm * &mm, den: rhs }),
        delta: None,
    })
}

pub fn check_theorem4(
    a: &SortedSet,
    b: &SortedSet,
    c: &SortedSet,
    map: &PointMap,
) -> Result<BoundReport> {
    let n = a.len();
    for other in [b, c] {
        if other.len() != n {
            return Err(Error::SizeMismatch { left: n, right: other.len() });
        }
    }
    let image = a.apply_map(map)?;
    let hypothesis_ok = match identity_sigma_for_convex_map(a, map) {
        Ok(_) => true,
        Err(Error::Hypothesis(_)) => false,
        Err(e) => return Err(e),
    };
    let m = sumset(a, b).len();
    let m2 = sumset(&image, c).len();
    let nn = big(n);
    let n5 = nn.pow(5);
    let top = big(m.max(m2)).pow(4);
    let mut checks = vec![Check::new("main", &top * 8u32, Relation::Ge, n5.clone())];
    if *b == image && c == a {
        // |A + F(A)|, the special case B = F(A), C = A
        checks.push(Check::new("special", big(m).pow(4) * 8u32, Relation::Ge, n5.clone()));
    }
    let n64 = n as u64;
    Ok(BoundReport {
        theorem: Theorem::T4,
        hypothesis_ok,
        sizes: Sizes { k: n64, l: n64, l2: Some(n64), m: m as u64, m2: Some(m2 as u64) },
        checks,
        empirical: Some(Empirical { num: top, den: n5 }),
        delta: None,
    })
}

fn to_u64(n: &BigInt) -> u64 {
    u64::try_from(n).expect("set sizes fit in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> SortedSet {
        SortedSet::from_integers(v).unwrap()
    }

    fn pair(c: &Check) -> (BigInt, BigInt) {
        (c.lhs.clone(), c.rhs.clone())
    }

    #[test]
    fn theorem1_examples() {
        let r = check_theorem1(&set(&[0, 1, 3]), &set(&[0, 5, 11]));
        assert!(r.hypothesis_ok);
        assert_eq!(r.sizes.m, 9);
        assert_eq!(pair(r.check("main").unwrap()), (729.into(), 27.into()));
        assert!(r.verified());

        let r = check_theorem1(&set(&[0, 1]), &set(&[0]));
        assert_eq!(pair(r.check("main").unwrap()), (36.into(), 4.into()));
        assert!(r.check("sharp").is_none());
        assert!(r.verified());

        let ap = set(&[0, 1, 2, 3]);
        let r = check_theorem1(&ap, &ap);
        assert!(!r.hypothesis_ok);
        assert_eq!(r.sizes.m, 7);
        assert_eq!(pair(r.check("main").unwrap()), (441.into(), 64.into()));
        assert!(r.checks_pass());
        assert!(!r.verified());
    }

    #[test]
    fn theorem1_sharp_form() {
        // k = 3, ℓ = 3, m = 9: (18 + 2)² = 400 > 2·3·4 = 24
        let r = check_theorem1(&set(&[0, 1, 3]), &set(&[0, 5, 11]));
        assert_eq!(pair(r.check("sharp").unwrap()), (400.into(), 24.into()));
    }

    #[test]
    fn near_ties_are_decided_exactly() {
        // 9m² = k²ℓ exactly: equality passes Ge, fails Gt
        let eq = Check::new("t", BigInt::from(36), Relation::Ge, BigInt::from(36));
        assert!(eq.pass);
        let strict = Check::new("t", BigInt::from(36), Relation::Gt, BigInt::from(36));
        assert!(!strict.pass);
        let huge = BigInt::from(10u64).pow(40);
        let below = Check::new("t", &huge - 1u32, Relation::Ge, huge.clone());
        assert!(!below.pass);
    }

    #[test]
    fn theorem2_examples() {
        let r = check_theorem2(&set(&[0, 1, 2, 4, 8]), &set(&[0, 1])).unwrap();
        assert_eq!(r.delta, Some(Rational::ratio(3, 5)));
        assert_eq!(r.sizes.m, 8);
        let e = r.empirical.unwrap();
        assert_eq!((e.num, e.den), (64.into(), 20.into()));
        assert!(r.checks.is_empty());

        let r = check_theorem2(&set(&[0, 1, 3, 7]), &set(&[0])).unwrap();
        assert_eq!(r.delta, Some(Rational::ratio(3, 4)));
        let r = check_theorem2(&set(&[0, 1, 2, 3]), &set(&[0])).unwrap();
        assert_eq!(r.delta, Some(Rational::ratio(1, 4)));
        assert!(check_theorem2(&set(&[1]), &set(&[0])).is_err());
    }

    #[test]
    fn theorem3_examples() {
        let b = set(&[0, 1]);
        let r = check_theorem3(&set(&[0, 1, 3]), &set(&[0, 1, 4]), &b, &b).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!((r.sizes.m, r.sizes.m2), (5, Some(5)));
        assert_eq!(pair(r.check("main").unwrap()), (5000.into(), 108.into()));

        let r = check_theorem3(&set(&[0, 1, 2]), &set(&[0, 3, 6]), &b, &b).unwrap();
        assert!(!r.hypothesis_ok);
        assert!(!r.verified());

        let r = check_theorem3(&set(&[0, 7]), &set(&[2, 3]), &set(&[0, 1, 5]), &b).unwrap();
        assert!(r.verified());

        assert_eq!(
            check_theorem3(&set(&[0, 1]), &set(&[0]), &b, &b),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn theorem4_examples() {
        let a = set(&[1, 2, 3]);
        let sq = PointMap::Power(2);
        let fa = a.apply_map(&sq).unwrap();
        let r = check_theorem4(&a, &fa, &a, &sq).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!((r.sizes.m, r.sizes.m2), (9, Some(9)));
        assert_eq!(pair(r.check("main").unwrap()), (52488.into(), 243.into()));
        assert!(r.check("special").unwrap().pass);

        let affine = PointMap::Polynomial(alloc::vec![Rational::zero(), 2.into()]);
        let r = check_theorem4(&a, &a, &a, &affine).unwrap();
        assert!(!r.hypothesis_ok);

        let one = set(&[5]);
        let r = check_theorem4(&one, &one, &one, &sq).unwrap();
        assert_eq!((r.sizes.m, r.sizes.m2), (1, Some(1)));
        assert_eq!(pair(r.check("main").unwrap()), (8.into(), 1.into()));
        assert!(r.verified());

        assert!(matches!(
            check_theorem4(&a, &one, &a, &sq),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
