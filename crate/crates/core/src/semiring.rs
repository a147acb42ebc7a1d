//! Semirings over which weighted automata are evaluated.

use std::fmt::Debug;

use serde::Serialize;

/// `(K, ⊕, ⊗, 0, 1)`.
pub trait Semiring: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Largest componentwise absolute difference; used as a convergence test.
    fn distance(&self, other: &Self) -> f64;
}

/// The probability semiring `(R, +, ×, 0, 1)`.
impl Semiring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

/// Element of the entropy (equivalently, expectation) semiring:
/// `⊕` is componentwise addition and
/// `(x1, y1) ⊗ (x2, y2) = (x1 x2, x1 y2 + x2 y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairWeight {
    pub first: f64,
    pub second: f64,
}

impl PairWeight {
    pub const fn new(first: f64, second: f64) -> Self {
        PairWeight { first, second }
    }
}

impl Semiring for PairWeight {
    fn zero() -> Self {
        PairWeight::new(0.0, 0.0)
    }
    fn one() -> Self {
        PairWeight::new(1.0, 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        PairWeight::new(self.first + rhs.first, self.second + rhs.second)
    }
    fn times(&self, rhs: &Self) -> Self {
        PairWeight::new(self.first * rhs.first, self.first * rhs.second + rhs.first * self.second)
    }
    fn distance(&self, other: &Self) -> f64 {
        (self.first - other.first).abs().max((self.second - other.second).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn entropy_products() {
        let h = PairWeight::new(0.5, 0.346574);
        assert_eq!(PairWeight::one().times(&h), h);
        let sq = h.times(&h);
        assert!((sq.first - 0.25).abs() < 1e-15);
        assert!((sq.second - 0.346574).abs() < 1e-15);
        let s = PairWeight::new(0.5, 0.2).plus(&PairWeight::new(0.25, 0.1));
        assert!(s.distance(&PairWeight::new(0.75, 0.3)) < 1e-15);
    }

    fn pair() -> impl Strategy<Value = PairWeight> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| PairWeight::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn pair_semiring_laws(x in pair(), y in pair(), z in pair()) {
            prop_assert!(x.plus(&y).plus(&z).distance(&x.plus(&y.plus(&z))) <= TOL);
            prop_assert!(x.plus(&y).distance(&y.plus(&x)) <= TOL);
            prop_assert!(x.times(&y).times(&z).distance(&x.times(&y.times(&z))) <= TOL);
            prop_assert!(x.times(&y).distance(&y.times(&x)) <= TOL);
            prop_assert!(x.times(&y.plus(&z)).distance(&x.times(&y).plus(&x.times(&z))) <= TOL);
            prop_assert!(y.plus(&z).times(&x).distance(&y.times(&x).plus(&z.times(&x))) <= TOL);
            prop_assert!(x.plus(&PairWeight::zero()).distance(&x) <= TOL);
            prop_assert!(x.times(&PairWeight::one()).distance(&x) <= TOL);
            prop_assert!(PairWeight::one().times(&x).distance(&x) <= TOL);
            prop_assert!(x.times(&PairWeight::zero()).distance(&PairWeight::zero()) <= TOL);
            prop_assert!(PairWeight::zero().times(&x).distance(&PairWeight::zero()) <= TOL);
        }
    }
}
