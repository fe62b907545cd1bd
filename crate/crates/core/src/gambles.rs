//! Finite possibility spaces, gambles, and the three dominance orders.

use crate::ratlp::{format_rational, Rational};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A finite, non-empty, ordered set of atom labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PossibilitySpace {
    labels: Vec<String>,
}

impl PossibilitySpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace("no atoms".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::InvalidSpace("empty atom label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidSpace(format!("duplicate atom {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// Atoms named `w0`, `w1`, ….
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("w{i}")))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == atom)
    }

    /// The gamble `1_ω`: one on `atom`, zero elsewhere.
    pub fn indicator(&self, atom: &str) -> Result<Gamble> {
        let i = self.index_of(atom).ok_or_else(|| Error::InvalidSpace(format!("unknown atom {atom:?}")))?;
        Ok(Gamble::unit(self.size(), i))
    }

    pub fn indicators(&self) -> Vec<Gamble> {
        (0..self.size()).map(|i| Gamble::unit(self.size(), i)).collect()
    }

    pub fn zero(&self) -> Gamble {
        Gamble::zero(self.size())
    }
}

/// A gamble on a finite possibility space: one exact value per atom.
///
/// Ordering is lexicographic on the values and only serves to give gamble
/// sets a canonical member order; the dominance orders are the methods
/// [`Gamble::geq`], [`Gamble::gt`] and [`Gamble::wgeq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gamble(Vec<Rational>);

impl Gamble {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    /// `(n/d, …)` from numerator/denominator pairs.
    pub fn from_fracs(values: &[(i64, i64)]) -> Self {
        Self(values.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self(vec![c; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut g = Self::zero(dim);
        g.0[i] = Rational::one();
        g
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    /// `self ≥ other` everywhere.
    pub fn geq(&self, other: &Gamble) -> Result<bool> {
        other.check_dim(self.dim())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    /// `self > other` everywhere (strict dominance).
    pub fn gt(&self, other: &Gamble) -> Result<bool> {
        other.check_dim(self.dim())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a > b))
    }

    /// `self ⪈ other`: `self ≥ other` and `self ≠ other` (weak dominance).
    pub fn wgeq(&self, other: &Gamble) -> Result<bool> {
        Ok(self.geq(other)? && self != other)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Membership in `G≥0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    /// Membership in `G≤0`.
    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|v| !v.is_positive())
    }

    /// Membership in `G>0`.
    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    /// Membership in `G⪈0`.
    pub fn is_weakly_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn add(&self, other: &Gamble) -> Result<Gamble> {
        other.check_dim(self.dim())?;
        Ok(Gamble(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Gamble) -> Result<Gamble> {
        other.check_dim(self.dim())?;
        Ok(Gamble(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `λ·self` for `λ > 0`.
    pub fn scale(&self, lambda: &Rational) -> Result<Gamble> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(format_rational(lambda)));
        }
        Ok(self.scale_unchecked(lambda))
    }

    pub(crate) fn scale_unchecked(&self, lambda: &Rational) -> Gamble {
        Gamble(self.0.iter().map(|v| v * lambda).collect())
    }

    /// `Σ λᵢ·gᵢ`; every gamble must have dimension `dim`.
    pub fn combination<'a>(dim: usize, terms: impl IntoIterator<Item = (&'a Rational, &'a Gamble)>) -> Result<Gamble> {
        let mut acc = vec![Rational::zero(); dim];
        for (l, g) in terms {
            g.check_dim(dim)?;
            if l.is_zero() {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(&g.0) {
                *a += l * v;
            }
        }
        Ok(Gamble(acc))
    }
}

impl fmt::Display for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Gamble {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::ratlp::rational_vec_serde::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Gamble {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::ratlp::rational_vec_serde::deserialize(d).map(Gamble)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(v: &[i64]) -> Gamble {
        Gamble::from_ints(v)
    }

    #[test]
    fn weak_order() {
        assert!(g(&[1, 0]).geq(&g(&[1, 0])).unwrap());
        assert!(g(&[2, 1]).geq(&g(&[1, 1])).unwrap());
        assert!(!g(&[1, -1]).geq(&g(&[0, 0])).unwrap());
    }

    #[test]
    fn strict_dominance() {
        assert!(g(&[2, 1]).gt(&g(&[1, 0])).unwrap());
        assert!(!g(&[1, 0]).gt(&g(&[0, 0])).unwrap());
        assert!(!g(&[0, 0]).gt(&g(&[0, 0])).unwrap());
    }

    #[test]
    fn weak_dominance() {
        assert!(g(&[1, 0]).wgeq(&g(&[0, 0])).unwrap());
        assert!(!g(&[0, 0]).wgeq(&g(&[0, 0])).unwrap());
        assert!(!g(&[1, -1]).wgeq(&g(&[0, 0])).unwrap());
    }

    #[test]
    fn positive_cones() {
        let f = g(&[0, 1]);
        assert!(f.is_weakly_positive() && !f.is_strictly_positive());
        assert!(g(&[1, 1]).is_strictly_positive());
        let z = g(&[0, 0]);
        assert!(!z.is_weakly_positive() && !z.is_strictly_positive() && z.is_nonnegative());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(g(&[1, -1]).add(&g(&[-1, 2])).unwrap(), g(&[0, 1]));
        assert_eq!(g(&[1, 0]).scale(&Rational::from_integer(2.into())).unwrap(), g(&[2, 0]));
        let space = PossibilitySpace::new(["a", "b"]).unwrap();
        assert_eq!(space.indicator("b").unwrap(), g(&[0, 1]));
        assert!(space.indicator("c").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(g(&[1, 0]).geq(&g(&[1])), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
        assert!(g(&[1]).scale(&Rational::zero()).is_err());
        assert!(g(&[1]).scale(&-Rational::one()).is_err());
        assert!(PossibilitySpace::new(Vec::<String>::new()).is_err());
        assert!(PossibilitySpace::new(["a", "a"]).is_err());
    }

    fn arb_pair() -> impl Strategy<Value = (Gamble, Gamble)> {
        (1usize..=4).prop_flat_map(|n| {
            (
                proptest::collection::vec(-3i64..=3, n).prop_map(|v| Gamble::from_ints(&v)),
                proptest::collection::vec(-3i64..=3, n).prop_map(|v| Gamble::from_ints(&v)),
            )
        })
    }

    proptest! {
        #[test]
        fn orders_are_consistent((f, h) in arb_pair()) {
            if f.gt(&h).unwrap() { prop_assert!(f.wgeq(&h).unwrap()); }
            if f.wgeq(&h).unwrap() { prop_assert!(f.geq(&h).unwrap()); }
            prop_assert_eq!(f.wgeq(&h).unwrap(), f.geq(&h).unwrap() && !h.geq(&f).unwrap());
            let zero = Gamble::zero(f.dim());
            prop_assert_eq!(f.is_weakly_positive(), f.wgeq(&zero).unwrap());
            if f.is_strictly_positive() { prop_assert!(f.is_weakly_positive()); }
        }

        #[test]
        fn arithmetic_preserves_dimension((f, h) in arb_pair(), n in 1i64..5) {
            let lam = Rational::from_integer(n.into());
            prop_assert_eq!(f.add(&h).unwrap().dim(), f.dim());
            prop_assert_eq!(f.scale(&lam).unwrap().dim(), f.dim());
            prop_assert_eq!(f.scale(&Rational::one()).unwrap(), f.clone());
        }
    }
}
