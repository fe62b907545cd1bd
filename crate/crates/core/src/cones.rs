//! Membership in `posi(E)` and in `desext(E) = posi(E ∪ G⪈0)`, with
//! certificates.
//!
//! `posi` admits only combinations with at least one generator, so
//! `posi(∅) = ∅` and `desext(∅) = G⪈0`. "Some coefficient is positive" is
//! decided by maximising `Σλ` over the feasible coefficient set: it always
//! contains `λ = 0` once `f` is reachable, so the answer is yes exactly when
//! the supremum is positive or unbounded.

use crate::gambles::Gamble;
use crate::ratlp::{self, rational_vec_serde, Constraint, LinearProgram, LpOutcome, Rational};
use crate::{Error, Result};
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A finite, deduplicated list of generators sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeGenerators {
    dim: usize,
    generators: Vec<Gamble>,
}

impl ConeGenerators {
    /// Keeps the first occurrence of each gamble, in input order.
    pub fn new(dim: usize, generators: impl IntoIterator<Item = Gamble>) -> Result<Self> {
        let mut out: Vec<Gamble> = Vec::new();
        for g in generators {
            g.check_dim(dim)?;
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Self { dim, generators: out })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, generators: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Gamble] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Σ λᵢ·gᵢ`.
    pub fn combine(&self, lambdas: &[Rational]) -> Result<Gamble> {
        if lambdas.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: lambdas.len() });
        }
        Gamble::combination(self.dim, lambdas.iter().zip(&self.generators))
    }

    /// Generators extended by `more` (deduplicated).
    pub fn extended(&self, more: impl IntoIterator<Item = Gamble>) -> Result<Self> {
        Self::new(self.dim, self.generators.iter().cloned().chain(more))
    }

    /// One row per atom: `Σ λᵢ·gᵢ(ω)`, with `extra` zero columns appended.
    fn atom_rows(&self, extra: usize) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|w| {
                let mut row: Vec<Rational> = self.generators.iter().map(|g| g.values()[w].clone()).collect();
                row.resize(self.len() + extra, Rational::zero());
                row
            })
            .collect()
    }
}

/// Witness for a cone-membership answer: `f = Σ λᵢ·gᵢ + remainder`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "rational_vec_serde")]
    pub lambdas: Vec<Rational>,
    pub remainder: Gamble,
}

impl Certificate {
    pub fn lambda_sum(&self) -> Rational {
        self.lambdas.iter().fold(Rational::zero(), |a, l| a + l)
    }

    fn lambdas_nonnegative(&self) -> bool {
        self.lambdas.iter().all(|l| !l.is_negative())
    }

    /// `f = Σ λᵢ·gᵢ + remainder` holds exactly.
    pub fn reconstructs(&self, gens: &ConeGenerators, f: &Gamble) -> bool {
        if self.remainder.dim() != gens.dim() || f.dim() != gens.dim() {
            return false;
        }
        match gens.combine(&self.lambdas).and_then(|h| h.add(&self.remainder)) {
            Ok(sum) => &sum == f,
            Err(_) => false,
        }
    }

    /// Shape of a `posi(E)` witness: positive weight, nothing left over.
    pub fn is_valid_posi(&self) -> bool {
        self.lambdas_nonnegative() && self.lambda_sum().is_positive() && self.remainder.is_zero()
    }

    /// Shape of a `posi(E ∪ G⪈0)` witness.
    pub fn is_valid_desext(&self) -> bool {
        self.lambdas_nonnegative()
            && if self.lambda_sum().is_positive() {
                self.remainder.is_nonnegative()
            } else {
                self.remainder.is_weakly_positive()
            }
    }

    /// Shape of a `posi(E ∪ G>0)` witness.
    pub fn is_valid_strict(&self) -> bool {
        self.lambdas_nonnegative()
            && if self.lambda_sum().is_positive() {
                self.remainder.is_zero() || self.remainder.is_strictly_positive()
            } else {
                self.remainder.is_strictly_positive()
            }
    }

    pub fn verify_posi(&self, gens: &ConeGenerators, f: &Gamble) -> bool {
        self.is_valid_posi() && self.reconstructs(gens, f)
    }

    pub fn verify_desext(&self, gens: &ConeGenerators, f: &Gamble) -> bool {
        self.is_valid_desext() && self.reconstructs(gens, f)
    }

    pub fn verify_strict(&self, gens: &ConeGenerators, f: &Gamble) -> bool {
        self.is_valid_strict() && self.reconstructs(gens, f)
    }
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// Solves `lp` and returns a feasible point with a positive objective value
/// if one exists. On an unbounded program the point is moved along the ray
/// until the objective reaches at least one.
fn positive_point(lp: &LinearProgram) -> Result<Option<Vec<Rational>>> {
    Ok(match ratlp::solve(lp)? {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { value, assignment } => value.is_positive().then_some(assignment),
        LpOutcome::Unbounded { feasible_point, improving_ray } => {
            let base = lp.objective_value(&feasible_point);
            let slope = lp.objective_value(&improving_ray);
            let t = if base >= Rational::one() { Rational::zero() } else { (Rational::one() - base) / slope };
            Some(feasible_point.iter().zip(&improving_ray).map(|(p, r)| p + &t * r).collect())
        }
    })
}

/// `f ∈ posi(E)`: some `λ ≥ 0` with `Σλ > 0` and `Σ λᵢ·gᵢ = f`.
pub fn posi_contains(gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
    f.check_dim(gens.dim())?;
    Ok(posi_coefficients(gens.dim(), gens.generators(), f)?
        .map(|lambdas| Certificate { lambdas, remainder: Gamble::zero(gens.dim()) }))
}

/// Nonnegative coefficients with positive sum expressing `f` over `columns`,
/// which may repeat.
pub(crate) fn posi_coefficients(dim: usize, columns: &[Gamble], f: &Gamble) -> Result<Option<Vec<Rational>>> {
    if columns.is_empty() {
        return Ok(None);
    }
    let k = columns.len();
    let cons = (0..dim)
        .map(|w| Constraint::eq(columns.iter().map(|g| g.values()[w].clone()).collect(), f.values()[w].clone()))
        .collect();
    let lp = LinearProgram::new(k, ones(k), cons)?;
    positive_point(&lp)
}

/// `f ∈ desext(E)`: either some `λ ≥ 0` with `Σλ > 0` and `Σ λᵢ·gᵢ ≤ f`,
/// or `f ⪈ 0`. The coefficient branch is tried first.
pub fn desext_contains(gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
    f.check_dim(gens.dim())?;
    if f.is_zero() {
        return zero_in_desext(gens);
    }
    if !gens.is_empty() {
        let k = gens.len();
        let cons =
            gens.atom_rows(0).into_iter().zip(f.values()).map(|(row, b)| Constraint::le(row, b.clone())).collect();
        let lp = LinearProgram::new(k, ones(k), cons)?;
        if let Some(lambdas) = positive_point(&lp)? {
            let remainder = f.sub(&gens.combine(&lambdas)?)?;
            return Ok(Some(Certificate { lambdas, remainder }));
        }
    }
    if f.is_weakly_positive() {
        return Ok(Some(Certificate { lambdas: vec![Rational::zero(); gens.len()], remainder: f.clone() }));
    }
    Ok(None)
}

/// `0 ∈ desext(E)`: some `λ ≥ 0` with `Σλ = 1` and `Σ λᵢ·gᵢ ≤ 0`. The system
/// is homogeneous, so the certificate is reported in its simplest scaling:
/// uniform weights on the support when those still work, otherwise the
/// primitive integer multiple of the solver's vertex.
pub fn zero_in_desext(gens: &ConeGenerators) -> Result<Option<Certificate>> {
    if gens.is_empty() {
        return Ok(None);
    }
    let k = gens.len();
    let mut cons: Vec<Constraint> =
        gens.atom_rows(0).into_iter().map(|row| Constraint::le(row, Rational::zero())).collect();
    cons.push(Constraint::eq(ones(k), Rational::one()));
    let lp = LinearProgram::feasibility(k, cons)?;
    let lambdas = match ratlp::solve(&lp)? {
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Optimal { assignment, .. } => assignment,
        LpOutcome::Unbounded { feasible_point, .. } => feasible_point,
    };
    let uniform: Vec<Rational> =
        lambdas.iter().map(|l| if l.is_zero() { Rational::zero() } else { Rational::one() }).collect();
    let lambdas = if gens.combine(&uniform)?.is_nonpositive() { uniform } else { primitive(&lambdas) };
    let remainder = Gamble::zero(gens.dim()).sub(&gens.combine(&lambdas)?)?;
    Ok(Some(Certificate { lambdas, remainder }))
}

/// Smallest positive integer multiple of a nonnegative rational vector.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(num::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num::BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(num::BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|n| Rational::from_integer(n / &gcd)).collect()
}

/// A set of desirable gambles `desext(E)` is coherent iff it avoids zero.
pub fn d_coherent(gens: &ConeGenerators) -> Result<bool> {
    Ok(zero_in_desext(gens)?.is_none())
}

/// `f ∈ posi(E ∪ G>0)`, decided through three branches: `f > 0`, `f ∈ posi(E)`,
/// or `Σ λᵢ·gᵢ + ε·1 ≤ f` for some `λ ≥ 0` with `Σλ > 0` and `ε > 0`.
///
/// The last branch takes two programs over `(λ, ε)`: first maximise `Σλ`,
/// then maximise `ε` with `Σλ` held at least at a positive fraction of
/// that maximum. By convexity a point with both `Σλ > 0` and `ε > 0` exists
/// iff the second optimum is positive.
pub fn desext_contains_strict(gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
    f.check_dim(gens.dim())?;
    let k = gens.len();
    if f.is_strictly_positive() {
        return Ok(Some(Certificate { lambdas: vec![Rational::zero(); k], remainder: f.clone() }));
    }
    if let Some(cert) = posi_contains(gens, f)? {
        return Ok(Some(cert));
    }
    if gens.is_empty() {
        return Ok(None);
    }

    let slack_rows: Vec<Constraint> = gens
        .atom_rows(1)
        .into_iter()
        .zip(f.values())
        .map(|(mut row, b)| {
            row[k] = Rational::one();
            Constraint::le(row, b.clone())
        })
        .collect();
    let mut sum_lambda = ones(k);
    sum_lambda.push(Rational::zero());

    let first = LinearProgram::new(k + 1, sum_lambda.clone(), slack_rows.clone())?;
    let floor = match ratlp::solve(&first)? {
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Optimal { value, .. } if !value.is_positive() => return Ok(None),
        LpOutcome::Optimal { value, .. } => {
            let half = value / Rational::from_integer(2.into());
            half.min(Rational::one())
        }
        LpOutcome::Unbounded { .. } => Rational::one(),
    };

    let mut cons = slack_rows;
    cons.push(Constraint::ge(sum_lambda, floor));
    let mut eps = vec![Rational::zero(); k];
    eps.push(Rational::one());
    let second = LinearProgram::new(k + 1, eps, cons)?;
    Ok(positive_point(&second)?.map(|mut x| {
        x.truncate(k);
        let remainder = f.sub(&gens.combine(&x).expect("dimension checked")).expect("dimension checked");
        Certificate { lambdas: x, remainder }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[i64]) -> Gamble {
        Gamble::from_ints(v)
    }

    fn gens(v: &[&[i64]]) -> ConeGenerators {
        ConeGenerators::new(v.first().map_or(2, |x| x.len()), v.iter().map(|x| g(x))).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn figure_pair() -> ConeGenerators {
        ConeGenerators::new(2, [Gamble::from_fracs(&[(-17, 10), (4, 5)]), Gamble::from_fracs(&[(1, 1), (-11, 10)])])
            .unwrap()
    }

    #[test]
    fn coordinate_cone() {
        let e = gens(&[&[1, 0], &[0, 1]]);
        let f = g(&[2, 3]);
        let c = posi_contains(&e, &f).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![r(2), r(3)]);
        assert!(c.verify_posi(&e, &f));
    }

    #[test]
    fn posi_of_empty_set_is_empty() {
        let e = ConeGenerators::empty(2);
        assert!(posi_contains(&e, &g(&[1, 1])).unwrap().is_none());
        assert!(posi_contains(&e, &g(&[0, 0])).unwrap().is_none());
    }

    #[test]
    fn sum_of_two_generators() {
        // λ₁−λ₂ = 0, −λ₁+2λ₂ = 1 forces λ = (1,1).
        let e = gens(&[&[1, -1], &[-1, 2]]);
        let c = posi_contains(&e, &g(&[0, 1])).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![r(1), r(1)]);
    }

    #[test]
    fn posi_zero_needs_a_cancelling_combination() {
        assert!(posi_contains(&gens(&[&[1, -1], &[-1, 2]]), &g(&[0, 0])).unwrap().is_none());
        let e = gens(&[&[1, -1], &[-2, 2]]);
        let c = posi_contains(&e, &g(&[0, 0])).unwrap().unwrap();
        assert!(c.verify_posi(&e, &g(&[0, 0])));
    }

    #[test]
    fn desext_of_empty_set_is_weakly_positive_orthant() {
        let e = ConeGenerators::empty(2);
        let c = desext_contains(&e, &g(&[1, 0])).unwrap().unwrap();
        assert!(c.lambdas.is_empty());
        assert!(c.verify_desext(&e, &g(&[1, 0])));
        assert!(desext_contains(&e, &g(&[0, 0])).unwrap().is_none());
        assert!(desext_contains(&e, &g(&[1, -1])).unwrap().is_none());
    }

    #[test]
    fn desext_dominating_a_generator() {
        let e = gens(&[&[1, -1]]);
        let c = desext_contains(&e, &g(&[1, 0])).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![r(1)]);
        assert_eq!(c.remainder, g(&[0, 1]));
    }

    #[test]
    fn figure_pair_reaches_zero() {
        let e = figure_pair();
        let c = zero_in_desext(&e).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![r(1), r(1)]);
        // (−17/10 + 1, 4/5 − 11/10) = (−7/10, −3/10) ≤ 0
        assert_eq!(c.remainder, Gamble::from_fracs(&[(7, 10), (3, 10)]));
        assert!(c.verify_desext(&e, &g(&[0, 0])));
        let d = desext_contains(&e, &g(&[0, 0])).unwrap().unwrap();
        assert_eq!(d.lambdas, vec![r(1), r(1)]);
    }

    #[test]
    fn zero_in_desext_cases() {
        assert!(zero_in_desext(&gens(&[&[1, -1], &[-1, 2]])).unwrap().is_none());
        let c = zero_in_desext(&gens(&[&[-1, -1]])).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![r(1)]);
        assert!(zero_in_desext(&ConeGenerators::empty(2)).unwrap().is_none());
    }

    #[test]
    fn coherence_of_finitely_generated_d() {
        assert!(d_coherent(&gens(&[&[1, -1]])).unwrap());
        assert!(!d_coherent(&gens(&[&[-1, -1]])).unwrap());
        assert!(d_coherent(&ConeGenerators::empty(2)).unwrap());
    }

    #[test]
    fn zero_generator_is_harmless() {
        let e = gens(&[&[1, -1], &[0, 0]]);
        // 0 itself is a generator, so 0 ∈ posi(E) and 0 ∈ desext(E).
        assert!(zero_in_desext(&e).unwrap().is_some());
        assert!(desext_contains(&e, &g(&[1, 0])).unwrap().is_some());
        assert!(desext_contains(&e, &g(&[-1, 1])).unwrap().is_none());
    }

    #[test]
    fn strict_branches() {
        let empty = ConeGenerators::empty(2);
        assert!(desext_contains_strict(&empty, &g(&[1, 1])).unwrap().is_some());
        assert!(desext_contains_strict(&empty, &g(&[1, 0])).unwrap().is_none());

        let e = gens(&[&[1, -1]]);
        let c = desext_contains_strict(&e, &g(&[1, -1])).unwrap().unwrap();
        assert!(c.remainder.is_zero());

        // (1/2)(1,−1) + (1/2,1/2) = (1,0), with ε = 1/2.
        let c = desext_contains_strict(&e, &g(&[1, 0])).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![q(1, 2)]);
        assert_eq!(c.remainder, Gamble::from_fracs(&[(1, 2), (1, 2)]));
        assert!(c.verify_strict(&e, &g(&[1, 0])));

        // (0,1) is not reachable: (0,1) − λ(1,−1) = (−λ, 1+λ) is never > 0.
        assert!(desext_contains_strict(&e, &g(&[0, 1])).unwrap().is_none());
    }

    #[test]
    fn dimension_errors() {
        let e = gens(&[&[1, -1]]);
        assert!(posi_contains(&e, &g(&[1])).is_err());
        assert!(desext_contains(&e, &g(&[1, 2, 3])).is_err());
        assert!(ConeGenerators::new(2, [g(&[1])]).is_err());
    }

    #[test]
    fn deduplicates_generators() {
        let e = gens(&[&[1, 0], &[1, 0], &[0, 1]]);
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn unbounded_witness_has_unit_mass() {
        // f = 0 in posi of opposite generators; the coefficient set is a ray.
        let e = gens(&[&[1, 0], &[-1, 0]]);
        let c = posi_contains(&e, &g(&[0, 0])).unwrap().unwrap();
        assert!(c.lambda_sum() >= Rational::one());
        assert!(c.verify_posi(&e, &g(&[0, 0])));
    }
}
