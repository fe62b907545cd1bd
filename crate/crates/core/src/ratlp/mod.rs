//! Exact rational arithmetic and exact linear programming.
//!
//! [`solve`] is a dense two-phase primal simplex over [`Rational`] using
//! Bland's rule, so it terminates on degenerate programs. [`fm_feasible`]
//! decides feasibility by Fourier–Motzkin elimination and shares no code
//! with the simplex; it is the independent oracle used throughout the tests.

mod fm;
mod rational;
mod simplex;

pub use fm::fm_feasible;
pub use rational::{format_rational, parse_rational, rational_serde, rational_vec_serde, Rational};
pub use simplex::solve;

use crate::{Error, Result};
use num::{Signed, Zero};

/// Relation between a constraint's left-hand side and its bound.
///
/// `Lt` is only understood by [`fm_feasible`]; the simplex rejects it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `coeffs · x  (relation)  bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub bound: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, bound: Rational) -> Self {
        Self { coeffs, relation, bound }
    }

    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Le, bound)
    }

    pub fn eq(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, bound)
    }

    /// `coeffs · x ≥ bound`, stored as `-coeffs · x ≤ -bound`.
    pub fn ge(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::le(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    pub fn lt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Lt, bound)
    }

    /// `coeffs · x > bound`, stored as `-coeffs · x < -bound`.
    pub fn gt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::lt(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Lt => lhs < self.bound,
            Relation::Eq => lhs == self.bound,
        }
    }
}

/// Unit-vector rows `-x_i ≤ 0` for every variable.
pub fn nonneg_rows(num_vars: usize) -> Vec<Constraint> {
    (0..num_vars)
        .map(|i| {
            let mut row = vec![Rational::zero(); num_vars];
            row[i] = -Rational::from_integer(1.into());
            Constraint::le(row, Rational::zero())
        })
        .collect()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Maximise `objective · x` subject to `constraints` and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rational>, constraints: Vec<Constraint>) -> Result<Self> {
        if objective.len() != num_vars {
            return Err(Error::MalformedProgram(format!(
                "objective has length {}, expected {num_vars}",
                objective.len()
            )));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.coeffs.len() != num_vars {
                return Err(Error::MalformedProgram(format!(
                    "constraint {i} has length {}, expected {num_vars}",
                    c.coeffs.len()
                )));
            }
            if c.relation == Relation::Lt {
                return Err(Error::MalformedProgram(format!(
                    "constraint {i} is strict; linear programs take only ≤ and ="
                )));
            }
        }
        Ok(Self { num_vars, objective, constraints })
    }

    /// A program with the zero objective, useful for pure feasibility.
    pub fn feasibility(num_vars: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new(num_vars, vec![Rational::zero(); num_vars], constraints)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    /// `ray` is a recession direction: `x + t·ray` stays feasible for all
    /// `t ≥ 0` whenever `x` is feasible.
    pub fn is_recession_direction(&self, ray: &[Rational]) -> bool {
        ray.len() == self.num_vars
            && ray.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = c.lhs(ray);
                match c.relation {
                    Relation::Le | Relation::Lt => !lhs.is_positive(),
                    Relation::Eq => lhs.is_zero(),
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, assignment: Vec<Rational> },
    Unbounded { feasible_point: Vec<Rational>, improving_ray: Vec<Rational> },
    Infeasible,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    /// Re-checks the witnesses by exact substitution. `Infeasible` carries
    /// no witness and always verifies.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        match self {
            LpOutcome::Optimal { value, assignment } => {
                lp.is_feasible_point(assignment) && &lp.objective_value(assignment) == value
            }
            LpOutcome::Unbounded { feasible_point, improving_ray } => {
                lp.is_feasible_point(feasible_point)
                    && lp.is_recession_direction(improving_ray)
                    && lp.objective_value(improving_ray).is_positive()
            }
            LpOutcome::Infeasible => true,
        }
    }
}
