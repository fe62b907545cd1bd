//! Two further characterisations of `Ext(𝒜)`, each with its own cone
//! encodings, kept as differential-testing targets for
//! [`ext_contains`](crate::extension::ext_contains).
//!
//! * The *dominance* form: `B ∈ Ext(𝒜)` iff some `f ∈ B` is `⪈ 0`, or every
//!   sequence either reaches zero in `posi(seq ∪ indicators)` or has some
//!   `f ∈ B` dominating an element of `posi(seq)`.
//! * The *indicator* form: every sequence, extended by all indicator
//!   singletons, has some `f ∈ B ∪ G≤0` in the positive hull of the extended
//!   sequence.

use crate::cones::{Certificate, ConeGenerators};
use crate::extension::{
    self, check_cap, Assessment, ExtAnswer, GambleSet, Options, Outcome, SequenceEvidence, Sequences,
};
use crate::gambles::Gamble;
use crate::ratlp::{self, Constraint, LinearProgram, LpOutcome, Rational};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use serde::Serialize;

fn unit(k: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k];
    v[i] = Rational::one();
    v
}

/// Generator columns followed by the indicator columns.
fn augmented_columns(gens: &ConeGenerators) -> Vec<Vec<Rational>> {
    let dim = gens.dim();
    let mut cols: Vec<Vec<Rational>> = gens.generators().iter().map(|g| g.values().to_vec()).collect();
    cols.extend((0..dim).map(|w| unit(dim, w)));
    cols
}

/// One row per atom, one entry per column.
fn rows(columns: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    (0..dim).map(|w| columns.iter().map(|c| c[w].clone()).collect()).collect()
}

fn combine(x: &[Rational], columns: &[Vec<Rational>], dim: usize) -> Gamble {
    Gamble::new(rows(columns, dim).iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
}

/// A point with strictly positive objective, if the program has one.
fn positive_objective(lp: &LinearProgram) -> Result<Option<Vec<Rational>>> {
    match ratlp::solve(lp)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Optimal { value, assignment } => Ok(value.is_positive().then_some(assignment)),
        LpOutcome::Unbounded { feasible_point, improving_ray } => {
            let slope = lp.objective_value(&improving_ray);
            let t = Rational::one() / slope;
            Ok(Some(feasible_point.iter().zip(&improving_ray).map(|(p, r)| p + &t * r).collect()))
        }
    }
}

fn split_certificate(x: &[Rational], k: usize, dim: usize, shift: Option<&Gamble>) -> Certificate {
    let mu = Gamble::new(x[k..k + dim].to_vec());
    let remainder = match shift {
        Some(f) => mu.sub(f).expect("dimension"),
        None => mu,
    };
    Certificate { lambdas: x[..k].to_vec(), remainder }
}

fn check_dims(assessment: &Assessment, b: &GambleSet) -> Result<()> {
    if b.dim() != assessment.dim() {
        return Err(Error::DimensionMismatch { expected: assessment.dim(), found: b.dim() });
    }
    Ok(())
}

fn background_answer(b: &GambleSet) -> Option<ExtAnswer> {
    let f = b.members().iter().find(|f| f.is_weakly_positive())?;
    let certificate = Certificate { lambdas: Vec::new(), remainder: f.clone() };
    Some(ExtAnswer {
        member: true,
        witness_list: Vec::new(),
        sequences: vec![SequenceEvidence { sequence: Vec::new(), outcome: Outcome::Hit { f: f.clone(), certificate } }],
    })
}

fn run(
    assessment: &Assessment,
    b: &GambleSet,
    settle: impl Fn(&ConeGenerators, &GambleSet) -> Result<Outcome>,
) -> Result<ExtAnswer> {
    check_dims(assessment, b)?;
    if let Some(ans) = background_answer(b) {
        return Ok(ans);
    }
    let dim = assessment.dim();
    check_cap(assessment.sets().iter().map(GambleSet::len), Options::default().cap)?;
    let lists: Vec<&[Gamble]> = assessment.sets().iter().map(GambleSet::members).collect();
    let mut sequences = Vec::new();
    let mut member = true;
    for seq in Sequences::new(&lists) {
        let gens = ConeGenerators::new(dim, seq.iter().cloned())?;
        let outcome = settle(&gens, b)?;
        let miss = outcome == Outcome::Miss;
        sequences.push(SequenceEvidence { sequence: seq, outcome });
        if miss {
            member = false;
            break;
        }
    }
    Ok(ExtAnswer { member, witness_list: assessment.sets().to_vec(), sequences })
}

/// `0 ∈ posi(gens ∪ indicators)` via `Σλ·g + μ = 0`, `λ, μ ≥ 0`,
/// `Σλ + Σμ = 1`.
fn zero_with_indicators(gens: &ConeGenerators) -> Result<Option<Certificate>> {
    let (k, dim) = (gens.len(), gens.dim());
    let cols = augmented_columns(gens);
    let mut cons: Vec<Constraint> = rows(&cols, dim).into_iter().map(|r| Constraint::eq(r, Rational::zero())).collect();
    cons.push(Constraint::eq(vec![Rational::one(); k + dim], Rational::one()));
    let lp = LinearProgram::feasibility(k + dim, cons)?;
    Ok(match ratlp::solve(&lp)? {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { assignment: x, .. } | LpOutcome::Unbounded { feasible_point: x, .. } => {
            Some(split_certificate(&x, k, dim, None))
        }
    })
}

/// Some `h ∈ posi(gens)` with `h ≤ f`, via `Σλ·g + s = f`, `s ≥ 0`,
/// maximising `Σλ`.
fn dominates_posi_element(gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
    let (k, dim) = (gens.len(), gens.dim());
    if k == 0 {
        return Ok(None);
    }
    let cols = augmented_columns(gens);
    let cons = rows(&cols, dim).into_iter().zip(f.values()).map(|(r, b)| Constraint::eq(r, b.clone())).collect();
    let mut objective = vec![Rational::one(); k];
    objective.resize(k + dim, Rational::zero());
    let lp = LinearProgram::new(k + dim, objective, cons)?;
    Ok(positive_objective(&lp)?.map(|x| split_certificate(&x, k, dim, None)))
}

/// Membership with `posi` and `≥` only.
pub fn ext_contains_decadt(assessment: &Assessment, b: &GambleSet) -> Result<ExtAnswer> {
    run(assessment, b, |gens, b| {
        if let Some(certificate) = zero_with_indicators(gens)? {
            return Ok(Outcome::Skip { certificate });
        }
        for f in b.members() {
            if let Some(certificate) = dominates_posi_element(gens, f)? {
                return Ok(Outcome::Hit { f: f.clone(), certificate });
            }
        }
        Ok(Outcome::Miss)
    })
}

/// `f ∈ posi(gens ∪ indicators)`, maximising the total weight.
fn in_indicator_hull(gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
    let (k, dim) = (gens.len(), gens.dim());
    let cols = augmented_columns(gens);
    let cons = rows(&cols, dim).into_iter().zip(f.values()).map(|(r, b)| Constraint::eq(r, b.clone())).collect();
    let lp = LinearProgram::new(k + dim, vec![Rational::one(); k + dim], cons)?;
    Ok(positive_objective(&lp)?.map(|x| split_certificate(&x, k, dim, None)))
}

/// Some `f ≤ 0` in `posi(gens ∪ indicators)`: weights summing to one whose
/// combination is nonpositive. The certificate absorbs `−f` into the
/// remainder, so it witnesses `0` in the same cone.
pub fn nonpositive_in_indicator_hull(gens: &ConeGenerators) -> Result<Option<Certificate>> {
    let (k, dim) = (gens.len(), gens.dim());
    let cols = augmented_columns(gens);
    let mut cons: Vec<Constraint> = rows(&cols, dim).into_iter().map(|r| Constraint::le(r, Rational::zero())).collect();
    cons.push(Constraint::eq(vec![Rational::one(); k + dim], Rational::one()));
    let lp = LinearProgram::feasibility(k + dim, cons)?;
    Ok(match ratlp::solve(&lp)? {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { assignment: x, .. } | LpOutcome::Unbounded { feasible_point: x, .. } => {
            let f = combine(&x, &cols, dim);
            Some(split_certificate(&x, k, dim, Some(&f)))
        }
    })
}

/// Membership through indicator-augmented sequences.
pub fn ext_contains_dbdc(assessment: &Assessment, b: &GambleSet) -> Result<ExtAnswer> {
    run(assessment, b, |gens, b| {
        if let Some(certificate) = nonpositive_in_indicator_hull(gens)? {
            return Ok(Outcome::Skip { certificate });
        }
        for f in b.members() {
            if let Some(certificate) = in_indicator_hull(gens, f)? {
                return Ok(Outcome::Hit { f: f.clone(), certificate });
            }
        }
        Ok(Outcome::Miss)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub definition: ExtAnswer,
    pub decadt: ExtAnswer,
    pub dbdc: ExtAnswer,
}

impl Comparison {
    pub fn agree(&self) -> bool {
        self.definition.member == self.decadt.member && self.decadt.member == self.dbdc.member
    }
}

pub fn compare_formulations(assessment: &Assessment, b: &GambleSet) -> Result<Comparison> {
    Ok(Comparison {
        definition: extension::ext_contains(assessment, b, Options::default())?,
        decadt: ext_contains_decadt(assessment, b)?,
        dbdc: ext_contains_dbdc(assessment, b)?,
    })
}

/// All three membership answers coincide.
pub fn formulations_agree(assessment: &Assessment, b: &GambleSet) -> Result<bool> {
    Ok(compare_formulations(assessment, b)?.agree())
}
