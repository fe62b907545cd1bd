//! Randomised checks that `Ext(𝒜)` satisfies the coherence axioms for sets
//! of desirable gamble sets.

use super::{ext_contains, is_consistent, Assessment, GambleSet, Options};
use crate::gambles::Gamble;
use crate::oracle::random_combination;
use crate::ratlp::Rational;
use crate::{Error, Result};
use num::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    /// `∅ ∉ K`.
    KEmpty,
    /// `A ∈ K ⟹ A∖{0} ∈ K`.
    KZero,
    /// `g ⪈ 0 ⟹ {g} ∈ K` (`g > 0` in strict mode).
    KPositive,
    /// `A ∈ K, B ⊇ A ⟹ B ∈ K`.
    KSuperset,
    /// Replacing every member by a dominator stays in `K`.
    KDom,
    /// Choosing one posi element per sequence of `A₁×…×Aₙ` stays in `K`.
    KAdd,
}

impl Axiom {
    pub const ALL: [Axiom; 6] =
        [Axiom::KEmpty, Axiom::KZero, Axiom::KPositive, Axiom::KSuperset, Axiom::KDom, Axiom::KAdd];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::KEmpty => "empty",
            Axiom::KZero => "zero",
            Axiom::KPositive => "positive",
            Axiom::KSuperset => "superset",
            Axiom::KDom => "dom",
            Axiom::KAdd => "add",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::Input(format!("unknown axiom `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    /// Instances whose hypothesis held and whose conclusion was checked.
    pub instances: usize,
    pub counterexamples: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Sampler<'a> {
    assessment: &'a Assessment,
    opts: Options,
    rng: ChaCha8Rng,
    range: i64,
    pool: Vec<GambleSet>,
}

impl Sampler<'_> {
    fn dim(&self) -> usize {
        self.assessment.dim()
    }

    fn member(&self, b: &GambleSet) -> Result<bool> {
        Ok(ext_contains(self.assessment, b, self.opts)?.member)
    }

    fn gamble(&mut self, lo: i64, hi: i64) -> Gamble {
        Gamble::new((0..self.dim()).map(|_| Rational::from_integer(self.rng.gen_range(lo..=hi).into())).collect())
    }

    fn background(&mut self) -> Gamble {
        loop {
            let g = self.gamble(0, self.range);
            if self.opts.is_background(&g) {
                return g;
            }
        }
    }

    fn random_set(&mut self) -> GambleSet {
        let n = self.rng.gen_range(1..=3);
        let (lo, hi) = (-self.range, self.range);
        GambleSet::new(self.dim(), (0..n).map(|_| self.gamble(lo, hi)).collect::<Vec<_>>()).expect("uniform dimension")
    }

    /// Members of `Ext(𝒜)`: the assessed sets, some positive singletons and
    /// random sets that pass the membership test.
    fn fill_pool(&mut self, want: usize) -> Result<()> {
        self.pool = self.assessment.sets().to_vec();
        for _ in 0..2 {
            let g = self.background();
            self.pool.push(GambleSet::new(self.dim(), [g])?);
        }
        for _ in 0..3 * want {
            if self.pool.len() >= self.assessment.len() + 2 + want {
                break;
            }
            let s = self.random_set();
            if self.member(&s)? {
                self.pool.push(s);
            }
        }
        Ok(())
    }

    fn pick(&mut self) -> GambleSet {
        self.pool.choose(&mut self.rng).expect("pool is never empty").clone()
    }

    /// Returns `(hypothesis_set, conclusion_set)`, or `None` when the sampled
    /// hypothesis does not hold.
    fn instance(&mut self, axiom: Axiom) -> Result<Option<(String, GambleSet, bool)>> {
        let dim = self.dim();
        Ok(match axiom {
            Axiom::KEmpty => Some(("∅".into(), GambleSet::empty(dim), false)),
            Axiom::KZero => {
                let a = self.pick();
                let a = if self.rng.gen_bool(0.5) { a.with(Gamble::zero(dim))? } else { a };
                if !self.member(&a)? {
                    return Ok(None);
                }
                let b = a.without(&Gamble::zero(dim));
                Some((format!("A = {}", show(&a)), b, true))
            }
            Axiom::KPositive => {
                let g = self.background();
                Some((format!("g = {g}"), GambleSet::new(dim, [g])?, true))
            }
            Axiom::KSuperset => {
                let a = self.pick();
                let extra = self.random_set();
                Some((format!("A = {}", show(&a)), a.union(&extra)?, true))
            }
            Axiom::KDom => {
                let a = self.pick();
                let mut fs = Vec::new();
                for g in a.members() {
                    let h = self.gamble(0, 2);
                    fs.push(g.add(&h)?);
                }
                Some((format!("A = {}", show(&a)), GambleSet::new(dim, fs)?, true))
            }
            Axiom::KAdd => {
                let mut lists = vec![self.pick()];
                for _ in 0..self.rng.gen_range(0..=2) {
                    let next = self.pick();
                    if lists.iter().map(GambleSet::len).product::<usize>() * next.len() > 12 {
                        break;
                    }
                    lists.push(next);
                }
                let fs = random_combination(&mut self.rng, &lists).into_values();
                let shown: Vec<String> = lists.iter().map(show).collect();
                Some((format!("A = {}", shown.join(", ")), GambleSet::new(dim, fs)?, true))
            }
        })
    }
}

fn show(s: &GambleSet) -> String {
    let parts: Vec<String> = s.members().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Samples `trials` instances of `axiom` whose hypotheses hold in `Ext(𝒜)`
/// and checks each conclusion with `ext_contains`.
pub fn check_axiom(
    assessment: &Assessment,
    axiom: Axiom,
    seed: u64,
    trials: usize,
    opts: Options,
) -> Result<AxiomReport> {
    if !is_consistent(assessment, opts)? {
        return Err(Error::Inconsistent);
    }
    let range = assessment
        .sets()
        .iter()
        .flat_map(|s| s.members())
        .flat_map(|g| g.values())
        .map(|q| q.abs().ceil().to_integer().try_into().unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0)
        .clamp(2, 1_000);
    let mut s = Sampler { assessment, opts, rng: ChaCha8Rng::seed_from_u64(seed), range, pool: Vec::new() };
    s.fill_pool(8)?;
    let mut report = AxiomReport { axiom, instances: 0, counterexamples: Vec::new() };
    let mut attempts = 0;
    while report.instances < trials && attempts < 20 * trials.max(1) {
        attempts += 1;
        let Some((hyp, b, expected)) = s.instance(axiom)? else {
            continue;
        };
        report.instances += 1;
        if s.member(&b)? != expected {
            report.counterexamples.push(format!("{axiom}: {hyp} but {} ∈ Ext is {}", show(&b), !expected));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assess(v: &[&[&[i64]]]) -> Assessment {
        Assessment::new(2, v.iter().map(|s| GambleSet::from_ints(2, s).unwrap())).unwrap()
    }

    #[test]
    fn all_axioms_hold_on_small_assessments() {
        for a in [assess(&[&[&[1, -1]]]), assess(&[&[&[0, 1]]]), assess(&[&[&[1, -1], &[-1, 2]]]), Assessment::empty(2)]
        {
            for axiom in Axiom::ALL {
                let r = check_axiom(&a, axiom, 7, 20, Options::default()).unwrap();
                assert!(r.passed(), "{:?}", r.counterexamples);
                assert_eq!(r.instances, 20, "{axiom}");
            }
        }
    }

    #[test]
    fn strict_mode_axioms() {
        let a = assess(&[&[&[1, -1], &[-1, 2]]]);
        for axiom in Axiom::ALL {
            assert!(check_axiom(&a, axiom, 3, 10, Options::strict()).unwrap().passed());
        }
    }

    #[test]
    fn doubled_sum_is_a_member() {
        let a = assess(&[&[&[1, -1], &[-1, 2]]]);
        let b = GambleSet::from_ints(2, &[&[2, -2], &[0, 1], &[-2, 4]]).unwrap();
        let ans = ext_contains(&a, &b, Options::default()).unwrap();
        assert!(ans.member);
        let doubled =
            super::super::closure_holds(&[a.sets()[0].clone(), a.sets()[0].clone()], &b, Options::default()).unwrap();
        assert!(doubled.member);
    }

    #[test]
    fn inconsistent_assessments_are_rejected() {
        let a = assess(&[&[&[-1, -1]]]);
        assert_eq!(check_axiom(&a, Axiom::KZero, 1, 5, Options::default()).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn names_roundtrip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("bogus".parse::<Axiom>().is_err());
    }
}
