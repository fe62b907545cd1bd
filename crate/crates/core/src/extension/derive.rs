//! Explicit derivations for finite gamble sets: the addition axiom unrolled
//! into pairwise additions and supersets, and dominators obtained from
//! addition plus positive singletons.

use super::{GambleSet, Sequences};
use crate::cones::{self, ConeGenerators};
use crate::gambles::Gamble;
use crate::{Error, Result};
use num::Signed;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// `d ∈ posi({c, b})`, chosen for the pair `⟨c, b⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairChoice {
    pub c: Gamble,
    pub b: Gamble,
    pub d: Gamble,
}

/// `f ∈ posi(sequence)`, chosen for one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceChoice {
    pub sequence: Vec<Gamble>,
    pub f: Gamble,
}

/// One inference. Indices refer to earlier steps of the same trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Step {
    Premise {
        set: GambleSet,
    },
    /// `{h}` with `h ⪈ 0`.
    Positive {
        set: GambleSet,
    },
    AddPair {
        left: usize,
        right: usize,
        choices: Vec<PairChoice>,
        conclusion: GambleSet,
    },
    Add {
        premises: Vec<usize>,
        choices: Vec<SequenceChoice>,
        conclusion: GambleSet,
    },
    Superset {
        from: usize,
        conclusion: GambleSet,
    },
}

impl Step {
    pub fn conclusion(&self) -> &GambleSet {
        match self {
            Step::Premise { set } | Step::Positive { set } => set,
            Step::AddPair { conclusion, .. } | Step::Add { conclusion, .. } | Step::Superset { conclusion, .. } => {
                conclusion
            }
        }
    }

    pub fn is_pair_step(&self) -> bool {
        matches!(self, Step::AddPair { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<Step>,
}

/// `f ∈ posi(gens)` by the engine's LP.
pub fn engine_posi(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    let dim = f.dim();
    Ok(cones::posi_contains(&ConeGenerators::new(dim, gens.iter().cloned())?, f)?.is_some())
}

impl DerivationTrace {
    /// Conclusion of the final step.
    pub fn result(&self) -> Option<&GambleSet> {
        self.steps.last().map(Step::conclusion)
    }

    pub fn pair_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.is_pair_step()).count()
    }

    /// Re-checks every step against `premises`, deciding each posi membership
    /// with `posi`. Returns a description of the first faulty step.
    pub fn check(
        &self,
        premises: &[GambleSet],
        posi: &dyn Fn(&[Gamble], &Gamble) -> Result<bool>,
    ) -> std::result::Result<(), String> {
        let fail = |i: usize, msg: &str| Err(format!("step {i}: {msg}"));
        for (i, step) in self.steps.iter().enumerate() {
            let earlier = |j: usize| (j < i).then(|| self.steps[j].conclusion());
            match step {
                Step::Premise { set } => {
                    if !premises.contains(set) {
                        return fail(i, "premise is not among the given sets");
                    }
                }
                Step::Positive { set } => {
                    if set.len() != 1 || !set.members()[0].is_weakly_positive() {
                        return fail(i, "not a singleton of a weakly positive gamble");
                    }
                }
                Step::AddPair { left, right, choices, conclusion } => {
                    let (Some(l), Some(r)) = (earlier(*left), earlier(*right)) else {
                        return fail(i, "refers to a later step");
                    };
                    let mut pairs = Vec::new();
                    for c in l.members() {
                        for b in r.members() {
                            pairs.push((c, b));
                        }
                    }
                    if pairs.len() != choices.len() {
                        return fail(i, "pair choices do not cover the product");
                    }
                    let mut ds = BTreeSet::new();
                    for ((c, b), ch) in pairs.into_iter().zip(choices) {
                        if &ch.c != c || &ch.b != b {
                            return fail(i, "pair choices out of order");
                        }
                        match posi(&[c.clone(), b.clone()], &ch.d) {
                            Ok(true) => {}
                            Ok(false) => return fail(i, &format!("{} is not in posi({{{c}, {b}}})", ch.d)),
                            Err(e) => return fail(i, &e.to_string()),
                        }
                        ds.insert(ch.d.clone());
                    }
                    if conclusion.members() != ds.into_iter().collect::<Vec<_>>().as_slice() {
                        return fail(i, "conclusion differs from the chosen gambles");
                    }
                }
                Step::Add { premises: idx, choices, conclusion } => {
                    let mut sets = Vec::new();
                    for &j in idx {
                        match earlier(j) {
                            Some(s) => sets.push(s.members()),
                            None => return fail(i, "refers to a later step"),
                        }
                    }
                    let seqs: Vec<_> = Sequences::new(&sets).collect();
                    if seqs.len() != choices.len() {
                        return fail(i, "choices do not cover the product");
                    }
                    let mut fs = BTreeSet::new();
                    for (seq, ch) in seqs.iter().zip(choices) {
                        if &ch.sequence != seq {
                            return fail(i, "choices out of order");
                        }
                        match posi(seq, &ch.f) {
                            Ok(true) => {}
                            Ok(false) => return fail(i, &format!("{} is not in posi of its sequence", ch.f)),
                            Err(e) => return fail(i, &e.to_string()),
                        }
                        fs.insert(ch.f.clone());
                    }
                    if conclusion.members() != fs.into_iter().collect::<Vec<_>>().as_slice() {
                        return fail(i, "conclusion differs from the chosen gambles");
                    }
                }
                Step::Superset { from, conclusion } => {
                    let Some(s) = earlier(*from) else {
                        return fail(i, "refers to a later step");
                    };
                    if !conclusion.is_superset_of(s) {
                        return fail(i, "conclusion is not a superset");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verify(&self, premises: &[GambleSet]) -> bool {
        self.check(premises, &engine_posi).is_ok()
    }
}

struct Builder {
    dim: usize,
    steps: Vec<Step>,
    premises: BTreeMap<GambleSet, usize>,
}

impl Builder {
    fn push(&mut self, step: Step) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    fn premise(&mut self, set: &GambleSet) -> usize {
        if let Some(&i) = self.premises.get(set) {
            return i;
        }
        let i = self.push(Step::Premise { set: set.clone() });
        self.premises.insert(set.clone(), i);
        i
    }

    fn set(&self, members: impl IntoIterator<Item = Gamble>) -> GambleSet {
        GambleSet::new(self.dim, members).expect("uniform dimension")
    }

    /// Derives exactly the set of values of `comb` over the product of
    /// `lists`, returning the index of the concluding step.
    fn derive(&mut self, lists: &[GambleSet], comb: &BTreeMap<Vec<Gamble>, Gamble>) -> Result<usize> {
        let n = lists.len();
        if n == 1 {
            let a = &lists[0];
            let p = self.premise(a);
            if a.members().iter().all(|g| comb[&vec![g.clone()]] == *g) {
                return Ok(p);
            }
            let mut choices = Vec::new();
            for c in a.members() {
                let d = comb[&vec![c.clone()]].clone();
                for b in a.members() {
                    choices.push(PairChoice { c: c.clone(), b: b.clone(), d: d.clone() });
                }
            }
            let conclusion = self.set(choices.iter().map(|ch| ch.d.clone()));
            return Ok(self.push(Step::AddPair { left: p, right: p, choices, conclusion }));
        }

        let init = &lists[..n - 1];
        let last = lists[n - 1].members().to_vec();
        let heads: Vec<&[Gamble]> = init.iter().map(GambleSet::members).collect();
        let head_seqs: Vec<Vec<Gamble>> = Sequences::new(&heads).collect();
        let value = |g: &[Gamble], a: &Gamble| {
            let mut key = g.to_vec();
            key.push(a.clone());
            comb[&key].clone()
        };

        let mut cur = self.premise(&lists[n - 1]);
        for k in 0..last.len() {
            let a = &last[k];
            let mut hs = BTreeMap::new();
            let mut f_for_h: BTreeMap<Gamble, Gamble> = BTreeMap::new();
            for g in &head_seqs {
                let f = value(g, a);
                let h = split(self.dim, g, a, &f)?;
                f_for_h.entry(h.clone()).or_insert(f);
                hs.insert(g.clone(), h);
            }
            let c_idx = self.derive(init, &hs)?;

            let next = self.set(
                last[..=k]
                    .iter()
                    .flat_map(|aj| head_seqs.iter().map(move |g| (g, aj)))
                    .map(|(g, aj)| value(g, aj))
                    .chain(last[k + 1..].iter().cloned()),
            );
            let mut choices = Vec::new();
            let left = self.steps[cur].conclusion().members().to_vec();
            let right = self.steps[c_idx].conclusion().members().to_vec();
            for c in &left {
                for b in &right {
                    let d = if next.contains(c) { c.clone() } else { f_for_h[b].clone() };
                    choices.push(PairChoice { c: c.clone(), b: b.clone(), d });
                }
            }
            let conclusion = self.set(choices.iter().map(|ch| ch.d.clone()));
            let pair = self.push(Step::AddPair { left: cur, right: c_idx, choices, conclusion });
            cur = self.push(Step::Superset { from: pair, conclusion: next });
        }
        Ok(cur)
    }
}

/// Writes `f = Σ λᵢ·gᵢ + μ·a` and returns `h = Σ λᵢ·gᵢ` when some `λᵢ > 0`,
/// otherwise `g₁`. Either way `h ∈ posi(g)` and `f ∈ posi({a, h})`.
fn split(dim: usize, g: &[Gamble], a: &Gamble, f: &Gamble) -> Result<Gamble> {
    let mut cols = g.to_vec();
    cols.push(a.clone());
    let coeffs = cones::posi_coefficients(dim, &cols, f)?
        .ok_or_else(|| Error::InvalidCombination(format!("{f} is not in posi of its sequence")))?;
    let lambdas = &coeffs[..g.len()];
    if lambdas.iter().any(|l| l.is_positive()) {
        Gamble::combination(dim, lambdas.iter().zip(g))
    } else {
        Ok(g[0].clone())
    }
}

/// Unrolls the addition axiom for `lists` and `combination` into pairwise
/// additions and supersets. The trace ends at exactly the set of combination
/// values.
pub fn addpair_derive(lists: &[GambleSet], combination: &BTreeMap<Vec<Gamble>, Gamble>) -> Result<DerivationTrace> {
    let Some(first) = lists.first() else {
        return Err(Error::InvalidCombination("at least one gamble set is required".into()));
    };
    let dim = first.dim();
    for a in lists {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
        }
    }
    let members: Vec<&[Gamble]> = lists.iter().map(GambleSet::members).collect();
    for seq in Sequences::new(&members) {
        let f = combination
            .get(&seq)
            .ok_or_else(|| Error::InvalidCombination(format!("no value for sequence {}", show(&seq))))?;
        f.check_dim(dim)?;
        if cones::posi_coefficients(dim, &seq, f)?.is_none() {
            return Err(Error::InvalidCombination(format!("{f} is not in posi of {}", show(&seq))));
        }
    }
    let mut b = Builder { dim, steps: Vec::new(), premises: BTreeMap::new() };
    b.derive(lists, combination)?;
    Ok(DerivationTrace { steps: b.steps })
}

fn show(seq: &[Gamble]) -> String {
    let parts: Vec<String> = seq.iter().map(ToString::to_string).collect();
    format!("⟨{}⟩", parts.join(", "))
}

/// Replaces each `g ∈ A` by a dominator `f_g ≥ g` through one application of
/// the addition axiom to `A` and the positive singletons `{f_g − g}`.
pub fn dom_from_add_check(a: &GambleSet, dominators: &BTreeMap<Gamble, Gamble>) -> Result<DerivationTrace> {
    let dim = a.dim();
    let mut diffs = Vec::new();
    for g in a.members() {
        let f = dominators.get(g).ok_or_else(|| Error::DominanceViolation(format!("no dominator given for {g}")))?;
        if !f.geq(g)? {
            return Err(Error::DominanceViolation(format!("{f} does not dominate {g}")));
        }
        diffs.push(f.sub(g)?);
    }
    let singletons: BTreeSet<Gamble> = diffs.iter().filter(|h| !h.is_zero()).cloned().collect();

    let mut steps = vec![Step::Premise { set: a.clone() }];
    let mut premises = vec![0];
    for h in &singletons {
        premises.push(steps.len());
        steps.push(Step::Positive { set: GambleSet::new(dim, [h.clone()])? });
    }
    let lists: Vec<&[Gamble]> = premises.iter().map(|&i| steps[i].conclusion().members()).collect();
    let choices: Vec<SequenceChoice> =
        Sequences::new(&lists).map(|seq| SequenceChoice { f: dominators[&seq[0]].clone(), sequence: seq }).collect();
    let conclusion = GambleSet::new(dim, choices.iter().map(|c| c.f.clone()))?;
    steps.push(Step::Add { premises, choices, conclusion });
    Ok(DerivationTrace { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[i64]) -> Gamble {
        Gamble::from_ints(v)
    }

    fn set(v: &[&[i64]]) -> GambleSet {
        GambleSet::from_ints(2, v).unwrap()
    }

    fn sums(lists: &[GambleSet]) -> BTreeMap<Vec<Gamble>, Gamble> {
        let members: Vec<&[Gamble]> = lists.iter().map(GambleSet::members).collect();
        Sequences::new(&members)
            .map(|seq| {
                let f = seq.iter().skip(1).fold(seq[0].clone(), |acc, x| acc.add(x).unwrap());
                (seq, f)
            })
            .collect()
    }

    #[test]
    fn single_set_doubled() {
        let a = set(&[&[1, -1]]);
        let comb = BTreeMap::from([(vec![g(&[1, -1])], g(&[2, -2]))]);
        let t = addpair_derive(std::slice::from_ref(&a), &comb).unwrap();
        assert_eq!(t.pair_steps(), 1);
        assert!(matches!(t.steps[1], Step::AddPair { left: 0, right: 0, .. }));
        assert_eq!(t.result(), Some(&set(&[&[2, -2]])));
        assert!(t.verify(&[a]));
    }

    #[test]
    fn coordinate_pair() {
        let lists = [set(&[&[1, 0]]), set(&[&[0, 1]])];
        let t = addpair_derive(&lists, &sums(&lists)).unwrap();
        assert_eq!(t.pair_steps(), 1);
        assert_eq!(t.result(), Some(&set(&[&[1, 1]])));
        assert!(t.verify(&lists));
    }

    #[test]
    fn two_sets_four_steps() {
        let lists = [set(&[&[1, -1], &[0, 1]]), set(&[&[-1, 2]])];
        let t = addpair_derive(&lists, &sums(&lists)).unwrap();
        assert_eq!(t.steps.len(), 4);
        assert_eq!(t.result(), Some(&set(&[&[0, 1], &[-1, 3]])));
        assert!(t.verify(&lists));
    }

    #[test]
    fn three_sets_with_repeats() {
        let a = set(&[&[1, -1], &[0, 1]]);
        let lists = [a.clone(), set(&[&[-1, 2], &[2, 0]]), a.clone()];
        let t = addpair_derive(&lists, &sums(&lists)).unwrap();
        assert!(t.verify(&lists));
        let expected = GambleSet::new(2, sums(&lists).into_values()).unwrap();
        assert_eq!(t.result(), Some(&expected));
    }

    #[test]
    fn rejects_values_outside_posi() {
        let lists = [set(&[&[1, 0]])];
        let comb = BTreeMap::from([(vec![g(&[1, 0])], g(&[0, 1]))]);
        assert!(matches!(addpair_derive(&lists, &comb), Err(Error::InvalidCombination(_))));
        assert!(matches!(addpair_derive(&lists, &BTreeMap::new()), Err(Error::InvalidCombination(_))));
        assert!(addpair_derive(&[], &BTreeMap::new()).is_err());
    }

    #[test]
    fn tampered_trace_fails_check() {
        let lists = [set(&[&[1, 0]]), set(&[&[0, 1]])];
        let mut t = addpair_derive(&lists, &sums(&lists)).unwrap();
        if let Some(Step::AddPair { choices, .. }) = t.steps.iter_mut().find(|s| s.is_pair_step()) {
            choices[0].d = g(&[-1, 0]);
        }
        assert!(!t.verify(&lists));
    }

    #[test]
    fn identity_dominators() {
        let a = set(&[&[1, -1]]);
        let t = dom_from_add_check(&a, &BTreeMap::from([(g(&[1, -1]), g(&[1, -1]))])).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.result(), Some(&a));
        assert!(t.verify(&[a]));
    }

    #[test]
    fn one_positive_singleton() {
        let a = set(&[&[1, -1]]);
        let t = dom_from_add_check(&a, &BTreeMap::from([(g(&[1, -1]), g(&[1, 0]))])).unwrap();
        assert_eq!(t.steps[1], Step::Positive { set: set(&[&[0, 1]]) });
        assert_eq!(t.result(), Some(&set(&[&[1, 0]])));
        assert!(t.verify(&[a]));
    }

    #[test]
    fn two_positive_singletons() {
        let a = set(&[&[1, -1], &[-1, 2]]);
        let doms = BTreeMap::from([(g(&[1, -1]), g(&[2, -1])), (g(&[-1, 2]), g(&[-1, 3]))]);
        let t = dom_from_add_check(&a, &doms).unwrap();
        let positives: Vec<_> = t.steps.iter().filter(|s| matches!(s, Step::Positive { .. })).collect();
        assert_eq!(positives.len(), 2);
        assert_eq!(t.result(), Some(&set(&[&[2, -1], &[-1, 3]])));
        assert!(t.verify(&[a]));
    }

    #[test]
    fn dominance_violation() {
        let a = set(&[&[1, -1]]);
        let r = dom_from_add_check(&a, &BTreeMap::from([(g(&[1, -1]), g(&[0, 5]))]));
        assert!(matches!(r, Err(Error::DominanceViolation(_))));
    }
}
