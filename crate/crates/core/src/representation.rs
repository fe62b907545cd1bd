//! Sets of desirable gamble sets represented by families of coherent sets of
//! desirable gambles, each one a finitely generated cone `desext(E)`.
//!
//! A single coherent `D` accepts `B` when `B ∩ D ≠ ∅`. A family spec
//! `A₁..Aₙ` stands for every coherent `D` containing `desext(seq)` for some
//! sequence `seq ∈ A₁×…×Aₙ` whose cone avoids zero; `B` is accepted by the
//! family when every such `D` accepts it.

use crate::cones::{self, Certificate, ConeGenerators};
use crate::extension::{
    check_cap, ext_contains, is_consistent, Assessment, ExtAnswer, GambleSet, Options, Outcome, SequenceEvidence,
    Sequences,
};
use crate::gambles::Gamble;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// A coherent set of desirable gambles `desext(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGenD {
    generators: ConeGenerators,
}

impl FinGenD {
    pub fn new(generators: ConeGenerators) -> Result<Self> {
        if !cones::d_coherent(&generators)? {
            return Err(Error::IncoherentD);
        }
        Ok(Self { generators })
    }

    pub fn from_gambles(dim: usize, gens: impl IntoIterator<Item = Gamble>) -> Result<Self> {
        Self::new(ConeGenerators::new(dim, gens)?)
    }

    pub fn generators(&self) -> &ConeGenerators {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    /// Some `f ∈ d` with a certificate, if any.
    pub fn witness(&self, b: &GambleSet) -> Result<Option<(Gamble, Certificate)>> {
        if b.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: b.dim() });
        }
        for f in b.members() {
            if let Some(c) = cones::desext_contains(&self.generators, f)? {
                return Ok(Some((f.clone(), c)));
            }
        }
        Ok(None)
    }
}

/// The family generated by sequences over `A₁..Aₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DFamilySpec {
    dim: usize,
    sets: Vec<GambleSet>,
}

impl DFamilySpec {
    pub fn new(sets: Vec<GambleSet>) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(Error::Input("a family needs at least one gamble set".into()));
        };
        let dim = first.dim();
        if let Some(bad) = sets.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { dim, sets })
    }

    pub fn of(assessment: &Assessment) -> Result<Self> {
        Self::new(assessment.sets().to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sets(&self) -> &[GambleSet] {
        &self.sets
    }

    pub fn concat(&self, other: &DFamilySpec) -> Result<Self> {
        Self::new(self.sets.iter().chain(&other.sets).cloned().collect())
    }

    /// All choice sequences, one gamble from each set.
    pub fn sequences(&self) -> Result<Vec<Vec<Gamble>>> {
        check_cap(self.sets.iter().map(GambleSet::len), Options::default().cap)?;
        let lists: Vec<&[Gamble]> = self.sets.iter().map(GambleSet::members).collect();
        Ok(Sequences::new(&lists).collect())
    }
}

/// `B ∈ K_D`: `B ∩ D ≠ ∅`.
pub fn kd_contains(d: &FinGenD, b: &GambleSet) -> Result<bool> {
    Ok(d.witness(b)?.is_some())
}

/// Some sequence `seq` of the family with a coherent `desext(seq) ⊆ D`.
/// Containment is checked on generators.
pub fn family_witness(fam: &DFamilySpec, d: &FinGenD) -> Result<Option<Vec<Gamble>>> {
    if fam.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: fam.dim(), found: d.dim() });
    }
    for seq in fam.sequences()? {
        let gens = ConeGenerators::new(fam.dim(), seq.iter().cloned())?;
        if !cones::d_coherent(&gens)? {
            continue;
        }
        let mut inside = true;
        for g in &seq {
            if cones::desext_contains(d.generators(), g)?.is_none() {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

pub fn family_contains_d(fam: &DFamilySpec, d: &FinGenD) -> Result<bool> {
    Ok(family_witness(fam, d)?.is_some())
}

/// `B` is accepted by every coherent `D` in the family. Each sequence either
/// generates no coherent `D` (a skip) or yields the least one, `desext(seq)`,
/// which must meet `B`; larger members of the family then meet it too.
pub fn k_family_contains(fam: &DFamilySpec, b: &GambleSet) -> Result<ExtAnswer> {
    if b.dim() != fam.dim() {
        return Err(Error::DimensionMismatch { expected: fam.dim(), found: b.dim() });
    }
    let mut sequences = Vec::new();
    let mut member = true;
    for seq in fam.sequences()? {
        let gens = ConeGenerators::new(fam.dim(), seq.iter().cloned())?;
        let outcome = match FinGenD::new(gens.clone()) {
            Err(Error::IncoherentD) => {
                let certificate = cones::zero_in_desext(&gens)?.expect("incoherent cone contains zero");
                Outcome::Skip { certificate }
            }
            Err(e) => return Err(e),
            Ok(d) => match d.witness(b)? {
                Some((f, certificate)) => Outcome::Hit { f, certificate },
                None => Outcome::Miss,
            },
        };
        let miss = outcome == Outcome::Miss;
        sequences.push(SequenceEvidence { sequence: seq, outcome });
        if miss {
            member = false;
            break;
        }
    }
    Ok(ExtAnswer { member, witness_list: fam.sets().to_vec(), sequences })
}

/// The family of a nonempty consistent assessment accepts exactly `Ext(𝒜)`.
pub fn representation_agrees(assessment: &Assessment, b: &GambleSet) -> Result<bool> {
    if assessment.is_empty() {
        return Err(Error::Input("the assessment must be nonempty".into()));
    }
    if !is_consistent(assessment, Options::default())? {
        return Err(Error::Inconsistent);
    }
    let fam = DFamilySpec::of(assessment)?;
    Ok(k_family_contains(&fam, b)?.member == ext_contains(assessment, b, Options::default())?.member)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub checked: usize,
    /// Instances whose hypothesis held.
    pub applicable: usize,
    pub violations: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A `D` belonging to the family of `fam1 ++ fam2` belongs to both parts.
pub fn downward_closure_check(fam1: &DFamilySpec, fam2: &DFamilySpec, ds: &[FinGenD]) -> Result<ClosureReport> {
    let both = fam1.concat(fam2)?;
    let mut report = ClosureReport::default();
    for d in ds {
        report.checked += 1;
        if !family_contains_d(&both, d)? {
            continue;
        }
        report.applicable += 1;
        let (in1, in2) = (family_contains_d(fam1, d)?, family_contains_d(fam2, d)?);
        if !(in1 && in2) {
            report
                .violations
                .push(format!("D = {:?}: first part {in1}, second part {in2}", d.generators().generators()));
        }
    }
    Ok(report)
}

/// One application of the addition axiom: the sets and a chosen posi element
/// per sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddInstance {
    pub sets: Vec<GambleSet>,
    pub combination: BTreeMap<Vec<Gamble>, Gamble>,
}

impl AddInstance {
    pub fn conclusion(&self, dim: usize) -> Result<GambleSet> {
        GambleSet::new(dim, self.combination.values().cloned())
    }
}

/// `K_𝔻` (accepted by every `D` in `ds`) is closed under the addition axiom
/// on the given instances.
pub fn kd_add_closure_check(ds: &[FinGenD], instances: &[AddInstance]) -> Result<ClosureReport> {
    let Some(first) = ds.first() else {
        return Err(Error::Input("at least one D is required".into()));
    };
    let dim = first.dim();
    let in_k = |b: &GambleSet| -> Result<bool> {
        for d in ds {
            if !kd_contains(d, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut report = ClosureReport::default();
    for inst in instances {
        report.checked += 1;
        let mut hyp = true;
        for a in &inst.sets {
            if !in_k(a)? {
                hyp = false;
                break;
            }
        }
        if !hyp {
            continue;
        }
        report.applicable += 1;
        let c = inst.conclusion(dim)?;
        if !in_k(&c)? {
            report.violations.push(format!("combined set {:?} is not accepted", c.members()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_instance, random_combination, InstanceGenConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(v: &[i64]) -> Gamble {
        Gamble::from_ints(v)
    }

    fn set(v: &[&[i64]]) -> GambleSet {
        GambleSet::from_ints(2, v).unwrap()
    }

    fn d(v: &[&[i64]]) -> FinGenD {
        FinGenD::from_gambles(2, v.iter().map(|x| g(x))).unwrap()
    }

    fn fam(v: &[&[&[i64]]]) -> DFamilySpec {
        DFamilySpec::new(v.iter().map(|s| set(s)).collect()).unwrap()
    }

    #[test]
    fn kd_examples() {
        assert!(kd_contains(&d(&[&[1, -1]]), &set(&[&[1, 0]])).unwrap());
        assert!(!kd_contains(&d(&[&[1, -1]]), &set(&[&[-1, 0]])).unwrap());
        for gens in [&[&[1, -1][..]][..], &[&[-1, 2]], &[]] {
            assert!(kd_contains(&d(gens), &set(&[&[1, 1]])).unwrap());
        }
        assert_eq!(FinGenD::from_gambles(2, [g(&[-1, -1])]).unwrap_err(), Error::IncoherentD);
    }

    #[test]
    fn family_membership_examples() {
        assert!(family_contains_d(&fam(&[&[&[1, -1]]]), &d(&[&[1, -1]])).unwrap());
        assert!(!family_contains_d(&fam(&[&[&[-1, -1]]]), &d(&[&[1, -1]])).unwrap());
        let w = family_witness(&fam(&[&[&[1, -1], &[-1, 2]]]), &d(&[&[-1, 2]])).unwrap();
        assert_eq!(w, Some(vec![g(&[-1, 2])]));
    }

    #[test]
    fn k_family_examples() {
        let paired = fam(&[&[&[1, -1], &[0, 0]], &[&[-1, 2], &[0, 0]]]);
        let ans = k_family_contains(&paired, &set(&[&[0, 1]])).unwrap();
        assert!(ans.member);
        assert!(ans.verify(&set(&[&[0, 1]]), Options::default()));
        assert!(k_family_contains(&fam(&[&[&[0, 1]]]), &set(&[&[0, 2]])).unwrap().member);
        assert!(!k_family_contains(&fam(&[&[&[1, -1]]]), &set(&[&[-1, 1]])).unwrap().member);
    }

    #[test]
    fn agreement_with_extension() {
        let paired = Assessment::new(2, [set(&[&[1, -1], &[0, 0]]), set(&[&[-1, 2], &[0, 0]])]).unwrap();
        assert!(representation_agrees(&paired, &set(&[&[0, 1]])).unwrap());
        let a = Assessment::new(2, [set(&[&[1, -1]])]).unwrap();
        assert!(representation_agrees(&a, &set(&[&[-1, 1]])).unwrap());
        assert!(representation_agrees(&Assessment::new(2, [set(&[&[0, 1]])]).unwrap(), &set(&[&[0, 2]])).unwrap());
        assert!(representation_agrees(&Assessment::empty(2), &set(&[&[1, 1]])).is_err());
        let bad = Assessment::new(2, [set(&[&[-1, -1]])]).unwrap();
        assert_eq!(representation_agrees(&bad, &set(&[&[1, 1]])).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn downward_closure_examples() {
        let r =
            downward_closure_check(&fam(&[&[&[1, -1]]]), &fam(&[&[&[-1, 2]]]), &[d(&[&[1, -1], &[-1, 2]])]).unwrap();
        assert!(r.passed());
        assert_eq!(r.applicable, 1);
        let same = fam(&[&[&[1, -1]]]);
        assert!(downward_closure_check(&same, &same, &[d(&[&[1, -1]])]).unwrap().passed());
        let r = downward_closure_check(&same, &fam(&[&[&[-1, -1], &[-2, 0]]]), &[d(&[&[1, -1]])]).unwrap();
        assert!(r.passed());
        assert_eq!(r.applicable, 0);
    }

    #[test]
    fn add_closure_examples() {
        let a = set(&[&[1, -1]]);
        let inst = AddInstance {
            sets: vec![a.clone(), a.clone()],
            combination: BTreeMap::from([(vec![g(&[1, -1]), g(&[1, -1])], g(&[2, -2]))]),
        };
        let r = kd_add_closure_check(&[d(&[&[1, -1]])], &[inst]).unwrap();
        assert!(r.passed());
        assert_eq!(r.applicable, 1);

        let ds = [d(&[&[1, -1]]), d(&[&[-1, 2]])];
        let sets = vec![set(&[&[1, -1], &[-1, 2]]), set(&[&[1, 0], &[-1, 3]])];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let instances: Vec<AddInstance> = (0..20)
            .map(|_| AddInstance { combination: random_combination(&mut rng, &sets), sets: sets.clone() })
            .collect();
        let r = kd_add_closure_check(&ds, &instances).unwrap();
        assert!(r.passed());
        assert_eq!(r.applicable, 20);
    }

    #[test]
    fn generated_assessments_agree() {
        let mut seen = 0;
        for seed in 0..60 {
            let cfg = InstanceGenConfig { seed, omega_size: 2, num_sets: 3, set_size: 2, coeff_range: 2 };
            let (a, b) = gen_instance(&cfg).unwrap();
            if !is_consistent(&a, Options::default()).unwrap() {
                continue;
            }
            seen += 1;
            assert!(representation_agrees(&a, &b).unwrap(), "seed {seed}");
        }
        assert!(seen > 10);
    }
}
