//! The natural extension `Ext(𝒜)` of an assessment of desirable gamble sets.
//!
//! `B ∈ Ext(𝒜)` when, for some list `A₁..Aₙ` drawn from `𝒜`, every choice
//! `⟨g₁..gₙ⟩ ∈ A₁×…×Aₙ` either has `0 ∈ desext({g₁..gₙ})` (a *skip*) or
//! reaches some `f ∈ B` inside `desext({g₁..gₙ})` (a *hit*). Adding sets to a
//! list only enlarges each cone, so the full list of `𝒜`'s members decides
//! membership on its own; no list search is needed.

mod axioms;
mod derive;

pub use axioms::{check_axiom, Axiom, AxiomReport};
pub use derive::{addpair_derive, dom_from_add_check, engine_posi, DerivationTrace, PairChoice, SequenceChoice, Step};

use crate::cones::{self, Certificate, ConeGenerators};
use crate::gambles::Gamble;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

pub const DEFAULT_CAP: u64 = 1_000_000;

/// A finite set of gambles, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GambleSet {
    dim: usize,
    members: Vec<Gamble>,
}

impl GambleSet {
    pub fn new(dim: usize, members: impl IntoIterator<Item = Gamble>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for g in members {
            g.check_dim(dim)?;
            set.insert(g);
        }
        Ok(Self { dim, members: set.into_iter().collect() })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, members: Vec::new() }
    }

    pub fn from_ints(dim: usize, members: &[&[i64]]) -> Result<Self> {
        Self::new(dim, members.iter().map(|v| Gamble::from_ints(v)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Members in canonical (lexicographic) order.
    pub fn members(&self) -> &[Gamble] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Gamble) -> bool {
        self.members.binary_search(g).is_ok()
    }

    pub fn is_superset_of(&self, other: &GambleSet) -> bool {
        other.members.iter().all(|g| self.contains(g))
    }

    pub fn union(&self, other: &GambleSet) -> Result<Self> {
        Self::new(self.dim, self.members.iter().chain(&other.members).cloned())
    }

    pub fn with(&self, g: Gamble) -> Result<Self> {
        Self::new(self.dim, self.members.iter().cloned().chain([g]))
    }

    pub fn without(&self, g: &Gamble) -> Self {
        Self { dim: self.dim, members: self.members.iter().filter(|m| *m != g).cloned().collect() }
    }
}

impl Serialize for GambleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// A finite collection of gamble sets over one dimension, sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assessment {
    dim: usize,
    sets: Vec<GambleSet>,
}

impl Assessment {
    pub fn new(dim: usize, sets: impl IntoIterator<Item = GambleSet>) -> Result<Self> {
        let mut out = BTreeSet::new();
        for s in sets {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            out.insert(s);
        }
        Ok(Self { dim, sets: out.into_iter().collect() })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, sets: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sets(&self) -> &[GambleSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn with(&self, set: GambleSet) -> Result<Self> {
        Self::new(self.dim, self.sets.iter().cloned().chain([set]))
    }

    pub fn union(&self, other: &Assessment) -> Result<Self> {
        Self::new(self.dim, self.sets.iter().chain(&other.sets).cloned())
    }
}

/// Evaluation mode. `strict` swaps `G⪈0` for `G>0` throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub strict: bool,
    pub cap: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { strict: false, cap: DEFAULT_CAP }
    }
}

impl Options {
    pub fn strict() -> Self {
        Self { strict: true, ..Self::default() }
    }

    /// Membership of `f` in the background-augmented cone of `gens`.
    pub fn cone_contains(&self, gens: &ConeGenerators, f: &Gamble) -> Result<Option<Certificate>> {
        if self.strict {
            cones::desext_contains_strict(gens, f)
        } else {
            cones::desext_contains(gens, f)
        }
    }

    pub fn certificate_valid(&self, cert: &Certificate, gens: &ConeGenerators, f: &Gamble) -> bool {
        if self.strict {
            cert.verify_strict(gens, f)
        } else {
            cert.verify_desext(gens, f)
        }
    }

    /// `g ⪈ 0`, or `g > 0` in strict mode.
    pub fn is_background(&self, g: &Gamble) -> bool {
        if self.strict {
            g.is_strictly_positive()
        } else {
            g.is_weakly_positive()
        }
    }
}

/// How one sequence of the product was settled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    /// Zero lies in the sequence's cone.
    Skip {
        certificate: Certificate,
    },
    /// `f ∈ B` lies in the sequence's cone.
    Hit {
        f: Gamble,
        certificate: Certificate,
    },
    Miss,
}

/// Evidence for one sequence. Certificate coefficients refer to the
/// distinct gambles of `sequence` in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceEvidence {
    pub sequence: Vec<Gamble>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtAnswer {
    pub member: bool,
    pub witness_list: Vec<GambleSet>,
    /// Sequences in lexicographic order, up to and including the first miss.
    pub sequences: Vec<SequenceEvidence>,
}

impl ExtAnswer {
    /// Re-checks a positive answer by substitution: the evidence must cover
    /// the whole product of the witness list, every hit must land in `b`,
    /// and every certificate must validate.
    pub fn verify(&self, b: &GambleSet, opts: Options) -> bool {
        if !self.member {
            return false;
        }
        let lists: Vec<&[Gamble]> = self.witness_list.iter().map(GambleSet::members).collect();
        let expected: Vec<Vec<Gamble>> = Sequences::new(&lists).collect();
        if expected.len() != self.sequences.len() {
            return false;
        }
        expected.iter().zip(&self.sequences).all(|(seq, ev)| {
            if &ev.sequence != seq {
                return false;
            }
            let gens = match ConeGenerators::new(b.dim(), seq.iter().cloned()) {
                Ok(g) => g,
                Err(_) => return false,
            };
            match &ev.outcome {
                Outcome::Skip { certificate } => opts.certificate_valid(certificate, &gens, &Gamble::zero(b.dim())),
                Outcome::Hit { f, certificate } => b.contains(f) && opts.certificate_valid(certificate, &gens, f),
                Outcome::Miss => false,
            }
        })
    }
}

/// Lexicographic enumeration of `A₁×…×Aₙ`. The empty product has exactly one
/// (empty) sequence; a product with an empty factor has none.
pub(crate) struct Sequences<'a> {
    lists: &'a [&'a [Gamble]],
    idx: Option<Vec<usize>>,
}

impl<'a> Sequences<'a> {
    pub(crate) fn new(lists: &'a [&'a [Gamble]]) -> Self {
        let idx = if lists.iter().any(|l| l.is_empty()) { None } else { Some(vec![0; lists.len()]) };
        Self { lists, idx }
    }
}

impl Iterator for Sequences<'_> {
    type Item = Vec<Gamble>;

    fn next(&mut self) -> Option<Vec<Gamble>> {
        let idx = self.idx.as_mut()?;
        let out = idx.iter().zip(self.lists).map(|(&i, l)| l[i].clone()).collect();
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                self.idx = None;
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < self.lists[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
        Some(out)
    }
}

pub(crate) fn product_size(sizes: impl IntoIterator<Item = usize>) -> u128 {
    sizes.into_iter().fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

pub(crate) fn check_cap(sizes: impl IntoIterator<Item = usize>, cap: u64) -> Result<()> {
    let size = product_size(sizes);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// Decides the closure condition for `list` against `b`, stopping at the first
/// sequence that is neither skipped nor hit. An empty list behaves as the
/// single empty sequence, whose cone is the background cone alone.
pub fn closure_holds(list: &[GambleSet], b: &GambleSet, opts: Options) -> Result<ExtAnswer> {
    let dim = b.dim();
    for a in list {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
        }
    }
    check_cap(list.iter().map(GambleSet::len), opts.cap)?;
    let lists: Vec<&[Gamble]> = list.iter().map(GambleSet::members).collect();
    let zero = Gamble::zero(dim);
    let mut sequences = Vec::new();
    let mut member = true;
    for seq in Sequences::new(&lists) {
        let gens = ConeGenerators::new(dim, seq.iter().cloned())?;
        let outcome = settle(&gens, b, &zero, opts)?;
        let miss = outcome == Outcome::Miss;
        sequences.push(SequenceEvidence { sequence: seq, outcome });
        if miss {
            member = false;
            break;
        }
    }
    Ok(ExtAnswer { member, witness_list: list.to_vec(), sequences })
}

fn settle(gens: &ConeGenerators, b: &GambleSet, zero: &Gamble, opts: Options) -> Result<Outcome> {
    if let Some(certificate) = opts.cone_contains(gens, zero)? {
        return Ok(Outcome::Skip { certificate });
    }
    for f in b.members() {
        if let Some(certificate) = opts.cone_contains(gens, f)? {
            return Ok(Outcome::Hit { f: f.clone(), certificate });
        }
    }
    Ok(Outcome::Miss)
}

/// `B ∈ Ext(𝒜)`, decided over the full list of `𝒜`'s members. For `𝒜 = ∅`
/// this is the background clause: some `f ∈ B` with `f ⪈ 0`.
pub fn ext_contains(assessment: &Assessment, b: &GambleSet, opts: Options) -> Result<ExtAnswer> {
    if b.dim() != assessment.dim() {
        return Err(Error::DimensionMismatch { expected: assessment.dim(), found: b.dim() });
    }
    closure_holds(assessment.sets(), b, opts)
}

/// `∅ ∉ Ext(𝒜)`.
pub fn is_consistent(assessment: &Assessment, opts: Options) -> Result<bool> {
    Ok(!ext_contains(assessment, &GambleSet::empty(assessment.dim()), opts)?.member)
}
