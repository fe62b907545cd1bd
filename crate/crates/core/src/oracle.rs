//! Ground truth for testing: cone membership by Fourier–Motzkin elimination,
//! a literal list search for `Ext(𝒜)`, and seeded instance generation.
//!
//! Nothing here touches the simplex or the full-list shortcut.

use crate::extension::{check_cap, Assessment, GambleSet, Sequences, DEFAULT_CAP};
use crate::gambles::Gamble;
use crate::ratlp::{fm_feasible, nonneg_rows, Constraint, Rational};
use crate::{Error, Result};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// One row per atom over the generator coefficients, padded with `extra`
/// zero columns.
fn atom_rows(gens: &[Gamble], dim: usize, extra: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|w| {
            let mut row: Vec<Rational> = gens.iter().map(|g| g.values()[w].clone()).collect();
            row.resize(gens.len() + extra, Rational::zero());
            row
        })
        .collect()
}

/// `f ∈ posi(gens)`: `λ ≥ 0`, `Σλ > 0`, `Σ λᵢ·gᵢ = f`.
pub fn fm_posi_contains(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    let (k, dim) = (gens.len(), f.dim());
    if k == 0 {
        return Ok(false);
    }
    let mut rows = nonneg_rows(k);
    rows.push(Constraint::gt(ones(k), Rational::zero()));
    for (row, b) in atom_rows(gens, dim, 0).into_iter().zip(f.values()) {
        rows.push(Constraint::eq(row, b.clone()));
    }
    fm_feasible(k, &rows)
}

/// `f ∈ posi(gens ∪ G⪈0)`.
pub fn fm_desext_contains(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    if f.is_weakly_positive() {
        return Ok(true);
    }
    let (k, dim) = (gens.len(), f.dim());
    if k == 0 {
        return Ok(false);
    }
    let mut rows = nonneg_rows(k);
    rows.push(Constraint::gt(ones(k), Rational::zero()));
    for (row, b) in atom_rows(gens, dim, 0).into_iter().zip(f.values()) {
        rows.push(Constraint::le(row, b.clone()));
    }
    fm_feasible(k, &rows)
}

/// `0 ∈ posi(gens ∪ G⪈0)`: `λ ≥ 0`, `Σλ = 1`, `Σ λᵢ·gᵢ ≤ 0`.
pub fn fm_zero_in_desext(gens: &[Gamble], dim: usize) -> Result<bool> {
    let k = gens.len();
    if k == 0 {
        return Ok(false);
    }
    let mut rows = nonneg_rows(k);
    rows.push(Constraint::eq(ones(k), Rational::one()));
    for row in atom_rows(gens, dim, 0) {
        rows.push(Constraint::le(row, Rational::zero()));
    }
    fm_feasible(k, &rows)
}

/// The slack branch of strict membership: `λ ≥ 0`, `Σλ > 0`, `ε > 0`,
/// `Σ λᵢ·gᵢ + ε·1 ≤ f`.
pub fn fm_strict_slack(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    let (k, dim) = (gens.len(), f.dim());
    if k == 0 {
        return Ok(false);
    }
    let mut rows = nonneg_rows(k + 1);
    let mut sum = ones(k);
    sum.push(Rational::zero());
    rows.push(Constraint::gt(sum, Rational::zero()));
    let mut eps = vec![Rational::zero(); k];
    eps.push(Rational::one());
    rows.push(Constraint::gt(eps, Rational::zero()));
    for (mut row, b) in atom_rows(gens, dim, 1).into_iter().zip(f.values()) {
        row[k] = Rational::one();
        rows.push(Constraint::le(row, b.clone()));
    }
    fm_feasible(k + 1, &rows)
}

/// `f ∈ posi(gens ∪ G>0)` through its three branches.
pub fn fm_desext_contains_strict(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    Ok(f.is_strictly_positive() || fm_posi_contains(gens, f)? || fm_strict_slack(gens, f)?)
}

/// The same cone membership phrased directly over `(λ, r)`: `f = Σ λᵢ·gᵢ + r`
/// with either `r > 0`, or `r = 0` and `Σλ > 0`. Used to cross-check the
/// branch decomposition above.
pub fn fm_strict_direct(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    let (k, n) = (gens.len(), gens.len() + f.dim());
    let system = |positive_remainder: bool| -> Result<bool> {
        let mut rows = nonneg_rows(n);
        for w in 0..f.dim() {
            let mut r = vec![Rational::zero(); n];
            r[k + w] = Rational::one();
            rows.push(if positive_remainder {
                Constraint::gt(r, Rational::zero())
            } else {
                Constraint::eq(r, Rational::zero())
            });
        }
        if !positive_remainder {
            let mut s = ones(k);
            s.resize(n, Rational::zero());
            rows.push(Constraint::gt(s, Rational::zero()));
        }
        for (w, (mut row, b)) in atom_rows(gens, f.dim(), f.dim()).into_iter().zip(f.values()).enumerate() {
            row[k + w] = Rational::one();
            rows.push(Constraint::eq(row, b.clone()));
        }
        fm_feasible(n, &rows)
    };
    Ok(system(true)? || (k > 0 && system(false)?))
}

/// Literal reading of the natural extension: some list of `𝒜`'s members
/// (with repetition, length at most `max_len`) all of whose sequences skip or
/// hit. Every cone test goes through Fourier–Motzkin, memoised on the set of
/// gambles in the sequence.
pub fn brute_ext_contains(assessment: &Assessment, b: &GambleSet, max_len: usize) -> Result<bool> {
    brute_ext_contains_capped(assessment, b, max_len, DEFAULT_CAP)
}

pub fn brute_ext_contains_capped(assessment: &Assessment, b: &GambleSet, max_len: usize, cap: u64) -> Result<bool> {
    if b.dim() != assessment.dim() {
        return Err(Error::DimensionMismatch { expected: assessment.dim(), found: b.dim() });
    }
    if assessment.is_empty() {
        return Ok(b.members().iter().any(Gamble::is_weakly_positive));
    }
    let dim = assessment.dim();
    let sets = assessment.sets();
    let mut memo: BTreeMap<BTreeSet<Gamble>, bool> = BTreeMap::new();
    let mut covered = |seq: &[Gamble]| -> Result<bool> {
        let key: BTreeSet<Gamble> = seq.iter().cloned().collect();
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let gens: Vec<Gamble> = key.iter().cloned().collect();
        let mut v = fm_zero_in_desext(&gens, dim)?;
        for f in b.members() {
            if v {
                break;
            }
            v = fm_desext_contains(&gens, f)?;
        }
        memo.insert(key, v);
        Ok(v)
    };
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            let list: Vec<&[Gamble]> = idx.iter().map(|&i| sets[i].members()).collect();
            check_cap(list.iter().map(|l| l.len()), cap)?;
            let mut all = true;
            for seq in Sequences::new(&list) {
                if !covered(&seq)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < sets.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(false)
}

/// Parameters of the seeded instance generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceGenConfig {
    pub seed: u64,
    pub omega_size: usize,
    pub num_sets: usize,
    pub set_size: usize,
    /// Entries are drawn uniformly from `-coeff_range..=coeff_range`.
    pub coeff_range: i64,
}

impl InstanceGenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.omega_size == 0 || self.num_sets == 0 || self.set_size == 0 {
            return Err(Error::Input("omega_size, num_sets and set_size must be at least 1".into()));
        }
        if self.coeff_range < 1 {
            return Err(Error::Input("coeff_range must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn random_gamble(rng: &mut impl Rng, dim: usize, range: i64) -> Gamble {
    Gamble::new((0..dim).map(|_| Rational::from_integer(rng.gen_range(-range..=range).into())).collect())
}

fn random_set(rng: &mut impl Rng, dim: usize, max_size: usize, range: i64) -> GambleSet {
    let n = rng.gen_range(1..=max_size);
    GambleSet::new(dim, (0..n).map(|_| random_gamble(rng, dim, range)).collect::<Vec<_>>()).expect("uniform dimension")
}

/// A deterministic `(𝒜, B)` pair: between one and `num_sets` sets in `𝒜`,
/// each (and `B`) with between one and `set_size` members before
/// deduplication.
pub fn gen_instance(cfg: &InstanceGenConfig) -> Result<(Assessment, GambleSet)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dim = cfg.omega_size;
    let n = rng.gen_range(1..=cfg.num_sets);
    let sets: Vec<GambleSet> = (0..n).map(|_| random_set(&mut rng, dim, cfg.set_size, cfg.coeff_range)).collect();
    let b = random_set(&mut rng, dim, cfg.set_size, cfg.coeff_range);
    Ok((Assessment::new(dim, sets)?, b))
}

/// One posi element per sequence of `sets`: nonnegative integer weights up
/// to two, at least one positive.
pub fn random_combination(rng: &mut impl Rng, sets: &[GambleSet]) -> BTreeMap<Vec<Gamble>, Gamble> {
    let dim = sets.first().map_or(0, GambleSet::dim);
    let lists: Vec<&[Gamble]> = sets.iter().map(GambleSet::members).collect();
    Sequences::new(&lists)
        .map(|seq| {
            let mut lambdas: Vec<Rational> =
                seq.iter().map(|_| Rational::from_integer(rng.gen_range(0..=2).into())).collect();
            if lambdas.iter().all(Zero::is_zero) {
                let i = rng.gen_range(0..lambdas.len());
                lambdas[i] = Rational::one();
            }
            let f = Gamble::combination(dim, lambdas.iter().zip(&seq)).expect("uniform dimension");
            (seq, f)
        })
        .collect()
}

/// A deterministic cone query: up to `max_gens` generators (possibly none)
/// and a target, over `1..=max_dim` atoms.
pub fn gen_cone_query(seed: u64, max_dim: usize, max_gens: usize, range: i64) -> (Vec<Gamble>, Gamble) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=max_dim);
    let k = rng.gen_range(0..=max_gens);
    let gens = (0..k).map(|_| random_gamble(&mut rng, dim, range)).collect();
    // Some targets are drawn from the cone itself.
    let f = if k > 0 && rng.gen_bool(0.4) {
        let lambdas: Vec<Rational> = (0..k).map(|_| Rational::from_integer(rng.gen_range(0..=2).into())).collect();
        let gens: &Vec<Gamble> = &gens;
        let mut f = Gamble::combination(dim, lambdas.iter().zip(gens)).expect("uniform dimension");
        if rng.gen_bool(0.5) {
            f = f
                .add(&Gamble::new((0..dim).map(|_| Rational::from_integer(rng.gen_range(0..=1).into())).collect()))
                .expect("uniform dimension");
        }
        f
    } else {
        random_gamble(&mut rng, dim, range)
    };
    (gens, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{ext_contains, Options};

    fn set(v: &[&[i64]]) -> GambleSet {
        GambleSet::from_ints(2, v).unwrap()
    }

    fn assess(v: &[&[&[i64]]]) -> Assessment {
        Assessment::new(2, v.iter().map(|s| set(s))).unwrap()
    }

    #[test]
    fn brute_examples() {
        let pair = assess(&[&[&[1, -1], &[0, 0]], &[&[-1, 2], &[0, 0]]]);
        assert!(brute_ext_contains(&pair, &set(&[&[0, 1]]), 3).unwrap());
        assert!(!brute_ext_contains(&assess(&[&[&[1, -1]]]), &set(&[&[-1, 1]]), 3).unwrap());
        assert!(brute_ext_contains(&Assessment::empty(2), &set(&[&[1, 0]]), 3).unwrap());
        assert!(!brute_ext_contains(&Assessment::empty(2), &set(&[&[1, -1]]), 3).unwrap());
    }

    #[test]
    fn fm_cone_examples() {
        let g = |v: &[i64]| Gamble::from_ints(v);
        assert!(fm_posi_contains(&[g(&[1, -1]), g(&[-1, 2])], &g(&[0, 1])).unwrap());
        assert!(!fm_zero_in_desext(&[g(&[1, -1]), g(&[-1, 2])], 2).unwrap());
        assert!(fm_zero_in_desext(&[g(&[-1, -1])], 2).unwrap());
        assert!(fm_desext_contains(&[g(&[1, -1])], &g(&[1, 0])).unwrap());
        assert!(fm_strict_slack(&[g(&[1, -1])], &g(&[1, 0])).unwrap());
        assert!(!fm_desext_contains_strict(&[g(&[1, -1])], &g(&[0, 1])).unwrap());
    }

    #[test]
    fn strict_branches_match_direct_phrasing() {
        for seed in 0..200 {
            let (gens, f) = gen_cone_query(seed, 3, 3, 2);
            assert_eq!(
                fm_desext_contains_strict(&gens, &f).unwrap(),
                fm_strict_direct(&gens, &f).unwrap(),
                "seed {seed}: {gens:?} {f}"
            );
        }
    }

    #[test]
    fn generator_is_deterministic_and_bounded() {
        let cfg = InstanceGenConfig { seed: 42, omega_size: 3, num_sets: 3, set_size: 1, coeff_range: 2 };
        assert_eq!(gen_instance(&cfg).unwrap(), gen_instance(&cfg).unwrap());
        for seed in 0..50 {
            let (a, b) = gen_instance(&InstanceGenConfig { seed, ..cfg }).unwrap();
            assert!(a.sets().iter().all(|s| s.len() == 1));
            assert!((1..=3).contains(&a.len()));
            assert_eq!(b.len(), 1);
            for g in a.sets().iter().flat_map(|s| s.members()).chain(b.members()) {
                assert_eq!(g.dim(), 3);
                assert!(g
                    .values()
                    .iter()
                    .all(|q| *q >= Rational::from_integer((-2).into()) && *q <= Rational::from_integer(2.into())));
            }
        }
        assert!(gen_instance(&InstanceGenConfig { set_size: 0, ..cfg }).is_err());
        assert!(gen_instance(&InstanceGenConfig { coeff_range: 0, ..cfg }).is_err());
    }

    #[test]
    fn brute_matches_engine_on_small_instances() {
        for seed in 0..30 {
            let cfg = InstanceGenConfig { seed, omega_size: 2, num_sets: 2, set_size: 2, coeff_range: 2 };
            let (a, b) = gen_instance(&cfg).unwrap();
            let engine = ext_contains(&a, &b, Options::default()).unwrap().member;
            assert_eq!(brute_ext_contains(&a, &b, a.len() + 1).unwrap(), engine, "seed {seed}");
        }
    }
}
