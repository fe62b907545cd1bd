// Small worked examples with their expected answers. Numeric answers were
// obtained from the Fourier–Motzkin oracle and are re-checked against it
// here.

use desir::cones::{
    d_coherent, desext_contains, desext_contains_strict, posi_contains, zero_in_desext, ConeGenerators,
};
use desir::extension::{
    addpair_derive, closure_holds, dom_from_add_check, ext_contains, is_consistent, Assessment, GambleSet, Options,
    Outcome,
};
use desir::formulations::{ext_contains_dbdc, ext_contains_decadt};
use desir::oracle::{
    brute_ext_contains, fm_desext_contains, fm_desext_contains_strict, fm_posi_contains, fm_zero_in_desext,
};
use desir::ratlp::{fm_feasible, nonneg_rows, solve, Constraint, LinearProgram, LpOutcome};
use desir::representation::{
    downward_closure_check, family_contains_d, k_family_contains, kd_add_closure_check, kd_contains, AddInstance,
    DFamilySpec, FinGenD,
};
use desir::{Gamble, Rational};
use std::collections::BTreeMap;

fn g(v: &[i64]) -> Gamble {
    Gamble::from_ints(v)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

fn cone(v: &[&[i64]]) -> ConeGenerators {
    ConeGenerators::new(v.first().map_or(2, |x| x.len()), v.iter().map(|x| g(x))).unwrap()
}

fn set(v: &[&[i64]]) -> GambleSet {
    GambleSet::from_ints(2, v).unwrap()
}

fn assess(v: &[&[&[i64]]]) -> Assessment {
    Assessment::new(2, v.iter().map(|s| set(s))).unwrap()
}

fn figure() -> ConeGenerators {
    ConeGenerators::new(2, [Gamble::from_fracs(&[(-17, 10), (4, 5)]), Gamble::from_fracs(&[(1, 1), (-11, 10)])])
        .unwrap()
}

fn paired() -> Assessment {
    assess(&[&[&[1, -1], &[0, 0]], &[&[-1, 2], &[0, 0]]])
}

#[test]
fn linear_programs() {
    let lp = LinearProgram::new(1, ints(&[1]), [vec![Constraint::le(ints(&[1]), q(3, 1))], nonneg_rows(1)].concat())
        .unwrap();
    assert_eq!(solve(&lp).unwrap(), LpOutcome::Optimal { value: q(3, 1), assignment: ints(&[3]) });
    let lp = LinearProgram::new(1, ints(&[1]), nonneg_rows(1)).unwrap();
    assert!(matches!(solve(&lp).unwrap(), LpOutcome::Unbounded { .. }));
    let lp =
        LinearProgram::new(2, ints(&[1, 1]), [vec![Constraint::le(ints(&[1, 1]), q(0, 1))], nonneg_rows(2)].concat())
            .unwrap();
    assert_eq!(solve(&lp).unwrap(), LpOutcome::Optimal { value: q(0, 1), assignment: ints(&[0, 0]) });
}

#[test]
fn fourier_motzkin() {
    assert!(!fm_feasible(1, &[Constraint::le(ints(&[1]), q(1, 1)), Constraint::le(ints(&[-1]), q(-2, 1))]).unwrap());
    let rows = [vec![Constraint::eq(ints(&[1, 1]), q(1, 1))], nonneg_rows(2)].concat();
    assert!(fm_feasible(2, &rows).unwrap());
    let rows = [
        vec![
            Constraint::le(ints(&[1, -1]), q(0, 1)),
            Constraint::le(ints(&[-1, 2]), q(0, 1)),
            Constraint::eq(ints(&[1, 1]), q(1, 1)),
        ],
        nonneg_rows(2),
    ]
    .concat();
    assert!(!fm_feasible(2, &rows).unwrap());
}

#[test]
fn posi_membership() {
    let c = posi_contains(&cone(&[&[1, 0], &[0, 1]]), &g(&[2, 3])).unwrap().unwrap();
    assert_eq!(c.lambdas, ints(&[2, 3]));
    assert!(posi_contains(&ConeGenerators::empty(2), &g(&[1, 0])).unwrap().is_none());
    let e = cone(&[&[1, -1], &[-1, 2]]);
    let c = posi_contains(&e, &g(&[0, 1])).unwrap().unwrap();
    assert_eq!(c.lambdas, ints(&[1, 1]));
    assert!(fm_posi_contains(e.generators(), &g(&[0, 1])).unwrap());
}

#[test]
fn desext_membership() {
    assert!(desext_contains(&ConeGenerators::empty(2), &g(&[1, 0])).unwrap().is_some());
    let e = cone(&[&[1, -1]]);
    let c = desext_contains(&e, &g(&[1, 0])).unwrap().unwrap();
    assert_eq!(c.lambdas, ints(&[1]));
    assert_eq!(c.remainder, g(&[0, 1]));
    assert!(desext_contains(&figure(), &Gamble::zero(2)).unwrap().is_some());
}

#[test]
fn zero_in_cone() {
    let e = cone(&[&[1, -1], &[-1, 2]]);
    assert!(zero_in_desext(&e).unwrap().is_none());
    assert!(!fm_zero_in_desext(e.generators(), 2).unwrap());
    assert_eq!(zero_in_desext(&cone(&[&[-1, -1]])).unwrap().unwrap().lambdas, ints(&[1]));
    let c = zero_in_desext(&figure()).unwrap().unwrap();
    assert_eq!(c.lambdas, ints(&[1, 1]));
    assert!(c.verify_desext(&figure(), &Gamble::zero(2)));
}

#[test]
fn coherence_of_generated_cones() {
    assert!(d_coherent(&cone(&[&[1, -1]])).unwrap());
    assert!(!fm_zero_in_desext(&[g(&[1, -1])], 2).unwrap());
    assert!(!d_coherent(&cone(&[&[-1, -1]])).unwrap());
    assert!(d_coherent(&ConeGenerators::empty(2)).unwrap());
}

#[test]
fn strict_membership() {
    assert!(desext_contains_strict(&ConeGenerators::empty(2), &g(&[1, 1])).unwrap().is_some());
    assert!(desext_contains_strict(&cone(&[&[1, -1]]), &g(&[1, -1])).unwrap().is_some());
    let e = cone(&[&[1, -1]]);
    let c = desext_contains_strict(&e, &g(&[1, 0])).unwrap().unwrap();
    assert_eq!(c.lambdas, vec![q(1, 2)]);
    assert_eq!(c.remainder, Gamble::from_fracs(&[(1, 2), (1, 2)]));
    assert!(fm_desext_contains_strict(e.generators(), &g(&[1, 0])).unwrap());
}

#[test]
fn closure_on_explicit_lists() {
    let list = paired().sets().to_vec();
    let ans = closure_holds(&list, &set(&[&[0, 1]]), Options::default()).unwrap();
    assert!(ans.member);
    for s in &ans.sequences {
        let gens = ConeGenerators::new(2, s.sequence.iter().cloned()).unwrap();
        let zero = fm_zero_in_desext(gens.generators(), 2).unwrap();
        match &s.outcome {
            Outcome::Skip { .. } => assert!(zero && s.sequence.contains(&Gamble::zero(2))),
            Outcome::Hit { f, .. } => {
                assert!(!zero);
                assert_eq!(f, &g(&[0, 1]));
                assert!(fm_desext_contains(gens.generators(), f).unwrap());
            }
            Outcome::Miss => panic!("no sequence misses"),
        }
    }
    assert!(closure_holds(&[set(&[&[0, 1]])], &set(&[&[0, 1]]), Options::default()).unwrap().member);
    assert!(closure_holds(&[set(&[&[-1, -1]])], &GambleSet::empty(2), Options::default()).unwrap().member);
}

#[test]
fn natural_extension_membership() {
    let opts = Options::default();
    assert!(ext_contains(&Assessment::empty(2), &set(&[&[1, 0]]), opts).unwrap().member);
    assert!(ext_contains(&paired(), &set(&[&[0, 1]]), opts).unwrap().member);
    let a = assess(&[&[&[1, -1]]]);
    assert!(!ext_contains(&a, &set(&[&[-1, 1]]), opts).unwrap().member);
    assert!(!fm_desext_contains(&[g(&[1, -1])], &g(&[-1, 1])).unwrap());
    assert!(!brute_ext_contains(&a, &set(&[&[-1, 1]]), 3).unwrap());
    assert!(brute_ext_contains(&paired(), &set(&[&[0, 1]]), 3).unwrap());
}

#[test]
fn consistency() {
    let opts = Options::default();
    assert!(is_consistent(&Assessment::empty(2), opts).unwrap());
    assert!(!is_consistent(&assess(&[&[&[-1, -1]]]), opts).unwrap());
    let with_empty = Assessment::new(2, [GambleSet::empty(2)]).unwrap();
    assert!(!is_consistent(&with_empty, opts).unwrap());
}

#[test]
fn strict_extension() {
    let opts = Options::strict();
    assert!(!ext_contains(&Assessment::empty(2), &set(&[&[1, 0]]), opts).unwrap().member);
    assert!(ext_contains(&Assessment::empty(2), &set(&[&[1, 1]]), opts).unwrap().member);
    let ans = ext_contains(&paired(), &set(&[&[0, 1]]), opts).unwrap();
    assert!(ans.member && ans.verify(&set(&[&[0, 1]]), opts));
    for s in &ans.sequences {
        let zero = fm_desext_contains_strict(&s.sequence, &Gamble::zero(2)).unwrap();
        assert_eq!(matches!(s.outcome, Outcome::Skip { .. }), zero);
    }
}

#[test]
fn addition_traces() {
    let a = GambleSet::new(2, [g(&[1, 0])]).unwrap();
    let comb: BTreeMap<_, _> = [(vec![g(&[1, 0])], g(&[2, 0]))].into_iter().collect();
    let t = addpair_derive(std::slice::from_ref(&a), &comb).unwrap();
    assert_eq!(t.pair_steps(), 1);

    let lists = [set(&[&[1, 0]]), set(&[&[0, 1]])];
    let comb: BTreeMap<_, _> = [(vec![g(&[1, 0]), g(&[0, 1])], g(&[1, 1]))].into_iter().collect();
    let t = addpair_derive(&lists, &comb).unwrap();
    assert_eq!(t.pair_steps(), 1);
    assert_eq!(t.result(), Some(&set(&[&[1, 1]])));
    t.check(&lists, &|gens, f| fm_posi_contains(gens, f)).unwrap();

    let lists = [set(&[&[1, -1], &[0, 1]]), set(&[&[-1, 2]])];
    let comb: BTreeMap<_, _> =
        [(vec![g(&[1, -1]), g(&[-1, 2])], g(&[0, 1])), (vec![g(&[0, 1]), g(&[-1, 2])], g(&[-1, 3]))]
            .into_iter()
            .collect();
    let t = addpair_derive(&lists, &comb).unwrap();
    assert_eq!(t.steps.len(), 4);
    assert_eq!(t.result(), Some(&set(&[&[0, 1], &[-1, 3]])));
    t.check(&lists, &|gens, f| fm_posi_contains(gens, f)).unwrap();
}

#[test]
fn dominance_traces() {
    let a = set(&[&[1, -1]]);
    let same: BTreeMap<_, _> = [(g(&[1, -1]), g(&[1, -1]))].into_iter().collect();
    let t = dom_from_add_check(&a, &same).unwrap();
    assert_eq!(t.result(), Some(&a));
    let up: BTreeMap<_, _> = [(g(&[1, -1]), g(&[1, 0]))].into_iter().collect();
    let t = dom_from_add_check(&a, &up).unwrap();
    assert_eq!(t.result(), Some(&set(&[&[1, 0]])));
    t.check(std::slice::from_ref(&a), &|gens, f| fm_posi_contains(gens, f)).unwrap();

    let a = set(&[&[1, -1], &[-1, 2]]);
    let two: BTreeMap<_, _> = [(g(&[1, -1]), g(&[2, -1])), (g(&[-1, 2]), g(&[-1, 3]))].into_iter().collect();
    let t = dom_from_add_check(&a, &two).unwrap();
    assert_eq!(t.result(), Some(&set(&[&[2, -1], &[-1, 3]])));
    t.check(std::slice::from_ref(&a), &|gens, f| fm_posi_contains(gens, f)).unwrap();
}

#[test]
fn alternative_formulations() {
    let cases = [
        (Assessment::empty(2), set(&[&[1, 0]]), true),
        (Assessment::empty(2), set(&[&[0, 1]]), true),
        (paired(), set(&[&[0, 1]]), true),
        (assess(&[&[&[1, -1]]]), set(&[&[-1, 1]]), false),
        (assess(&[&[&[-1, -1]]]), GambleSet::empty(2), true),
    ];
    for (a, b, expected) in cases {
        assert_eq!(ext_contains_decadt(&a, &b).unwrap().member, expected);
        assert_eq!(ext_contains_dbdc(&a, &b).unwrap().member, expected);
    }
}

#[test]
fn single_coherent_sets() {
    let d = FinGenD::from_gambles(2, [g(&[1, -1])]).unwrap();
    assert!(kd_contains(&d, &set(&[&[1, 0]])).unwrap());
    assert!(!kd_contains(&d, &set(&[&[-1, 0]])).unwrap());
    assert!(!fm_desext_contains(&[g(&[1, -1])], &g(&[-1, 0])).unwrap());
    let other = FinGenD::from_gambles(2, [g(&[-1, 2])]).unwrap();
    for d in [&d, &other] {
        assert!(kd_contains(d, &set(&[&[1, 1]])).unwrap());
    }
}

#[test]
fn families() {
    let fam = |v: &[&[&[i64]]]| DFamilySpec::new(v.iter().map(|s| set(s)).collect()).unwrap();
    let d = FinGenD::from_gambles(2, [g(&[1, -1])]).unwrap();
    assert!(family_contains_d(&fam(&[&[&[1, -1]]]), &d).unwrap());
    assert!(!family_contains_d(&fam(&[&[&[-1, -1]]]), &d).unwrap());
    let d2 = FinGenD::from_gambles(2, [g(&[-1, 2])]).unwrap();
    assert!(family_contains_d(&fam(&[&[&[1, -1], &[-1, 2]]]), &d2).unwrap());

    assert!(k_family_contains(&DFamilySpec::of(&paired()).unwrap(), &set(&[&[0, 1]])).unwrap().member);
    assert!(k_family_contains(&fam(&[&[&[0, 1]]]), &set(&[&[0, 2]])).unwrap().member);
    assert!(!k_family_contains(&fam(&[&[&[1, -1]]]), &set(&[&[-1, 1]])).unwrap().member);
}

#[test]
fn family_closure() {
    let fam = |v: &[&[&[i64]]]| DFamilySpec::new(v.iter().map(|s| set(s)).collect()).unwrap();
    let both = FinGenD::from_gambles(2, [g(&[1, -1]), g(&[-1, 2])]).unwrap();
    let r = downward_closure_check(&fam(&[&[&[1, -1]]]), &fam(&[&[&[-1, 2]]]), std::slice::from_ref(&both)).unwrap();
    assert!(r.passed() && r.applicable == 1);
    let f = fam(&[&[&[1, -1]]]);
    assert!(downward_closure_check(&f, &f, std::slice::from_ref(&both)).unwrap().passed());
    let r = downward_closure_check(&f, &fam(&[&[&[-1, -1]]]), &[both]).unwrap();
    assert!(r.passed() && r.applicable == 0);

    let d = FinGenD::from_gambles(2, [g(&[1, -1])]).unwrap();
    let a = set(&[&[1, -1]]);
    let inst = AddInstance {
        sets: vec![a.clone(), a],
        combination: [(vec![g(&[1, -1]), g(&[1, -1])], g(&[2, -2]))].into_iter().collect(),
    };
    let r = kd_add_closure_check(&[d], &[inst]).unwrap();
    assert!(r.passed() && r.applicable == 1);
}
