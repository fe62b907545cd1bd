// Machine-checked derivations: unrolling the addition axiom into pairwise
// steps, and recovering dominance from addition.

use desir::extension::{addpair_derive, dom_from_add_check, GambleSet, Step};
use desir::Gamble;
use std::collections::BTreeMap;

pub fn run_example() -> desir::Result<String> {
    let a1 = GambleSet::from_ints(2, &[&[1, -1], &[0, 0]])?;
    let a2 = GambleSet::from_ints(2, &[&[-1, 2], &[0, 0]])?;
    let g = |v: &[i64]| Gamble::from_ints(v);
    let combination: BTreeMap<Vec<Gamble>, Gamble> = [
        (vec![g(&[0, 0]), g(&[-1, 2])], g(&[-1, 2])),
        (vec![g(&[0, 0]), g(&[0, 0])], g(&[0, 0])),
        (vec![g(&[1, -1]), g(&[-1, 2])], g(&[0, 1])),
        (vec![g(&[1, -1]), g(&[0, 0])], g(&[1, -1])),
    ]
    .into_iter()
    .collect();
    let premises = [a1.clone(), a2];
    let trace = addpair_derive(&premises, &combination)?;
    assert!(trace.verify(&premises));

    let mut lines = vec![format!("addition trace, {} steps:", trace.steps.len())];
    for s in &trace.steps {
        let rule = match s {
            Step::Premise { .. } => "premise",
            Step::Positive { .. } => "positive",
            Step::AddPair { .. } => "add-pair",
            Step::Add { .. } => "add",
            Step::Superset { .. } => "superset",
        };
        let c: Vec<String> = s.conclusion().members().iter().map(ToString::to_string).collect();
        lines.push(format!("  {rule:9} {{{}}}", c.join(", ")));
    }

    let dominators: BTreeMap<Gamble, Gamble> =
        [(g(&[1, -1]), g(&[2, -1])), (g(&[0, 0]), g(&[0, 0]))].into_iter().collect();
    let dom = dom_from_add_check(&a1, &dominators)?;
    assert!(dom.verify(&[a1]));
    let end: Vec<String> = dom.result().expect("nonempty trace").members().iter().map(ToString::to_string).collect();
    lines.push(format!("dominance via addition ends at {{{}}}", end.join(", ")));
    Ok(lines.join("\n"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
