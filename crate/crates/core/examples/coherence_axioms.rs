// Sampling the coherence axioms on Ext(𝒜).

use desir::extension::{check_axiom, Assessment, Axiom, GambleSet, Options};

pub fn run_example() -> desir::Result<String> {
    let a = Assessment::new(
        3,
        [GambleSet::from_ints(3, &[&[1, -1, 0], &[-1, 0, 2]])?, GambleSet::from_ints(3, &[&[0, 1, -1]])?],
    )?;
    let mut lines = Vec::new();
    for axiom in Axiom::ALL {
        let r = check_axiom(&a, axiom, 11, 25, Options::default())?;
        assert!(r.passed(), "{:?}", r.counterexamples);
        lines.push(format!("{axiom}: {} instances, {} counterexamples", r.instances, r.counterexamples.len()));
    }
    Ok(lines.join("\n"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
