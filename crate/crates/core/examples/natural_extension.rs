// The natural extension of an assessment, with one piece of evidence per
// sequence of choices.

use desir::extension::{ext_contains, is_consistent, Assessment, GambleSet, Options, Outcome};

pub fn run_example() -> desir::Result<String> {
    let g1: &[i64] = &[1, -1];
    let g2: &[i64] = &[-1, 2];
    let a = Assessment::new(2, [GambleSet::from_ints(2, &[g1, &[0, 0]])?, GambleSet::from_ints(2, &[g2, &[0, 0]])?])?;
    let opts = Options::default();
    assert!(is_consistent(&a, opts)?);

    let mut lines = Vec::new();
    for b in [GambleSet::from_ints(2, &[&[0, 1]])?, GambleSet::from_ints(2, &[&[0, 0], &[0, 1]])?] {
        let ans = ext_contains(&a, &b, opts)?;
        assert!(ans.member && ans.verify(&b, opts));
        lines.push(format!(
            "{:?} in Ext: {}",
            b.members().iter().map(ToString::to_string).collect::<Vec<_>>(),
            ans.member
        ));
        for s in &ans.sequences {
            let seq: Vec<String> = s.sequence.iter().map(ToString::to_string).collect();
            let what = match &s.outcome {
                Outcome::Skip { .. } => "skip".to_string(),
                Outcome::Hit { f, .. } => format!("hit {f}"),
                Outcome::Miss => "miss".to_string(),
            };
            lines.push(format!("  ⟨{}⟩ {what}", seq.join(", ")));
        }
    }
    let b = GambleSet::from_ints(2, &[&[0, -1]])?;
    lines.push(format!("{{(0,-1)}} in Ext: {}", ext_contains(&a, &b, opts)?.member));
    Ok(lines.join("\n"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
