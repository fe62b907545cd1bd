// Strict mode: the background cone is the strictly positive gambles rather
// than the nonnegative nonzero ones.

use desir::cones::{desext_contains, desext_contains_strict, ConeGenerators};
use desir::extension::{ext_contains, Assessment, GambleSet, Options};
use desir::Gamble;

pub fn run_example() -> desir::Result<String> {
    let empty = ConeGenerators::empty(2);
    let unit = Gamble::from_ints(&[1, 0]);
    let weak = desext_contains(&empty, &unit)?.is_some();
    let strict = desext_contains_strict(&empty, &unit)?.is_some();
    assert!(weak && !strict);

    let e = ConeGenerators::new(2, [Gamble::from_ints(&[-1, 1])])?;
    let cert =
        desext_contains_strict(&e, &Gamble::from_ints(&[0, 1]))?.expect("(-1,1) plus a strictly positive gamble");
    assert!(cert.verify_strict(&e, &Gamble::from_ints(&[0, 1])));

    let a = Assessment::new(2, [GambleSet::from_ints(2, &[&[1, -1], &[-1, 2]])?])?;
    let b = GambleSet::from_ints(2, &[&[2, -1], &[0, 3]])?;
    let ans = ext_contains(&a, &b, Options::strict())?;
    assert!(ans.verify(&b, Options::strict()));
    Ok(format!(
        "(1,0) weak {weak} strict {strict}; (0,1) strict via (-1,1): lambdas {:?}; B in strict Ext: {}",
        cert.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>(),
        ans.member
    ))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
