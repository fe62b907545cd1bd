// Membership through the family of coherent sets of desirable gambles that
// an assessment generates.

use desir::extension::{Assessment, GambleSet};
use desir::representation::{k_family_contains, kd_contains, representation_agrees, DFamilySpec, FinGenD};
use desir::Gamble;

pub fn run_example() -> desir::Result<String> {
    let a = Assessment::new(2, [GambleSet::from_ints(2, &[&[1, -1], &[-1, 2]])?])?;
    let fam = DFamilySpec::of(&a)?;
    let b = GambleSet::from_ints(2, &[&[2, -1], &[-1, 3]])?;
    let ans = k_family_contains(&fam, &b)?;
    assert!(representation_agrees(&a, &b)?);

    let d = FinGenD::from_gambles(2, [Gamble::from_ints(&[1, -1])])?;
    let in_d = kd_contains(&d, &b)?;
    let incoherent = FinGenD::from_gambles(2, [Gamble::from_ints(&[-1, 0])]).is_err();
    Ok(format!(
        "B in K of the family: {}; B in K_D for D = desext{{(1,-1)}}: {in_d}; desext{{(-1,0)}} rejected: {incoherent}",
        ans.member
    ))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
