// Cone membership with certificates: posi(E), desext(E) = posi(E ∪ G⪈0)
// and the zero test that decides coherence of desext(E).

use desir::cones::{d_coherent, desext_contains, posi_contains, zero_in_desext, ConeGenerators};
use desir::Gamble;

pub fn run_example() -> desir::Result<String> {
    let mut lines = Vec::new();

    let e = ConeGenerators::new(2, [Gamble::from_ints(&[1, -1]), Gamble::from_ints(&[-1, 2])])?;
    let sum = Gamble::from_ints(&[0, 1]);
    let cert = posi_contains(&e, &sum)?.expect("g1 + g2 is in posi");
    assert!(cert.verify_posi(&e, &sum));
    lines
        .push(format!("(0,1) in posi: lambdas {:?}", cert.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>()));

    let f = Gamble::from_ints(&[3, -2]);
    let cert = desext_contains(&e, &f)?.expect("4·g1 + g2 = f");
    assert!(cert.verify_desext(&e, &f));
    lines.push(format!("{f} in desext: remainder {}", cert.remainder));

    let figure =
        ConeGenerators::new(2, [Gamble::from_fracs(&[(-17, 10), (4, 5)]), Gamble::from_fracs(&[(1, 1), (-11, 10)])])?;
    let zero = zero_in_desext(&figure)?.expect("the figure pair sums below zero");
    assert!(zero.verify_desext(&figure, &Gamble::zero(2)));
    assert!(!d_coherent(&figure)?);
    lines.push(format!(
        "0 in desext of the figure pair: lambdas {:?}, remainder {}",
        zero.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>(),
        zero.remainder
    ));
    lines.push(format!("desext(E) coherent: {}", d_coherent(&e)?));
    Ok(lines.join("\n"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
