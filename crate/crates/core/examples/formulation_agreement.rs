// Three characterisations of the natural extension answering the same
// queries.

use desir::formulations::compare_formulations;
use desir::oracle::{gen_instance, InstanceGenConfig};

pub fn run_example() -> desir::Result<String> {
    let (mut members, mut agree) = (0, 0);
    let total = 40;
    for seed in 0..total {
        let cfg = InstanceGenConfig { seed, omega_size: 3, num_sets: 3, set_size: 2, coeff_range: 2 };
        let (a, b) = gen_instance(&cfg)?;
        let c = compare_formulations(&a, &b)?;
        agree += usize::from(c.agree());
        members += usize::from(c.definition.member);
    }
    assert_eq!(agree, total as usize);
    Ok(format!("{total} instances, {members} members, all three formulations agree on {agree}"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
