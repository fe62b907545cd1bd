// Differential testing against the brute-force oracles.

use desir::cones::{desext_contains, ConeGenerators};
use desir::extension::{ext_contains, Options};
use desir::oracle::{brute_ext_contains, fm_desext_contains, gen_cone_query, gen_instance, InstanceGenConfig};

pub fn run_example() -> desir::Result<String> {
    let mut cone_hits = 0;
    for seed in 0..100 {
        let (gens, f) = gen_cone_query(seed, 3, 3, 3);
        let cg = ConeGenerators::new(f.dim(), gens.iter().cloned())?;
        let engine = desext_contains(&cg, &f)?.is_some();
        assert_eq!(engine, fm_desext_contains(&gens, &f)?, "seed {seed}");
        cone_hits += usize::from(engine);
    }
    let mut ext_hits = 0;
    for seed in 0..30 {
        let cfg = InstanceGenConfig { seed, omega_size: 2, num_sets: 2, set_size: 2, coeff_range: 2 };
        let (a, b) = gen_instance(&cfg)?;
        let engine = ext_contains(&a, &b, Options::default())?.member;
        assert_eq!(engine, brute_ext_contains(&a, &b, a.len() + 1)?, "seed {seed}");
        ext_hits += usize::from(engine);
    }
    Ok(format!("cones: 100 agree ({cone_hits} members); extension: 30 agree ({ext_hits} members)"))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
