// Drawing cones over a two-atom space.

use desir::cli::run;

pub fn run_example() -> desir::Result<String> {
    let dir = std::env::temp_dir().join(format!("desir-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| desir::Error::Input(e.to_string()))?;
    let instance = dir.join("figure.json");
    let svg = dir.join("figure.svg");
    let body = r#"{"omega":["a","b"],
        "gambles":{"a1":["-17/10","4/5"],"c2":["1","-11/10"],"e1":[1,0],"e2":[0,1]},
        "query":{"sequences":[["a1","c2"],["e1","e2"],[]]}}"#;
    std::fs::write(&instance, body).map_err(|e| desir::Error::Input(e.to_string()))?;
    let out = run(["desir", "render", instance.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    Ok(out.stdout)
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
