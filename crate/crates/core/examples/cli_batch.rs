// Driving the batch interface in process: answer a query, then re-verify
// the certificates it printed.

use desir::cli::run;

pub fn run_example() -> desir::Result<String> {
    let dir = std::env::temp_dir().join(format!("desir-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| desir::Error::Input(e.to_string()))?;
    let instance = dir.join("instance.json");
    let answer = dir.join("answer.json");
    let body = r#"{"schema":"desir/1","omega":["rain","sun"],
        "gambles":{"g1":["1","-1"],"g2":["-1","2"],"z":[0,0],"s":["0","1"]},
        "assessment":[["g1","z"],["g2","z"]],
        "query":{"kind":"in-extension","set":["s"]}}"#;
    std::fs::write(&instance, body).map_err(|e| desir::Error::Input(e.to_string()))?;

    let out = run(["desir", "in-ext", instance.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    std::fs::write(&answer, &out.stdout).map_err(|e| desir::Error::Input(e.to_string()))?;
    let check = run(["desir", "selftest", "--verify", answer.to_str().unwrap()]);
    assert_eq!(check.code, 0, "{}", check.stderr);
    Ok(format!("{}{}", out.stdout, check.stdout))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
