//! Command-line front end. Everything on stdout is JSON; diagnostics go to
//! stderr.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when `repr` meets an
//! inconsistent assessment.

use crate::cones::{self, Certificate, ConeGenerators};
use crate::extension::{
    self, ext_contains, is_consistent, Assessment, ExtAnswer, GambleSet, Options, Outcome, SequenceEvidence,
    DEFAULT_CAP,
};
use crate::formulations::compare_formulations;
use crate::gambles::{Gamble, PossibilitySpace};
use crate::oracle::{self, InstanceGenConfig};
use crate::ratlp::{format_rational, rational_serde::value_to_rational, Rational};
use crate::representation::{k_family_contains, DFamilySpec};
use crate::Error;
use clap::{Parser, Subcommand};
use num::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SCHEMA: &str = "desir/1";

#[derive(Parser, Debug)]
#[command(name = "desir", version, about = "Natural extension of sets of desirable gamble sets, with certificates")]
struct Cli {
    /// Use strictly positive gambles as the background cone.
    #[arg(long, global = true)]
    strict: bool,
    /// Largest sequence product to evaluate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Seed for `gen` and `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the empty set outside the natural extension?
    Consistency { file: PathBuf },
    /// Is `query.set` in the natural extension?
    InExt { file: PathBuf },
    /// Is `query.gamble` in the cone of `query.generators`?
    InDesext { file: PathBuf },
    /// Does the cone of `query.generators` contain zero?
    ZeroInDesext { file: PathBuf },
    /// Is the cone of `query.generators` a coherent set of desirable gambles?
    CoherentD { file: PathBuf },
    /// Compare three characterisations of membership of `query.set`.
    Equiv { file: PathBuf },
    /// Compare membership of `query.set` with its family representation.
    Repr { file: PathBuf },
    /// Draw generators and cones of a two-atom instance as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a random instance file.
    Gen {
        /// Number of atoms.
        #[arg(long, default_value_t = 2)]
        omega: usize,
        /// Most sets in the assessment.
        #[arg(long, default_value_t = 3)]
        sets: usize,
        /// Most gambles per set.
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Entries are drawn from -range..=range.
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
    /// Cross-check the engine against the oracles, or re-verify the
    /// certificates in a saved output.
    Selftest {
        /// A saved output whose certificates should be re-checked.
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
        /// Random instances per oracle.
        #[arg(long, default_value_t = 50)]
        count: u64,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn input<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Input(msg.into()))
}

/// The on-disk instance format.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub omega: Vec<String>,
    #[serde(default)]
    pub gambles: BTreeMap<String, Vec<Value>>,
    #[serde(default)]
    pub assessment: Vec<Vec<String>>,
    #[serde(default)]
    pub query: Query,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamble: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequences: Option<Vec<Vec<String>>>,
}

/// A parsed instance with every name resolved.
#[derive(Debug, Clone)]
pub struct Instance {
    pub space: PossibilitySpace,
    pub gambles: BTreeMap<String, Gamble>,
    pub assessment: Assessment,
    pub query: Query,
}

impl Instance {
    pub fn parse(text: &str) -> crate::Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed instance file: {e}")))?;
        Self::from_file(file)
    }

    pub fn from_file(file: InstanceFile) -> crate::Result<Self> {
        if let Some(s) = &file.schema {
            if s != SCHEMA {
                return Err(Error::Input(format!("unsupported schema `{s}`, expected `{SCHEMA}`")));
            }
        }
        let space = PossibilitySpace::new(file.omega.iter().cloned())?;
        let mut gambles = BTreeMap::new();
        for (name, values) in &file.gambles {
            if values.len() != space.size() {
                return Err(Error::Input(format!(
                    "gamble `{name}` has {} values but omega has {}",
                    values.len(),
                    space.size()
                )));
            }
            let values = values
                .iter()
                .map(value_to_rational)
                .collect::<crate::Result<Vec<_>>>()
                .map_err(|e| Error::Input(format!("gamble `{name}`: {e}")))?;
            gambles.insert(name.clone(), Gamble::new(values));
        }
        let mut inst = Self { assessment: Assessment::empty(space.size()), space, gambles, query: file.query };
        let sets = file.assessment.iter().map(|names| inst.set(names)).collect::<crate::Result<Vec<_>>>()?;
        inst.assessment = Assessment::new(inst.dim(), sets)?;
        Ok(inst)
    }

    pub fn dim(&self) -> usize {
        self.space.size()
    }

    pub fn gamble(&self, name: &str) -> crate::Result<&Gamble> {
        self.gambles.get(name).ok_or_else(|| Error::Input(format!("unknown gamble name `{name}`")))
    }

    pub fn set(&self, names: &[String]) -> crate::Result<GambleSet> {
        let members = names.iter().map(|n| self.gamble(n).cloned()).collect::<crate::Result<Vec<_>>>()?;
        GambleSet::new(self.dim(), members)
    }

    pub fn generators(&self, names: &[String]) -> crate::Result<ConeGenerators> {
        let members = names.iter().map(|n| self.gamble(n).cloned()).collect::<crate::Result<Vec<_>>>()?;
        ConeGenerators::new(self.dim(), members)
    }

    fn query_set(&self) -> crate::Result<GambleSet> {
        match &self.query.set {
            Some(names) => self.set(names),
            None => Err(Error::Input("query.set is required".into())),
        }
    }

    fn query_generators(&self) -> crate::Result<ConeGenerators> {
        match &self.query.generators {
            Some(names) => self.generators(names),
            None => Err(Error::Input("query.generators is required".into())),
        }
    }

    fn query_gamble(&self) -> crate::Result<&Gamble> {
        match &self.query.gamble {
            Some(name) => self.gamble(name),
            None => Err(Error::Input("query.gamble is required".into())),
        }
    }

    /// The name under which `g` was declared, if any.
    fn name_of(&self, g: &Gamble) -> Option<&str> {
        self.gambles.iter().find(|(_, v)| *v == g).map(|(k, _)| k.as_str())
    }
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn gamble_json(g: &Gamble) -> Value {
    json!(strings(g.values()))
}

fn cone_item(mode: &str, gens: &ConeGenerators, target: &Gamble, cert: &Certificate) -> Value {
    json!({
        "kind": "cone",
        "mode": mode,
        "generators": gens.generators().iter().map(gamble_json).collect::<Vec<_>>(),
        "target": gamble_json(target),
        "lambdas": strings(&cert.lambdas),
        "remainder": gamble_json(&cert.remainder),
    })
}

fn extension_item(ans: &ExtAnswer, b: &GambleSet, strict: bool) -> Value {
    json!({
        "kind": "extension",
        "strict": strict,
        "dim": b.dim(),
        "set": b,
        "witness_list": ans.witness_list,
        "sequences": ans.sequences,
    })
}

fn miss_of(ans: &ExtAnswer) -> Value {
    ans.sequences.iter().find(|s| s.outcome == Outcome::Miss).map_or(Value::Null, |s| json!(s.sequence))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).or_else(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<Instance> {
    Ok(Instance::parse(&read(path)?)?)
}

fn mode(strict: bool) -> &'static str {
    if strict {
        "strict"
    } else {
        "desext"
    }
}

fn no_strict(cli: &Cli, cmd: &str) -> CliResult<()> {
    if cli.strict {
        return input(format!("--strict is not supported by {cmd}"));
    }
    Ok(())
}

fn execute(cli: &Cli) -> CliResult<Value> {
    let opts = Options { strict: cli.strict, cap: cli.cap };
    match &cli.command {
        Command::Consistency { file } => {
            let inst = load(file)?;
            let empty = GambleSet::empty(inst.dim());
            let ans = ext_contains(&inst.assessment, &empty, opts)?;
            let certificates = if ans.member { vec![extension_item(&ans, &empty, opts.strict)] } else { vec![] };
            Ok(json!({ "answer": !ans.member, "certificates": certificates, "miss": miss_of(&ans) }))
        }
        Command::InExt { file } => {
            let inst = load(file)?;
            let b = inst.query_set()?;
            let ans = ext_contains(&inst.assessment, &b, opts)?;
            let certificates = if ans.member { vec![extension_item(&ans, &b, opts.strict)] } else { vec![] };
            Ok(json!({ "answer": ans.member, "certificates": certificates, "miss": miss_of(&ans) }))
        }
        Command::InDesext { file } => {
            let inst = load(file)?;
            let gens = inst.query_generators()?;
            let f = inst.query_gamble()?;
            Ok(cone_answer(opts.cone_contains(&gens, f)?, opts.strict, &gens, f))
        }
        Command::ZeroInDesext { file } => {
            let inst = load(file)?;
            let gens = inst.query_generators()?;
            let zero = Gamble::zero(inst.dim());
            let cert = if opts.strict { opts.cone_contains(&gens, &zero)? } else { cones::zero_in_desext(&gens)? };
            Ok(cone_answer(cert, opts.strict, &gens, &zero))
        }
        Command::CoherentD { file } => {
            let inst = load(file)?;
            let gens = inst.query_generators()?;
            let zero = Gamble::zero(inst.dim());
            let cert = if opts.strict { opts.cone_contains(&gens, &zero)? } else { cones::zero_in_desext(&gens)? };
            let certificates: Vec<Value> = cert.iter().map(|c| cone_item(mode(opts.strict), &gens, &zero, c)).collect();
            Ok(json!({ "answer": cert.is_none(), "certificates": certificates }))
        }
        Command::Equiv { file } => {
            no_strict(cli, "equiv")?;
            let inst = load(file)?;
            let b = inst.query_set()?;
            extension::check_cap(inst.assessment.sets().iter().map(GambleSet::len), opts.cap)?;
            let c = compare_formulations(&inst.assessment, &b)?;
            let certificates: Vec<Value> = [&c.definition, &c.decadt, &c.dbdc]
                .into_iter()
                .filter(|a| a.member)
                .map(|a| extension_item(a, &b, false))
                .collect();
            Ok(json!({
                "answer": c.agree(),
                "definition": c.definition.member,
                "decadt": c.decadt.member,
                "dbdc": c.dbdc.member,
                "certificates": certificates,
            }))
        }
        Command::Repr { file } => {
            no_strict(cli, "repr")?;
            let inst = load(file)?;
            let b = inst.query_set()?;
            extension::check_cap(inst.assessment.sets().iter().map(GambleSet::len), opts.cap)?;
            if inst.assessment.is_empty() {
                return input("repr needs a nonempty assessment");
            }
            if !is_consistent(&inst.assessment, opts)? {
                return Err(Failure::Inconsistent("the assessment is inconsistent".into()));
            }
            let ext = ext_contains(&inst.assessment, &b, opts)?;
            let fam = k_family_contains(&DFamilySpec::of(&inst.assessment)?, &b)?;
            let certificates = if fam.member { vec![extension_item(&fam, &b, false)] } else { vec![] };
            let witnesses: Vec<Value> = fam
                .sequences
                .iter()
                .map(|s| match &s.outcome {
                    Outcome::Hit { f, .. } => json!({ "d_generators": s.sequence, "member": f }),
                    _ => json!({ "d_generators": s.sequence, "member": Value::Null }),
                })
                .collect();
            Ok(json!({
                "answer": ext.member == fam.member,
                "extension": ext.member,
                "family": fam.member,
                "witnesses": witnesses,
                "certificates": certificates,
            }))
        }
        Command::Render { file, out } => {
            let inst = load(file)?;
            let (svg, regions) = render(&inst)?;
            std::fs::write(out, svg).or_else(|e| input(format!("cannot write {}: {e}", out.display())))?;
            Ok(json!({ "answer": true, "out": out.display().to_string(), "regions": regions }))
        }
        Command::Gen { omega, sets, size, range } => {
            let cfg = InstanceGenConfig {
                seed: cli.seed,
                omega_size: *omega,
                num_sets: *sets,
                set_size: *size,
                coeff_range: *range,
            };
            let (a, b) = oracle::gen_instance(&cfg)?;
            Ok(serde_json::to_value(instance_file(&a, &b)).expect("serialisable"))
        }
        Command::Selftest { verify: Some(path), .. } => {
            let text = read(path)?;
            let doc: Value = serde_json::from_str(&text).or_else(|e| input(format!("malformed output file: {e}")))?;
            let Some(items) = doc.get("certificates").and_then(Value::as_array) else {
                return input("no certificates array in the file");
            };
            let mut failures = Vec::new();
            for (i, item) in items.iter().enumerate() {
                if let Err(msg) = verify_item(item) {
                    failures.push(format!("certificate {i}: {msg}"));
                }
            }
            Ok(json!({ "answer": failures.is_empty(), "checked": items.len(), "failures": failures }))
        }
        Command::Selftest { verify: None, count } => Ok(selftest(cli.seed, *count)?),
    }
}

fn cone_answer(cert: Option<Certificate>, strict: bool, gens: &ConeGenerators, f: &Gamble) -> Value {
    match cert {
        Some(c) => json!({
            "answer": true,
            "lambdas": strings(&c.lambdas),
            "remainder": gamble_json(&c.remainder),
            "certificates": [cone_item(mode(strict), gens, f, &c)],
        }),
        None => json!({ "answer": false, "certificates": [] }),
    }
}

/// An instance file holding `𝒜` and an in-extension query for `b`.
pub fn instance_file(a: &Assessment, b: &GambleSet) -> InstanceFile {
    let mut names: BTreeMap<Gamble, String> = BTreeMap::new();
    let mut name = |g: &Gamble| {
        let n = names.len();
        names.entry(g.clone()).or_insert_with(|| format!("g{}", n + 1)).clone()
    };
    let assessment = a.sets().iter().map(|s| s.members().iter().map(&mut name).collect()).collect();
    let set = b.members().iter().map(&mut name).collect();
    let gambles = names
        .into_iter()
        .map(|(g, n)| (n, g.values().iter().map(|q| Value::String(format_rational(q))).collect()))
        .collect();
    InstanceFile {
        schema: Some(SCHEMA.into()),
        omega: (1..=a.dim()).map(|i| format!("w{i}")).collect(),
        gambles,
        assessment,
        query: Query { kind: Some("in-extension".into()), set: Some(set), ..Query::default() },
    }
}

#[derive(Deserialize)]
struct ConeEvidence {
    mode: String,
    generators: Vec<Gamble>,
    target: Gamble,
    #[serde(flatten)]
    certificate: Certificate,
}

#[derive(Deserialize)]
struct SequenceEvidenceIn {
    sequence: Vec<Gamble>,
    kind: String,
    f: Option<Gamble>,
    certificate: Option<Certificate>,
}

#[derive(Deserialize)]
struct ExtensionEvidence {
    strict: bool,
    dim: usize,
    set: Vec<Gamble>,
    witness_list: Vec<Vec<Gamble>>,
    sequences: Vec<SequenceEvidenceIn>,
}

/// Re-checks one certificate item by substitution.
pub fn verify_item(item: &Value) -> std::result::Result<(), String> {
    match item.get("kind").and_then(Value::as_str) {
        Some("cone") => {
            let ev: ConeEvidence = serde_json::from_value(item.clone()).map_err(|e| e.to_string())?;
            let dim = ev.target.dim();
            let gens = ConeGenerators::new(dim, ev.generators).map_err(|e| e.to_string())?;
            let ok = match ev.mode.as_str() {
                "posi" => ev.certificate.verify_posi(&gens, &ev.target),
                "desext" => ev.certificate.verify_desext(&gens, &ev.target),
                "strict" => ev.certificate.verify_strict(&gens, &ev.target),
                other => return Err(format!("unknown mode `{other}`")),
            };
            ok.then_some(()).ok_or_else(|| "cone certificate does not validate".into())
        }
        Some("extension") => {
            let ev: ExtensionEvidence = serde_json::from_value(item.clone()).map_err(|e| e.to_string())?;
            let set = |v: Vec<Gamble>| GambleSet::new(ev.dim, v).map_err(|e| e.to_string());
            let b = set(ev.set.clone())?;
            let witness_list = ev.witness_list.iter().map(|v| set(v.clone())).collect::<Result<Vec<_>, _>>()?;
            let mut sequences = Vec::new();
            for s in ev.sequences {
                let outcome = match (s.kind.as_str(), s.f, s.certificate) {
                    ("skip", _, Some(certificate)) => Outcome::Skip { certificate },
                    ("hit", Some(f), Some(certificate)) => Outcome::Hit { f, certificate },
                    (k, _, _) => return Err(format!("sequence evidence of kind `{k}` is incomplete")),
                };
                sequences.push(SequenceEvidence { sequence: s.sequence, outcome });
            }
            let ans = ExtAnswer { member: true, witness_list, sequences };
            let opts = Options { strict: ev.strict, ..Options::default() };
            ans.verify(&b, opts).then_some(()).ok_or_else(|| "extension evidence does not validate".into())
        }
        Some(other) => Err(format!("unknown certificate kind `{other}`")),
        None => Err("certificate without a kind".into()),
    }
}

fn selftest(seed: u64, count: u64) -> CliResult<Value> {
    let mut cone_disagreements = 0u64;
    let mut strict_disagreements = 0u64;
    for i in 0..count {
        let (gens, f) = oracle::gen_cone_query(seed.wrapping_add(i), 4, 4, 3);
        let dim = f.dim();
        let cg = ConeGenerators::new(dim, gens.iter().cloned())?;
        let posi = cones::posi_contains(&cg, &f)?;
        let des = cones::desext_contains(&cg, &f)?;
        let zero = cones::zero_in_desext(&cg)?;
        let strict = cones::desext_contains_strict(&cg, &f)?;
        let agree = posi.is_some() == oracle::fm_posi_contains(&gens, &f)?
            && posi.as_ref().is_none_or(|c| c.verify_posi(&cg, &f))
            && des.is_some() == oracle::fm_desext_contains(&gens, &f)?
            && des.as_ref().is_none_or(|c| c.verify_desext(&cg, &f))
            && zero.is_some() == oracle::fm_zero_in_desext(&gens, dim)?;
        if !agree {
            cone_disagreements += 1;
        }
        if strict.is_some() != oracle::fm_desext_contains_strict(&gens, &f)?
            || strict.as_ref().is_some_and(|c| !c.verify_strict(&cg, &f))
        {
            strict_disagreements += 1;
        }
    }
    let mut brute_disagreements = 0u64;
    let mut formulation_disagreements = 0u64;
    for i in 0..count {
        let cfg = InstanceGenConfig {
            seed: seed.wrapping_add(i),
            omega_size: 2 + (i % 2) as usize,
            num_sets: 3,
            set_size: 2,
            coeff_range: 2,
        };
        let (a, b) = oracle::gen_instance(&cfg)?;
        let engine = ext_contains(&a, &b, Options::default())?.member;
        if oracle::brute_ext_contains(&a, &b, a.len() + 1)? != engine {
            brute_disagreements += 1;
        }
        if !compare_formulations(&a, &b)?.agree() {
            formulation_disagreements += 1;
        }
    }
    let total = cone_disagreements + strict_disagreements + brute_disagreements + formulation_disagreements;
    Ok(json!({
        "answer": total == 0,
        "instances": count,
        "disagreements": {
            "cones": cone_disagreements,
            "strict": strict_disagreements,
            "brute_force": brute_disagreements,
            "formulations": formulation_disagreements,
        },
    }))
}

/// Directions of `gens` and the indicators, sorted counterclockwise from
/// the positive first axis, with repeated directions merged.
fn directions(gens: &[Gamble]) -> Vec<(Rational, Rational)> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::zero();
    let mut dirs: Vec<(Rational, Rational)> = gens
        .iter()
        .map(|g| (g.values()[0].clone(), g.values()[1].clone()))
        .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
        .chain([(one.clone(), zero.clone()), (zero, one)])
        .collect();
    let half = |(x, y): &(Rational, Rational)| u8::from(!(y.is_positive() || (y.is_zero() && x.is_positive())));
    let cross = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.1 - &a.1 * &b.0;
    dirs.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| Rational::zero().cmp(&cross(a, b))));
    dirs.dedup_by(|a, b| half(a) == half(b) && cross(a, b).is_zero());
    dirs
}

/// Shape of `posi(gens ∪ G⪈0)` in the plane, with the boundary angles of a
/// sector or half-plane (counterclockwise from `start` to `end`).
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Plane,
    HalfPlane { start: f64, end: f64 },
    Sector { start: f64, end: f64 },
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Plane => "plane",
            Region::HalfPlane { .. } => "half-plane",
            Region::Sector { .. } => "sector",
        }
    }
}

pub fn region(gens: &[Gamble]) -> Region {
    let dirs = directions(gens);
    let angle = |(x, y): &(Rational, Rational)| y.to_f64().unwrap_or(0.0).atan2(x.to_f64().unwrap_or(0.0));
    let n = dirs.len();
    for i in 0..n {
        // The gap runs counterclockwise from dirs[i] to dirs[i + 1].
        let (u, v) = (&dirs[i], &dirs[(i + 1) % n]);
        let cross = &u.0 * &v.1 - &u.1 * &v.0;
        let dot = &u.0 * &v.0 + &u.1 * &v.1;
        let (start, mut end) = (angle(v), angle(u));
        while end <= start {
            end += std::f64::consts::TAU;
        }
        if cross.is_negative() {
            return Region::Sector { start, end };
        }
        if cross.is_zero() && dot.is_negative() {
            return Region::HalfPlane { start, end };
        }
    }
    Region::Plane
}

fn render(inst: &Instance) -> CliResult<(String, Vec<Value>)> {
    if inst.dim() != 2 {
        return input(format!("render needs exactly two atoms, got {}", inst.dim()));
    }
    let sequences: Vec<Vec<String>> = match (&inst.query.sequences, &inst.query.generators) {
        (Some(s), _) => s.clone(),
        (None, Some(g)) => vec![g.clone()],
        (None, None) => vec![vec![]],
    };
    let mut resolved = Vec::new();
    for names in &sequences {
        let gens = names.iter().map(|n| inst.gamble(n).cloned()).collect::<crate::Result<Vec<_>>>()?;
        resolved.push((names, gens));
    }
    let extent =
        inst.gambles.values().flat_map(|g| g.values()).map(|q| q.abs().to_f64().unwrap_or(0.0)).fold(1.0_f64, f64::max)
            * 1.25;
    let far = extent * 4.0;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="480" height="480" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
        -extent,
        -extent,
        2.0 * extent,
        2.0 * extent
    );
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="frame"><rect x="{0:.4}" y="{0:.4}" width="{1:.4}" height="{1:.4}"/></clipPath></defs>"#,
        -extent,
        2.0 * extent
    );
    let stroke = extent / 200.0;
    let _ = writeln!(svg, r#"<g transform="scale(1,-1)" clip-path="url(#frame)">"#);
    let palette = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"];
    let mut regions = Vec::new();
    for (i, (names, gens)) in resolved.iter().enumerate() {
        let colour = palette[i % palette.len()];
        let r = region(gens);
        match &r {
            Region::Plane => {
                let _ = writeln!(
                    svg,
                    r#"<rect x="{0:.4}" y="{0:.4}" width="{1:.4}" height="{1:.4}" fill="{colour}" fill-opacity="0.2"/>"#,
                    -far,
                    2.0 * far
                );
            }
            Region::HalfPlane { start, end } | Region::Sector { start, end } => {
                let steps = 48;
                let mut pts = vec!["0.0000,0.0000".to_string()];
                for k in 0..=steps {
                    let t = start + (end - start) * f64::from(k) / f64::from(steps);
                    pts.push(format!("{:.4},{:.4}", far * t.cos(), far * t.sin()));
                }
                let _ = writeln!(
                    svg,
                    r#"<polygon points="{}" fill="{colour}" fill-opacity="0.2" stroke="{colour}" stroke-width="{stroke:.4}"/>"#,
                    pts.join(" ")
                );
            }
        }
        regions.push(json!({ "sequence": names, "region": r.name() }));
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{0:.4}" y1="0" x2="{1:.4}" y2="0" stroke="black" stroke-width="{2:.4}"/>"#,
        -extent, extent, stroke
    );
    let _ = writeln!(
        svg,
        r#"<line x1="0" y1="{0:.4}" x2="0" y2="{1:.4}" stroke="black" stroke-width="{2:.4}"/>"#,
        -extent, extent, stroke
    );
    let mut points: Vec<&Gamble> = resolved.iter().flat_map(|(_, g)| g.iter()).collect();
    points.sort();
    points.dedup();
    for g in &points {
        let (x, y) = (g.values()[0].to_f64().unwrap_or(0.0), g.values()[1].to_f64().unwrap_or(0.0));
        let _ = writeln!(svg, r#"<circle cx="{x:.4}" cy="{y:.4}" r="{:.4}" fill="black"/>"#, extent / 60.0);
    }
    let _ = writeln!(svg, "</g>");
    for g in &points {
        let (x, y) = (g.values()[0].to_f64().unwrap_or(0.0), g.values()[1].to_f64().unwrap_or(0.0));
        let label = inst.name_of(g).unwrap_or("");
        let _ = writeln!(
            svg,
            r#"<text x="{:.4}" y="{:.4}" font-size="{:.4}" font-family="sans-serif">{}</text>"#,
            x + extent / 40.0,
            -y - extent / 40.0,
            extent / 14.0,
            escape(label)
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok((svg, regions))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Runs one command line (including the program name) and captures its
/// output.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => Output { code: 0, stdout: format!("{v}\n"), stderr: String::new() },
        Err(Failure::Input(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Inconsistent(msg)) => {
            Output { code: 2, stdout: String::new(), stderr: format!("inconsistent: {msg}\n") }
        }
    }
}

pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
