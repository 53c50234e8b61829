//! Command-line front end. Exit codes: 0 all checks pass, 1 a mathematical check
//! failed or an engine error occurred, 2 usage or configuration error.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use flopalg::derived::{
    act, classify_spherical, parse_shadow, reduce, shadow_reduce, CObject, Category, DerivedError, GroupoidWord,
    ReductionTrace, Shadow, ShadowReduction,
};
use flopalg::fdrep::{
    ar_quiver, bricks, build, hom_table, lambda_con, orthogonality_report, Family, FDAlgebra, NODE_CAP,
};
use flopalg::nccr::{default_max_degree, lambda_n};
use flopalg::Field;

/// Largest Adams degree the graded engine is asked to reach.
const MAX_ADAMS: usize = 64;
const MAX_K: usize = 12;

#[derive(Parser)]
#[command(name = "flopalg", version, about = "Contraction algebras, NCCR checks and spherical-object classification")]
struct Cli {
    /// Field: `q` or `p:PRIME`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "lambda_con", alias = "lambda-con")]
    LambdaCon,
    #[value(name = "gamma_con", alias = "gamma-con")]
    GammaCon,
    Truncated,
}

impl Which {
    fn family(self) -> Family {
        match self {
            Which::LambdaCon => Family::LambdaCon,
            Which::GammaCon => Family::GammaCon,
            Which::Truncated => Family::TwoCycle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Algebra constructions.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Hom dimensions between the six named modules.
    Homtable {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Which::LambdaCon)]
        which: Which,
    },
    /// Auslander-Reiten quiver by knitting.
    Ar {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Which::LambdaCon)]
        which: Which,
        /// Emit Graphviz DOT (same as `--output dot`).
        #[arg(long)]
        dot: bool,
    },
    /// Modules with one-dimensional endomorphism ring.
    Bricks {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Which::LambdaCon)]
        which: Which,
    },
    /// Hom-orthogonal sets are filtered by one simple on one side.
    Orthogonality {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Which::LambdaCon)]
        which: Which,
    },
    /// Resolutions and higher-product identities over the NCCR.
    Nccr {
        #[command(subcommand)]
        cmd: NccrCmd,
    },
    /// Reduce a word image to a simple and a normal form.
    Classify {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Letters such as `P1 P2^-1 [1] a^2`, applied left to right.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value = "S2")]
        seed_object: String,
    },
    /// Run the length reduction on an object read from a JSON file.
    Reduce {
        #[arg(long)]
        input: String,
        /// Cohomology-only reduction, for k > 1.
        #[arg(long)]
        shadow: bool,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Dimension, basis and relations.
    Info {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum NccrCmd {
    /// Resolution exactness and the higher-product identities.
    Verify {
        #[arg(long)]
        n: usize,
        /// Highest Adams degree for the exactness check (default 4n+8).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Ext dimensions of the sum of the two simples, by cohomological degree.
    ExtHilbert {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<DerivedError> for Failure {
    fn from(e: DerivedError) -> Failure {
        Failure::Math(e.to_string())
    }
}

macro_rules! engine {
    ($e:expr) => {
        $e.map_err(|e| Failure::Math(e.to_string()))?
    };
}

/// What a command prints and whether its checks passed.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    passed: bool,
}

impl Report {
    fn new(text: String, json: Value, passed: bool) -> Report {
        Report {
            text,
            json,
            dot: None,
            passed,
        }
    }
}

fn check_k(k: usize) -> Result<(), Failure> {
    if k == 0 || k > MAX_K {
        return Err(Failure::Usage(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    Ok(())
}

fn algebra(which: Which, k: usize, f: Field) -> Result<FDAlgebra, Failure> {
    check_k(k)?;
    Ok(engine!(build(which.family(), k, f)))
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn algebra_info(which: Which, k: usize, f: Field) -> Result<Report, Failure> {
    let a = algebra(which, k, f)?;
    let expected = match which {
        Which::LambdaCon | Which::Truncated => 2 + 4 * k,
        Which::GammaCon => k + 5,
    };
    let dim = a.dim();
    let mut checks = vec![("dimension formula".to_string(), dim == expected)];
    if let Which::Truncated = which {
        let l = engine!(lambda_con(k, f));
        let same = engine!(a.structure_constants()) == engine!(l.structure_constants());
        checks.push(("matches lambda_con".to_string(), same));
    }
    let basis = a.basis_labels();
    let relations = a.graded().presentation().to_text();
    let mut text = format!("algebra: {} over {f}\ndimension: {dim} (expected {expected})\n", a.name);
    let _ = writeln!(text, "basis: {}", basis.join(", "));
    let _ = writeln!(text, "cartan: {:?}", a.cartan());
    let _ = writeln!(text, "presentation:\n{}", relations.trim_end());
    if let Which::Truncated = which {
        let _ = writeln!(text, "matches lambda_con: {}", checks[1].1);
    }
    for (name, ok) in &checks {
        let _ = writeln!(text, "check {name}: {}", pass(*ok));
    }
    let passed = checks.iter().all(|c| c.1);
    let json = json!({
        "algebra": a.name, "field": f.to_string(), "dimension": dim, "expected": expected,
        "basis": basis, "cartan": a.cartan(), "presentation": relations,
        "checks": checks.iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(Report::new(text, json, passed))
}

fn homtable(which: Which, k: usize, f: Field) -> Result<Report, Failure> {
    let a = algebra(which, k, f)?;
    let t = engine!(hom_table(&a));
    let json = json!({"algebra": a.name, "labels": t.labels, "dims": t.dims});
    Ok(Report::new(t.to_text(), json, true))
}

fn ar(which: Which, k: usize, f: Field) -> Result<Report, Failure> {
    let a = algebra(which, k, f)?;
    let q = engine!(ar_quiver(&a, NODE_CAP));
    let mut text = format!("{}: {} indecomposables\n", a.name, q.len());
    for (i, n) in q.nodes.iter().enumerate() {
        let tau = q.tau[i].map(|t| format!(" tau -> {t}")).unwrap_or_default();
        let p = if q.projective[i] { " projective" } else { "" };
        let _ = writeln!(text, "  {i}: {n}{p}{tau}");
    }
    for (s, t, m) in &q.arrows {
        let _ = writeln!(text, "  {s} -> {t} x{m}");
    }
    let ok = q.mesh_ok() && q.tau_is_bijective();
    let _ = writeln!(text, "mesh relations: {}", pass(ok));
    let json = json!({
        "algebra": a.name,
        "nodes": q.nodes.iter().map(|n| n.dims.clone()).collect::<Vec<_>>(),
        "projective": q.projective, "arrows": q.arrows, "tau": q.tau, "mesh_ok": ok,
    });
    let mut r = Report::new(text, json, ok);
    r.dot = Some(q.to_dot(&a.name));
    Ok(r)
}

fn bricks_cmd(which: Which, k: usize, f: Field) -> Result<Report, Failure> {
    let a = algebra(which, k, f)?;
    let bs = engine!(bricks(&a));
    let mut text = format!("{}: {} bricks\n", a.name, bs.len());
    for b in &bs {
        let _ = writeln!(text, "  {b}");
    }
    let json = json!({"algebra": a.name, "bricks": bs.iter().map(|b| b.dims.clone()).collect::<Vec<_>>()});
    Ok(Report::new(text, json, true))
}

fn orthogonality(which: Which, k: usize, f: Field) -> Result<Report, Failure> {
    let a = algebra(which, k, f)?;
    let r = engine!(orthogonality_report(&a));
    let mut text = format!(
        "{}: {} indecomposables, {} pairs checked: {}\n",
        r.algebra,
        r.indecomposables,
        r.pairs_checked,
        pass(r.passed)
    );
    if let Some((x, y)) = &r.counterexample {
        let _ = writeln!(text, "counterexample: {x:?} vs {y:?}");
    }
    Ok(Report::new(text, json!(r), r.passed))
}

fn nccr_verify(n: usize, degree: Option<usize>, f: Field) -> Result<Report, Failure> {
    let up_to = degree.unwrap_or(4 * n + 8);
    let max_degree = default_max_degree(n).max(up_to + 2);
    if max_degree > MAX_ADAMS {
        return Err(Failure::Usage(format!(
            "degree budget exceeded: Adams degree {up_to} needs {max_degree} > {MAX_ADAMS}"
        )));
    }
    let lam = engine!(lambda_n(n, f, max_degree));
    let mut text = String::new();
    let mut passed = true;
    let mut resolutions = Vec::new();
    for i in 1..=2 {
        let c = engine!(lam.simple_resolution(i));
        let r = engine!(lam.verify_resolution(&c, up_to));
        passed &= r.passed;
        let _ = writeln!(text, "resolution of S{i} (n = {n}, Adams <= {up_to}): {}", pass(r.passed));
        resolutions.push(r);
    }
    let massey = if n >= 1 {
        let m = engine!(lam.verify_massey_prep());
        for c in &m.checks {
            let _ = writeln!(text, "{}: {} ({})", c.name, pass(c.passed), c.detail);
        }
        passed &= m.passed;
        Some(m)
    } else {
        let _ = writeln!(text, "n = 0: resolution checks only");
        None
    };
    let _ = writeln!(text, "overall: {}", pass(passed));
    let json = json!({"n": n, "field": f.to_string(), "resolutions": resolutions, "massey": massey, "passed": passed});
    Ok(Report::new(text, json, passed))
}

fn ext_hilbert(n: usize, f: Field) -> Result<Report, Failure> {
    let lam = engine!(lambda_n(n, f, default_max_degree(n)));
    let h = engine!(lam.ext_hilbert());
    let line: Vec<String> = h.coefficients.iter().map(|c| c.to_string()).collect();
    let passed = h.coefficients.len() == 4;
    Ok(Report::new(format!("{}\n", line.join(" ")), json!(h), passed))
}

fn word_json(w: &GroupoidWord) -> Value {
    json!({"letters": w.to_string(), "pure_braid": w.pure_braid(), "closes": w.closes()})
}

fn word_text(w: &GroupoidWord) -> String {
    match w.pure_braid() {
        Some(p) => format!("{w}  (pure braid: {p})"),
        None => format!("{w}  (does not close at the base chamber)"),
    }
}

fn trace_text(t: &ReductionTrace) -> String {
    let mut out = String::new();
    for (n, s) in t.steps.iter().enumerate() {
        let letters: Vec<String> = s.letters.iter().map(|l| l.to_string()).collect();
        let simple = s.simple.map(|i| format!(" S{i}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "  {}: end {}{simple}, {}, ell {} -> {}, dims {:?}",
            n + 1,
            s.end,
            letters.join(" "),
            s.ell_before,
            s.ell_after,
            s.dims
        );
    }
    if t.steps.is_empty() {
        out.push_str("  (none)\n");
    }
    if !t.precondition_checked {
        out.push_str("  (negative self-Ext check skipped: object too large)\n");
    }
    out
}

fn category(f: Field, k: usize) -> Result<Category, Failure> {
    if k != 1 {
        return Err(Failure::Usage(format!(
            "chain-level functors need k = 1 (got k = {k}); use `reduce --shadow` for k > 1"
        )));
    }
    Ok(Category::new(f)?)
}

fn coh_text(c: &Category, x: &CObject) -> Result<String, Failure> {
    let parts: Vec<String> = c
        .cohomology_labels(x)?
        .into_iter()
        .map(|(n, l)| format!("H^{n} = {}", l.join(" + ")))
        .collect();
    Ok(if parts.is_empty() { "0".into() } else { parts.join(", ") })
}

fn classify(c: &Category, x: &CObject, input: &str) -> Result<Report, Failure> {
    let k = classify_spherical(c, x)?;
    let target = c.module(&k.simple)?.shift(k.shift);
    let round_trip = c.equivalent(&act(c, &k.simple_word, x)?, &target)?;
    let normal = c.module(&k.normal_form)?.shift(k.shift);
    let normal_ok = c.equivalent(&act(c, &k.normal_word, x)?, &normal)?;
    let passed = round_trip && normal_ok;
    let mut text = format!("input: {input}\ncohomology: {}\n", coh_text(c, x)?);
    let _ = writeln!(text, "normal form: {}[{}]", k.normal_form, k.shift);
    let _ = writeln!(text, "word to normal form: {}", word_text(&k.normal_word));
    let _ = writeln!(text, "simple: {}[{}]", k.simple, k.shift);
    let _ = writeln!(text, "word to simple: {}", word_text(&k.simple_word));
    let _ = writeln!(text, "trace:\n{}", trace_text(&k.trace).trim_end());
    let _ = writeln!(text, "round trip: {}", pass(passed));
    let json = json!({
        "input": input, "cohomology": c.cohomology_labels(x)?,
        "normal_form": k.normal_form, "simple": k.simple, "shift": k.shift,
        "normal_word": word_json(&k.normal_word), "simple_word": word_json(&k.simple_word),
        "trace": k.trace, "round_trip": passed,
    });
    Ok(Report::new(text, json, passed))
}

fn classify_cmd(k: usize, word: &str, seed: &str, f: Field) -> Result<Report, Failure> {
    let c = category(f, k)?;
    let w = GroupoidWord::parse(word).map_err(|e| Failure::Usage(e.to_string()))?;
    let start = c.module(seed).map_err(|e| Failure::Usage(e.to_string()))?;
    let x = act(&c, &w, &start)?;
    classify(&c, &x, &format!("{w} applied to {seed}"))
}

/// One summand `act(word, module)[shift]` of a chain-level input.
#[derive(Serialize)]
struct Summand {
    module: String,
    word: String,
    shift: i64,
}

fn parse_object(c: &Category, v: &Value) -> Result<(CObject, Vec<Summand>), Failure> {
    let items = match v {
        Value::Array(a) => a.clone(),
        Value::Object(_) => vec![v.clone()],
        _ => return Err(Failure::Usage("input must be an object or a list of summands".into())),
    };
    let mut x = CObject::zero(c.field);
    let mut parts = Vec::new();
    for it in items {
        let module = it["module"]
            .as_str()
            .ok_or_else(|| Failure::Usage("summand needs a \"module\" name".into()))?
            .to_string();
        let word = it["word"].as_str().unwrap_or("").to_string();
        let shift = it["shift"].as_i64().unwrap_or(0);
        let w = GroupoidWord::parse(&word).map_err(|e| Failure::Usage(e.to_string()))?;
        let m = c.module(&module).map_err(|e| Failure::Usage(e.to_string()))?;
        x = x.direct_sum(&act(c, &w, &m)?.shift(shift));
        parts.push(Summand { module, word, shift });
    }
    Ok((c.minimalize(&x)?, parts))
}

/// Shadow input: `[[degree, [label | [label, multiplicity], ...]], ...]`, or the
/// compact string form `0:S1,S1;1:S2`.
fn parse_shadow_json(v: &Value) -> Result<Shadow, Failure> {
    if let Some(s) = v.as_str() {
        return parse_shadow(s).map_err(Failure::Usage);
    }
    let bad = || Failure::Usage("shadow must be a list of [degree, [labels]]".into());
    let mut out = Shadow::new();
    for entry in v.as_array().ok_or_else(bad)? {
        let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        let deg = pair[0].as_i64().ok_or_else(bad)?;
        let slot = out.entry(deg).or_default();
        for m in pair[1].as_array().ok_or_else(bad)? {
            match m {
                Value::String(s) => slot.push(s.clone()),
                Value::Array(p) if p.len() == 2 => {
                    let label = p[0].as_str().ok_or_else(bad)?;
                    let count = p[1].as_u64().ok_or_else(bad)?;
                    slot.extend(std::iter::repeat(label.to_string()).take(count as usize));
                }
                _ => return Err(bad()),
            }
        }
    }
    out.retain(|_, v| !v.is_empty());
    Ok(out)
}

fn shadow_text(x: &Shadow) -> String {
    let parts: Vec<String> = x.iter().map(|(n, l)| format!("H^{n} = {}", l.join(" + "))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn shadow_report(r: &ShadowReduction) -> Report {
    let mut text = format!("k = {}\nstatus: {:?}\n", r.k, r.status);
    let _ = writeln!(text, "word: {}", word_text(&r.word));
    let _ = writeln!(text, "terminal: {}", shadow_text(&r.terminal));
    for (n, s) in r.steps.iter().enumerate() {
        let _ = writeln!(
            text,
            "  {}: end {}, {}, chamber type {}, ell {} -> {}, {}",
            n + 1,
            s.end,
            s.letter,
            s.chamber_type,
            s.ell_before,
            s.ell_after,
            shadow_text(&s.cohomology)
        );
        for a in &s.ambiguous {
            let _ = writeln!(
                text,
                "     AMBIGUOUS H^{}: split bound {} | extension of {} by {}",
                a.degree,
                a.split.join(" + "),
                a.quotient.join(" + "),
                a.sub.join(" + ")
            );
        }
    }
    // the shadow reports, it does not decide; only a length increase is a failure
    let passed = r.steps.iter().filter(|s| s.end != "brick").all(|s| s.ell_after < s.ell_before);
    Report::new(text, json!(r), passed)
}

fn reduce_cmd(input: &str, shadow: bool, k: usize, f: Field) -> Result<Report, Failure> {
    let raw = fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
    if shadow {
        check_k(k)?;
        return Ok(shadow_report(&shadow_reduce(k, &parse_shadow_json(&v)?)));
    }
    let c = category(f, k)?;
    let (x, parts) = parse_object(&c, &v)?;
    let r = reduce(&c, &x)?;
    let back = act(&c, &r.word.inverse(), &CObject::from_rep_in(c.field, &r.terminal, r.degree))?;
    let round_trip = c.equivalent(&back, &x)?;
    let mut text = format!("cohomology: {}\n", coh_text(&c, &x)?);
    let _ = writeln!(text, "terminal: {}[{}]", r.labels.join(" + "), -r.degree);
    let _ = writeln!(text, "word: {}", word_text(&r.word));
    let _ = writeln!(text, "trace:\n{}", trace_text(&r.trace).trim_end());
    let _ = writeln!(text, "round trip: {}", pass(round_trip));
    let json = json!({
        "input": parts, "terminal": r.labels, "terminal_degree": r.degree,
        "word": word_json(&r.word), "trace": r.trace, "round_trip": round_trip,
    });
    Ok(Report::new(text, json, round_trip))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let f = Field::parse(&cli.field).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Algebra {
            cmd: AlgebraCmd::Info { which, k },
        } => algebra_info(*which, *k, f),
        Command::Homtable { k, which } => homtable(*which, *k, f),
        Command::Ar { k, which, .. } => ar(*which, *k, f),
        Command::Bricks { k, which } => bricks_cmd(*which, *k, f),
        Command::Orthogonality { k, which } => orthogonality(*which, *k, f),
        Command::Nccr {
            cmd: NccrCmd::Verify { n, degree },
        } => nccr_verify(*n, *degree, f),
        Command::Nccr {
            cmd: NccrCmd::ExtHilbert { n },
        } => ext_hilbert(*n, f),
        Command::Classify { k, word, seed_object } => classify_cmd(*k, word, seed_object, f),
        Command::Reduce { input, shadow, k } => reduce_cmd(input, *shadow, *k, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let want_dot = cli.output == Format::Dot || matches!(cli.command, Command::Ar { dot: true, .. });
    match run(&cli) {
        Ok(r) => {
            if want_dot {
                match &r.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(2);
                    }
                }
            } else if cli.output == Format::Json {
                println!("{}", serde_json::to_string_pretty(&r.json).unwrap_or_default());
            } else {
                print!("{}", r.text);
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
