use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use harmcodes::analysis::{
    code_params, design_strength, optimality_check, venkov_check, venkov_defect_f64,
    MAX_DESIGN_DEGREE,
};
use harmcodes::configurations::{
    by_name, is_heavy, load_float, normalized_gram, parse_configuration, read_gram, save,
    save_float, save_gram, CONFIG_HEADER, FLOAT_HEADER, GRAM_HEADER,
};
use harmcodes::embedding::{antipodal_halve, embed_coords, embed_half};
use harmcodes::search::{enumerate_with, write_csv, write_json};
use harmcodes::{Error, GramMatrix, PointConfiguration, QuadScalar};
use serde_json::{json, Map, Value};

use crate::manifest::Run;
use crate::{summary, Format};

pub const REPORT_SCHEMA: &str = "harmcodes-check v1";

/// Inputs above this size need `--heavy` for Gram-level work.
const HEAVY_POINTS: usize = 10_000;

#[derive(Debug)]
pub enum Failure {
    Verify(String),
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verify(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_io_or_parse() => Failure::Io(e.to_string()),
            Error::Invariant(_) => Failure::Io(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn heavy_gate(n: usize, heavy: bool) -> Result<(), Failure> {
    let pairs = (n as f64) * (n as f64);
    if n > HEAVY_POINTS {
        if !heavy {
            return Err(Failure::Usage(format!(
                "{n} points means {pairs:.2e} pair terms and a {:.1} GB Gram index; rerun with --heavy",
                pairs * 4.0 / 1e9
            )));
        }
        eprintln!(
            "projected cost: {pairs:.2e} pair terms, {:.1} GB Gram index",
            pairs * 4.0 / 1e9
        );
    }
    Ok(())
}

fn default_config_path(name: &str) -> PathBuf {
    let stem: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    PathBuf::from(format!("{stem}.cfg"))
}

pub fn construct(
    run: &mut Run,
    name: &str,
    out: Option<PathBuf>,
    heavy: bool,
) -> Result<(), Failure> {
    run.command("construct");
    run.param("name", name);
    run.param("heavy", heavy);
    if is_heavy(name) {
        if !heavy {
            return Err(Failure::Usage(format!(
                "{name} is built from the 196560 Leech lattice minimal vectors; rerun with --heavy"
            )));
        }
        eprintln!("projected cost: 196560 vectors in dimension 24 (about 80 MB), one linear scan per anchor");
    }
    let x = run.phase("construct", || by_name(name))?;
    let (ips, note) = run.phase("inner products", || -> Result<_, Failure> {
        if x.len() <= HEAVY_POINTS {
            Ok((normalized_gram(&x)?.off_diagonal_values(), ""))
        } else {
            Ok((x.ip_values_from(0), " (from point 0)"))
        }
    })?;
    let path = out.unwrap_or_else(|| default_config_path(name));
    run.phase("write", || save(&x, &path))?;
    run.param("out", path.display());
    run.output(&path);
    println!(
        "n={} N={} ips={}{note}",
        x.d() + 1,
        x.len(),
        summary::ip_set(&ips)
    );
    Ok(())
}

pub struct Checks {
    pub design_strength: Option<usize>,
    pub venkov: bool,
    pub code_params: bool,
    pub expect: Vec<String>,
}

const EXPECT_KEYS: [&str; 8] = [
    "size",
    "dim",
    "a",
    "antipodal",
    "ips",
    "design3",
    "defect",
    "strength",
];

fn parse_expectations(items: &[String]) -> Result<Vec<(String, String)>, Failure> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("--expect takes KEY=VALUE, got {item:?}")))?;
            let k = k.trim();
            if !EXPECT_KEYS.contains(&k) {
                return Err(Failure::Usage(format!(
                    "unknown --expect key {k:?}; known keys: {}",
                    EXPECT_KEYS.join(", ")
                )));
            }
            Ok((k.to_string(), v.trim().to_string()))
        })
        .collect()
}

enum Input {
    Exact {
        name: String,
        d: usize,
        gram: GramMatrix,
    },
    Float {
        name: String,
        d: usize,
        points: Vec<Vec<f64>>,
    },
}

fn read_input(path: &Path, heavy: bool) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(io_failure(path))?;
    match text.lines().next().map(str::trim) {
        Some(CONFIG_HEADER) => {
            let x = parse_configuration(&text)?;
            heavy_gate(x.len(), heavy)?;
            Ok(Input::Exact {
                name: x.name().to_string(),
                d: x.d(),
                gram: normalized_gram(&x)?,
            })
        }
        Some(GRAM_HEADER) => {
            let (name, gram) = read_gram(text.as_bytes())?;
            Ok(Input::Exact {
                name,
                d: gram.d(),
                gram,
            })
        }
        Some(FLOAT_HEADER) => {
            let f = load_float(path)?;
            Ok(Input::Float {
                name: f.name,
                d: f.d,
                points: f.points,
            })
        }
        _ => Err(Failure::Io(format!(
            "{}: unrecognized header",
            path.display()
        ))),
    }
}

fn matches(key: &str, expected: &str, actual: &str) -> bool {
    match key {
        "a" | "defect" => match expected.parse::<QuadScalar>() {
            Ok(e) => actual.parse::<QuadScalar>().is_ok_and(|a| a == e),
            Err(_) => false,
        },
        _ => expected.eq_ignore_ascii_case(actual),
    }
}

pub fn check(run: &mut Run, input: &Path, checks: Checks, heavy: bool) -> Result<(), Failure> {
    run.command("check");
    run.param("input", input.display());
    run.param("heavy", heavy);
    if let Some(t) = checks.design_strength {
        run.param("design_strength", t);
        if !(1..=MAX_DESIGN_DEGREE).contains(&t) {
            return Err(Failure::Usage(format!(
                "--design-strength must be in 1..={MAX_DESIGN_DEGREE}"
            )));
        }
    }
    run.param("venkov", checks.venkov);
    run.param("code_params", checks.code_params);
    let expect = parse_expectations(&checks.expect)?;
    for (k, v) in &expect {
        run.param(&format!("expect.{k}"), v);
    }
    let wants = |keys: &[&str]| expect.iter().any(|(k, _)| keys.contains(&k.as_str()));
    let want_params = checks.code_params || wants(&["a", "antipodal", "ips"]);
    let want_venkov = checks.venkov || wants(&["design3", "defect"]);
    let want_design = checks.design_strength.is_some() || wants(&["strength"]);
    let want_params = want_params || !(want_venkov || want_design);

    let loaded = run.phase("load", || read_input(input, heavy))?;
    let mut report = Map::new();
    report.insert("schema".into(), json!(REPORT_SCHEMA));
    report.insert("input".into(), json!(input.display().to_string()));
    let mut actual: Vec<(&str, String)> = Vec::new();

    match &loaded {
        Input::Exact { name, d, gram } => {
            let d = *d;
            report.insert("kind".into(), json!("exact"));
            report.insert("name".into(), json!(name));
            report.insert("d".into(), json!(d));
            report.insert("size".into(), json!(gram.size()));
            actual.push(("size", gram.size().to_string()));
            actual.push(("dim", (d + 1).to_string()));
            if want_params {
                let p = run.phase("code parameters", || code_params(gram))?;
                actual.push(("a", p.a.as_ref().map_or("none".into(), ToString::to_string)));
                actual.push(("antipodal", p.antipodal.to_string()));
                actual.push(("ips", summary::ip_set(&p.ip_set)));
                let mut v = serde_json::to_value(&p).map_err(|e| Failure::Io(e.to_string()))?;
                v["ip_summary"] = json!(summary::ip_set(&p.ip_set));
                report.insert("code_params".into(), v);
            }
            if want_venkov {
                let v = run.phase("venkov", || venkov_check(gram, d));
                actual.push(("design3", v.design3.to_string()));
                actual.push(("defect", v.defect.to_string()));
                report.insert(
                    "venkov".into(),
                    serde_json::to_value(&v).map_err(|e| Failure::Io(e.to_string()))?,
                );
            }
            if want_design {
                let t = checks.design_strength.unwrap_or(MAX_DESIGN_DEGREE);
                let r = run.phase("design strength", || design_strength(gram, d, t))?;
                actual.push(("strength", r.strength.to_string()));
                report.insert(
                    "design".into(),
                    serde_json::to_value(&r).map_err(|e| Failure::Io(e.to_string()))?,
                );
            }
        }
        Input::Float { name, d, points } => {
            if want_params || want_design {
                return Err(Failure::Usage("float inputs support --venkov only".into()));
            }
            let defect = run.phase("venkov", || venkov_defect_f64(points));
            let design3 = defect.abs() <= 1e-9;
            report.insert("kind".into(), json!("float"));
            report.insert("name".into(), json!(name));
            report.insert("d".into(), json!(d));
            report.insert("size".into(), json!(points.len()));
            report.insert(
                "venkov".into(),
                json!({ "defect": defect, "tolerance": 1e-9, "design3": design3 }),
            );
            actual.push(("size", points.len().to_string()));
            actual.push(("dim", (d + 1).to_string()));
            actual.push(("design3", design3.to_string()));
        }
    }

    let mut failed = 0;
    let mut results = Vec::new();
    for (key, expected) in &expect {
        let got = actual
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone());
        let ok = got.as_deref().is_some_and(|g| matches(key, expected, g));
        failed += usize::from(!ok);
        results.push(json!({ "key": key, "expected": expected, "actual": got, "ok": ok }));
    }
    report.insert("expectations".into(), Value::Array(results));
    report.insert("ok".into(), json!(failed == 0));
    let text = serde_json::to_string_pretty(&Value::Object(report))
        .map_err(|e| Failure::Io(e.to_string()))?;
    println!("{text}");
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} expectation(s) not met")));
    }
    Ok(())
}

fn sibling(input: &Path, suffix: &str) -> PathBuf {
    input.with_extension(suffix)
}

pub fn embed(
    run: &mut Run,
    input: &Path,
    out: Option<PathBuf>,
    coords: bool,
    coords_out: Option<PathBuf>,
    heavy: bool,
) -> Result<(), Failure> {
    run.command("embed");
    run.param("input", input.display());
    run.param("coords", coords);
    run.param("heavy", heavy);
    let text = std::fs::read_to_string(input).map_err(io_failure(input))?;
    let x: PointConfiguration = run.phase("load", || parse_configuration(&text))?;
    heavy_gate(x.len(), heavy)?;
    let half = if x.is_antipodal() {
        antipodal_halve(&x)?
    } else {
        x.clone()
    };
    let code = run.phase("embed", || embed_half(&half))?;
    let (params, venkov) = run.phase("verify", || -> Result<_, Failure> {
        Ok((
            code_params(&code.gram)?,
            venkov_check(&code.gram, code.dim - 1),
        ))
    })?;
    let half_ips = normalized_gram(&half)?.off_diagonal_values();
    let verdict = run.phase("optimality", || {
        optimality_check(half.d(), half.len(), &half_ips)
    })?;

    let gram_path = out.unwrap_or_else(|| sibling(input, "embedded.gram"));
    let label = format!("{} embedded", x.name());
    run.phase("write gram", || save_gram(&label, &code.gram, &gram_path))?;
    run.param("out", gram_path.display());
    run.output(&gram_path);
    if coords {
        let rows = run.phase("coordinates", || embed_coords(&x))?;
        let path = coords_out.unwrap_or_else(|| sibling(input, "embedded.coords"));
        run.phase("write coordinates", || {
            save_float(&label, code.dim - 1, &rows, &path)
        })?;
        run.param("coords_out", path.display());
        run.output(&path);
    }
    let a = params.a.as_ref().map_or("-".into(), ToString::to_string);
    println!(
        "({},{},{a}) optimal={} design3={}",
        code.dim,
        code.size(),
        verdict.optimal,
        venkov.design3
    );
    eprintln!("levels={}", summary::ip_set(&params.abs_ip_set));
    Ok(())
}

pub fn search(
    run: &mut Run,
    dmax: usize,
    mmax: u64,
    format: Format,
    out: Option<PathBuf>,
    keep_fisher_failures: bool,
) -> Result<(), Failure> {
    run.command("search");
    run.param("dmax", dmax);
    run.param("mmax", mmax);
    run.param("format", if format == Format::Csv { "csv" } else { "json" });
    run.param("keep_fisher_failures", keep_fisher_failures);
    let rows = run.phase("enumerate", || {
        enumerate_with(dmax, mmax, keep_fisher_failures)
    })?;
    let emit = |w: &mut dyn Write| match format {
        Format::Csv => write_csv(&rows, w),
        Format::Json => write_json(&rows, w),
    };
    match &out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(io_failure(path))?);
            run.phase("write", || emit(&mut w))?;
            w.flush().map_err(io_failure(path))?;
            run.param("out", path.display());
            run.output(path);
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run.phase("write", || emit(&mut lock))?;
        }
    }
    Ok(())
}
