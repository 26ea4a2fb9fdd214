//! Command-line front end: parses parameters, runs checks and scans, and
//! writes JSON or CSV reports.
//!
//! Exit status: 0 on success (verdicts live in the report), 2 on usage or
//! parameter errors, 3 when a computation budget is exceeded, 4 when a
//! cross-check or reproduction count disagrees.

mod reproduce;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tgrs_core::code::{CodeJson, LinearCode};
use tgrs_core::covering::{self, CosetTable};
use tgrs_core::etgrs::{self, Certificate, EtgrsParams, EtgrsTemplate, ScanOptions, ScanTarget};
use tgrs_core::report::{RunReport, SCHEMA};
use tgrs_core::{Element, Error, Field};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tgrs-lab", version, about = "Extended TGRS code laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the MDS criterion for one (eta, delta).
    CheckMds(PairArgs),
    /// Evaluate the AMDS criterion for one (eta, delta).
    CheckAmds(PairArgs),
    /// List every (eta, delta) for which the code is MDS.
    ScanMds(ScanArgs),
    /// List every (eta, delta) for which the code is AMDS.
    ScanAmds(ScanArgs),
    /// Covering-radius criterion for x = (alpha^k, a, b).
    DeepHole(DeepHoleArgs),
    /// Covering radius by syndrome BFS.
    CoveringRadius(CodeArgs),
    /// Exact minimum distance.
    MinDistance(CodeArgs),
    /// Schur-product certificates that the code is not GRS.
    NonGrs(PairArgs),
    /// Re-run the published tables and examples.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Field: `p`, `p^m` or `p^m/c0,...,cm`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    /// Comma-separated evaluation points.
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated column multipliers (default all ones).
    #[arg(long)]
    v: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Compare theorem verdicts with exhaustive computation.
    #[arg(long)]
    cross_validate: bool,
    #[arg(long, env = "TGRS_LAB_THREADS")]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct DeepHoleArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Read the code from a JSON file instead of building it from parameters.
    #[arg(long)]
    code: Option<std::path::PathBuf>,
    /// Write the leader-weight table to this file (covering-radius only).
    #[arg(long)]
    dump: Option<std::path::PathBuf>,
    #[command(flatten)]
    pair: PairArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReproduceTarget {
    Table1,
    Table2,
    Sec5,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(value_enum)]
    target: ReproduceTarget,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, env = "TGRS_LAB_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Mismatch(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::Budget { .. }) => EXIT_BUDGET,
            Failure::Core(Error::CrossCheck(_)) | Failure::Mismatch(_) => EXIT_DISAGREEMENT,
            Failure::Io(_) => 1,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn required<T: Clone>(value: &Option<T>, flag: &str) -> Outcome<T> {
    value
        .clone()
        .ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

impl ParamArgs {
    fn field(&self) -> Outcome<Field> {
        Ok(Field::from_description(&required(&self.field, "field")?)?)
    }

    fn template(&self) -> Outcome<EtgrsTemplate> {
        let f = self.field()?;
        let alpha = f.parse_list(&required(&self.alpha, "alpha")?)?;
        if let Some(n) = self.n {
            if n != alpha.len() {
                return Err(Failure::Usage(format!(
                    "--n {n} but --alpha has {} entries",
                    alpha.len()
                )));
            }
        }
        let v = self.v.as_deref().map(|s| f.parse_list(s)).transpose()?;
        let k = required(&self.k, "k")?;
        let h = required(&self.h, "h")?;
        Ok(EtgrsTemplate::new(&f, k, h, alpha, v)?)
    }
}

impl PairArgs {
    fn params(&self) -> Outcome<EtgrsParams> {
        let t = self.params.template()?;
        let eta = t.field.parse(&required(&self.eta, "eta")?)?;
        let delta = t.field.parse(&required(&self.delta, "delta")?)?;
        Ok(t.with_pair(eta, delta)?)
    }
}

fn element(f: &Field, value: &Option<String>, flag: &str) -> Outcome<Element> {
    Ok(f.parse(&required(value, flag)?)?)
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "tgrs-lab: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome<i32> {
    match command {
        Command::CheckMds(a) => check(a, ScanTarget::Mds, out),
        Command::CheckAmds(a) => check(a, ScanTarget::Amds, out),
        Command::ScanMds(a) => scan(a, ScanTarget::Mds, out),
        Command::ScanAmds(a) => scan(a, ScanTarget::Amds, out),
        Command::DeepHole(a) => deep_hole(a, out),
        Command::CoveringRadius(a) => covering_radius(a, out),
        Command::MinDistance(a) => min_distance(a, out),
        Command::NonGrs(a) => non_grs(a, out),
        Command::Reproduce(a) => reproduce::run(a.target, a.format, a.threads, out),
    }
}

fn emit_report(report: &RunReport, format: Format, out: &mut dyn Write) -> Outcome<i32> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.to_csv())?,
    }
    Ok(EXIT_OK)
}

/// JSON with sorted keys, or `key,value` rows for the scalar fields.
fn emit_value(value: &Value, format: Format, out: &mut dyn Write) -> Outcome<i32> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("value serializes")
        )?,
        Format::Csv => {
            writeln!(out, "key,value")?;
            if let Value::Object(map) = value {
                for (key, v) in map {
                    if let Some(cell) = csv_cell(v) {
                        writeln!(out, "{key},{}", quote(&cell))?;
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_cell(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(_) | Value::Bool(_) => Some(v.to_string()),
        Value::Null => Some(String::new()),
        Value::Array(items) => items
            .iter()
            .map(|i| match i {
                Value::String(s) => Some(s.clone()),
                Value::Number(_) | Value::Bool(_) => Some(i.to_string()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|cells| cells.join(" ")),
        Value::Object(_) => None,
    }
}

fn check(a: PairArgs, target: ScanTarget, out: &mut dyn Write) -> Outcome<i32> {
    let p = a.params()?;
    let report = match target {
        ScanTarget::Mds => etgrs::mds_check(&p)?,
        _ => etgrs::amds_check(&p)?,
    };
    let brute = if a.out.cross_validate {
        let b = etgrs::brute_force_verdict(&p, target)?;
        if b != report.verdict {
            return Err(Error::CrossCheck(format!(
                "{} criterion says {} but exhaustive check says {b}",
                target.name(),
                report.verdict
            ))
            .into());
        }
        Some(b)
    } else {
        None
    };
    emit_report(
        &RunReport::from_check(&p, target, &report, brute),
        a.out.format,
        out,
    )
}

fn scan(a: ScanArgs, target: ScanTarget, out: &mut dyn Write) -> Outcome<i32> {
    let t = a.params.template()?;
    let options = ScanOptions {
        cross_validate: a.out.cross_validate,
        threads: a.out.threads,
    };
    let result = etgrs::scan(&t, target, options)?;
    emit_report(&RunReport::from_scan(&result), a.out.format, out)
}

fn deep_hole(a: DeepHoleArgs, out: &mut dyn Write) -> Outcome<i32> {
    let p = a.pair.params()?;
    let f = &p.field;
    let (x_a, x_b) = (element(f, &a.a, "a")?, element(f, &a.b, "b")?);
    let r = etgrs::deep_hole_check(&p, x_a, x_b)?;
    let target = ScanTarget::DeepHole { a: x_a, b: x_b };
    let mut value = serde_json::to_value(RunReport::from_check(&p, target, &r.report, None))
        .expect("report serializes");
    let extra = value.as_object_mut().expect("report is an object");
    extra.insert("code_class".into(), json!(r.code_class.as_str()));
    extra.insert(
        "x".into(),
        json!(r.x.iter().map(|&e| f.format(e)).collect::<Vec<_>>()),
    );
    extra.insert("augmented_mds".into(), json!(r.augmented_mds));
    extra.insert("predicted_radius".into(), json!(r.predicted_radius));
    if a.pair.out.cross_validate {
        let v = covering::is_deep_hole(&p.code(), &r.x)?;
        if r.report.verdict && (!v.is_deep_hole || Some(v.covering_radius) != r.predicted_radius) {
            return Err(Error::CrossCheck(format!(
                "criterion predicts radius {:?} but BFS finds radius {} and coset weight {}",
                r.predicted_radius, v.covering_radius, v.coset_weight
            ))
            .into());
        }
        extra.insert("covering_radius".into(), json!(v.covering_radius));
        extra.insert("coset_weight".into(), json!(v.coset_weight));
        extra.insert("bfs_deep_hole".into(), json!(v.is_deep_hole));
    }
    emit_value(&value, a.pair.out.format, out)
}

fn load_code(a: &CodeArgs) -> Outcome<LinearCode> {
    match &a.code {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let json: CodeJson = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(LinearCode::from_json(&json)?)
        }
        None => Ok(a.pair.params()?.code()),
    }
}

fn code_header(code: &LinearCode) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert(
        "field_description".into(),
        json!(code.field().description()),
    );
    m.insert(
        "modulus_source".into(),
        json!(code.field().modulus_source().as_str()),
    );
    m.insert("n".into(), json!(code.len()));
    m.insert("k".into(), json!(code.k()));
    m
}

fn covering_radius(a: CodeArgs, out: &mut dyn Write) -> Outcome<i32> {
    let code = load_code(&a)?;
    let table = CosetTable::new(&code)?;
    if let Some(path) = &a.dump {
        let file = std::fs::File::create(path)?;
        table.write_dump(std::io::BufWriter::new(file))?;
    }
    let mut m = code_header(&code);
    m.insert("covering_radius".into(), json!(table.covering_radius()));
    m.insert(
        "weight_distribution".into(),
        json!(table.weight_distribution()),
    );
    emit_value(&Value::Object(m), a.pair.out.format, out)
}

fn min_distance(a: CodeArgs, out: &mut dyn Write) -> Outcome<i32> {
    let code = load_code(&a)?;
    let d = code.min_distance()?;
    let f = code.field();
    let mut m = code_header(&code);
    m.insert("d".into(), json!(d.d));
    m.insert("class".into(), json!(d.class.as_str()));
    m.insert(
        "witness".into(),
        json!(d.witness.iter().map(|&e| f.format(e)).collect::<Vec<_>>()),
    );
    emit_value(&Value::Object(m), a.pair.out.format, out)
}

fn certificate_json(f: &Field, c: &Certificate) -> Value {
    json!({
        "kind": c.kind,
        "applicable": c.applicable,
        "valid": c.valid,
        "dimension": c.dimension,
        "required": c.required,
        "position": c.position,
        "value": c.value.map(|v| f.format(v)),
    })
}

fn non_grs(a: PairArgs, out: &mut dyn Write) -> Outcome<i32> {
    let p = a.params()?;
    let f = &p.field;
    let schur = etgrs::schur_square_certificate(&p)?;
    let dual = etgrs::dual_schur_certificate(&p)?;
    let certified = schur.valid || dual.valid;
    let mut value = json!({
        "schema": SCHEMA,
        "field_description": f.description(),
        "modulus_source": f.modulus_source().as_str(),
        "n": p.n,
        "k": p.k,
        "h": p.h,
        "eta": f.format(p.eta),
        "delta": f.format(p.delta),
        "non_grs_certified": certified,
        "certificates": [certificate_json(f, &schur), certificate_json(f, &dual)],
    });
    if a.out.format == Format::Csv {
        // flatten the certificates into scalar columns
        let m = value.as_object_mut().expect("object");
        for (name, c) in [("schur_square", &schur), ("dual_weight_one", &dual)] {
            m.insert(format!("{name}_applicable"), json!(c.applicable));
            m.insert(format!("{name}_valid"), json!(c.valid));
        }
    }
    emit_value(&value, a.out.format, out)
}
