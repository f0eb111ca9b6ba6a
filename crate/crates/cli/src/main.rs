use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cft_core::adele_idele::{lambda_functional, Adele, Idele};
use cft_core::as_pairing::{psi_global, psi_local, splitting_table};
use cft_core::cyclic_cohomology::{h0, herbrand_quotient, hminus1, semilocal_compare, AbelianGroup, CyclicModule};
use cft_core::finite_field::FieldSpec;
use cft_core::function_field::{divisor_of, places_up_to_degree};
use cft_core::laurent_series::{residue, LaurentSeries};
use cft_core::parse::{parse_rational, parse_series};
use cft_core::reciprocity::{
    as_symbol, global_symbol_constant, neukirch_map_constant, ConstantExtension,
};
use cft_core::verify::{self, SuiteReport, DEFAULT_SEED, SUITES};
use cft_core::Error;

#[derive(Parser)]
#[command(name = "cft", version, about = "Class field theory computations over F_q(T)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct Common {
    /// Order of the constant field.
    #[arg(long)]
    q: Option<u64>,
    /// Constant field as `GF(q)`.
    #[arg(long)]
    field: Option<String>,
    /// Relative precision for local expansions.
    #[arg(long)]
    precision: Option<i64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient of t^-1 in x dy/dt.
    Residue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Local pairing psi(x, y) = Tr res(x dy/y).
    PairingLocal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Global pairing psi(x, alpha) for an idele alpha (JSON).
    PairingGlobal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        /// Idele JSON, or `-` for stdin.
        #[arg(long)]
        idele: Option<String>,
    },
    /// Splitting of places in K(wp^-1 x).
    Splitting {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// Herbrand quotient #H^0 / #H^-1.
    Herbrand {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
    },
    /// H^0 of a cyclic module.
    H0 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
    },
    /// H^-1 of a cyclic module.
    Hminus1 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
    },
    /// Compare H^i(G, Ind A1) with H^i(G1, A1).
    Semilocal {
        #[command(flatten)]
        common: Common,
        /// Order of G.
        #[arg(long)]
        n: u32,
        /// Index of G1 in G.
        #[arg(long)]
        s: u32,
        #[arg(long)]
        module: Option<String>,
    },
    /// Norm residue symbol of an idele.
    Symbol {
        #[command(flatten)]
        common: Common,
        /// `constant:n` or `as:x`.
        #[arg(long)]
        ext: String,
        #[arg(long)]
        idele: Option<String>,
    },
    /// Idele whose symbol is phi^j on F_{q^n}(T).
    Neukirch {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n: u32,
    },
    /// Residue functional lambda and f = Tr lambda on an adele (JSON).
    Lambda {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        adele: Option<String>,
    },
    /// Principal divisor of x.
    Divisor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
    },
    /// Places of degree at most d.
    Places {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        max_degree: u32,
    },
    /// Run an invariant suite, or `all`.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Rendered result: JSON, plus table rows when a table makes sense.
struct Output {
    json: Value,
    table: Option<Vec<Vec<String>>>,
    default: Format,
    ok: bool,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, table: None, default: Format::Json, ok: true }
    }

    fn render(&self, format: Option<Format>) -> String {
        match (format.unwrap_or(self.default), &self.table) {
            (Format::Table, Some(rows)) => render_table(rows),
            (Format::Table, None) => render_table(&kv_rows(&self.json)),
            (Format::Json, _) => self.json.to_string(),
        }
    }
}

fn kv_rows(v: &Value) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
    if let Value::Object(m) = v {
        for (k, x) in m {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            rows.push(vec![k.clone(), s]);
        }
    }
    rows
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s:<w$}", w = widths[i]))
            .collect();
        out.push(cells.join("  ").trim_end().to_string());
    }
    out.join("\n")
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn field_of(c: &Common) -> Res<FieldSpec> {
    match (&c.q, &c.field) {
        (Some(q), None) => Ok(FieldSpec::with_order(*q)?),
        (None, Some(s)) => s.parse::<FieldSpec>().map_err(|e| Failure::Parse(e.to_string())),
        (Some(q), Some(s)) => {
            let f = s.parse::<FieldSpec>().map_err(|e| Failure::Parse(e.to_string()))?;
            if f.order() != *q {
                return Err(Failure::Parse(format!("--q {q} disagrees with --field {s}")));
            }
            Ok(f)
        }
        (None, None) => Err(Failure::Parse("missing --q or --field".into())),
    }
}

/// Reads a JSON payload from the flag, or from stdin when absent or `-`.
fn payload(arg: &Option<String>) -> Res<Value> {
    let text = match arg.as_deref() {
        Some(s) if s != "-" => s.to_string(),
        _ => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Parse(e.to_string()))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))
}

/// Fills in `q` from the command line when the payload omits it.
fn with_field(mut v: Value, c: &Common) -> Res<Value> {
    if v.get("q").is_none() && v.get("field").is_none() {
        let f = field_of(c)?;
        if let Value::Object(m) = &mut v {
            m.insert("q".into(), json!(f.order()));
        }
    }
    Ok(v)
}

fn series(s: &str, field: FieldSpec, precision: Option<i64>) -> Res<LaurentSeries> {
    let x = parse_series(s, field)?;
    Ok(match precision {
        Some(n) => x.truncate(n),
        None => x,
    })
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({
        "order": g.order().map_or("infinite".to_string(), |o| o.to_string()),
        "invariants": g.invariants.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "free_rank": g.free_rank.to_string(),
        "structure": g.to_string(),
    })
}

fn suite_line(r: &SuiteReport) -> Vec<String> {
    vec![
        r.name.clone(),
        if r.ok() { "PASS" } else { "FAIL" }.to_string(),
        r.passed.to_string(),
        r.failed.to_string(),
    ]
}

fn run_verify(suite: &str, seed: u64) -> Res<Output> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Parse(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", "))));
    };
    // suites are independent, so they run on separate threads
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| s.spawn(move || verify::run_suite(n, seed).expect("known suite")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    let total = SuiteReport::merge(suite, &reports);
    let mut rows = vec![vec!["suite".into(), "result".into(), "passed".into(), "failed".into()]];
    rows.extend(reports.iter().map(suite_line));
    Ok(Output { json: total.to_json(), table: Some(rows), default: Format::Json, ok: total.ok() })
}

fn run(cmd: &Command) -> Res<Output> {
    match cmd {
        Command::Residue { common, x, y } => {
            let f = field_of(common)?;
            let (x, y) = (series(x, f, common.precision)?, series(y, f, common.precision)?);
            Ok(Output::json(json!({ "residue": residue(&x, &y)?.to_string() })))
        }
        Command::PairingLocal { common, x, y } => {
            let f = field_of(common)?;
            let (x, y) = (series(x, f, common.precision)?, series(y, f, common.precision)?);
            let v = psi_local(&x, &y)?;
            Ok(Output::json(json!({ "value": v.to_string(), "p": v.p().to_string() })))
        }
        Command::PairingGlobal { common, x, idele } => {
            let alpha = Idele::from_json(&with_field(payload(idele)?, common)?)?;
            let x = parse_rational(x, alpha.field())?;
            let v = psi_global(&x, &alpha)?;
            Ok(Output::json(json!({ "value": v.to_string(), "p": v.p().to_string() })))
        }
        Command::Splitting { common, x, max_degree } => {
            let f = field_of(common)?;
            let x = parse_rational(x, f)?;
            let rows = splitting_table(&x, *max_degree)?;
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "place": r.place.to_string(),
                        "degree": r.degree.to_string(),
                        "splitting": r.kind.to_string(),
                        "witness": r.witness,
                    })
                })
                .collect();
            let mut table = vec![vec!["place".into(), "degree".into(), "splitting".into(), "witness".into()]];
            table.extend(
                rows.iter()
                    .map(|r| vec![r.place.to_string(), r.degree.to_string(), r.kind.to_string(), r.witness.clone()]),
            );
            Ok(Output { json: Value::Array(json_rows), table: Some(table), default: Format::Table, ok: true })
        }
        Command::Herbrand { module, .. } => {
            let m = CyclicModule::from_json(&payload(module)?)?;
            let h = herbrand_quotient(&m)?;
            let s = if *h.denom() == 1 { h.numer().to_string() } else { h.to_string() };
            Ok(Output::json(json!({ "h": s })))
        }
        Command::H0 { module, .. } => {
            let m = CyclicModule::from_json(&payload(module)?)?;
            Ok(Output::json(group_json(&h0(&m)?)))
        }
        Command::Hminus1 { module, .. } => {
            let m = CyclicModule::from_json(&payload(module)?)?;
            Ok(Output::json(group_json(&hminus1(&m)?)))
        }
        Command::Semilocal { n, s, module, .. } => {
            let a1 = CyclicModule::from_json(&payload(module)?)?;
            let r = semilocal_compare(*n, *s, &a1)?;
            Ok(Output::json(json!({
                "h0_iso": r.h0_iso.to_string(),
                "hminus1_iso": r.hminus1_iso.to_string(),
                "h0": r.h0.to_string(),
                "h0_local": r.h0_local.to_string(),
                "hminus1": r.hminus1.to_string(),
                "hminus1_local": r.hminus1_local.to_string(),
            })))
        }
        Command::Symbol { common, ext, idele } => {
            let alpha = Idele::from_json(&with_field(payload(idele)?, common)?)?;
            if let Some(n) = ext.strip_prefix("constant:") {
                let n: u32 = n.trim().parse().map_err(|_| Failure::Parse(format!("bad degree in {ext:?}")))?;
                let e = ConstantExtension::new(alpha.field(), n)?;
                let s = global_symbol_constant(&alpha, &e)?;
                Ok(Output::json(json!({ "exponent": s.exponent, "modulus": s.modulus })))
            } else if let Some(x) = ext.strip_prefix("as:") {
                let x = parse_rational(x, alpha.field())?;
                let c = as_symbol(&x, &alpha)?;
                Ok(Output::json(json!({ "shift": c.value(), "p": c.p() })))
            } else {
                Err(Failure::Parse(format!("--ext must be constant:n or as:x, got {ext:?}")))
            }
        }
        Command::Neukirch { common, j, n } => {
            let f = field_of(common)?;
            let e = ConstantExtension::new(f, *n)?;
            Ok(Output::json(neukirch_map_constant(*j, &e)?.to_json()))
        }
        Command::Lambda { common, adele } => {
            let a = Adele::from_json(&with_field(payload(adele)?, common)?)?;
            let (l, f) = lambda_functional(&a)?;
            Ok(Output::json(json!({ "lambda": l.to_string(), "f": f.to_string() })))
        }
        Command::Divisor { common, x } => {
            let f = field_of(common)?;
            let d = divisor_of(&parse_rational(x, f)?)?;
            let mut obj = serde_json::Map::new();
            let mut table = vec![vec!["place".into(), "degree".into(), "coefficient".into()]];
            for (p, n) in d.terms() {
                obj.insert(p.to_string(), json!(n.to_string()));
                table.push(vec![p.to_string(), p.degree().to_string(), n.to_string()]);
            }
            Ok(Output {
                json: json!({ "divisor": d.to_string(), "degree": d.degree().to_string(), "terms": obj }),
                table: Some(table),
                default: Format::Json,
                ok: true,
            })
        }
        Command::Places { common, max_degree } => {
            let f = field_of(common)?;
            let places = places_up_to_degree(f, *max_degree);
            let mut table = vec![vec!["place".into(), "degree".into()]];
            table.extend(places.iter().map(|p| vec![p.to_string(), p.degree().to_string()]));
            let json_rows: Vec<Value> = places
                .iter()
                .map(|p| json!({ "place": p.to_string(), "degree": p.degree().to_string() }))
                .collect();
            Ok(Output { json: Value::Array(json_rows), table: Some(table), default: Format::Json, ok: true })
        }
        Command::Verify { suite, seed, .. } => run_verify(suite, *seed),
    }
}

fn format_of(cmd: &Command) -> Option<Format> {
    match cmd {
        Command::Residue { common, .. }
        | Command::PairingLocal { common, .. }
        | Command::PairingGlobal { common, .. }
        | Command::Splitting { common, .. }
        | Command::Herbrand { common, .. }
        | Command::H0 { common, .. }
        | Command::Hminus1 { common, .. }
        | Command::Semilocal { common, .. }
        | Command::Symbol { common, .. }
        | Command::Neukirch { common, .. }
        | Command::Lambda { common, .. }
        | Command::Divisor { common, .. }
        | Command::Places { common, .. }
        | Command::Verify { common, .. } => common.format,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            println!("{}", out.render(format_of(&cli.command)));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Parse(m)) => {
            if m.starts_with("parse error") {
                eprintln!("{m}");
            } else {
                eprintln!("parse error: {m}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
