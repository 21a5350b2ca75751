use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bernstein_hecke::affine::{parse_coords, AffineElt, AffineGroup};
use bernstein_hecke::bernstein::{Bernstein, MinimalExpression};
use bernstein_hecke::coeffs::{v_to_q, LaurentPoly};
use bernstein_hecke::exec::Exec;
use bernstein_hecke::gallery::{fiber_traces, Sign};
use bernstein_hecke::hecke::{Basis, HeckeAlgebra, HeckeElt};
use bernstein_hecke::rootdata::{Coweight, RootDatumJson, RootSystem};
use bernstein_hecke::verify::{self, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Bernstein elements of affine Hecke algebras")]
struct Cli {
    /// `gl:<n>`, a preset such as `A2:sc` or `B2:ad`, or `cartan:<file.json>`.
    #[arg(long, global = true)]
    root_system: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Theta^-_lambda in the T~ basis.
    ThetaMinus {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Theta_lambda in the T~ basis.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// The central element z_mu for dominant mu.
    Z {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// The row x -> R~_{x,y}(Q).
    Rpoly {
        #[arg(long)]
        y: String,
    },
    /// The admissible set Adm(mu).
    Adm {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// A minimal expression for Theta^-_lambda.
    Minexp {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Gallery traces against the coefficients of Theta^-_lambda.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        x: Option<String>,
    },
    /// Theta^-_lambda for every lambda in a box, as JSON.
    Table {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        hi: i64,
        /// Compare with a stored table; exit 1 on mismatch.
        #[arg(long, conflicts_with = "bless")]
        check: Option<PathBuf>,
        /// Rewrite the stored table.
        #[arg(long)]
        bless: Option<PathBuf>,
    },
    /// Run identity suites and report pass/fail per identity.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
}

/// Bad flags or values: exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

/// What a command produced, and whether it counts as a failed check.
struct Outcome {
    body: String,
    failed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn load_root_system(spec: &str) -> Result<RootSystem> {
    if let Some(path) = spec.strip_prefix("cartan:") {
        let raw = fs::read_to_string(path).map_err(|e| usage(format!("--root-system: cannot read {path}: {e}")))?;
        let datum: RootDatumJson =
            serde_json::from_str(&raw).map_err(|e| usage(format!("--root-system: bad root datum in {path}: {e}")))?;
        return RootSystem::from_json(&datum).map_err(|e| usage(format!("--root-system: {e}")));
    }
    RootSystem::from_spec(spec).map_err(|e| usage(format!("--root-system: {e}")))
}

fn bernstein(cli: &Cli) -> Result<Bernstein> {
    let spec = cli.root_system.as_deref().ok_or_else(|| usage("missing required flag --root-system"))?;
    let rs = load_root_system(spec)?;
    let group = Arc::new(AffineGroup::new(Arc::new(rs)));
    Ok(Bernstein::new(HeckeAlgebra::new(group).with_exec(exec(cli))))
}

fn coweight(b: &Bernstein, flag: &str, s: &str) -> Result<Coweight> {
    let coords = parse_coords(s).map_err(|e| usage(format!("--{flag}: {e}")))?;
    b.root_system().coweight(&coords).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn element(b: &Bernstein, flag: &str, s: &str) -> Result<AffineElt> {
    b.group().parse(s).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::ThetaMinus { lambda } => {
            let b = bernstein(cli)?;
            let l = coweight(&b, "lambda", lambda)?;
            Ok(Outcome::ok(render_element(cli, &b, &b.theta_minus(&l))))
        }
        Command::Theta { lambda } => {
            let b = bernstein(cli)?;
            let l = coweight(&b, "lambda", lambda)?;
            Ok(Outcome::ok(render_element(cli, &b, &b.theta(&l))))
        }
        Command::Z { mu } => {
            let b = bernstein(cli)?;
            let m = coweight(&b, "mu", mu)?;
            let z = b.bernstein_z(&m).map_err(|e| usage(format!("--mu: {e}")))?;
            Ok(Outcome::ok(render_element(cli, &b, &z)))
        }
        Command::Rpoly { y } => {
            let b = bernstein(cli)?;
            let y = element(&b, "y", y)?;
            rpoly(cli, &b, &y).map(Outcome::ok)
        }
        Command::Adm { mu } => {
            let b = bernstein(cli)?;
            let m = coweight(&b, "mu", mu)?;
            let adm = b.group().admissible_set(&m).map_err(|e| match e {
                bernstein_hecke::Error::NotDominant(_) => usage(format!("--mu: {e}")),
                e => anyhow!(e),
            })?;
            Ok(Outcome::ok(render_elements(cli, b.group(), &adm)))
        }
        Command::Minexp { lambda } => {
            let b = bernstein(cli)?;
            let l = coweight(&b, "lambda", lambda)?;
            let e = verify::minimal_expression(&b, &l).map_err(|e| usage(format!("--lambda: {e}")))?;
            Ok(Outcome::ok(render_minexp(cli, &b, &e)))
        }
        Command::Fiber { lambda, x } => {
            let b = bernstein(cli)?;
            let l = coweight(&b, "lambda", lambda)?;
            let x = x.as_deref().map(|s| element(&b, "x", s)).transpose()?;
            fiber(cli, &b, &l, x.as_ref())
        }
        Command::Table { lo, hi, check, bless } => {
            let b = bernstein(cli)?;
            if lo > hi {
                return Err(usage("--lo must not exceed --hi"));
            }
            table(&b, *lo, *hi, check.as_ref(), bless.as_ref())
        }
        Command::Verify { suite, max_n, max_m } => {
            let suite: Suite = suite.parse().map_err(|e| usage(format!("--suite: {e}")))?;
            if *max_n < 2 {
                return Err(usage("--max-n must be at least 2"));
            }
            let systems = match &cli.root_system {
                Some(spec) => vec![load_root_system(spec)?],
                None => verify::default_systems(*max_n),
            };
            let opts = VerifyOptions { max_n: *max_n, max_m: *max_m, exec: exec(cli) };
            let report = verify::run(&systems, suite, &opts)?;
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.to_json())?,
                Format::Csv => report.to_csv(),
                _ => report.to_text(),
            };
            Ok(Outcome { body, failed: !report.all_passed() })
        }
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("utf-8 fields")
}

fn coeff_text(c: &LaurentPoly) -> String {
    match v_to_q(c) {
        Ok(p) => p.to_string(),
        Err(_) => c.to_string(),
    }
}

fn render_element(cli: &Cli, b: &Bernstein, h: &HeckeElt) -> String {
    let alg = b.algebra();
    let g = b.group();
    match cli.format {
        Format::Text => alg.format(h),
        Format::Json => alg.to_json(h).to_string(),
        Format::Latex => alg.to_latex(h),
        Format::Csv => {
            let rows = alg
                .display_terms(h)
                .into_iter()
                .map(|(x, c)| vec![g.format(x), g.length(x).to_string(), coeff_text(c)]);
            csv_table(&["x", "length", "coeff"], rows)
        }
    }
}

fn render_elements(cli: &Cli, g: &AffineGroup, xs: &[AffineElt]) -> String {
    match cli.format {
        Format::Json => Value::Array(xs.iter().map(|x| g.to_json(x)).collect()).to_string(),
        Format::Csv => csv_table(&["x", "length"], xs.iter().map(|x| vec![g.format(x), g.length(x).to_string()])),
        Format::Text | Format::Latex => xs.iter().map(|x| g.format(x)).collect::<Vec<_>>().join("\n"),
    }
}

fn rpoly(cli: &Cli, b: &Bernstein, y: &AffineElt) -> Result<String> {
    let g = b.group();
    let row = b.algebra().rtilde_row(y)?;
    Ok(match cli.format {
        Format::Json => {
            let entries: Vec<Value> = row.iter().map(|(x, r)| json!({ "x": g.to_json(x), "R": r.to_json() })).collect();
            json!({ "y": g.to_json(y), "row": entries }).to_string()
        }
        Format::Csv => {
            let rows = row.iter().map(|(x, r)| vec![g.format(x), g.length(x).to_string(), r.to_string()]);
            csv_table(&["x", "length", "R"], rows)
        }
        Format::Latex => row
            .iter()
            .map(|(x, r)| format!("\\tilde{{R}}_{{{},{}}} = {}", g.format(x), g.format(y), r))
            .collect::<Vec<_>>()
            .join("\\\\\n"),
        Format::Text => row.iter().map(|(x, r)| format!("{}\t{}", g.format(x), r)).collect::<Vec<_>>().join("\n"),
    })
}

fn render_minexp(cli: &Cli, b: &Bernstein, e: &MinimalExpression) -> String {
    let g = b.group();
    match cli.format {
        Format::Json => {
            let mut v = e.word.to_json(g);
            v["target"] = json!(e.target.coords());
            v.to_string()
        }
        Format::Csv => {
            let rows = e
                .letters()
                .iter()
                .enumerate()
                .map(|(i, &(s, sign))| vec![(i + 1).to_string(), g.generator_name(s), sign.as_i8().to_string()]);
            csv_table(&["position", "gen", "sign"], rows)
        }
        Format::Latex => {
            let mut parts: Vec<String> = e
                .letters()
                .iter()
                .map(|&(s, sign)| {
                    let i = g.generator_name(s).trim_start_matches('s').to_string();
                    match sign {
                        Sign::Plus => format!("\\tilde{{T}}_{{s_{{{i}}}}}"),
                        Sign::Minus => format!("\\tilde{{T}}^{{-1}}_{{s_{{{i}}}}}"),
                    }
                })
                .collect();
            if !e.tau().is_identity() {
                parts.push(format!("\\tilde{{T}}_{{{}}}", g.format(e.tau())));
            }
            parts.join(" ")
        }
        Format::Text => e.word.format(g),
    }
}

fn fiber(cli: &Cli, b: &Bernstein, lambda: &Coweight, only: Option<&AffineElt>) -> Result<Outcome> {
    let g = b.group();
    let alg = b.algebra();
    let e = verify::minimal_expression(b, lambda).map_err(|e| usage(format!("--lambda: {e}")))?;
    let traces = fiber_traces(g, &e.word)?;
    let theta = alg.convert(&b.theta_minus(lambda), Basis::T);
    let eps = if e.len() % 2 == 0 { 1 } else { -1 };
    let xs = match only {
        Some(x) => vec![x.clone()],
        None => g.interval_below(&AffineElt::translation(lambda))?,
    };
    let rows: Vec<(String, usize, LaurentPoly, LaurentPoly, bool)> = xs
        .iter()
        .map(|x| {
            let trace = traces.get(x).cloned().unwrap_or_default();
            let coeff = theta.coeff(x);
            let matched = trace == coeff.scale(&eps.into());
            (g.format(x), g.length(x), trace, coeff, matched)
        })
        .collect();
    let failed = rows.iter().any(|r| !r.4);
    let body = match cli.format {
        Format::Csv => {
            let rows = rows
                .iter()
                .map(|(x, l, t, c, m)| vec![x.clone(), l.to_string(), t.to_string(), c.to_string(), m.to_string()]);
            csv_table(&["x", "l(x)", "trace", "theta_coeff", "match"], rows)
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(x, l, t, c, m)| {
                    json!({ "x": x, "length": l, "trace": t.to_json(), "theta_coeff": c.to_json(), "match": m })
                })
                .collect();
            json!({ "lambda": lambda.coords(), "expression": e.word.format(g), "rows": entries }).to_string()
        }
        Format::Text | Format::Latex => {
            let mut out = format!("expression {}\n", e.word.format(g));
            for (x, l, t, c, m) in &rows {
                let _ = writeln!(out, "{x}\tl={l}\ttrace={t}\ttheta={c}\t{}", if *m { "ok" } else { "MISMATCH" });
            }
            out
        }
    };
    Ok(Outcome { body, failed })
}

fn table_json(b: &Bernstein, lo: i64, hi: i64) -> Value {
    let alg = b.algebra();
    let lambdas = verify::coweight_box(b.root_system().rank(), lo, hi);
    let entries: Vec<Value> = b
        .algebra()
        .exec()
        .map(&lambdas, |l| json!({ "lambda": l.coords(), "theta_minus": alg.to_json(&b.theta_minus(l)) }));
    json!({ "root_system": b.root_system().label(), "lo": lo, "hi": hi, "table": entries })
}

fn table(b: &Bernstein, lo: i64, hi: i64, check: Option<&PathBuf>, bless: Option<&PathBuf>) -> Result<Outcome> {
    let body = serde_json::to_string_pretty(&table_json(b, lo, hi))?;
    if let Some(path) = bless {
        fs::write(path, format!("{body}\n")).with_context(|| format!("writing {}", path.display()))?;
        return Ok(Outcome::ok(format!("wrote {}", path.display())));
    }
    if let Some(path) = check {
        let stored = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let stored: Value = serde_json::from_str(&stored).with_context(|| format!("parsing {}", path.display()))?;
        let fresh: Value = serde_json::from_str(&body)?;
        if stored == fresh {
            return Ok(Outcome::ok(format!("{} matches", path.display())));
        }
        return Ok(Outcome { body: format!("{} differs from the computed table", path.display()), failed: true });
    }
    Ok(Outcome::ok(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
