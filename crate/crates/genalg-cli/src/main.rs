//   Copyright 2026 genalg developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use genalg_core::corpus::parse_semigroup;
use genalg_core::properties::uniform_grid;
use genalg_core::{
    cancellation_check, check_generator_condition, continuity_check, f_condition_check, idempotent_points,
    inverse_identities_report, limit_property_check, load_fixtures, pseudo_inverse, quasi_inverse_bounds,
    run_corpus, supconorm_equivalence_check, weak_pseudo_inverse, Error, GeneratedOp, Mode, PiecewiseMonotone,
    RangeDecomposition, SemigroupDescriptor, Verdict,
};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Command {
    Inspect,
    Invert,
    Range,
    Decompose,
    CheckGenCondition,
    CheckAssoc,
    CheckProps,
    SampleGrid,
    Fixtures,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }

    fn needs_generator(self) -> bool {
        self != Command::Fixtures
    }
}

/// Analyze operations `T(x, y) = t⁻¹(F(t(x), t(y)))` generated by a monotone `t`.
#[derive(Parser, Debug)]
#[command(name = "genalg", version)]
struct Args {
    /// Generator JSON, or a fixture file whose semigroup and mode become defaults
    #[arg(long)]
    generator: Option<PathBuf>,

    /// sum, max, linprod or table:<path>
    #[arg(long)]
    semigroup: Option<String>,

    /// norm or supconorm
    #[arg(long)]
    mode: Option<String>,

    /// Comma-separated list of commands
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    cmd: Vec<Command>,

    /// Directory for `<cmd>.json` reports and `sample-grid.csv`; stdout otherwise
    #[arg(long)]
    out: Option<PathBuf>,

    /// Points per axis for sample-grid
    #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u32).range(2..=10_000))]
    grid_n: u32,
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Precondition(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidTable(_) | Error::MalformedPartition(_) | Error::InvalidInterval(_) => {
                Failure::Parse(e.to_string())
            }
            Error::PreconditionViolated(_) | Error::UnsupportedSemigroup(_) | Error::DomainError(_) => {
                Failure::Precondition(e.to_string())
            }
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(m) | Failure::Precondition(m) | Failure::Other(m) => f.write_str(m),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

struct Inputs {
    op: GeneratedOp,
}

fn load_inputs(args: &Args) -> Run<Inputs> {
    let path = args
        .generator
        .as_ref()
        .ok_or_else(|| Failure::Parse("--generator is required for this command".into()))?;
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;

    let (t, fx_semigroup, fx_mode) = match value.get("generator") {
        Some(g) => (
            PiecewiseMonotone::from_json(&g.to_string())?,
            value.get("semigroup").and_then(Value::as_str).map(str::to_string),
            value.get("mode").and_then(Value::as_str).map(str::to_string),
        ),
        None => (PiecewiseMonotone::from_json(&text)?, None, None),
    };

    let f = match args.semigroup.clone().or(fx_semigroup) {
        Some(s) => match s.strip_prefix("table:") {
            Some(p) => SemigroupDescriptor::table_from_json(&read(Path::new(p))?)?,
            None => parse_semigroup(&s)?,
        },
        None => return Err(Failure::Parse("--semigroup is required".into())),
    };
    let mode = match args.mode.clone().or(fx_mode) {
        Some(m) => m.parse::<Mode>()?,
        None if t.is_non_decreasing() => Mode::Supconorm,
        None => Mode::Norm,
    };
    Ok(Inputs { op: GeneratedOp::new(&t, &f, mode)? })
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn inspect(op: &GeneratedOp) -> Value {
    let t = op.t();
    json!({
        "generator": to_json(t),
        "semigroup": op.f().name(),
        "mode": to_json(&op.mode()),
        "validation": to_json(&t.validate()),
        "plateaus": to_json(&t.plateau_data()),
        "breakpoints": to_json(&t.breakpoints()),
        "t0": t.t0().to_string(),
        "t_end": t.t_end().to_string(),
    })
}

fn invert(op: &GeneratedOp) -> Run<Value> {
    let t = op.t();
    let bounds = match quasi_inverse_bounds(t) {
        Ok((lo, hi)) => json!({ "lower": to_json(&lo), "upper": to_json(&hi) }),
        Err(e @ Error::PreconditionViolated(_)) => json!({ "not_applicable": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "pseudo_inverse": to_json(&pseudo_inverse(t)),
        "weak_pseudo_inverse": to_json(&weak_pseudo_inverse(t)),
        "quasi_inverse_bounds": bounds,
        "identities": to_json(&inverse_identities_report(t)),
    }))
}

fn range(op: &GeneratedOp) -> Value {
    let r = op.t().range_of();
    json!({ "range": r.to_string(), "parts": to_json(&r) })
}

fn decompose(op: &GeneratedOp) -> Run<Value> {
    let dec = RangeDecomposition::decompose(op.t())?;
    Ok(json!({
        "m": dec.m().to_string(),
        "decomposition": to_json(&dec),
        "v": to_json(&dec.v_points()),
        "reconstruction_matches": dec.reconstruct() == op.t().range_of(),
    }))
}

/// One row of the check-props table: the analysis and a short verdict.
struct PropRow {
    name: &'static str,
    summary: String,
    value: Value,
}

fn prop<T: serde::Serialize>(
    name: &'static str,
    res: genalg_core::Result<T>,
    summary: impl FnOnce(&T) -> String,
) -> Run<PropRow> {
    match res {
        Ok(v) => Ok(PropRow { name, summary: summary(&v), value: to_json(&v) }),
        Err(e @ (Error::PreconditionViolated(_) | Error::UnsupportedSemigroup(_))) => {
            let msg = e.to_string();
            Ok(PropRow { name, summary: format!("n/a ({msg})"), value: json!({ "not_applicable": msg }) })
        }
        Err(e) => Err(e.into()),
    }
}

fn check_props(op: &GeneratedOp) -> Run<(Value, String)> {
    let rows = vec![
        prop("idempotent_points", idempotent_points(op), |r| r.points.to_string())?,
        prop("limit_property", limit_property_check(op), |r| format!("{:?}", r.verdict))?,
        prop("cancellation", cancellation_check(op), |r| {
            format!("conditionally cancellative: {}", r.conditionally_cancellative)
        })?,
        prop("supconorm_equivalence", supconorm_equivalence_check(op), |r| {
            format!("t-supconorm: {}", r.is_supconorm)
        })?,
        prop("continuity", continuity_check(op), |r| {
            format!("continuous: {}, left failures: {}, right failures: {}", r.continuous, r.left_failures.len(), r.right_failures.len())
        })?,
    ];
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut table = String::new();
    for r in &rows {
        let _ = writeln!(table, "{:width$}  {}", r.name, r.summary);
    }
    let value = Value::Object(rows.into_iter().map(|r| (r.name.to_string(), r.value)).collect());
    Ok((value, table))
}

fn sample_grid(op: &GeneratedOp, n: u32) -> Run<String> {
    let grid = uniform_grid(n as usize);
    let mut csv = String::from("x,x_dec,y,y_dec,T,T_dec\n");
    for x in &grid {
        for y in &grid {
            let v = op.eval(x, y)?;
            let _ = writeln!(csv, "{x},{},{y},{},{v},{}", x.to_decimal(12), y.to_decimal(12), v.to_decimal(12));
        }
    }
    Ok(csv)
}

enum Artifact {
    Json(Value),
    Csv(String),
}

fn emit(out: Option<&Path>, cmd: Command, artifact: &Artifact) -> Run<()> {
    let (text, ext) = match artifact {
        Artifact::Json(v) => (format!("{}\n", serde_json::to_string_pretty(v).expect("json")), "json"),
        Artifact::Csv(s) => (s.clone(), "csv"),
    };
    match out {
        Some(dir) => {
            let path = dir.join(format!("{}.{ext}", cmd.name()));
            fs::write(&path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: &Args) -> Run<bool> {
    let mut cmds = args.cmd.clone();
    cmds.dedup();
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Other(format!("{}: {e}", dir.display())))?;
    }
    let inputs = if cmds.iter().any(|c| c.needs_generator()) { Some(load_inputs(args)?) } else { None };

    let mut all_verdicts = true;
    for &cmd in &cmds {
        let op = inputs.as_ref().map(|i| &i.op);
        let artifact = match cmd {
            Command::Inspect => Artifact::Json(inspect(op.unwrap())),
            Command::Invert => Artifact::Json(invert(op.unwrap())?),
            Command::Range => Artifact::Json(range(op.unwrap())),
            Command::Decompose => Artifact::Json(decompose(op.unwrap())?),
            Command::CheckGenCondition => Artifact::Json(to_json(&check_generator_condition(op.unwrap())?)),
            Command::CheckAssoc => {
                let rep = f_condition_check(op.unwrap())?;
                all_verdicts &= rep.verdict != Verdict::Unknown;
                Artifact::Json(to_json(&rep))
            }
            Command::CheckProps => {
                let (value, table) = check_props(op.unwrap())?;
                eprint!("{table}");
                Artifact::Json(value)
            }
            Command::SampleGrid => Artifact::Csv(sample_grid(op.unwrap(), args.grid_n)?),
            Command::Fixtures => {
                let rep = run_corpus(&load_fixtures()?);
                for fx in &rep.fixtures {
                    eprintln!("[{}] {} ({})", if fx.pass { "PASS" } else { "FAIL" }, fx.id, fx.anchor);
                }
                all_verdicts &= rep.pass;
                Artifact::Json(to_json(&rep))
            }
        };
        emit(args.out.as_deref(), cmd, &artifact)?;
    }
    Ok(all_verdicts)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("genalg: {e}");
            ExitCode::from(e.code())
        }
    }
}
