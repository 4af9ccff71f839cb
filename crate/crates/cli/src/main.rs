use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use fsind_core::indicators::{self, clean, indicator_period, nu_agl_bruteforce, nu_ng1_closed};
use fsind_core::qforms::FormSpec;
use fsind_core::tables::{self, ReportFormat, TableRow};
use fsind_core::{CategorySpec, FiniteAbelianGroup, QZValue, QuadraticForm};

const DEFAULT_TOLERANCE: f64 = 1e-9;
const MAX_TOLERANCE: f64 = 1e-3;

#[derive(Parser, Debug)]
#[command(name = "fsind", version, about = "Frobenius-Schur indicators of near-group and Haagerup-Izumi categories")]
struct Cli {
    /// Absolute tolerance for comparisons, in (0, 1e-3]. Overrides FI_TOLERANCE.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gauss sum of a quadratic form.
    Gauss {
        /// Group as JSON, e.g. '{"cyclic_factors":[3]}'.
        #[arg(long)]
        group: String,
        /// Form as JSON or shorthand, e.g. 'g^2/3' or 'monomial g^2/3'.
        #[arg(long, num_args = 1.., required = true)]
        form: Vec<String>,
        /// Evaluate the Gauss sum of k q instead of q.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        scale: i64,
    },
    /// Indicators nu_k(rho) for k = 1..kmax.
    Indicators {
        /// Category spec as JSON, or @path to a JSON file.
        #[arg(long, conflicts_with = "row", required_unless_present = "row")]
        spec: Option<String>,
        /// A builtin table row, e.g. ng9:1.
        #[arg(long)]
        row: Option<String>,
        /// Largest k, or 'auto' for one full period.
        #[arg(long, default_value = "auto")]
        kmax: String,
        #[arg(long, value_enum, default_value_t = EvalPath::Center)]
        path: EvalPath,
    },
    /// Verify the builtin indicator tables.
    VerifyTables {
        /// Restrict to one table: ng3, ng5, ng7, ng9, ng11, ng13, hi3, hi5.
        #[arg(long)]
        table: Option<String>,
        #[arg(long, default_value = "markdown")]
        format: String,
        /// Verify rows from a JSON file instead of the builtin ones.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Partition categorifications of one fusion ring by their indicators.
    Rigidity {
        /// JSON list of category specs, or @path.
        #[arg(long)]
        specs: String,
        /// Compare k = 1..kmax, or 'auto' for the common period.
        #[arg(long, default_value = "auto")]
        kmax: String,
    },
    /// Brute-force indicators of Rep(AGL_1(F_q)) against the closed formula.
    Agl {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 12)]
        kmax: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalPath {
    Center,
    Closed,
    Both,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = tolerance(cli.tolerance).and_then(|tol| run(cli.command, tol));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let value = match flag {
        Some(t) => t,
        None => match std::env::var("FI_TOLERANCE") {
            Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("FI_TOLERANCE={s:?} is not a number")))?,
            Err(_) => DEFAULT_TOLERANCE,
        },
    };
    if value > 0.0 && value <= MAX_TOLERANCE {
        Ok(value)
    } else {
        Err(Failure::Usage(format!("tolerance {value} outside (0, {MAX_TOLERANCE}]")))
    }
}

fn run(command: Command, tol: f64) -> CliResult {
    match command {
        Command::Gauss { group, form, scale } => cmd_gauss(&group, &form.join(" "), scale),
        Command::Indicators { spec, row, kmax, path } => cmd_indicators(spec, row, &kmax, path, tol),
        Command::VerifyTables { table, format, rows } => cmd_verify_tables(table, &format, rows, tol),
        Command::Rigidity { specs, kmax } => cmd_rigidity(&specs, &kmax),
        Command::Agl { q, kmax } => cmd_agl(q, kmax, tol),
    }
}

/// Reads `@path` arguments from disk; anything else is taken literally.
fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &impl serde::Serialize) -> CliResult {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?));
    Ok(())
}

/// Fixed-point with at most 12 decimals and no trailing zeros.
fn fmt_num(x: f64) -> String {
    let s = format!("{:.12}", clean(x));
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}

fn recognize_phase(z: Complex64) -> Option<QZValue> {
    if (z.norm() - 1.0).abs() > 1e-9 {
        return None;
    }
    let t = z.arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU;
    (1..=720u64).find_map(|d| {
        let n = (t * d as f64).round();
        ((t - n / d as f64).abs() < 1e-10).then(|| QZValue::new(n as i64, d))
    })
}

fn cmd_gauss(group: &str, form: &str, scale: i64) -> CliResult {
    let group: FiniteAbelianGroup = serde_json::from_str(&read_arg(group)?)?;
    let text = form.trim();
    let q = if text.starts_with('{') {
        let mut v: Value = serde_json::from_str(text)?;
        if v.get("group").is_none() {
            v["group"] = serde_json::to_value(&group)?;
        }
        let spec: FormSpec = serde_json::from_value(v)?;
        let q = QuadraticForm::try_from(spec)?;
        if q.group() != &group {
            return Err(Failure::Usage(format!("form is on {}, --group is {group}", q.group())));
        }
        q
    } else {
        let text = text.strip_prefix("monomial").unwrap_or(text).trim();
        QuadraticForm::parse(group, text)?
    };
    let theta = q.scale(scale).gauss_sum();
    let mut text = format!("{} {}\n", fmt_num(theta.re), fmt_num(theta.im));
    if let Some(phase) = recognize_phase(theta) {
        text.push_str(&format!("# phase {phase}\n"));
    }
    emit(&text);
    Ok(())
}

fn builtin_row(id: &str) -> Result<TableRow, Failure> {
    let (table, row) =
        id.split_once(':').ok_or_else(|| Failure::Usage(format!("row {id:?} should look like ng9:1")))?;
    let row: usize = row.parse().map_err(|_| Failure::Usage(format!("bad row number in {id:?}")))?;
    tables::select_rows(Some(table))?
        .into_iter()
        .find(|r| r.row_id == row)
        .ok_or_else(|| Failure::Usage(format!("table {table} has no row {row}")))
}

fn resolve_kmax(kmax: &str, period: u64) -> Result<u64, Failure> {
    if kmax == "auto" {
        return Ok(period);
    }
    match kmax.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(Failure::Usage(format!("--kmax must be a positive integer or 'auto', got {kmax:?}"))),
    }
}

fn cmd_indicators(spec: Option<String>, row: Option<String>, kmax: &str, path: EvalPath, tol: f64) -> CliResult {
    let spec: CategorySpec = match (spec, row) {
        (Some(s), _) => serde_json::from_str(&read_arg(&s)?)?,
        (None, Some(r)) => builtin_row(&r)?.spec,
        (None, None) => return Err(Failure::Usage("one of --spec or --row is required".into())),
    };
    let (calibrated, orientation) = spec.calibrate()?;
    let center = calibrated.raw_center()?;
    let period = indicator_period(&calibrated, &center);
    let kmax = resolve_kmax(kmax, period)?;
    let rho = calibrated.rho_label();

    let mut values = Vec::with_capacity(kmax as usize);
    let mut worst = 0.0f64;
    for k in 1..=kmax {
        let entry = match path {
            EvalPath::Center => {
                let z = center.nu(&rho, k as i64)?;
                json!({"k": k, "re": clean(z.re), "im": clean(z.im)})
            }
            EvalPath::Closed => {
                let z = indicators::nu_closed(&calibrated, k)?;
                json!({"k": k, "re": clean(z.re), "im": clean(z.im)})
            }
            EvalPath::Both => {
                let a = center.nu(&rho, k as i64)?;
                let b = indicators::nu_closed(&calibrated, k)?;
                let dev = (a - b).norm();
                worst = worst.max(dev);
                json!({
                    "k": k,
                    "re": clean(a.re),
                    "im": clean(a.im),
                    "closed_re": clean(b.re),
                    "closed_im": clean(b.im),
                    "deviation": dev,
                })
            }
        };
        values.push(entry);
    }
    let mut out = json!({
        "category": calibrated,
        "orientation": orientation,
        "period": period,
        "values": values,
    });
    if path == EvalPath::Both {
        out["max_deviation"] = json!(worst);
    }
    print_json(&out)?;
    if worst >= tol {
        return Err(Failure::Verification(format!("center and closed form differ by {worst:e}")));
    }
    Ok(())
}

fn cmd_verify_tables(table: Option<String>, format: &str, rows: Option<String>, tol: f64) -> CliResult {
    let format: ReportFormat = format.parse()?;
    let rows: Vec<TableRow> = match rows {
        Some(path) => {
            let all: Vec<TableRow> = serde_json::from_str(&read_arg(&format!("@{}", path.trim_start_matches('@')))?)?;
            match &table {
                Some(id) => all.into_iter().filter(|r| &r.table_id == id).collect(),
                None => all,
            }
        }
        None => tables::select_rows(table.as_deref())?,
    };
    let reports = tables::verify_all(&rows, tol)?;
    emit(&tables::emit_report(&reports, format)?);
    let failed: Vec<String> =
        reports.iter().filter(|r| !r.pass).map(|r| format!("{}:{}", r.table_id, r.row_id)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} of {} rows: {}", failed.len(), reports.len(), failed.join(", "))))
    }
}

fn cmd_rigidity(specs: &str, kmax: &str) -> CliResult {
    let specs: Vec<CategorySpec> = serde_json::from_str(&read_arg(specs)?)?;
    let horizon = match kmax {
        "auto" => None,
        other => Some(resolve_kmax(other, 1)?),
    };
    let report = indicators::rigidity_report_upto(&specs, None, horizon)?;
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|class| {
            Value::Array(
                class
                    .iter()
                    .map(|&i| json!({"index": i, "label": specs[i].label(), "spec": specs[i].describe()}))
                    .collect(),
            )
        })
        .collect();
    print_json(&json!({
        "period": report.period,
        "compared_up_to": report.horizon,
        "classes": classes,
        "separations": report.separations,
    }))
}

fn cmd_agl(q: u64, kmax: u64, tol: f64) -> CliResult {
    let group = indicators::build_agl(q)?;
    if let Some(note) = indicators::agl_degeneracy_note(q) {
        eprintln!("warning: {note}");
    }
    let p = group.field.characteristic();
    let g = FiniteAbelianGroup::cyclic(q - 1)?;
    let mut text = String::from("k\tbruteforce\tclosed\tdeviation\n");
    let mut worst = 0.0f64;
    for k in 1..=kmax {
        let brute = nu_agl_bruteforce(q, k)?;
        let closed = nu_ng1_closed(&g, p, QZValue::zero(), k)?;
        let brute_f = *brute.numer() as f64 / *brute.denom() as f64;
        let dev = (closed - brute_f).norm();
        worst = worst.max(dev);
        text.push_str(&format!("{k}\t{brute}\t{}\t{}\n", fmt_num(closed.re), fmt_num(dev)));
    }
    emit(&text);
    if worst >= tol {
        return Err(Failure::Verification(format!("brute force and closed form differ by {worst:e}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-1e-15), "0");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-2.302775637732), "-2.302775637732");
    }

    #[test]
    fn phases() {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * 5.0 / 12.0);
        assert_eq!(recognize_phase(z), Some(QZValue::new(5, 12)));
        assert_eq!(recognize_phase(Complex64::new(2.0, 0.0)), None);
    }

    #[test]
    fn kmax_parsing() {
        assert_eq!(resolve_kmax("auto", 21).ok(), Some(21));
        assert_eq!(resolve_kmax("5", 21).ok(), Some(5));
        assert!(resolve_kmax("0", 21).is_err());
        assert!(resolve_kmax("x", 21).is_err());
    }

    #[test]
    fn tolerance_bounds() {
        assert_eq!(tolerance(Some(1e-6)).ok(), Some(1e-6));
        assert!(tolerance(Some(-1.0)).is_err());
        assert!(tolerance(Some(1e-2)).is_err());
    }
}
