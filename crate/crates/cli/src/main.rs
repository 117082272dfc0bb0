use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value as Json;

use gradinv_cli::run::{run_scenario, RunOptions, ScenarioReport, DEFAULT_CAP};
use gradinv_cli::scenario::{algebra_of, matrix_of, parse_scenario, series_of, Scenario, Task, TaskSpec, TraceSource};
use gradinv_cli::syntax::{parse_value, Pos};

/// Hilbert series of graded algebras and their invariant subrings.
#[derive(Parser)]
#[command(name = "gradinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation degree for brute-force traces and Betti tables.
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,
    /// Order N of the root of unity `z` in matrix literals.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    zeta_order: usize,
    /// Largest group the closure may produce.
    #[arg(long, global = true, value_name = "M", default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Closed form of the r-th Veronese section of a series.
    Veronese {
        series: String,
        r: usize,
        /// Degree bounds `P,Q` for the reconstruction cross-check.
        #[arg(long, value_parser = parse_pair)]
        bounds: Option<(usize, usize)>,
    },
    /// Cyclotomic factorization, symmetry and cyc number of a series.
    Cyc { series: String },
    /// Molien series of the group generated by the matrices.
    Molien {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Molien series with pole-order classification of every element.
    Classify {
        #[arg(required = true)]
        matrices: Vec<String>,
        /// GK dimension used for the pole orders (default: matrix size).
        #[arg(long)]
        gk: Option<usize>,
        /// Also classify every subgroup.
        #[arg(long)]
        subgroups: bool,
    },
    /// Subgroups of the group generated by the matrices.
    Subgroups {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Brute-force trace series of a matrix acting on an algebra.
    Trace {
        algebra: String,
        matrix: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Degree bounds `P,Q` for reconstructing the trace.
        #[arg(long, value_parser = parse_pair)]
        bounds: Option<(usize, usize)>,
    },
    /// Betti numbers of the trivial module over an algebra.
    Betti { algebra: String },
    /// Run scenario files and check their expected results.
    Run {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `P,Q`")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

const INPUT_ERROR: u8 = 2;
const MISMATCH: u8 = 1;

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(INPUT_ERROR)
}

fn located(what: &str, e: impl std::fmt::Display) -> String {
    format!("in {what}: {e}")
}

/// A scenario holding one task over literal inputs.
fn single(global: &Global, command: &Command) -> Result<Scenario, String> {
    let mut sc = Scenario::new("command line", global.zeta_order);
    let pos = Pos { line: 1, column: 1 };
    let group = |sc: &mut Scenario, mats: &[String]| -> Result<String, String> {
        let mut names = Vec::new();
        for (i, text) in mats.iter().enumerate() {
            let what = format!("matrix {}", i + 1);
            let v = parse_value(text).map_err(|e| located(&what, e))?;
            let m = matrix_of(&v, global.zeta_order).map_err(|e| located(&what, e))?;
            if let Some(first) = sc.matrices.values().next() {
                if first.rows() != m.rows() {
                    return Err(format!("{what} is {0}x{0}, expected {1}x{1}", m.rows(), first.rows()));
                }
            }
            let name = format!("g{}", i + 1);
            sc.matrices.insert(name.clone(), m);
            names.push(name);
        }
        sc.groups.insert("G".into(), names);
        Ok("G".into())
    };
    let algebra = |sc: &mut Scenario, text: &str| -> Result<String, String> {
        let v = parse_value(text).map_err(|e| located("algebra", e))?;
        sc.algebras.insert("A".into(), algebra_of(&v, global.zeta_order).map_err(|e| located("algebra", e))?);
        Ok("A".into())
    };
    let series = |sc: &mut Scenario, text: &str| -> Result<String, String> {
        sc.series.insert("H".into(), series_of(text, pos).map_err(|e| located("series", e))?);
        Ok("H".into())
    };
    let charpoly = TraceSource { algebra: None, truncation: None, bounds: None };
    let task = match command {
        Command::Veronese { series: s, r, bounds } => {
            if *r == 0 {
                return Err("r must be positive".into());
            }
            Task::Veronese { series: series(&mut sc, s)?, r: *r, bounds: *bounds }
        }
        Command::Cyc { series: s } => Task::Cyc { series: series(&mut sc, s)? },
        Command::Molien { matrices } => Task::Molien { group: group(&mut sc, matrices)?, traces: charpoly },
        Command::Classify { matrices, gk, subgroups } => {
            Task::Classify { group: group(&mut sc, matrices)?, traces: charpoly, gk: *gk, each_subgroup: *subgroups }
        }
        Command::Subgroups { matrices } => Task::Subgroups { group: group(&mut sc, matrices)? },
        Command::Trace { algebra: a, matrix, power, bounds } => {
            let a = algebra(&mut sc, a)?;
            let v = parse_value(matrix).map_err(|e| located("matrix", e))?;
            sc.matrices.insert("g".into(), matrix_of(&v, global.zeta_order).map_err(|e| located("matrix", e))?);
            Task::Trace { algebra: a, matrix: "g".into(), power: *power, truncation: None, bounds: *bounds }
        }
        Command::Betti { algebra: a } => {
            Task::Betti { algebra: algebra(&mut sc, a)?, truncation: None, ambient: None, omega_degree: None }
        }
        Command::Run { .. } => unreachable!("scenarios are parsed from files"),
    };
    sc.tasks.push(TaskSpec { task, pos, expect: None });
    Ok(sc)
}

fn render(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print_run(report: &ScenarioReport) {
    let (mut pass, mut fail) = (0, 0);
    for t in &report.tasks {
        let status = match t.status() {
            "pass" => {
                pass += 1;
                "PASS"
            }
            "fail" => {
                fail += 1;
                "FAIL"
            }
            _ => "----",
        };
        println!("{status}  {} {} (line {})", t.kind.as_str(), t.subject, t.pos.line);
        for m in &t.mismatches {
            println!("      {}: expected {}, got {}", m.field, m.expected, render(&m.actual));
        }
    }
    println!("{}: {} tasks, {pass} passed, {fail} failed", report.name, report.tasks.len());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { truncation: cli.global.truncation, cap: cli.global.cap };
    if cli.global.zeta_order == 0 {
        return input_error("--zeta-order must be positive");
    }

    if let Command::Run { scenarios } = &cli.command {
        let mut reports = Vec::new();
        let mut code = 0;
        for path in scenarios {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            let sc = match parse_scenario(&text) {
                Ok(sc) => sc,
                Err(errors) => {
                    for e in &errors.0 {
                        eprintln!("{}:{e}", path.display());
                    }
                    return ExitCode::from(INPUT_ERROR);
                }
            };
            let report = match run_scenario(&sc, &opts) {
                Ok(r) => r,
                Err(e) => return input_error(format!("{}:{e}", path.display())),
            };
            if !report.passed() {
                code = MISMATCH;
            }
            reports.push(report);
        }
        if cli.global.json {
            if let [one] = reports.as_slice() {
                print!("{}", one.to_json_string());
            } else {
                let all = Json::Array(reports.iter().map(ScenarioReport::to_json).collect());
                println!("{}", serde_json::to_string_pretty(&all).expect("reports serialize"));
            }
        } else {
            for r in &reports {
                print_run(r);
            }
        }
        return ExitCode::from(code);
    }

    let sc = match single(&cli.global, &cli.command) {
        Ok(sc) => sc,
        Err(e) => return input_error(e),
    };
    let report = match run_scenario(&sc, &opts) {
        Ok(r) => r,
        Err(e) => return input_error(e.message),
    };
    let result = &report.tasks[0].result;
    if cli.global.json {
        println!("{}", serde_json::to_string_pretty(result).expect("reports serialize"));
    } else {
        for (k, v) in result {
            println!("{k}: {}", render(v));
        }
    }
    ExitCode::SUCCESS
}
