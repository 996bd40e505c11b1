//! `ytab`: exact limiting distributions of Young tableau entries.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ytab_core::involutions::{
    cell12_count, cell12_row, second_order_residual, InvolutionCountTable,
};
use ytab_core::oracle::{self, Suite};
use ytab_core::probabilities::{
    default_occupancy_cells, empirical_prob_subtableau, joint_table_12_13, limit_prob_collection,
    limit_prob_shapes, occupancy_table, prob_cell_equals, prob_cells_assignment, prob_two_columns,
    CellAssignment,
};
use ytab_core::quasirandom::{deviation, deviation_sampled, sandwich_check, BuiltinFamily};
use ytab_core::{Cell, Error, Limits, Partition, StandardTableau};

use output::{Envelope, Format};

#[derive(Parser)]
#[command(
    name = "ytab",
    version,
    about = "Exact limiting distributions of Young tableau entries"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format. Tables default to csv; everything else to plain.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Include a decimal rendering next to exact values in json output.
    #[arg(long, global = true)]
    decimal: bool,

    /// Largest tableau or involution size to enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_n)]
    max_n: usize,

    /// Largest k for which all k! permutations may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_k)]
    max_k: usize,

    /// Largest entry allowed in a cell assignment.
    #[arg(long, global = true, default_value_t = Limits::default().max_assignment)]
    max_assignment: usize,

    /// Largest number of subsequence patterns tracked at once.
    #[arg(long, global = true, default_value_t = Limits::default().max_patterns)]
    max_patterns: usize,

    /// Worker threads for sharded enumeration. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            max_n: self.max_n,
            max_k: self.max_k,
            max_assignment: self.max_assignment,
            max_patterns: self.max_patterns,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Limiting probabilities.
    #[command(subcommand)]
    Prob(ProbCommand),
    /// Exact counts of tableaux with a given entry in cell (1,2).
    #[command(subcommand)]
    Exact(ExactCommand),
    /// Probability tables.
    #[command(subcommand)]
    Table(TableCommand),
    /// Subsequence statistics of a permutation family.
    Quasirandom(QuasirandomArgs),
    /// Run a consistency suite.
    Oracle(OracleArgs),
}

#[derive(Subcommand)]
enum ProbCommand {
    /// Probability that cell (row,col) holds k.
    Cell {
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(long)]
        k: usize,
    },
    /// Probability of prescribed entries in prescribed cells, e.g. "(1,2)=2;(1,3)=3".
    Cells {
        #[arg(long)]
        assign: String,
    },
    /// Probability of a subtableau with one of the given shapes.
    Shapes {
        /// Semicolon-separated partitions, e.g. "2;1,1".
        #[arg(
            long,
            conflicts_with = "two_columns",
            required_unless_present = "two_columns"
        )]
        shapes: Option<String>,
        /// All k-cell shapes with at most two columns.
        #[arg(long)]
        two_columns: Option<usize>,
    },
    /// Probability of containing the tableau (or any of an array of tableaux) in a JSON file.
    Tableau {
        #[arg(long)]
        file: PathBuf,
    },
    /// Exact fraction of n-cell tableaux containing the tableau in a JSON file.
    Empirical {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ExactCommand {
    /// Number of n-cell tableaux with k in cell (1,2), or the table for n = 2..=n_max.
    F12 {
        #[arg(long, required_unless_present = "table")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        k: Option<i64>,
        #[arg(long, requires = "n_max")]
        table: bool,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Scaled second-order residual (f(n,k)/t_n − (k−1)/k!)·n^{3/2}.
    SecondOrder {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// P(cell holds k) for k = 2..=k_max.
    Occupancy {
        #[arg(long)]
        k_max: usize,
        /// Semicolon-separated cells; defaults to (1,2)..(1,6),(2,2),(2,3).
        #[arg(long)]
        cells: Option<String>,
    },
    /// P((1,2) holds r and (1,3) holds s).
    Joint {
        #[arg(long)]
        r_max: usize,
        #[arg(long)]
        s_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sample,
}

#[derive(Args)]
struct QuasirandomArgs {
    /// all, involutions or fixed-point-free.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Pattern length. Required unless --subset is given.
    #[arg(long, required_unless_present = "subset")]
    k: Option<usize>,
    /// Check the bounds for every ordering of this index set, e.g. "1,2,3".
    #[arg(long, conflicts_with = "k")]
    subset: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    suite: String,
    /// Size parameter for parseval and zset.
    #[arg(long)]
    k_max: Option<usize>,
    /// Size parameter for fform.
    #[arg(long)]
    n_max: Option<usize>,
    /// Involution size for sandwich.
    #[arg(long)]
    n: Option<usize>,
    /// Tableau size for theorem1.
    #[arg(long)]
    cells: Option<usize>,
}

enum Failure {
    Core(Error),
    OracleFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::OracleFailed) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let limits = g.limits();
    match &cli.command {
        Command::Prob(p) => prob(p, g, &limits),
        Command::Exact(e) => exact(e, g),
        Command::Table(t) => table(t, g, &limits),
        Command::Quasirandom(q) => quasirandom(q, g, &limits),
        Command::Oracle(o) => run_oracle(o, g, &limits),
    }
}

fn read_tableaux(path: &PathBuf) -> Result<Vec<StandardTableau>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let items = match value {
        Value::Array(items) => items,
        single => vec![single],
    };
    items
        .into_iter()
        .map(|v| StandardTableau::from_json(&v.to_string()))
        .collect()
}

fn parse_list<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<Vec<T>, Error> {
    s.split(';').map(|x| x.trim().parse()).collect()
}

fn prob(cmd: &ProbCommand, g: &Global, limits: &Limits) -> Result<String, Failure> {
    let env = match cmd {
        ProbCommand::Cell { row, col, k } => {
            if *row == 0 || *col == 0 || *k == 0 {
                return Err(Error::OutOfRange("row, col and k must be positive".into()).into());
            }
            Envelope::rational(
                "prob cell",
                json!({"row": row, "col": col, "k": k}),
                prob_cell_equals(*row, *col, *k),
            )
        }
        ProbCommand::Cells { assign } => {
            let a: CellAssignment = assign.parse()?;
            Envelope::rational(
                "prob cells",
                json!({"assign": a.to_string()}),
                prob_cells_assignment(&a, limits)?,
            )
        }
        ProbCommand::Shapes {
            shapes,
            two_columns,
        } => match (shapes, two_columns) {
            (_, Some(k)) => Envelope::rational(
                "prob shapes",
                json!({"two_columns": k}),
                prob_two_columns(*k),
            ),
            (Some(s), None) => {
                let list: Vec<Partition> = parse_list(s)?;
                let strings: Vec<String> = list.iter().map(|p| p.to_string()).collect();
                Envelope::rational(
                    "prob shapes",
                    json!({"shapes": strings}),
                    limit_prob_shapes(&list)?,
                )
            }
            (None, None) => unreachable!("clap requires one of the two"),
        },
        ProbCommand::Tableau { file } => {
            let ts = read_tableaux(file)?;
            let rows: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            Envelope::rational(
                "prob tableau",
                json!({"tableaux": rows}),
                limit_prob_collection(&ts)?,
            )
        }
        ProbCommand::Empirical { file, n } => {
            let ts = read_tableaux(file)?;
            let [t] = ts.as_slice() else {
                return Err(Error::Parse("expected a single tableau".into()).into());
            };
            Envelope::rational(
                "prob empirical",
                json!({"tableau": t.to_string(), "n": n}),
                empirical_prob_subtableau(*n, t, limits)?,
            )
        }
    };
    Ok(env.render(g.format.unwrap_or(Format::Plain), g.decimal))
}

fn exact(cmd: &ExactCommand, g: &Global) -> Result<String, Failure> {
    let format = g.format.unwrap_or(Format::Plain);
    match cmd {
        ExactCommand::F12 {
            table: true, n_max, ..
        } => {
            let n_max = n_max.expect("clap requires n_max");
            if n_max < 2 {
                return Err(Error::OutOfRange(format!("need n_max >= 2, got {n_max}")).into());
            }
            let rows: Vec<(usize, Vec<String>)> = (2..=n_max)
                .map(|n| (n, cell12_row(n).iter().map(|c| c.to_string()).collect()))
                .collect();
            Ok(output::render_f12_table(&rows, n_max, format))
        }
        ExactCommand::F12 { n, k, .. } => {
            let (n, k) = (n.expect("clap"), k.expect("clap"));
            if n < 2 {
                return Err(Error::OutOfRange(format!("need n >= 2, got {n}")).into());
            }
            let count = cell12_count(n, k)?;
            Ok(
                Envelope::integer("exact f12", json!({"n": n, "k": k}), count)
                    .render(format, g.decimal),
            )
        }
        ExactCommand::SecondOrder { n, k } => {
            let table = InvolutionCountTable::window(n.saturating_sub(2 * k), *n);
            let c = second_order_residual(&table, *n, *k)?;
            Ok(
                Envelope::float("exact second-order", json!({"n": n, "k": k}), c)
                    .render(format, g.decimal),
            )
        }
    }
}

fn table(cmd: &TableCommand, g: &Global, limits: &Limits) -> Result<String, Failure> {
    let (command, params, m) = match cmd {
        TableCommand::Occupancy { k_max, cells } => {
            let cells: Vec<Cell> = match cells {
                Some(s) => parse_list(s)?,
                None => default_occupancy_cells(),
            };
            let labels: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            (
                "table occupancy",
                json!({"k_max": k_max, "cells": labels}),
                occupancy_table(*k_max, &cells)?,
            )
        }
        TableCommand::Joint { r_max, s_max } => (
            "table joint",
            json!({"r_max": r_max, "s_max": s_max}),
            joint_table_12_13(*r_max, *s_max, limits)?,
        ),
    };
    Ok(output::render_matrix(
        command,
        params,
        &m,
        g.format.unwrap_or(Format::Csv),
        g.decimal,
    ))
}

fn quasirandom(args: &QuasirandomArgs, g: &Global, limits: &Limits) -> Result<String, Failure> {
    let family = args.family.parse::<BuiltinFamily>()?.family();
    let format = g.format.unwrap_or(Format::Plain);
    let mut params = json!({"family": family.name(), "n": args.n});
    if let Some(subset) = &args.subset {
        let subset: Vec<usize> = subset
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index set {subset:?}")))
            })
            .collect::<Result<_, _>>()?;
        params["subset"] = json!(subset);
        let r = sandwich_check(family, args.n, &subset, limits)?;
        let mut value = r.report.to_json();
        value["orderings"] = r
            .orderings
            .iter()
            .map(|(t, p)| json!({"pattern": t.values(), "ptilde": output::exact_string(p)}))
            .collect();
        value["b_sizes"] = json!(r.b_sizes);
        value["equal_b_sizes"] = json!(r.equal_b_sizes());
        value["passes"] = json!(r.passes());
        return Ok(Envelope::json("quasirandom", params, value, None).render(format, false));
    }
    let k = args.k.expect("clap requires k without subset");
    params["k"] = json!(k);
    let (report, seed) = match args.mode {
        Mode::Exact => {
            params["mode"] = json!("exact");
            (deviation(family, args.n, k, limits, g.jobs)?, None)
        }
        Mode::Sample => {
            params["mode"] = json!("sample");
            params["samples"] = json!(args.samples);
            let r = deviation_sampled(family, args.n, k, args.samples, args.seed, limits, g.jobs)?;
            (r, Some(args.seed))
        }
    };
    Ok(Envelope::json("quasirandom", params, report.to_json(), seed).render(format, false))
}

fn run_oracle(args: &OracleArgs, g: &Global, limits: &Limits) -> Result<String, Failure> {
    let suite: Suite = args.suite.parse()?;
    let size = match suite {
        Suite::Parseval | Suite::ZSet => args.k_max,
        Suite::FForm => args.n_max,
        Suite::Sandwich => args.n,
        Suite::Convergence => args.cells,
    };
    let report = oracle::run(suite, size, limits)?;
    let failures: Vec<Value> = report
        .failures()
        .map(|c| json!({"check": c.name, "counterexample": c.counterexample}))
        .collect();
    let passed = report.passed();
    let text = match g.format.unwrap_or(Format::Plain) {
        Format::Json => {
            let value = json!({
                "suite": suite.name(),
                "passed": passed,
                "checks": report.checks.len(),
                "failures": failures,
            });
            Envelope::json(
                "oracle",
                json!({"suite": suite.name(), "size": size}),
                value,
                None,
            )
            .render(Format::Json, false)
        }
        _ => {
            let mut s = String::new();
            for c in report.failures() {
                s += &format!(
                    "FAIL {}: {}\n",
                    c.name,
                    c.counterexample.as_deref().unwrap_or("")
                );
            }
            s += &format!(
                "{} {}: {} checks, {} failed\n",
                if passed { "PASS" } else { "FAIL" },
                suite,
                report.checks.len(),
                failures.len()
            );
            s
        }
    };
    if passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::OracleFailed)
    }
}
