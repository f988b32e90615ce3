//! `ordsched` command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property is false, 2 bad usage or input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use ordsched::lowerbounds::{
    adversary_for_solutions, proposition_inputs, single_solution_lp_bound, table1,
    two_solution_game_value, GameOptions, InputClass, LpResult,
};
use ordsched::oracle::optimal_makespan_with_limit;
use ordsched::patterns::{builtin_pair, pair_evaluate, solution_type, AssignmentRule, Evaluation};
use ordsched::verify::{
    competitive_ratio, competitive_ratio_with_limit, proof_inequality_report, stress_search,
    tightness_instance,
};
use ordsched::{Rational, Realization, SolutionPair};
use serde::{Deserialize, Serialize};

const DECIMAL_DIGITS: usize = 6;

#[derive(Parser)]
#[command(name = "ordsched", version, about = "Two-solution ordinal makespan scheduling")]
struct Cli {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Loads and makespans of both solutions of a pair.
    Eval {
        #[arg(long)]
        m: usize,
        /// `builtin` or a pair JSON file.
        #[arg(long, default_value = "builtin")]
        pair: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact optimal makespan with a witness schedule.
    Opt {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        input: PathBuf,
        /// Largest number of positive jobs searched exhaustively.
        #[arg(long, default_value_t = ordsched::oracle::DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
    /// Exact ratio of the pair makespan to the optimum.
    Ratio {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "builtin")]
        pair: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = ordsched::oracle::DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
    /// Load inequalities used by the upper-bound proofs.
    Ineq {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Worst ratio of the built-in pair over seeded random realizations.
    Stress {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        bound: Option<Rational>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Exact value of the two-solution game on a set of inputs.
    GameLb {
        #[arg(long)]
        m: usize,
        /// JSON list of realizations; defaults to the built-in inputs for `m`.
        #[arg(long)]
        inputs: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        allow_long: bool,
    },
    /// Single-solution lower bound for one `m`.
    LpLb {
        #[arg(long)]
        m: usize,
    },
    /// Single-solution lower bounds for a range of `m`.
    Table1 {
        #[arg(long, default_value_t = 5)]
        from: usize,
        #[arg(long, default_value_t = 17)]
        to: usize,
    },
    /// Two-machine instance defeating every given solution.
    Adversary {
        #[arg(long)]
        solutions: PathBuf,
    },
    /// Ratio of the built-in pair on a tightness instance.
    Tightness {
        #[arg(long)]
        m: usize,
        #[arg(long = "K")]
        k: usize,
    },
}

/// Successful run; `violated` selects exit code 1.
struct Outcome {
    text: String,
    violated: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, violated: false }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let line = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    let format = if cli.csv { Format::Csv } else { Format::Json };
    match run(&cli, format) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            if out.violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// A realization file holds `{"sizes": [...]}` or a bare list of sizes.
#[derive(Deserialize)]
#[serde(untagged)]
enum RealizationFile {
    Object { sizes: Vec<Rational> },
    List(Vec<Rational>),
}

impl RealizationFile {
    fn into_realization(self) -> Result<Realization> {
        let sizes = match self {
            RealizationFile::Object { sizes } | RealizationFile::List(sizes) => sizes,
        };
        Ok(Realization::new(sizes)?)
    }
}

fn read_realization(path: &Path) -> Result<Realization> {
    let file: RealizationFile = read_json(path)?;
    file.into_realization()
        .with_context(|| format!("{}", path.display()))
}

fn load_pair(spec: &str, m: usize) -> Result<SolutionPair> {
    let pair = if spec == "builtin" {
        builtin_pair(m)?
    } else {
        read_json::<SolutionPair>(Path::new(spec))?
    };
    if pair.m() != m {
        bail!("pair is for m = {} but --m is {m}", pair.m());
    }
    Ok(pair)
}

fn run(cli: &Cli, format: Format) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { m, pair, input } => eval(format, *m, pair, input),
        Command::Opt { m, input, limit } => opt(format, *m, input, *limit),
        Command::Ratio { m, pair, input, limit } => ratio(format, *m, pair, input, *limit),
        Command::Ineq { m, input } => ineq(format, *m, input),
        Command::Stress { m, bound, trials, max_n } => {
            stress(format, *m, bound.clone(), *trials, *max_n, cli.seed.unwrap_or(0))
        }
        Command::GameLb { m, inputs, k, allow_long } => {
            game(format, *m, inputs.as_deref(), *k, *allow_long)
        }
        Command::LpLb { m } => lp(format, &[single_solution_lp_bound(*m)?]),
        Command::Table1 { from, to } => lp(format, &table1(*from, *to)?),
        Command::Adversary { solutions } => adversary(format, solutions),
        Command::Tightness { m, k } => tightness(format, *m, *k),
    }
}

fn eval(format: Format, m: usize, pair: &str, input: &Path) -> Result<Outcome> {
    let pair = load_pair(pair, m)?;
    let r = read_realization(input)?;
    let e = pair_evaluate(&pair, &r);
    let text = match format {
        Format::Json => json(&e)?,
        Format::Csv => {
            let row = |name: &str, ev: &Evaluation| {
                vec![name.to_string(), ev.makespan.to_string(), join(&ev.loads)]
            };
            csv_text(
                &["solution", "makespan", "loads"],
                vec![
                    row("first", &e.first),
                    row("second", &e.second),
                    vec!["pair".into(), e.pair_makespan.to_string(), String::new()],
                ],
            )?
        }
    };
    Ok(Outcome::ok(text))
}

fn opt(format: Format, m: usize, input: &Path, limit: usize) -> Result<Outcome> {
    let r = read_realization(input)?;
    let res = optimal_makespan_with_limit(&r, m, limit)?;
    let text = match format {
        Format::Json => json(&res)?,
        Format::Csv => csv_text(
            &["lambda", "witness", "nodes_explored"],
            vec![vec![res.lambda.to_string(), join(&res.witness), res.nodes_explored.to_string()]],
        )?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct RatioOut {
    m: usize,
    ratio: Rational,
    decimal: String,
}

fn ratio(format: Format, m: usize, pair: &str, input: &Path, limit: usize) -> Result<Outcome> {
    let pair = load_pair(pair, m)?;
    let r = read_realization(input)?;
    let ratio = competitive_ratio_with_limit(&pair, &r, limit)?;
    let text = match format {
        Format::Json => json(&RatioOut { m, decimal: ratio.decimal(DECIMAL_DIGITS), ratio })?,
        Format::Csv => csv_text(
            &["m", "ratio", "decimal"],
            vec![vec![m.to_string(), ratio.to_string(), ratio.decimal(DECIMAL_DIGITS)]],
        )?,
    };
    Ok(Outcome::ok(text))
}

fn ineq(format: Format, m: usize, input: &Path) -> Result<Outcome> {
    let r = read_realization(input)?;
    let report = proof_inequality_report(m, &r)?;
    let text = match format {
        Format::Json => json(&report)?,
        Format::Csv => csv_text(
            &["label", "lhs", "rhs", "holds"],
            report
                .items
                .iter()
                .map(|i| vec![i.label.clone(), i.lhs.to_string(), i.rhs.to_string(), i.holds.to_string()])
                .collect(),
        )?,
    };
    Ok(Outcome { text, violated: !report.all_hold() })
}

fn stress(
    format: Format,
    m: usize,
    bound: Option<Rational>,
    trials: usize,
    max_n: usize,
    seed: u64,
) -> Result<Outcome> {
    let pair = builtin_pair(m)?;
    let bound = match bound {
        Some(b) => b,
        None => ordsched::verify::builtin_bound(m)?,
    };
    let res = stress_search(&pair, bound, trials, max_n, seed)?;
    let text = match format {
        Format::Json => json(&res)?,
        Format::Csv => csv_text(
            &["m", "trials", "battery", "max_ratio", "bound", "ok", "witness"],
            vec![vec![
                m.to_string(),
                res.trials.to_string(),
                res.battery.to_string(),
                res.max_ratio.to_string(),
                res.bound.to_string(),
                res.ok.to_string(),
                join(res.witness.sizes()),
            ]],
        )?,
    };
    Ok(Outcome { text, violated: !res.ok })
}

fn game(
    format: Format,
    m: usize,
    inputs: Option<&Path>,
    k: Option<usize>,
    allow_long: bool,
) -> Result<Outcome> {
    let (inputs, default_k) = match inputs {
        Some(path) => {
            let files: Vec<RealizationFile> = read_json(path)?;
            let inputs = files
                .into_iter()
                .map(RealizationFile::into_realization)
                .collect::<Result<Vec<_>>>()?;
            let k = inputs.iter().map(Realization::positive_len).max().unwrap_or(0);
            (inputs, k)
        }
        None => {
            let p = proposition_inputs(m)?;
            (p.inputs, p.k)
        }
    };
    let res = two_solution_game_value(m, &inputs, k.unwrap_or(default_k), GameOptions { allow_long })?;
    let cert = res.certificate();
    let text = match format {
        Format::Json => json(&cert)?,
        Format::Csv => csv_text(
            &["m", "k", "value", "decimal", "s1", "s2", "per_pair_checked"],
            vec![vec![
                cert.m.to_string(),
                cert.k.to_string(),
                cert.value.to_string(),
                cert.value.decimal(DECIMAL_DIGITS),
                res.witness.0.to_string(),
                res.witness.1.to_string(),
                cert.per_pair_checked.to_string(),
            ]],
        )?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct LpOut<'a> {
    m: usize,
    #[serde(rename = "R")]
    r: &'a Rational,
    decimal: String,
    truncated: bool,
    #[serde(rename = "A")]
    a: &'a Rational,
    #[serde(rename = "B")]
    b: &'a Rational,
    #[serde(rename = "R_raw")]
    r_raw: &'a Rational,
    choices: &'a [InputClass],
}

impl<'a> From<&'a LpResult> for LpOut<'a> {
    fn from(lp: &'a LpResult) -> Self {
        LpOut {
            m: lp.m,
            r: &lp.r,
            decimal: lp.r.decimal(DECIMAL_DIGITS),
            truncated: lp.truncated,
            a: &lp.a,
            b: &lp.b,
            r_raw: &lp.r_raw,
            choices: &lp.choices,
        }
    }
}

fn lp(format: Format, rows: &[LpResult]) -> Result<Outcome> {
    let text = match format {
        Format::Json if rows.len() == 1 => json(&LpOut::from(&rows[0]))?,
        Format::Json => json(&rows.iter().map(LpOut::from).collect::<Vec<_>>())?,
        Format::Csv => csv_text(
            &["m", "fraction", "decimal", "truncated"],
            rows.iter()
                .map(|lp| {
                    vec![
                        lp.m.to_string(),
                        lp.r.to_string(),
                        lp.r.decimal(DECIMAL_DIGITS),
                        lp.truncated.to_string(),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Outcome::ok(text))
}

fn adversary(format: Format, path: &Path) -> Result<Outcome> {
    let rules: Vec<AssignmentRule> = read_json(path)?;
    for rule in &rules {
        solution_type(rule)?;
    }
    let res = adversary_for_solutions(&rules)?;
    let text = match format {
        Format::Json => json(&res)?,
        Format::Csv => csv_text(
            &["solution", "type", "makespan", "ok"],
            res.checks
                .iter()
                .enumerate()
                .map(|(idx, c)| {
                    vec![
                        (idx + 1).to_string(),
                        c.solution_type.map_or("infinite".into(), |t| t.to_string()),
                        c.makespan.to_string(),
                        c.ok.to_string(),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Outcome { text, violated: !res.all_ok() })
}

#[derive(Serialize)]
struct TightnessOut {
    m: usize,
    #[serde(rename = "K")]
    k: usize,
    instance: Realization,
    ratio: Rational,
    decimal: String,
}

fn tightness(format: Format, m: usize, k: usize) -> Result<Outcome> {
    let instance = tightness_instance(m, k)?;
    let ratio = competitive_ratio(&builtin_pair(m)?, &instance)?;
    let text = match format {
        Format::Json => json(&TightnessOut {
            m,
            k,
            instance,
            decimal: ratio.decimal(DECIMAL_DIGITS),
            ratio,
        })?,
        Format::Csv => csv_text(
            &["m", "K", "ratio", "decimal"],
            vec![vec![m.to_string(), k.to_string(), ratio.to_string(), ratio.decimal(DECIMAL_DIGITS)]],
        )?,
    };
    Ok(Outcome::ok(text))
}
