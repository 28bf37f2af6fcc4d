//! `ga`: batch front end for the gamble algebra.
//!
//! Exit status 0 on success, 1 when a law check fails (the failing records
//! are printed as JSON lines), 2 on malformed input.

mod problem;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gamble_algebra::algebra::{combine, extract, Desirability};
use gamble_algebra::atoms::extend_to_maximal;
use gamble_algebra::axioms::{axiom_suite, separoid_suite, Report};
use gamble_algebra::labeled::{labeled_suite, LabeledAlgebra};
use gamble_algebra::multivariate::multivariate_suite;
use gamble_algebra::partition::{cond_independent, independent};
use gamble_algebra::random::Sampler;
use gamble_algebra::{Partition, PhiElement, Rational, VariableSystem};
use serde_json::json;

use problem::{Input, InputError, Problem};

const DEFAULT_MAX_DIM: usize = 12;

#[derive(Parser)]
#[command(
    name = "ga",
    version,
    about = "Exact algebra of coherent sets of desirable gambles"
)]
struct Cli {
    /// JSON problem file with the space or variable system and named objects
    #[arg(long, global = true, value_name = "FILE")]
    space_file: Option<PathBuf>,
    /// Seed for the random corpus of `axioms`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Corpus size for `axioms`
    #[arg(long, global = true, default_value_t = 50)]
    count: usize,
    /// Write the output here instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

/// One script entry: the same commands, without the binary name.
#[derive(Parser)]
#[command(no_binary_name = true)]
struct Line {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Clone, Debug)]
enum Cmd {
    /// Print `coherent` or `contradictory` for the closure of a set
    Coherence { set: String },
    /// Combine the closures of two sets
    Combine { a: String, b: String },
    /// Extract the information a set carries about a partition
    Extract { x: String, set: String },
    /// Move a labeled piece to another label
    Transport { y: String, piece: String },
    /// Independence of partitions, optionally given another
    Independence {
        #[arg(required = true)]
        parts: Vec<String>,
        #[arg(long)]
        given: Option<String>,
    },
    /// Whether two partitions commute
    Commutes { x: String, y: String },
    /// Maximal sets
    Atoms {
        #[command(subcommand)]
        command: AtomsCmd,
    },
    /// Run the law suites on a random corpus (2x2 system by default)
    Axioms,
    /// Run the commands listed under "script" in the problem file
    Script,
}

#[derive(Subcommand, Clone, Debug)]
enum AtomsCmd {
    /// A maximal set containing the set and excluding the gamble
    Separate { set: String, gamble: String },
}

struct Options {
    seed: u64,
    count: usize,
}

/// Output lines, and whether some law failed.
#[derive(Default)]
struct Output {
    lines: Vec<String>,
    failed: bool,
}

fn bool_line(b: bool) -> String {
    b.to_string()
}

fn element_line(p: &PhiElement) -> String {
    p.to_json().to_string()
}

fn execute(cmd: &Cmd, problem: &mut Problem, opts: &Options, out: &mut Output) -> Input<()> {
    match cmd {
        Cmd::Coherence { set } => {
            let verdict = if problem.element(set)?.is_top() {
                "contradictory"
            } else {
                "coherent"
            };
            out.lines.push(verdict.to_string());
        }
        Cmd::Combine { a, b } => {
            let (a, b) = (problem.element(a)?, problem.element(b)?);
            out.lines.push(element_line(&combine(&a, &b)?));
        }
        Cmd::Extract { x, set } => {
            let d = problem.element(set)?;
            let x = problem.partition(x)?;
            out.lines.push(element_line(&extract(&x, &d)?));
        }
        Cmd::Transport { y, piece } => {
            let (content, label) = problem.piece(piece)?;
            let y = problem.partition(y)?;
            let q = problem.questions(&[label.clone(), y.clone()])?;
            let alg = LabeledAlgebra::new(&q);
            let moved = alg.transport(&y, &alg.piece(content, label)?)?;
            out.lines
                .push(serde_json::to_string(&moved).expect("pieces serialise"));
        }
        Cmd::Independence { parts, given } => {
            let ps: Vec<Partition> = parts
                .iter()
                .map(|p| problem.partition(p))
                .collect::<Input<_>>()?;
            let refs: Vec<&Partition> = ps.iter().collect();
            let holds = match given {
                Some(z) => cond_independent(&refs, &problem.partition(z)?)?,
                None => independent(&refs)?,
            };
            out.lines.push(bool_line(holds));
        }
        Cmd::Commutes { x, y } => {
            let (x, y) = (problem.partition(x)?, problem.partition(y)?);
            out.lines.push(bool_line(x.commutes(&y)?));
        }
        Cmd::Atoms {
            command: AtomsCmd::Separate { set, gamble },
        } => {
            let p = problem.element(set)?;
            let f = problem.gamble(gamble)?;
            let m = extend_to_maximal(&p, &f)?;
            out.lines
                .push(serde_json::to_string(&m).expect("chains serialise"));
        }
        Cmd::Axioms => axioms(problem, opts, out)?,
        Cmd::Script => {
            let script = std::mem::take(&mut problem.script);
            for (i, entry) in script.iter().enumerate() {
                let at = format!("script[{i}]");
                let line = Line::try_parse_from(entry)
                    .map_err(|e| InputError::new(first_line(&e.to_string())).at(&at))?;
                if matches!(line.command, Cmd::Script) {
                    return Err(InputError::new("scripts cannot run scripts").at(&at));
                }
                execute(&line.command, problem, opts, out).map_err(|e| e.at(&at))?;
            }
            problem.script = script;
        }
    }
    Ok(())
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn axioms(problem: &Problem, opts: &Options, out: &mut Output) -> Input<()> {
    let space = problem
        .space()
        .ok_or_else(|| InputError::new("the space is unknown"))?;
    let q = problem.questions(&[])?;
    let mut sampler = Sampler::new(opts.seed);
    let corpus: Vec<PhiElement> = sampler.corpus(space, opts.count, 3);

    let mut report = Report::default();
    report.extend(separoid_suite(&q)?);
    report.extend(axiom_suite(&Desirability::new(space), &q, &corpus)?);
    let alg = LabeledAlgebra::new(&q);
    let pieces = (0..opts.count)
        .map(|_| {
            let (d, x) = sampler.supported::<Rational>(&q, 3);
            alg.piece(d, x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    report.extend(labeled_suite(&alg, &pieces)?);
    if let Some(sys) = problem.system() {
        report.extend(multivariate_suite(sys, &corpus)?);
    }

    for record in report.failures() {
        out.lines
            .push(serde_json::to_string(record).expect("records serialise"));
    }
    for (law, checked, failed) in report.summary() {
        out.lines
            .push(json!({"law": law, "checked": checked, "failed": failed}).to_string());
    }
    out.failed |= !report.all_passed();
    Ok(())
}

fn max_dim() -> Input<usize> {
    match std::env::var("GA_MAX_DIM") {
        Ok(v) => v.parse().map_err(|_| {
            InputError::new(format!("GA_MAX_DIM must be a positive integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn load(cli: &Cli, max_dim: usize) -> Input<Problem> {
    match &cli.space_file {
        Some(path) => {
            let source = path.display().to_string();
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError::new(e.to_string()).at(&source))?;
            Problem::parse(&source, &text, max_dim)
        }
        None if matches!(cli.command, Cmd::Axioms) => Ok(Problem::with_system(
            VariableSystem::new(vec![2, 2]).expect("fixed domains"),
        )),
        None if matches!(cli.command, Cmd::Script) => {
            Err(InputError::new("`script` needs --space-file"))
        }
        None => Ok(Problem::default()),
    }
}

fn run(cli: &Cli) -> Input<Output> {
    let max_dim = max_dim()?;
    let mut problem = load(cli, max_dim)?;
    let opts = Options {
        seed: cli.seed,
        count: cli.count,
    };
    let mut out = Output::default();
    execute(&cli.command, &mut problem, &opts, &mut out)?;
    problem.check_dim(max_dim)?;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("ga: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = out.lines.join("\n");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("ga: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
