use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pvtsi::{example_library, EXAMPLE_NAMES};
use pvtsi_cli::{
    emit_report, run_eval, run_study, CliError, ConfigFile, EvalConfig, OneOrMany, StudyConfig,
};

#[derive(Parser)]
#[command(name = "pvtsi", version, about = "Finite-part integrals by periodizing transformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative errors over a doubling ladder of n.
    Study(StudyArgs),
    /// A single estimate.
    Eval(EvalArgs),
    /// List the built-in examples.
    Examples,
}

#[derive(Args)]
struct ProblemArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in example name.
    #[arg(long)]
    example: Option<String>,
    /// Inline regular part g(x), e.g. "exp(x) * cos(x)".
    #[arg(long)]
    g: Option<String>,
    /// Pole order.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Endpoint exponent: g behaves like ((x-a)(b-x))^c at the ends.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Pole location.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// rational, tangent, tanh, korobov or sinp.
    #[arg(long)]
    transform: Option<String>,
    #[arg(long, env = "PVTSI_SUMMATION")]
    summation: Option<String>,
}

impl ProblemArgs {
    fn file(&self) -> Result<ConfigFile, CliError> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        Ok(base.overlay(ConfigFile {
            example: self.example.clone(),
            g: self.g.clone(),
            m: self.m,
            a: self.a,
            b: self.b,
            c: self.c,
            t: self.t,
            transform: self.transform.clone(),
            summation: self.summation.clone(),
            ..Default::default()
        }))
    }
}

#[derive(Args)]
struct StudyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Transform parameters (c for tanh), comma separated.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    /// Extrapolation levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<u32>>,
    #[arg(long)]
    n0: Option<u64>,
    #[arg(long)]
    doublings: Option<u32>,
    /// csv or markdown.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
    /// Also report the exact value and relative error.
    #[arg(long)]
    reference: bool,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

fn study(args: StudyArgs) -> Result<(), CliError> {
    let file = args.problem.file()?.overlay(ConfigFile {
        p: args.p.map(OneOrMany::Many),
        s: args.s.map(OneOrMany::Many),
        n0: args.n0,
        doublings: args.doublings,
        format: args.format,
        ..Default::default()
    });
    let cfg = StudyConfig::resolve(file)?;
    let text = emit_report(&run_study(&cfg)?, cfg.format);
    match args.output {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::ConfigFile {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn eval(args: EvalArgs) -> Result<(), CliError> {
    let file = args.problem.file()?.overlay(ConfigFile {
        p: args.p.map(OneOrMany::One),
        s: args.s.map(OneOrMany::One),
        ..Default::default()
    });
    let out = run_eval(&EvalConfig::resolve(file, args.n, args.reference)?)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(());
    }
    println!("value      {:.17e}", out.value);
    println!("m, s, n    {}, {}, {}", out.m, out.s, out.n);
    println!("node evals {}", out.node_evals);
    if let (Some(exact), Some(source), Some(err)) = (out.exact, out.exact_source, out.rel_error) {
        println!("exact      {exact:.17e} ({source})");
        println!("rel error  {err:.3e}");
    }
    Ok(())
}

fn examples() {
    for name in EXAMPLE_NAMES {
        let case = example_library(name).expect("listed example");
        println!("{name:8} {}", case.description);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Study(args) => study(args),
        Command::Eval(args) => eval(args),
        Command::Examples => {
            examples();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
