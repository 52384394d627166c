use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schubert_core::algebra::Rational;
use schubert_core::combinatorics::{enumerate_necklaces, FlagType, Label, Necklace, SchubertData};
use schubert_core::harness::{
    assign_by_necklace, builtin_scenarios, load_checkpoint, problem_degree, run_experiment_with,
    run_scenarios, sidecar_path, ExperimentConfig, MonotoneViolation, ReportFormat, RoundOutcome,
    RunControl,
};
use schubert_core::model::{build_instance, condition_labels};
use schubert_core::solver::{solve_instance, SolveOptions};
use schubert_core::Error;

// Writes to stdout without panicking when the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Construct, solve and tabulate Schubert problems given by osculating flags.
#[derive(Parser)]
#[command(name = "schubert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List W^a for a flag type, or the necklaces of a problem.
    Enumerate(ProblemArgs),
    /// Degree of a problem: Pieri chain count, else one solved generic instance.
    Degree {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        seed: Option<u64>,
        /// Solve a generic instance even when the chain count is known.
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        json: bool,
    },
    /// Execute an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        iterations: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Continue from the checkpoint next to the output file.
        #[arg(long)]
        resume: bool,
        /// Stop after this many rounds in total.
        #[arg(long)]
        stop_after: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Run the built-in scenarios.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only scenarios whose name contains this.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Render the table stored in a checkpoint.
    Report {
        /// Output CSV of a run, or its sidecar state file.
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build and solve one instance at given points.
    Instance {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Comma-separated distinct nonzero rationals.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Assign conditions to the sorted points by this necklace.
        #[arg(long)]
        necklace: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        expected_degree: Option<usize>,
        /// Print the polynomial system too.
        #[arg(long)]
        system: bool,
    },
}

#[derive(Args)]
struct ProblemArgs {
    /// Experiment config to take the problem from.
    #[arg(long, conflicts_with_all = ["flag_type", "data"])]
    config: Option<PathBuf>,
    /// Flag type as `a_1,...,a_k;n`.
    #[arg(long)]
    flag_type: Option<String>,
    /// Conditions such as `13245^4 12435^4`.
    #[arg(long)]
    data: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

enum Problem {
    FlagType(FlagType),
    Data(SchubertData),
}

impl ProblemArgs {
    fn resolve(&self) -> Result<Problem, Error> {
        if let Some(path) = &self.config {
            return Ok(Problem::Data(
                ExperimentConfig::load(path)?.schubert_data()?,
            ));
        }
        let ft: FlagType = self
            .flag_type
            .as_deref()
            .ok_or_else(|| Error::Config("give --config or --flag-type".into()))?
            .parse()?;
        match &self.data {
            Some(d) => Ok(Problem::Data(SchubertData::parse(ft, d)?)),
            None => Ok(Problem::FlagType(ft)),
        }
    }

    fn data(&self) -> Result<SchubertData, Error> {
        match self.resolve()? {
            Problem::Data(d) => Ok(d),
            Problem::FlagType(_) => Err(Error::Config("this command needs --data".into())),
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Enumerate(p) => enumerate(&p),
        Command::Degree {
            problem,
            seed,
            solve,
            json,
        } => degree(&problem.data()?, seed.unwrap_or(0), solve, json),
        Command::Run {
            config,
            seed,
            iterations,
            workers,
            output,
            resume,
            stop_after,
            format,
            quiet,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(i) = iterations {
                cfg.iterations = i;
            }
            if let Some(w) = workers {
                cfg.worker_count = w;
            }
            if output.is_some() {
                cfg.output_path = output;
            }
            cfg.validate()?;
            run(&cfg, resume, stop_after, format.into(), quiet)
        }
        Command::Verify { seed, only, list } => verify(seed, only.as_deref(), list),
        Command::Report { output, format } => {
            let csv = match output.to_string_lossy().strip_suffix(".state.json") {
                Some(stem) => PathBuf::from(stem),
                None => output.clone(),
            };
            if !sidecar_path(&csv).exists() {
                return Err(Error::Config(format!(
                    "no checkpoint at {}",
                    sidecar_path(&csv).display()
                )));
            }
            let cp = load_checkpoint(&csv)?;
            out!("{}", cp.table.report(format.into()));
            eprintln!("{} of {} rounds done", cp.next_round, cp.config.iterations);
            Ok(ExitCode::SUCCESS)
        }
        Command::Instance {
            problem,
            points,
            necklace,
            seed,
            expected_degree,
            system,
        } => instance(
            &problem.data()?,
            &points,
            necklace.as_deref(),
            seed,
            expected_degree,
            system,
        ),
    }
}

fn enumerate(p: &ProblemArgs) -> Result<ExitCode, Error> {
    match p.resolve()? {
        Problem::FlagType(ft) => {
            let wa = ft.enumerate_wa();
            outln!(
                "W^a for Fl({ft}): {} permutations, dim {}",
                wa.len(),
                ft.dimension()
            );
            for w in wa {
                let desc: Vec<String> = w.descents().iter().map(usize::to_string).collect();
                outln!(
                    "{w}  length {}  descents {{{}}}",
                    w.length(),
                    desc.join(",")
                );
            }
        }
        Problem::Data(sd) => {
            if !sd.is_valid() {
                return Err(Error::InvalidSchubertData(format!(
                    "lengths sum to {}, not dim {}",
                    sd.total_length(),
                    sd.flag_type().dimension()
                )));
            }
            let mut content = BTreeMap::<Label, usize>::new();
            for l in condition_labels(&sd) {
                *content.entry(l).or_insert(0) += 1;
            }
            let nks = enumerate_necklaces(&content);
            outln!(
                "{} on Fl({}): {} necklaces",
                sd.compact(),
                sd.flag_type(),
                nks.len()
            );
            for nk in nks {
                outln!("{nk}{}", if nk.is_monotone() { "  monotone" } else { "" });
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn degree(sd: &SchubertData, seed: u64, solve: bool, json: bool) -> Result<ExitCode, Error> {
    let r = problem_degree(sd, seed, solve)?;
    if json {
        outln!("{}", serde_json::to_string_pretty(&r)?);
        return Ok(ExitCode::SUCCESS);
    }
    match r.degree() {
        Some(d) => outln!("{d}"),
        None => outln!("unknown"),
    }
    if let Some(c) = r.chain_count {
        eprintln!("Pieri chain count {c}");
    }
    if let Some(status) = r.status {
        eprintln!(
            "generic instance at [{}]: {status}, quotient dimension {}, {} real",
            r.points.join(", "),
            r.quotient_dimension
                .and_then(|q| q.finite())
                .map_or("infinite".into(), |d| d.to_string()),
            r.real_count.map_or("?".into(), |c| c.to_string())
        );
    }
    Ok(if r.degree().is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(
    cfg: &ExperimentConfig,
    resume: bool,
    stop_after: Option<u64>,
    format: ReportFormat,
    quiet: bool,
) -> Result<ExitCode, Error> {
    let total = cfg.iterations;
    let mut on_round = |outcome: &RoundOutcome, flagged: &[MonotoneViolation]| {
        for v in flagged {
            eprintln!(
                "!!! MONOTONE VIOLATION: round {} necklace {} has {} real solutions at points [{}]",
                v.round,
                v.necklace,
                v.real_count,
                v.points.join(", ")
            );
        }
        if !quiet {
            eprintln!("round {}/{total} done", outcome.round + 1);
        }
    };
    let table = run_experiment_with(
        cfg,
        RunControl {
            resume,
            stop_after,
            on_round: Some(&mut on_round),
        },
    )?;
    out!("{}", table.report(format));
    if let Some(out) = &cfg.output_path {
        eprintln!("table written to {}", out.display());
    }
    if !table.violations.is_empty() {
        eprintln!(
            "!!! {} monotone instance(s) had fewer than {} real solutions",
            table.violations.len(),
            table.degree
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(seed: u64, only: Option<&str>, list: bool) -> Result<ExitCode, Error> {
    if list {
        for s in builtin_scenarios() {
            outln!("{}: {}", s.name, s.description);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let reports = run_scenarios(seed, only);
    if reports.is_empty() {
        return Err(Error::Config(format!(
            "no scenario matches {:?}",
            only.unwrap_or("")
        )));
    }
    let mut ok = true;
    for r in &reports {
        outln!(
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        ok &= r.passed;
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn instance(
    sd: &SchubertData,
    points: &str,
    necklace: Option<&str>,
    seed: Option<u64>,
    expected: Option<usize>,
    system: bool,
) -> Result<ExitCode, Error> {
    let mut pts = points
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|e| Error::Parse(format!("point {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inst = match necklace {
        Some(nk) => {
            pts.sort();
            assign_by_necklace(&nk.parse::<Necklace>()?, sd, &pts)?
        }
        None => build_instance(sd, &pts)?,
    };
    if system {
        out!("{}", inst.to_text());
    }
    let res = solve_instance(
        &inst,
        expected,
        &SolveOptions {
            seed: seed.unwrap_or(0),
            ..Default::default()
        },
    )?;
    outln!("{}", serde_json::to_string_pretty(&res.record(true))?);
    Ok(ExitCode::SUCCESS)
}
