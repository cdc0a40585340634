use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use starlab::analysis::{analyze, parallel_map, AnalysisConfig, AnalysisReport, Tallies, SCHEMA_VERSION};
use starlab::check::{CheckConfig, CheckResult};
use starlab::equivalence::EquivalenceSuite;
use starlab::fuzz::{fuzz, FuzzReport};
use starlab::gallery::gallery;
use starlab::polarity::{closed_lattice, OrthoSystem, RelationKind};
use starlab::semigroup::{from_spec, parse, SemigroupJson};
use starlab::{Error, StarSemigroup};

const EXIT_FAIL: u8 = 1;
const EXIT_UNMET: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "starlab", version, about = "Annihilator lattices and *-equivalence of finite *-semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a semigroup file
    Validate { path: PathBuf },
    /// Run every check and print a JSON report
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Options,
        /// Record per-section wall-clock times (the report is then not byte-stable)
        #[arg(long)]
        timing: bool,
    },
    /// Print the closed-set lattice of a relation as DOT
    Lattice {
        #[command(flatten)]
        input: Input,
        /// Relation: perp, L, R, nabla or bot4
        #[arg(long, default_value = "perp")]
        rel: String,
        /// Write the DOT text here instead of stdout
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = CheckConfig::default().lattice_cap)]
        lattice_cap: usize,
    },
    /// Compute the four type decompositions
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Options,
    },
    /// List the built-in instances
    Gallery,
    /// Analyze every gallery instance up to a size and run the fuzz harness
    CheckAll {
        #[arg(long, default_value_t = 512)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances (0 skips the fuzz run)
        #[arg(long, default_value_t = 1000)]
        fuzz: usize,
        #[arg(long, default_value_t = 6)]
        fuzz_max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict_hypotheses: bool,
        #[arg(long, default_value_t = 16)]
        exhaustive_cap: usize,
    },
}

#[derive(Args)]
struct Input {
    /// Semigroup file (text format, or JSON when the extension is .json)
    path: Option<PathBuf>,
    /// Generator spec such as zn:6, bool:2 or matring:2,3
    #[arg(long = "gen", conflicts_with = "path")]
    generator: Option<String>,
}

#[derive(Args)]
struct Options {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with 2 when some hypothesis is not met and nothing failed
    #[arg(long)]
    strict_hypotheses: bool,
    /// Largest carrier for exhaustive subset sweeps
    #[arg(long, default_value_t = 16)]
    exhaustive_cap: usize,
    /// Random subsets drawn above the exhaustive cap
    #[arg(long, default_value_t = CheckConfig::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on the number of closed sets in any lattice
    #[arg(long, default_value_t = CheckConfig::default().lattice_cap)]
    lattice_cap: usize,
}

impl Options {
    fn config(&self) -> CheckConfig {
        CheckConfig {
            samples: self.samples,
            seed: self.seed,
            exhaustive_cap: self.exhaustive_cap,
            lattice_cap: self.lattice_cap,
        }
    }
}

/// Failure that ends the run with a message and an exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(EXIT_INPUT, e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> Exit {
    Exit(EXIT_INPUT, msg.into())
}

fn load_path(path: &Path) -> Result<StarSemigroup, Exit> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let s = if path.extension().is_some_and(|x| x == "json") {
        let json: SemigroupJson = serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        json.to_semigroup()?
    } else {
        parse(&text)?
    };
    let stem = path.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(s.with_name(stem))
}

fn load(input: &Input) -> Result<StarSemigroup, Exit> {
    match (&input.path, &input.generator) {
        (Some(p), _) => load_path(p),
        (None, Some(g)) => Ok(from_spec(g)?),
        (None, None) => Err(input_error("give a semigroup file or --gen SPEC")),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Exit> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn exit_code<'a>(checks: impl IntoIterator<Item = &'a CheckResult>, strict: bool) -> u8 {
    let (mut failed, mut unmet) = (false, false);
    for c in checks {
        failed |= c.failed();
        unmet |= c.hypothesis_not_met();
    }
    if failed {
        EXIT_FAIL
    } else if strict && unmet {
        EXIT_UNMET
    } else {
        0
    }
}

fn threads() -> usize {
    std::env::var("STARLAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    schema_version: u32,
    semigroup: String,
    size: usize,
    decompositions: &'a starlab::decomposition::Decompositions,
}

#[derive(Serialize)]
struct InstanceSummary {
    spec: String,
    size: usize,
    proper: bool,
    totals: Tallies,
    failures: Vec<CheckResult>,
}

#[derive(Serialize)]
struct CheckAllReport {
    schema_version: u32,
    max_n: usize,
    seed: u64,
    instances: Vec<InstanceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fuzz: Option<FuzzReport>,
}

fn summarize(spec: &str, r: &AnalysisReport) -> InstanceSummary {
    InstanceSummary {
        spec: spec.to_string(),
        size: r.semigroup.size,
        proper: r.properness.proper,
        totals: r.totals.clone(),
        failures: r.failures().into_iter().cloned().collect(),
    }
}

fn run(cli: Cli) -> Result<u8, Exit> {
    match cli.command {
        Command::Validate { path } => {
            let s = load_path(&path)?;
            let p = s.is_proper();
            println!("valid: {} elements, zero {}, proper {}", s.len(), s.zero(), p.proper);
            Ok(0)
        }
        Command::Analyze { input, opts, timing } => {
            let s = load(&input)?;
            let cfg = AnalysisConfig { checks: opts.config(), timing };
            let report = analyze(&s, &cfg)?;
            emit(&report.to_json(), opts.out.as_deref())?;
            Ok(exit_code(report.checks(), opts.strict_hypotheses))
        }
        Command::Lattice { input, rel, dot, lattice_cap } => {
            let s = load(&input)?;
            let kind = RelationKind::parse(&rel).ok_or_else(|| input_error(format!("unknown relation `{rel}`")))?;
            let p = closed_lattice(&s, kind, lattice_cap)?;
            let text = p.lattice().to_dot();
            match dot {
                Some(path) => fs::write(&path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Decompose { input, opts } => {
            let s = load(&input)?;
            let cfg = opts.config();
            let sys = OrthoSystem::build(&s, cfg.lattice_cap)?;
            let suite = EquivalenceSuite::new(&sys, &cfg)?;
            let d = starlab::decomposition::decompositions(&suite);
            let report = DecomposeReport { schema_version: SCHEMA_VERSION, semigroup: s.name().to_string(), size: s.len(), decompositions: &d };
            emit(&to_json(&report), opts.out.as_deref())?;
            Ok(exit_code(&d.checks, opts.strict_hypotheses))
        }
        Command::Gallery => {
            for e in gallery() {
                let s = e.build()?;
                println!("{:<16} {:>4} elements  {:<10} {}", e.spec, s.len(), if s.is_proper().proper { "proper" } else { "not proper" }, e.description);
            }
            Ok(0)
        }
        Command::CheckAll { max_n, seed, fuzz: count, fuzz_max_n, out, strict_hypotheses, exhaustive_cap } => {
            let cfg = AnalysisConfig {
                checks: CheckConfig { seed, exhaustive_cap, ..CheckConfig::default() },
                timing: false,
            };
            let mut entries = Vec::new();
            for e in gallery() {
                let s = e.build()?;
                if s.len() <= max_n {
                    entries.push((e.spec, s));
                }
            }
            let reports = parallel_map(&entries, threads(), |(spec, s)| analyze(s, &cfg).map(|r| summarize(spec, &r)));
            let instances = reports.into_iter().collect::<Result<Vec<_>, Error>>()?;
            let fuzz = (count > 0).then(|| fuzz(count, fuzz_max_n, seed, threads(), &cfg)).transpose()?;
            let mut code = 0;
            for i in &instances {
                if i.totals.fail > 0 {
                    code = EXIT_FAIL;
                } else if strict_hypotheses && i.totals.hypothesis_not_met > 0 && code == 0 {
                    code = EXIT_UNMET;
                }
            }
            if fuzz.as_ref().is_some_and(|f| !f.passed()) {
                code = EXIT_FAIL;
            }
            let report = CheckAllReport { schema_version: SCHEMA_VERSION, max_n, seed, instances, fuzz };
            emit(&to_json(&report), out.as_deref())?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
