use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use synpid::analyze::{analyze, SymbolTable};
use synpid::core::eca::{decode_rule, run};
use synpid::core::pid::{build_lattice, DiscontinuityReport, MAX_SOURCES};
use synpid::experiments::{
    export_local_profiles, or_discontinuity, run_or_demo, run_table1, ExperimentConfig, GridFormat,
    OrDemo, ProfileMeasure,
};
use synpid::Error;

const SEED_ENV: &str = "SYNPID_SEED";

/// Information dynamics and partial information decomposition toolkit.
///
/// Flags override values from `--config`, a JSON object keyed by flag names
/// (`{"runs": 20, "rules": [54]}`). The seed falls back to the config file,
/// then to $SYNPID_SEED, then to 0.
#[derive(Parser, Debug)]
#[command(name = "synpid", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file with default flag values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one elementary CA run and write its spacetime grid.
    CaRun(CaRunArgs),
    /// Modified information and PI hierarchy per rule, pooled over runs.
    Table1(Table1Args),
    /// Local I_min of the OR gate with a skewed input distribution.
    OrDemo(OrDemoArgs),
    /// Export local information-dynamics profiles of a CA rule.
    Profile(ProfileArgs),
    /// Information dynamics and PID of an integer CSV time series.
    Analyze(AnalyzeArgs),
    /// Print the redundancy lattice for a number of sources.
    Lattice(LatticeArgs),
}

#[derive(Args, Debug)]
struct CaRunArgs {
    #[arg(long)]
    rule: Option<u32>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Pgm,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct BatchArgs {
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Comma-separated Wolfram rule numbers.
    #[arg(long, value_delimiter = ',')]
    rules: Option<Vec<u32>>,
    #[command(flatten)]
    batch: BatchArgs,
    /// JSON report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the text table here.
    #[arg(long)]
    text: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OrDemoArgs {
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Also compare local values at delta, 0 and -delta.
    #[arg(long)]
    scan: bool,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[arg(long)]
    rule: Option<u32>,
    #[command(flatten)]
    batch: BatchArgs,
    /// Comma-separated subset of local_ais, local_te_left, local_te_right,
    /// local_separable.
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<ProfileMeasure>>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    destination: Option<String>,
    #[arg(long, value_delimiter = ',')]
    sources: Option<Vec<String>>,
    #[arg(long)]
    k: Option<usize>,
    /// JSON report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    sources: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// A bad flag or configuration value (exit 2) or a runtime failure (exit 1).
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self::Runtime(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use synpid::core::Error as Core;
        match e {
            Error::Config(_)
            | Error::Core(
                Core::RuleOutOfRange(_)
                | Core::GridShape { .. }
                | Core::ZeroHistory
                | Core::InsufficientHistory { .. }
                | Core::StateSpaceOverflow
                | Core::SourceCount(_),
            ) => Self::Usage(e.to_string()),
            other => Self::Runtime(other.into()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

/// Values from `--config`, consumed key by key.
struct Defaults(Map<String, Value>);

impl Defaults {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self(Map::new()));
        };
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(map)) => Ok(Self(map)),
            Ok(_) => Err(usage("config must be a JSON object")),
            Err(e) => Err(usage(format!("invalid config {}: {e}", path.display()))),
        }
    }

    /// The flag value if given, else the config value.
    fn pick<T: DeserializeOwned>(&mut self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        let from_config = self.0.remove(key);
        if flag.is_some() {
            return Ok(flag);
        }
        from_config
            .map(|v| {
                serde_json::from_value(v).map_err(|e| usage(format!("config key `{key}`: {e}")))
            })
            .transpose()
    }

    fn require<T: DeserializeOwned>(&mut self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.pick(flag, key)?
            .ok_or_else(|| usage(format!("--{} is required", key.replace('_', "-"))))
    }

    fn seed(&mut self, flag: Option<u64>) -> CliResult<u64> {
        if let Some(seed) = self.pick(flag, "seed")? {
            return Ok(seed);
        }
        match std::env::var(SEED_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("{SEED_ENV}=`{s}` is not a u64"))),
            Err(_) => Ok(0),
        }
    }

    fn batch(&mut self, args: BatchArgs, rules: Vec<u32>) -> CliResult<ExperimentConfig> {
        let d = ExperimentConfig::default();
        Ok(ExperimentConfig {
            rules,
            runs: self.pick(args.runs, "runs")?.unwrap_or(d.runs),
            width: self.pick(args.width, "width")?.unwrap_or(d.width),
            steps: self.pick(args.steps, "steps")?.unwrap_or(d.steps),
            k: self.pick(args.k, "k")?.unwrap_or(d.k),
            base_seed: self.seed(args.seed)?,
        })
    }

    /// Rejects config keys that no flag of this command consumed.
    fn finish(self) -> CliResult {
        match self.0.keys().next() {
            Some(key) => Err(usage(format!(
                "config key `{key}` does not apply to this command"
            ))),
            None => Ok(()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> CliResult {
    let mut defaults = Defaults::load(cli.config.as_deref())?;
    let threads = defaults.pick(cli.threads, "threads")?;
    if let Some(n) = threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("building the worker pool")?;
    }
    match cli.command {
        Command::CaRun(a) => ca_run(a, defaults),
        Command::Table1(a) => table1(a, defaults),
        Command::OrDemo(a) => or_demo(a, defaults),
        Command::Profile(a) => profile(a, defaults),
        Command::Analyze(a) => analyze_cmd(a, defaults),
        Command::Lattice(a) => lattice(a, defaults),
    }
}

fn ca_run(a: CaRunArgs, mut d: Defaults) -> CliResult {
    let rule = decode_rule(d.require(a.rule, "rule")?).map_err(Error::from)?;
    let width = d.pick(a.width, "width")?.unwrap_or(200);
    let steps = d.pick(a.steps, "steps")?.unwrap_or(200);
    let seed = d.seed(a.seed)?;
    let out: PathBuf = d.require(a.out, "out")?;
    let format = match d.pick(a.format, "format")? {
        Some(Format::Csv) => GridFormat::Csv,
        Some(Format::Pgm) => GridFormat::Pgm,
        None if out.extension().is_some_and(|e| e == "csv") => GridFormat::Csv,
        None => GridFormat::Pgm,
    };
    d.finish()?;
    let grid = run(&rule, width, steps, seed).map_err(Error::from)?;
    format.write_file(&grid, &out)?;
    Ok(())
}

fn table1(a: Table1Args, mut d: Defaults) -> CliResult {
    let rules = d
        .pick(a.rules, "rules")?
        .unwrap_or_else(|| ExperimentConfig::default().rules);
    let config = d.batch(a.batch, rules)?;
    let out: Option<PathBuf> = d.pick(a.out, "out")?;
    let text_path: Option<PathBuf> = d.pick(a.text, "text")?;
    d.finish()?;
    config.validate()?;
    let report = run_table1(&config)?;
    let text = report.to_text();
    match &out {
        Some(path) => {
            write_json(path, &report)?;
            print!("{text}");
        }
        None => println!("{}", to_json(&report)?),
    }
    if let Some(path) = text_path {
        fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct OrDemoOutput {
    demo: OrDemo,
    #[serde(skip_serializing_if = "Option::is_none")]
    scan: Option<DiscontinuityReport>,
}

fn or_demo(a: OrDemoArgs, mut d: Defaults) -> CliResult {
    let delta = d.pick(a.delta, "delta")?.unwrap_or(1e-6);
    let scan = d
        .pick(Some(a.scan).filter(|&s| s), "scan")?
        .unwrap_or(false);
    let out: Option<PathBuf> = d.pick(a.out, "out")?;
    d.finish()?;
    let demo = run_or_demo(delta)?;
    print!("{}", demo.to_text());
    let scan = if scan {
        let report = or_discontinuity(&[delta, 0.0, -delta])?;
        println!(
            "scan over delta = {delta:e}, 0, {:e}: max local jump {:.6} bits, average change {:e} bits",
            -delta,
            report.max_local_jump(),
            report.average_jump
        );
        Some(report)
    } else {
        None
    };
    if let Some(path) = out {
        write_json(&path, &OrDemoOutput { demo, scan })?;
    }
    Ok(())
}

fn profile(a: ProfileArgs, mut d: Defaults) -> CliResult {
    let rule = d.require(a.rule, "rule")?;
    let measures = match a.measures {
        Some(m) => m,
        None => match d.pick::<Vec<String>>(None, "measures")? {
            Some(names) => names
                .iter()
                .map(|n| n.parse().map_err(|e: Error| usage(e.to_string())))
                .collect::<CliResult<_>>()?,
            None => ProfileMeasure::ALL.to_vec(),
        },
    };
    let config = d.batch(a.batch, vec![rule])?;
    let out_dir: PathBuf = d.require(a.out_dir, "out_dir")?;
    d.finish()?;
    let output = export_local_profiles(rule, &config, &measures, &out_dir)?;
    for file in output.files {
        println!("{}", file.display());
    }
    Ok(())
}

fn analyze_cmd(a: AnalyzeArgs, mut d: Defaults) -> CliResult {
    let input: PathBuf = d.require(a.input, "input")?;
    let destination: String = d.require(a.destination, "destination")?;
    let sources: Vec<String> = d.require(a.sources, "sources")?;
    let k = d.pick(a.k, "k")?.unwrap_or(1);
    let out: Option<PathBuf> = d.pick(a.out, "out")?;
    d.finish()?;
    let file = fs::File::open(&input).with_context(|| format!("opening {}", input.display()))?;
    let table = SymbolTable::read_csv(file)?;
    let report = analyze(&table, &destination, &sources, k)?;
    match out {
        Some(path) => write_json(&path, &report)?,
        None => println!("{}", to_json(&report)?),
    }
    Ok(())
}

#[derive(Serialize)]
struct LatticeOutput {
    sources: usize,
    nodes: Vec<String>,
    /// Covering pairs `(lower, upper)` as node indices.
    edges: Vec<(usize, usize)>,
}

fn lattice(a: LatticeArgs, mut d: Defaults) -> CliResult {
    let r: usize = d.require(a.sources, "sources")?;
    let json = d
        .pick(Some(a.json).filter(|&j| j), "json")?
        .unwrap_or(false);
    d.finish()?;
    if r == 0 || r > MAX_SOURCES {
        return Err(usage(format!(
            "--sources must be between 1 and {MAX_SOURCES}"
        )));
    }
    let lattice = build_lattice(r).map_err(Error::from)?;
    let output = LatticeOutput {
        sources: r,
        nodes: lattice.nodes().iter().map(ToString::to_string).collect(),
        edges: lattice.covers(),
    };
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let res = if json {
        writeln!(w, "{}", to_json(&output)?)
    } else {
        (|| {
            writeln!(w, "# {} nodes", output.nodes.len())?;
            for (i, n) in output.nodes.iter().enumerate() {
                writeln!(w, "{i} {n}")?;
            }
            writeln!(w, "# {} covering edges (lower upper)", output.edges.len())?;
            for (lo, hi) in &output.edges {
                writeln!(w, "{lo} {hi}")?;
            }
            Ok(())
        })()
    };
    res.context("writing to stdout")?;
    Ok(())
}

fn to_json(value: &impl Serialize) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value).context("serializing report")?)
}

fn write_json(path: &Path, value: &impl Serialize) -> CliResult {
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
