mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use rss_stl::falsify::{
    classify_batch, read_results_csv, sha256_hex, simulated_annealing, uniform_batch, useful_tests, write_results_csv,
    AnnealConfig, Manifest, Objective, ObjectiveSpec, SearchRecord, SpecChoice,
};
use rss_stl::rss::{build_predicate_trace, to_lane_coordinates, CasParams, RssParams};
use rss_stl::sim::{simulate, ScenarioParams, SimConfig};
use rss_stl::stl::{blame, parse_formula, Trace};

/// Offline STL monitoring and RSS-guided test generation for a three-lane
/// highway.
#[derive(Parser, Debug)]
#[command(name = "rss-stl", version)]
struct Cli {
    /// TOML file with `spec`, `[rss]`, `[cas]`, `[sim]` and `[anneal]`
    /// sections; missing keys take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads for batch evaluation (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula on a `t,<channel>,...` trace CSV.
    Monitor(MonitorArgs),
    /// Simulate one scenario and write world, lane and margin traces.
    Simulate(SimulateArgs),
    /// Evaluate a batch of uniformly drawn scenarios.
    Sample(SampleArgs),
    /// Simulated annealing on the robustness of the chosen specification.
    Falsify(FalsifyArgs),
    /// Tabulate RSS and CAS verdicts of stored results files.
    Classify(ClassifyArgs),
    /// Summarize an output directory and check its files against the
    /// manifest.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct MonitorArgs {
    trace: PathBuf,
    /// Inline formula.
    #[arg(short, long, conflicts_with = "formula_file", required_unless_present = "formula_file")]
    formula: Option<String>,
    #[arg(long)]
    formula_file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Scenario in TOML or JSON with the 14 scenario fields and `rng_seed`.
    scenario: PathBuf,
    /// Also draw the trajectories as an SVG lane diagram.
    #[arg(long)]
    plot: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, default_value_t = 1000)]
    n: usize,
}

#[derive(Args, Debug)]
struct FalsifyArgs {
    /// Overrides `spec` from the config file.
    #[arg(long)]
    spec: Option<SpecChoice>,
    #[arg(long, default_value_t = 350)]
    iters: usize,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Results CSVs; defaults to `<out>/results.csv`.
    results: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Output directory of an earlier run; defaults to `--out`.
    dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunConfig {
    spec: SpecChoice,
    rss: RssParams,
    cas: CasParams,
    sim: SimConfig,
    anneal: AnnealConfig,
}

impl RunConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(RunConfig::default()) };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn objective(&self) -> Result<Objective> {
        Ok(Objective::new(ObjectiveSpec { spec: self.spec, rss: self.rss, cas: self.cas, sim: self.sim.clone() })?)
    }

    fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Collects output files so the manifest can list their hashes.
struct Outputs {
    dir: PathBuf,
    manifest: Manifest,
}

impl Outputs {
    fn new(dir: &Path, command: &str, seed: Option<u64>, cfg: &RunConfig) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let args = std::env::args().skip(1).collect();
        Ok(Outputs { dir: dir.to_path_buf(), manifest: Manifest::new(command, args, seed, cfg.to_toml()) })
    }

    fn input(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.manifest.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(bytes)
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        self.manifest.outputs.insert(name.to_string(), sha256_hex(bytes));
        Ok(())
    }

    fn finish(self) -> Result<()> {
        let json = serde_json::to_string_pretty(&self.manifest)?;
        let name = format!("{}.manifest.json", self.manifest.command);
        fs::write(self.dir.join(name), json + "\n").context("writing manifest")?;
        Ok(())
    }
}

fn results_bytes(records: &[SearchRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_results_csv(records, &mut buf).expect("writing to memory");
    buf
}

fn monitor(a: &MonitorArgs) -> Result<ExitCode> {
    let src = match (&a.formula, &a.formula_file) {
        (Some(f), _) => f.clone(),
        (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => bail!("no formula given"),
    };
    let phi = parse_formula(&src)?;
    let file = fs::File::open(&a.trace).with_context(|| format!("opening {}", a.trace.display()))?;
    let trace = Trace::read_csv(file).with_context(|| format!("reading {}", a.trace.display()))?;
    let report = blame(&phi, &trace)?;
    let sat = report.robustness.value() > 0.0;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("formula:    {phi}");
        println!("robustness: {}", report.robustness);
        println!("verdict:    {}", if sat { "SAT" } else { "FALSIFIED" });
        if let Some(b) = &report.blamed {
            println!("blamed:     {} ({}) at sample {}, t = {}", b.atom, b.predicate, b.sample, b.time);
        }
    }
    Ok(if sat { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn read_scenario(path: &Path, bytes: &[u8]) -> Result<ScenarioParams> {
    let text = std::str::from_utf8(bytes).context("scenario file is not UTF-8")?;
    let s = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(text)?
    } else {
        toml::from_str(text)?
    };
    Ok(s)
}

fn simulate_cmd(cli: &Cli, a: &SimulateArgs) -> Result<ExitCode> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let obj = cfg.objective()?;
    let mut out = Outputs::new(&cli.out, "simulate", None, &cfg)?;
    let bytes = out.input(&a.scenario)?;
    let s = read_scenario(&a.scenario, &bytes).with_context(|| format!("parsing {}", a.scenario.display()))?;

    let world = simulate(&s, &cfg.sim)?;
    let lane = to_lane_coordinates(&world, &cfg.sim.road);
    let trace = build_predicate_trace(&lane, &cfg.sim.vehicle, &cfg.rss)?;
    let (rss, cas, blamed) = obj.score_trace(&trace)?;

    let mut buf = Vec::new();
    world.write_csv(&mut buf)?;
    out.write("world.csv", &buf)?;
    buf.clear();
    lane.write_csv(&mut buf)?;
    out.write("lane.csv", &buf)?;
    buf.clear();
    trace.write_csv(&mut buf)?;
    out.write("margins.csv", &buf)?;
    if a.plot {
        out.write("trajectories.svg", plot::lane_diagram(&world, &cfg.sim).as_bytes())?;
    }
    for o in &lane.off_road {
        eprintln!("warning: {} leaves the road at sample {}", o.vehicle, o.first_sample);
    }
    println!("samples:        {}", world.len());
    println!("RSS robustness: {rss}");
    if let Some(b) = blamed {
        println!("blamed:         {b}");
    }
    println!("CAS robustness: {cas}");
    out.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn sample_cmd(cli: &Cli, a: &SampleArgs) -> Result<ExitCode> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let obj = cfg.objective()?;
    let records = uniform_batch(a.n, cli.seed, &obj, cli.jobs)?;
    let mut out = Outputs::new(&cli.out, "sample", Some(cli.seed), &cfg)?;
    out.write("results.csv", &results_bytes(&records))?;
    let table = classify_batch(&records);
    out.write("report.txt", format!("{table}\n").as_bytes())?;
    out.write("report.json", serde_json::to_string_pretty(&table)?.as_bytes())?;
    println!("{table}");
    out.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn falsify_cmd(cli: &Cli, a: &FalsifyArgs) -> Result<ExitCode> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(s) = a.spec {
        cfg.spec = s;
    }
    let obj = cfg.objective()?;
    let run = simulated_annealing(&obj, a.iters, cli.seed, &cfg.anneal)?;
    let mut out = Outputs::new(&cli.out, "falsify", Some(cli.seed), &cfg)?;
    let history: Vec<SearchRecord> = run.history.iter().map(|e| e.payload.clone()).collect();
    let warmup: Vec<SearchRecord> = run.warmup.iter().map(|e| e.payload.clone()).collect();
    out.write("results.csv", &results_bytes(&history))?;
    out.write("warmup.csv", &results_bytes(&warmup))?;
    out.write("best.toml", toml::to_string(&run.best.scenario)?.as_bytes())?;
    let table = classify_batch(&history);
    out.write("report.txt", format!("{table}\n").as_bytes())?;
    out.write("report.json", serde_json::to_string_pretty(&table)?.as_bytes())?;

    let best = &run.best.payload;
    let found = obj.cost(best).value() < 0.0;
    println!("{table}");
    println!();
    println!("T0 {:.6}, alpha {:.6}", run.t0, run.alpha);
    println!(
        "best: RSS {}, CAS {}, blamed {}",
        best.robustness_rss,
        best.robustness_cas,
        best.blamed_atom.as_deref().unwrap_or("-")
    );
    println!("useful tests (RSS < 0): {}", useful_tests(&history).len());
    println!("verdict: {}", if found { "FOUND" } else { "NOT-FALSIFIED" });
    out.finish()?;
    Ok(if found { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn classify_cmd(cli: &Cli, a: &ClassifyArgs) -> Result<ExitCode> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let inputs = if a.results.is_empty() { vec![cli.out.join("results.csv")] } else { a.results.clone() };
    let mut out = Outputs::new(&cli.out, "classify", None, &cfg)?;
    let mut text = String::new();
    let mut tables = Vec::new();
    for path in &inputs {
        let bytes = out.input(path)?;
        let records = read_results_csv(bytes.as_slice()).with_context(|| format!("reading {}", path.display()))?;
        let table = classify_batch(&records);
        text.push_str(&format!("== {}\n{table}\n\n", path.display()));
        tables.push((path.display().to_string(), table));
    }
    let json: serde_json::Map<_, _> =
        tables.into_iter().map(|(p, t)| (p, serde_json::to_value(t).expect("table serializes"))).collect();
    out.write("classification.txt", text.as_bytes())?;
    out.write("classification.json", serde_json::to_string_pretty(&json)?.as_bytes())?;
    print!("{text}");
    out.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn check_manifest(dir: &Path, path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m: Manifest = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    println!("{} {} {}", m.tool, m.version, m.command);
    println!("  args:   {}", m.args.join(" "));
    if let Some(seed) = m.seed {
        println!("  seed:   {seed}");
    }
    println!("  config: sha256 {}", m.config_sha256);
    if sha256_hex(m.config.as_bytes()) != m.config_sha256 {
        bail!("{}: embedded config does not match its hash", path.display());
    }
    let mut stale = Vec::new();
    for (name, hash) in &m.outputs {
        let ok = fs::read(dir.join(name)).map(|b| sha256_hex(&b) == *hash).unwrap_or(false);
        println!("  {} {name}", if ok { "ok     " } else { "CHANGED" });
        if !ok {
            stale.push(name.clone());
        }
    }
    Ok(stale)
}

fn report_cmd(cli: &Cli, a: &ReportArgs) -> Result<ExitCode> {
    let dir = a.dir.clone().unwrap_or_else(|| cli.out.clone());
    let mut manifests: Vec<PathBuf> = fs::read_dir(&dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".manifest.json"))
        .collect();
    manifests.sort();
    if manifests.is_empty() {
        bail!("no manifest in {}", dir.display());
    }
    let mut stale = Vec::new();
    for m in &manifests {
        stale.extend(check_manifest(&dir, m)?);
    }
    let results = dir.join("results.csv");
    if results.exists() && !stale.iter().any(|s| s == "results.csv") {
        let records = read_results_csv(fs::read(&results)?.as_slice())?;
        println!();
        println!("{}", classify_batch(&records));
    }
    if !stale.is_empty() {
        bail!("{} output file(s) differ from their manifest", stale.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Command::Monitor(a) => monitor(a),
        Command::Simulate(a) => simulate_cmd(cli, a),
        Command::Sample(a) => sample_cmd(cli, a),
        Command::Falsify(a) => falsify_cmd(cli, a),
        Command::Classify(a) => classify_cmd(cli, a),
        Command::Report(a) => report_cmd(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
