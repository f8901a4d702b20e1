//! Command-line front end: run scenarios, sweep the initialization bias,
//! chart the results, list presets.

use boardnet::boards::InitMode;
use boardnet::config::{self, FileConfig};
use boardnet::error::{Error, Result};
use boardnet::output::{self, format_sig9};
use boardnet::plot;
use boardnet::scenarios::{self, field, run_monte_carlo, RunAggregate, SimConfig};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "boardnet",
    version,
    about = "Simulate diversity dynamics on corporate board networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its aggregate CSV plus a manifest
    Run(RunArgs),
    /// Rerun the biased-entry scenario over a range of gamma values
    Sweep(SweepArgs),
    /// Render SVG charts from aggregate CSV files
    Plot(PlotArgs),
    /// List the built-in scenario table
    Presets,
}

#[derive(Args)]
struct Overrides {
    /// Number of firms in the network
    #[arg(long)]
    firms: Option<usize>,
    /// Monte Carlo runs (default 100; use 10000 for full scale)
    #[arg(long)]
    runs: Option<u32>,
    /// Simulated years per run
    #[arg(long)]
    years: Option<u32>,
    /// Master RNG seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct IoArgs {
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: BOARDNET_WORKERS env var, then all cores)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Preset id (A, B, C, D, E, Aprime, Bprime) or path to a config file
    scenario: String,
    #[command(flatten)]
    overrides: Overrides,
    /// Initial seat share of group F
    #[arg(long)]
    initial_share: Option<f64>,
    /// Degree-bias strength of the initializer (implies biased mode)
    #[arg(long)]
    gamma: Option<f64>,
    /// Saturation level of the inflow share
    #[arg(long)]
    target_share: Option<f64>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Lower end of the gamma range
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    /// Upper end of the gamma range
    #[arg(long, default_value_t = 0.6)]
    to: f64,
    /// Number of gamma values, endpoints included
    #[arg(long, default_value_t = 13)]
    steps: u32,
    /// Base scenario the sweep is built on
    #[arg(long, default_value = "B")]
    base: String,
    #[command(flatten)]
    overrides: Overrides,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct PlotArgs {
    /// Aggregate CSV files to chart
    #[arg(required = true)]
    csvs: Vec<PathBuf>,
    /// Comma-separated fields (e.g. share_F,net_homophily,rep_bins)
    #[arg(long, value_delimiter = ',')]
    fields: Vec<String>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Presets => {
            cmd_presets();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}

fn apply_common(cfg: &mut SimConfig, o: &Overrides) {
    if let Some(v) = o.firms {
        cfg.firms = v;
    }
    if let Some(v) = o.years {
        cfg.years = v;
        cfg.dynamics.horizon_years = v;
    }
    if let Some(v) = o.seed {
        cfg.master_seed = v;
    }
}

/// Command-line default is 100 runs (desk scale); a config file that pins
/// `runs` keeps its value, and `--runs` beats both.
fn resolve_runs(cfg: &mut SimConfig, flag: Option<u32>, source: &str) {
    if let Some(r) = flag {
        cfg.runs = r;
    } else if !file_sets_runs(source) {
        cfg.runs = 100;
    }
}

fn file_sets_runs(source: &str) -> bool {
    let path = Path::new(source);
    path.is_file()
        && FileConfig::load(path)
            .map(|f| f.sets_runs())
            .unwrap_or(false)
}

fn build_pool(workers: Option<usize>) -> Result<Option<rayon::ThreadPool>> {
    let n = match workers {
        Some(n) => Some(n),
        None => match std::env::var("BOARDNET_WORKERS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| Error::InvalidParam {
                key: "BOARDNET_WORKERS",
                message: format!("expected a positive integer, got `{s}`"),
            })?),
            Err(_) => None,
        },
    };
    match n {
        None => Ok(None),
        Some(0) => Err(Error::InvalidParam {
            key: "workers",
            message: "must be at least 1".to_string(),
        }),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            Ok(Some(pool))
        }
    }
}

fn with_pool<T: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn write_manifest(
    out: &Path,
    spec: &scenarios::ScenarioSpec,
    outputs: &[String],
    wall: f64,
) -> Result<()> {
    let manifest = output::manifest_json(spec, outputs, wall);
    std::fs::write(out.join("manifest.json"), format!("{manifest:#}\n"))?;
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let mut spec = config::resolve(&args.scenario)?;
    apply_common(&mut spec.config, &args.overrides);
    resolve_runs(&mut spec.config, args.overrides.runs, &args.scenario);
    if let Some(v) = args.initial_share {
        spec.config.init.initial_share = v;
    }
    if let Some(v) = args.gamma {
        spec.config.init.gamma = v;
        spec.config.init.mode = InitMode::Biased;
    }
    if let Some(v) = args.target_share {
        spec.config.dynamics.target_share = v;
    }
    spec.config.validate()?;

    std::fs::create_dir_all(&args.io.out)?;
    let pool = build_pool(args.io.workers)?;
    let t0 = Instant::now();
    let agg = with_pool(&pool, || run_monte_carlo(&spec))?;
    let wall = t0.elapsed().as_secs_f64();

    let csv_name = format!("{}.csv", spec.id);
    std::fs::write(args.io.out.join(&csv_name), output::csv_string(&agg))?;
    let outputs = vec![csv_name.clone(), "manifest.json".to_string()];
    write_manifest(&args.io.out, &spec, &outputs, wall)?;
    println!(
        "wrote {} ({} runs, {} years, {:.1}s)",
        args.io.out.join(&csv_name).display(),
        spec.config.runs,
        spec.config.years,
        wall
    );
    Ok(())
}

fn gamma_label(gamma: f64) -> String {
    let s = format!("{gamma:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn sweep_specs(args: &SweepArgs) -> Result<Vec<scenarios::ScenarioSpec>> {
    if args.steps < 2 {
        return Err(Error::InvalidParam {
            key: "steps",
            message: format!("need at least 2, got {}", args.steps),
        });
    }
    for (key, v) in [("from", args.from), ("to", args.to)] {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidParam {
                key,
                message: format!("gamma must be in [0, 1), got {v}"),
            });
        }
    }
    let default_grid = args.from == 0.0 && args.to == 0.6 && args.steps == 13 && args.base == "B";
    if default_grid {
        return Ok(scenarios::gamma_sweep());
    }
    let base = config::resolve(&args.base)?;
    Ok((0..args.steps)
        .map(|i| {
            let t = i as f64 / (args.steps - 1) as f64;
            let gamma = ((args.from + (args.to - args.from) * t) * 1e10).round() / 1e10;
            let mut spec = base.clone();
            spec.config.init.mode = InitMode::Biased;
            spec.config.init.gamma = gamma;
            spec.id = format!("{}_gamma_{}", base.id, gamma_label(gamma));
            spec
        })
        .collect())
}

/// Top-bin representation and F/M perception ratios per gamma: year 0 is
/// where the initialization bias shows, the final and peak columns say how
/// far the dynamics unwind it.
fn sweep_row(gamma: f64, agg: &RunAggregate) -> String {
    let opt = |v: Option<f64>| v.map(format_sig9).unwrap_or_default();
    let first = agg.row(0);
    let last = agg.row(agg.n_years() - 1);
    let mut peak: Option<(u32, f64)> = None;
    for row in agg.rows() {
        if let Some(v) = row.mean(field::PERC_F_BY_F) {
            if peak.is_none_or(|(_, best)| v > best) {
                peak = Some((row.year, v));
            }
        }
    }
    format!(
        "{},{},{},{},{},{},{},{}\n",
        format_sig9(gamma),
        opt(first.mean(field::REP_BINS)),
        opt(first.std(field::REP_BINS)),
        opt(first.mean(field::PERC_F_BY_F)),
        opt(first.mean(field::PERC_F_BY_M)),
        opt(last.mean(field::REP_BINS)),
        opt(peak.map(|(_, v)| v)),
        peak.map(|(y, _)| y.to_string()).unwrap_or_default(),
    )
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut specs = sweep_specs(&args)?;
    for spec in &mut specs {
        apply_common(&mut spec.config, &args.overrides);
        resolve_runs(&mut spec.config, args.overrides.runs, &args.base);
        spec.config.validate()?;
    }

    std::fs::create_dir_all(&args.io.out)?;
    let pool = build_pool(args.io.workers)?;
    let t0 = Instant::now();
    let mut outputs = Vec::new();
    let mut summary = String::from(
        "gamma,rep_bin_01_y0_mean,rep_bin_01_y0_std,perc_F_by_F_y0_mean,perc_F_by_M_y0_mean,\
         rep_bin_01_final_mean,perc_F_by_F_peak_mean,perc_F_by_F_peak_year\n",
    );
    for spec in &specs {
        let agg = with_pool(&pool, || run_monte_carlo(spec))?;
        let csv_name = format!("{}.csv", spec.id);
        std::fs::write(args.io.out.join(&csv_name), output::csv_string(&agg))?;
        summary.push_str(&sweep_row(spec.config.init.gamma, &agg));
        outputs.push(csv_name);
    }
    std::fs::write(args.io.out.join("sweep_summary.csv"), summary)?;
    outputs.push("sweep_summary.csv".to_string());
    outputs.push("manifest.json".to_string());
    let wall = t0.elapsed().as_secs_f64();
    write_manifest(&args.io.out, &specs[0], &outputs, wall)?;
    println!(
        "wrote {} gamma values to {} ({:.1}s)",
        specs.len(),
        args.io.out.display(),
        wall
    );
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let written = plot::render_plots(&args.csvs, &args.fields, &args.out)?;
    for f in &written {
        println!("wrote {}", args.out.join(f).display());
    }
    Ok(())
}

fn cmd_presets() {
    println!(
        "{:<8} {:<18} {:<16} {:<14} growth",
        "id", "init", "lambda", "target_share"
    );
    for id in ["A", "B", "C", "D", "E", "Aprime", "Bprime"] {
        let spec = scenarios::preset(id).expect("table lists only known presets");
        let c = &spec.config;
        let init = match c.init.mode {
            InitMode::Unbiased => "unbiased".to_string(),
            InitMode::Biased => format!("biased gamma={}", format_sig9(c.init.gamma)),
        };
        println!(
            "{:<8} {:<18} {:<16} {:<14} {}",
            id,
            init,
            config::lambda_mode_name(c.dynamics.lambda_mode),
            format_sig9(c.dynamics.target_share),
            config::growth_mode_name(c.dynamics.growth_mode),
        );
    }
}
