//! Scenario presets, Monte Carlo orchestration, and aggregation.
//!
//! Every run derives its own random substream from (master seed, run
//! index), so runs are independent of scheduling. Aggregation reduces over
//! fixed-size run batches in index order, which makes the resulting means
//! and standard deviations bit-identical for any worker count.

use crate::boards::{init, InitConfig, InitMode};
use crate::dynamics::{lambda_schedule, step, DynamicsConfig, GrowthMode, InflowState, LambdaMode};
use crate::error::{invalid, Error, Result};
use crate::metrics::{eigencentrality, year_record, YearRecord, N_BINS};
use crate::netgen::{couple_sizes_to_degrees, gen_ba, sample_board_sizes};
use crate::rng::run_rng;
use rayon::prelude::*;

/// Power-iteration settings used for every run.
const EIGEN_TOL: f64 = 1e-10;
const EIGEN_MAX_ITER: usize = 100_000;

/// Runs per aggregation batch. Fixing this makes the reduction order, and
/// therefore the floating-point result, independent of parallelism.
const BATCH: u32 = 32;

/// Complete parameter set of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub firms: usize,
    pub runs: u32,
    pub years: u32,
    pub master_seed: u64,
    /// Edges added per new firm during network growth.
    pub m: usize,
    pub board_size_mean: f64,
    pub board_size_var: f64,
    pub min_board_size: u32,
    pub init: InitConfig,
    pub dynamics: DynamicsConfig,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            firms: 1000,
            runs: 10_000,
            years: 80,
            master_seed: 42,
            m: 3,
            board_size_mean: 12.5,
            board_size_var: 20.6,
            min_board_size: 3,
            init: InitConfig::default(),
            dynamics: DynamicsConfig::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(invalid("m", "must be at least 1"));
        }
        if self.firms < self.m + 1 {
            return Err(invalid(
                "firms",
                format!("need at least m+1 = {} firms, got {}", self.m + 1, self.firms),
            ));
        }
        if self.runs < 1 {
            return Err(invalid("runs", "must be at least 1"));
        }
        if !(self.board_size_mean > 0.0 && self.board_size_mean.is_finite()) {
            return Err(invalid("board_size_mean", format!("must be positive, got {}", self.board_size_mean)));
        }
        if !(self.board_size_var >= 0.0 && self.board_size_var.is_finite()) {
            return Err(invalid("board_size_var", format!("must be non-negative, got {}", self.board_size_var)));
        }
        if self.min_board_size < 1 {
            return Err(invalid("min_board_size", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.init.initial_share) {
            return Err(invalid("initial_share", format!("must be in [0, 1], got {}", self.init.initial_share)));
        }
        if self.init.mode == InitMode::Biased && !(0.0..1.0).contains(&self.init.gamma) {
            return Err(invalid("gamma", format!("must be in [0, 1), got {}", self.init.gamma)));
        }
        self.dynamics.validate()
    }
}

/// A named, fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub id: String,
    pub config: SimConfig,
}

/// Built-in scenario table:
///
/// | id     | init           | lambda         | target x* | growth     |
/// |--------|----------------|----------------|-----------|------------|
/// | A      | unbiased       | size-dependent | 0.5       | exogenous  |
/// | B      | biased γ=0.8   | size-dependent | 0.5       | exogenous  |
/// | C      | unbiased       | fixed          | 0.5       | exogenous  |
/// | D      | unbiased       | size-dependent | 1/6       | exogenous  |
/// | E      | unbiased       | fixed          | 1/6       | exogenous  |
/// | Aprime | unbiased       | size-dependent | 0.5       | endogenous |
/// | Bprime | biased γ=0.8   | size-dependent | 0.5       | endogenous |
pub fn preset(id: &str) -> Result<ScenarioSpec> {
    let mut config = SimConfig::default();
    let canonical = match id {
        "A" => "A",
        "B" => {
            config.init.mode = InitMode::Biased;
            "B"
        }
        "C" => {
            config.dynamics.lambda_mode = LambdaMode::Fixed;
            "C"
        }
        "D" => {
            config.dynamics.target_share = 1.0 / 6.0;
            "D"
        }
        "E" => {
            config.dynamics.lambda_mode = LambdaMode::Fixed;
            config.dynamics.target_share = 1.0 / 6.0;
            "E"
        }
        "Aprime" | "A'" => {
            config.dynamics.growth_mode = GrowthMode::Endogenous;
            "Aprime"
        }
        "Bprime" | "B'" => {
            config.init.mode = InitMode::Biased;
            config.dynamics.growth_mode = GrowthMode::Endogenous;
            "Bprime"
        }
        other => return Err(Error::UnknownScenario(other.to_string())),
    };
    Ok(ScenarioSpec {
        id: canonical.to_string(),
        config,
    })
}

/// Scenario B replicated over gamma = 0.00, 0.05, ..., 0.60 (13 specs).
pub fn gamma_sweep() -> Vec<ScenarioSpec> {
    (0..=12)
        .map(|i| {
            let gamma = (5 * i) as f64 / 100.0;
            let mut spec = preset("B").expect("B is a known preset");
            spec.config.init.gamma = gamma;
            spec.id = format!("B_gamma_{gamma:.2}");
            spec
        })
        .collect()
}

/// One full replication: fresh network, sizes, seats, then `years` steps.
/// Produces one record per year including year 0 (the untouched initial
/// state). The feedback deviation passed to a step is always the one
/// measured on the previous year's final (pre-retirement) composition.
pub fn run_one(spec: &ScenarioSpec, run_index: u32) -> Result<Vec<YearRecord>> {
    let cfg = &spec.config;
    cfg.validate()?;
    let mut rng = run_rng(cfg.master_seed, run_index);
    let graph = gen_ba(cfg.firms, cfg.m, &mut rng)?;
    let raw_sizes = sample_board_sizes(
        cfg.firms,
        cfg.board_size_mean,
        cfg.board_size_var,
        cfg.min_board_size,
        &mut rng,
    )?;
    let sizes = couple_sizes_to_degrees(&graph, &raw_sizes)?;
    let mut state = init(&sizes, &graph, &cfg.init, &mut rng)?;
    let scores = eigencentrality(&graph, EIGEN_TOL, EIGEN_MAX_ITER)?;

    let mut inflow = InflowState {
        x: cfg.init.initial_share,
    };
    let mut records = Vec::with_capacity(cfg.years as usize + 1);
    let lambda0 = lambda_schedule(state.share_f(), &cfg.dynamics);
    records.push(year_record(
        0,
        &state,
        &graph,
        &scores,
        inflow.x,
        lambda0,
        cfg.dynamics.beta,
    ));
    for year in 1..=cfg.years {
        let delta_s_pre = records
            .last()
            .expect("year 0 is always recorded")
            .delta_s;
        let report = step(
            &mut state,
            &graph,
            &mut inflow,
            &cfg.dynamics,
            delta_s_pre,
            &mut rng,
        )?;
        records.push(year_record(
            year,
            &state,
            &graph,
            &scores,
            inflow.x,
            report.lambda_used,
            cfg.dynamics.beta,
        ));
    }
    Ok(records)
}

/// Flat field layout of a [`YearRecord`] inside aggregates and CSV output.
pub mod field {
    pub const INFLOW_X: usize = 0;
    pub const SHARE_F: usize = 1;
    pub const LAMBDA: usize = 2;
    pub const NET_HOMOPHILY: usize = 3;
    pub const PERC_F_BY_F: usize = 4;
    pub const PERC_F_BY_M: usize = 5;
    pub const PERC_F_BY_ALL: usize = 6;
    pub const DELTA_S: usize = 7;
    pub const FSTAR_MEAN: usize = 8;
    pub const FSTAR_CV: usize = 9;
    /// First representation bin; bin b lives at REP_BINS + b.
    pub const REP_BINS: usize = 10;
    pub const COUNT: usize = REP_BINS + super::N_BINS;
}

fn record_values(r: &YearRecord) -> [Option<f64>; field::COUNT] {
    let mut v = [None; field::COUNT];
    v[field::INFLOW_X] = Some(r.inflow_x);
    v[field::SHARE_F] = Some(r.share_f);
    v[field::LAMBDA] = Some(r.lambda_used);
    v[field::NET_HOMOPHILY] = Some(r.net_homophily);
    v[field::PERC_F_BY_F] = r.perc_f_by_f;
    v[field::PERC_F_BY_M] = r.perc_f_by_m;
    v[field::PERC_F_BY_ALL] = r.perc_f_by_all;
    v[field::DELTA_S] = Some(r.delta_s);
    v[field::FSTAR_MEAN] = Some(r.fstar_mean);
    v[field::FSTAR_CV] = Some(r.fstar_cv);
    for (b, &ratio) in r.rep_bins.iter().enumerate() {
        v[field::REP_BINS + b] = Some(ratio);
    }
    v
}

/// Streaming mean/variance cell (Welford; merged batch-to-batch with the
/// exact pairwise update, so identical inputs yield exactly zero variance).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct FieldAgg {
    count: u64,
    mean: f64,
    m2: f64,
}

impl FieldAgg {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &FieldAgg) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    fn mean(&self) -> Option<f64> {
        (self.count > 0).then_some(self.mean)
    }

    /// Population standard deviation.
    fn std(&self) -> Option<f64> {
        (self.count > 0).then(|| (self.m2.max(0.0) / self.count as f64).sqrt())
    }
}

/// Cross-run statistics of one year.
#[derive(Debug, Clone, PartialEq)]
pub struct YearAgg {
    pub year: u32,
    stats: Vec<FieldAgg>,
}

impl YearAgg {
    fn new(year: u32) -> Self {
        YearAgg {
            year,
            stats: vec![FieldAgg::default(); field::COUNT],
        }
    }

    /// Mean of a field over the runs where it was defined; `None` if never.
    pub fn mean(&self, field: usize) -> Option<f64> {
        self.stats[field].mean()
    }

    pub fn std(&self, field: usize) -> Option<f64> {
        self.stats[field].std()
    }

    /// Runs in which the field was defined.
    pub fn defined_count(&self, field: usize) -> u64 {
        self.stats[field].count
    }
}

/// Per-year cross-run statistics of a whole Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunAggregate {
    pub spec: ScenarioSpec,
    rows: Vec<YearAgg>,
}

impl RunAggregate {
    pub fn rows(&self) -> &[YearAgg] {
        &self.rows
    }

    pub fn row(&self, year: usize) -> &YearAgg {
        &self.rows[year]
    }

    pub fn n_years(&self) -> usize {
        self.rows.len()
    }

    pub fn runs(&self) -> u32 {
        self.spec.config.runs
    }
}

fn accumulate_batch(spec: &ScenarioSpec, lo: u32, hi: u32) -> Result<Vec<YearAgg>> {
    let mut rows: Vec<YearAgg> = (0..=spec.config.years).map(YearAgg::new).collect();
    for run_index in lo..hi {
        let records = run_one(spec, run_index).map_err(|e| Error::RunFailed {
            run_index,
            source: Box::new(e),
        })?;
        for (row, record) in rows.iter_mut().zip(records.iter()) {
            for (agg, value) in row.stats.iter_mut().zip(record_values(record)) {
                if let Some(x) = value {
                    agg.push(x);
                }
            }
        }
    }
    Ok(rows)
}

/// Run the whole experiment and aggregate per-year means and standard
/// deviations across runs. Bit-identical for a fixed master seed no matter
/// how many worker threads execute it.
pub fn run_monte_carlo(spec: &ScenarioSpec) -> Result<RunAggregate> {
    spec.config.validate()?;
    let runs = spec.config.runs;
    let n_batches = runs.div_ceil(BATCH);
    let batches: Vec<Result<Vec<YearAgg>>> = (0..n_batches)
        .into_par_iter()
        .map(|b| accumulate_batch(spec, b * BATCH, ((b + 1) * BATCH).min(runs)))
        .collect();

    let mut rows: Vec<YearAgg> = (0..=spec.config.years).map(YearAgg::new).collect();
    for batch in batches {
        let batch = batch?;
        for (row, other) in rows.iter_mut().zip(batch.iter()) {
            for (agg, part) in row.stats.iter_mut().zip(other.stats.iter()) {
                agg.merge(part);
            }
        }
    }
    Ok(RunAggregate {
        spec: spec.clone(),
        rows,
    })
}
