//! One-year update of the board system: retirement, inflow growth,
//! homophily schedule, and vacancy assignment.
//!
//! The yearly step is: retire seats at random, read the post-retirement F
//! share y(t), evaluate the homophily fraction lambda(y), advance the
//! appointment share x(t) by a logistic growth law (optionally modulated by
//! the perception deviation measured on the pre-retirement state), then fill
//! all vacancies: a lambda fraction of the female hires follows local
//! attraction weights f*, the rest of the hires are placed uniformly.

use crate::boards::{BoardState, Group};
use crate::error::{invalid, Result};
use crate::netgen::FirmGraph;
use crate::rng::SimRng;
use crate::sampling::WeightTree;
use rand_distr::{Binomial, Distribution};

/// Lambda schedule: react to the current F share or stay constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    SizeDependent,
    Fixed,
}

/// Whether the inflow share grows on its own or is modulated by perception.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthMode {
    Exogenous,
    Endogenous,
}

/// How the perception factor enters the endogenous update: scaling the
/// yearly increment (keeps x monotone) or the whole new level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndoApplication {
    Increment,
    Literal,
}

/// Algebraic form of the logistic growth map. `Normalized` saturates at the
/// target share. `PerRetiree` divides the increment by the yearly
/// retirement count instead; it is kept selectable for auditing and is not
/// the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthForm {
    Normalized,
    PerRetiree,
}

/// All yearly-update parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsConfig {
    /// Fraction of occupied seats vacated per year.
    pub retire_rate: f64,
    /// Logistic growth rate of the appointment share.
    pub g_f: f64,
    /// Saturation level x* of the appointment share.
    pub target_share: f64,
    pub lambda_mode: LambdaMode,
    /// Upper bound (and fixed value) of lambda.
    pub lambda_bar: f64,
    /// Steepness of the size-dependent lambda logistic.
    pub g_lambda: f64,
    /// Midpoint of the size-dependent lambda logistic.
    pub y_m: f64,
    /// Weight of the own-board term in f*.
    pub beta: f64,
    pub growth_mode: GrowthMode,
    pub endo_application: EndoApplication,
    pub growth_form: GrowthForm,
    pub horizon_years: u32,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            retire_rate: 0.15,
            g_f: 0.16,
            target_share: 0.5,
            lambda_mode: LambdaMode::SizeDependent,
            lambda_bar: 0.9,
            g_lambda: 20.0,
            y_m: 0.16,
            beta: 2.5,
            growth_mode: GrowthMode::Exogenous,
            endo_application: EndoApplication::Increment,
            growth_form: GrowthForm::Normalized,
            horizon_years: 80,
        }
    }
}

impl DynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.retire_rate) {
            return Err(invalid("retire_rate", format!("must be in [0, 1], got {}", self.retire_rate)));
        }
        if !(self.g_f.is_finite() && self.g_f >= 0.0) {
            return Err(invalid("g_f", format!("must be finite and >= 0, got {}", self.g_f)));
        }
        if !(self.target_share > 0.0 && self.target_share <= 1.0) {
            return Err(invalid("target_share", format!("must be in (0, 1], got {}", self.target_share)));
        }
        if !(self.lambda_bar > 0.0 && self.lambda_bar <= 1.0) {
            return Err(invalid("lambda_bar", format!("must be in (0, 1], got {}", self.lambda_bar)));
        }
        if !self.g_lambda.is_finite() {
            return Err(invalid("g_lambda", format!("must be finite, got {}", self.g_lambda)));
        }
        if !(0.0..=1.0).contains(&self.y_m) {
            return Err(invalid("y_m", format!("must be in [0, 1], got {}", self.y_m)));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(invalid("beta", format!("must be finite and >= 0, got {}", self.beta)));
        }
        Ok(())
    }
}

/// Share of F among this year's appointments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InflowState {
    pub x: f64,
}

/// Seats vacated by one retirement pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vacancies {
    /// Vacated seat count per firm.
    pub per_firm: Vec<u32>,
    pub total: u32,
    /// Composition of the leavers, for bookkeeping only.
    pub retired_f: u32,
    pub retired_m: u32,
}

impl Vacancies {
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
}

fn draw_binomial(count: u32, p: f64, rng: &mut SimRng) -> u32 {
    if count == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return count;
    }
    Binomial::new(count as u64, p)
        .expect("probability already validated")
        .sample(rng) as u32
}

/// Vacate each occupied seat independently with probability `retire_rate`.
pub fn retire(state: &mut BoardState, retire_rate: f64, rng: &mut SimRng) -> Result<Vacancies> {
    if !(0.0..=1.0).contains(&retire_rate) {
        return Err(invalid("retire_rate", format!("must be in [0, 1], got {retire_rate}")));
    }
    let n = state.n_firms();
    let mut per_firm = vec![0u32; n];
    let (mut total, mut retired_f, mut retired_m) = (0u32, 0u32, 0u32);
    for firm in 0..n {
        let vf = draw_binomial(state.f_count(firm), retire_rate, rng);
        let vm = draw_binomial(state.m_count(firm), retire_rate, rng);
        state.vacate(firm, Group::F, vf);
        state.vacate(firm, Group::M, vm);
        per_firm[firm] = vf + vm;
        total += vf + vm;
        retired_f += vf;
        retired_m += vm;
    }
    Ok(Vacancies {
        per_firm,
        total,
        retired_f,
        retired_m,
    })
}

/// Logistic growth of the appointment share with saturation at x*:
/// x' = min(x*, x + g_f * x * (1 - x/x*)).
pub fn grow_exogenous(x: f64, g_f: f64, x_star: f64) -> f64 {
    (x + g_f * x * (1.0 - x / x_star)).min(x_star)
}

/// Perception-modulated growth. Increment mode scales the yearly gain by
/// max(0, 1 + delta_s), so the share never decreases; literal mode scales
/// the whole new level and clamps to [0, x*].
pub fn grow_endogenous(
    x: f64,
    g_f: f64,
    x_star: f64,
    delta_s: f64,
    application: EndoApplication,
) -> f64 {
    match application {
        EndoApplication::Increment => {
            let gain = (1.0 + delta_s).max(0.0) * g_f * x * (1.0 - x / x_star);
            (x + gain).min(x_star)
        }
        EndoApplication::Literal => {
            ((1.0 + delta_s) * (x + g_f * x * (1.0 - x / x_star))).clamp(0.0, x_star)
        }
    }
}

/// Growth map in per-retiree form: the increment is divided by the number
/// of seats vacated this year. No retirements leaves x unchanged.
fn grow_per_retiree(x: f64, g_f: f64, retired: u32) -> f64 {
    if retired == 0 {
        x
    } else {
        x + g_f * x * 2.0 * (1.0 - x) / retired as f64
    }
}

/// Fraction of female hires placed homophilically. Size-dependent mode is a
/// reversed logistic in the current F share y, capped at lambda_bar; fixed
/// mode always returns lambda_bar.
pub fn lambda_schedule(y: f64, cfg: &DynamicsConfig) -> f64 {
    match cfg.lambda_mode {
        LambdaMode::Fixed => cfg.lambda_bar,
        LambdaMode::SizeDependent => {
            let logistic = 1.0 - 1.0 / (1.0 + (-cfg.g_lambda * (y - cfg.y_m)).exp());
            logistic.min(cfg.lambda_bar)
        }
    }
}

/// Attraction weight of each vacancy, flattened per vacant seat (firms in
/// ascending id order, a firm's vacancies contiguous). A vacancy at firm i
/// weighs f*_i = neighborhood F share + beta * own-board F share, both over
/// currently occupied seats. Weights are raw; samplers normalize.
pub fn homophily_weights(
    state: &BoardState,
    graph: &FirmGraph,
    beta: f64,
    vacancies: &Vacancies,
) -> Vec<f64> {
    let per_firm = crate::metrics::fstar_values(state, graph, beta);
    let mut out = Vec::with_capacity(vacancies.total as usize);
    for (firm, &v) in vacancies.per_firm.iter().enumerate() {
        for _ in 0..v {
            out.push(per_firm[firm]);
        }
    }
    out
}

fn fstar_of(beta: f64, i: usize, occ_f: &[u32], occ: &[u32], cf: &[u64], ct: &[u64]) -> f64 {
    let c_term = if ct[i] > 0 { cf[i] as f64 / ct[i] as f64 } else { 0.0 };
    let b_term = if occ[i] > 0 {
        beta * occ_f[i] as f64 / occ[i] as f64
    } else {
        0.0
    };
    c_term + b_term
}

/// Fill every vacancy. round(x_next * V) hires are F; of those,
/// round(lambda * n_f) are drawn sequentially with probability proportional
/// to f* (recomputed after each placement, which only moves the weights of
/// the placed firm and its neighbors), the remaining F hires are uniform
/// over open seats, and all other seats are filled M. When every f* weight
/// is zero a draw falls back to a uniform one.
pub fn assign_vacancies(
    state: &mut BoardState,
    graph: &FirmGraph,
    vacancies: &Vacancies,
    x_next: f64,
    lambda: f64,
    beta: f64,
    rng: &mut SimRng,
) -> Result<()> {
    if !(0.0..=1.0).contains(&x_next) {
        return Err(invalid("x_next", format!("must be in [0, 1], got {x_next}")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(invalid("lambda", format!("must be in [0, 1], got {lambda}")));
    }
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(invalid("beta", format!("must be finite and >= 0, got {beta}")));
    }
    if vacancies.is_empty() {
        return Ok(());
    }
    let n = state.n_firms();
    let n_f = (x_next * vacancies.total as f64).round() as u32;
    let n_h = (lambda * n_f as f64).round() as u32;

    let mut vac = vacancies.per_firm.clone();
    let mut occ_f: Vec<u32> = (0..n).map(|i| state.f_count(i)).collect();
    let mut occ: Vec<u32> = (0..n).map(|i| state.occupied(i)).collect();
    let mut cf = vec![0u64; n];
    let mut ct = vec![0u64; n];
    for i in 0..n {
        for &j in graph.neighbors(i) {
            cf[i] += occ_f[j as usize] as u64;
            ct[i] += occ[j as usize] as u64;
        }
    }

    let mut weighted = WeightTree::new(n);
    let mut uniform = WeightTree::new(n);
    for i in 0..n {
        if vac[i] > 0 {
            weighted.set(i, fstar_of(beta, i, &occ_f, &occ, &cf, &ct) * vac[i] as f64);
            uniform.set(i, vac[i] as f64);
        }
    }

    for _ in 0..n_h {
        let i = match weighted.sample(rng) {
            Some(i) => i,
            None => uniform
                .sample(rng)
                .expect("open seats remain while hires are owed"),
        };
        state.fill(i, Group::F, 1);
        vac[i] -= 1;
        occ_f[i] += 1;
        occ[i] += 1;
        for &j in graph.neighbors(i) {
            let j = j as usize;
            cf[j] += 1;
            ct[j] += 1;
        }
        weighted.set(i, fstar_of(beta, i, &occ_f, &occ, &cf, &ct) * vac[i] as f64);
        uniform.set(i, vac[i] as f64);
        for &j in graph.neighbors(i) {
            let j = j as usize;
            weighted.set(j, fstar_of(beta, j, &occ_f, &occ, &cf, &ct) * vac[j] as f64);
        }
    }

    for _ in n_h..n_f {
        let i = uniform
            .sample(rng)
            .expect("open seats remain while hires are owed");
        state.fill(i, Group::F, 1);
        vac[i] -= 1;
        uniform.set(i, vac[i] as f64);
    }

    for (i, &v) in vac.iter().enumerate() {
        if v > 0 {
            state.fill(i, Group::M, v);
        }
    }
    Ok(())
}

/// Outcome bookkeeping of one yearly step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    /// Lambda applied to this year's hires.
    pub lambda_used: f64,
    /// Perception deviation fed into the growth update (pre-retirement).
    pub delta_s_used: f64,
    /// Post-retirement F share that lambda reacted to.
    pub y_post_retirement: f64,
    pub vacancies: u32,
    pub retired_f: u32,
    pub retired_m: u32,
}

/// Advance the system one year. `delta_s_pre` must be the perception
/// deviation measured on the incoming (pre-retirement) state; it only
/// matters in endogenous growth mode. Lambda reacts to the post-retirement
/// F share (falling back to the pre-retirement share if retirement emptied
/// every board).
pub fn step(
    state: &mut BoardState,
    graph: &FirmGraph,
    inflow: &mut InflowState,
    cfg: &DynamicsConfig,
    delta_s_pre: f64,
    rng: &mut SimRng,
) -> Result<StepReport> {
    cfg.validate()?;
    let pre_share = state.share_f();
    let vac = retire(state, cfg.retire_rate, rng)?;
    let y = if state.total_occupied() > 0 {
        state.share_f()
    } else {
        pre_share
    };
    let lambda = lambda_schedule(y, cfg);

    let x_next = match (cfg.growth_mode, cfg.growth_form) {
        (GrowthMode::Exogenous, GrowthForm::Normalized) => {
            grow_exogenous(inflow.x, cfg.g_f, cfg.target_share)
        }
        (GrowthMode::Endogenous, GrowthForm::Normalized) => grow_endogenous(
            inflow.x,
            cfg.g_f,
            cfg.target_share,
            delta_s_pre,
            cfg.endo_application,
        ),
        (GrowthMode::Exogenous, GrowthForm::PerRetiree) => {
            grow_per_retiree(inflow.x, cfg.g_f, vac.total).clamp(0.0, cfg.target_share)
        }
        (GrowthMode::Endogenous, GrowthForm::PerRetiree) => {
            let base = grow_per_retiree(inflow.x, cfg.g_f, vac.total);
            match cfg.endo_application {
                EndoApplication::Increment => {
                    let gain = (1.0 + delta_s_pre).max(0.0) * (base - inflow.x);
                    (inflow.x + gain).clamp(0.0, cfg.target_share)
                }
                EndoApplication::Literal => {
                    ((1.0 + delta_s_pre) * base).clamp(0.0, cfg.target_share)
                }
            }
        }
    };

    assign_vacancies(state, graph, &vac, x_next, lambda, cfg.beta, rng)?;
    inflow.x = x_next;
    Ok(StepReport {
        lambda_used: lambda,
        delta_s_used: delta_s_pre,
        y_post_retirement: y,
        vacancies: vac.total,
        retired_f: vac.retired_f,
        retired_m: vac.retired_m,
    })
}
