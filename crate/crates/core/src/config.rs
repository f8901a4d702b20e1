//! Flat key-value configuration: file loading, enum spellings, and the
//! scenario-or-file resolution used by the command line.
//!
//! A config file is TOML with only top-level keys, mirroring the field
//! names of the scenario parameters (the manifest echoes the same keys).
//! Unknown keys are rejected by name.

use crate::boards::InitMode;
use crate::dynamics::{EndoApplication, GrowthForm, GrowthMode, LambdaMode};
use crate::error::{invalid, Error, Result};
use crate::scenarios::{preset, ScenarioSpec, SimConfig};
use serde::Deserialize;
use std::path::Path;

pub fn init_mode_name(v: InitMode) -> &'static str {
    match v {
        InitMode::Unbiased => "unbiased",
        InitMode::Biased => "biased",
    }
}

pub fn lambda_mode_name(v: LambdaMode) -> &'static str {
    match v {
        LambdaMode::SizeDependent => "size_dependent",
        LambdaMode::Fixed => "fixed",
    }
}

pub fn growth_mode_name(v: GrowthMode) -> &'static str {
    match v {
        GrowthMode::Exogenous => "exogenous",
        GrowthMode::Endogenous => "endogenous",
    }
}

pub fn endo_application_name(v: EndoApplication) -> &'static str {
    match v {
        EndoApplication::Increment => "increment",
        EndoApplication::Literal => "literal",
    }
}

pub fn growth_form_name(v: GrowthForm) -> &'static str {
    match v {
        GrowthForm::Normalized => "normalized",
        GrowthForm::PerRetiree => "per_retiree",
    }
}

pub fn parse_init_mode(s: &str) -> Result<InitMode> {
    match s {
        "unbiased" => Ok(InitMode::Unbiased),
        "biased" => Ok(InitMode::Biased),
        _ => Err(invalid("mode", format!("expected unbiased or biased, got `{s}`"))),
    }
}

pub fn parse_lambda_mode(s: &str) -> Result<LambdaMode> {
    match s {
        "size_dependent" => Ok(LambdaMode::SizeDependent),
        "fixed" => Ok(LambdaMode::Fixed),
        _ => Err(invalid("lambda_mode", format!("expected size_dependent or fixed, got `{s}`"))),
    }
}

pub fn parse_growth_mode(s: &str) -> Result<GrowthMode> {
    match s {
        "exogenous" => Ok(GrowthMode::Exogenous),
        "endogenous" => Ok(GrowthMode::Endogenous),
        _ => Err(invalid("growth_mode", format!("expected exogenous or endogenous, got `{s}`"))),
    }
}

pub fn parse_endo_application(s: &str) -> Result<EndoApplication> {
    match s {
        "increment" => Ok(EndoApplication::Increment),
        "literal" => Ok(EndoApplication::Literal),
        _ => Err(invalid("endo_application", format!("expected increment or literal, got `{s}`"))),
    }
}

pub fn parse_growth_form(s: &str) -> Result<GrowthForm> {
    match s {
        "normalized" => Ok(GrowthForm::Normalized),
        "per_retiree" => Ok(GrowthForm::PerRetiree),
        _ => Err(invalid("growth_form", format!("expected normalized or per_retiree, got `{s}`"))),
    }
}

/// One config file: every key optional, laid over a base scenario.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Base preset to start from; plain defaults when absent.
    pub id: Option<String>,
    pub firms: Option<usize>,
    pub runs: Option<u32>,
    pub years: Option<u32>,
    pub master_seed: Option<u64>,
    pub m: Option<usize>,
    pub board_size_mean: Option<f64>,
    pub board_size_var: Option<f64>,
    pub min_board_size: Option<u32>,
    pub mode: Option<String>,
    pub gamma: Option<f64>,
    pub initial_share: Option<f64>,
    pub retire_rate: Option<f64>,
    pub g_f: Option<f64>,
    pub target_share: Option<f64>,
    pub lambda_mode: Option<String>,
    pub lambda_bar: Option<f64>,
    pub g_lambda: Option<f64>,
    pub y_m: Option<f64>,
    pub beta: Option<f64>,
    pub growth_mode: Option<String>,
    pub endo_application: Option<String>,
    pub growth_form: Option<String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Lay the file's explicit values over `cfg`.
    pub fn apply(&self, cfg: &mut SimConfig) -> Result<()> {
        if let Some(v) = self.firms {
            cfg.firms = v;
        }
        if let Some(v) = self.runs {
            cfg.runs = v;
        }
        if let Some(v) = self.years {
            cfg.years = v;
        }
        if let Some(v) = self.master_seed {
            cfg.master_seed = v;
        }
        if let Some(v) = self.m {
            cfg.m = v;
        }
        if let Some(v) = self.board_size_mean {
            cfg.board_size_mean = v;
        }
        if let Some(v) = self.board_size_var {
            cfg.board_size_var = v;
        }
        if let Some(v) = self.min_board_size {
            cfg.min_board_size = v;
        }
        if let Some(ref v) = self.mode {
            cfg.init.mode = parse_init_mode(v)?;
        }
        if let Some(v) = self.gamma {
            cfg.init.gamma = v;
        }
        if let Some(v) = self.initial_share {
            cfg.init.initial_share = v;
        }
        if let Some(v) = self.retire_rate {
            cfg.dynamics.retire_rate = v;
        }
        if let Some(v) = self.g_f {
            cfg.dynamics.g_f = v;
        }
        if let Some(v) = self.target_share {
            cfg.dynamics.target_share = v;
        }
        if let Some(ref v) = self.lambda_mode {
            cfg.dynamics.lambda_mode = parse_lambda_mode(v)?;
        }
        if let Some(v) = self.lambda_bar {
            cfg.dynamics.lambda_bar = v;
        }
        if let Some(v) = self.g_lambda {
            cfg.dynamics.g_lambda = v;
        }
        if let Some(v) = self.y_m {
            cfg.dynamics.y_m = v;
        }
        if let Some(v) = self.beta {
            cfg.dynamics.beta = v;
        }
        if let Some(ref v) = self.growth_mode {
            cfg.dynamics.growth_mode = parse_growth_mode(v)?;
        }
        if let Some(ref v) = self.endo_application {
            cfg.dynamics.endo_application = parse_endo_application(v)?;
        }
        if let Some(ref v) = self.growth_form {
            cfg.dynamics.growth_form = parse_growth_form(v)?;
        }
        cfg.dynamics.horizon_years = cfg.years;
        Ok(())
    }

    /// True when the file pins the run count (so outer defaults must not).
    pub fn sets_runs(&self) -> bool {
        self.runs.is_some()
    }
}

/// Turn a `run` argument into a spec: a known preset id, or a path to a
/// config file (its optional `id` picks the base preset).
pub fn resolve(source: &str) -> Result<ScenarioSpec> {
    if let Ok(spec) = preset(source) {
        return Ok(spec);
    }
    let path = Path::new(source);
    if path.is_file() {
        let file = FileConfig::load(path)?;
        let mut spec = match &file.id {
            Some(id) => preset(id)?,
            None => ScenarioSpec {
                id: "custom".to_string(),
                config: SimConfig::default(),
            },
        };
        if file.id.is_some() {
            spec.id = format!(
                "{}_custom",
                spec.id
            );
        }
        file.apply(&mut spec.config)?;
        spec.config.validate()?;
        return Ok(spec);
    }
    Err(Error::UnknownScenario(source.to_string()))
}
