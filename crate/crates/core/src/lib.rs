//! Simulator of gender diversity dynamics on networks of corporate boards.
//!
//! Firms are nodes of a scale-free interlock network; each firm carries a
//! board of seats. Every simulated year a fraction of members retires, the
//! target share of incoming women follows a logistic growth law, and a
//! share of the female hires is placed homophilically: vacancies are filled
//! preferentially at boards whose own and neighboring composition already
//! skews female. Metrics track how representation spreads across the
//! centrality hierarchy, how strongly connected boards correlate in
//! composition, and how members' local perception of the global share is
//! distorted along the way.
//!
//! The crate is organized bottom-up:
//!
//! * [`netgen`] — network generators (preferential attachment with optional
//!   fitness or group homophily), board-size sampling, tail-exponent fit
//! * [`boards`] — seat-level board state and its initializers
//! * [`dynamics`] — retirement, inflow growth laws, homophilic assignment
//! * [`metrics`] — centrality, representation bins, network homophily,
//!   perception ratios, appointment-weight statistics
//! * [`scenarios`] — preset experiment configurations and the deterministic
//!   parallel Monte Carlo driver
//! * [`output`] — CSV serialization of aggregates and run manifests
//! * [`plot`] — self-contained SVG charts for aggregate CSV files
//! * [`config`] — flat key-value configuration files and overrides
//!
//! Reproducibility is a hard guarantee: every run draws from a counter-based
//! stream derived from (master seed, run index), and aggregation reduces in
//! run order, so results are byte-identical for any worker count.

pub mod boards;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod metrics;
pub mod netgen;
pub mod output;
pub mod plot;
pub mod rng;
mod sampling;
pub mod scenarios;

pub use boards::{init_biased, init_unbiased, BoardState, Group, InitConfig, InitMode};
pub use dynamics::{
    assign_vacancies, grow_endogenous, grow_exogenous, homophily_weights, lambda_schedule, retire,
    step, DynamicsConfig, InflowState, Vacancies,
};
pub use error::{Error, Result};
pub use metrics::{
    eigencentrality, fstar_stats, network_homophily, perception, representation_bins,
    CentralityScores, Observer, YearRecord,
};
pub use netgen::{
    couple_sizes_to_degrees, fit_tail_exponent, gen_ba, gen_fitness_ba, gen_homophily_ba,
    sample_board_sizes, FirmGraph, GroupLabeling, NodeGroup,
};
pub use scenarios::{run_monte_carlo, run_one, RunAggregate, ScenarioSpec, SimConfig};
