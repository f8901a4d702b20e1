//! Board composition state and initial seat assignment.
//!
//! Seats are anonymous: the state tracks, per firm, how many seats are held
//! by each group and how many are vacant. Between simulation steps every
//! seat is occupied; vacancies exist only while a step is in flight.

use crate::error::{invalid, Result};
use crate::netgen::FirmGraph;
use crate::rng::SimRng;
use crate::sampling::WeightTree;
use std::io::Write;

/// Director group. `F` is the minority (women in the gender scenarios).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    F,
    M,
}

/// Per-firm seat composition. Total seat count is fixed for the whole
/// simulation; only occupancy changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardState {
    sizes: Vec<u32>,
    f: Vec<u32>,
    m: Vec<u32>,
    total_seats: u64,
}

impl BoardState {
    /// All seats occupied by group M.
    pub fn full_m(sizes: &[u32]) -> Self {
        BoardState {
            sizes: sizes.to_vec(),
            f: vec![0; sizes.len()],
            m: sizes.to_vec(),
            total_seats: sizes.iter().map(|&s| s as u64).sum(),
        }
    }

    pub fn n_firms(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, firm: usize) -> u32 {
        self.sizes[firm]
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn f_count(&self, firm: usize) -> u32 {
        self.f[firm]
    }

    pub fn m_count(&self, firm: usize) -> u32 {
        self.m[firm]
    }

    pub fn occupied(&self, firm: usize) -> u32 {
        self.f[firm] + self.m[firm]
    }

    pub fn vacant(&self, firm: usize) -> u32 {
        self.sizes[firm] - self.occupied(firm)
    }

    pub fn total_seats(&self) -> u64 {
        self.total_seats
    }

    pub fn total_f(&self) -> u64 {
        self.f.iter().map(|&c| c as u64).sum()
    }

    pub fn total_m(&self) -> u64 {
        self.m.iter().map(|&c| c as u64).sum()
    }

    pub fn total_occupied(&self) -> u64 {
        self.total_f() + self.total_m()
    }

    /// F share among occupied seats; 0 when nothing is occupied.
    pub fn share_f(&self) -> f64 {
        let occ = self.total_occupied();
        if occ == 0 {
            0.0
        } else {
            self.total_f() as f64 / occ as f64
        }
    }

    /// Own-board F share of one firm; 0 when the board is empty.
    pub fn firm_share_f(&self, firm: usize) -> f64 {
        let occ = self.occupied(firm);
        if occ == 0 {
            0.0
        } else {
            self.f[firm] as f64 / occ as f64
        }
    }

    /// Remove `count` occupied seats of `group` at `firm`.
    pub fn vacate(&mut self, firm: usize, group: Group, count: u32) {
        let slot = match group {
            Group::F => &mut self.f[firm],
            Group::M => &mut self.m[firm],
        };
        debug_assert!(count <= *slot);
        *slot -= count;
    }

    /// Seat `count` members of `group` at `firm`.
    pub fn fill(&mut self, firm: usize, group: Group, count: u32) {
        debug_assert!(count <= self.vacant(firm));
        match group {
            Group::F => self.f[firm] += count,
            Group::M => self.m[firm] += count,
        }
    }

    /// Debug snapshot, one row per seat: `firm_id,seat_idx,group` with `V`
    /// marking vacant seats.
    pub fn write_snapshot_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "firm_id,seat_idx,group")?;
        for firm in 0..self.n_firms() {
            let (f, occ, size) = (self.f[firm], self.occupied(firm), self.sizes[firm]);
            for seat in 0..size {
                let tag = if seat < f {
                    "F"
                } else if seat < occ {
                    "M"
                } else {
                    "V"
                };
                writeln!(w, "{firm},{seat},{tag}")?;
            }
        }
        Ok(())
    }
}

/// How the initial F seats are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    /// Uniform over all seats.
    Unbiased,
    /// Seat weight decays with firm degree (small firms favored).
    Biased,
}

/// Initial seat assignment parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitConfig {
    pub mode: InitMode,
    /// Bias intensity in [0, 1); only used in biased mode.
    pub gamma: f64,
    /// Overall starting F share of all seats.
    pub initial_share: f64,
}

impl Default for InitConfig {
    fn default() -> Self {
        InitConfig {
            mode: InitMode::Unbiased,
            gamma: 0.8,
            initial_share: 0.02,
        }
    }
}

fn check_share(initial_share: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&initial_share) {
        return Err(invalid(
            "initial_share",
            format!("must be in [0, 1], got {initial_share}"),
        ));
    }
    Ok(())
}

/// Exactly round(share * total_seats) F seats, drawn one at a time without
/// replacement with per-seat probability proportional to the firm's weight.
fn init_weighted(sizes: &[u32], weights: &[f64], share: f64, rng: &mut SimRng) -> BoardState {
    let mut state = BoardState::full_m(sizes);
    let n_f = (share * state.total_seats() as f64).round() as u64;
    let mut avail = sizes.to_vec();
    let mut tree = WeightTree::new(sizes.len());
    for (i, &s) in sizes.iter().enumerate() {
        tree.set(i, weights[i] * s as f64);
    }
    for _ in 0..n_f {
        let firm = tree
            .sample(rng)
            .expect("positive seat weights remain while F seats are owed");
        state.vacate(firm, Group::M, 1);
        state.fill(firm, Group::F, 1);
        avail[firm] -= 1;
        tree.set(firm, weights[firm] * avail[firm] as f64);
    }
    state
}

/// Initial assignment, uniform over seats: exactly
/// round(initial_share * total_seats) seats become F.
pub fn init_unbiased(sizes: &[u32], initial_share: f64, rng: &mut SimRng) -> Result<BoardState> {
    check_share(initial_share)?;
    let weights = vec![1.0; sizes.len()];
    Ok(init_weighted(sizes, &weights, initial_share, rng))
}

/// Seat weight at a firm of degree k, mean degree k_bar:
/// w = 1 + gamma * (k_bar - k) / k. Decreasing in k; w -> 1 - gamma > 0.
fn bias_weight(gamma: f64, mean_degree: f64, degree: f64) -> f64 {
    1.0 + gamma * (mean_degree - degree) / degree
}

/// Initial assignment biased toward low-degree firms: seat weights follow
/// [`bias_weight`], and exactly round(initial_share * total_seats) F seats
/// are drawn without replacement proportionally to them.
pub fn init_biased(
    sizes: &[u32],
    graph: &FirmGraph,
    gamma: f64,
    initial_share: f64,
    rng: &mut SimRng,
) -> Result<BoardState> {
    check_share(initial_share)?;
    if !(0.0..1.0).contains(&gamma) {
        return Err(invalid("gamma", format!("must be in [0, 1), got {gamma}")));
    }
    if sizes.len() != graph.n() {
        return Err(invalid(
            "sizes",
            format!("expected {} board sizes, got {}", graph.n(), sizes.len()),
        ));
    }
    let k_bar = graph.mean_degree();
    let weights: Vec<f64> = (0..graph.n())
        .map(|i| bias_weight(gamma, k_bar, graph.degree(i) as f64))
        .collect();
    Ok(init_weighted(sizes, &weights, initial_share, rng))
}

/// Dispatch on [`InitConfig::mode`].
pub fn init(
    sizes: &[u32],
    graph: &FirmGraph,
    cfg: &InitConfig,
    rng: &mut SimRng,
) -> Result<BoardState> {
    match cfg.mode {
        InitMode::Unbiased => init_unbiased(sizes, cfg.initial_share, rng),
        InitMode::Biased => init_biased(sizes, graph, cfg.gamma, cfg.initial_share, rng),
    }
}
