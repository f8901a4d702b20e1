//! Observables: eigenvector centrality, representation across the
//! centrality range, outcome homophily, perception ratios, and the
//! dispersion of the attraction weights f*.
//!
//! All functions here are read-only over the board state.

use crate::boards::BoardState;
use crate::error::{invalid, Error, Result};
use crate::netgen::FirmGraph;

/// Per-firm eigenvector centrality, scaled to unit maximum. Fixed for a
/// whole run because the firm network is static.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    scores: Vec<f64>,
}

impl CentralityScores {
    /// Wrap externally computed scores; rescales to unit maximum.
    pub fn from_raw(scores: Vec<f64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(invalid("scores", "must be non-empty"));
        }
        if scores.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(invalid("scores", "must be finite and non-negative"));
        }
        let max = scores.iter().cloned().fold(0.0, f64::max);
        if max == 0.0 {
            return Err(invalid("scores", "must contain a positive value"));
        }
        Ok(CentralityScores {
            scores: scores.into_iter().map(|s| s / max).collect(),
        })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn get(&self, firm: usize) -> f64 {
        self.scores[firm]
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Dominant adjacency eigenvector by damped power iteration
/// (v <- 0.5 v + 0.5 A v, max-normalized each round). The damping shifts
/// every eigenvalue up by the same amount, leaving the eigenvectors intact
/// while preventing oscillation on near-bipartite graphs. Converged when
/// successive vectors differ by less than `tol` in max-norm.
pub fn eigencentrality(graph: &FirmGraph, tol: f64, max_iter: usize) -> Result<CentralityScores> {
    let n = graph.n();
    if n == 0 {
        return Err(invalid("graph", "must be non-empty"));
    }
    let mut v = vec![1.0f64; n];
    let mut w = vec![0.0f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        for i in 0..n {
            let mut acc = 0.0;
            for &j in graph.neighbors(i) {
                acc += v[j as usize];
            }
            w[i] = 0.5 * v[i] + 0.5 * acc;
        }
        let max = w.iter().cloned().fold(0.0, f64::max);
        for x in w.iter_mut() {
            *x /= max;
        }
        residual = v
            .iter()
            .zip(w.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut w);
        if residual < tol {
            return Ok(CentralityScores { scores: v });
        }
    }
    Err(Error::NoConvergence { max_iter, residual })
}

/// Firms ranked by centrality (descending, ties by id) and split into
/// `n_bins` equal-count bins, any remainder going to the most central bins.
/// Returns per bin the F share among its seats divided by the overall F
/// share (0 when the overall share is 0), most central bin first.
pub fn representation_bins(
    state: &BoardState,
    scores: &CentralityScores,
    n_bins: usize,
) -> Vec<f64> {
    assert!(n_bins >= 1, "need at least one bin");
    let n = state.n_firms();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        scores
            .get(b)
            .partial_cmp(&scores.get(a))
            .expect("centrality scores are finite")
            .then(a.cmp(&b))
    });

    let overall = state.share_f();
    let (base, rem) = (n / n_bins, n % n_bins);
    let mut out = Vec::with_capacity(n_bins);
    let mut cursor = 0;
    for b in 0..n_bins {
        let len = base + usize::from(b < rem);
        let firms = &order[cursor..cursor + len];
        cursor += len;
        let f: u64 = firms.iter().map(|&i| state.f_count(i) as u64).sum();
        let occ: u64 = firms.iter().map(|&i| state.occupied(i) as u64).sum();
        let share = if occ == 0 { 0.0 } else { f as f64 / occ as f64 };
        out.push(if overall == 0.0 { 0.0 } else { share / overall });
    }
    out
}

/// Pooled F share on the boards adjacent to each firm (the firm's own board
/// excluded unless `include_self`). Firms whose neighborhood has no occupied
/// seats get 0.
fn neighbor_shares(state: &BoardState, graph: &FirmGraph, include_self: bool) -> Vec<f64> {
    (0..state.n_firms())
        .map(|i| {
            let mut f: u64 = 0;
            let mut occ: u64 = 0;
            for &j in graph.neighbors(i) {
                f += state.f_count(j as usize) as u64;
                occ += state.occupied(j as usize) as u64;
            }
            if include_self {
                f += state.f_count(i) as u64;
                occ += state.occupied(i) as u64;
            }
            if occ == 0 {
                0.0
            } else {
                f as f64 / occ as f64
            }
        })
        .collect()
}

/// Pearson correlation across firms between own-board F share and the
/// pooled F share of the neighboring boards. Returns 0 when either variable
/// is constant.
pub fn network_homophily(state: &BoardState, graph: &FirmGraph) -> f64 {
    let n = state.n_firms();
    if n < 2 {
        return 0.0;
    }
    let own: Vec<f64> = (0..n).map(|i| state.firm_share_f(i)).collect();
    let nb = neighbor_shares(state, graph, false);
    pearson(&own, &nb)
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let constant = |v: &[f64]| v.windows(2).all(|w| w[0] == w[1]);
    if constant(x) || constant(y) {
        return 0.0;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y.iter()) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Who is looking when perception is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observer {
    F,
    M,
    All,
}

/// Average perceived F share of the observer group, relative to the true
/// share. Every occupied seat observes the pooled F share on the boards of
/// its firm's neighbors (own board excluded unless `include_self`); the
/// seat-weighted mean of those observations is divided by the overall F
/// share. `None` when the observer group holds no seats; 0 when the overall
/// share is 0.
pub fn perception(
    state: &BoardState,
    graph: &FirmGraph,
    observer: Observer,
    include_self: bool,
) -> Option<f64> {
    let shares = neighbor_shares(state, graph, include_self);
    perception_from_shares(state, &shares, observer)
}

fn perception_from_shares(state: &BoardState, shares: &[f64], observer: Observer) -> Option<f64> {
    let mut weighted = 0.0f64;
    let mut seats: u64 = 0;
    for i in 0..state.n_firms() {
        let count = match observer {
            Observer::F => state.f_count(i),
            Observer::M => state.m_count(i),
            Observer::All => state.occupied(i),
        };
        weighted += count as f64 * shares[i];
        seats += count as u64;
    }
    if seats == 0 {
        return None;
    }
    let overall = state.share_f();
    if overall == 0.0 {
        return Some(0.0);
    }
    Some(weighted / seats as f64 / overall)
}

/// All three perception ratios from one neighborhood pass.
pub fn perception_all_observers(
    state: &BoardState,
    graph: &FirmGraph,
    include_self: bool,
) -> (Option<f64>, Option<f64>, Option<f64>) {
    let shares = neighbor_shares(state, graph, include_self);
    (
        perception_from_shares(state, &shares, Observer::F),
        perception_from_shares(state, &shares, Observer::M),
        perception_from_shares(state, &shares, Observer::All),
    )
}

/// Perception deviation driving endogenous growth: the all-seats perception
/// ratio minus one. Defined as 0 while no F seats exist (there is nothing
/// to misperceive yet) or when no seat is occupied.
pub fn perception_deviation(state: &BoardState, graph: &FirmGraph) -> f64 {
    if state.total_f() == 0 {
        return 0.0;
    }
    match perception(state, graph, Observer::All, false) {
        Some(ratio) => ratio - 1.0,
        None => 0.0,
    }
}

/// Attraction weight of each firm: pooled neighborhood F share plus beta
/// times the own-board F share, both over occupied seats. A term with an
/// empty denominator contributes 0.
pub(crate) fn fstar_values(state: &BoardState, graph: &FirmGraph, beta: f64) -> Vec<f64> {
    let nb = neighbor_shares(state, graph, false);
    (0..state.n_firms())
        .map(|i| {
            let own = if state.occupied(i) > 0 {
                beta * state.firm_share_f(i)
            } else {
                0.0
            };
            nb[i] + own
        })
        .collect()
}

/// Mean and coefficient of variation of f* evaluated at every seat (a
/// firm's seats all carry the firm's f*). The cv is 0 when the mean is 0.
pub fn fstar_stats(state: &BoardState, graph: &FirmGraph, beta: f64) -> (f64, f64) {
    let values = fstar_values(state, graph, beta);
    let total = state.total_seats();
    if total == 0 {
        return (0.0, 0.0);
    }
    let mean = (0..state.n_firms())
        .map(|i| state.size(i) as f64 * values[i])
        .sum::<f64>()
        / total as f64;
    if mean == 0.0 {
        return (0.0, 0.0);
    }
    let var = (0..state.n_firms())
        .map(|i| state.size(i) as f64 * (values[i] - mean).powi(2))
        .sum::<f64>()
        / total as f64;
    (mean, var.sqrt() / mean)
}

/// Number of centrality bins in the standard record.
pub const N_BINS: usize = 20;

/// All observables of one simulated year.
#[derive(Debug, Clone, PartialEq)]
pub struct YearRecord {
    pub year: u32,
    /// F share among this year's appointments.
    pub inflow_x: f64,
    /// Overall F share of occupied seats at year end.
    pub share_f: f64,
    pub lambda_used: f64,
    pub net_homophily: f64,
    pub perc_f_by_f: Option<f64>,
    pub perc_f_by_m: Option<f64>,
    pub perc_f_by_all: Option<f64>,
    /// Perception deviation measured on this year's final state.
    pub delta_s: f64,
    pub fstar_mean: f64,
    pub fstar_cv: f64,
    /// Representation ratios, most central bin first.
    pub rep_bins: Vec<f64>,
}

/// Assemble the record for the current state.
pub fn year_record(
    year: u32,
    state: &BoardState,
    graph: &FirmGraph,
    scores: &CentralityScores,
    inflow_x: f64,
    lambda_used: f64,
    beta: f64,
) -> YearRecord {
    let (by_f, by_m, by_all) = perception_all_observers(state, graph, false);
    let delta_s = if state.total_f() == 0 {
        0.0
    } else {
        by_all.map(|r| r - 1.0).unwrap_or(0.0)
    };
    let (fstar_mean, fstar_cv) = fstar_stats(state, graph, beta);
    YearRecord {
        year,
        inflow_x,
        share_f: state.share_f(),
        lambda_used,
        net_homophily: network_homophily(state, graph),
        perc_f_by_f: by_f,
        perc_f_by_m: by_m,
        perc_f_by_all: by_all,
        delta_s,
        fstar_mean,
        fstar_cv,
        rep_bins: representation_bins(state, scores, N_BINS),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boards::{init_unbiased, BoardState, Group};
    use crate::netgen::{gen_ba, FirmGraph};
    use crate::rng::run_rng;

    fn star5() -> FirmGraph {
        FirmGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap()
    }

    #[test]
    fn star_hub_is_most_central() {
        let scores = eigencentrality(&star5(), 1e-10, 100_000).unwrap();
        assert_eq!(scores.get(0), 1.0);
        for leaf in 1..6 {
            assert!(scores.get(leaf) < 1.0);
            assert!((scores.get(leaf) - scores.get(1)).abs() < 1e-9);
        }
        // exact dominant eigenvector of a 5-leaf star: leaves at 1/sqrt(5)
        assert!((scores.get(1) - 1.0 / 5.0f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn cycle_scores_are_uniform() {
        let g = FirmGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let scores = eigencentrality(&g, 1e-10, 100_000).unwrap();
        for i in 0..6 {
            assert!((scores.get(i) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn relabeling_permutes_scores() {
        let g = gen_ba(40, 2, &mut run_rng(3, 0)).unwrap();
        let n = g.n() as u32;
        let perm = |v: u32| n - 1 - v;
        let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (perm(u), perm(v))).collect();
        let h = FirmGraph::from_edges(40, &edges).unwrap();
        let sg = eigencentrality(&g, 1e-12, 100_000).unwrap();
        let sh = eigencentrality(&h, 1e-12, 100_000).unwrap();
        for i in 0..40 {
            assert!((sg.get(i) - sh.get(perm(i as u32) as usize)).abs() < 1e-8);
        }
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let err = eigencentrality(&star5(), 1e-30, 2).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { max_iter: 2, .. }));
        assert!(eigencentrality(&FirmGraph::from_edges(0, &[]).unwrap(), 1e-10, 10).is_err());
    }

    #[test]
    fn from_raw_normalizes_and_validates() {
        let s = CentralityScores::from_raw(vec![2.0, 1.0, 4.0]).unwrap();
        assert_eq!(s.scores(), &[0.5, 0.25, 1.0]);
        assert!(CentralityScores::from_raw(vec![]).is_err());
        assert!(CentralityScores::from_raw(vec![0.0, 0.0]).is_err());
        assert!(CentralityScores::from_raw(vec![1.0, -0.1]).is_err());
    }

    /// Center board of 5 M; four leaves of 1 F + 4 M each.
    fn perception_star() -> (BoardState, FirmGraph) {
        let g = FirmGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mut state = BoardState::full_m(&[5, 5, 5, 5, 5]);
        for leaf in 1..5 {
            state.vacate(leaf, Group::M, 1);
            state.fill(leaf, Group::F, 1);
        }
        (state, g)
    }

    #[test]
    fn star_perception_hand_values() {
        let (state, g) = perception_star();
        assert!((state.share_f() - 0.16).abs() < 1e-15);
        // every F sits on a leaf and sees only the all-M center
        assert_eq!(perception(&state, &g, Observer::F, false), Some(0.0));
        // 5 center M see 4F/20 = 0.2; 16 leaf M see 0
        let by_m = perception(&state, &g, Observer::M, false).unwrap();
        assert!((by_m - (1.0 / 21.0) / 0.16).abs() < 1e-12);
        let by_all = perception(&state, &g, Observer::All, false).unwrap();
        assert!((by_all - 0.25).abs() < 1e-12);
        // with the own board included each F also sees herself
        let with_self = perception(&state, &g, Observer::F, true).unwrap();
        assert!((with_self - 0.625).abs() < 1e-12);
    }

    #[test]
    fn perception_weighted_average_identity() {
        let g = gen_ba(80, 3, &mut run_rng(10, 0)).unwrap();
        let state = init_unbiased(&vec![7; 80], 0.3, &mut run_rng(10, 1)).unwrap();
        let (f, m, all) = perception_all_observers(&state, &g, false);
        let (nf, nm) = (state.total_f() as f64, state.total_m() as f64);
        let mix = (nf * f.unwrap() + nm * m.unwrap()) / (nf + nm);
        assert!((mix - all.unwrap()).abs() < 1e-12);
        // single-observer calls agree with the batched pass
        assert_eq!(perception(&state, &g, Observer::F, false), f);
    }

    #[test]
    fn empty_observer_group_is_absent() {
        let g = star5();
        let state = BoardState::full_m(&[3; 6]);
        assert_eq!(perception(&state, &g, Observer::F, false), None);
        // no women anywhere: M's perceived-vs-actual ratio pinned to 0
        assert_eq!(perception(&state, &g, Observer::M, false), Some(0.0));
        assert_eq!(perception_deviation(&state, &g), 0.0);
    }

    #[test]
    fn path_homophily_matches_hand_pearson() {
        // own shares (1, 1, 0, 0); pooled neighbor shares (1, 0.5, 0.5, 0)
        let g = FirmGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut state = BoardState::full_m(&[2, 2, 2, 2]);
        for firm in 0..2 {
            state.vacate(firm, Group::M, 2);
            state.fill(firm, Group::F, 2);
        }
        let r = network_homophily(&state, &g);
        assert!((r - 1.0 / 2.0f64.sqrt()).abs() < 1e-12, "r = {r}");
    }

    #[test]
    fn constant_shares_give_zero_correlation() {
        let g = star5();
        let mut state = BoardState::full_m(&[4; 6]);
        assert_eq!(network_homophily(&state, &g), 0.0);
        for i in 0..6 {
            state.vacate(i, Group::M, 2);
            state.fill(i, Group::F, 2);
        }
        assert_eq!(network_homophily(&state, &g), 0.0);
    }

    #[test]
    fn label_swap_preserves_correlation() {
        let g = gen_ba(60, 2, &mut run_rng(20, 0)).unwrap();
        let state = init_unbiased(&vec![6; 60], 0.5, &mut run_rng(20, 1)).unwrap();
        let mut swapped = BoardState::full_m(&vec![6; 60]);
        for i in 0..60 {
            swapped.vacate(i, Group::M, 6);
            swapped.fill(i, Group::F, state.m_count(i));
            swapped.fill(i, Group::M, state.f_count(i));
        }
        let r1 = network_homophily(&state, &g);
        let r2 = network_homophily(&swapped, &g);
        assert!((r1 - r2).abs() < 1e-12);
        assert!(r1.abs() <= 1.0);
    }

    #[test]
    fn fstar_two_firm_worked_example() {
        let g = FirmGraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut state = BoardState::full_m(&[10, 10]);
        state.vacate(0, Group::M, 2);
        state.fill(0, Group::F, 2);
        state.vacate(1, Group::M, 4);
        state.fill(1, Group::F, 4);
        let values = fstar_values(&state, &g, 2.5);
        assert!((values[0] - 0.9).abs() < 1e-15);
        assert!((values[1] - 1.2).abs() < 1e-15);
        let (mean, cv) = fstar_stats(&state, &g, 2.5);
        assert!((mean - 1.05).abs() < 1e-12);
        assert!((cv - 0.15 / 1.05).abs() < 1e-12);
    }

    #[test]
    fn fstar_degenerate_cases() {
        let g = FirmGraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut equal = BoardState::full_m(&[10, 10]);
        for i in 0..2 {
            equal.vacate(i, Group::M, 5);
            equal.fill(i, Group::F, 5);
        }
        let (mean, cv) = fstar_stats(&equal, &g, 2.5);
        assert!((mean - 1.75).abs() < 1e-12);
        assert_eq!(cv, 0.0);

        let none = BoardState::full_m(&[10, 10]);
        assert_eq!(fstar_stats(&none, &g, 2.5), (0.0, 0.0));
    }

    #[test]
    fn bins_isolate_the_bottom_of_the_ranking() {
        let n = 40;
        // synthetic strictly decreasing centrality by id
        let scores =
            CentralityScores::from_raw((0..n).map(|i| 1.0 / (i + 1) as f64).collect()).unwrap();
        let mut state = BoardState::full_m(&vec![5; n]);
        state.vacate(n - 1, Group::M, 5);
        state.fill(n - 1, Group::F, 5);
        let bins = representation_bins(&state, &scores, N_BINS);
        assert_eq!(bins.len(), N_BINS);
        for b in 0..19 {
            assert_eq!(bins[b], 0.0);
        }
        assert!(bins[19] > 0.0);
        // bin 20 holds firms 38 and 39: share 0.5 against overall 1/40
        assert!((bins[19] - 0.5 / (1.0 / 40.0)).abs() < 1e-12);
    }

    #[test]
    fn bin_shares_reaggregate_to_overall_share() {
        let n = 103; // deliberately not divisible by 20
        let g = gen_ba(n, 3, &mut run_rng(31, 0)).unwrap();
        let scores = eigencentrality(&g, 1e-10, 100_000).unwrap();
        let sizes: Vec<u32> = (0..n).map(|i| 3 + (i % 9) as u32).collect();
        let state = init_unbiased(&sizes, 0.23, &mut run_rng(31, 1)).unwrap();
        let bins = representation_bins(&state, &scores, N_BINS);
        // reconstruct: sum over bins of seats_b * share_b must equal total F
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            scores
                .get(b)
                .partial_cmp(&scores.get(a))
                .unwrap()
                .then(a.cmp(&b))
        });
        let (base, rem) = (n / N_BINS, n % N_BINS);
        let mut cursor = 0;
        let mut total = 0.0;
        for (b, ratio) in bins.iter().enumerate() {
            let len = base + usize::from(b < rem);
            let seats: u64 = order[cursor..cursor + len]
                .iter()
                .map(|&i| state.occupied(i) as u64)
                .sum();
            cursor += len;
            total += seats as f64 * ratio * state.share_f();
        }
        assert!((total - state.total_f() as f64).abs() < 1e-6);
    }

    #[test]
    fn zero_share_bins_are_all_zero() {
        let g = star5();
        let scores = eigencentrality(&g, 1e-10, 100_000).unwrap();
        let state = BoardState::full_m(&[3; 6]);
        assert!(representation_bins(&state, &scores, 4).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn metrics_leave_state_untouched() {
        let g = gen_ba(50, 3, &mut run_rng(40, 0)).unwrap();
        let state = init_unbiased(&vec![8; 50], 0.1, &mut run_rng(40, 1)).unwrap();
        let before = state.clone();
        let scores = eigencentrality(&g, 1e-10, 100_000).unwrap();
        let record = year_record(3, &state, &g, &scores, 0.023, 0.9, 2.5);
        assert_eq!(state, before);
        assert_eq!(record.year, 3);
        assert_eq!(record.rep_bins.len(), N_BINS);
        assert!((record.share_f - 0.1).abs() < 1e-12);
        assert!(record.perc_f_by_f.is_some());
        assert_eq!(
            record.delta_s,
            record.perc_f_by_all.unwrap() - 1.0
        );
    }
}
