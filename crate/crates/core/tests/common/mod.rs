// Shared helpers for the integration suites. Each test binary uses a
// different subset, so unused items are expected per binary.
#![allow(dead_code)]

use boardnet::netgen::FirmGraph;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator).
pub fn sample_std(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() as f64 - 1.0)).sqrt()
}

/// Standard error of the mean.
pub fn sem(xs: &[f64]) -> f64 {
    sample_std(xs) / (xs.len() as f64).sqrt()
}

/// Two-sample Kolmogorov-Smirnov statistic: the largest gap between the
/// empirical CDFs of `a` and `b`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Rejection threshold for the two-sample KS test at significance 0.01.
pub fn ks_critical_01(n: usize, m: usize) -> f64 {
    1.628 * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// P(X >= k) for X ~ Binomial(n, p). Used as a one-sided sign-test p-value.
pub fn binom_tail_geq(k: usize, n: usize, p: f64) -> f64 {
    let ln_n = ln_factorial(n);
    (k..=n)
        .map(|i| {
            let ln_c = ln_n - ln_factorial(i) - ln_factorial(n - i);
            (ln_c + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln()).exp()
        })
        .sum()
}

/// Dense eigenvector-centrality oracle: symmetric eigendecomposition of the
/// full adjacency matrix, Perron vector rescaled to max 1.
pub fn dense_eigencentrality(graph: &FirmGraph) -> Vec<f64> {
    let n = graph.n();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (u, v) in graph.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let eig = nalgebra::SymmetricEigen::new(a);
    let mut top = 0;
    for i in 1..n {
        if eig.eigenvalues[i] > eig.eigenvalues[top] {
            top = i;
        }
    }
    let mut v: Vec<f64> = eig.eigenvectors.column(top).iter().copied().collect();
    let peak = v
        .iter()
        .copied()
        .max_by(|x, y| x.abs().total_cmp(&y.abs()))
        .unwrap();
    for x in &mut v {
        *x /= peak;
    }
    v
}
