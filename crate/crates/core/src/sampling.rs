//! Weighted-sampling utilities shared by the generators, initializers and
//! the appointment process.

use crate::rng::SimRng;
use rand::Rng;

/// Fenwick tree over non-negative f64 weights with O(log n) point updates,
/// prefix sums and weighted index sampling. Used everywhere a draw weight
/// changes while sampling without replacement.
pub(crate) struct WeightTree {
    tree: Vec<f64>, // 1-based partial sums
    weights: Vec<f64>,
    msb: usize,
}

impl WeightTree {
    pub fn new(n: usize) -> Self {
        // Largest power of two <= n, the starting stride of the descent.
        let msb = match n {
            0 => 0,
            _ => 1usize << (usize::BITS - 1 - n.leading_zeros()),
        };
        WeightTree {
            tree: vec![0.0; n + 1],
            weights: vec![0.0; n],
            msb,
        }
    }

    #[cfg(test)]
    pub fn from_weights(w: &[f64]) -> Self {
        let mut t = WeightTree::new(w.len());
        for (i, &wi) in w.iter().enumerate() {
            t.set(i, wi);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[cfg(test)]
    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn total(&self) -> f64 {
        self.prefix(self.len())
    }

    /// Sum of weights of indices < i.
    fn prefix(&self, mut i: usize) -> f64 {
        let mut s = 0.0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }

    pub fn set(&mut self, i: usize, w: f64) {
        debug_assert!(w >= 0.0 && w.is_finite());
        let delta = w - self.weights[i];
        self.weights[i] = w;
        let mut j = i + 1;
        while j <= self.len() {
            self.tree[j] += delta;
            j += j & j.wrapping_neg();
        }
    }

    /// Draw an index with probability proportional to its weight, or None
    /// if no weight is positive.
    pub fn sample(&self, rng: &mut SimRng) -> Option<usize> {
        let total = self.total();
        if !(total > 0.0) {
            return None;
        }
        // u in (0, total]: find the smallest index whose prefix sum reaches u,
        // so zero-weight entries are never selected.
        let mut u = (1.0 - rng.random::<f64>()) * total;
        let mut pos = 0usize;
        let mut step = self.msb;
        while step > 0 {
            let next = pos + step;
            if next <= self.len() && self.tree[next] < u {
                u -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        let mut idx = pos.min(self.len() - 1);
        if self.weights[idx] <= 0.0 {
            // Float roundoff in the descent can land on a zero entry when u
            // falls exactly on a boundary; move to the nearest live index.
            idx = (idx + 1..self.len())
                .chain(0..idx)
                .find(|&j| self.weights[j] > 0.0)?;
        }
        Some(idx)
    }
}
