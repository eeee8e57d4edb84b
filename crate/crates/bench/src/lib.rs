//! Fixtures shared by the benchmarks in `benches/`.

use cgw_core::{PointSampler, Q};

/// Fixed admissible points, so runs are comparable.
pub fn points(n: usize, count: usize) -> Vec<(Q, Q)> {
    let mut s = PointSampler::new(42, n);
    (0..count).map(|_| s.point()).collect()
}
