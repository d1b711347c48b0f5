//! Benchmark workloads.

use glr_core::{IntSequence, Partition};

pub fn partition(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("benchmark shapes are partitions")
}

/// `m` copies of `parts`.
pub fn uniform(parts: &[i64], m: usize) -> Vec<IntSequence> {
    vec![IntSequence::new(parts.to_vec()).expect("benchmark shapes are partitions"); m]
}

/// A balanced `n = 3, m = 4` tuple with several nonzero chains.
pub fn mixed_n3() -> Vec<IntSequence> {
    [[3, 2, 1], [2, 2, 1], [3, 1, 0], [2, 1, 1]]
        .iter()
        .map(|p| IntSequence::new(p.to_vec()).expect("benchmark shapes are partitions"))
        .collect()
}
