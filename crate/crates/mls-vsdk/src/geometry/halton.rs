//! Halton low-discrepancy node generation.

use super::{DomainBox, NodeSet, Point};
use crate::error::{Error, Result};

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Radical inverse of `index` in the given base.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut f = 1.0 / base as f64;
    while index > 0 {
        result += f * (index % base) as f64;
        index /= base;
        f /= base as f64;
    }
    result
}

/// First `count` Halton points in `box`, bases the first `dim` primes.
/// The sequence index starts at 1, skipping the all-zeros corner point.
pub fn halton_nodes(count: usize, dim: usize, domain: &DomainBox) -> Result<NodeSet> {
    if count == 0 {
        return Err(Error::invalid("halton_nodes needs count >= 1"));
    }
    if dim == 0 || dim != domain.dim() {
        return Err(Error::invalid("halton_nodes: dimension mismatch"));
    }
    if dim > PRIMES.len() {
        return Err(Error::invalid(format!("halton_nodes supports dim <= {}", PRIMES.len())));
    }
    let points = (1..=count as u64)
        .map(|i| {
            let coords = (0..dim)
                .map(|j| {
                    let u = radical_inverse(i, PRIMES[j]);
                    domain.lower()[j] + u * (domain.upper()[j] - domain.lower()[j])
                })
                .collect();
            Point::new(coords).expect("halton coordinates are finite")
        })
        .collect();
    NodeSet::new(dim, points)
}
