//! Greedy sub-problem sampling: clamp most variables, exactly solve a
//! small strongly-coupled sub-QUBO, and keep the result only if it
//! improves. Classical stand-in for the hybrid solver's QPU leg.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::qubo::{energy, Bitstring, QuboProblem};
use crate::seeding::rng_for;
use crate::solve::EXHAUSTIVE_CAP;

/// Picks the `subset_size` variables most strongly coupled to the current
/// solution, solves that sub-QUBO exactly with the remaining bits clamped,
/// and returns the (never worse) full bitstring.
pub fn sample_subproblem(
    q: &QuboProblem,
    current: &Bitstring,
    subset_size: usize,
    seed: u64,
) -> Result<Bitstring> {
    if current.len() != q.n {
        return Err(Error::BitstringLength {
            expected: q.n,
            found: current.len(),
        });
    }
    let cap = q.n.min(EXHAUSTIVE_CAP);
    if subset_size < 1 || subset_size > cap {
        return Err(Error::Config(format!(
            "subset_size must be in [1, {cap}], got {subset_size}"
        )));
    }

    let adjacency = q.adjacency();
    // coupling of each variable to the active bits of the current solution,
    // with a small floor so scoring stays informative at weight zero
    let scores: Vec<f64> = (0..q.n)
        .map(|i| {
            adjacency[i]
                .iter()
                .map(|&(j, w)| w.abs() * (current.0[j] as f64 + 1e-9))
                .sum()
        })
        .collect();

    // seeded shuffle before the stable sort so equal scores break
    // deterministically but not always toward low indices
    let mut order: Vec<usize> = (0..q.n).collect();
    order.shuffle(&mut rng_for(seed, 0));
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut subset: Vec<usize> = order.into_iter().take(subset_size).collect();
    subset.sort_unstable();

    // clamp the complement: fold its couplings into effective linear terms
    let mut effective_linear = Vec::with_capacity(subset.len());
    for &i in &subset {
        let mut field = q.linear[i];
        for &(j, w) in &adjacency[i] {
            if !subset.contains(&j) && current.0[j] == 1 {
                field += w;
            }
        }
        effective_linear.push(field);
    }

    let position: std::collections::BTreeMap<usize, usize> = subset
        .iter()
        .enumerate()
        .map(|(pos, &i)| (i, pos))
        .collect();
    let mut internal: Vec<(usize, usize, f64)> = Vec::new();
    for (&(i, j), &w) in &q.quadratic {
        if let (Some(&pi), Some(&pj)) = (position.get(&i), position.get(&j)) {
            internal.push((pi, pj, w));
        }
    }

    let sub_energy = |mask: u64| -> f64 {
        let mut e = 0.0;
        for (pos, &lin) in effective_linear.iter().enumerate() {
            if (mask >> pos) & 1 == 1 {
                e += lin;
            }
        }
        for &(pi, pj, w) in &internal {
            if (mask >> pi) & 1 == 1 && (mask >> pj) & 1 == 1 {
                e += w;
            }
        }
        e
    };

    let current_mask: u64 = subset
        .iter()
        .enumerate()
        .map(|(pos, &i)| (current.0[i] as u64) << pos)
        .sum();
    let current_sub = sub_energy(current_mask);

    let mut best_mask = current_mask;
    let mut best_sub = current_sub;
    for mask in 0..(1u64 << subset.len()) {
        let e = sub_energy(mask);
        if e < best_sub {
            best_sub = e;
            best_mask = mask;
        }
    }
    if best_mask == current_mask {
        return Ok(current.clone());
    }

    let mut bits = current.0.clone();
    for (pos, &i) in subset.iter().enumerate() {
        bits[i] = ((best_mask >> pos) & 1) as u8;
    }
    let improved = Bitstring(bits);
    debug_assert!(energy(q, &improved)? <= energy(q, current)? + 1e-9);
    Ok(improved)
}
