//! Exact enumeration, the ground-truth oracle for every heuristic.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::qubo::{energy, Bitstring, QuboProblem};
use crate::solve::{finalize, SampleCollector, SearchState, SolverResult, SolverStats};

/// Hard cap on problem size for exhaustive enumeration.
pub const EXHAUSTIVE_CAP: usize = 24;

/// Enumerates all 2^n bitstrings and returns the global minimum, breaking
/// energy ties by the lexicographically smallest bitstring.
///
/// The sweep walks a Gray-code order with O(degree) incremental energy
/// updates; near-best candidates are re-evaluated exactly before they are
/// compared, so tie-breaks never rely on accumulated arithmetic.
pub fn solve_exhaustive(q: &QuboProblem) -> Result<SolverResult> {
    if q.n > EXHAUSTIVE_CAP {
        return Err(Error::ExhaustiveCapExceeded {
            n: q.n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let start = Instant::now();
    let adjacency = q.adjacency();
    let mut state = SearchState::new(q, &adjacency, vec![0; q.n]);
    let mut collector = SampleCollector::new();

    let mut best_exact = energy(q, &state.bitstring())?;
    let mut best_bits = state.bitstring();
    collector.add(best_bits.clone(), best_exact);

    let total: u64 = 1u64 << q.n;
    for ordinal in 1..total {
        let flip = ordinal.trailing_zeros() as usize;
        state.flip(flip);
        // margin absorbs incremental drift before exact re-evaluation
        if state.energy <= best_exact + 1e-9 {
            let bits = state.bitstring();
            let exact = energy(q, &bits)?;
            collector.add(bits.clone(), exact);
            if exact < best_exact || (exact == best_exact && bits < best_bits) {
                best_exact = exact;
                best_bits = bits;
            }
        }
    }

    let stats = SolverStats {
        iterations: total,
        restarts: 0,
        moves_accepted: 0,
        wall_time: start.elapsed().as_secs_f64(),
    };
    finalize(q, collector, stats)
}

/// Enumerates only the C(n, k) weight-k bitstrings; exact for constrained
/// selections without relying on the penalty term.
pub fn solve_exhaustive_weight_k(q: &QuboProblem, k: usize) -> Result<SolverResult> {
    if q.n > EXHAUSTIVE_CAP {
        return Err(Error::ExhaustiveCapExceeded {
            n: q.n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    if k > q.n {
        return Err(Error::CardinalityOutOfRange { k, n: q.n });
    }
    let start = Instant::now();
    let mut collector = SampleCollector::new();
    let mut visited: u64 = 0;

    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        visited += 1;
        let mut bits = vec![0u8; q.n];
        for &i in &indices {
            bits[i] = 1;
        }
        let x = Bitstring(bits);
        let e = energy(q, &x)?;
        collector.add(x, e);
        if !next_combination(&mut indices, q.n) {
            break;
        }
    }

    let stats = SolverStats {
        iterations: visited,
        restarts: 0,
        moves_accepted: 0,
        wall_time: start.elapsed().as_secs_f64(),
    };
    finalize(q, collector, stats)
}

/// Advances `indices` to the next k-combination of 0..n in lexicographic
/// order; false when exhausted.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] != i + n - k {
            indices[i] += 1;
            for j in (i + 1)..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::testutil::random_problem;

    #[test]
    fn zero_qubo_picks_all_zeros() {
        let q = QuboProblem::zero(6);
        let r = solve_exhaustive(&q).unwrap();
        assert_eq!(r.best, Bitstring::zeros(6));
        assert_eq!(r.best_energy, 0.0);
        assert!(r.feasible);
    }

    #[test]
    fn linear_only_by_inspection() {
        let mut q = QuboProblem::zero(2);
        q.linear = vec![-1.0, 2.0];
        let r = solve_exhaustive(&q).unwrap();
        assert_eq!(r.best, Bitstring(vec![1, 0]));
        assert_eq!(r.best_energy, -1.0);
    }

    #[test]
    fn matches_plain_reimplementation() {
        for seed in 0..5 {
            let q = random_problem(300 + seed, 12);
            let r = solve_exhaustive(&q).unwrap();

            let mut oracle_best = f64::INFINITY;
            let mut oracle_bits = Bitstring::zeros(12);
            for mask in 0..(1u64 << 12) {
                let x = Bitstring::from_mask(mask, 12);
                let e = energy(&q, &x).unwrap();
                if e < oracle_best || (e == oracle_best && x < oracle_bits) {
                    oracle_best = e;
                    oracle_bits = x;
                }
            }
            assert_eq!(r.best, oracle_bits, "seed {seed}");
            assert_eq!(r.best_energy, oracle_best);
        }
    }

    #[test]
    fn weight_k_enumeration_matches_filtered_full_search() {
        for seed in 0..5 {
            let q = random_problem(400 + seed, 10);
            let k = 4;
            let r = solve_exhaustive_weight_k(&q, k).unwrap();
            assert_eq!(r.best.weight(), k);
            assert_eq!(r.stats.iterations, 210); // C(10, 4)

            let mut oracle_best = f64::INFINITY;
            let mut oracle_bits = Bitstring::zeros(10);
            for mask in 0..(1u64 << 10) {
                let x = Bitstring::from_mask(mask, 10);
                if x.weight() != k {
                    continue;
                }
                let e = energy(&q, &x).unwrap();
                if e < oracle_best || (e == oracle_best && x < oracle_bits) {
                    oracle_best = e;
                    oracle_bits = x;
                }
            }
            assert_eq!(r.best, oracle_bits, "seed {seed}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q = QuboProblem::zero(25);
        assert!(matches!(
            solve_exhaustive(&q),
            Err(Error::ExhaustiveCapExceeded { .. })
        ));
    }

    #[test]
    fn samples_are_sorted_ascending() {
        let q = random_problem(9, 8);
        let r = solve_exhaustive(&q).unwrap();
        for pair in r.samples.windows(2) {
            assert!(pair[0].energy <= pair[1].energy);
        }
        assert_eq!(r.samples[0].bits, r.best);
    }
}
