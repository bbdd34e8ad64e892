//! Multi-start tabu search: steepest single-flip descent with a recency
//! tabu list and an aspiration override for new global bests.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::{energy, Bitstring, QuboProblem};
use crate::seeding::rng_for;
use crate::solve::{
    finalize, FeasibleTrack, SampleCollector, SearchState, SolverResult, SolverStats,
};

/// Tabu-search settings. `tenure = None` selects the default
/// min(20, max(1, n/4)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TabuParams {
    pub tenure: Option<usize>,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for TabuParams {
    fn default() -> Self {
        TabuParams {
            tenure: None,
            max_iterations: 200,
            restarts: 20,
            seed: 0,
        }
    }
}

impl TabuParams {
    fn effective_tenure(&self, n: usize) -> Result<usize> {
        match self.tenure {
            Some(0) => Err(Error::Config("tabu tenure must be at least 1".into())),
            Some(t) => Ok(t),
            None => Ok(20.min(1.max(n / 4))),
        }
    }
}

/// Runs tabu search from seeded random starts.
pub fn solve_tabu(q: &QuboProblem, params: &TabuParams) -> Result<SolverResult> {
    solve_tabu_impl(q, None, params)
}

/// As [`solve_tabu`], but the first restart begins at `start`.
pub fn solve_tabu_from(
    q: &QuboProblem,
    start: &Bitstring,
    params: &TabuParams,
) -> Result<SolverResult> {
    if start.len() != q.n {
        return Err(Error::BitstringLength {
            expected: q.n,
            found: start.len(),
        });
    }
    solve_tabu_impl(q, Some(start), params)
}

fn solve_tabu_impl(
    q: &QuboProblem,
    start: Option<&Bitstring>,
    params: &TabuParams,
) -> Result<SolverResult> {
    let tenure = params.effective_tenure(q.n)?;
    let begun = Instant::now();
    let adjacency = q.adjacency();
    let mut collector = SampleCollector::new();
    let mut moves_accepted: u64 = 0;

    let mut global_best: Option<(Vec<u8>, f64)> = None;

    for restart in 0..params.restarts.max(1) {
        let mut rng = rng_for(params.seed, restart as u64);
        let bits: Vec<u8> = match (restart, start, &global_best) {
            (0, Some(s), _) => s.0.clone(),
            (0, None, _) => (0..q.n).map(|_| rng.random_range(0..2u8)).collect(),
            (_, _, Some((best_bits, _))) => {
                // perturb the incumbent: flip a handful of random bits
                let mut bits = best_bits.clone();
                let flips = 1.max(q.n / 5);
                for _ in 0..flips {
                    let i = rng.random_range(0..q.n);
                    bits[i] ^= 1;
                }
                bits
            }
            _ => (0..q.n).map(|_| rng.random_range(0..2u8)).collect(),
        };

        let mut state = SearchState::new(q, &adjacency, bits);
        let mut tabu_until = vec![0usize; q.n];
        let mut feasible = FeasibleTrack::new(q);
        feasible.observe(&state);
        let mut best_energy = global_best.as_ref().map_or(f64::INFINITY, |(_, e)| *e);
        if state.energy < best_energy {
            best_energy = state.energy;
            global_best = Some((state.bits.clone(), state.energy));
        }

        for iter in 0..params.max_iterations {
            // steepest admissible single flip: not tabu, or aspirating to
            // a new global best
            let mut chosen: Option<(usize, f64)> = None;
            for i in 0..q.n {
                let delta = state.flip_delta(i);
                let tabu = iter < tabu_until[i];
                let aspirates = state.energy + delta < best_energy - 1e-15;
                if tabu && !aspirates {
                    continue;
                }
                match chosen {
                    Some((_, best_delta)) if delta >= best_delta => {}
                    _ => chosen = Some((i, delta)),
                }
            }
            // all moves tabu and none aspirate: free the oldest
            let (i, _) = chosen.unwrap_or_else(|| {
                let i = (0..q.n).min_by_key(|&i| (tabu_until[i], i)).unwrap();
                (i, state.flip_delta(i))
            });

            state.flip(i);
            tabu_until[i] = iter + 1 + tenure;
            moves_accepted += 1;
            feasible.observe(&state);
            if state.energy < best_energy {
                best_energy = state.energy;
                global_best = Some((state.bits.clone(), state.energy));
            }
        }

        if let Some((bits, _)) = &global_best {
            let x = Bitstring(bits.clone());
            let exact = energy(q, &x)?;
            collector.add(x, exact);
        }
        feasible.record(q, &mut collector)?;
    }

    let stats = SolverStats {
        iterations: (params.restarts.max(1) * params.max_iterations) as u64,
        restarts: params.restarts.max(1) as u64,
        moves_accepted,
        wall_time: begun.elapsed().as_secs_f64(),
    };
    finalize(q, collector, stats)
}
