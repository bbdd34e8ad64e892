//! Multi-restart simulated annealing with a geometric inverse-temperature
//! schedule and Metropolis acceptance.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::{energy, Bitstring, QuboProblem};
use crate::seeding::rng_for;
use crate::solve::{
    finalize, FeasibleTrack, SampleCollector, SearchState, SolverResult, SolverStats,
};

/// Annealing schedule: β interpolates geometrically from `beta_start` to
/// `beta_end` across `sweeps`; each restart runs the full schedule from a
/// fresh seeded start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnnealSchedule {
    pub sweeps: usize,
    pub beta_start: f64,
    pub beta_end: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            sweeps: 1000,
            beta_start: 0.1,
            beta_end: 10.0,
            restarts: 20,
            seed: 0,
        }
    }
}

impl AnnealSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.sweeps < 1 {
            return Err(Error::Config("anneal sweeps must be at least 1".into()));
        }
        if !(self.beta_start > 0.0 && self.beta_end >= self.beta_start) {
            return Err(Error::Config(format!(
                "anneal betas must satisfy 0 < beta_start <= beta_end, got {} and {}",
                self.beta_start, self.beta_end
            )));
        }
        Ok(())
    }

    fn beta_at(&self, sweep: usize) -> f64 {
        if self.sweeps == 1 {
            return self.beta_end;
        }
        let t = sweep as f64 / (self.sweeps - 1) as f64;
        self.beta_start * (self.beta_end / self.beta_start).powf(t)
    }
}

/// Runs simulated annealing from seeded random starts.
pub fn solve_sa(q: &QuboProblem, schedule: &AnnealSchedule) -> Result<SolverResult> {
    solve_sa_impl(q, None, schedule)
}

/// As [`solve_sa`], but the first restart begins at `start` instead of a
/// random state. Used by the hybrid orchestrator to anneal the incumbent.
pub fn solve_sa_from(
    q: &QuboProblem,
    start: &Bitstring,
    schedule: &AnnealSchedule,
) -> Result<SolverResult> {
    if start.len() != q.n {
        return Err(Error::BitstringLength {
            expected: q.n,
            found: start.len(),
        });
    }
    solve_sa_impl(q, Some(start), schedule)
}

fn solve_sa_impl(
    q: &QuboProblem,
    start: Option<&Bitstring>,
    schedule: &AnnealSchedule,
) -> Result<SolverResult> {
    schedule.validate()?;
    let begun = Instant::now();
    let adjacency = q.adjacency();
    let mut collector = SampleCollector::new();
    let mut moves_accepted: u64 = 0;

    for restart in 0..schedule.restarts.max(1) {
        let mut rng = rng_for(schedule.seed, restart as u64);
        let bits: Vec<u8> = match (restart, start) {
            (0, Some(s)) => s.0.clone(),
            _ => (0..q.n).map(|_| rng.random_range(0..2u8)).collect(),
        };
        let mut state = SearchState::new(q, &adjacency, bits);
        let mut best_bits = state.bitstring();
        let mut best_energy = state.energy;
        let mut feasible = FeasibleTrack::new(q);
        feasible.observe(&state);

        let mut order: Vec<usize> = (0..q.n).collect();
        for sweep in 0..schedule.sweeps {
            let beta = schedule.beta_at(sweep);
            order.shuffle(&mut rng);
            for &i in &order {
                let delta = state.flip_delta(i);
                let accept = delta <= 0.0 || rng.random::<f64>() < (-beta * delta).exp();
                if accept {
                    state.flip(i);
                    moves_accepted += 1;
                    feasible.observe(&state);
                    if state.energy < best_energy {
                        best_energy = state.energy;
                        best_bits = state.bitstring();
                    }
                }
            }
        }
        let exact = energy(q, &best_bits)?;
        collector.add(best_bits, exact);
        feasible.record(q, &mut collector)?;
    }

    let stats = SolverStats {
        iterations: (schedule.restarts.max(1) * schedule.sweeps * q.n) as u64,
        restarts: schedule.restarts.max(1) as u64,
        moves_accepted,
        wall_time: begun.elapsed().as_secs_f64(),
    };
    finalize(q, collector, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::solve_exhaustive;
    use crate::solve::testutil::random_problem;

    #[test]
    fn zero_qubo_returns_zero_energy() {
        let q = QuboProblem::zero(8);
        let r = solve_sa(&q, &AnnealSchedule::default()).unwrap();
        assert_eq!(r.best_energy, 0.0);
    }

    #[test]
    fn same_seed_same_result() {
        let q = random_problem(21, 10);
        let s = AnnealSchedule {
            sweeps: 200,
            restarts: 5,
            seed: 3,
            ..AnnealSchedule::default()
        };
        let a = solve_sa(&q, &s).unwrap();
        let b = solve_sa(&q, &s).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(a.best_energy, b.best_energy);
        assert_eq!(a.stats.moves_accepted, b.stats.moves_accepted);
    }

    #[test]
    fn finds_optimum_on_small_instances() {
        let mut hits = 0;
        for seed in 0..20 {
            let q = random_problem(1000 + seed, 10);
            let exact = solve_exhaustive(&q).unwrap();
            let s = AnnealSchedule {
                seed,
                ..AnnealSchedule::default()
            };
            let r = solve_sa(&q, &s).unwrap();
            if (r.best_energy - exact.best_energy).abs() < 1e-9 {
                hits += 1;
            }
        }
        assert!(hits >= 19, "sa matched exhaustive only {hits}/20 times");
    }

    #[test]
    fn best_energy_is_reevaluated() {
        let q = random_problem(77, 9);
        let r = solve_sa(&q, &AnnealSchedule::default()).unwrap();
        let recomputed = energy(&q, &r.best).unwrap();
        assert!((r.best_energy - recomputed).abs() < 1e-12);
    }

    #[test]
    fn invalid_schedule_rejected() {
        let q = QuboProblem::zero(2);
        let bad = AnnealSchedule {
            beta_start: 0.0,
            ..AnnealSchedule::default()
        };
        assert!(solve_sa(&q, &bad).is_err());
    }
}
