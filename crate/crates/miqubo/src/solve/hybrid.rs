//! Hybrid orchestrator: per round, tabu search, simulated annealing, and
//! sub-problem sampling run concurrently from the incumbent; the
//! round result is the minimum-energy leg output. Each leg derives its
//! own seed from (master seed, leg id, round), so the combined result is
//! independent of scheduling order.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::{energy, Bitstring, QuboProblem};
use crate::seeding::derive_seed;
use crate::solve::{
    finalize, sample_subproblem, solve_sa_from, solve_tabu_from, AnnealSchedule, SampleCollector,
    SolverResult, SolverStats, TabuParams, EXHAUSTIVE_CAP,
};

/// Hybrid solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HybridConfig {
    pub sa: AnnealSchedule,
    pub tabu: TabuParams,
    pub subproblem_size: usize,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            sa: AnnealSchedule::default(),
            tabu: TabuParams::default(),
            subproblem_size: 16,
            rounds: 4,
            seed: 0,
        }
    }
}

/// Runs the three legs for up to `rounds` rounds, stopping early when no
/// leg strictly improves the incumbent energy.
pub fn solve_hybrid(q: &QuboProblem, config: &HybridConfig) -> Result<SolverResult> {
    if config.rounds < 1 {
        return Err(Error::Config("hybrid rounds must be at least 1".into()));
    }
    config.sa.validate()?;
    let begun = Instant::now();
    let subset_size = config.subproblem_size.clamp(1, q.n.min(EXHAUSTIVE_CAP));

    let mut incumbent = Bitstring::zeros(q.n);
    let mut incumbent_energy = energy(q, &incumbent)?;
    let mut collector = SampleCollector::new();
    collector.add(incumbent.clone(), incumbent_energy);
    let mut stats = SolverStats::default();

    for round in 0..config.rounds {
        let mut sa = config.sa.clone();
        sa.seed = derive_seed(config.seed, (round * 3) as u64);
        let mut tabu = config.tabu.clone();
        tabu.seed = derive_seed(config.seed, (round * 3 + 1) as u64);
        let sub_seed = derive_seed(config.seed, (round * 3 + 2) as u64);

        let (tabu_result, sa_result, sub_result) = std::thread::scope(|scope| {
            let tabu_leg = scope.spawn(|| solve_tabu_from(q, &incumbent, &tabu));
            let sa_leg = scope.spawn(|| solve_sa_from(q, &incumbent, &sa));
            let sub_leg = scope.spawn(|| sample_subproblem(q, &incumbent, subset_size, sub_seed));
            (
                tabu_leg.join().expect("tabu leg panicked"),
                sa_leg.join().expect("sa leg panicked"),
                sub_leg.join().expect("subproblem leg panicked"),
            )
        });
        let tabu_result = tabu_result?;
        let sa_result = sa_result?;
        let sub_bits = sub_result?;
        let sub_energy = energy(q, &sub_bits)?;

        stats.iterations += tabu_result.stats.iterations + sa_result.stats.iterations + 1;
        stats.restarts += tabu_result.stats.restarts + sa_result.stats.restarts;
        stats.moves_accepted += tabu_result.stats.moves_accepted + sa_result.stats.moves_accepted;

        let mut candidates = vec![
            (incumbent.clone(), incumbent_energy),
            (tabu_result.best.clone(), tabu_result.best_energy),
            (sa_result.best.clone(), sa_result.best_energy),
            (sub_bits, sub_energy),
        ];
        for s in tabu_result.samples.into_iter().chain(sa_result.samples) {
            collector.add(s.bits, s.energy);
        }
        candidates.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let (next, next_energy) = candidates.swap_remove(0);
        collector.add(next.clone(), next_energy);

        let improved = next_energy < incumbent_energy;
        incumbent = next;
        incumbent_energy = next_energy;
        if !improved {
            break;
        }
    }

    stats.wall_time = begun.elapsed().as_secs_f64();
    finalize(q, collector, stats)
}
