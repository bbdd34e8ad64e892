//! QUBO solvers: an exhaustive oracle, simulated annealing, multi-start
//! tabu search, a greedy sub-problem sampler, and a hybrid orchestrator
//! that combines all three heuristic legs per round.

mod anneal;
mod exhaustive;
mod hybrid;
mod subproblem;
mod tabu;

pub use anneal::{solve_sa, solve_sa_from, AnnealSchedule};
pub use exhaustive::{solve_exhaustive, solve_exhaustive_weight_k, EXHAUSTIVE_CAP};
pub use hybrid::{solve_hybrid, HybridConfig};
pub use subproblem::sample_subproblem;
pub use tabu::{solve_tabu, solve_tabu_from, TabuParams};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infotheory::CmiTensor;
use crate::qubo::{build_miqubo, energy, Bitstring, QuboProblem};

/// How many lowest-energy samples a solver keeps.
const SAMPLE_CAP: usize = 32;

/// One recorded solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sample {
    pub bits: Bitstring,
    pub energy: f64,
    pub multiplicity: usize,
}

/// Search counters. `wall_time` is measured, so it is excluded from
/// serialized output to keep artifacts byte-reproducible.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SolverStats {
    pub iterations: u64,
    pub restarts: u64,
    pub moves_accepted: u64,
    #[serde(skip)]
    pub wall_time: f64,
}

/// Outcome of a solver run. `best_energy` is always re-evaluated from the
/// problem, never trusted from incremental bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverResult {
    pub best: Bitstring,
    pub best_energy: f64,
    /// Weight equals the cardinality target, when one is set.
    pub feasible: bool,
    /// Sorted ascending by (energy, bitstring).
    pub samples: Vec<Sample>,
    pub stats: SolverStats,
}

/// Collects distinct candidate solutions with multiplicities.
#[derive(Debug, Default)]
pub(crate) struct SampleCollector {
    entries: BTreeMap<Bitstring, (f64, usize)>,
}

impl SampleCollector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, bits: Bitstring, energy: f64) {
        let entry = self.entries.entry(bits).or_insert((energy, 0));
        entry.1 += 1;
    }

    /// Lowest-energy candidate, ties by lexicographically smallest bits.
    pub fn best(&self) -> Option<(&Bitstring, f64)> {
        self.entries
            .iter()
            .map(|(bits, &(e, _))| (bits, e))
            .min_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)))
    }

    /// All samples sorted ascending by (energy, bits), truncated to the
    /// cap; the best weight-k sample is always retained when k is set.
    pub fn into_samples(self, k: Option<usize>) -> Vec<Sample> {
        let mut samples: Vec<Sample> = self
            .entries
            .into_iter()
            .map(|(bits, (energy, multiplicity))| Sample {
                bits,
                energy,
                multiplicity,
            })
            .collect();
        samples.sort_by(|a, b| a.energy.total_cmp(&b.energy).then_with(|| a.bits.cmp(&b.bits)));
        if samples.len() > SAMPLE_CAP {
            let feasible = k.and_then(|k| {
                samples
                    .iter()
                    .position(|s| s.bits.weight() == k)
                    .filter(|&pos| pos >= SAMPLE_CAP)
                    .map(|pos| samples[pos].clone())
            });
            samples.truncate(SAMPLE_CAP);
            if let Some(s) = feasible {
                samples.pop();
                samples.push(s);
            }
        }
        samples
    }
}

/// Builds the final result: recomputes the best energy exactly and checks
/// weight-k feasibility.
pub(crate) fn finalize(
    q: &QuboProblem,
    collector: SampleCollector,
    stats: SolverStats,
) -> Result<SolverResult> {
    let (best_bits, _) = collector
        .best()
        .map(|(b, e)| (b.clone(), e))
        .ok_or_else(|| Error::Internal("solver produced no candidates".into()))?;
    let best_energy = energy(q, &best_bits)?;
    let feasible = q.k.map_or(true, |k| best_bits.weight() == k);
    Ok(SolverResult {
        best: best_bits,
        best_energy,
        feasible,
        samples: collector.into_samples(q.k),
        stats,
    })
}

/// Mutable search state with O(degree) incremental flip evaluation.
pub(crate) struct SearchState<'a> {
    linear: &'a [f64],
    adjacency: &'a [Vec<(usize, f64)>],
    pub bits: Vec<u8>,
    pub energy: f64,
    pub weight: usize,
}

impl<'a> SearchState<'a> {
    pub fn new(q: &'a QuboProblem, adjacency: &'a [Vec<(usize, f64)>], bits: Vec<u8>) -> Self {
        let x = Bitstring(bits);
        let e = energy(q, &x).expect("state length matches problem");
        let weight = x.weight();
        SearchState {
            linear: &q.linear,
            adjacency,
            bits: x.0,
            energy: e,
            weight,
        }
    }

    /// Energy change from flipping bit `i`.
    pub fn flip_delta(&self, i: usize) -> f64 {
        let mut field = self.linear[i];
        for &(j, w) in &self.adjacency[i] {
            if self.bits[j] == 1 {
                field += w;
            }
        }
        if self.bits[i] == 0 {
            field
        } else {
            -field
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.energy += self.flip_delta(i);
        if self.bits[i] == 0 {
            self.weight += 1;
        } else {
            self.weight -= 1;
        }
        self.bits[i] ^= 1;
    }

    pub fn bitstring(&self) -> Bitstring {
        Bitstring(self.bits.clone())
    }
}

/// Tracks the best weight-k state a walk has visited, so constrained
/// solves always have a feasible sample to post-filter to even when the
/// ground state sits at a different Hamming weight.
pub(crate) struct FeasibleTrack {
    k: Option<usize>,
    best: Option<(Vec<u8>, f64)>,
}

impl FeasibleTrack {
    pub fn new(q: &QuboProblem) -> Self {
        FeasibleTrack { k: q.k, best: None }
    }

    pub fn observe(&mut self, state: &SearchState<'_>) {
        let Some(k) = self.k else { return };
        if state.weight != k {
            return;
        }
        if self.best.as_ref().is_none_or(|(_, e)| state.energy < *e) {
            self.best = Some((state.bits.clone(), state.energy));
        }
    }

    pub fn record(&mut self, q: &QuboProblem, collector: &mut SampleCollector) -> Result<()> {
        if let Some((bits, _)) = self.best.take() {
            let x = Bitstring(bits);
            let exact = energy(q, &x)?;
            collector.add(x, exact);
        }
        Ok(())
    }
}

/// Which solver backs a feature selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exhaustive,
    Sa,
    Tabu,
    Hybrid,
}

/// Solver settings shared by [`select_features`] and the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub backend: Backend,
    pub sa: AnnealSchedule,
    pub tabu: TabuParams,
    pub subproblem_size: usize,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            backend: Backend::Hybrid,
            sa: AnnealSchedule::default(),
            tabu: TabuParams::default(),
            subproblem_size: 16,
            rounds: 4,
            seed: 0,
        }
    }
}

/// A solved feature selection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureSelection {
    pub selected: Vec<usize>,
    /// The combined MI + CMI objective of the selection (positive form).
    pub objective: f64,
    pub result: SolverResult,
}

/// Selects exactly `k` features by building the MIQUBO, adding the
/// cardinality penalty, solving with the configured backend, and
/// post-filtering samples to Hamming weight k.
pub fn select_features(c: &CmiTensor, k: usize, config: &SolverConfig) -> Result<FeatureSelection> {
    let unconstrained = build_miqubo(c)?;
    let constrained = unconstrained.clone().with_cardinality(k, None)?;

    let result = match config.backend {
        Backend::Exhaustive => solve_exhaustive_weight_k(&constrained, k)?,
        Backend::Sa => {
            let mut schedule = config.sa.clone();
            schedule.seed = config.seed;
            solve_sa(&constrained, &schedule)?
        }
        Backend::Tabu => {
            let mut params = config.tabu.clone();
            params.seed = config.seed;
            solve_tabu(&constrained, &params)?
        }
        Backend::Hybrid => {
            let hybrid = HybridConfig {
                sa: config.sa.clone(),
                tabu: config.tabu.clone(),
                subproblem_size: config.subproblem_size,
                rounds: config.rounds,
                seed: config.seed,
            };
            solve_hybrid(&constrained, &hybrid)?
        }
    };

    let feasible_best = if result.best.weight() == k {
        Some(result.best.clone())
    } else {
        result
            .samples
            .iter()
            .find(|s| s.bits.weight() == k)
            .map(|s| s.bits.clone())
    };
    let bits = feasible_best.ok_or(Error::NoFeasibleSample { k })?;
    let selected = bits.ones();
    let objective = -energy(&unconstrained, &bits)?;
    Ok(FeatureSelection {
        selected,
        objective,
        result,
    })
}
