//! Pipeline orchestration behind the `miqubo` binary.
//!
//! Subcommands: `mi-rank`, `select`, `evaluate`, `pipeline`, and `synth`.
//! Every stochastic command requires a seed; reruns with an identical
//! config produce byte-identical CSV/JSON payloads (manifest timestamps
//! excepted).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bench::{
    gap_rows, mi_selection, r2_sweep, GapRow, MethodLabel, R2Sweep, SelectionMatrix, SplitSpec,
    SvrSettings,
};
use crate::data::{
    discretize, generate_synthetic, load_csv, one_hot_encode, Column, Dataset, DiscretizedTable,
    EncodedDataset, SyntheticProfile,
};
use crate::error::{Error, Result};
use crate::infotheory::{cmi_tensor, mi_report, CmiTensor, MiReport};
use crate::plot;
use crate::qubo::{build_miqubo, write_json};
use crate::seeding::derive_seed;
use crate::solve::{select_features, Backend, SolverConfig, SolverStats};

/// A fully resolved run configuration. Exactly one of `input` /
/// `synthetic` must be set; the seed is mandatory and drives every
/// stochastic component through derived streams.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub synthetic: Option<SyntheticProfile>,
    pub target: Option<String>,
    pub bins: usize,
    pub k_max: Option<usize>,
    pub backend: Backend,
    pub solver: SolverConfig,
    pub svr: SvrSettings,
    pub split_count: usize,
    pub test_ratio: f64,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            synthetic: None,
            target: None,
            bins: 10,
            k_max: None,
            backend: Backend::Hybrid,
            solver: SolverConfig::default(),
            svr: SvrSettings::default(),
            split_count: 15,
            test_ratio: 0.2,
            out_dir: PathBuf::from("miqubo-run"),
            seed: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.input, &self.synthetic) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "exactly one of input/synthetic must be set, got both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Config(
                    "exactly one of input/synthetic must be set, got neither".into(),
                ))
            }
            _ => {}
        }
        if self.input.is_some() && self.target.is_none() {
            return Err(Error::Config("--target is required with --input".into()));
        }
        if self.seed.is_none() {
            return Err(Error::Config("--seed is required".into()));
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// SHA-256 over the canonical JSON form; changes when any knob does.
    pub fn hash(&self) -> Result<String> {
        let canonical = serde_json::to_string(self)?;
        let digest = Sha256::digest(canonical.as_bytes());
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    fn split_spec(&self) -> SplitSpec {
        SplitSpec {
            count: self.split_count,
            test_ratio: self.test_ratio,
            seed: derive_seed(self.seed(), SPLIT_STREAM),
        }
    }

    fn solver_for_k(&self, k: usize) -> SolverConfig {
        let mut solver = self.solver.clone();
        solver.backend = self.backend;
        solver.seed = derive_seed(self.seed(), SOLVER_STREAM_BASE + k as u64);
        solver
    }
}

const SPLIT_STREAM: u64 = 1;
const SOLVER_STREAM_BASE: u64 = 100;

/// Loaded-and-prepared pipeline inputs shared by all stages.
pub struct Prepared {
    pub dataset: Dataset,
    pub encoded: EncodedDataset,
    pub table: DiscretizedTable,
}

pub fn prepare(config: &RunConfig) -> Result<Prepared> {
    config.validate()?;
    let dataset = if let Some(path) = &config.input {
        let target = config.target.as_deref().expect("validated");
        load_csv(path, target, None)?
    } else {
        generate_synthetic(config.synthetic.as_ref().expect("validated"))?
    };
    let encoded = one_hot_encode(&dataset);
    let table = discretize(&encoded, config.bins)?;
    Ok(Prepared {
        dataset,
        encoded,
        table,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::Io {
            path: parent.to_path_buf(),
            source: e,
        })?;
    }
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// `mi-rank`: ingest → encode → discretize → MI report.
/// Writes mi_report.json, mi_report.csv, mi_rank.svg.
pub fn cmd_mi_rank(config: &RunConfig) -> Result<MiReport> {
    let prepared = prepare(config)?;
    rank_stage(config, &prepared)
}

fn rank_stage(config: &RunConfig, prepared: &Prepared) -> Result<MiReport> {
    let report = mi_report(&prepared.table)?;
    write_text(
        &config.out_dir.join("mi_report.json"),
        &to_pretty_json(&report)?,
    )?;
    write_text(&config.out_dir.join("mi_report.csv"), &report.to_csv())?;

    let order = report.ranked();
    let labels: Vec<String> = order
        .iter()
        .map(|&i| report.feature_names[i].clone())
        .collect();
    let values: Vec<f64> = order.iter().map(|&i| report.mi[i]).collect();
    let svg = plot::bar_chart("Mutual information with target (nats)", &labels, &values);
    write_text(&config.out_dir.join("mi_rank.svg"), &svg)?;
    Ok(report)
}

/// Per-k outcome of the CMI selection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionEntry {
    pub k: usize,
    pub cmi_selected: Vec<usize>,
    pub cmi_names: Vec<String>,
    pub mi_selected: Vec<usize>,
    pub divergence: usize,
    pub objective: f64,
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionOutput {
    pub backend: Backend,
    pub k_values: Vec<usize>,
    pub entries: Vec<SelectionEntry>,
}

impl SelectionOutput {
    /// Selection matrices over the k values where CMI selection succeeded.
    pub fn matrices(&self) -> Result<(SelectionMatrix, SelectionMatrix)> {
        let good: Vec<&SelectionEntry> =
            self.entries.iter().filter(|e| e.error.is_none()).collect();
        if good.is_empty() {
            return Err(Error::Config("no successful selections to evaluate".into()));
        }
        let ks: Vec<usize> = good.iter().map(|e| e.k).collect();
        let mi = SelectionMatrix::new(
            MethodLabel::Mi,
            ks.clone(),
            good.iter().map(|e| e.mi_selected.clone()).collect(),
        )?;
        let cmi = SelectionMatrix::new(
            MethodLabel::Cmi,
            ks,
            good.iter().map(|e| e.cmi_selected.clone()).collect(),
        )?;
        Ok((mi, cmi))
    }
}

/// `select`: builds the MIQUBO, solves per k, records MI selections for
/// divergence reporting. Writes selection.json, selection_matrix.csv,
/// qubo.json, solver_stats.json.
pub fn cmd_select(config: &RunConfig) -> Result<SelectionOutput> {
    let prepared = prepare(config)?;
    let report = mi_report(&prepared.table)?;
    let tensor = cmi_tensor(&prepared.table)?;
    select_stage(config, &report, &tensor)
}

#[derive(Serialize)]
struct SolverStatsEntry {
    k: usize,
    feasible: bool,
    best_energy: f64,
    #[serde(flatten)]
    stats: SolverStats,
}

fn select_stage(
    config: &RunConfig,
    report: &MiReport,
    tensor: &CmiTensor,
) -> Result<SelectionOutput> {
    let n = tensor.n;
    let k_max = config.k_max.unwrap_or(n.min(8)).min(n);
    if k_max < 1 {
        return Err(Error::Config("k range is empty".into()));
    }
    let k_values: Vec<usize> = (1..=k_max).collect();

    let miqubo = build_miqubo(tensor)?;
    write_text(&config.out_dir.join("qubo.json"), &write_json(&miqubo)?)?;

    let mut entries = Vec::new();
    let mut stats_entries = Vec::new();
    for &k in &k_values {
        let mi_selected = mi_selection(report, k)?;
        let solver = config.solver_for_k(k);
        match select_features(tensor, k, &solver) {
            Ok(selection) => {
                let divergence = mi_selected
                    .iter()
                    .filter(|i| !selection.selected.contains(i))
                    .count()
                    + selection
                        .selected
                        .iter()
                        .filter(|i| !mi_selected.contains(i))
                        .count();
                stats_entries.push(SolverStatsEntry {
                    k,
                    feasible: selection.result.feasible,
                    best_energy: selection.result.best_energy,
                    stats: selection.result.stats.clone(),
                });
                entries.push(SelectionEntry {
                    k,
                    cmi_names: selection
                        .selected
                        .iter()
                        .map(|&i| tensor.feature_names[i].clone())
                        .collect(),
                    cmi_selected: selection.selected,
                    mi_selected,
                    divergence,
                    objective: selection.objective,
                    feasible: selection.result.feasible,
                    error: None,
                });
            }
            Err(err) if !matches!(err, Error::CellBudgetExceeded { .. }) => {
                // report per-k failures without aborting the other k values
                entries.push(SelectionEntry {
                    k,
                    cmi_selected: vec![],
                    cmi_names: vec![],
                    mi_selected,
                    divergence: 0,
                    objective: 0.0,
                    feasible: false,
                    error: Some(err.to_string()),
                });
            }
            Err(err) => return Err(err),
        }
    }

    let output = SelectionOutput {
        backend: config.backend,
        k_values,
        entries,
    };
    write_text(
        &config.out_dir.join("selection.json"),
        &to_pretty_json(&output)?,
    )?;

    let mut matrix_csv = String::from("method,k,selected,divergence\n");
    for e in &output.entries {
        let mi: Vec<String> = e.mi_selected.iter().map(|i| i.to_string()).collect();
        matrix_csv.push_str(&format!("MI,{},{},\n", e.k, mi.join(" ")));
        if e.error.is_none() {
            let cmi: Vec<String> = e.cmi_selected.iter().map(|i| i.to_string()).collect();
            matrix_csv.push_str(&format!("CMI,{},{},{}\n", e.k, cmi.join(" "), e.divergence));
        }
    }
    write_text(&config.out_dir.join("selection_matrix.csv"), &matrix_csv)?;
    write_text(
        &config.out_dir.join("solver_stats.json"),
        &to_pretty_json(&stats_entries)?,
    )?;
    Ok(output)
}

/// Evaluation artifact: the sweep plus per-k gap analysis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluateOutput {
    pub sweep: R2Sweep,
    pub gaps: Vec<GapRow>,
}

/// `evaluate`: paired-split R² comparison of MI vs CMI selections. Reuses
/// out_dir/selection.json when present, otherwise selects inline. Writes
/// r2_sweep.csv, r2_sweep.json, r2_plot.svg.
pub fn cmd_evaluate(config: &RunConfig) -> Result<EvaluateOutput> {
    let prepared = prepare(config)?;
    let selection_path = config.out_dir.join("selection.json");
    let selection = if selection_path.exists() {
        let text = std::fs::read_to_string(&selection_path).map_err(|e| Error::Io {
            path: selection_path.clone(),
            source: e,
        })?;
        serde_json::from_str(&text)?
    } else {
        let report = mi_report(&prepared.table)?;
        let tensor = cmi_tensor(&prepared.table)?;
        select_stage(config, &report, &tensor)?
    };
    evaluate_stage(config, &prepared, &selection)
}

fn evaluate_stage(
    config: &RunConfig,
    prepared: &Prepared,
    selection: &SelectionOutput,
) -> Result<EvaluateOutput> {
    let (mi, cmi) = selection.matrices()?;
    let sweep = r2_sweep(
        &prepared.encoded,
        &[mi, cmi],
        &config.split_spec(),
        &config.svr,
    )?;
    let gaps = gap_rows(&sweep)?;
    let output = EvaluateOutput {
        sweep: sweep.clone(),
        gaps,
    };

    write_text(&config.out_dir.join("r2_sweep.csv"), &sweep.to_csv())?;
    write_text(
        &config.out_dir.join("r2_sweep.json"),
        &to_pretty_json(&output)?,
    )?;

    let series: Vec<plot::Series> = sweep
        .methods
        .iter()
        .map(|m| plot::Series {
            label: m.method.to_string(),
            xs: m.per_k.iter().map(|c| c.k as f64).collect(),
            ys: m.per_k.iter().map(|c| c.mean).collect(),
            band: Some(m.per_k.iter().map(|c| c.std).collect()),
        })
        .collect();
    let svg = plot::line_chart("Mean R2 vs number of selected features", "k", "R2", &series);
    write_text(&config.out_dir.join("r2_plot.svg"), &svg)?;
    Ok(output)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub config_hash: String,
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
    pub completed_stages: Vec<String>,
    pub files: Vec<String>,
    /// Wall-clock timestamp; the one field excluded from rerun comparisons.
    pub created_at_unix: u64,
}

/// `pipeline`: rank → select → evaluate into one run directory with a
/// manifest capturing the resolved config, hash, and file inventory.
pub fn cmd_pipeline(config: &RunConfig) -> Result<Manifest> {
    let mut completed = Vec::new();
    let mut files = Vec::new();

    let result = (|| -> Result<()> {
        let prepared = prepare(config)?;
        let report = rank_stage(config, &prepared)?;
        completed.push("mi-rank".to_string());
        files.extend(["mi_report.json", "mi_report.csv", "mi_rank.svg"].map(String::from));

        let tensor = cmi_tensor(&prepared.table)?;
        let selection = select_stage(config, &report, &tensor)?;
        completed.push("select".to_string());
        files.extend(
            [
                "qubo.json",
                "selection.json",
                "selection_matrix.csv",
                "solver_stats.json",
            ]
            .map(String::from),
        );

        evaluate_stage(config, &prepared, &selection)?;
        completed.push("evaluate".to_string());
        files.extend(["r2_sweep.csv", "r2_sweep.json", "r2_plot.svg"].map(String::from));
        Ok(())
    })();

    let manifest = Manifest {
        config_hash: config.hash()?,
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed(),
        config: config.clone(),
        completed_stages: completed,
        files,
        created_at_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    write_text(
        &config.out_dir.join("manifest.json"),
        &to_pretty_json(&manifest)?,
    )?;
    result?;
    Ok(manifest)
}

/// `synth`: generate a synthetic dataset and write it as CSV.
pub fn cmd_synth(profile: &SyntheticProfile, out: &Path) -> Result<Dataset> {
    let dataset = generate_synthetic(profile)?;
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let mut header: Vec<String> = dataset.feature_names.clone();
    header.push(dataset.target_name.clone());
    writer.write_record(&header)?;
    for row in 0..dataset.n_samples() {
        let mut record: Vec<String> = Vec::with_capacity(dataset.n_features() + 1);
        for col in &dataset.columns {
            match col {
                Column::Numeric(v) => record.push(format!("{}", v[row])),
                Column::Categorical(v) => record.push(v[row].clone()),
            }
        }
        record.push(format!("{}", dataset.target[row]));
        writer.write_record(&record)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    let text = String::from_utf8(bytes)
        .map_err(|e| Error::Internal(format!("csv not utf-8: {e}")))?;
    write_text(out, &text)?;
    Ok(dataset)
}

// ---------------------------------------------------------------------
// argument parsing
// ---------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "miqubo",
    about = "Conditional-mutual-information feature selection via QUBO heuristics",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input CSV with a header row
    #[arg(long, conflicts_with = "synthetic")]
    input: Option<PathBuf>,
    /// Synthetic profile JSON (alternative to --input)
    #[arg(long)]
    synthetic: Option<PathBuf>,
    /// Target column name (required with --input)
    #[arg(long)]
    target: Option<String>,
    /// Bin count for discretization
    #[arg(long)]
    bins: Option<usize>,
    /// Largest selection size k (default min(n, 8))
    #[arg(long)]
    k_max: Option<usize>,
    /// Solver backend
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    /// Number of train/test splits
    #[arg(long)]
    splits: Option<usize>,
    /// Test fraction per split
    #[arg(long)]
    test_ratio: Option<f64>,
    /// SVR rbf kernel width
    #[arg(long)]
    gamma: Option<f64>,
    /// SVR regularization C
    #[arg(long = "svr-c")]
    svr_c: Option<f64>,
    /// SVR tube width epsilon
    #[arg(long)]
    epsilon: Option<f64>,
    /// Master seed (required for all stochastic commands)
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank features by mutual information with the target
    MiRank(CommonArgs),
    /// Select features per k by maximizing the combined MI + CMI
    Select(CommonArgs),
    /// Compare MI vs CMI selections by SVR R2 over paired splits
    Evaluate(CommonArgs),
    /// Run rank, select, and evaluate into one run directory
    Pipeline(CommonArgs),
    /// Emit a synthetic dataset as CSV
    Synth {
        /// Synthetic profile JSON
        #[arg(long)]
        profile: PathBuf,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Overrides the profile's seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn resolve_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(path) = &common.input {
        config.input = Some(path.clone());
        config.synthetic = None;
    }
    if let Some(path) = &common.synthetic {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
        config.synthetic = Some(serde_json::from_str(&text)?);
        config.input = None;
    }
    if let Some(t) = &common.target {
        config.target = Some(t.clone());
    }
    if let Some(b) = common.bins {
        config.bins = b;
    }
    if common.k_max.is_some() {
        config.k_max = common.k_max;
    }
    if let Some(b) = common.backend {
        config.backend = b;
    }
    if let Some(s) = common.splits {
        config.split_count = s;
    }
    if let Some(r) = common.test_ratio {
        config.test_ratio = r;
    }
    if let Some(g) = common.gamma {
        config.svr.gamma = g;
    }
    if let Some(c) = common.svr_c {
        config.svr.c = c;
    }
    if let Some(e) = common.epsilon {
        config.svr.epsilon = e;
    }
    if common.seed.is_some() {
        config.seed = common.seed;
    }
    if let Some(out) = &common.out {
        config.out_dir = out.clone();
    }
    config.validate()?;
    Ok(config)
}

/// Parses argv, dispatches, and returns the process exit status:
/// 0 success, 1 internal error, 2 user/config error.
pub fn run() -> i32 {
    let args = CliArgs::parse();
    let outcome = match &args.command {
        Command::MiRank(common) => resolve_config(common).and_then(|c| {
            let report = cmd_mi_rank(&c)?;
            println!(
                "ranked {} features; top-2 MI concentration {:.3}",
                report.mi.len(),
                report.concentration
            );
            Ok(())
        }),
        Command::Select(common) => resolve_config(common).and_then(|c| {
            let output = cmd_select(&c)?;
            let failed = output.entries.iter().filter(|e| e.error.is_some()).count();
            println!(
                "selected features for k = 1..={} ({} failures)",
                output.k_values.len(),
                failed
            );
            Ok(())
        }),
        Command::Evaluate(common) => resolve_config(common).and_then(|c| {
            let output = cmd_evaluate(&c)?;
            for gap in &output.gaps {
                println!(
                    "k={} mean R2: MI {:.4} CMI {:.4} gap {:+.4}{}",
                    gap.k,
                    gap.mean_mi,
                    gap.mean_cmi,
                    gap.gap,
                    if gap.significant { " (significant)" } else { "" }
                );
            }
            Ok(())
        }),
        Command::Pipeline(common) => resolve_config(common).and_then(|c| {
            let manifest = cmd_pipeline(&c)?;
            println!(
                "pipeline complete: {} files in {} (config {})",
                manifest.files.len() + 1,
                c.out_dir.display(),
                &manifest.config_hash[..12]
            );
            Ok(())
        }),
        Command::Synth { profile, out, seed } => (|| {
            let text = std::fs::read_to_string(profile).map_err(|e| Error::Io {
                path: profile.clone(),
                source: e,
            })?;
            let mut profile: SyntheticProfile = serde_json::from_str(&text)?;
            if let Some(s) = seed {
                profile.seed = *s;
            }
            let dataset = cmd_synth(&profile, out)?;
            println!(
                "wrote {} samples x {} features to {}",
                dataset.n_samples(),
                dataset.n_features(),
                out.display()
            );
            Ok(())
        })(),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_user_error() {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Concentration;

    fn synth_config(dir: &Path) -> RunConfig {
        RunConfig {
            synthetic: Some(SyntheticProfile {
                n_samples: 200,
                n_informative: 2,
                n_redundant: 0,
                n_noise: 2,
                categorical_spec: vec![],
                mi_concentration: Concentration::High,
                seed: 3,
            }),
            k_max: Some(3),
            backend: Backend::Exhaustive,
            split_count: 3,
            out_dir: dir.to_path_buf(),
            seed: Some(12),
            ..RunConfig::default()
        }
    }

    #[test]
    fn validation_rules() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_err()); // neither input nor synthetic
        c.input = Some(PathBuf::from("x.csv"));
        c.target = Some("y".into());
        assert!(c.validate().is_err()); // no seed
        c.seed = Some(1);
        assert!(c.validate().is_ok());
        c.synthetic = Some(SyntheticProfile {
            n_samples: 100,
            n_informative: 1,
            n_redundant: 0,
            n_noise: 0,
            categorical_spec: vec![],
            mi_concentration: Concentration::High,
            seed: 0,
        });
        assert!(c.validate().is_err()); // both set
    }

    #[test]
    fn hash_changes_with_any_knob() {
        let dir = PathBuf::from("out");
        let base = synth_config(&dir);
        let h0 = base.hash().unwrap();
        assert_eq!(h0, base.hash().unwrap());

        let mut bins = base.clone();
        bins.bins = 12;
        assert_ne!(h0, bins.hash().unwrap());

        let mut seed = base.clone();
        seed.seed = Some(13);
        assert_ne!(h0, seed.hash().unwrap());

        let mut svr = base.clone();
        svr.svr.gamma = 2.0;
        assert_ne!(h0, svr.hash().unwrap());
    }

    #[test]
    fn config_json_round_trip() {
        let c = synth_config(&PathBuf::from("somewhere"));
        let text = serde_json::to_string_pretty(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.hash().unwrap(), c.hash().unwrap());
    }
}
