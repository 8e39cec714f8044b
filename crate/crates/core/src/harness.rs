//! Experiment configs, seeded runs and their CSV/JSON artifacts.
//!
//! Configs are TOML. Relative paths inside a config resolve against the
//! directory containing it.
//!
//! ```toml
//! seed = 7
//!
//! [problem]
//! kind = "random_hermitian"   # or "maxcut" (graph = "g.txt"), "pauli_file" (path = "h.txt")
//! n_qubits = 2
//! seed = 3
//!
//! [algorithm]
//! kind = "evqe"               # or "vqe", "separable_baseline"
//! population_size = 20
//! generations = 15
//!
//! [evaluator]
//! kind = "statevector"        # or "shots" with shots, p1, p2, trajectories
//!
//! [output]
//! dir = "out"
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{build_ansatz, optimal_separable_energy, run_vqe, AnsatzSpec, Entanglement, Family};
use crate::error::{Error, Result};
use crate::evaluator::Evaluator;
use crate::evolution::{run_evqe, EvqeConfig, GenerationStats, Growth};
use crate::genome::GenomeRecord;
use crate::hamiltonian::{
    bitstring, load_graph_file, load_pauli_file, maxcut_ising, random_hermitian, Graph, Hamiltonian, MAX_DENSE_QUBITS,
};
use crate::optimizers::Optimizer;
use crate::simulator::{simulate, Circuit, Observable};

pub const GENERATIONS_FILE: &str = "generations.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const ABLATION_FILE: &str = "ablation.csv";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    RandomHermitian { n_qubits: usize, seed: u64 },
    Maxcut { graph: PathBuf },
    PauliFile { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgorithmConfig {
    Evqe(EvqeConfig),
    Vqe(VqeConfig),
    SeparableBaseline(SeparableConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqeConfig {
    pub family: Family,
    pub entanglement: Entanglement,
    pub depth: usize,
    #[serde(default)]
    pub optimizer: Optimizer,
    #[serde(default = "default_vqe_iterations")]
    pub iterations: usize,
}

fn default_vqe_iterations() -> usize {
    1000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeparableConfig {
    pub restarts: usize,
}

impl Default for SeparableConfig {
    fn default() -> Self {
        SeparableConfig { restarts: 10 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AblationConfig {
    /// Seeds shared by both variants; defaults to five seeds starting at the
    /// master seed.
    pub seeds: Option<Vec<u64>>,
    pub count: usize,
}

impl Default for AblationConfig {
    fn default() -> Self {
        AblationConfig { seeds: None, count: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub problem: ProblemConfig,
    pub algorithm: AlgorithmConfig,
    #[serde(default)]
    pub evaluator: Evaluator,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub ablation: AblationConfig,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

/// A loaded config with its problem instance built.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub base_dir: PathBuf,
    pub hamiltonian: Hamiltonian,
    pub graph: Option<Graph>,
}

impl Experiment {
    /// Reads and validates a config file. Every failure here is a
    /// configuration error.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let config =
            ExperimentConfig::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_config(config, base_dir)
    }

    pub fn from_config(config: ExperimentConfig, base_dir: PathBuf) -> Result<Self> {
        let as_config = |field: &str, e: Error| match e {
            Error::Config(_) => e,
            other => Error::Config(format!("{field}: {other}")),
        };
        let (hamiltonian, graph) = match &config.problem {
            ProblemConfig::RandomHermitian { n_qubits, seed } => {
                if *n_qubits == 0 || *n_qubits > MAX_DENSE_QUBITS {
                    return Err(Error::Config(format!(
                        "problem.n_qubits = {n_qubits} must be in 1..={MAX_DENSE_QUBITS}"
                    )));
                }
                let h = random_hermitian(*n_qubits, *seed).map_err(|e| as_config("problem", e))?;
                (Hamiltonian::from(h), None)
            }
            ProblemConfig::Maxcut { graph } => {
                let p = resolve(&base_dir, graph);
                if !p.is_file() {
                    return Err(Error::Config(format!("problem.graph: file not found: {}", p.display())));
                }
                let g = load_graph_file(&p).map_err(|e| as_config("problem.graph", e))?;
                if g.n_vertices() == 0 {
                    return Err(Error::Config(format!("problem.graph: {} has no vertices", p.display())));
                }
                (maxcut_ising(&g).into(), Some(g))
            }
            ProblemConfig::PauliFile { path } => {
                let p = resolve(&base_dir, path);
                if !p.is_file() {
                    return Err(Error::Config(format!("problem.path: file not found: {}", p.display())));
                }
                let h = load_pauli_file(&p).map_err(|e| as_config("problem.path", e))?;
                (h.into(), None)
            }
        };
        match &config.algorithm {
            AlgorithmConfig::Evqe(c) => {
                let mut c = c.clone();
                c.evaluator = config.evaluator;
                c.validate()?;
            }
            AlgorithmConfig::Vqe(v) => {
                if v.iterations == 0 {
                    return Err(Error::Config("algorithm.iterations must be at least 1".into()));
                }
                if let Evaluator::Shots(n) = &config.evaluator {
                    n.validate()?;
                }
            }
            AlgorithmConfig::SeparableBaseline(s) => {
                if s.restarts == 0 {
                    return Err(Error::Config("algorithm.restarts must be at least 1".into()));
                }
            }
        }
        if config.ablation.count == 0 && config.ablation.seeds.is_none() {
            return Err(Error::Config("ablation.count must be at least 1".into()));
        }
        Ok(Experiment {
            config,
            base_dir,
            hamiltonian,
            graph,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    /// Output directory: the override, else `output.dir`, else `out`, both
    /// relative to the config file.
    pub fn out_dir(&self, override_dir: Option<&Path>) -> PathBuf {
        match override_dir {
            Some(d) => d.to_path_buf(),
            None => resolve(&self.base_dir, self.config.output.dir.as_deref().unwrap_or(Path::new("out"))),
        }
    }

    /// Exact ground energy when the problem is small enough to diagonalize.
    pub fn exact_ground_energy(&self) -> Option<f64> {
        if let Some(g) = &self.graph {
            return g.brute_force_max_cut().ok().map(|(cut, _)| -cut);
        }
        if self.n_qubits() > MAX_DENSE_QUBITS {
            return None;
        }
        self.hamiltonian.exact_ground_energy().ok()
    }

    fn evqe_config(&self, base: &EvqeConfig, seed: u64) -> EvqeConfig {
        EvqeConfig {
            seed,
            evaluator: self.config.evaluator,
            ..base.clone()
        }
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Final report written to `summary.json`. Field order is part of the
/// output format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub algorithm: String,
    pub seed: u64,
    pub n_qubits: usize,
    pub best_energy: f64,
    /// Noise-free energy of the best circuit.
    pub best_exact_energy: f64,
    pub exact_ground_energy: Option<f64>,
    pub error: Option<f64>,
    pub error_available: bool,
    pub depth: usize,
    pub cu3_count: usize,
    pub cx_estimate: usize,
    pub total_evaluations: usize,
    pub best_genome: Option<GenomeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxcut: Option<MaxcutReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxcutReport {
    /// Most probable measurement of the best circuit, vertex 0 first.
    pub bitstring: String,
    pub cut_value: f64,
    pub optimal_cut: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub rows: Vec<GenerationStats>,
    pub summary: Summary,
}

fn maxcut_report(graph: Option<&Graph>, circuit: &Circuit) -> Result<Option<MaxcutReport>> {
    let Some(g) = graph else { return Ok(None) };
    let assignment = simulate(circuit)?.most_probable();
    Ok(Some(MaxcutReport {
        bitstring: bitstring(assignment, g.n_vertices()),
        cut_value: g.cut_value(assignment),
        optimal_cut: g.brute_force_max_cut()?.0,
    }))
}

/// Runs the configured algorithm with master seed `seed`.
pub fn execute(exp: &Experiment, seed: u64) -> Result<RunOutput> {
    let exact = exp.exact_ground_energy();
    let n = exp.n_qubits();
    let summary = |algorithm: &str, energy: f64, best_exact: f64| Summary {
        algorithm: algorithm.into(),
        seed,
        n_qubits: n,
        best_energy: energy,
        best_exact_energy: best_exact,
        exact_ground_energy: exact,
        error: exact.map(|e| energy - e),
        error_available: exact.is_some(),
        depth: 0,
        cu3_count: 0,
        cx_estimate: 0,
        total_evaluations: 0,
        best_genome: None,
        maxcut: None,
    };
    match &exp.config.algorithm {
        AlgorithmConfig::Evqe(base) => {
            let rec = run_evqe(&exp.evqe_config(base, seed), &exp.hamiltonian)?;
            let circuit = rec.best.genome.to_circuit()?;
            let mut s = summary("evqe", rec.best.energy, rec.best.exact_energy);
            s.depth = rec.best.metrics.depth;
            s.cu3_count = rec.best.metrics.cu3_count;
            s.cx_estimate = rec.best.metrics.cx_estimate;
            s.total_evaluations = rec.total_evaluations;
            s.maxcut = maxcut_report(exp.graph.as_ref(), &circuit)?;
            s.best_genome = Some(rec.best.genome);
            Ok(RunOutput {
                rows: rec.rows,
                summary: s,
            })
        }
        AlgorithmConfig::Vqe(v) => {
            let spec = AnsatzSpec {
                family: v.family,
                entanglement: v.entanglement,
                depth: v.depth,
                n_qubits: n,
            };
            let res = run_vqe(spec, &exp.hamiltonian, &v.optimizer, exp.config.evaluator, v.iterations, seed)?;
            let circuit = build_ansatz(spec)?.circuit(&res.params)?;
            let best_exact = crate::simulator::expectation(&simulate(&circuit)?, &exp.hamiltonian)?;
            let mut s = summary("vqe", res.energy, best_exact);
            s.depth = circuit.depth();
            s.cu3_count = circuit.cu3_count();
            s.cx_estimate = 2 * s.cu3_count;
            s.total_evaluations = res.evaluations;
            s.maxcut = maxcut_report(exp.graph.as_ref(), &circuit)?;
            Ok(RunOutput {
                rows: Vec::new(),
                summary: s,
            })
        }
        AlgorithmConfig::SeparableBaseline(c) => {
            let e = optimal_separable_energy(&exp.hamiltonian, c.restarts, seed)?;
            let mut s = summary("separable_baseline", e, e);
            s.depth = 1;
            Ok(RunOutput {
                rows: Vec::new(),
                summary: s,
            })
        }
    }
}

pub fn write_generations_csv(path: &Path, rows: &[GenerationStats]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    // header written explicitly so an empty run still has it
    w.write_record([
        "generation",
        "best_energy",
        "best_fitness",
        "best_depth",
        "best_cu3",
        "species_count",
        "mean_energy",
        "cumulative_evaluations",
    ])?;
    for r in rows {
        w.write_record([
            r.generation.to_string(),
            r.best_energy.to_string(),
            r.best_fitness.to_string(),
            r.best_depth.to_string(),
            r.best_cu3.to_string(),
            r.species_count.to_string(),
            r.mean_energy.to_string(),
            r.cumulative_evaluations.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// `run`: writes `generations.csv` (EVQE only) and `summary.json`.
pub fn run_command(exp: &Experiment, seed: u64, out_dir: &Path) -> Result<Summary> {
    let out = execute(exp, seed)?;
    create_dir(out_dir)?;
    if matches!(exp.config.algorithm, AlgorithmConfig::Evqe(_)) {
        write_generations_csv(&out_dir.join(GENERATIONS_FILE), &out.rows)?;
    }
    let path = out_dir.join(SUMMARY_FILE);
    let mut json = serde_json::to_string_pretty(&out.summary)?;
    json.push('\n');
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(out.summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub n_qubits: usize,
    pub ground_energy: f64,
    pub max_cut: Option<(f64, String)>,
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "n_qubits {}", self.n_qubits)?;
        writeln!(f, "ground_energy {}", self.ground_energy)?;
        if let Some((cut, bits)) = &self.max_cut {
            writeln!(f, "max_cut {cut}")?;
            writeln!(f, "bitstring {bits}")?;
        }
        Ok(())
    }
}

/// `oracle`: exact ground energy, plus the optimal cut for Max-Cut problems.
pub fn oracle_command(exp: &Experiment) -> Result<OracleReport> {
    let n = exp.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Size(format!(
            "oracle supports at most {MAX_DENSE_QUBITS} qubits, problem has {n}"
        )));
    }
    let ground_energy = exp.hamiltonian.exact_ground_energy()?;
    let max_cut = match &exp.graph {
        Some(g) => {
            let (cut, assignment) = g.brute_force_max_cut()?;
            Some((cut, bitstring(assignment, g.n_vertices())))
        }
        None => None,
    };
    Ok(OracleReport {
        n_qubits: n,
        ground_energy,
        max_cut,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationOutput {
    pub seeds: Vec<u64>,
    /// Per seed, best-error trajectories of (standard, fixed-CX) growth.
    pub errors: Vec<(Vec<f64>, Vec<f64>)>,
}

impl AblationOutput {
    fn median(mut xs: Vec<f64>) -> f64 {
        xs.sort_by(f64::total_cmp);
        let m = xs.len() / 2;
        if xs.len() % 2 == 1 {
            xs[m]
        } else {
            (xs[m - 1] + xs[m]) / 2.0
        }
    }

    pub fn median_final_standard(&self) -> f64 {
        Self::median(self.errors.iter().map(|(s, _)| *s.last().unwrap()).collect())
    }

    pub fn median_final_cx(&self) -> f64 {
        Self::median(self.errors.iter().map(|(_, c)| *c.last().unwrap()).collect())
    }
}

/// `ablate`: standard and fixed-CX growth on identical seeds.
pub fn ablate(exp: &Experiment, seed: u64) -> Result<AblationOutput> {
    let AlgorithmConfig::Evqe(base) = &exp.config.algorithm else {
        return Err(Error::Config("ablate requires algorithm.kind = \"evqe\"".into()));
    };
    let exact = exp.exact_ground_energy().ok_or_else(|| {
        Error::Config(format!(
            "ablate needs an exact ground energy; problem has {} qubits (max {MAX_DENSE_QUBITS})",
            exp.n_qubits()
        ))
    })?;
    let seeds: Vec<u64> = match &exp.config.ablation.seeds {
        Some(s) => s.clone(),
        None => (0..exp.config.ablation.count as u64).map(|i| seed.wrapping_add(i)).collect(),
    };
    let runs: Vec<(u64, Growth)> = seeds
        .iter()
        .flat_map(|&s| [(s, Growth::IdentityInitialized), (s, Growth::FixedCx)])
        .collect();
    let traces = runs
        .par_iter()
        .map(|&(s, growth)| {
            let mut c = exp.evqe_config(base, s);
            c.growth = growth;
            let rec = run_evqe(&c, &exp.hamiltonian)?;
            Ok(rec.rows.iter().map(|r| r.best_energy - exact).collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut it = traces.into_iter();
    let errors = seeds
        .iter()
        .map(|_| (it.next().unwrap(), it.next().unwrap()))
        .collect();
    Ok(AblationOutput { seeds, errors })
}

pub fn write_ablation_csv(path: &Path, out: &AblationOutput) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["generation".to_string()];
    for s in &out.seeds {
        header.push(format!("standard_seed{s}"));
        header.push(format!("cx_seed{s}"));
    }
    w.write_record(&header)?;
    let generations = out.errors.first().map_or(0, |(s, _)| s.len());
    for g in 0..generations {
        let mut row = vec![(g + 1).to_string()];
        for (s, c) in &out.errors {
            row.push(s[g].to_string());
            row.push(c[g].to_string());
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn ablate_command(exp: &Experiment, seed: u64, out_dir: &Path) -> Result<AblationOutput> {
    let out = ablate(exp, seed)?;
    create_dir(out_dir)?;
    write_ablation_csv(&out_dir.join(ABLATION_FILE), &out)?;
    Ok(out)
}

/// Runs `f` on a dedicated pool of `workers` threads (rayon's default pool
/// when `None`).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--workers must be at least 1".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Process exit status for a failed command: 2 for configuration and size
/// errors, 3 for failures during a run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Size(_) => 2,
        _ => 3,
    }
}
