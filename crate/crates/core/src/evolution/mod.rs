//! The generational loop: last-gene optimization, fitness sharing,
//! selection, mutation and speciation, with best-ever tracking.

mod operators;
mod species;

pub use operators::{mutate_removal, mutate_topological, Growth, ParameterSearch, SearchOutcome};
pub use species::{
    adjusted_fitness, fitness, select_parents, selection_weights, species_sizes, Representative, SpeciesSet,
    SELECTION_EPSILON,
};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::{substream, EnergyModel, Evaluator};
use crate::genome::{metrics, GeneRegistry, Genome, GenomeRecord, Metrics};
use crate::hamiltonian::Hamiltonian;
use crate::optimizers::Optimizer;
use crate::simulator::Observable;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvqeConfig {
    pub population_size: usize,
    pub generations: usize,
    /// Penalty per layer.
    pub alpha: f64,
    /// Penalty per CU3 gate.
    pub beta: f64,
    pub distance_threshold: usize,
    /// Optimizer iterations per layer per optimization call.
    pub opt_iterations: usize,
    pub p_tau: f64,
    pub p_pi: f64,
    pub p_rho: f64,
    pub optimizer: Optimizer,
    pub growth: Growth,
    #[serde(skip)]
    pub seed: u64,
    #[serde(skip)]
    pub evaluator: Evaluator,
}

impl Default for EvqeConfig {
    fn default() -> Self {
        EvqeConfig {
            population_size: 20,
            generations: 20,
            alpha: 0.0,
            beta: 0.0,
            distance_threshold: 2,
            opt_iterations: 100,
            p_tau: 0.8,
            p_pi: 0.3,
            p_rho: 0.1,
            optimizer: Optimizer::default(),
            growth: Growth::IdentityInitialized,
            seed: 0,
            evaluator: Evaluator::Statevector,
        }
    }
}

impl EvqeConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.population_size < 2 {
            return bad(format!(
                "algorithm.population_size = {} must be at least 2",
                self.population_size
            ));
        }
        if self.generations == 0 {
            return bad("algorithm.generations must be at least 1".into());
        }
        if self.opt_iterations == 0 {
            return bad("algorithm.opt_iterations must be at least 1".into());
        }
        if self.distance_threshold == 0 {
            return bad("algorithm.distance_threshold must be at least 1".into());
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("algorithm.{name} = {v} must be finite and non-negative"));
            }
        }
        for (name, p) in [("p_tau", self.p_tau), ("p_pi", self.p_pi), ("p_rho", self.p_rho)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("algorithm.{name} = {p} is outside [0, 1]"));
            }
        }
        if let Evaluator::Shots(cfg) = &self.evaluator {
            cfg.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub energy: f64,
    pub fitness: f64,
    pub adjusted_fitness: f64,
    pub species: usize,
    pub metrics: Metrics,
}

/// One row of the per-generation statistics stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_energy: f64,
    pub best_fitness: f64,
    pub best_depth: usize,
    pub best_cu3: usize,
    pub species_count: usize,
    pub mean_energy: f64,
    pub cumulative_evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub genome: GenomeRecord,
    /// Energy as reported by the evaluator.
    pub energy: f64,
    /// Noise-free energy of the same circuit.
    pub exact_energy: f64,
    pub fitness: f64,
    pub metrics: Metrics,
    pub generation: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub rows: Vec<GenerationStats>,
    pub best: BestRecord,
    pub total_evaluations: usize,
}

/// State visible to an observer at the end of each generation's evaluation.
pub struct Snapshot<'a> {
    pub generation: usize,
    pub population: &'a [Individual],
    pub registry: &'a GeneRegistry,
    pub stats: &'a GenerationStats,
}

// substream tags
const INIT: u64 = 0;
const REPRESENTATIVES: u64 = 1;
const OPTIMIZE: u64 = 2;
const SELECT: u64 = 3;
const MUTATE: u64 = 4;
const BEST: u64 = 5;

pub fn run_evqe(config: &EvqeConfig, h: &Hamiltonian) -> Result<RunRecord> {
    run_evqe_observed(config, h, |_| {})
}

struct Tracked {
    genome: Genome,
    energy: f64,
    fitness: f64,
    metrics: Metrics,
    generation: usize,
}

/// Runs the loop, calling `observe` once per generation after fitness and
/// species are known.
pub fn run_evqe_observed<F>(config: &EvqeConfig, h: &Hamiltonian, mut observe: F) -> Result<RunRecord>
where
    F: FnMut(&Snapshot<'_>),
{
    config.validate()?;
    let model = EnergyModel::new(h, config.evaluator)?;
    let n = h.n_qubits();
    let seed = config.seed;
    let pop_size = config.population_size;

    let mut registry = GeneRegistry::new();
    let mut population = Vec::with_capacity(pop_size);
    for i in 0..pop_size {
        let mut rng = substream(seed, &[0, i as u64, INIT]);
        population.push(mutate_topological(
            &Genome::new(),
            &mut registry,
            n,
            Growth::IdentityInitialized,
            &mut rng,
        )?);
    }
    let mut species = SpeciesSet::new();
    let mut assignment = species.assign(&population.iter().collect::<Vec<_>>(), config.distance_threshold);

    let mut rows = Vec::with_capacity(config.generations);
    let mut best: Option<Tracked> = None;
    let mut evaluations = 0usize;

    for generation in 1..=config.generations {
        let g = generation as u64;
        let wrap = |e: Error| Error::Generation {
            generation,
            source: Box::new(e),
        };
        let step = (|| -> Result<Vec<Genome>> {
            let refs: Vec<&Genome> = population.iter().collect();
            species.resample(&refs, &assignment, &mut substream(seed, &[g, 0, REPRESENTATIVES]));

            let search = ParameterSearch {
                registry: &registry,
                model: &model,
                optimizer: &config.optimizer,
                opt_iterations: config.opt_iterations,
            };
            let optimized: Vec<(Genome, f64, usize)> = population
                .par_iter()
                .enumerate()
                .map(|(i, genome)| {
                    let mut rng = substream(seed, &[g, i as u64, OPTIMIZE]);
                    let mut genome = genome.clone();
                    let out = search.optimize_last(&mut genome, &mut rng)?;
                    if model.is_exact() {
                        Ok((genome, out.energy, out.evaluations))
                    } else {
                        // the optimizer's best reading is biased low; re-measure
                        let e = search.energy(&genome, &mut rng)?;
                        Ok((genome, e, out.evaluations + 1))
                    }
                })
                .collect::<Result<_>>()?;

            let sizes = species_sizes(&assignment);
            let mut individuals = Vec::with_capacity(pop_size);
            for (i, (genome, energy, evals)) in optimized.into_iter().enumerate() {
                evaluations += evals;
                let m = metrics(&genome, &registry)?;
                let f = fitness(energy, m.depth, m.cu3_count, config.alpha, config.beta);
                individuals.push(Individual {
                    genome,
                    energy,
                    fitness: f,
                    adjusted_fitness: adjusted_fitness(f, sizes[i])?,
                    species: assignment[i],
                    metrics: m,
                });
            }

            if let Some(b) = best.as_mut().filter(|_| !model.is_exact()) {
                let mut rng = substream(seed, &[g, 0, BEST]);
                b.energy = search.energy(&b.genome, &mut rng)?;
                b.fitness = fitness(b.energy, b.metrics.depth, b.metrics.cu3_count, config.alpha, config.beta);
                evaluations += 1;
            }
            for ind in &individuals {
                if best.as_ref().is_none_or(|b| ind.fitness < b.fitness) {
                    best = Some(Tracked {
                        genome: ind.genome.clone(),
                        energy: ind.energy,
                        fitness: ind.fitness,
                        metrics: ind.metrics,
                        generation,
                    });
                }
            }
            let b = best.as_ref().expect("population is never empty");
            let mut species_ids: Vec<usize> = assignment.clone();
            species_ids.sort_unstable();
            species_ids.dedup();
            let stats = GenerationStats {
                generation,
                best_energy: b.energy,
                best_fitness: b.fitness,
                best_depth: b.metrics.depth,
                best_cu3: b.metrics.cu3_count,
                species_count: species_ids.len(),
                mean_energy: individuals.iter().map(|x| x.energy).sum::<f64>() / pop_size as f64,
                cumulative_evaluations: evaluations,
            };
            observe(&Snapshot {
                generation,
                population: &individuals,
                registry: &registry,
                stats: &stats,
            });
            rows.push(stats);
            if generation == config.generations {
                return Ok(Vec::new());
            }

            let adjusted: Vec<f64> = individuals.iter().map(|x| x.adjusted_fitness).collect();
            let parents = select_parents(&adjusted, pop_size, &mut substream(seed, &[g, 0, SELECT]))?;

            // registry allocation is serial, in child order
            let mut children = Vec::with_capacity(pop_size);
            for (i, &p) in parents.iter().enumerate() {
                let mut rng = substream(seed, &[g, i as u64, MUTATE]);
                let mut child = individuals[p].genome.clone();
                if rng.random_bool(config.p_rho) {
                    child = mutate_removal(&child, &mut rng);
                }
                if rng.random_bool(config.p_tau) {
                    child = mutate_topological(&child, &mut registry, n, config.growth, &mut rng)?;
                }
                let search_params = rng.random_bool(config.p_pi);
                children.push((child, search_params, rng));
            }
            let search = ParameterSearch {
                registry: &registry,
                model: &model,
                optimizer: &config.optimizer,
                opt_iterations: config.opt_iterations,
            };
            let mutated: Vec<(Genome, usize)> = children
                .into_par_iter()
                .map(|(mut child, search_params, mut rng)| {
                    if !search_params || child.is_empty() {
                        return Ok((child, 0));
                    }
                    let out = search.mutate_parameter(&mut child, &mut rng)?;
                    Ok((child, out.evaluations))
                })
                .collect::<Result<_>>()?;
            let mut next = Vec::with_capacity(pop_size);
            for (child, evals) in mutated {
                evaluations += evals;
                next.push(child);
            }
            assignment = species.assign(&next.iter().collect::<Vec<_>>(), config.distance_threshold);
            Ok(next)
        })()
        .map_err(wrap)?;
        if generation < config.generations {
            population = step;
        }
    }

    let b = best.expect("at least one generation ran");
    let circuit = crate::genome::build_circuit(&b.genome, &registry, n)?;
    Ok(RunRecord {
        rows,
        best: BestRecord {
            genome: GenomeRecord::from_genome(&b.genome, &registry, n)?,
            energy: b.energy,
            exact_energy: model.exact_energy(&circuit)?,
            fitness: b.fitness,
            metrics: b.metrics,
            generation: b.generation,
        },
        total_evaluations: evaluations,
    })
}
