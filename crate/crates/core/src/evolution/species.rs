use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::genome::{genetic_distance, Genome};

/// Energy plus depth and entangler penalties.
pub fn fitness(energy: f64, depth: usize, cu3_count: usize, alpha: f64, beta: f64) -> f64 {
    energy + alpha * depth as f64 + beta * cu3_count as f64
}

/// Explicit fitness sharing: `f / |S|`.
pub fn adjusted_fitness(fitness: f64, species_size: usize) -> Result<f64> {
    if species_size == 0 {
        return Err(Error::Config("species size must be at least 1".into()));
    }
    Ok(fitness / species_size as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representative {
    pub genome: Genome,
    pub species: usize,
}

/// Ordered species representatives. Species ids are never reused.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpeciesSet {
    representatives: Vec<Representative>,
    next_species: usize,
}

impl SpeciesSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Replaces the representatives with one uniformly chosen member of each
    /// species present in `assignment`, in ascending species order.
    pub fn resample<R: Rng + ?Sized>(&mut self, population: &[&Genome], assignment: &[usize], rng: &mut R) {
        let mut species: Vec<usize> = assignment.to_vec();
        species.sort_unstable();
        species.dedup();
        self.representatives = species
            .into_iter()
            .map(|s| {
                let members: Vec<usize> = (0..assignment.len()).filter(|&i| assignment[i] == s).collect();
                let pick = members[rng.random_range(0..members.len())];
                Representative {
                    genome: population[pick].clone(),
                    species: s,
                }
            })
            .collect();
    }

    /// First-fit assignment: each genome joins the first representative
    /// closer than `threshold`, or founds a new species and becomes its
    /// representative.
    pub fn assign(&mut self, population: &[&Genome], threshold: usize) -> Vec<usize> {
        population
            .iter()
            .map(|g| {
                if let Some(r) = self
                    .representatives
                    .iter()
                    .find(|r| genetic_distance(g, &r.genome) < threshold)
                {
                    return r.species;
                }
                let species = self.next_species;
                self.next_species += 1;
                self.representatives.push(Representative {
                    genome: (*g).clone(),
                    species,
                });
                species
            })
            .collect()
    }
}

/// Number of members of each individual's species.
pub fn species_sizes(assignment: &[usize]) -> Vec<usize> {
    assignment
        .iter()
        .map(|s| assignment.iter().filter(|t| *t == s).count())
        .collect()
}

/// Offset added to every selection weight, as a fraction of the spread.
pub const SELECTION_EPSILON: f64 = 0.01;

/// Selection weights `(f_worst - f_i) + ε (f_worst - f_best)` for minimized
/// adjusted fitness; all ones when the population is flat.
pub fn selection_weights(adjusted: &[f64]) -> Vec<f64> {
    let worst = adjusted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best = adjusted.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = worst - best;
    if spread.is_nan() || spread <= 0.0 {
        return vec![1.0; adjusted.len()];
    }
    adjusted
        .iter()
        .map(|f| (worst - f) + SELECTION_EPSILON * spread)
        .collect()
}

/// Draws `count` parent indices with replacement.
pub fn select_parents<R: Rng + ?Sized>(adjusted: &[f64], count: usize, rng: &mut R) -> Result<Vec<usize>> {
    if adjusted.is_empty() {
        return Err(Error::Config("cannot select from an empty population".into()));
    }
    let weights = selection_weights(adjusted);
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::Config(format!("invalid selection weights: {e}")))?;
    Ok((0..count).map(|_| dist.sample(rng)).collect())
}
