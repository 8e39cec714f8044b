//! Evolve circuits for a random 3-qubit Hermitian and compare with exact
//! diagonalization.
use evqe::evolution::{run_evqe, EvqeConfig};
use evqe::hamiltonian::{random_hermitian, Hamiltonian};

fn main() -> evqe::Result<()> {
    let h: Hamiltonian = random_hermitian(3, 2024)?.into();
    let exact = h.exact_ground_energy()?;
    let config = EvqeConfig {
        population_size: 30,
        generations: 20,
        alpha: 5e-5,
        beta: 1e-5,
        seed: 1,
        ..Default::default()
    };
    let rec = run_evqe(&config, &h)?;
    println!("gen  best_energy     error      depth cu3 species");
    for r in &rec.rows {
        println!(
            "{:3}  {:+.8}  {:.2e}  {:5} {:3} {:7}",
            r.generation,
            r.best_energy,
            r.best_energy - exact,
            r.best_depth,
            r.best_cu3,
            r.species_count
        );
    }
    println!("exact ground energy {exact:+.8}, {} evaluations", rec.total_evaluations);
    Ok(())
}
