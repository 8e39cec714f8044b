//! Solve a 6-vertex Max-Cut instance and read the cut off the best circuit.
use evqe::evolution::{run_evqe, EvqeConfig};
use evqe::hamiltonian::{bitstring, maxcut_ising, Graph, Hamiltonian};
use evqe::simulator::simulate;

fn main() -> evqe::Result<()> {
    let graph = Graph::random(6, 0.5, 11)?;
    let h: Hamiltonian = maxcut_ising(&graph).into();
    let config = EvqeConfig {
        population_size: 50,
        generations: 25,
        alpha: 1e-2,
        beta: 1.25e-3,
        seed: 5,
        ..Default::default()
    };
    let rec = run_evqe(&config, &h)?;
    let state = simulate(&rec.best.genome.to_circuit()?)?;
    let assignment = state.most_probable();
    let (optimum, _) = graph.brute_force_max_cut()?;
    println!("edges: {:?}", graph.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>());
    println!(
        "best energy {:+.5} (depth {}, cu3 {})",
        rec.best.energy, rec.best.metrics.depth, rec.best.metrics.cu3_count
    );
    println!(
        "most probable cut {} with probability {:.3}: value {} of optimal {optimum}",
        bitstring(assignment, 6),
        state.probabilities()[assignment],
        graph.cut_value(assignment)
    );
    Ok(())
}
