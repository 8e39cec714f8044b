//! Fixed-ansatz VQE at increasing depth against the separable limit.
use evqe::baselines::{optimal_separable_energy, run_vqe, AnsatzSpec, Entanglement, Family};
use evqe::evaluator::Evaluator;
use evqe::hamiltonian::{random_hermitian, Hamiltonian};
use evqe::optimizers::Optimizer;

fn main() -> evqe::Result<()> {
    let n = 3;
    let h: Hamiltonian = random_hermitian(n, 8)?.into();
    let exact = h.exact_ground_energy()?;
    println!("exact ground energy {exact:+.6}");
    println!("separable limit     {:+.6}", optimal_separable_energy(&h, 20, 0)?);
    for family in [Family::Ry, Family::RyRz] {
        for depth in 0..=4 {
            let spec = AnsatzSpec { family, entanglement: Entanglement::Linear, depth, n_qubits: n };
            let r = run_vqe(spec, &h, &Optimizer::default(), Evaluator::Statevector, 3000, depth as u64)?;
            println!(
                "{family:?}/linear depth {depth}: {:2} params, error {:.3e}",
                spec.parameter_count(),
                r.energy - exact
            );
        }
    }
    Ok(())
}
