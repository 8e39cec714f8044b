//! The Hamiltonian toolkit: Pauli text, dense matrices, exact ground
//! energies and the Max-Cut Ising encoding.
use evqe::hamiltonian::{
    bitstring, maxcut_ising, parse_pauli_text, random_hermitian, Graph, Hamiltonian,
};

fn main() -> evqe::Result<()> {
    let text = "# transverse-field Ising, 3 sites\n-1.0 ZZI\n-1.0 IZZ\n-0.5 XII\n-0.5 IXI\n-0.5 IIX\n";
    let tfim = parse_pauli_text(text, "inline".as_ref())?;
    println!("TFIM: {} terms, ground {:.6}", tfim.terms().len(), Hamiltonian::from(tfim).exact_ground_energy()?);

    let dense = random_hermitian(3, 42)?;
    let pauli = dense.to_pauli_sum()?;
    println!(
        "random 3-qubit Hermitian: |H|_F = {:.4}, {} Pauli terms, ground {:.6}",
        dense.frobenius_norm(),
        pauli.terms().len(),
        Hamiltonian::from(dense).exact_ground_energy()?
    );

    let g = Graph::random(6, 0.5, 3)?;
    let (cut, assignment) = g.brute_force_max_cut()?;
    let h: Hamiltonian = maxcut_ising(&g).into();
    println!(
        "6-vertex graph with {} edges: max cut {cut} at {}, Ising ground {}",
        g.edges().len(),
        bitstring(assignment, 6),
        h.exact_ground_energy()?
    );
    Ok(())
}
