//! Hamiltonians in sparse Pauli and dense form, problem encoders and the
//! exact-diagonalization oracle.

mod dense;
mod eigen;
mod io;
mod maxcut;
mod pauli;

pub use dense::{random_hermitian, to_dense, DenseHermitian, HERMITIAN_TOL, MAX_DENSE_QUBITS};
pub use eigen::{exact_ground_energy, hermitian_eigenvalues, symmetric_eigenvalues};
pub use io::{load_graph_file, load_pauli_file, parse_graph_text, parse_pauli_text};
pub use maxcut::{bitstring, maxcut_ising, Edge, Graph};
pub use pauli::{Pauli, PauliString, PauliSum, PauliTerm};

use num_complex::Complex64;

use crate::error::Result;
use crate::simulator::{Observable, StateVector};

/// Either representation of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub enum Hamiltonian {
    Pauli(PauliSum),
    Dense(DenseHermitian),
}

impl Hamiltonian {
    pub fn to_dense(&self) -> Result<DenseHermitian> {
        match self {
            Hamiltonian::Pauli(p) => to_dense(p),
            Hamiltonian::Dense(d) => Ok(d.clone()),
        }
    }

    pub fn to_pauli_sum(&self) -> Result<PauliSum> {
        match self {
            Hamiltonian::Pauli(p) => Ok(p.clone()),
            Hamiltonian::Dense(d) => d.to_pauli_sum(),
        }
    }

    pub fn exact_ground_energy(&self) -> Result<f64> {
        exact_ground_energy(&self.to_dense()?)
    }
}

impl From<PauliSum> for Hamiltonian {
    fn from(p: PauliSum) -> Self {
        Hamiltonian::Pauli(p)
    }
}

impl From<DenseHermitian> for Hamiltonian {
    fn from(d: DenseHermitian) -> Self {
        Hamiltonian::Dense(d)
    }
}

impl Observable for Hamiltonian {
    fn n_qubits(&self) -> usize {
        match self {
            Hamiltonian::Pauli(p) => p.n_qubits(),
            Hamiltonian::Dense(d) => d.n_qubits(),
        }
    }

    fn expectation_complex(&self, state: &StateVector) -> Complex64 {
        match self {
            Hamiltonian::Pauli(p) => p.expectation_complex(state),
            Hamiltonian::Dense(d) => d.expectation_complex(state),
        }
    }
}
