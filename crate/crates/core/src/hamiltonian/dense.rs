use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::pauli::{Pauli, PauliString, PauliSum, PauliTerm};
use crate::error::{Error, Result};
use crate::simulator::{Observable, StateVector};

/// Largest register for which dense matrices are built.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Entry-wise tolerance of the Hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense `2^n x 2^n` Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseHermitian {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

fn check_dense_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_DENSE_QUBITS {
        return Err(Error::Size(format!(
            "dense matrices support 1..={MAX_DENSE_QUBITS} qubits, got {n_qubits}"
        )));
    }
    Ok(())
}

impl DenseHermitian {
    /// Validates shape and Hermiticity.
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dense_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let m = DenseHermitian { n_qubits, entries };
        let asym = m.max_asymmetry();
        if asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        Ok(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    /// `max |H[i][j] - conj(H[j][i])|`.
    pub fn max_asymmetry(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.get(i, j) == Complex64::new(0.0, 0.0)))
    }

    /// Expands in the Pauli basis: `c_P = Re Tr(P H) / 2^n`.
    pub fn to_pauli_sum(&self) -> Result<PauliSum> {
        let n = self.n_qubits;
        let d = self.dim();
        let mut sum = PauliSum::zero(n);
        for code in 0..(1usize << (2 * n)) {
            let paulis = (0..n).map(|q| Pauli::ALL[(code >> (2 * q)) & 3]).collect();
            let p = PauliString::new(paulis);
            let a = p.action();
            // Tr(P H) = Σ_y <y|P H|y> = Σ_y phase(x) H[x ^ f][y] with x = y ^ f
            let mut tr = Complex64::new(0.0, 0.0);
            for y in 0..d {
                let x = y ^ a.flip;
                tr += a.phase(x) * self.get(x, y);
            }
            let c = tr.re / d as f64;
            if c.abs() > 1e-14 {
                sum.add_term(PauliTerm::new(c, p))?;
            }
        }
        Ok(sum)
    }
}

impl Observable for DenseHermitian {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn expectation_complex(&self, state: &StateVector) -> Complex64 {
        let amps = state.amplitudes();
        let d = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, row) in self.entries.chunks_exact(d).enumerate() {
            let hpsi: Complex64 = row.iter().zip(amps).map(|(h, a)| h * a).sum();
            acc += amps[i].conj() * hpsi;
        }
        acc
    }
}

/// `Σ coeff · ⊗_k σ_k` as a dense matrix.
pub fn to_dense(h: &PauliSum) -> Result<DenseHermitian> {
    let n = h.n_qubits();
    check_dense_size(n)?;
    let d = 1usize << n;
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for t in h.terms() {
        let a = t.pauli.action();
        // column x maps to row x ^ flip
        for x in 0..d {
            entries[(x ^ a.flip) * d + x] += a.phase(x) * t.coefficient;
        }
    }
    DenseHermitian::new(n, entries)
}

/// `(B + B†) / 2` with i.i.d. standard complex-normal `B` (`E|b|² = 1`).
pub fn random_hermitian(n_qubits: usize, seed: u64) -> Result<DenseHermitian> {
    check_dense_size(n_qubits)?;
    let d = 1usize << n_qubits;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let b: Vec<Complex64> = (0..d * d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            entries[i * d + j] = (b[i * d + j] + b[j * d + i].conj()) * 0.5;
        }
    }
    DenseHermitian::new(n_qubits, entries)
}
