//! Dense state-vector simulation over the gate set {I, U3, CU3}.
//!
//! Qubit ordering is little-endian: qubit `k` is bit `k` of the basis-state
//! index, so on two qubits the amplitude at index `0b01` belongs to the state
//! where qubit 0 is `|1⟩` and qubit 1 is `|0⟩`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::hamiltonian::{Pauli, PauliString};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Euler angles `(θ, φ, λ)` of a U3 rotation, in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Angles {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl Angles {
    pub const IDENTITY: Angles = Angles::new(0.0, 0.0, 0.0);
    /// Parameters under which U3 equals Pauli X.
    pub const X: Angles = Angles::new(PI, 0.0, PI);
    pub const Y: Angles = Angles::new(PI, PI / 2.0, PI / 2.0);
    pub const Z: Angles = Angles::new(0.0, 0.0, PI);
    /// Hadamard up to global phase.
    pub const H: Angles = Angles::new(PI / 2.0, 0.0, PI);

    pub const fn new(theta: f64, phi: f64, lambda: f64) -> Self {
        Angles { theta, phi, lambda }
    }

    pub fn from_slice(p: &[f64]) -> Self {
        Angles::new(p[0], p[1], p[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.theta, self.phi, self.lambda]
    }
}

/// The 2x2 U3 matrix, row-major:
/// `[[cos(θ/2), -e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(φ+λ)} cos(θ/2)]]`.
pub fn u3_matrix(a: Angles) -> [[Complex64; 2]; 2] {
    let (s, c) = (a.theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), -Complex64::from_polar(s, a.lambda)],
        [
            Complex64::from_polar(s, a.phi),
            Complex64::from_polar(c, a.phi + a.lambda),
        ],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Identity { qubit: usize },
    U3 { qubit: usize, angles: Angles },
    Cu3 { control: usize, target: usize, angles: Angles },
}

impl Gate {
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Gate::Identity { qubit } | Gate::U3 { qubit, .. } => (qubit, None),
            Gate::Cu3 {
                control, target, ..
            } => (control, Some(target)),
        };
        std::iter::once(a).chain(b)
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitIndex { index: q, n_qubits });
            }
        }
        if let Gate::Cu3 {
            control, target, ..
        } = *self
        {
            if control == target {
                return Err(Error::Shape(format!(
                    "CU3 control and target are both qubit {control}"
                )));
            }
        }
        Ok(())
    }
}

/// One time step of a circuit; every qubit is touched by at most one gate.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Layer {
    gates: Vec<Gate>,
}

impl Layer {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            layers: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Appends a layer, rejecting out-of-range or overlapping qubits.
    pub fn push_layer(&mut self, gates: Vec<Gate>) -> Result<()> {
        let mut used = vec![false; self.n_qubits];
        for g in &gates {
            g.validate(self.n_qubits)?;
            for q in g.qubits() {
                if std::mem::replace(&mut used[q], true) {
                    return Err(Error::Shape(format!(
                        "qubit {q} used twice in one layer"
                    )));
                }
            }
        }
        self.layers.push(Layer { gates });
        Ok(())
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flat_map(|l| l.gates.iter())
    }

    pub fn cu3_count(&self) -> usize {
        self.gates()
            .filter(|g| matches!(g, Gate::Cu3 { .. }))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Size(format!(
            "{n_qubits} qubits requested, supported range is 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// `|0…0⟩` on `n_qubits` qubits.
pub fn new_zero_state(n_qubits: usize) -> Result<StateVector> {
    check_qubit_count(n_qubits)?;
    let mut amplitudes = vec![ZERO; 1 << n_qubits];
    amplitudes[0] = ONE;
    Ok(StateVector {
        n_qubits,
        amplitudes,
    })
}

impl StateVector {
    /// Wraps raw amplitudes. No normalization is applied, which lets callers
    /// build superpositions for linearity checks.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::Shape(format!(
                "{} amplitudes supplied for {n_qubits} qubits",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut s = new_zero_state(n_qubits)?;
        if index >= s.amplitudes.len() {
            return Err(Error::Shape(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        s.amplitudes[0] = ZERO;
        s.amplitudes[index] = ONE;
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Basis index with the largest Born probability (lowest index on ties).
    pub fn most_probable(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() > self.amplitudes[best].norm_sqr() {
                best = i;
            }
        }
        best
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Identity { .. } => {}
            Gate::U3 { qubit, angles } => self.apply_single(qubit, &u3_matrix(angles)),
            Gate::Cu3 {
                control,
                target,
                angles,
            } => self.apply_controlled(control, target, &u3_matrix(angles)),
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits != self.n_qubits {
            return Err(Error::Shape(format!(
                "circuit has {} qubits, state has {}",
                circuit.n_qubits, self.n_qubits
            )));
        }
        for layer in &circuit.layers {
            self.apply_layer(layer)?;
        }
        Ok(())
    }

    pub fn apply_layer(&mut self, layer: &Layer) -> Result<()> {
        for g in &layer.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    fn apply_single(&mut self, qubit: usize, m: &[[Complex64; 2]; 2]) {
        let stride = 1usize << qubit;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0][0] * x + m[0][1] * y;
                *a1 = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    fn apply_controlled(&mut self, control: usize, target: usize, m: &[[Complex64; 2]; 2]) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & cmask != 0 && i & tmask == 0 {
                let j = i | tmask;
                let (x, y) = (self.amplitudes[i], self.amplitudes[j]);
                self.amplitudes[i] = m[0][0] * x + m[0][1] * y;
                self.amplitudes[j] = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rotates the state so that measuring in the computational basis
    /// measures `pauli`: X gets a Hadamard, Y gets S† then a Hadamard.
    pub fn rotate_to_measurement_basis(&mut self, pauli: &PauliString) -> Result<()> {
        if pauli.len() != self.n_qubits {
            return Err(Error::Shape(format!(
                "pauli string acts on {} qubits, state has {}",
                pauli.len(),
                self.n_qubits
            )));
        }
        for (qubit, p) in pauli.iter().enumerate() {
            let rotations: &[Angles] = match p {
                Pauli::I | Pauli::Z => &[],
                Pauli::X => &[Angles::H],
                Pauli::Y => &[Angles::new(0.0, 0.0, -PI / 2.0), Angles::H],
            };
            for &angles in rotations {
                self.apply_gate(&Gate::U3 { qubit, angles })?;
            }
        }
        Ok(())
    }
}

/// Value-semantics wrapper around [`StateVector::apply_gate`].
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_gate(gate)?;
    Ok(out)
}

/// Value-semantics wrapper around [`StateVector::apply_circuit`].
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_circuit(circuit)?;
    Ok(out)
}

/// Runs `circuit` on `|0…0⟩`.
pub fn simulate(circuit: &Circuit) -> Result<StateVector> {
    let mut s = new_zero_state(circuit.n_qubits)?;
    s.apply_circuit(circuit)?;
    Ok(s)
}

/// Anything with a well-defined energy `⟨ψ|H|ψ⟩`.
pub trait Observable {
    fn n_qubits(&self) -> usize;
    /// Complex `⟨ψ|H|ψ⟩`; the imaginary part is numerical residue.
    fn expectation_complex(&self, state: &StateVector) -> Complex64;
}

pub fn expectation<H: Observable + ?Sized>(state: &StateVector, h: &H) -> Result<f64> {
    if h.n_qubits() != state.n_qubits {
        return Err(Error::Shape(format!(
            "hamiltonian acts on {} qubits, state has {}",
            h.n_qubits(),
            state.n_qubits
        )));
    }
    Ok(h.expectation_complex(state).re)
}

/// Multinomial sample of `shots` measurements of `measured_pauli`.
///
/// Returns a histogram indexed by the computational-basis outcome observed
/// after the basis change. Drawn by sequential conditional binomials, which
/// is distributionally identical to `shots` independent Born-rule samples.
pub fn sample_counts<R: Rng + ?Sized>(
    state: &StateVector,
    measured_pauli: &str,
    shots: u64,
    rng: &mut R,
) -> Result<Vec<u64>> {
    let pauli: PauliString = measured_pauli.parse()?;
    if shots == 0 {
        return Err(Error::Parse("shots must be at least 1".into()));
    }
    let mut rotated = state.clone();
    rotated.rotate_to_measurement_basis(&pauli)?;
    let probs = rotated.probabilities();
    Ok(multinomial(&probs, shots, rng))
}

pub(crate) fn multinomial<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().sum();
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = binomial(remaining, q, rng);
        counts[i] = k;
        remaining -= k;
        mass -= p;
    }
    counts
}

pub(crate) fn binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> u64 {
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("probability in range").sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < TOL
    }

    #[test]
    fn zero_state() {
        let s = new_zero_state(1).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO]);
        let s = new_zero_state(2).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO, ZERO, ZERO]);
        assert!(matches!(new_zero_state(17), Err(Error::Size(_))));
        assert!(matches!(new_zero_state(0), Err(Error::Size(_))));
    }

    #[test]
    fn u3_identity_and_x() {
        let s = new_zero_state(1).unwrap();
        let id = apply_gate(&s, &Gate::U3 { qubit: 0, angles: Angles::IDENTITY }).unwrap();
        assert_eq!(id, s);
        let x = apply_gate(&s, &Gate::U3 { qubit: 0, angles: Angles::X }).unwrap();
        assert!(close(x.amplitudes()[0], ZERO));
        assert!(close(x.amplitudes()[1], ONE));
    }

    #[test]
    fn u3_matrices_match_paulis() {
        let i = Complex64::i();
        let cases = [
            (Angles::X, [[ZERO, ONE], [ONE, ZERO]]),
            (Angles::Y, [[ZERO, -i], [i, ZERO]]),
            (Angles::Z, [[ONE, ZERO], [ZERO, -ONE]]),
        ];
        for (angles, expected) in cases {
            let m = u3_matrix(angles);
            for r in 0..2 {
                for c in 0..2 {
                    assert!(close(m[r][c], expected[r][c]), "{angles:?}");
                }
            }
        }
    }

    #[test]
    fn cu3_acts_as_cx() {
        // qubit 0 set, qubit 1 clear: index 0b01
        let s = StateVector::basis(2, 0b01).unwrap();
        let out = apply_gate(
            &s,
            &Gate::Cu3 { control: 0, target: 1, angles: Angles::X },
        )
        .unwrap();
        assert!(close(out.amplitudes()[0b11], ONE));
        // control clear: nothing happens
        let s = StateVector::basis(2, 0b10).unwrap();
        let out = apply_gate(
            &s,
            &Gate::Cu3 { control: 0, target: 1, angles: Angles::X },
        )
        .unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn bell_state() {
        let mut c = Circuit::new(2);
        c.push_layer(vec![Gate::U3 { qubit: 0, angles: Angles::H }]).unwrap();
        c.push_layer(vec![Gate::Cu3 { control: 0, target: 1, angles: Angles::X }])
            .unwrap();
        let s = simulate(&c).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [h, 0.0, 0.0, h];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!(close(*a, Complex64::new(e, 0.0)));
        }
    }

    #[test]
    fn empty_and_identity_circuits() {
        let s = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.5, 0.1),
                Complex64::new(0.3, -0.2),
                Complex64::new(-0.4, 0.0),
                Complex64::new(0.1, 0.6),
            ],
        )
        .unwrap();
        assert_eq!(apply_circuit(&s, &Circuit::new(2)).unwrap(), s);

        let mut c = Circuit::new(2);
        for _ in 0..5 {
            c.push_layer(vec![
                Gate::U3 { qubit: 0, angles: Angles::IDENTITY },
                Gate::U3 { qubit: 1, angles: Angles::IDENTITY },
            ])
            .unwrap();
            c.push_layer(vec![Gate::Cu3 { control: 1, target: 0, angles: Angles::IDENTITY }])
                .unwrap();
        }
        let out = apply_circuit(&s, &c).unwrap();
        for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!(close(*a, *b));
        }
    }

    #[test]
    fn layer_validation() {
        let mut c = Circuit::new(2);
        let err = c.push_layer(vec![
            Gate::U3 { qubit: 0, angles: Angles::X },
            Gate::Cu3 { control: 1, target: 0, angles: Angles::X },
        ]);
        assert!(matches!(err, Err(Error::Shape(_))));
        let err = c.push_layer(vec![Gate::U3 { qubit: 2, angles: Angles::X }]);
        assert!(matches!(err, Err(Error::QubitIndex { index: 2, .. })));
        let err = c.push_layer(vec![Gate::Cu3 { control: 1, target: 1, angles: Angles::X }]);
        assert!(err.is_err());

        let mut s = new_zero_state(1).unwrap();
        assert!(matches!(
            s.apply_gate(&Gate::U3 { qubit: 3, angles: Angles::X }),
            Err(Error::QubitIndex { index: 3, n_qubits: 1 })
        ));
        assert!(matches!(
            s.apply_circuit(&Circuit::new(2)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn sample_eigenstates() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let zero = new_zero_state(1).unwrap();
        assert_eq!(sample_counts(&zero, "Z", 57, &mut rng).unwrap(), vec![57, 0]);
        let one = StateVector::basis(1, 1).unwrap();
        assert_eq!(sample_counts(&one, "Z", 100, &mut rng).unwrap(), vec![0, 100]);
        // |+> is the +1 eigenstate of X, so the rotated outcome is always 0.
        let plus = apply_gate(&zero, &Gate::U3 { qubit: 0, angles: Angles::H }).unwrap();
        assert_eq!(sample_counts(&plus, "X", 100, &mut rng).unwrap(), vec![100, 0]);
        assert!(matches!(
            sample_counts(&zero, "Q", 10, &mut rng),
            Err(Error::Parse(_))
        ));
        assert!(sample_counts(&zero, "ZZ", 10, &mut rng).is_err());
    }

    #[test]
    fn sample_plus_state_fair_coin() {
        let zero = new_zero_state(1).unwrap();
        let plus = apply_gate(&zero, &Gate::U3 { qubit: 0, angles: Angles::H }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let counts = sample_counts(&plus, "Z", 1300, &mut rng).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), 1300);
        let frac = counts[0] as f64 / 1300.0;
        assert!((frac - 0.5).abs() <= 0.042, "fraction {frac}");
    }

    #[test]
    fn y_basis_rotation() {
        // U3(π/2, π/2, 0)|0> = (|0> + i|1>)/√2, the +1 eigenstate of Y.
        let zero = new_zero_state(1).unwrap();
        let plus_i = apply_gate(
            &zero,
            &Gate::U3 { qubit: 0, angles: Angles::new(PI / 2.0, PI / 2.0, 0.0) },
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(sample_counts(&plus_i, "Y", 64, &mut rng).unwrap(), vec![64, 0]);
    }
}
