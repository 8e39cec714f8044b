use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::simulator::{Observable, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; character `k` acts on qubit `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(paulis: Vec<Pauli>) -> Self {
        PauliString(paulis)
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString(vec![Pauli::I; n_qubits])
    }

    /// Single-qubit operators placed on the given qubits, identity elsewhere.
    pub fn with_ops(n_qubits: usize, ops: &[(usize, Pauli)]) -> Self {
        let mut v = vec![Pauli::I; n_qubits];
        for &(q, p) in ops {
            v[q] = p;
        }
        PauliString(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        self.0.iter().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|&p| matches!(p, Pauli::I | Pauli::Z))
    }

    /// Bits of the qubits with a non-identity factor.
    pub fn support_mask(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .fold(0, |m, (q, _)| m | 1 << q)
    }

    pub(crate) fn action(&self) -> PauliAction {
        let mut a = PauliAction {
            flip: 0,
            sign: 0,
            y_count: 0,
        };
        for (q, p) in self.0.iter().enumerate() {
            let bit = 1usize << q;
            match p {
                Pauli::I => {}
                Pauli::X => a.flip |= bit,
                Pauli::Y => {
                    a.flip |= bit;
                    a.sign |= bit;
                    a.y_count += 1;
                }
                Pauli::Z => a.sign |= bit,
            }
        }
        a
    }
}

/// `P|x⟩ = i^{y_count} (-1)^{popcount(x & sign)} |x ^ flip⟩`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliAction {
    pub flip: usize,
    pub sign: usize,
    pub y_count: u32,
}

impl PauliAction {
    pub fn global_phase(&self) -> Complex64 {
        match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Phase picked up by basis state `x`.
    #[inline]
    pub fn phase(&self, x: usize) -> Complex64 {
        let p = self.global_phase();
        if (x & self.sign).count_ones() % 2 == 1 {
            -p
        } else {
            p
        }
    }

    pub fn expectation(&self, amps: &[Complex64]) -> Complex64 {
        let g = self.global_phase();
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, a) in amps.iter().enumerate() {
            let term = amps[x ^ self.flip].conj() * a;
            if (x & self.sign).count_ones() % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc * g
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty pauli string".into()));
        }
        s.chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("invalid pauli character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub pauli: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, pauli: PauliString) -> Self {
        PauliTerm { coefficient, pauli }
    }

    pub fn parse(coefficient: f64, pauli: &str) -> Result<Self> {
        Ok(PauliTerm::new(coefficient, pauli.parse()?))
    }
}

/// A real linear combination of Pauli strings on a fixed register.
///
/// Terms with the same string are merged, keeping first-appearance order.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut sum = PauliSum::zero(n_qubits);
        for t in terms {
            sum.add_term(t)?;
        }
        Ok(sum)
    }

    /// Builds from `(coefficient, "XZ…")` pairs; the register size is taken
    /// from the first string.
    pub fn from_strs(terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|&(c, s)| PauliTerm::parse(c, s))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed
            .first()
            .map(|t| t.pauli.len())
            .ok_or_else(|| Error::Parse("no terms".into()))?;
        PauliSum::new(n, parsed)
    }

    pub fn add_term(&mut self, term: PauliTerm) -> Result<()> {
        if term.pauli.len() != self.n_qubits {
            return Err(Error::Shape(format!(
                "term {} has length {}, expected {}",
                term.pauli,
                term.pauli.len(),
                self.n_qubits
            )));
        }
        if !term.coefficient.is_finite() {
            return Err(Error::Parse(format!(
                "non-finite coefficient for {}",
                term.pauli
            )));
        }
        match self.terms.iter_mut().find(|t| t.pauli == term.pauli) {
            Some(t) => t.coefficient += term.coefficient,
            None => self.terms.push(term),
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| t.pauli.is_diagonal())
    }
}

impl Observable for PauliSum {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn expectation_complex(&self, state: &StateVector) -> Complex64 {
        let amps = state.amplitudes();
        self.terms
            .iter()
            .map(|t| t.pauli.action().expectation(amps) * t.coefficient)
            .sum()
    }
}
