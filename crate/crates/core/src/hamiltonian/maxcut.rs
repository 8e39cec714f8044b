use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pauli::{Pauli, PauliString, PauliSum, PauliTerm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Undirected weighted graph with `u < v` on every edge.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Normalizes each edge to `u < v` and rejects self-loops, duplicates,
    /// out-of-range endpoints and non-finite weights.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        let mut out: Vec<Edge> = Vec::new();
        for (a, b, w) in edges {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::Graph(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n_vertices}"
                )));
            }
            if a == b {
                return Err(Error::Graph(format!("self-loop on vertex {a}")));
            }
            if !w.is_finite() {
                return Err(Error::Graph(format!("edge ({a}, {b}) has weight {w}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if out.iter().any(|e| e.u == u && e.v == v) {
                return Err(Error::Graph(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, weight: w });
        }
        Ok(Graph {
            n_vertices,
            edges: out,
        })
    }

    /// Erdős–Rényi graph with unit weights.
    pub fn random(n_vertices: usize, edge_probability: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n_vertices {
            for v in u + 1..n_vertices {
                if rng.random_bool(edge_probability) {
                    edges.push((u, v, 1.0));
                }
            }
        }
        Graph::new(n_vertices, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total weight of edges crossing the partition; bit `k` of `assignment`
    /// is the side of vertex `k`.
    pub fn cut_value(&self, assignment: usize) -> f64 {
        self.edges
            .iter()
            .filter(|e| (assignment >> e.u & 1) != (assignment >> e.v & 1))
            .map(|e| e.weight)
            .sum()
    }

    /// Exhaustive search over all `2^n` partitions. Returns the best value and
    /// the lowest-index partition achieving it.
    pub fn brute_force_max_cut(&self) -> Result<(f64, usize)> {
        if self.n_vertices > 24 {
            return Err(Error::Size(format!(
                "brute-force max cut limited to 24 vertices, got {}",
                self.n_vertices
            )));
        }
        let mut best = (f64::NEG_INFINITY, 0);
        for a in 0..1usize << self.n_vertices {
            let v = self.cut_value(a);
            if v > best.0 {
                best = (v, a);
            }
        }
        Ok(best)
    }
}

/// `H = Σ_{(u,v,w)} (w/2) Z_u Z_v - (w/2) I`; ground energy is minus the
/// maximum cut.
pub fn maxcut_ising(g: &Graph) -> PauliSum {
    let n = g.n_vertices();
    let mut h = PauliSum::zero(n);
    for e in g.edges() {
        let zz = PauliString::with_ops(n, &[(e.u, Pauli::Z), (e.v, Pauli::Z)]);
        h.add_term(PauliTerm::new(e.weight / 2.0, zz))
            .expect("edge string matches register");
        h.add_term(PauliTerm::new(-e.weight / 2.0, PauliString::identity(n)))
            .expect("identity matches register");
    }
    h
}

/// Renders an assignment with vertex 0 first.
pub fn bitstring(assignment: usize, n_vertices: usize) -> String {
    (0..n_vertices)
        .map(|k| if assignment >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}
