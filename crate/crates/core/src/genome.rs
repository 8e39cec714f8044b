//! Genetic encoding of circuits.
//!
//! A [`Gene`] fixes the gate layout of one circuit layer and carries a
//! globally unique [`GeneId`]. A [`GeneInstance`] binds parameters to a gene,
//! and a [`Genome`] is an ordered list of instances, one per layer.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::{Angles, Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneId(pub u64);

/// What a gene does to one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum GateRole {
    Identity,
    U3,
    /// Control of a CU3 acting on `target`.
    Control { target: usize },
    /// Target of a CU3 controlled by `control`.
    Target { control: usize },
}

/// A parameterized gate of a layer, in parameter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    U3(usize),
    Cu3 { control: usize, target: usize },
}

/// Parameterized gates of `layout` ordered by their lowest qubit index.
fn slots_of(layout: &[GateRole]) -> Vec<Slot> {
    let mut slots = Vec::new();
    for (q, role) in layout.iter().enumerate() {
        match *role {
            GateRole::Identity => {}
            GateRole::U3 => slots.push(Slot::U3(q)),
            GateRole::Control { target } if target > q => slots.push(Slot::Cu3 { control: q, target }),
            GateRole::Target { control } if control > q => slots.push(Slot::Cu3 { control, target: q }),
            GateRole::Control { .. } | GateRole::Target { .. } => {}
        }
    }
    slots
}

fn validate_layout(layout: &[GateRole]) -> Result<()> {
    let n = layout.len();
    if n == 0 {
        return Err(Error::Layout("empty layout".into()));
    }
    for (q, role) in layout.iter().enumerate() {
        match *role {
            GateRole::Control { target: p } | GateRole::Target { control: p } if p >= n || p == q => {
                return Err(Error::Layout(format!("qubit {q} paired with invalid qubit {p}")));
            }
            GateRole::Control { target } if layout[target] != (GateRole::Target { control: q }) => {
                return Err(Error::Layout(format!(
                    "qubit {q} controls {target} but {target} is {:?}",
                    layout[target]
                )));
            }
            GateRole::Target { control } if layout[control] != (GateRole::Control { target: q }) => {
                return Err(Error::Layout(format!(
                    "qubit {q} is targeted by {control} but {control} is {:?}",
                    layout[control]
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gene {
    id: GeneId,
    layout: Vec<GateRole>,
}

impl Gene {
    pub fn id(&self) -> GeneId {
        self.id
    }

    pub fn layout(&self) -> &[GateRole] {
        &self.layout
    }

    pub fn n_qubits(&self) -> usize {
        self.layout.len()
    }

    pub fn slots(&self) -> Vec<Slot> {
        slots_of(&self.layout)
    }

    /// Three angles per U3 and per CU3 pair.
    pub fn parameter_count(&self) -> usize {
        3 * self.slots().len()
    }

    pub fn cu3_count(&self) -> usize {
        self.layout
            .iter()
            .filter(|r| matches!(r, GateRole::Control { .. }))
            .count()
    }

    fn has_cu3(&self, control: usize, target: usize) -> bool {
        self.layout[control] == GateRole::Control { target }
    }
}

/// Append-only table of every gene created during a run.
///
/// Ids are handed out by a monotone counter and never reused; a gene's id is
/// its index in the table.
#[derive(Clone, Debug, Default)]
pub struct GeneRegistry {
    genes: Vec<Gene>,
}

impl GeneRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, layout: Vec<GateRole>) -> Result<&Gene> {
        validate_layout(&layout)?;
        let id = GeneId(self.genes.len() as u64);
        self.genes.push(Gene { id, layout });
        Ok(self.genes.last().expect("just pushed"))
    }

    pub fn get(&self, id: GeneId) -> Result<&Gene> {
        self.genes
            .get(id.0 as usize)
            .ok_or(Error::UnknownGene(id.0))
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// Id the next registered gene will receive.
    pub fn next_id(&self) -> GeneId {
        GeneId(self.genes.len() as u64)
    }
}

/// Samples a fresh gene for a layer following `predecessor`.
///
/// Qubits are visited in random order; each picks uniformly between U3 and
/// CU3 (with a random partner and orientation) among the options still
/// legal, and falls back to identity only when neither is. Legal means:
/// no U3 directly after a U3 on the same qubit, and no CU3 repeating the
/// predecessor's CU3 on the same pair with the same orientation.
pub fn random_gene<'r, R: Rng + ?Sized>(
    n_qubits: usize,
    predecessor: Option<&Gene>,
    rng: &mut R,
    registry: &'r mut GeneRegistry,
) -> Result<&'r Gene> {
    if n_qubits == 0 {
        return Err(Error::Layout("a gene needs at least one qubit".into()));
    }
    if let Some(p) = predecessor {
        if p.n_qubits() != n_qubits {
            return Err(Error::Shape(format!(
                "predecessor gene spans {} qubits, expected {n_qubits}",
                p.n_qubits()
            )));
        }
    }
    let mut layout: Vec<Option<GateRole>> = vec![None; n_qubits];
    let mut order: Vec<usize> = (0..n_qubits).collect();
    order.shuffle(rng);

    for &q in &order {
        if layout[q].is_some() {
            continue;
        }
        let u3_ok = predecessor.is_none_or(|p| p.layout[q] != GateRole::U3);
        let mut pairs = Vec::new();
        for (other, slot) in layout.iter().enumerate() {
            if other == q || slot.is_some() {
                continue;
            }
            for (c, t) in [(q, other), (other, q)] {
                if !predecessor.is_some_and(|p| p.has_cu3(c, t)) {
                    pairs.push((c, t));
                }
            }
        }
        let pick_u3 = match (u3_ok, pairs.is_empty()) {
            (false, true) => {
                layout[q] = Some(GateRole::Identity);
                continue;
            }
            (true, true) => true,
            (false, false) => false,
            (true, false) => rng.random_bool(0.5),
        };
        if pick_u3 {
            layout[q] = Some(GateRole::U3);
        } else {
            let (c, t) = pairs[rng.random_range(0..pairs.len())];
            layout[c] = Some(GateRole::Control { target: t });
            layout[t] = Some(GateRole::Target { control: c });
        }
    }
    registry.register(layout.into_iter().map(|r| r.expect("every qubit assigned")).collect())
}

/// Checks that `next` may directly follow `prev` (or open a genome when
/// `prev` is `None`) under the pruning rules.
pub fn check_succession(prev: Option<&Gene>, next: &Gene) -> Result<()> {
    let n = next.n_qubits();
    let identities: Vec<usize> = (0..n).filter(|&q| next.layout[q] == GateRole::Identity).collect();
    let Some(prev) = prev else {
        return match identities.first() {
            Some(q) => Err(Error::Layout(format!(
                "gene {} opens a genome with identity on qubit {q}",
                next.id.0
            ))),
            None => Ok(()),
        };
    };
    for q in 0..n {
        if next.layout[q] == GateRole::U3 && prev.layout[q] == GateRole::U3 {
            return Err(Error::Layout(format!(
                "gene {} repeats U3 on qubit {q} after gene {}",
                next.id.0, prev.id.0
            )));
        }
        if let GateRole::Control { target } = next.layout[q] {
            if prev.has_cu3(q, target) {
                return Err(Error::Layout(format!(
                    "gene {} repeats CU3({q}->{target}) after gene {}",
                    next.id.0, prev.id.0
                )));
            }
        }
    }
    // identity only where U3 was illegal and no other identity qubit offered a legal CU3
    for (i, &q) in identities.iter().enumerate() {
        if prev.layout[q] != GateRole::U3 {
            return Err(Error::Layout(format!(
                "gene {} places identity on qubit {q} where U3 was legal",
                next.id.0
            )));
        }
        for &r in &identities[i + 1..] {
            if !prev.has_cu3(q, r) || !prev.has_cu3(r, q) {
                return Err(Error::Layout(format!(
                    "gene {} leaves qubits {q} and {r} idle although a CU3 between them was legal",
                    next.id.0
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneInstance {
    pub gene: GeneId,
    /// Three angles per slot, in slot order.
    pub params: Vec<f64>,
    /// CU3 slots are pinned to a CX and excluded from optimization.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fixed_entanglers: bool,
}

impl GeneInstance {
    /// An instance whose gates all act as the identity.
    pub fn identity(gene: &Gene) -> Self {
        GeneInstance {
            gene: gene.id,
            params: vec![0.0; gene.parameter_count()],
            fixed_entanglers: false,
        }
    }

    /// U3 slots start at the identity, CU3 slots are fixed CX gates.
    pub fn with_fixed_cx(gene: &Gene) -> Self {
        let mut params = Vec::with_capacity(gene.parameter_count());
        for slot in gene.slots() {
            match slot {
                Slot::U3(_) => params.extend([0.0; 3]),
                Slot::Cu3 { .. } => params.extend(Angles::X.to_array()),
            }
        }
        GeneInstance {
            gene: gene.id,
            params,
            fixed_entanglers: true,
        }
    }

    /// Indices into `params` the optimizer may change.
    pub fn free_parameters(&self, gene: &Gene) -> Vec<usize> {
        gene.slots()
            .iter()
            .enumerate()
            .filter(|(_, s)| !(self.fixed_entanglers && matches!(s, Slot::Cu3 { .. })))
            .flat_map(|(i, _)| 3 * i..3 * i + 3)
            .collect()
    }

    /// Gates of the layer this instance describes.
    pub fn gates(&self, gene: &Gene) -> Result<Vec<Gate>> {
        if gene.id != self.gene {
            return Err(Error::Layout(format!(
                "instance of gene {} resolved against gene {}",
                self.gene.0, gene.id.0
            )));
        }
        let slots = gene.slots();
        if self.params.len() != 3 * slots.len() {
            return Err(Error::Layout(format!(
                "gene {} needs {} parameters, instance has {}",
                gene.id.0,
                3 * slots.len(),
                self.params.len()
            )));
        }
        Ok(slots
            .iter()
            .zip(self.params.chunks_exact(3))
            .map(|(slot, p)| {
                let angles = Angles::from_slice(p);
                match *slot {
                    Slot::U3(qubit) => Gate::U3 { qubit, angles },
                    Slot::Cu3 { control, target } => Gate::Cu3 {
                        control,
                        target,
                        angles,
                    },
                }
            })
            .collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    genes: Vec<GeneInstance>,
}

impl Genome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_instances(genes: Vec<GeneInstance>) -> Self {
        Genome { genes }
    }

    /// Number of genes, which is also the circuit depth.
    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn genes(&self) -> &[GeneInstance] {
        &self.genes
    }

    pub fn genes_mut(&mut self) -> &mut [GeneInstance] {
        &mut self.genes
    }

    pub fn last(&self) -> Option<&GeneInstance> {
        self.genes.last()
    }

    pub fn push(&mut self, instance: GeneInstance) {
        self.genes.push(instance);
    }

    /// Keeps the first `len` instances.
    pub fn truncate(&mut self, len: usize) {
        self.genes.truncate(len);
    }

    pub fn gene_ids(&self) -> impl Iterator<Item = GeneId> + '_ {
        self.genes.iter().map(|g| g.gene)
    }

    /// Re-checks every consecutive gene pair against the pruning rules.
    pub fn validate(&self, registry: &GeneRegistry) -> Result<()> {
        let mut prev: Option<&Gene> = None;
        for inst in &self.genes {
            let gene = registry.get(inst.gene)?;
            check_succession(prev, gene)?;
            prev = Some(gene);
        }
        Ok(())
    }
}

/// `⌈(|a| + |b|) / 2⌉` minus the number of positions holding the same gene.
pub fn genetic_distance(a: &Genome, b: &Genome) -> usize {
    let shared = a.gene_ids().zip(b.gene_ids()).filter(|(x, y)| x == y).count();
    (a.len() + b.len()).div_ceil(2) - shared
}

/// One layer per gene instance, in genome order.
pub fn build_circuit(genome: &Genome, registry: &GeneRegistry, n_qubits: usize) -> Result<Circuit> {
    let mut circuit = Circuit::new(n_qubits);
    for inst in &genome.genes {
        let gene = registry.get(inst.gene)?;
        if gene.n_qubits() != n_qubits {
            return Err(Error::Shape(format!(
                "gene {} spans {} qubits, circuit has {n_qubits}",
                gene.id.0,
                gene.n_qubits()
            )));
        }
        circuit.push_layer(inst.gates(gene)?)?;
    }
    Ok(circuit)
}

/// Resource usage of a genome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub depth: usize,
    pub cu3_count: usize,
    /// Two CX per CU3 (standard controlled-unitary decomposition).
    pub cx_estimate: usize,
}

pub fn metrics(genome: &Genome, registry: &GeneRegistry) -> Result<Metrics> {
    let mut cu3_count = 0;
    for inst in &genome.genes {
        cu3_count += registry.get(inst.gene)?.cu3_count();
    }
    Ok(Metrics {
        depth: genome.len(),
        cu3_count,
        cx_estimate: 2 * cu3_count,
    })
}

/// Self-contained description of a genome, used in run summaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenomeRecord {
    pub n_qubits: usize,
    pub genes: Vec<GeneRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneRecord {
    pub id: GeneId,
    pub layout: Vec<GateRole>,
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fixed_entanglers: bool,
}

impl GenomeRecord {
    pub fn from_genome(genome: &Genome, registry: &GeneRegistry, n_qubits: usize) -> Result<Self> {
        let genes = genome
            .genes
            .iter()
            .map(|inst| {
                let gene = registry.get(inst.gene)?;
                Ok(GeneRecord {
                    id: inst.gene,
                    layout: gene.layout.clone(),
                    params: inst.params.clone(),
                    fixed_entanglers: inst.fixed_entanglers,
                })
            })
            .collect::<Result<_>>()?;
        Ok(GenomeRecord { n_qubits, genes })
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        let mut circuit = Circuit::new(self.n_qubits);
        for g in &self.genes {
            validate_layout(&g.layout)?;
            let gene = Gene {
                id: g.id,
                layout: g.layout.clone(),
            };
            let inst = GeneInstance {
                gene: g.id,
                params: g.params.clone(),
                fixed_entanglers: g.fixed_entanglers,
            };
            circuit.push_layer(inst.gates(&gene)?)?;
        }
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::simulate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn genome_of(ids: &[u64]) -> Genome {
        Genome::from_instances(
            ids.iter()
                .map(|&i| GeneInstance {
                    gene: GeneId(i),
                    params: vec![],
                    fixed_entanglers: false,
                })
                .collect(),
        )
    }

    #[test]
    fn distance_on_ancestry_tree() {
        // γ1 → {γ3, γ4}, γ2 from the root
        let g1 = genome_of(&[1, 3]);
        let g2 = genome_of(&[1, 4]);
        let g3 = genome_of(&[2]);
        assert_eq!(genetic_distance(&g1, &g2), 1);
        assert_eq!(genetic_distance(&g1, &g3), 2);
        assert_eq!(genetic_distance(&g2, &g3), 2);
        assert_eq!(genetic_distance(&g1, &g1), 0);
        assert_eq!(genetic_distance(&Genome::new(), &Genome::new()), 0);
        let long = genome_of(&[1, 3, 5, 6, 7]);
        assert_eq!(genetic_distance(&long, &long), 0);
    }

    #[test]
    fn single_qubit_forced_layouts() {
        let mut reg = GeneRegistry::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let first = random_gene(1, None, &mut rng, &mut reg).unwrap().clone();
        assert_eq!(first.layout(), &[GateRole::U3]);
        let second = random_gene(1, Some(&first), &mut rng, &mut reg).unwrap().clone();
        assert_eq!(second.layout(), &[GateRole::Identity]);
        let third = random_gene(1, Some(&second), &mut rng, &mut reg).unwrap();
        assert_eq!(third.layout(), &[GateRole::U3]);
        assert!(first.id() < second.id());
    }

    #[test]
    fn repeated_cu3_orientation_is_never_sampled() {
        let mut reg = GeneRegistry::new();
        let pred = reg
            .register(vec![GateRole::Control { target: 1 }, GateRole::Target { control: 0 }])
            .unwrap()
            .clone();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut reversed = 0;
        for _ in 0..1000 {
            let g = random_gene(2, Some(&pred), &mut rng, &mut reg).unwrap();
            assert_ne!(g.layout()[0], GateRole::Control { target: 1 });
            if g.layout()[1] == (GateRole::Control { target: 0 }) {
                reversed += 1;
            }
        }
        assert!(reversed > 0, "reversed CU3 should be reachable");
    }

    #[test]
    fn succession_rules() {
        let mut reg = GeneRegistry::new();
        let u3u3 = reg.register(vec![GateRole::U3, GateRole::U3]).unwrap().clone();
        let cx01 = reg
            .register(vec![GateRole::Control { target: 1 }, GateRole::Target { control: 0 }])
            .unwrap()
            .clone();
        let cx10 = reg
            .register(vec![GateRole::Target { control: 1 }, GateRole::Control { target: 0 }])
            .unwrap()
            .clone();
        let idid = reg.register(vec![GateRole::Identity, GateRole::Identity]).unwrap().clone();
        let u3id = reg.register(vec![GateRole::U3, GateRole::Identity]).unwrap().clone();

        assert!(check_succession(None, &u3u3).is_ok());
        assert!(check_succession(None, &idid).is_err());
        assert!(check_succession(Some(&u3u3), &u3u3).is_err());
        assert!(check_succession(Some(&u3u3), &cx01).is_ok());
        assert!(check_succession(Some(&cx01), &cx01).is_err());
        assert!(check_succession(Some(&cx01), &cx10).is_ok());
        // both idle after U3 although CU3 between them was legal
        assert!(check_succession(Some(&u3u3), &idid).is_err());
        // identity after a CU3 is never allowed
        assert!(check_succession(Some(&cx01), &u3id).is_err());
    }

    #[test]
    fn sampled_genomes_pass_validation() {
        let mut reg = GeneRegistry::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            let mut g = Genome::new();
            for _ in 0..30 {
                let pred = g.last().map(|i| reg.get(i.gene).unwrap().clone());
                let gene = random_gene(n, pred.as_ref(), &mut rng, &mut reg).unwrap();
                g.push(GeneInstance::identity(gene));
            }
            g.validate(&reg).unwrap();
        }
    }

    #[test]
    fn parameter_layout() {
        let mut reg = GeneRegistry::new();
        let gene = reg
            .register(vec![
                GateRole::Target { control: 2 },
                GateRole::U3,
                GateRole::Control { target: 0 },
                GateRole::Identity,
            ])
            .unwrap()
            .clone();
        assert_eq!(gene.slots(), vec![Slot::Cu3 { control: 2, target: 0 }, Slot::U3(1)]);
        assert_eq!(gene.parameter_count(), 6);
        assert_eq!(gene.cu3_count(), 1);
        let cx = GeneInstance::with_fixed_cx(&gene);
        assert_eq!(cx.free_parameters(&gene), vec![3, 4, 5]);
        assert_eq!(GeneInstance::identity(&gene).free_parameters(&gene).len(), 6);
    }

    #[test]
    fn bad_layouts_are_rejected() {
        let mut reg = GeneRegistry::new();
        assert!(reg.register(vec![GateRole::Control { target: 1 }, GateRole::U3]).is_err());
        assert!(reg.register(vec![GateRole::Control { target: 0 }]).is_err());
        assert!(reg.register(vec![]).is_err());
    }

    #[test]
    fn circuit_and_metrics() {
        let mut reg = GeneRegistry::new();
        let s = reg.register(vec![GateRole::U3, GateRole::U3]).unwrap().clone();
        let t = reg
            .register(vec![GateRole::Target { control: 1 }, GateRole::Control { target: 0 }])
            .unwrap()
            .clone();
        let genome = Genome::from_instances(vec![
            GeneInstance {
                gene: s.id(),
                params: vec![1.0, 2.0, 3.0, 0.0, std::f64::consts::PI, std::f64::consts::FRAC_PI_2],
                fixed_entanglers: false,
            },
            GeneInstance {
                gene: t.id(),
                params: vec![std::f64::consts::FRAC_PI_2, 2.0, 0.0],
                fixed_entanglers: false,
            },
        ]);
        let c = build_circuit(&genome, &reg, 2).unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.cu3_count(), 1);
        assert_eq!(
            metrics(&genome, &reg).unwrap(),
            Metrics { depth: 2, cu3_count: 1, cx_estimate: 2 }
        );
        assert_eq!(metrics(&Genome::new(), &reg).unwrap(), Metrics::default());
        assert_eq!(build_circuit(&Genome::new(), &reg, 2).unwrap().depth(), 0);

        let record = GenomeRecord::from_genome(&genome, &reg, 2).unwrap();
        assert_eq!(record.to_circuit().unwrap(), c);
    }

    #[test]
    fn metrics_count_pairs() {
        let mut reg = GeneRegistry::new();
        let mut genome = Genome::new();
        let layouts = [
            vec![
                GateRole::Control { target: 1 },
                GateRole::Target { control: 0 },
                GateRole::Control { target: 3 },
                GateRole::Target { control: 2 },
            ],
            vec![
                GateRole::Target { control: 1 },
                GateRole::Control { target: 0 },
                GateRole::Target { control: 3 },
                GateRole::Control { target: 2 },
            ],
            vec![
                GateRole::Control { target: 2 },
                GateRole::Control { target: 3 },
                GateRole::Target { control: 0 },
                GateRole::Target { control: 1 },
            ],
        ];
        for l in layouts {
            let g = reg.register(l).unwrap();
            genome.push(GeneInstance::identity(g));
        }
        assert_eq!(
            metrics(&genome, &reg).unwrap(),
            Metrics { depth: 3, cu3_count: 6, cx_estimate: 12 }
        );
    }

    #[test]
    fn dangling_gene() {
        let reg = GeneRegistry::new();
        let g = genome_of(&[5]);
        assert!(matches!(build_circuit(&g, &reg, 1), Err(Error::UnknownGene(5))));
        assert!(matches!(metrics(&g, &reg), Err(Error::UnknownGene(5))));
    }

    #[test]
    fn zero_parameter_genome_fixes_vacuum() {
        let mut reg = GeneRegistry::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut genome = Genome::new();
        for _ in 0..6 {
            let pred = genome.last().map(|i| reg.get(i.gene).unwrap().clone());
            let gene = random_gene(3, pred.as_ref(), &mut rng, &mut reg).unwrap();
            genome.push(GeneInstance::identity(gene));
        }
        let s = simulate(&build_circuit(&genome, &reg, 3).unwrap()).unwrap();
        assert!((s.amplitudes()[0].re - 1.0).abs() < 1e-12);
    }
}
