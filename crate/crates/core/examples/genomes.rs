//! Grow, truncate and compare genomes by hand.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use evqe::evolution::{mutate_removal, mutate_topological, Growth};
use evqe::genome::{build_circuit, genetic_distance, metrics, GeneRegistry, Genome};

fn main() -> evqe::Result<()> {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut registry = GeneRegistry::new();

    let mut parent = Genome::new();
    for _ in 0..4 {
        parent = mutate_topological(&parent, &mut registry, n, Growth::IdentityInitialized, &mut rng)?;
    }
    let sibling = mutate_topological(&parent, &mut registry, n, Growth::IdentityInitialized, &mut rng)?;
    let mut trunk = mutate_removal(&parent, &mut rng);
    trunk.truncate(2);
    let cousin = mutate_topological(&trunk, &mut registry, n, Growth::IdentityInitialized, &mut rng)?;

    for (name, g) in [("parent", &parent), ("sibling", &sibling), ("cousin", &cousin)] {
        let ids: Vec<u64> = g.gene_ids().map(|id| id.0).collect();
        let m = metrics(g, &registry)?;
        println!("{name:8} genes {ids:?} depth {} cu3 {}", m.depth, m.cu3_count);
    }
    println!("δ(parent, sibling) = {}", genetic_distance(&parent, &sibling));
    println!("δ(parent, cousin)  = {}", genetic_distance(&parent, &cousin));
    println!("δ(sibling, cousin) = {}", genetic_distance(&sibling, &cousin));

    for layer in build_circuit(&sibling, &registry, n)?.layers() {
        println!("{:?}", layer.gates());
    }
    Ok(())
}
