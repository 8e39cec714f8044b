//! Shot noise and depolarizing noise, on a fixed circuit and inside EVQE.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use evqe::evaluator::Evaluator;
use evqe::evolution::{run_evqe, EvqeConfig};
use evqe::hamiltonian::{random_hermitian, Hamiltonian, PauliSum};
use evqe::noise::{shot_expectation, trajectory_expectation, NoiseConfig};
use evqe::optimizers::Optimizer;
use evqe::simulator::{Angles, Circuit, Gate};

fn main() -> evqe::Result<()> {
    let mut bell = Circuit::new(2);
    bell.push_layer(vec![Gate::U3 { qubit: 0, angles: Angles::H }])?;
    bell.push_layer(vec![Gate::Cu3 { control: 0, target: 1, angles: Angles::X }])?;
    // ZI has zero mean on the Bell pair, so only it contributes shot noise
    let h = PauliSum::from_strs(&[(-1.0, "ZZ"), (-1.0, "XX"), (0.5, "ZI")])?;

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let shots: Vec<f64> = (0..5).map(|_| shot_expectation(&bell, &h, 1300, &mut rng)).collect::<Result<_, _>>()?;
    println!("1300-shot estimates of -2: {shots:.4?}");
    for p2 in [0.0, 0.01, 0.05, 0.1] {
        let e = trajectory_expectation(&bell, &h, p2 / 10.0, p2, 2000, &mut rng)?;
        println!("depolarizing p2 = {p2:<4}: {e:+.4}");
    }

    let target: Hamiltonian = random_hermitian(2, 1)?.into();
    let exact = target.exact_ground_energy()?;
    for p2 in [0.0, 0.05, 0.1] {
        let config = EvqeConfig {
            population_size: 20,
            generations: 15,
            opt_iterations: 50,
            optimizer: Optimizer::Spsa { gains: Default::default() },
            evaluator: Evaluator::Shots(NoiseConfig { shots: 1300, p1: p2 / 10.0, p2, trajectories: 1 }),
            seed: 3,
            ..Default::default()
        };
        let rec = run_evqe(&config, &target)?;
        println!(
            "EVQE at p2 = {p2:<4}: measured error {:+.4}, noise-free error {:+.4}, cu3 {}",
            rec.best.energy - exact,
            rec.best.exact_energy - exact,
            rec.best.metrics.cu3_count
        );
    }
    Ok(())
}
