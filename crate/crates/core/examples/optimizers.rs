//! Nelder-Mead on the Rosenbrock function; SPSA on a noisy bowl.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use evqe::optimizers::{nelder_mead, spsa, Objective, SpsaGains};

fn rosenbrock(x: &[f64]) -> f64 {
    (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
}

fn main() -> evqe::Result<()> {
    let x0 = [-1.2, 1.0];
    let mut obj = Objective::new(2, rosenbrock);
    let r = nelder_mead(&mut obj, &x0, 400, 1e-12)?;
    println!(
        "nelder-mead: f = {:.3e} at {:?} after {} evaluations (converged: {})",
        r.best_value, r.best_params, r.evaluations, r.converged
    );

    // the optimizer only sees readings with standard deviation 0.1
    let mut noise = ChaCha8Rng::seed_from_u64(1);
    let normal = Normal::new(0.0, 0.1).unwrap();
    let mut obj = Objective::new(3, |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>() + normal.sample(&mut noise));
    let r = spsa(&mut obj, &[1.0, -0.5, 0.8], 500, &SpsaGains::default(), &mut ChaCha8Rng::seed_from_u64(0))?;
    let true_value: f64 = r.best_params.iter().map(|v| v * v).sum();
    println!(
        "spsa:        noise-free f = {true_value:.3e} at {:.3?} after {} evaluations",
        r.best_params, r.evaluations
    );
    Ok(())
}
