//! Build a Bell pair, read off energies, and sample measurements.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use evqe::hamiltonian::PauliSum;
use evqe::simulator::{expectation, sample_counts, simulate, Angles, Circuit, Gate};

fn main() -> evqe::Result<()> {
    let mut c = Circuit::new(2);
    c.push_layer(vec![Gate::U3 { qubit: 0, angles: Angles::H }])?;
    c.push_layer(vec![Gate::Cu3 { control: 0, target: 1, angles: Angles::X }])?;
    let state = simulate(&c)?;

    for (i, a) in state.amplitudes().iter().enumerate() {
        println!("|{i:02b}>  {:+.4} {:+.4}i", a.re, a.im);
    }
    for p in ["ZZ", "XX", "YY", "ZI"] {
        let h = PauliSum::from_strs(&[(1.0, p)])?;
        println!("<{p}> = {:+.6}", expectation(&state, &h)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let counts = sample_counts(&state, "ZZ", 1300, &mut rng)?;
    println!("1300 shots in the Z basis: {counts:?}");
    Ok(())
}
