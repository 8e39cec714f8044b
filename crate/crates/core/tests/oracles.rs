//! Independent cross-checks of the exact oracles and the noise model.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use evqe::hamiltonian::{
    hermitian_eigenvalues, maxcut_ising, parse_pauli_text, random_hermitian, to_dense, DenseHermitian, Graph,
    Hamiltonian, PauliSum,
};
use evqe::noise::{shot_expectation, trajectory_expectation};
use evqe::simulator::{expectation, sample_counts, simulate, Angles, Circuit, Gate};

fn nalgebra_spectrum(h: &DenseHermitian) -> Vec<f64> {
    let d = h.dim();
    let real = DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let z = h.get(i % d, j % d);
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(real).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.chunks(2).map(|p| (p[0] + p[1]) / 2.0).collect()
}

#[test]
fn jacobi_matches_nalgebra() {
    for n in 1..=5 {
        for seed in 0..4 {
            let h = random_hermitian(n, seed).unwrap();
            let mut ours = hermitian_eigenvalues(&h).unwrap();
            ours.sort_by(f64::total_cmp);
            let theirs = nalgebra_spectrum(&h);
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-9, "n={n} seed={seed}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn pauli_ground_energies_match_nalgebra() {
    let text = "0.5 XXI\n-1.0 ZZI\n0.3 IYY\n0.7 IIZ\n-0.2 XIX\n";
    let h = parse_pauli_text(text, "inline".as_ref()).unwrap();
    let dense = to_dense(&h).unwrap();
    let ground = Hamiltonian::from(h).exact_ground_energy().unwrap();
    assert!((ground - nalgebra_spectrum(&dense)[0]).abs() < 1e-10);
}

#[test]
fn maxcut_ground_matches_brute_force() {
    for seed in 0..10 {
        let g = Graph::random(6, 0.5, seed).unwrap();
        let h = maxcut_ising(&g);
        let d = to_dense(&h).unwrap();
        // diagonal Hamiltonian: minimum over basis states
        let diag_min = (0..d.dim()).map(|i| d.get(i, i).re).fold(f64::INFINITY, f64::min);
        let (cut, assignment) = g.brute_force_max_cut().unwrap();
        assert!((diag_min + cut).abs() < 1e-12);
        assert!((d.get(assignment, assignment).re + cut).abs() < 1e-12);
        assert!((Hamiltonian::from(h).exact_ground_energy().unwrap() + cut).abs() < 1e-9);
    }
}

fn plus() -> Circuit {
    let mut c = Circuit::new(1);
    c.push_layer(vec![Gate::U3 {
        qubit: 0,
        angles: Angles::H,
    }])
    .unwrap();
    c
}

#[test]
fn sampled_means_converge() {
    // ⟨X⟩ on U3(1.1, 0, 0)|0⟩ is sin(1.1)
    let mut c = Circuit::new(1);
    c.push_layer(vec![Gate::U3 {
        qubit: 0,
        angles: Angles::new(1.1, 0.0, 0.0),
    }])
    .unwrap();
    let state = simulate(&c).unwrap();
    let shots = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let means: Vec<f64> = (0..50)
        .map(|_| {
            let h = sample_counts(&state, "X", shots, &mut rng).unwrap();
            (h[0] as f64 - h[1] as f64) / shots as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / means.len() as f64;
    let se = 2.0 / (shots as f64).sqrt() / (means.len() as f64).sqrt();
    assert!((mean - 1.1f64.sin()).abs() < 3.0 * se, "{mean}");
}

#[test]
fn noiseless_shot_estimates_are_unbiased() {
    let mut c = Circuit::new(2);
    c.push_layer(vec![
        Gate::U3 {
            qubit: 0,
            angles: Angles::new(0.7, 0.2, -0.4),
        },
        Gate::U3 {
            qubit: 1,
            angles: Angles::new(2.1, 1.0, 0.3),
        },
    ])
    .unwrap();
    c.push_layer(vec![Gate::Cu3 {
        control: 0,
        target: 1,
        angles: Angles::new(1.3, 0.5, 0.9),
    }])
    .unwrap();
    let h = random_hermitian(2, 17).unwrap().to_pauli_sum().unwrap();
    let exact = expectation(&simulate(&c).unwrap(), &h).unwrap();
    let xs: Vec<f64> = (0..500)
        .map(|s| shot_expectation(&c, &h, 1300, &mut ChaCha8Rng::seed_from_u64(s)).unwrap())
        .collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let se = (var / xs.len() as f64).sqrt();
    assert!((mean - exact).abs() < 3.0 * se, "{mean} vs {exact} (se {se})");
}

#[test]
fn plus_state_shot_spread() {
    let z = PauliSum::from_strs(&[(1.0, "Z")]).unwrap();
    let xs: Vec<f64> = (0..500)
        .map(|s| shot_expectation(&plus(), &z, 1300, &mut ChaCha8Rng::seed_from_u64(s)).unwrap())
        .collect();
    let inside = xs.iter().filter(|x| x.abs() <= 0.083).count();
    assert!(inside >= 495, "{inside}");
}

#[test]
fn depolarizing_error_grows_with_p2() {
    // Bell state preparation; ZZ + XX has value 2 on it
    let mut c = Circuit::new(2);
    c.push_layer(vec![Gate::U3 {
        qubit: 0,
        angles: Angles::H,
    }])
    .unwrap();
    c.push_layer(vec![Gate::Cu3 {
        control: 0,
        target: 1,
        angles: Angles::X,
    }])
    .unwrap();
    let h = PauliSum::from_strs(&[(-1.0, "ZZ"), (-1.0, "XX")]).unwrap();
    let ideal = expectation(&simulate(&c).unwrap(), &h).unwrap();
    assert!((ideal + 2.0).abs() < 1e-12);
    let mut last = 0.0;
    for p2 in [0.0, 0.01, 0.05, 0.1] {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e = trajectory_expectation(&c, &h, p2 / 10.0, p2, 4000, &mut rng).unwrap();
        let err = e - ideal;
        assert!(err >= last, "p2 {p2}: error {err} < {last}");
        last = err;
    }
    assert!(last > 0.1);
}
