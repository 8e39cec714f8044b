//! Identity-initialized growth against growth by fixed CX gates.
use evqe::harness::{ablate, Experiment, ExperimentConfig};

const CONFIG: &str = r#"
seed = 0
[problem]
kind = "random_hermitian"
n_qubits = 3
seed = 7
[algorithm]
kind = "evqe"
population_size = 20
generations = 15
[ablation]
count = 3
"#;

fn main() -> evqe::Result<()> {
    let exp = Experiment::from_config(ExperimentConfig::from_toml(CONFIG)?, Default::default())?;
    let out = ablate(&exp, 0)?;
    for (seed, (standard, cx)) in out.seeds.iter().zip(&out.errors) {
        println!(
            "seed {seed}: final error standard {:.3e}, fixed CX {:.3e}",
            standard.last().unwrap(),
            cx.last().unwrap()
        );
    }
    println!(
        "median: standard {:.3e}, fixed CX {:.3e}",
        out.median_final_standard(),
        out.median_final_cx()
    );
    Ok(())
}
