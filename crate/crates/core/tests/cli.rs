use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_evqe");

/// Top-level keys in file order.
fn top_level_keys(json: &str) -> Vec<String> {
    json.lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap().to_string())
        .collect()
}

fn evqe(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const Z_CONFIG: &str = r#"
seed = 3
[problem]
kind = "pauli_file"
path = "z.txt"
[algorithm]
kind = "evqe"
population_size = 6
generations = 4
"#;

const HEADER: &str = "generation,best_energy,best_fitness,best_depth,best_cu3,species_count,mean_energy,cumulative_evaluations";

const SUMMARY_KEYS: [&str; 14] = [
    "algorithm",
    "seed",
    "n_qubits",
    "best_energy",
    "best_exact_energy",
    "exact_ground_energy",
    "error",
    "error_available",
    "depth",
    "cu3_count",
    "cx_estimate",
    "total_evaluations",
    "best_genome",
    "maxcut",
];

#[test]
fn run_writes_schema() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "z.txt", "# single qubit\n1.0 Z\n");
    let cfg = write(dir.path(), "z.toml", Z_CONFIG);
    let out = evqe(&["run", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(dir.path().join("out/generations.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 1 + 4);
    for (i, l) in lines[1..].iter().enumerate() {
        assert!(l.starts_with(&format!("{},", i + 1)));
        assert_eq!(l.split(',').count(), 8);
    }

    let text = fs::read_to_string(dir.path().join("out/summary.json")).unwrap();
    assert_eq!(top_level_keys(&text), &SUMMARY_KEYS[..13]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["exact_ground_energy"], -1.0);
    assert!((json["best_energy"].as_f64().unwrap() + 1.0).abs() < 1e-4);
    assert_eq!(json["cx_estimate"], 2 * json["cu3_count"].as_u64().unwrap());
}

#[test]
fn run_is_reproducible_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "z.txt", "0.5 ZI\n-0.8 XX\n0.3 YZ\n");
    let cfg = write(dir.path(), "z.toml", Z_CONFIG);
    let mut outputs = Vec::new();
    for (k, workers) in ["1", "8", "1"].iter().enumerate() {
        let out_dir = dir.path().join(format!("o{k}"));
        let out = evqe(&["run", &cfg, "--workers", workers, "--out-dir", out_dir.to_str().unwrap()]);
        assert!(out.status.success());
        outputs.push((
            fs::read(out_dir.join("generations.csv")).unwrap(),
            fs::read(out_dir.join("summary.json")).unwrap(),
        ));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));

    let out_dir = dir.path().join("other");
    evqe(&["run", &cfg, "--seed", "99", "--out-dir", out_dir.to_str().unwrap()]);
    assert_ne!(fs::read(out_dir.join("summary.json")).unwrap(), outputs[0].1);
}

#[test]
fn maxcut_summary_reports_cut() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "tri.txt", "3 3\n0 1 1\n1 2 1\n0 2 1\n");
    let cfg = write(
        dir.path(),
        "mc.toml",
        "[problem]\nkind = \"maxcut\"\ngraph = \"tri.txt\"\n[algorithm]\nkind = \"evqe\"\npopulation_size = 25\ngenerations = 15\n",
    );
    assert!(evqe(&["run", &cfg]).status.success());
    let text = fs::read_to_string(dir.path().join("out/summary.json")).unwrap();
    assert_eq!(top_level_keys(&text), SUMMARY_KEYS);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["maxcut"]["optimal_cut"], 2.0);
    assert_eq!(json["maxcut"]["cut_value"], 2.0);
    assert!(json["error"].as_f64().unwrap() < 1e-2);
}

#[test]
fn oracle_outputs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "tri.txt", "3 3\n0 1 1\n1 2 1\n0 2 1\n");
    let mc = write(
        dir.path(),
        "mc.toml",
        "[problem]\nkind = \"maxcut\"\ngraph = \"tri.txt\"\n[algorithm]\nkind = \"separable_baseline\"\n",
    );
    let out = evqe(&["oracle", &mc]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ground_energy -2\n"), "{text}");
    assert!(text.contains("max_cut 2\n"));

    write(dir.path(), "z.txt", "1 Z\n");
    let z = write(dir.path(), "z.toml", Z_CONFIG);
    let text = String::from_utf8(evqe(&["oracle", &z]).stdout).unwrap();
    assert!(text.contains("ground_energy -1\n"));

    let rh = write(
        dir.path(),
        "rh.toml",
        "[problem]\nkind = \"random_hermitian\"\nn_qubits = 2\nseed = 8\n[algorithm]\nkind = \"evqe\"\n",
    );
    let a = evqe(&["oracle", &rh]).stdout;
    assert_eq!(a, evqe(&["oracle", &rh]).stdout);
    assert!(!a.is_empty());
}

#[test]
fn oracle_size_cap_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let terms = format!("1.0 {}\n", "Z".repeat(11));
    write(dir.path(), "big.txt", &terms);
    let cfg = write(
        dir.path(),
        "big.toml",
        "[problem]\nkind = \"pauli_file\"\npath = \"big.txt\"\n[algorithm]\nkind = \"evqe\"\n",
    );
    assert_eq!(evqe(&["oracle", &cfg]).status.code(), Some(2));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write(
        dir.path(),
        "m.toml",
        "[problem]\nkind = \"maxcut\"\ngraph = \"absent-graph.txt\"\n[algorithm]\nkind = \"evqe\"\n",
    );
    let out = evqe(&["run", &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent-graph.txt"));

    let bad = write(
        dir.path(),
        "b.toml",
        "[problem]\nkind = \"random_hermitian\"\nn_qubits = 2\nseed = 1\n[algorithm]\nkind = \"evqe\"\np_tau = 2.0\n",
    );
    let out = evqe(&["run", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p_tau"));

    let typo = write(
        dir.path(),
        "t.toml",
        "[problem]\nkind = \"random_hermitian\"\nn_qubits = 2\nseed = 1\n[algorithm]\nkind = \"evqe\"\npopulaton_size = 5\n",
    );
    let out = evqe(&["run", &typo]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("populaton_size"));

    assert_eq!(evqe(&["run", "/nonexistent/config.toml"]).status.code(), Some(2));
}

#[test]
fn malformed_pauli_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.txt", "1.0 ZZ\n0.5 XQ\n");
    let cfg = write(
        dir.path(),
        "h.toml",
        "[problem]\nkind = \"pauli_file\"\npath = \"h.txt\"\n[algorithm]\nkind = \"evqe\"\n",
    );
    let out = evqe(&["run", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("h.txt:2"));
}

#[test]
fn ablation_csv_pairs_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "a.toml",
        r#"
seed = 10
[problem]
kind = "random_hermitian"
n_qubits = 2
seed = 3
[algorithm]
kind = "evqe"
population_size = 6
generations = 5
[ablation]
count = 3
"#,
    );
    let out = evqe(&["ablate", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("out/ablation.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "generation,standard_seed10,cx_seed10,standard_seed11,cx_seed11,standard_seed12,cx_seed12"
    );
    assert_eq!(lines.len(), 6);
    let first: Vec<&str> = lines[1].split(',').collect();
    for pair in first[1..].chunks(2) {
        assert_eq!(pair[0], pair[1]);
    }
}

#[test]
fn vqe_and_separable_runs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.txt", "1 XX\n1 ZZ\n");
    let vqe = write(
        dir.path(),
        "v.toml",
        "[problem]\nkind = \"pauli_file\"\npath = \"h.txt\"\n[algorithm]\nkind = \"vqe\"\nfamily = \"ry_rz\"\nentanglement = \"linear\"\ndepth = 2\n",
    );
    assert!(evqe(&["run", &vqe]).status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/summary.json")).unwrap()).unwrap();
    assert_eq!(json["algorithm"], "vqe");
    assert!(json["best_energy"].as_f64().unwrap() >= -2.0 - 1e-9);
    assert!(!dir.path().join("out/generations.csv").exists());

    let sep = write(
        dir.path(),
        "s.toml",
        "[problem]\nkind = \"pauli_file\"\npath = \"h.txt\"\n[algorithm]\nkind = \"separable_baseline\"\nrestarts = 4\n[output]\ndir = \"sep\"\n",
    );
    assert!(evqe(&["run", &sep]).status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sep/summary.json")).unwrap()).unwrap();
    assert!(json["error"].as_f64().unwrap() > 0.5);
}
