//! End-to-end tests of the command-line surface via `cli::dispatch`.

use std::path::PathBuf;
use std::sync::atomic::{AtomicU32, Ordering};

use setft::cli::dispatch;
use setft::function::{DenseSetFunction, Model};
use setft::generators::{coverage_oracle, CoverageSpec};
use setft::io;

fn temp_dir() -> PathBuf {
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let dir = std::env::temp_dir().join(format!(
        "setft-cli-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> i32 {
    dispatch(std::iter::once("setft").chain(args.iter().copied()))
}

#[test]
fn version_exits_cleanly() {
    assert_eq!(run(&["--version"]), 0);
    assert_eq!(run(&["--help"]), 0);
}

#[test]
fn unknown_flags_and_bad_input_exit_2() {
    assert_eq!(run(&["ssft", "--model", "9000"]), 2);
    let dir = temp_dir();
    let out = dir.join("out.json");
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "7",
            "--oracle",
            "cut:path3",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--oracle",
            "nope:xyz",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--oracle",
            "missing.json",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn ssft_on_path_cut_writes_empty_spectrum() {
    let dir = temp_dir();
    let out = dir.join("r.json");
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--oracle",
            "cut:path3",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let ft = io::read_sparse(&out).unwrap();
    assert!(ft.is_empty());
    assert_eq!(ft.n(), 3);
}

#[test]
fn filtered_ssft_recovers_the_cut_spectrum() {
    let dir = temp_dir();
    let out = dir.join("r.json");
    let report = dir.join("report.json");
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--plus",
            "--seed",
            "7",
            "--oracle",
            "cut:path3",
            "--out",
            out.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ]),
        0
    );
    let ft = io::read_sparse(&out).unwrap();
    // Spectrum of the unit path cut in dense order: (0,1,2,-2,1,0,-2,0).
    let golden = [0.0, 1.0, 2.0, -2.0, 1.0, 0.0, -2.0, 0.0];
    assert_eq!(ft.len(), golden.iter().filter(|v| **v != 0.0).count());
    for (rank, want) in golden.iter().enumerate() {
        let mask = setft::set::SubsetMask::from_lex_rank(3, rank);
        assert!((ft.coefficient(&mask) - want).abs() <= 1e-9);
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report["seed_used"], 7);
    assert!(report["queries_used"].as_u64().unwrap() > 0);
}

#[test]
fn transform_cli_matches_all_cover_one_spectrum() {
    let dir = temp_dir();
    let input = dir.join("f.csv");
    let output = dir.join("fhat.csv");
    let n = 3;
    let mut oracle = coverage_oracle(&CoverageSpec::all_cover_one(n));
    let dense = DenseSetFunction::from_oracle(&mut oracle).unwrap();
    io::write_dense(&input, &dense).unwrap();
    assert_eq!(
        run(&[
            "transform",
            "--model",
            "5",
            "--direction",
            "fwd",
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ]),
        0
    );
    let spectrum = io::read_dense(&output).unwrap();
    assert_eq!(spectrum.value_at(0), 7.0);
    for rank in 1..8 {
        assert_eq!(spectrum.value_at(rank), -1.0);
    }

    // Inverse round trip through the binary format.
    let back = dir.join("back.bin");
    assert_eq!(
        run(&[
            "transform",
            "--model",
            "5",
            "--direction",
            "inv",
            "--in",
            output.to_str().unwrap(),
            "--out",
            back.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(io::read_dense(&back).unwrap(), dense);
}

#[test]
fn generate_learn_eval_round_trip_random_sparse() {
    let dir = temp_dir();
    let spec = dir.join("function.json");
    let learnt = dir.join("learnt.json");
    let estimate = dir.join("error.json");
    assert_eq!(
        run(&[
            "generate",
            "random-sparse",
            "--n",
            "10",
            "--k",
            "8",
            "--model",
            "4",
            "--seed",
            "5",
            "--out",
            spec.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--oracle",
            spec.to_str().unwrap(),
            "--out",
            learnt.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run(&[
            "eval",
            "--oracle",
            spec.to_str().unwrap(),
            "--estimate",
            learnt.to_str().unwrap(),
            "--samples",
            "20000",
            "--seed",
            "1",
            "--out",
            estimate.to_str().unwrap(),
        ]),
        0
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&estimate).unwrap()).unwrap();
    assert!(value["relative_error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(value["num_samples"], 20000);

    // The spec string with the same seed reproduces the same function.
    let estimate2 = dir.join("error2.json");
    assert_eq!(
        run(&[
            "eval",
            "--oracle",
            "random-sparse:n=10,k=8,model=4,seed=5",
            "--estimate",
            learnt.to_str().unwrap(),
            "--samples",
            "20000",
            "--seed",
            "1",
            "--out",
            estimate2.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        std::fs::read(&estimate).unwrap(),
        std::fs::read(&estimate2).unwrap()
    );
}

#[test]
fn generate_learn_eval_round_trip_facility_with_pin() {
    let dir = temp_dir();
    let spec = dir.join("facility.json");
    let learnt = dir.join("learnt.json");
    let estimate = dir.join("error.json");
    assert_eq!(
        run(&[
            "generate",
            "facility",
            "--n",
            "16",
            "--rows",
            "6",
            "--seed",
            "9",
            "--out",
            spec.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--pin-empty",
            "--oracle",
            spec.to_str().unwrap(),
            "--out",
            learnt.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run(&[
            "eval",
            "--oracle",
            spec.to_str().unwrap(),
            "--estimate",
            learnt.to_str().unwrap(),
            "--samples",
            "20000",
            "--out",
            estimate.to_str().unwrap(),
        ]),
        0
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&estimate).unwrap()).unwrap();
    assert!(value["relative_error"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn identical_flags_produce_identical_bytes() {
    let dir = temp_dir();
    let out_a = dir.join("a.json");
    let out_b = dir.join("b.json");
    for out in [&out_a, &out_b] {
        assert_eq!(
            run(&[
                "ssft",
                "--model",
                "5",
                "--plus",
                "--seed",
                "42",
                "--oracle",
                "random-sparse:n=9,k=6,model=5,seed=2",
                "--out",
                out.to_str().unwrap(),
            ]),
            0
        );
    }
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
}

#[test]
fn maximize_oracle_and_surrogate() {
    let dir = temp_dir();
    let selection = dir.join("set.json");
    assert_eq!(
        run(&[
            "maximize",
            "--oracle",
            "infogain:n=8,seed=3",
            "--d",
            "3",
            "--out",
            selection.to_str().unwrap(),
        ]),
        0
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&selection).unwrap()).unwrap();
    assert_eq!(value["set"].as_array().unwrap().len(), 3);
    assert!(value["value"].as_f64().unwrap() > 0.0);

    // Surrogate route: learn the cut spectrum, maximize it.
    let learnt = dir.join("cut.json");
    assert_eq!(
        run(&[
            "ssft",
            "--model",
            "4",
            "--plus",
            "--seed",
            "1",
            "--oracle",
            "cut:star6",
            "--out",
            learnt.to_str().unwrap(),
        ]),
        0
    );
    let selection2 = dir.join("set2.json");
    assert_eq!(
        run(&[
            "maximize",
            "--surrogate",
            learnt.to_str().unwrap(),
            "--d",
            "1",
            "--out",
            selection2.to_str().unwrap(),
        ]),
        0
    );
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&selection2).unwrap()).unwrap();
    // The best single cut vertex of a star is its center.
    assert_eq!(value["set"], serde_json::json!([1]));
    assert_eq!(value["value"].as_f64().unwrap(), 5.0);

    // Exactly one of --oracle / --surrogate.
    assert_eq!(run(&["maximize", "--d", "2"]), 2);
    assert_eq!(
        run(&[
            "maximize",
            "--oracle",
            "cut:path4",
            "--surrogate",
            learnt.to_str().unwrap(),
            "--d",
            "2"
        ]),
        2
    );
}

#[test]
fn bench_writes_csv_and_json() {
    let dir = temp_dir();
    let csv = dir.join("rows.csv");
    assert_eq!(
        run(&[
            "bench",
            "--oracle",
            "random-sparse:n=10,k=8",
            "--learner",
            "ssft",
            "--reps",
            "3",
            "--samples",
            "5000",
            "--seed",
            "11",
            "--out",
            csv.to_str().unwrap(),
        ]),
        0
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "rep,seed,queries,time_ms,k,rel_error,greedy_true,greedy_surrogate,greedy_random"
    );
    assert_eq!(lines.count(), 3);

    // Random sparse instances are planted in the model being learnt.
    for model in ["3", "5"] {
        let path = dir.join(format!("rows-m{model}.csv"));
        assert_eq!(
            run(&[
                "bench",
                "--oracle",
                "random-sparse:n=8,k=4",
                "--model",
                model,
                "--learner",
                "ssft",
                "--reps",
                "2",
                "--samples",
                "2000",
                "--seed",
                "13",
                "--out",
                path.to_str().unwrap(),
            ]),
            0
        );
        for line in std::fs::read_to_string(&path).unwrap().lines().skip(1) {
            let rel_error: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
            assert!(rel_error <= 1e-6, "model {model}: {line}");
        }
    }

    let json = dir.join("rows.json");
    assert_eq!(
        run(&[
            "bench",
            "--oracle",
            "infogain:n=7",
            "--learner",
            "ssft-plus",
            "--reps",
            "2",
            "--samples",
            "2000",
            "--d",
            "2",
            "--eps",
            "0.001",
            "--seed",
            "4",
            "--out",
            json.to_str().unwrap(),
            "--format",
            "json",
        ]),
        0
    );
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert!(rows[0]["greedy_true"].as_f64().is_some());
    assert!(rows[0]["queries"].as_u64().unwrap() > 0);
}

#[test]
fn generated_specs_reload_through_every_family() {
    let dir = temp_dir();
    let cases: &[(&str, &[&str])] = &[
        ("coverage", &["--n", "6", "--universe", "9"]),
        ("preference", &["--n", "6", "--l", "2", "--a", "1"]),
        ("facility", &["--n", "6", "--rows", "3"]),
        ("cut", &["--n", "6", "--topology", "star"]),
        ("random-sparse", &["--n", "6", "--k", "4"]),
        ("infogain", &["--n", "6"]),
    ];
    for (family, extra) in cases {
        let path = dir.join(format!("{family}.json"));
        let mut args = vec!["generate", family];
        args.extend_from_slice(extra);
        if *family != "cut" {
            args.extend_from_slice(&["--seed", "8"]);
        }
        args.extend_from_slice(&["--out", path.to_str().unwrap()]);
        assert_eq!(run(&args), 0, "generate {family}");
        let mut oracle = io::read_generator(&path).unwrap().build_oracle().unwrap();
        assert_eq!(oracle.n(), 6, "{family}");
        let learnt = dir.join(format!("{family}-learnt.json"));
        assert_eq!(
            run(&[
                "ssft",
                "--model",
                "4",
                "--plus",
                "--seed",
                "2",
                "--eps",
                "0.001",
                "--oracle",
                path.to_str().unwrap(),
                "--out",
                learnt.to_str().unwrap(),
            ]),
            0,
            "ssft over {family}"
        );
        let ft = io::read_sparse(&learnt).unwrap();
        assert_eq!(ft.model(), Model::M4);
        let _ = oracle.eval(&setft::set::SubsetMask::empty(6));
    }
}
