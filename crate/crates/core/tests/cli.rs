use std::path::Path;
use std::process::{Command, Output};

use lamina_core::report::{SearchExport, TrajectoryExport};

fn lamina(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamina"))
        .args(args)
        .env_remove("LAMINA_CONFIG")
        .output()
        .unwrap()
}

fn lamina_env(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamina"))
        .args(args)
        .env("LAMINA_CONFIG", config)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let unknown_key = write("unknown.toml", "law = \"drift\"\ncolour = 3\n");
    let strict = write(
        "strict.toml",
        "[tolerances]\nquadrature = 1e-15\n[integrator]\nquadrature_order = 16\n",
    );
    let flipped = write(
        "flipped.toml",
        "[integrator]\nsigns = \"positive-third\"\nhorizon = 5.0\n",
    );
    let missing = dir.path().join("missing.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["frobnicate"], 2),
        (vec!["--law", "drift", "--domain", "5", "--format", "xml", "search"], 3),
        (vec!["--config", &unknown_key, "--domain", "5", "search"], 3),
        (vec!["--law", "drift", "search"], 3),
        (vec!["spectrum", "--exponent", "-5/3", "--wavenumbers=-1,2"], 4),
        (vec!["simulate", "--triad", "1,2;3"], 5),
        (vec!["simulate", "--triad", "1,2;1,3;1,4"], 5),
        (vec!["--law", "float:linear:1:scalar", "--domain", "5", "classes"], 6),
        (vec!["--law", "drift", "--domain", "1000000", "search"], 7),
        (vec!["--config", &strict, "simulate", "--triad", "demo"], 8),
        (vec!["--config", &flipped, "simulate", "--triad", "demo"], 9),
        (
            vec![
                "spectrum",
                "--exponent",
                "-3",
                "--holes-from",
                missing.to_str().unwrap(),
            ],
            11,
        ),
        (vec!["--law", "drift", "--domain", "5", "--format", "dot", "classes"], 3),
    ];
    for (args, expected) in cases {
        let out = lamina(&args);
        assert_eq!(
            code(&out),
            expected,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if expected != 0 {
            assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
        }
    }
}

#[test]
fn rossby_search_csv_lists_the_demo_triad() {
    let out = lamina(&[
        "--law", "rossby", "--domain", "14", "--format", "csv", "search", "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("m1,n1,m2,n2,m3,n3,m4,n4,signs,certificate,classes,tags"));
    assert!(
        text.lines()
            .any(|l| l.starts_with("4,12,5,14,9,13,,,++-,rational-identity")),
        "{text}"
    );
}

#[test]
fn search_export_feeds_graph_simulate_and_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("rossby.json");
    let export = export.to_str().unwrap();
    assert_eq!(
        code(&lamina(&[
            "--law", "rossby", "--domain", "14", "--out", export, "search"
        ])),
        0
    );
    let parsed = SearchExport::parse(&std::fs::read_to_string(export).unwrap()).unwrap();
    let index = parsed
        .solutions
        .iter()
        .position(|s| s.modes == vec![[4, 12], [5, 14], [9, 13]])
        .unwrap();

    let graph = lamina(&["graph", "--from", export]);
    assert_eq!(code(&graph), 0);
    assert!(stdout(&graph).starts_with("graph resonances {"));

    let sim = lamina(&[
        "simulate",
        "--from",
        export,
        "--index",
        &index.to_string(),
        "--horizon",
        "1",
        "--sample-every",
        "100",
    ]);
    assert_eq!(code(&sim), 0, "{}", String::from_utf8_lossy(&sim.stderr));
    let traj: TrajectoryExport = serde_json::from_str(&stdout(&sim)).unwrap();
    assert_eq!(traj.triad.unwrap().modes, vec![[4, 12], [5, 14], [9, 13]]);

    let spec = lamina(&[
        "--law",
        "rossby",
        "--domain",
        "14",
        "--format",
        "csv",
        "spectrum",
        "--exponent",
        "-3",
        "--holes-from",
        export,
    ]);
    assert_eq!(code(&spec), 0);
    let text = stdout(&spec);
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().nth(1).unwrap().ends_with(",false"));

    let mismatch = lamina(&[
        "--law",
        "drift",
        "--domain",
        "14",
        "spectrum",
        "--exponent",
        "-3",
        "--holes-from",
        export,
    ]);
    assert_eq!(code(&mismatch), 11);
}

#[test]
fn capillary_search_is_empty_and_has_no_holes() {
    let out = lamina(&["--law", "capillary", "--domain", "1000", "search"]);
    assert_eq!(code(&out), 0);
    let export = SearchExport::parse(&stdout(&out)).unwrap();
    assert_eq!(export.count, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cap.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let spec = lamina(&[
        "--law",
        "capillary",
        "--domain",
        "1000",
        "--format",
        "csv",
        "spectrum",
        "--exponent",
        "-7/4",
        "--holes-from",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&spec), 0);
    assert!(stdout(&spec).lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn config_file_and_environment_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "law = \"drift\"\ndomain = 6\nformat = \"csv\"\n\n[condition]\narity = 4\n",
    )
    .unwrap();
    let from_env = lamina_env(&["search"], &cfg);
    assert_eq!(code(&from_env), 0);
    let from_flag = lamina(&["--config", cfg.to_str().unwrap(), "search"]);
    assert_eq!(stdout(&from_env), stdout(&from_flag));
    let explicit = lamina(&[
        "--law", "drift", "--arity", "4", "--domain", "6", "--format", "csv", "search",
    ]);
    assert_eq!(stdout(&from_env), stdout(&explicit));
    // flags override the file
    let json = lamina_env(&["--format", "json", "search"], &cfg);
    assert!(SearchExport::parse(&stdout(&json)).is_ok());
    let smaller = lamina_env(&["--domain", "4", "search"], &cfg);
    assert!(stdout(&smaller).lines().count() < stdout(&from_env).lines().count());
    assert!(stdout(&smaller).lines().nth(1).unwrap().contains("++--"));
    let triads = lamina_env(&["--law", "rossby", "--signs", "++-", "--domain", "14", "search"], &cfg);
    assert_eq!(code(&triads), 0);
    assert!(stdout(&triads).lines().nth(1).unwrap().contains(",,,++-,"));
}

#[test]
fn simulate_outputs() {
    let zero = lamina(&[
        "--format",
        "csv",
        "simulate",
        "--triad",
        "demo",
        "--amplitudes",
        "0,0,0",
        "--horizon",
        "1",
    ]);
    assert_eq!(code(&zero), 0);
    let text = stdout(&zero);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    for row in reader.records() {
        let row = row.unwrap();
        assert!((1..=9).all(|i| row[i].parse::<f64>().unwrap() == 0.0));
    }

    let demo = lamina(&["simulate", "--triad", "demo", "--amplitudes", "0.1,0.1:0.05,-0.1"]);
    assert_eq!(code(&demo), 0);
    let traj: TrajectoryExport = serde_json::from_str(&stdout(&demo)).unwrap();
    assert!(traj.max_relative_drift.iter().all(|d| d.0 < 1e-8));
    assert!((traj.samples.last().unwrap().t.0 - 100.0).abs() < 1e-9);
    assert_eq!(traj.samples[0].a[1][1].0, 0.05);
}

#[test]
fn spectrum_from_explicit_wavenumbers() {
    let out = lamina(&[
        "--format",
        "csv",
        "spectrum",
        "--exponent",
        "-3",
        "--wavenumbers",
        "3,1,2",
    ]);
    assert_eq!(code(&out), 0);
    let values: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values, vec![1.0, 0.125, 1.0 / 27.0]);
}

#[test]
fn classes_table_for_drift() {
    let out = lamina(&["--law", "drift", "--domain", "20", "classes"]);
    assert_eq!(code(&out), 0);
    let table: lamina_core::report::ClassTable = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(table.class(5).is_some() && table.class(3).is_none());
}
