use std::fs;

use schubert_core::harness::{
    load_checkpoint, run_experiment, run_experiment_with, sidecar_path, ExperimentConfig,
    RunControl,
};

fn config(json: &str) -> ExperimentConfig {
    let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
    cfg.validate().unwrap();
    cfg
}

fn fl234() -> ExperimentConfig {
    config(
        r#"{"flag_type": "2,3;4",
            "schubert_data": [{"permutation": "1324", "count": 3}, {"permutation": "1243", "count": 2}],
            "expected_degree": 2, "iterations": 12, "seed": 2024, "sampling_range": 50}"#,
    )
}

fn fl235_small() -> ExperimentConfig {
    config(
        r#"{"flag_type": "2,3;5",
            "schubert_data": [{"permutation": "13245", "count": 4}, {"permutation": "12435", "count": 4}],
            "expected_degree": 12, "iterations": 2, "seed": 9, "sampling_range": 40}"#,
    )
}

#[test]
fn repeated_runs_write_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, workers) in [1, 1, 3].into_iter().enumerate() {
        let mut cfg = fl234();
        cfg.worker_count = workers;
        cfg.output_path = Some(dir.path().join(format!("run{i}.csv")));
        run_experiment(&cfg).unwrap();
        outputs.push(fs::read(cfg.output_path.unwrap()).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn tables_are_conserved_and_parity_holds() {
    for cfg in [fl234(), fl235_small()] {
        let t = run_experiment(&cfg).unwrap();
        assert_eq!(t.rounds, cfg.iterations);
        assert!(t.is_conserved());
        assert!(t.parity_holds());
        assert_eq!(t.total_instances, cfg.iterations * t.rows.len() as u64);
        assert!(t.violations.is_empty(), "{:?}", t.violations);
    }
}

#[test]
fn resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let mut full = fl234();
    full.output_path = Some(dir.path().join("full.csv"));
    let expected = run_experiment(&full).unwrap();

    let mut cfg = fl234();
    let out = dir.path().join("part.csv");
    cfg.output_path = Some(out.clone());
    for stop in [1, 5, 6] {
        let t = run_experiment_with(
            &cfg,
            RunControl {
                resume: true,
                stop_after: Some(stop),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(t.rounds, stop);
        assert_eq!(load_checkpoint(&out).unwrap().next_round, stop);
    }
    // Resuming with more workers is allowed and changes nothing.
    cfg.worker_count = 4;
    let resumed = run_experiment_with(
        &cfg,
        RunControl {
            resume: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(resumed, expected);
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(dir.path().join("full.csv")).unwrap()
    );
}

#[test]
fn resume_rejects_a_different_problem() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = fl234();
    cfg.output_path = Some(dir.path().join("t.csv"));
    run_experiment_with(
        &cfg,
        RunControl {
            stop_after: Some(2),
            ..Default::default()
        },
    )
    .unwrap();
    cfg.seed += 1;
    let ctl = RunControl {
        resume: true,
        ..Default::default()
    };
    assert!(run_experiment_with(&cfg, ctl).is_err());
}

#[test]
fn corrupt_checkpoint_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = fl234();
    let out = dir.path().join("t.csv");
    cfg.output_path = Some(out.clone());
    fs::write(sidecar_path(&out), "{ truncated").unwrap();
    let ctl = RunControl {
        resume: true,
        ..Default::default()
    };
    assert!(run_experiment_with(&cfg, ctl).is_err());
}

#[test]
fn pooled_points_are_reproducible() {
    let mut cfg = fl234();
    cfg.point_pool_size = Some(7);
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.is_conserved());
}
