//! Contract tests for the public surface: serialization, id parsing, the
//! incremental runner, report determinism, sweeps, and the CLI binary.

use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use favsched::algorithms::{run, AlgoParams, AlgorithmSpec, LiveRun};
use favsched::harness::{
    cli_run, random_general, render, render_sweep, sweep, AlgoEntry, ExperimentSpec,
    InstanceSource, OracleMode, OutputFormat, RandomSpec, SweepParam,
};
use favsched::oracle::{exact_opt, greedy_bound};
use favsched::value::{rat, rat_int, Rat};
use favsched::{Instance, SymmetricInstance};

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("favsched-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn instance_json_survives_a_round_trip() {
    let text = r#"{"m":3,"jobs":[
        {"p":"2/3","favorites":[1,3],"others":{"2":2}},
        {"p":1,"favorites":[2],"others":{"1":"3/2","3":4}}
    ]}"#;
    let instance = Instance::from_json_str(text).unwrap();
    assert_eq!(instance.m(), 3);
    assert_eq!(instance.f(), 1);
    assert_eq!(instance.proc_time(1, 2).unwrap(), rat_int(2));
    let reparsed = Instance::from_json_value(&instance.to_json_value()).unwrap();
    assert_eq!(reparsed, instance);
}

#[test]
fn two_group_json_maps_onto_the_general_model() {
    let text = r#"{"f":2,"s":"3/2","jobs":[
        {"p":1,"group":1},{"p":"1/2","group":2}
    ]}"#;
    let sym = SymmetricInstance::from_json_value(&serde_json::from_str(text).unwrap()).unwrap();
    let instance = sym.to_instance();
    assert_eq!(instance.m(), 4);
    assert_eq!(instance.f(), 2);
    let info = instance.symmetric_info().unwrap();
    assert_eq!(info.s, rat(3, 2));
    // Group 1 is machines 1..=2; crossing over costs the factor s.
    assert_eq!(instance.proc_time(1, 1).unwrap(), rat_int(1));
    assert_eq!(instance.proc_time(1, 3).unwrap(), rat(3, 2));
    assert_eq!(instance.proc_time(2, 3).unwrap(), rat(1, 2));
    assert_eq!(instance.proc_time(2, 1).unwrap(), rat(3, 4));
}

#[test]
fn algorithm_ids_parse_and_render_back() {
    let defaults = AlgoParams::default();
    for id in ["greedy", "greedy-favorite", "ggf"] {
        let spec = AlgorithmSpec::parse(id, &defaults).unwrap();
        assert_eq!(spec.to_string(), id);
    }
    let nested = AlgorithmSpec::parse("rescale:3/2:rescale:2:greedy", &defaults).unwrap();
    assert_eq!(nested.to_string(), "rescale:3/2:rescale:2:greedy");
    let doubling = AlgorithmSpec::parse("assign-u-doubling", &defaults).unwrap();
    assert_eq!(doubling.to_string(), "assign-u-doubling(gamma=2)");
    assert!(AlgorithmSpec::parse("quantum-greedy", &defaults).is_err());
}

#[test]
fn assign_u_requires_an_estimate_up_front() {
    let defaults = AlgoParams::default();
    let err = AlgorithmSpec::parse("assign-u", &defaults).unwrap_err();
    assert!(err.to_string().contains("estimate"), "got: {err}");
    let with_estimate = AlgoParams {
        lambda: Some(rat_int(1)),
        ..AlgoParams::default()
    };
    assert!(AlgorithmSpec::parse("assign-u", &with_estimate).is_ok());
}

#[test]
fn ggf_matches_its_component_rules_across_the_threshold() {
    let defaults = AlgoParams::default();
    let ggf = AlgorithmSpec::parse("ggf", &defaults).unwrap();
    let greedy = AlgorithmSpec::parse("greedy", &defaults).unwrap();
    let favorite = AlgorithmSpec::parse("greedy-favorite", &defaults).unwrap();
    // Below the cubic root (~1.4812) the combined rule plays greedy; above
    // it, the favorite-only rule. Checked extensionally on sampled inputs.
    for (s, twin) in [(rat(6, 5), &greedy), (rat_int(2), &favorite)] {
        for f in 1..=3usize {
            let spec = RandomSpec::symmetric(f, s.clone(), 8).unwrap();
            let mut rng = RandomSpec::rng(11 + f as u64);
            for _ in 0..20 {
                let instance = spec.sample(&mut rng).unwrap();
                let a = run(&ggf, &instance).unwrap();
                let b = run(twin, &instance).unwrap();
                assert_eq!(a.assignment(), b.assignment(), "s={s} f={f}");
            }
        }
    }
}

#[test]
fn incremental_feeding_matches_the_batch_run() {
    let defaults = AlgoParams::default();
    let specs = [
        AlgorithmSpec::parse("greedy", &defaults).unwrap(),
        AlgorithmSpec::parse("greedy-favorite", &defaults).unwrap(),
        AlgorithmSpec::parse("rescale:2:greedy", &defaults).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for round in 0..25 {
        let instance = random_general(&mut rng, 5, 12).unwrap();
        for spec in &specs {
            let batch = run(spec, &instance).unwrap();
            let mut live = LiveRun::new(
                spec,
                instance.m(),
                instance.f(),
                instance.symmetric_info().cloned(),
            )
            .unwrap();
            for job in instance.jobs() {
                live.feed(job.clone()).unwrap();
            }
            assert_eq!(&live.makespan(), batch.makespan(), "round {round}");
            let (rebuilt, schedule) = live.finish().unwrap();
            assert_eq!(rebuilt.jobs(), instance.jobs());
            assert_eq!(schedule.assignment(), batch.assignment());
        }
    }
}

#[test]
fn reports_are_byte_identical_for_a_fixed_seed() {
    let spec = |seed| ExperimentSpec {
        algorithms: vec![
            AlgoEntry::new("greedy", AlgoParams::default()),
            AlgoEntry::new("ggf", AlgoParams::default()),
        ],
        source: InstanceSource::Random(RandomSpec::symmetric(2, rat(3, 2), 6).unwrap()),
        oracle: OracleMode::Exact,
        repetitions: 4,
        seed,
        format: OutputFormat::Json,
    };
    let first = render(&cli_run(&spec(9)).unwrap(), OutputFormat::Json).unwrap();
    let second = render(&cli_run(&spec(9)).unwrap(), OutputFormat::Json).unwrap();
    assert_eq!(first, second);
    let other = render(&cli_run(&spec(10)).unwrap(), OutputFormat::Json).unwrap();
    assert_ne!(first, other);
}

#[test]
fn an_empty_job_list_reports_ratio_one() {
    let path = temp_file("empty.json", r#"{"m":3,"jobs":[]}"#);
    let spec = ExperimentSpec {
        algorithms: vec![AlgoEntry::new("greedy", AlgoParams::default())],
        source: InstanceSource::File(path.clone()),
        oracle: OracleMode::Exact,
        repetitions: 1,
        seed: 0,
        format: OutputFormat::Csv,
    };
    let rows = cli_run(&spec).unwrap();
    std::fs::remove_file(path).ok();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].online, rat_int(0));
    assert_eq!(rows[0].opt, Some(rat_int(0)));
    assert_eq!(rows[0].ratio, Some(rat_int(1)));
}

#[test]
fn sweeping_f_tracks_the_closed_form_bound() {
    let base = ExperimentSpec {
        algorithms: vec![AlgoEntry::new("greedy", AlgoParams::default())],
        source: InstanceSource::Random(RandomSpec::new(8, 1, 8).unwrap()),
        oracle: OracleMode::LbOnly,
        repetitions: 1,
        seed: 3,
        format: OutputFormat::Csv,
    };
    let grid: Vec<Rat> = [1, 2, 4, 8].map(rat_int).to_vec();
    let points = sweep(SweepParam::F, &grid, &base).unwrap();
    let text = render_sweep(SweepParam::F, &points, OutputFormat::Csv).unwrap();
    let bounds: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(12).unwrap())
        .collect();
    assert_eq!(bounds, ["8", "9/2", "11/4", "15/8"]);
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_favsched"))
}

#[test]
fn cli_run_reports_the_forcing_construction() {
    let output = cli()
        .args(["run", "--gen", "greedy-lb", "--m", "4", "--f", "2", "--algo", "greedy"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let mut lines = stdout.lines();
    assert!(lines.next().unwrap().starts_with("algorithm,instance,"));
    let row = lines.next().unwrap();
    assert!(row.contains("5/2,1,exact,5/2,5/2,yes"), "row: {row}");
}

#[test]
fn cli_rejects_bad_configuration_cleanly() {
    let cases: &[&[&str]] = &[
        &["verify", "--gamma", "1.0"],
        &["run", "--gen", "nonsense", "--algo", "greedy"],
        &["run", "--algo", "greedy"],
        &["run", "--gen", "random", "--m", "4", "--f", "2", "--algo", "greedy"],
        &["sweep", "--gen", "random", "--m", "4", "--f", "2", "--n", "5",
          "--algo", "greedy", "--param", "gamma", "--range", "1:3:1"],
    ];
    for args in cases {
        let output = cli().args(*args).output().unwrap();
        assert_eq!(output.status.code(), Some(2), "args: {args:?}");
        let stderr = String::from_utf8(output.stderr).unwrap();
        assert!(stderr.starts_with("error:"), "stderr: {stderr}");
    }
}

#[test]
fn cli_oracle_reports_optimum_and_bounds() {
    let path = temp_file(
        "oracle.json",
        r#"{"m":2,"jobs":[{"p":1,"favorites":[1],"others":{"2":"3/2"}}]}"#,
    );
    let output = cli()
        .args(["oracle", "--instance"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(path).ok();
    assert!(output.status.success());
    let body: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(body["opt"], "1");
    assert_eq!(body["witness"], serde_json::json!([1]));
    assert_eq!(body["greedy_bound"], "2");
    assert_eq!(body["lb_general"], "1");
}

#[test]
fn cli_adversary_emits_a_forcing_summary() {
    let output = cli()
        .args(["adversary", "two-machine", "--algo", "greedy", "--s", "2", "--full"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let body: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(body["bound"], "3/2");
    assert_eq!(body["guaranteed"], true);
    assert!(body["instance"]["jobs"].is_array());
    let forced: f64 = body["forced_ratio_f64"].as_f64().unwrap();
    assert!(forced >= 1.5 - 1e-9, "forced {forced}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_never_exceeds_its_guarantee(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let instance = random_general(&mut rng, 4, 6).unwrap();
        let spec = AlgorithmSpec::parse("greedy", &AlgoParams::default()).unwrap();
        let schedule = run(&spec, &instance).unwrap();
        let best = exact_opt(&instance, None).unwrap();
        let cap = greedy_bound(instance.m(), instance.f()) * &best.opt;
        prop_assert!(schedule.makespan() <= &cap);
    }

    #[test]
    fn schedules_keep_consistent_books(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let instance = random_general(&mut rng, 5, 10).unwrap();
        let spec = AlgorithmSpec::parse("greedy", &AlgoParams::default()).unwrap();
        let schedule = run(&spec, &instance).unwrap();
        prop_assert_eq!(schedule.assignment().len(), instance.n());
        let mut total = rat_int(0);
        for (job, &machine) in instance.jobs().iter().zip(schedule.assignment()) {
            prop_assert!((1..=instance.m()).contains(&machine));
            total += job.time_on(machine);
        }
        prop_assert_eq!(&total, &schedule.loads().total());
        prop_assert_eq!(&schedule.loads().max(), schedule.makespan());
        let reparsed = Instance::from_json_value(&instance.to_json_value()).unwrap();
        prop_assert_eq!(reparsed, instance);
    }
}
