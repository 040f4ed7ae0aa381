use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rss-stl")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SCENARIO: &str = "x_init_ego = 2.0
y_init_ego = 0.0
theta_init_ego = 0.0
v_init_ego = 20.0
x_init_a1 = 30.0
y_init_a1 = -3.5
v_init_a1 = 10.0
y_a1 = -3.5
v_a1 = 15.0
x_init_a2 = 20.0
y_init_a2 = 3.5
v_init_a2 = 10.0
y_a2 = 0.0
v_a2 = 12.0
rng_seed = 7
";

#[test]
fn monitor_reports_robustness_and_verdict_through_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.csv"), "t,x\n0,1\n0.1,3\n0.2,2\n").unwrap();

    let ok = run(dir.path(), &["monitor", "x.csv", "-f", "G (x >= 0)"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("robustness: 1"), "{}", stdout(&ok));

    let bad = run(dir.path(), &["monitor", "x.csv", "-f", "G (x >= 10)", "--json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert_eq!(v["robustness"], "-9");
    assert_eq!(v["blamed"]["atom"], "x");

    let missing = run(dir.path(), &["monitor", "x.csv", "-f", "G (y >= 0)"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains('y'), "{}", stderr(&missing));
}

#[test]
fn simulate_writes_full_traces_and_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.toml"), SCENARIO).unwrap();
    let first = run(dir.path(), &["simulate", "s.toml", "--out", "a", "--plot"]);
    assert!(first.status.success(), "{}", stderr(&first));
    for f in ["world.csv", "lane.csv", "margins.csv"] {
        let text = fs::read_to_string(dir.path().join("a").join(f)).unwrap();
        assert_eq!(text.lines().count(), 1002, "{f}");
    }
    assert!(fs::read_to_string(dir.path().join("a/trajectories.svg")).unwrap().starts_with("<svg"));

    let second = run(dir.path(), &["simulate", "s.toml", "--out", "b"]);
    assert!(second.status.success());
    for f in ["world.csv", "lane.csv", "margins.csv"] {
        assert_eq!(fs::read(dir.path().join("a").join(f)).unwrap(), fs::read(dir.path().join("b").join(f)).unwrap());
    }
}

#[test]
fn simulate_rejects_an_out_of_range_heading() {
    let dir = tempfile::tempdir().unwrap();
    let text = SCENARIO.replace("theta_init_ego = 0.0", "theta_init_ego = 0.7853981633974483");
    fs::write(dir.path().join("s.toml"), text).unwrap();
    let o = run(dir.path(), &["simulate", "s.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("theta_init_ego"), "{}", stderr(&o));
}

#[test]
fn sample_then_classify_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["sample", "--n", "20", "--seed", "5", "--out", "r"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let results = fs::read_to_string(dir.path().join("r/results.csv")).unwrap();
    assert_eq!(results.lines().count(), 21);

    let c = run(dir.path(), &["classify", "--out", "r"]);
    assert!(c.status.success(), "{}", stderr(&c));
    let table: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r/classification.json")).unwrap()).unwrap();
    let (_, t) = table.as_object().unwrap().iter().next().unwrap();
    assert_eq!(t["records"].as_u64(), Some(20));

    let ok = run(dir.path(), &["report", "r"]);
    assert_eq!(ok.status.code(), Some(0), "{}{}", stdout(&ok), stderr(&ok));

    let duplicated = format!("{results}{}\n", results.lines().nth(1).unwrap());
    fs::write(dir.path().join("r/results.csv"), duplicated).unwrap();
    let changed = run(dir.path(), &["report", "r"]);
    assert_eq!(changed.status.code(), Some(2));
    assert!(stdout(&changed).contains("CHANGED"), "{}", stdout(&changed));
}

#[test]
fn falsify_finds_a_cas_violation() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["falsify", "--spec", "cas", "--iters", "30", "--seed", "3", "--out", "f"]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FOUND"));
    for f in ["results.csv", "warmup.csv", "best.toml", "report.json"] {
        assert!(dir.path().join("f").join(f).exists(), "{f}");
    }
    // the stored best scenario replays through simulate
    let s = run(dir.path(), &["simulate", "f/best.toml", "--out", "replay"]);
    assert!(s.status.success(), "{}", stderr(&s));
}

#[test]
fn unknown_config_keys_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.toml"), "[sim]\nfrobnicate = 1\n").unwrap();
    let o = run(dir.path(), &["--config", "c.toml", "sample", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("frobnicate"), "{}", stderr(&o));
}
