use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nipoly(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nipoly"))
        .args(args)
        .env("NIPOLY_OUT", out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read(path: PathBuf) -> String {
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&read(path)).expect("valid json")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    jsonschema::validator_for(&json(path)).expect("schema compiles")
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

fn error_record(o: &Output) -> Value {
    let line = String::from_utf8_lossy(&o.stderr);
    let record: Value = serde_json::from_str(line.trim()).expect("stderr holds one JSON record");
    assert_valid(&schema("error.schema.json"), &record);
    record
}

#[test]
fn szego_worked_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let o = nipoly(dir.path(), &["szego", "--z", "3,2", "--h", "-2,2", "--kmax", "40"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let summary = json(dir.path().join("szego.summary.json"));
    let c0 = summary["results"]["c0"].as_f64().unwrap();
    assert!((c0 - 2.2484).abs() < 5e-5, "c0 = {c0}");
    let csv = read(dir.path().join("szego.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,log_D_k[nats],log_D_k_over_k[nats],D_k_exp_minus_k_c0"));
    assert_eq!(lines.count(), 40);
    assert!(!csv.contains('\r'));
}

#[test]
fn reruns_are_byte_identical_and_outputs_match_schemas() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["polymer", "logz", "--n", "12", "--m", "10", "--k", "2", "--replicas", "6", "--seed", "3"];
    for dir in [&a, &b] {
        assert_eq!(code(&nipoly(dir.path(), &args)), 0);
    }
    let first = read(a.path().join("polymer-logz.csv"));
    assert_eq!(first, read(b.path().join("polymer-logz.csv")));
    assert!(first.starts_with("N,m,k,"));

    let manifest = json(a.path().join("polymer-logz.manifest.json"));
    assert_valid(&schema("manifest.schema.json"), &manifest);
    assert_valid(&schema("summary.schema.json"), &json(a.path().join("polymer-logz.summary.json")));
    for entry in manifest["outputs"].as_array().unwrap() {
        let bytes = std::fs::read(a.path().join(entry["file"].as_str().unwrap())).unwrap();
        assert_eq!(entry["bytes"].as_u64().unwrap() as usize, bytes.len());
    }
}

#[test]
fn json_tables_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&nipoly(dir.path(), &["shapes", "mp", "--c", "0.25", "--points", "8", "--format", "json"])), 0);
    let table = json(dir.path().join("shapes-mp.json"));
    assert_valid(&schema("table.schema.json"), &table);
    assert_eq!(table["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn schema_violations_exit_2_before_running() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["interface", "phi", "--n", "0"][..],
        &["shapes", "mp", "--c", "1.5"],
        &["free-energy", "--format", "xml"],
        &["szego", "--kmax", "3"],
        &["shapes", "sc", "--replicas", "5"],
    ] {
        let o = nipoly(dir.path(), args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert_eq!(error_record(&o)["error"]["kind"], "schema");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none(), "nothing written");
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = nipoly(dir.path(), &["szego", "--symbol", "0:1,1:1", "--kmax", "3"]);
    assert_eq!(code(&o), 3);
    assert_eq!(error_record(&o)["error"]["kind"], "numeric");
}

#[test]
fn resource_cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let o = nipoly(dir.path(), &["polymer", "enumerate", "--n", "8", "--m", "8", "--k", "3", "--cap", "10"]);
    assert_eq!(code(&o), 4);
    let o = nipoly(dir.path(), &["free-energy", "--n", "100000", "--replicas", "50"]);
    assert_eq!(code(&o), 4);
    assert_eq!(error_record(&o)["error"]["kind"], "resource-cap");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sweep\ncommand = shapes mp\nc = 0.5\npoints = 4\nformat = csv\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(code(&nipoly(dir.path(), &["shapes", "mp", "--config", cfg, "--points", "2"])), 0);
    let summary = json(dir.path().join("shapes-mp.summary.json"));
    assert_eq!(summary["params"]["c"], 0.5);
    assert_eq!(summary["params"]["points"], 2);

    let o = nipoly(dir.path(), &["shapes", "sc", "--config", cfg]);
    assert_eq!(code(&o), 2, "config for another command is rejected");
}

#[test]
fn out_flag_beats_environment() {
    let (env_dir, flag_dir) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let flag = flag_dir.path().to_str().unwrap();
    assert_eq!(code(&nipoly(env_dir.path(), &["shapes", "sc", "--points", "2", "--out", flag])), 0);
    assert!(flag_dir.path().join("shapes-sc.csv").exists());
    assert!(!env_dir.path().join("shapes-sc.csv").exists());
    assert_eq!(code(&nipoly(env_dir.path(), &["shapes", "sc", "--points", "2"])), 0);
    assert!(env_dir.path().join("shapes-sc.csv").exists());
}

#[test]
fn halted_run_resumes_to_identical_output() {
    let (full, resumed) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["free-energy", "--n", "16", "--replicas", "40", "--seed", "11", "--threads", "1"];
    assert_eq!(code(&nipoly(full.path(), &args)), 0);

    let mut halted = args.to_vec();
    halted.extend(["--halt-after", "8"]);
    let o = nipoly(resumed.path(), &halted);
    assert_eq!(code(&o), 6);
    assert!(resumed.path().join("free-energy.checkpoint").exists());
    let o = nipoly(resumed.path(), &args);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resuming"));
    assert!(!resumed.path().join("free-energy.checkpoint").exists());
    for file in ["free-energy.csv", "free-energy-replicas.csv"] {
        assert_eq!(read(full.path().join(file)), read(resumed.path().join(file)), "{file}");
    }
}

#[test]
fn checkpoint_from_other_config_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["free-energy", "--n", "8", "--replicas", "20", "--threads", "1"];
    let mut halted = base.to_vec();
    halted.extend(["--seed", "1", "--halt-after", "4"]);
    assert_eq!(code(&nipoly(dir.path(), &halted)), 6);
    let mut other = base.to_vec();
    other.extend(["--seed", "2"]);
    let o = nipoly(dir.path(), &other);
    assert_eq!(code(&o), 0);
    assert!(!String::from_utf8_lossy(&o.stderr).contains("resuming"));
    let fresh = tempfile::tempdir().unwrap();
    assert_eq!(code(&nipoly(fresh.path(), &other)), 0);
    assert_eq!(read(dir.path().join("free-energy.csv")), read(fresh.path().join("free-energy.csv")));
}

#[test]
fn selftest_passes_and_catches_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let o = nipoly(dir.path(), &["selftest"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{stdout}");
    assert!(stdout.lines().all(|l| l.contains("PASS")));
    assert!(stdout.lines().count() >= 10);

    let o = nipoly(dir.path(), &["selftest", "--inject-fault", "digamma"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 1);
    let line = stdout.lines().find(|l| l.contains("criterion 17")).expect("criterion 17 runs");
    assert!(line.contains("FAIL") && line.contains("digamma recurrence"), "{line}");
}
