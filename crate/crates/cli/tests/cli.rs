use std::path::Path;
use std::process::{Command, Output};

use irs_noma::experiments::read_csv;

const SMALL: &str = r#"
deployment = "case1"
seed = 11
trials = 6

[irs]
elements = 12
subsurfaces = 3
phase_levels = 4

[sweep]
values = ["0 bps/Hz", "1 bps/Hz", "2.5 bps/Hz"]
"#;

fn irs_noma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irs-noma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let o = irs_noma(&["sweep", "--config", &config, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(out.join("sweep-common-rate.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let rows = read_csv(outputs[0].as_slice()).unwrap();
    assert_eq!(rows.len(), 3 * 3 * 4);
    assert!(rows.iter().all(|r| r.seed == 11 && r.trials == 6));
    assert_eq!(rows[0].mean_power_dbm, f64::NEG_INFINITY);
}

#[test]
fn overrides_change_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let run = |extra: &[&str]| {
        let out = dir.path().join(extra.join("_"));
        let mut args = vec!["sweep", "--config", &config, "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = irs_noma(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read_to_string(out.join("sweep-common-rate.csv")).unwrap()
    };
    let base = run(&["--methods", "la-ao"]);
    assert!(!base.contains(",brute,"));
    assert!(base.contains(",la-ao,"));
    let reseeded = run(&["--methods", "la-ao", "--seed", "12"]);
    assert_ne!(base, reseeded);
    let case2 = run(&["--methods", "la-ao", "--case", "2", "--trials", "4"]);
    assert!(case2.lines().nth(1).unwrap().ends_with(",4,11"));
}

#[test]
fn split_rate_sweep_uses_its_grid() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    let o = irs_noma(&[
        "sweep",
        "--config",
        &config,
        "--out",
        out.to_str().unwrap(),
        "--sweep",
        "split-rate",
        "--methods",
        "la-ao",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(std::fs::File::open(out.join("sweep-split-rate.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 7 * 3 * 2);
}

#[test]
fn validate_passes_on_seeded_instances() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "deployment = \"case1\"\ntrials = 100\n[sweep]\nvalues = [\"1 bps/Hz\", \"3 bps/Hz\"]\n",
    );
    let out = dir.path().join("out");
    let o = irs_noma(&[
        "validate",
        "--config",
        &config,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("PASS points=2 trials=100"), "{stdout}");
    let report = std::fs::read_to_string(out.join("validation.txt")).unwrap();
    assert_eq!(report.matches("PASS checked=100").count(), 2);
}

#[test]
fn solve_one_prints_all_schemes() {
    let o = irs_noma(&[
        "solve-one",
        "--case",
        "2",
        "--trial",
        "3",
        "--methods",
        "la-ao,rps-ao",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("trial 3 seed 2020"));
    for needle in ["la-ao   noma", "rps-ao  tdma", "no-irs  fdma", "slot1"] {
        assert!(stdout.contains(needle), "missing {needle}: {stdout}");
    }
}

#[test]
fn misuse_exits_2() {
    let o = irs_noma(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = irs_noma(&["sweep", "--methods", "gradient"]);
    assert_eq!(o.status.code(), Some(2));
    let o = irs_noma(&["sweep", "--case", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_errors_exit_3_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "deployment = \"case1\"\n[irs]\nelements = 100\nsubsurfaces = 7\n",
    );
    let o = irs_noma(&[
        "sweep",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("irs"), "{err}");

    let config = write_config(
        dir.path(),
        "deployment = \"case1\"\n[channel]\nnoise = \"-80 dB\"\n",
    );
    let o = irs_noma(&["validate", "--config", &config]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("channel.noise"));
}

#[test]
fn solver_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "deployment = \"case1\"\ntrials = 2\n[solver]\nenumeration_budget = 100\n",
    );
    let o = irs_noma(&[
        "validate",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("enumeration budget"));
}

#[test]
fn io_errors_exit_6() {
    let dir = tempfile::tempdir().unwrap();
    let o = irs_noma(&[
        "sweep",
        "--config",
        dir.path().join("missing.toml").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(6));

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let config = write_config(dir.path(), SMALL);
    let o = irs_noma(&[
        "sweep",
        "--config",
        &config,
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(6));
}
