use std::path::Path;
use std::process::{Command, Output};

fn nlcs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlcs"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn invalid_flags_fail_with_the_flag_named() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlcs(
        dir.path(),
        &["dist", "--family", "nlcs", "--alpha", "1", "--out", "d.csv"],
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--chi"));

    let out = nlcs(
        dir.path(),
        &[
            "dist", "--family", "docs", "--chi", "1.5", "--alpha", "1", "--out", "d.csv",
        ],
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--chi must lie"));
    assert!(!dir.path().join("d.csv").exists());
}

#[test]
fn dist_writes_data_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlcs(
        dir.path(),
        &[
            "dist",
            "--family",
            "dpancs-a",
            "--alpha",
            "3",
            "--m",
            "1",
            "--chi",
            "0.1",
            "--out",
            "sub/d.csv",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let data = std::fs::read_to_string(dir.path().join("sub/d.csv")).unwrap();
    let mut lines = data.lines();
    assert_eq!(lines.next(), Some("k,probability"));
    assert_eq!(lines.next(), Some("0,0"));
    let total: f64 = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);

    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sub/d.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["schema_version"], 1);
    assert_eq!(meta["config"]["family"], "dpancs-a");
    assert_eq!(meta["config"]["chi_over_omega0"], 0.1);
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn closed_form_and_generic_distributions_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "dist", "--family", "dpancs-d", "--alpha", "1.1", "--m", "2", "--chi", "0.15", "--format", "json",
    ];
    let read = |name: &str, extra: &[&str]| {
        let mut a: Vec<&str> = args.to_vec();
        a.extend_from_slice(extra);
        a.extend_from_slice(&["--out", name]);
        assert!(nlcs(dir.path(), &a).status.success());
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        v["probabilities"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_f64().unwrap())
            .collect::<Vec<_>>()
    };
    let generic = read("g.json", &[]);
    let closed = read("c.json", &["--closed-form"]);
    assert_eq!(generic.len(), closed.len());
    for (g, c) in generic.iter().zip(&closed) {
        assert!((g - c).abs() < 1e-12);
    }
}

#[test]
fn figure_one_writes_three_distributions() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlcs(dir.path(), &["figure", "1", "--out-dir", "figs"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for family in ["pacs", "dpancs-a", "dpancs-d"] {
        assert!(dir.path().join(format!("figs/fig1_dist_{family}.csv")).exists());
    }
}
