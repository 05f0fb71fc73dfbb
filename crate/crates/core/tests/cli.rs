use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mdmap::mapping::parse_mapping_file;
use mdmap::MdMapping;

fn mdmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn export(dir: &Path) {
    let out = mdmap(&["export-fixtures", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn exported_fixtures_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    for (name, text) in mdmap::fixtures::FIXTURES {
        let written = fs::read_to_string(dir.path().join(format!("{name}.map"))).unwrap();
        assert_eq!(&written, text);
        MdMapping::new(parse_mapping_file(&written).unwrap()).unwrap();
    }
}

#[test]
fn eval_prints_the_harmonic_means() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let out = mdmap(&["eval", &path(dir.path(), "16qam_4d.map")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi_before,phi_after,delta,psi_l,psi_r"));
    let values: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((values[0] - 0.2151).abs() < 5e-5);
    assert!((values[1] - 3.1622).abs() < 5e-5);

    let out = mdmap(&[
        "eval",
        "--format",
        "json",
        "--n",
        "3",
        &path(dir.path(), "8psk_4d.map"),
    ]);
    let text = stdout(&out);
    assert!(text.contains("\"phi_after\":3.5454"), "{text}");
}

#[test]
fn corrupted_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let good = fs::read_to_string(dir.path().join("8psk_4d.map")).unwrap();
    let bad = dir.path().join("bad.map");
    let mut lines: Vec<&str> = good.lines().collect();
    lines.insert(1, "garbage here");
    fs::write(&bad, lines.join("\n")).unwrap();
    for cmd in ["eval", "verify"] {
        let out = mdmap(&[cmd, bad.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(4), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    }
    let out = mdmap(&["eval", &path(dir.path(), "missing.map")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_reports_a_broken_pair() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let out = mdmap(&["verify", &path(dir.path(), "16qam_4d.map")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("parity structure: true"));

    let broken = dir.path().join("broken.map");
    let text = mdmap::fixtures::fixture_text("8psk_4d")
        .unwrap()
        .replace("(1,5) (0,4) (3,7)\n", "(1,4) (0,5) (3,7)\n");
    fs::write(&broken, text).unwrap();
    let out = mdmap(&["verify", broken.to_str().unwrap()]);
    assert!(!out.status.success());
    let all = format!("{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    assert!(all.contains("line 7"), "{all}");
}

#[test]
fn optimize_is_reproducible_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_path = path(dir.path(), name);
        let out = mdmap(&[
            "optimize",
            "--constellation",
            "psk",
            "--m",
            "3",
            "--seed",
            "4",
            "--it-num",
            "3",
            "--out",
            &out_path,
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (
            fs::read(&out_path).unwrap(),
            fs::read(format!("{out_path}.trace.csv")).unwrap(),
        )
    };
    let a = run("a.map");
    let b = run("b.map");
    assert_eq!(a, b);
    let trace = String::from_utf8(a.1).unwrap();
    assert_eq!(trace.lines().count(), 4);
    let out = mdmap(&["verify", &path(dir.path(), "a.map")]);
    assert!(out.status.success());
}

#[test]
fn simulate_and_exit_chart_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let ber = path(dir.path(), "ber.csv");
    let out = mdmap(&[
        "simulate",
        &path(dir.path(), "16qam_4d.map"),
        "--ebn0",
        "30:1:32",
        "--interleaver-len",
        "800",
        "--max-frames",
        "3",
        "--out",
        &ber,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&ber).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "ebn0_db,ber,frames,bit_errors");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..]
        .iter()
        .all(|l| l.ends_with(",0e0,3,0") || l.split(',').nth(3) == Some("0")));

    let out = mdmap(&[
        "simulate",
        &path(dir.path(), "256qam_4d.map"),
        "--ebn0",
        "10",
        "--out",
        &ber,
    ]);
    assert_eq!(out.status.code(), Some(3));

    let exit = path(dir.path(), "exit.csv");
    let out = mdmap(&[
        "exit-chart",
        &path(dir.path(), "16qam_4d.map"),
        "--ebn0",
        "6",
        "--points",
        "3",
        "--samples",
        "500",
        "--out",
        &exit,
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&exit).unwrap();
    assert!(text.starts_with("ia,ie\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn gen_writes_constellation_csv() {
    let out = mdmap(&["gen", "--constellation", "qam", "--m", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("index,re,im"));
    assert_eq!(text.lines().count(), 17);
    let out = mdmap(&["gen", "--constellation", "nonsense", "--m", "4"]);
    assert!(!out.status.success());
}
