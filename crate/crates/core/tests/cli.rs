use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use satcache::placement::{Placement, PlacementFile};
use satcache::sim::{schedule_requests, SimConfig};
use satcache::{Coord, GridSpec};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_satcache"));
    c.env_remove("SATCACHE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().to_string()))
        .unwrap_or_else(|| panic!("{key} missing in\n{out}"))
}

#[test]
fn optimize_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for (args, name) in [
        (
            vec!["--grid", "60x42", "--caches", "5"],
            "placement_60x42_n5.json",
        ),
        (
            vec!["--grid", "24x24", "--r", "2", "--strategy", "regular"],
            "regular_24x24_r2.json",
        ),
    ] {
        let path = dir.path().join(name);
        let mut full = vec!["optimize"];
        full.extend(&args);
        full.extend(["--out", path.to_str().unwrap()]);
        let o = run(&full);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            fs::read_to_string(golden(name)).unwrap()
        );
    }
}

#[test]
fn simulate_reads_golden_placement_like_inline_flags() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let common = [
        "--clients",
        "300",
        "--duration",
        "2000",
        "--replications",
        "3",
        "--seed",
        "9",
    ];
    let from_file = run(&[
        &[
            "simulate",
            "--placement-file",
            golden("placement_60x42_n5.json").to_str().unwrap(),
            "--out",
            a.to_str().unwrap(),
        ][..],
        &common[..],
    ]
    .concat());
    let inline = run(&[
        &[
            "simulate",
            "--grid",
            "60x42",
            "--caches",
            "5",
            "--out",
            b.to_str().unwrap(),
        ][..],
        &common[..],
    ]
    .concat());
    assert!(from_file.status.success() && inline.status.success());
    for f in ["nodes.csv", "requests.csv", "summary.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("summary.json")).unwrap()).unwrap();
    let placement: PlacementFile = serde_json::from_value(doc["placement"].clone()).unwrap();
    assert_eq!(
        placement,
        PlacementFile::read(&golden("placement_60x42_n5.json")).unwrap()
    );
    assert_eq!(doc["summary"]["replication_means"].as_array().unwrap().len(), 3);

    let requests = fs::read_to_string(a.join("requests.csv")).unwrap();
    assert_eq!(requests.lines().count(), 2 + 3 * 300);
    let nodes = fs::read_to_string(a.join("nodes.csv")).unwrap();
    assert_eq!(nodes.lines().count(), 2 + 60 * 42);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("s{i}.csv"))).collect();
    for p in &outs {
        let o = run(&[
            "sweep",
            "--grid",
            "24x24",
            "--var",
            "clients",
            "--values",
            "10,100",
            "--caches",
            "0,2",
            "--duration",
            "300",
            "--replications",
            "4",
            "--seed",
            "5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let a = fs::read(&outs[0]).unwrap();
    assert_eq!(a, fs::read(&outs[1]).unwrap());
    // 2 values x 2 series x 4 replications
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 2 + 16);
}

#[test]
fn seed_comes_from_environment_by_default() {
    let args = [
        "simulate",
        "--grid",
        "24x24",
        "--caches",
        "2",
        "--clients",
        "200",
        "--duration",
        "500",
    ];
    let with_env = bin().args(args).env("SATCACHE_SEED", "42").output().unwrap();
    let with_flag = run(&[&args[..], &["--seed", "42"]].concat());
    let without = run(&args);
    assert_eq!(stdout(&with_env), stdout(&with_flag));
    assert_ne!(stdout(&with_env), stdout(&without));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["optimize", "--grid", "60x42", "--caches", "5"]), 0);
    assert_eq!(code(&["optimize", "--grid", "sixty", "--caches", "5"]), 2);
    assert_eq!(
        code(&["optimize", "--grid", "60x42", "--caches", "5", "--r", "2"]),
        2
    );
    assert_eq!(
        code(&["optimize", "--grid", "60x42", "--r", "2", "--strategy", "regular"]),
        3
    );
    assert_eq!(code(&["optimize", "--grid", "60x42", "--caches", "40"]), 3);
    assert_eq!(
        code(&["oracle", "--grid", "60x42", "--caches", "5", "--all", "--budget", "1000"]),
        4
    );
    assert_eq!(
        code(&["simulate", "--grid", "12x12", "--caches", "1", "--duration", "-3"]),
        2
    );

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"grid\": ").unwrap();
    assert_eq!(
        code(&["simulate", "--placement-file", broken.to_str().unwrap()]),
        2
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&["simulate", "--placement-file", missing.to_str().unwrap()]),
        2
    );
    let wrong = dir.path().join("wrong.json");
    fs::write(
        &wrong,
        r#"{"grid":{"planes":60,"sats_per_plane":42},"strategy":"axes","h_axis":[31]}"#,
    )
    .unwrap();
    assert_eq!(
        code(&["simulate", "--placement-file", wrong.to_str().unwrap()]),
        2
    );
}

#[test]
fn single_client_at_producer_has_zero_mean() {
    let g = GridSpec::new(2, 2).unwrap();
    let mut cfg = SimConfig::new(g, Placement::none());
    cfg.num_clients = 1;
    let seed = (0..)
        .find(|&s| {
            cfg.rng_seed = s;
            schedule_requests(&cfg, 0)[0].consumer == Coord::ORIGIN
        })
        .unwrap();
    let o = run(&[
        "simulate",
        "--grid",
        "2x2",
        "--caches",
        "0",
        "--clients",
        "1",
        "--seed",
        &seed.to_string(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "mean_path_len"), "0.0000");
    assert_eq!(field(&out, "producer_hits"), "1");
}

#[test]
fn zero_duration_beats_theory() {
    let o = run(&[
        "simulate",
        "--grid",
        "60x42",
        "--caches",
        "5",
        "--clients",
        "1000",
        "--duration",
        "0",
        "--replications",
        "5",
        "--seed",
        "1",
    ]);
    let out = stdout(&o);
    let mean: f64 = field(&out, "mean_path_len").parse().unwrap();
    let theory: f64 = field(&out, "theoretical")
        .split_whitespace()
        .nth(1)
        .unwrap()
        .trim_matches(['(', ')'])
        .parse()
        .unwrap();
    assert!(mean <= theory, "{mean} vs {theory}");
    assert!(field(&out, "coalesced").parse::<u64>().unwrap() > 0);
}

#[test]
fn sweep_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("clients.csv");
    let o = run(&[
        "sweep",
        "--grid",
        "60x42",
        "--var",
        "clients",
        "--values",
        "10,100,1000",
        "--caches",
        "0,1,5,10",
        "--duration",
        "5000",
        "--replications",
        "2",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&p).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# satcache sweep v1");
    assert_eq!(
        lines[1],
        "sweep_var,value,caches,replication,mean_path_len,theoretical"
    );
    assert_eq!(lines.len(), 2 + 3 * 4 * 2);
    assert!(lines.iter().any(|l| l.starts_with("clients,1000,2x10,1,")));

    let o = run(&[
        "sweep",
        "--grid",
        "24x24",
        "--var",
        "budget",
        "--values",
        "0,4,8,16,24",
        "--clients",
        "100",
        "--replications",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2 + 5 * 2 * 2);
    assert!(text.contains("budget,16,regular,0,NA,NA,NA"));
    assert!(text.contains("budget,24,regular,0,"));

    let o = run(&["sweep", "--grid", "24x24", "--var", "duration", "--values", ""]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}
