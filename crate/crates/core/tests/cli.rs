use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pathcert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcert"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn header(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

#[test]
fn gen_families() {
    let d = tempfile::tempdir().unwrap();
    let o = pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "6", "--k", "10", "-o", "c.txt"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(header(&d.path().join("c.txt")), "70 210");
    let o = pathcert(
        d.path(),
        &[
            "gen", "--random", "--n", "100", "--d", "6", "--seed", "7", "-o", "r.txt",
        ],
    );
    assert_eq!(code(&o), 0);
    assert!(text(&o.stdout).contains("m=300"));
    let o = pathcert(d.path(), &["gen", "--random", "--n", "9", "--d", "5"]);
    assert_eq!(code(&o), 2);
    assert!(text(&o.stderr).contains("odd"));
    let o = pathcert(
        d.path(),
        &["gen", "--hub", "--d", "6", "--blob", "8", "-o", "h.txt"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(header(&d.path().join("h.txt")), "25 75");
}

#[test]
fn solve_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "6", "--k", "10", "-o", "c.txt"],
    );
    let o = pathcert(d.path(), &["solve", "c.txt", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["components"], 10);
    assert_eq!(v["certificate"]["verdict"], true);
    assert!(v["report"].get("wall_time").is_none());

    pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "5", "--k", "2", "-o", "k6.txt"],
    );
    let o = pathcert(d.path(), &["solve", "k6.txt"]);
    assert_eq!(code(&o), 2);
    assert!(text(&o.stderr).contains("K6"));

    pathcert(
        d.path(),
        &[
            "gen", "--random", "--n", "700", "--d", "6", "--seed", "2", "-o", "r.txt",
        ],
    );
    let o = pathcert(d.path(), &["solve", "r.txt", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["certificate"]["components"].as_u64().unwrap() <= 100);

    fs::write(d.path().join("bad.txt"), "3 1\n0 7\n").unwrap();
    let o = pathcert(d.path(), &["solve", "bad.txt"]);
    assert_eq!(code(&o), 2);
    assert!(text(&o.stderr).contains("line 2"));
}

#[test]
fn failed_certificate_writes_reproducer() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("matching.txt"), "4 2\n0 1\n2 3\n").unwrap();
    let o = pathcert(
        d.path(),
        &["solve", "matching.txt", "--ruleset", "d6", "--out", "repro"],
    );
    assert_eq!(code(&o), 1);
    let bundle = d.path().join("repro").join("matching");
    for f in [
        "graph.txt",
        "partition.json",
        "ledger.json",
        "trace.jsonl",
        "certificate.json",
    ] {
        assert!(bundle.join(f).exists(), "{f} missing");
    }
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(bundle.join("certificate.json")).unwrap())
            .unwrap();
    assert_eq!(cert["verdict"], false);
    assert_eq!(cert["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_reports() {
    let d = tempfile::tempdir().unwrap();
    pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "6", "--k", "1", "-o", "k7.txt"],
    );
    let o = pathcert(d.path(), &["oracle", "k7.txt"]);
    assert_eq!(code(&o), 0);
    assert!(text(&o.stdout).contains("pi_p=1 heuristic=1"));
    pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "6", "--k", "2", "-o", "two.txt"],
    );
    let o = pathcert(d.path(), &["oracle", "two.txt"]);
    assert!(text(&o.stdout).contains("pi_p=2 heuristic=2"));
    pathcert(
        d.path(),
        &[
            "gen", "--random", "--n", "12", "--d", "6", "--seed", "5", "-o", "r12.txt",
        ],
    );
    let o = pathcert(d.path(), &["oracle", "r12.txt", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["heuristic"].as_u64() >= v["pi_p"].as_u64());
    assert!(v["heuristic"].as_u64().unwrap() <= 1);
    let o = pathcert(d.path(), &["oracle", "r12.txt", "--budget", "50"]);
    assert_eq!(code(&o), 3);
    assert!(text(&o.stdout).contains("unknown"));
}

#[test]
fn audit_and_certify() {
    let d = tempfile::tempdir().unwrap();
    pathcert(
        d.path(),
        &["gen", "--cliques", "--d", "6", "--k", "3", "-o", "c.txt"],
    );
    let o = pathcert(d.path(), &["audit", "c.txt"]);
    assert_eq!(code(&o), 0);
    assert!(text(&o.stdout).contains("0 paths, 0 blocks, 0 violations"));

    pathcert(
        d.path(),
        &[
            "gen", "--hub", "--d", "6", "--blob", "9", "--seed", "3", "-o", "h.txt",
        ],
    );
    let o = pathcert(d.path(), &["solve", "h.txt", "--partition-out", "p.json"]);
    assert_eq!(code(&o), 0);
    for reading in ["narrow", "broad"] {
        let o = pathcert(
            d.path(),
            &[
                "audit",
                "h.txt",
                "--partition",
                "p.json",
                "--reading",
                reading,
            ],
        );
        assert_eq!(code(&o), 0, "{}", text(&o.stdout));
    }
    let o = pathcert(d.path(), &["certify", "h.txt", "p.json"]);
    assert_eq!(code(&o), 0);
    fs::write(
        d.path().join("broken.json"),
        r#"{"paths":[[0,1]],"cycles":[],"singletons":[]}"#,
    )
    .unwrap();
    let o = pathcert(d.path(), &["certify", "h.txt", "broken.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn batch_and_determinism() {
    let d = tempfile::tempdir().unwrap();
    for (i, n) in [28, 70, 140].iter().enumerate() {
        let (n, s, f) = (n.to_string(), i.to_string(), format!("g{i}.txt"));
        pathcert(
            d.path(),
            &[
                "gen", "--random", "--n", &n, "--d", "6", "--seed", &s, "-o", &f,
            ],
        );
    }
    fs::write(
        d.path().join("manifest"),
        "# instances\ng0.txt\ng1.txt\n\ng2.txt\n",
    )
    .unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_pathcert"))
            .current_dir(d.path())
            .env("PATHCERT_THREADS", threads)
            .args(["solve", "--batch", "manifest", "--json"])
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(code(&a), 0);
    assert!(text(&a.stderr).contains("3/3 passed"));
    assert_eq!(a.stdout, b.stdout);
    let one = pathcert(d.path(), &["solve", "g1.txt", "--json", "--seed", "4"]);
    let two = pathcert(d.path(), &["solve", "g1.txt", "--json", "--seed", "4"]);
    assert_eq!(one.stdout, two.stdout);
    assert!(one.stdout.ends_with(b"\n"));
}
