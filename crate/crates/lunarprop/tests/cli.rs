use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_lunarprop");

fn cli(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("LUNARPROP_OUT_DIR")
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_writes_advantage_table() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cli(
        &[
            "run",
            "--study",
            "BASELINE",
            "--market",
            "OPTIMISTIC",
            "--sep",
            "--table",
            "advantage",
            "--out",
            "o",
        ],
        tmp.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(tmp.path().join("o/advantage.csv")).unwrap();
    assert_eq!(
        csv,
        "node,BASELINE\nLS,1\nLLO,1\nEML1,1\nGEO,2\nDRO,2\nGTO,6\nLEO,19\n"
    );
}

#[test]
fn outputs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for d in ["a", "b"] {
        let o = cli(
            &[
                "run",
                "--study",
                "S",
                "--table",
                "yearly",
                "--table",
                "elasticity",
                "--table",
                "phi",
                "--out",
                d,
            ],
            tmp.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["yearly.csv", "elasticity.csv", "phi.csv"] {
        let a = std::fs::read(tmp.path().join("a").join(f)).unwrap();
        let b = std::fs::read(tmp.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
        assert!(!a.contains(&b'\r'));
    }
}

#[test]
fn output_dir_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.toml"),
        "study = \"M\"\noutput_dir = \"from_config\"\n",
    )
    .unwrap();
    let base = ["run", "--config", "c.toml", "--table", "advantage"];

    assert!(cli(&base, tmp.path()).status.success());
    assert!(tmp.path().join("from_config/advantage.csv").exists());

    let o = Command::new(BIN)
        .args(base)
        .current_dir(tmp.path())
        .env("LUNARPROP_OUT_DIR", "from_env")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("from_env/advantage.csv").exists());

    let o = Command::new(BIN)
        .args(base)
        .args(["--out", "from_flag"])
        .current_dir(tmp.path())
        .env("LUNARPROP_OUT_DIR", "from_env2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("from_flag/advantage.csv").exists());
    assert!(!tmp.path().join("from_env2").exists());
}

#[test]
fn flags_override_config() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.toml"),
        "study = \"CD\"\nsep = true\nmarket = \"MODERATE\"\n",
    )
    .unwrap();
    let o = cli(
        &[
            "dump-effective-config",
            "--config",
            "c.toml",
            "--study",
            "S",
            "--no-sep",
            "--market",
            "pessimistic",
        ],
        tmp.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("name = \"S\""));
    assert!(text.contains("sep = false"));
    assert!(text.contains("market = \"PESSIMISTIC\""));
}

#[test]
fn dumped_config_reruns_identically() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.toml"),
        "study = \"CD\"\n[variant]\nyield_factor = 5.0\n[econ.discount]\nmode = \"constant\"\nr_start = 0.272\n",
    )
    .unwrap();
    let o = cli(&["dump-effective-config", "--config", "c.toml"], tmp.path());
    assert!(o.status.success());
    std::fs::write(tmp.path().join("eff.toml"), o.stdout).unwrap();
    for (cfg, out) in [("c.toml", "a"), ("eff.toml", "b")] {
        assert!(cli(&["run", "--config", cfg, "--out", out], tmp.path())
            .status
            .success());
    }
    for f in ["yearly.csv", "advantage.csv"] {
        assert_eq!(
            std::fs::read(tmp.path().join("a").join(f)).unwrap(),
            std::fs::read(tmp.path().join("b").join(f)).unwrap()
        );
    }
}

#[test]
fn sweep_runs_in_value_order() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("s.toml"),
        "study = \"S\"\n[sweep]\nparameter = \"r0\"\nvalues = [0.85, 0.1]\n",
    )
    .unwrap();
    let o = cli(&["sweep", "--config", "s.toml", "--out", "o"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let adv = std::fs::read_to_string(tmp.path().join("o/sweep_advantage.csv")).unwrap();
    assert!(adv.starts_with("node,r0=0.85,r0=0.1\n"));

    let o = cli(
        &[
            "sweep",
            "--study",
            "CD",
            "--parameter",
            "discount_rate",
            "--values",
            "0.12,0.272",
            "--out",
            "p",
        ],
        tmp.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn reproduce_through_run_flag() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cli(&["run", "--reproduce", "fig16", "--out", "o"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(tmp.path().join("o/fig16_advantage.csv").exists());
}

#[test]
fn machine_readable_errors() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("empty.toml"),
        "study = \"S\"\n[sweep]\nparameter = \"r0\"\nvalues = []\n",
    )
    .unwrap();
    std::fs::write(
        tmp.path().join("bad_r0.toml"),
        "study = \"S\"\n[variant]\nr0 = 1.5\n",
    )
    .unwrap();
    let cases: [(&[&str], &str, i32); 5] = [
        (
            &["sweep", "--config", "empty.toml"],
            "kind=CONFIG_INVALID",
            2,
        ),
        (&["run", "--config", "missing.toml"], "kind=IO_ERROR", 4),
        (&["reproduce", "fig99"], "kind=UNKNOWN_EXHIBIT", 5),
        (&["run", "--study", "NOPE"], "kind=CONFIG_INVALID", 2),
        (&["run", "--config", "bad_r0.toml"], "kind=MODEL_ERROR", 3),
    ];
    for (args, kind, code) in cases {
        let o = cli(args, tmp.path());
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert!(err.starts_with(kind), "{args:?}: {err}");
        assert!(err.contains("message="));
    }
}
