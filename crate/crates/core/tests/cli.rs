use std::process::{Command, Output};

use serde_json::Value;

fn flowpoly(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_flowpoly"));
    cmd.args(args).env_remove("FLOWPOLY_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn volume_matches_table_value() {
    let v = json(&flowpoly(
        &[
            "volume",
            "--partition",
            "4,3,2,1",
            "--n",
            "8",
            "--netflow",
            "ones",
        ],
        &[],
    ));
    assert_eq!(v["schema"], "flowpoly/1");
    assert_eq!(v["command"], "volume");
    assert_eq!(v["lidskii"], "12600");
    assert_eq!(v["closed_form"], "12600");
    assert_eq!(v["agree"], true);
}

#[test]
fn closed_form_is_null_below_stabilization() {
    let v = json(&flowpoly(
        &["volume", "--partition", "4,3,2,1", "--n", "6"],
        &[],
    ));
    assert_eq!(v["lidskii"], "26580");
    assert!(v["closed_form"].is_null());
}

#[test]
fn vertex_count_plain() {
    let out = flowpoly(
        &[
            "vertices",
            "--partition",
            "2,1",
            "--n",
            "3",
            "--netflow",
            "ones",
            "--count-only",
            "--format",
            "plain",
        ],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6\n");
}

#[test]
fn hpoly_coefficients() {
    let v = json(&flowpoly(&["hpoly", "--partition", "2,1"], &[]));
    assert_eq!(v["coefficients"], serde_json::json!(["1", "2", "2", "1"]));
}

#[test]
fn table_csv() {
    let out = flowpoly(
        &[
            "table",
            "--partition",
            "4,3,2,1",
            "--from",
            "5",
            "--to",
            "8",
            "--format",
            "csv",
        ],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,volume,stabilized\n5,107520,false\n6,26580,false\n7,15120,false\n8,12600,true\n"
    );
}

#[test]
fn invalid_input_exits_with_one() {
    let cases: &[&[&str]] = &[
        &["volume", "--partition", "4,3,2,1", "--n", "4"],
        &["volume", "--partition", "1,2", "--n", "4"],
        &[
            "volume",
            "--partition",
            "2,1",
            "--n",
            "4",
            "--netflow",
            "1,1",
        ],
        &[
            "volume",
            "--partition",
            "2,1",
            "--n",
            "4",
            "--netflow",
            "1,0,1,1",
        ],
        &["ct", "--partition", "2,1", "--n", "4", "--truncation", "2"],
        &["volume", "--partition", "2,1"],
        &["frobnicate"],
        &["volume", "--partition", "2,1", "--n", "4", "--threads", "0"],
    ];
    for args in cases {
        let out = flowpoly(args, &[]);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = flowpoly(&["volume", "--partition", "4,3,2,1", "--n", "4"], &[]);
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("row 1"), "{msg}");
}

#[test]
fn long_netflow_warns_and_truncates() {
    let out = flowpoly(
        &[
            "volume",
            "--partition",
            "1",
            "--n",
            "2",
            "--netflow",
            "3,1,7",
        ],
        &[],
    );
    let v = json(&out);
    assert_eq!(v["lidskii"], "3");
    assert_eq!(v["netflow"], serde_json::json!(["3", "1"]));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn output_independent_of_thread_count() {
    let commands: &[&[&str]] = &[
        &[
            "table",
            "--partition",
            "4,3,2,1",
            "--from",
            "5",
            "--to",
            "9",
        ],
        &[
            "vertices",
            "--partition",
            "3,2",
            "--n",
            "6",
            "--netflow",
            "1,2,3,1,2,3",
        ],
        &["faces", "--partition", "2,2", "--n", "5", "--list"],
        &[
            "ct",
            "--partition",
            "2,1,1",
            "--n",
            "6",
            "--netflow",
            "1,2,3,1,2,3",
        ],
        &[
            "points",
            "--partition",
            "3,1",
            "--n",
            "5",
            "--format",
            "csv",
        ],
    ];
    for args in commands {
        let base = flowpoly(&[args, &["--threads", "1"][..]].concat(), &[]);
        assert!(base.status.success(), "{args:?}");
        for k in ["2", "4", "7"] {
            let other = flowpoly(&[args, &["--threads", k][..]].concat(), &[]);
            assert_eq!(other.stdout, base.stdout, "{args:?} with {k} threads");
        }
        let env = flowpoly(args, &[("FLOWPOLY_THREADS", "3")]);
        assert_eq!(env.stdout, base.stdout, "{args:?} via FLOWPOLY_THREADS");
    }
}

#[test]
fn every_subcommand_emits_schema() {
    let commands: &[&[&str]] = &[
        &["graph", "--partition", "2,1", "--n", "3"],
        &["ehrhart", "--partition", "2,1", "--n", "4"],
        &["tesler", "--n", "5"],
        &["faces", "--partition", "1,1", "--n", "4"],
    ];
    for args in commands {
        let v = json(&flowpoly(args, &[]));
        assert_eq!(v["schema"], "flowpoly/1", "{args:?}");
    }
    let v = json(&flowpoly(&["tesler", "--n", "5"], &[]));
    assert_eq!(v["product_form"], "107520");
    assert_eq!(v["lidskii"], "107520");
    let v = json(&flowpoly(&["faces", "--partition", "1,1", "--n", "4"], &[]));
    assert_eq!(v["f_vector"], serde_json::json!(["4", "4", "1"]));
}
