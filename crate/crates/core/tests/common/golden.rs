//! Golden-file CLI invocations. Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

pub struct Invocation {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
}

const fn run(name: &'static str, args: &'static [&'static str]) -> Invocation {
    Invocation {
        name,
        args,
        stdin: None,
    }
}

const fn piped(name: &'static str, args: &'static [&'static str], stdin: &'static str) -> Invocation {
    Invocation {
        name,
        args,
        stdin: Some(stdin),
    }
}

pub const INVOCATIONS: &[Invocation] = &[
    run(
        "eval_core_product",
        &[
            "eval",
            "--field",
            "q",
            "--algebra",
            "core",
            "--chain",
            "2,2",
            "e[1,0]*e[1.0,1.1]",
        ],
    ),
    run(
        "eval_core_pretty",
        &["--pretty", "eval", "--chain", "2,3", "2*e[1,0] - 1/2*e[0,1]"],
    ),
    run("eval_core_identity_split", &["eval", "--m", "2", "e[0,0] + e[1,1]"]),
    run(
        "eval_fp5",
        &[
            "eval",
            "--field",
            "fp:5",
            "--chain",
            "3,3",
            "3*e[2,1]*e[1,2] + 4*e[_,_]",
        ],
    ),
    run("eval_power", &["eval", "--chain", "2,2,2", "(e[1,0] + e[0,1])^2"]),
    run(
        "eval_leavitt_identity",
        &["eval", "--algebra", "leavitt", "--m", "2", "x0*y0 + x1*y1"],
    ),
    run(
        "eval_leavitt_mixed_degrees",
        &["eval", "--algebra", "leavitt", "--m", "3", "x2*x0 - y1"],
    ),
    run(
        "eval_deep_zero",
        &["eval", "--algebra", "deep", "--m", "2", "d[0,1]*d[0,1]"],
    ),
    run(
        "eval_deep_splice",
        &["eval", "--algebra", "deep", "--m", "2", "d[1,0]*d[1.0,1]"],
    ),
    run(
        "eval_mixed",
        &["eval", "--algebra", "mixed", "--m", "2", "f[0,3]*e[1,0] + e[_,_]"],
    ),
    piped("eval_stdin", &["eval", "--m", "2", "-"], "e[1,1] + e[0,0]\n"),
    run("eval_syntax_error", &["eval", "e[1,0"]),
    run("eval_kind_mismatch", &["eval", "--algebra", "core", "x0"]),
    run("eval_radix_error", &["eval", "--chain", "2,3", "e[2,0]"]),
    run("eval_usage_error", &["eval", "--field", "r", "1"]),
    run("canon_file", &["canon", "tests/golden/inputs/lifted.json"]),
    piped(
        "canon_stdin",
        &["canon", "-"],
        r#"{"field":"fp:3","chain":"3","level":1,"entries":[[0,0,"2"],[1,1,"2"],[2,2,"-1"]]}"#,
    ),
    run("realize_core", &["realize", "--blocks", "2", "e[1,0]"]),
    run(
        "realize_mixed_pretty",
        &[
            "--pretty",
            "realize",
            "--algebra",
            "mixed",
            "--blocks",
            "3",
            "f[0,1] + e[1,0]",
        ],
    ),
    run("act_core", &["act", "--chain", "2,2", "--word", "0.1", "e[1,0]"]),
    run(
        "act_deep",
        &[
            "act",
            "--algebra",
            "deep",
            "--m",
            "2",
            "--word",
            "1",
            "d[_,0.1] + d[1.1,_]",
        ],
    ),
    run("aar_2_1", &["aar", "--n", "2", "--k", "1"]),
    run("aar_3_2_pretty", &["aar", "--n", "3", "--k", "2", "--pretty"]),
    run("aar_bad_k", &["aar", "--n", "3", "--k", "3"]),
    run("aar_root_2_2", &["aar-root", "--n", "2", "--m", "2"]),
    run("aar_root_3_2_pretty", &["aar-root", "--n", "3", "--m", "2", "--pretty"]),
    run("chain_witness_2_3", &["chain-witness", "--chain", "2,3"]),
    run(
        "chain_witness_depth_pretty",
        &["chain-witness", "--m", "2", "--depth", "3", "--pretty"],
    ),
    run(
        "grade_unit",
        &["grade", "--chain", "2,2", "--group", "Z", "--h", "0:1,2", "e[0,1]"],
    ),
    run(
        "grade_components_z2",
        &[
            "grade",
            "--chain",
            "2,2",
            "--group",
            "Z^2",
            "--h",
            "0:(1,0),(0,1);1:(0,0),(2,0)",
            "e[0,1] + e[1.1,0.0] + e[_,_]",
        ],
    ),
    run(
        "grade_leavitt",
        &[
            "grade",
            "--algebra",
            "leavitt",
            "--m",
            "2",
            "--h",
            "0:1,2",
            "x1*y0 + x0",
        ],
    ),
    run("rank_f2", &["rank", "--field", "fp:2", "[[1,0],[1,0],[0,0]]"]),
    run("ann_q", &["ann", "[[1,2],[0,1],[3,0]]"]),
    run(
        "iso_parallel",
        &["iso", "--chain", "2,2", "--alpha", "1,0;1,1", "--beta", "2,0;3,3"],
    ),
    run(
        "iso_different",
        &[
            "iso", "--chain", "2,2", "--alpha", "1,0;1,1", "--beta", "0,1;1,1", "--from", "1",
        ],
    ),
    run(
        "band_lift_pretty",
        &[
            "band-lift",
            "--field",
            "fp:2",
            "--p",
            "3",
            "--steps",
            "2",
            "[[1,1]]",
            "--pretty",
        ],
    ),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Exit code, stdout and stderr in one reviewable text file.
pub fn capture(inv: &Invocation) -> String {
    let mut child = Command::new(env!("CARGO_BIN_EXE_supermat"))
        .args(inv.args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn supermat");
    {
        let mut stdin = child.stdin.take().expect("stdin");
        if let Some(text) = inv.stdin {
            stdin.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("run supermat");
    format!(
        "$ supermat {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        inv.args.join(" "),
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    )
}

/// Compares every invocation with its golden file, or rewrites the files
/// when `UPDATE_GOLDEN=1`. Returns the names that differ.
pub fn check_all() -> Vec<String> {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let dir = golden_dir();
    let mut failures = Vec::new();
    for inv in INVOCATIONS {
        let path = dir.join(format!("{}.txt", inv.name));
        let actual = capture(inv);
        if update {
            std::fs::write(&path, &actual).expect("write golden file");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == actual => {}
            Ok(expected) => failures.push(format!(
                "{}: output differs\n--- expected\n{expected}--- actual\n{actual}",
                inv.name
            )),
            Err(e) => failures.push(format!("{}: {e}", inv.name)),
        }
    }
    failures
}
