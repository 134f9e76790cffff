#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn galinv(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galinv"))
        .args(args)
        .current_dir(dir)
        .env_remove("GALINV_TOL")
        .output()
        .expect("run galinv")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Curves shared by the golden cases, written into `dir`.
pub fn write_fixtures(dir: &Path) {
    let setup: [&[&str]; 5] = [
        &[
            "generate", "helix", "--n", "401", "--dt", "0.005", "-o", "a.csv",
        ],
        &[
            "generate",
            "helix",
            "--n",
            "401",
            "--dt",
            "0.005",
            "--transform-seed",
            "42",
            "-o",
            "b.csv",
        ],
        &[
            "generate", "helix", "--a", "1.01", "--n", "401", "--dt", "0.005", "-o", "c.csv",
        ],
        &[
            "generate", "line", "--n", "101", "--dt", "0.01", "-o", "line.csv",
        ],
        &[
            "generate",
            "cubic",
            "--n",
            "61",
            "--dt",
            "0.01",
            "-o",
            "small.csv",
        ],
    ];
    for args in setup {
        let out = galinv(dir, args);
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = galinv(
        dir,
        &[
            "generate",
            "helix",
            "--n",
            "15",
            "--dt",
            "0.005",
            "-o",
            "short.csv",
        ],
    );
    assert_eq!(code(&out), 0);
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// File the JSON is read from; stdout when `None`.
    pub file: Option<&'static str>,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "generate_transform",
        args: &[
            "generate",
            "helix",
            "--n",
            "401",
            "--dt",
            "0.005",
            "--transform-seed",
            "42",
            "-o",
            "b2.csv",
        ],
        exit: 0,
        file: Some("b2.transform.json"),
    },
    GoldenCase {
        name: "invariants_analytic",
        args: &[
            "invariants",
            "--method",
            "analytic",
            "--m",
            "11",
            "--length",
            "1",
        ],
        exit: 0,
        file: None,
    },
    GoldenCase {
        name: "invariants_fd",
        args: &["invariants", "small.csv"],
        exit: 0,
        file: None,
    },
    GoldenCase {
        name: "equiv_transformed",
        args: &["equiv", "a.csv", "b.csv"],
        exit: 0,
        file: None,
    },
    GoldenCase {
        name: "equiv_perturbed",
        args: &["equiv", "a.csv", "c.csv"],
        exit: 1,
        file: None,
    },
    GoldenCase {
        name: "degenerate",
        args: &["invariants", "line.csv"],
        exit: 3,
        file: None,
    },
    GoldenCase {
        name: "no_overlap",
        args: &["equiv", "a.csv", "short.csv"],
        exit: 4,
        file: None,
    },
    GoldenCase {
        name: "recover",
        args: &["recover", "a.csv", "b.csv"],
        exit: 0,
        file: None,
    },
    GoldenCase {
        name: "recover_not_in_group",
        args: &["recover", "a.csv", "c.csv"],
        exit: 5,
        file: None,
    },
    GoldenCase {
        name: "pullback",
        args: &["pullback", "a.csv", "--at", "0.5"],
        exit: 0,
        file: None,
    },
    GoldenCase {
        name: "reconstruct_sidecar",
        args: &[
            "reconstruct",
            "--w1",
            "0.5",
            "--w2",
            "0.353553",
            "--length",
            "1",
            "--h",
            "0.01",
            "-o",
            "r.csv",
        ],
        exit: 0,
        file: Some("r.json"),
    },
];

/// Runs one case in `dir` (fixtures already written) and returns its JSON.
pub fn run_case(dir: &Path, case: &GoldenCase) -> Result<String, String> {
    let out = galinv(dir, case.args);
    if code(&out) != case.exit {
        return Err(format!(
            "{}: exit {} (expected {}): {}",
            case.name,
            code(&out),
            case.exit,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    match case.file {
        Some(f) => fs::read_to_string(dir.join(f)).map_err(|e| format!("{}: {e}", case.name)),
        None => String::from_utf8(out.stdout).map_err(|e| format!("{}: {e}", case.name)),
    }
}

/// Compares every case to its golden file. With `GALINV_UPDATE_GOLDEN` set,
/// rewrites the golden files instead.
pub fn check_goldens(dir: &Path) -> Vec<String> {
    let update = std::env::var_os("GALINV_UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in GOLDEN_CASES {
        let path = golden_dir().join(format!("{}.json", case.name));
        match run_case(dir, case) {
            Ok(text) if update => fs::write(&path, text).expect("write golden"),
            Ok(text) => match fs::read_to_string(&path) {
                Ok(expected) if expected == text => {}
                Ok(_) => failures.push(format!(
                    "{}: output differs from {}",
                    case.name,
                    path.display()
                )),
                Err(e) => failures.push(format!("{}: {e}", case.name)),
            },
            Err(e) => failures.push(e),
        }
    }
    failures
}
