//! Seeded CLI runs archived under `tests/golden`. Set `UPDATE_GOLDEN=1` to
//! rewrite the archive from the current binary.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// Whether the run writes a CSV through `--out`.
    pub csv: bool,
}

pub const CASES: &[Case] = &[
    Case {
        name: "repair_star_af",
        args: &[
            "repair",
            "--graph",
            "star:4",
            "--failed",
            "1",
            "--k",
            "3",
            "--protocol",
            "af",
            "--seed",
            "11",
        ],
        csv: false,
    },
    Case {
        name: "repair_star_ip",
        args: &[
            "repair", "--graph", "star:4", "--failed", "1", "--k", "3", "--seed", "11",
        ],
        csv: false,
    },
    Case {
        name: "repair_depth_one",
        args: &[
            "repair",
            "--graph",
            "star:5",
            "--k",
            "3",
            "--protocol",
            "af",
            "--seed",
            "10",
        ],
        csv: false,
    },
    Case {
        name: "repair_path_ip",
        args: &["repair", "--graph", "path:4", "--k", "3", "--seed", "12"],
        csv: false,
    },
    Case {
        name: "repair_dm_complete",
        args: &[
            "repair",
            "--graph",
            "complete:5",
            "--k",
            "3",
            "--code",
            "dm",
            "--failed",
            "2",
            "--seed",
            "13",
        ],
        csv: false,
    },
    Case {
        name: "bound_fig4",
        args: &["bound", "--graph", "fig4", "--k", "5", "--d", "6"],
        csv: false,
    },
    Case {
        name: "lp_fig4",
        args: &["lp", "--graph", "fig4", "--k", "5"],
        csv: false,
    },
    Case {
        name: "lp_fig3",
        args: &["lp", "--graph", "fig3:5", "--k", "5"],
        csv: false,
    },
    Case {
        name: "lp_complete",
        args: &["lp", "--graph", "complete:7", "--k", "4"],
        csv: false,
    },
    Case {
        name: "appendix_6_3",
        args: &["appendix", "--n", "6", "--k", "3", "--seed", "14"],
        csv: false,
    },
    Case {
        name: "coop_5_2",
        args: &["coop", "--n", "5", "--k", "2", "--seed", "15"],
        csv: false,
    },
    Case {
        name: "gw_small",
        args: &["gw", "--trials", "500", "--seed", "16", "--jobs", "2"],
        csv: false,
    },
    Case {
        name: "ensemble_gnp_dense",
        args: &[
            "ensemble", "--n", "60", "--p", "0.3", "--k", "11", "--d", "12", "--trials", "8", "--seed", "21",
        ],
        csv: true,
    },
    Case {
        name: "ensemble_gnp_sparse",
        args: &[
            "ensemble", "--n", "120", "--p", "0.04", "--k", "29", "--d", "30", "--trials", "10", "--seed",
            "22", "--jobs", "3",
        ],
        csv: true,
    },
    Case {
        name: "ensemble_regular",
        args: &[
            "ensemble", "--family", "regular", "--n", "80", "--r", "5", "--k", "19", "--d", "20", "--trials",
            "6", "--seed", "23",
        ],
        csv: true,
    },
];

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_graphrepair"));
    cmd.env_remove("GRAPHREPAIR_SEED");
    cmd
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Output of one run: stdout with the CSV path masked, and the CSV itself.
pub struct Output {
    pub code: Option<i32>,
    pub stdout: String,
    pub csv: Option<String>,
}

pub fn run_case(case: &Case) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let mut cmd = bin();
    cmd.args(case.args);
    if case.csv {
        cmd.arg("--out").arg(&csv_path);
    }
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout)
        .unwrap()
        .replace(&csv_path.display().to_string(), "<out>");
    let csv = case.csv.then(|| fs::read_to_string(&csv_path).unwrap());
    Output {
        code: out.status.code(),
        stdout,
        csv,
    }
}

fn check_file(path: &Path, actual: &str) -> Result<(), String> {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(path, actual).unwrap();
        return Ok(());
    }
    let expected = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs from the archived output", path.display()))
    }
}

/// Runs `case` and compares against the archive.
pub fn check_case(case: &Case) -> Result<(), String> {
    let out = run_case(case);
    if out.code != Some(0) {
        return Err(format!("{}: exit code {:?}", case.name, out.code));
    }
    let dir = golden_dir();
    check_file(&dir.join(format!("{}.txt", case.name)), &out.stdout)?;
    if let Some(csv) = &out.csv {
        check_file(&dir.join(format!("{}.csv", case.name)), csv)?;
    }
    Ok(())
}
