#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn noonphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noonphase"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_of(args: &[&str]) -> String {
    let out = noonphase(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).expect("golden file present")
}

/// Default invocations and the golden file each must reproduce.
pub const GOLDEN_RUNS: &[(&[&str], &str)] = &[
    (&["phase-error"], "phase_error.csv"),
    (&["limit-sweep", "-n", "2"], "limit_sweep_N2.csv"),
    (&["limit-sweep", "-n", "4"], "limit_sweep_N4.csv"),
    (&["compare-min", "-n", "2"], "compare_min_N2.csv"),
    (&["compare-min", "-n", "4"], "compare_min_N4.csv"),
    (&["compare-min", "-n", "10"], "compare_min_N10.csv"),
    (&["breakeven"], "breakeven.csv"),
    (&["montecarlo"], "montecarlo.csv"),
];

/// Parsed CSV: header and cells, `None` for empty cells.
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Csv {
    pub fn parse(text: &str) -> Self {
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().expect("header").split(',').map(String::from).collect();
        let rows = lines
            .map(|l| {
                l.split(',')
                    .map(|c| match c {
                        "" => None,
                        "inf" => Some(f64::INFINITY),
                        c => Some(c.parse().expect("numeric cell")),
                    })
                    .collect()
            })
            .collect();
        Self { header, rows }
    }

    pub fn column(&self, name: &str) -> Vec<Option<f64>> {
        let i = self
            .header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn numbers(&self, name: &str) -> Vec<f64> {
        self.column(name).into_iter().map(|v| v.expect("filled cell")).collect()
    }
}

/// Abscissa where `a - b` changes sign from positive to non-positive,
/// linearly interpolated.
pub fn first_crossing(x: &[f64], a: &[f64], b: &[f64]) -> Option<f64> {
    let d: Vec<f64> = a.iter().zip(b).map(|(a, b)| a - b).collect();
    (1..x.len()).find(|&i| d[i - 1] > 0.0 && d[i] <= 0.0).map(|i| {
        let t = d[i - 1] / (d[i - 1] - d[i]);
        x[i - 1] + t * (x[i] - x[i - 1])
    })
}
