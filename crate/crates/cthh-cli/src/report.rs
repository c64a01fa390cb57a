//! Report structures shared by the subcommands, with a human rendering and a
//! JSON mirror behind `--json`.

use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct CycleEntry {
    pub points: Vec<String>,
    pub arrows: Vec<String>,
    pub oriented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeEntry {
    pub point: String,
    /// `None` when the two degree formulas disagree.
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub points: usize,
    pub arrows: usize,
    pub chordless_cycles: Vec<CycleEntry>,
    pub inner_arrows: Vec<String>,
    pub outer_arrows: Vec<String>,
    pub n_theorem: i64,
    pub n_euler: i64,
    pub degrees: Vec<DegreeEntry>,
    pub caveats: Vec<String>,
    pub warnings: Vec<String>,
}

impl AnalyzeReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points: {}", self.points);
        let _ = writeln!(out, "arrows: {}", self.arrows);
        let _ = writeln!(out, "chordless cycles: {}", self.chordless_cycles.len());
        for c in &self.chordless_cycles {
            let _ = writeln!(
                out,
                "  [{}] {} (arrows {})",
                c.points.join(" "),
                if c.oriented { "oriented" } else { "non-oriented" },
                c.arrows.join(" ")
            );
        }
        let _ = writeln!(
            out,
            "inner arrows ({}): {}",
            self.inner_arrows.len(),
            self.inner_arrows.join(" ")
        );
        let _ = writeln!(
            out,
            "outer arrows ({}): {}",
            self.outer_arrows.len(),
            self.outer_arrows.join(" ")
        );
        let _ = writeln!(out, "n (cycles - inner): {}", self.n_theorem);
        let _ = writeln!(out, "n (components + outer - points): {}", self.n_euler);
        let _ = writeln!(out, "hochschild degrees:");
        for d in &self.degrees {
            match (d.degree, d.mismatch) {
                (Some(v), _) => {
                    let _ = writeln!(out, "  point {}: {}", d.point, v);
                }
                (None, Some((del, loc))) => {
                    let _ = writeln!(
                        out,
                        "  point {}: mismatch (deletion {del}, local {loc})",
                        d.point
                    );
                }
                _ => {}
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for c in &self.caveats {
            let _ = writeln!(out, "caveat: {c}");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Hh1Report {
    pub dimension: usize,
    pub nilpotency_index: usize,
    pub centre_dimension: usize,
    pub der0_dimension: usize,
    pub int0_dimension: usize,
    pub hh1_dimension: usize,
}

impl Hh1Report {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra dimension: {}", self.dimension);
        let _ = writeln!(out, "nilpotency index: {}", self.nilpotency_index);
        let _ = writeln!(out, "centre dimension: {}", self.centre_dimension);
        let _ = writeln!(out, "dim Der0: {}", self.der0_dimension);
        let _ = writeln!(out, "dim Int0: {}", self.int0_dimension);
        let _ = writeln!(out, "dim HH1: {}", self.hh1_dimension);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivReport {
    pub new_arrows: Vec<String>,
    pub classes: Vec<Vec<String>>,
    pub invariant: usize,
}

impl EquivReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "new arrows: {}", self.new_arrows.join(" "));
        let _ = writeln!(out, "classes: {}", self.classes.len());
        for c in &self.classes {
            let _ = writeln!(out, "  {{{}}}", c.join(" "));
        }
        let _ = writeln!(out, "relation invariant: {}", self.invariant);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Computed but outside the proven scope; never fails the run.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
    pub consistent: bool,
}

impl CheckReport {
    pub fn new(lines: Vec<CheckLine>) -> Self {
        let consistent = lines.iter().all(|l| l.status != CheckStatus::Fail);
        CheckReport { lines, consistent }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let status = match l.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "info",
            };
            let _ = writeln!(out, "check {}: {} ({})", l.name, status, l.detail);
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.consistent {
                "consistent"
            } else {
                "inconsistent"
            }
        );
        out
    }
}

/// Output of the file-emitting subcommands (`extend`, `delete`).
#[derive(Debug, Clone, Serialize)]
pub struct FileReport {
    pub file: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub new_arrows: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub potential: Vec<String>,
}

impl FileReport {
    pub fn render(&self) -> String {
        self.file.clone()
    }
}
