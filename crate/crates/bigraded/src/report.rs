//! Verification reports: typed check results, per-suite summaries, and
//! deterministic JSON output.
//!
//! A suite produces a flat list of [`Check`]s. Each check names the claim it
//! verifies (`anchor`), carries a `pass`/`fail`/`finding` status, and — for
//! anything other than a clean pass — a `witness` with the concrete
//! expressions involved. `finding` is reserved for documented-convention
//! probes: places where the implementation's result is recorded alongside a
//! differing printed form, or where a convention admits more than one
//! reading. Findings never affect the process exit code.
//!
//! Reports are deterministic: checks are sorted by id, all collections
//! serialize in a fixed order, and [`RunReport::canonical_json`] zeroes the
//! timing fields so two runs with the same seed and configuration produce
//! byte-identical output.

use serde::{Deserialize, Serialize};

/// Version stamp written into every report.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

/// One verified claim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    /// Stable machine id, unique within a suite; reports sort by it.
    pub id: String,
    /// The claim being checked, as a human-readable statement.
    pub anchor: String,
    pub status: Status,
    /// Concrete evidence: trial counts for randomized checks, both sides of
    /// a disagreement for failures and findings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(id: &str, anchor: &str) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_with(id: &str, anchor: &str, witness: String) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            witness: Some(witness),
        }
    }

    pub fn fail(id: &str, anchor: &str, witness: String) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn finding(id: &str, anchor: &str, witness: String) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Finding,
            witness: Some(witness),
        }
    }

    /// Pass/fail from a boolean, attaching the witness only on failure.
    pub fn expect(id: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) -> Check {
        if ok {
            Check::pass(id, anchor)
        } else {
            Check::fail(id, anchor, witness())
        }
    }
}

/// The kernel knobs a run was executed with; part of every report so results
/// can be reproduced.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelSnapshot {
    pub z_order: u32,
    pub seed: u64,
    pub trials: usize,
}

/// Results of one suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub findings: usize,
    /// Wall-clock time; excluded from canonical output.
    pub elapsed_ms: u128,
}

impl SuiteReport {
    /// Assemble a suite report: checks are sorted by id and tallied.
    pub fn new(suite: &str, mut checks: Vec<Check>, elapsed_ms: u128) -> SuiteReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        SuiteReport {
            suite: suite.into(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            findings: count(Status::Finding),
            checks,
            elapsed_ms,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// A full run: one or more suites under a single configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub report_version: u32,
    pub config: KernelSnapshot,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn new(config: KernelSnapshot, suites: Vec<SuiteReport>) -> RunReport {
        RunReport {
            report_version: REPORT_VERSION,
            config,
            suites,
        }
    }

    /// True iff no check failed anywhere (findings do not count).
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.ok())
    }

    /// Full JSON, timing included.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with timing zeroed: byte-identical across runs with the same
    /// seed and configuration.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        for s in &mut copy.suites {
            s.elapsed_ms = 0;
        }
        copy.to_json()
    }

    /// Plain-text rendering: a summary line per suite, one line per check,
    /// witnesses indented under non-passing checks.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "suite {}: {} checks | {} passed | {} failed | {} findings | {} ms\n",
                s.suite,
                s.checks.len(),
                s.passed,
                s.failed,
                s.findings,
                s.elapsed_ms
            ));
            for c in &s.checks {
                let tag = match c.status {
                    Status::Pass => "PASS   ",
                    Status::Fail => "FAIL   ",
                    Status::Finding => "FINDING",
                };
                out.push_str(&format!("  {tag} {:<34} {}\n", c.id, c.anchor));
                if c.status != Status::Pass {
                    if let Some(w) = &c.witness {
                        for line in w.lines() {
                            out.push_str(&format!("          | {line}\n"));
                        }
                    }
                }
            }
        }
        let (p, f, n): (usize, usize, usize) = self.suites.iter().fold((0, 0, 0), |acc, s| {
            (acc.0 + s.passed, acc.1 + s.failed, acc.2 + s.findings)
        });
        out.push_str(&format!(
            "total: {p} passed, {f} failed, {n} findings — {}\n",
            if f == 0 { "OK" } else { "FAILED" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_sort_and_findings_do_not_fail_a_run() {
        let checks = vec![
            Check::finding("b-note", "a recorded convention difference", "details".into()),
            Check::pass("a-first", "an identity"),
            Check::pass_with("c-last", "a randomized property", "12 trials".into()),
        ];
        let suite = SuiteReport::new("demo", checks, 5);
        assert_eq!(
            suite.checks.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(),
            ["a-first", "b-note", "c-last"]
        );
        assert_eq!((suite.passed, suite.failed, suite.findings), (2, 0, 1));
        let run = RunReport::new(
            KernelSnapshot {
                z_order: 1,
                seed: 7,
                trials: 10,
            },
            vec![suite],
        );
        assert!(run.ok());
        let text = run.render_text();
        assert!(text.contains("FINDING"));
        assert!(text.ends_with("OK\n"));
    }

    #[test]
    fn canonical_json_is_timing_independent() {
        let mk = |ms| {
            RunReport::new(
                KernelSnapshot {
                    z_order: 1,
                    seed: 42,
                    trials: 3,
                },
                vec![SuiteReport::new(
                    "demo",
                    vec![Check::pass("only", "an identity")],
                    ms,
                )],
            )
        };
        assert_ne!(mk(3).to_json(), mk(9).to_json());
        assert_eq!(mk(3).canonical_json(), mk(9).canonical_json());
        // Failures flip the exit signal; findings still don't.
        let bad = RunReport::new(
            KernelSnapshot {
                z_order: 1,
                seed: 42,
                trials: 3,
            },
            vec![SuiteReport::new(
                "demo",
                vec![Check::fail("only", "an identity", "lhs != rhs".into())],
                0,
            )],
        );
        assert!(!bad.ok());
        assert!(bad.render_text().ends_with("FAILED\n"));
    }
}
