use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// Result of one check inside a suite.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// Instances examined.
    pub count: u64,
    pub detail: String,
    /// First failing instance, in word-literal or structure-file syntax.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

/// What a check body hands back.
pub struct Outcome {
    pub count: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Outcome {
    pub fn pass(count: u64, detail: impl Into<String>) -> Self {
        Outcome { count, detail: detail.into(), counterexample: None }
    }

    /// Fails iff `counterexample` is set.
    pub fn new(count: u64, detail: impl Into<String>, counterexample: Option<String>) -> Self {
        Outcome { count, detail: detail.into(), counterexample }
    }
}

pub fn run_check(name: &'static str, body: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let out = body();
    let status = if out.counterexample.is_some() { Status::Fail } else { Status::Pass };
    Check {
        name,
        status,
        count: out.count,
        detail: out.detail,
        counterexample: out.counterexample,
        elapsed: start.elapsed(),
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// `SUITE <name> PASS|FAIL checks=<n> failures=<m>`.
    pub fn summary_line(&self) -> String {
        format!(
            "SUITE {} {} checks={} failures={}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.failures()
        )
    }

    /// Plain-text report; elapsed times only when `timings` is set, so default output is reproducible.
    pub fn render(&self, timings: bool) -> String {
        let mut out = format!("suite {}\n", self.name);
        for c in &self.checks {
            out.push_str(&format!("  {} {} n={}", c.status, c.name, c.count));
            if timings {
                out.push_str(&format!(" t={:.3}s", c.elapsed.as_secs_f64()));
            }
            if !c.detail.is_empty() {
                out.push_str(&format!(" {}", c.detail));
            }
            out.push('\n');
            if let Some(cx) = &c.counterexample {
                for line in cx.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }
}
