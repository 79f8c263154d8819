//! Report types and their JSON, CSV, and text forms. Nothing here depends on
//! timing, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theorem {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "lemma")]
    Lemma,
    #[serde(rename = "goh")]
    Goh,
    #[serde(rename = "equality")]
    Equality,
    #[serde(rename = "two_prime")]
    TwoPrime,
    #[serde(rename = "burnside")]
    Burnside,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::A => "A",
            Theorem::Lemma => "lemma",
            Theorem::Goh => "goh",
            Theorem::Equality => "equality",
            Theorem::TwoPrime => "two_prime",
            Theorem::Burnside => "burnside",
        }
    }

    /// The detail entry shown in the CSV `detail_value` column.
    pub fn key_detail(self) -> &'static str {
        match self {
            Theorem::A => "quotient",
            Theorem::Lemma => "s",
            Theorem::Goh => "p",
            Theorem::Equality => "g_m",
            Theorem::TwoPrime => "large_prime_count",
            Theorem::Burnside => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Fails as the statement itself predicts, or lies outside its hypothesis.
    ExpectedException,
    /// Not checkable here; kept so it is not silently dropped.
    Unverified,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ExpectedException => "expected_exception",
            CheckStatus::Unverified => "unverified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub theorem: Theorem,
    pub group_id: String,
    pub passed: bool,
    pub status: CheckStatus,
    /// Every number the verdict uses, as decimal strings.
    pub detail: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremCheck {
    pub fn new(
        theorem: Theorem,
        group_id: &str,
        status: CheckStatus,
        detail: BTreeMap<String, String>,
    ) -> Self {
        TheoremCheck {
            theorem,
            group_id: group_id.to_string(),
            passed: status == CheckStatus::Pass,
            status,
            detail,
            note: None,
        }
    }

    pub fn detail_value(&self, key: &str) -> Option<&str> {
        self.detail.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub expected_exceptions: usize,
    pub unverified: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<TheoremCheck>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, checks: Vec<TheoremCheck>) -> Self {
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                CheckStatus::Pass => summary.passed += 1,
                CheckStatus::Fail => summary.failed += 1,
                CheckStatus::ExpectedException => summary.expected_exceptions += 1,
                CheckStatus::Unverified => summary.unverified += 1,
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            checks,
            summary,
        }
    }

    /// No check failed unexpectedly.
    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub const CSV_HEADER: [&'static str; 8] = [
        "theorem",
        "group_id",
        "passed",
        "m",
        "order",
        "detail_key",
        "detail_value",
        "status",
    ];

    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for c in &self.checks {
            let key = c.theorem.key_detail();
            w.write_record([
                c.theorem.name(),
                &c.group_id,
                if c.passed { "true" } else { "false" },
                c.detail_value("m").unwrap_or(""),
                c.detail_value("order").unwrap_or(""),
                key,
                c.detail_value(key).unwrap_or(""),
                c.status.name(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {} {}",
                c.theorem.name(),
                c.group_id,
                c.status.name()
            );
            for (k, v) in &c.detail {
                let _ = write!(out, " {k}={v}");
            }
            if let Some(note) = &c.note {
                let _ = write!(out, " # {note}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", self.summary_line());
        out
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        format!(
            "{}: {} checks, {} passed, {} failed, {} expected exceptions, {} unverified",
            self.suite, s.total, s.passed, s.failed, s.expected_exceptions, s.unverified
        )
    }
}
