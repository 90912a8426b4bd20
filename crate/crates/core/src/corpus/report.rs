//! Report documents and their human and machine renderings.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use super::format::FORMAT_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Vacuous,
    Fail,
}

impl Verdict {
    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }

    /// `Fail` dominates `Pass`, which dominates `Vacuous`.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Pass, _) | (_, Pass) => Pass,
            _ => Vacuous,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "vacuous",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Machine,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "human" => Ok(ReportFormat::Human),
            "machine" => Ok(ReportFormat::Machine),
            _ => Err(crate::Error::input(format!("unknown report format `{s}`"))),
        }
    }
}

/// One row: a check of one kind on one group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub group: String,
    /// Lemma identifier, or the name of the check (`audit`, `check`, ...).
    pub lemma: String,
    pub verdict: Verdict,
    pub note: Option<String>,
    /// Exponent vectors and parameters that reproduce a failure.
    pub counterexample: Option<Value>,
    pub details: Value,
    /// Wall-clock milliseconds; only filled in when explicitly requested so
    /// that machine output stays reproducible.
    pub timings: Option<f64>,
}

impl ReportEntry {
    pub fn new(group: impl Into<String>, lemma: impl Into<String>, verdict: Verdict) -> Self {
        ReportEntry {
            group: group.into(),
            lemma: lemma.into(),
            verdict,
            note: None,
            counterexample: None,
            details: Value::Null,
            timings: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn any_fail(&self) -> bool {
        self.entries.iter().any(|e| e.verdict.is_fail())
    }
}

#[derive(Serialize)]
struct MachineDocument<'a> {
    format_version: u32,
    entries: &'a [ReportEntry],
    summary: Summary,
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    vacuous: usize,
    fail: usize,
}

fn summary(report: &Report) -> Summary {
    let count = |v| report.entries.iter().filter(|e| e.verdict == v).count();
    Summary {
        pass: count(Verdict::Pass),
        vacuous: count(Verdict::Vacuous),
        fail: count(Verdict::Fail),
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Machine => {
            let doc = MachineDocument {
                format_version: FORMAT_VERSION,
                entries: &report.entries,
                summary: summary(report),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Human => human(report),
    }
}

fn human(report: &Report) -> String {
    let gw = report
        .entries
        .iter()
        .map(|e| e.group.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let lw = report
        .entries
        .iter()
        .map(|e| e.lemma.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = format!(
        "{:<gw$}  {:<lw$}  {:<7}  note\n",
        "group", "check", "verdict"
    );
    for e in &report.entries {
        let mut note = e.note.clone().unwrap_or_default();
        if let Some(ms) = e.timings {
            note = format!("{note} [{ms:.1} ms]").trim_start().to_string();
        }
        out.push_str(
            format!(
                "{:<gw$}  {:<lw$}  {:<7}  {}\n",
                e.group,
                e.lemma,
                e.verdict.to_string(),
                note
            )
            .trim_end(),
        );
        out.push('\n');
        if let Some(c) = &e.counterexample {
            out.push_str(&format!("{:gw$}  counterexample: {c}\n", ""));
        }
    }
    let s = summary(report);
    out.push_str(&format!(
        "{} pass, {} vacuous, {} fail\n",
        s.pass, s.vacuous, s.fail
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::default();
        r.push(ReportEntry::new("dihedral:8", "D", Verdict::Pass));
        let mut v = ReportEntry::new("quaternion:8", "R", Verdict::Vacuous);
        v.note = Some("unmet hypothesis: (G')^2 = 1".into());
        r.push(v);
        let mut f = ReportEntry::new("file.pc", "index2", Verdict::Fail);
        f.counterexample = Some(json!({"x": [1, 0, 0]}));
        r.push(f);
        r
    }

    #[test]
    fn machine_keys_and_verdicts() {
        let text = emit_report(&sample(), ReportFormat::Machine);
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["format_version"], 1);
        let e = &doc["entries"];
        assert_eq!(e[0]["verdict"], "pass");
        assert_eq!(e[1]["verdict"], "vacuous");
        assert!(e[1]["note"].as_str().unwrap().contains("unmet"));
        assert_eq!(e[2]["counterexample"]["x"], json!([1, 0, 0]));
        for key in ["group", "lemma", "verdict", "counterexample", "timings"] {
            assert!(e[0].get(key).is_some(), "{key}");
        }
        assert_eq!(doc["summary"]["fail"], 1);
    }

    #[test]
    fn human_is_aligned() {
        let text = emit_report(&sample(), ReportFormat::Human);
        let lines: Vec<&str> = text.lines().collect();
        let col = lines[0].find("check").unwrap();
        assert_eq!(lines[1].find('D'), Some(col));
        assert!(text.ends_with("1 pass, 1 vacuous, 1 fail\n"));
    }

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Vacuous.combine(Pass), Pass);
        assert_eq!(Pass.combine(Fail), Fail);
        assert_eq!(Vacuous.combine(Vacuous), Vacuous);
    }
}
