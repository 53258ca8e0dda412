use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use super::formats::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::pipeline::{Caps, Status, VerificationReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
}

/// Everything a run depends on besides its input files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            caps: Caps::default(),
            format: OutputFormat::Json,
            out: None,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'a str,
    report: &'a VerificationReport,
}

/// Serializes a report. Output depends only on the report contents.
pub fn emit_report(report: &VerificationReport, cfg: &RunConfig) -> Result<String> {
    if report.steps.is_empty() {
        return Err(Error::EmptyReport);
    }
    match cfg.format {
        OutputFormat::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                report,
            };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Markdown => Ok(markdown(report)),
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn markdown(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}\n", r.title);
    let _ = writeln!(s, "- claim: `{}`", r.claim);
    let _ = writeln!(s, "- overall: **{}**", status(r.overall));
    let _ = writeln!(s, "- seed: {}", r.seed);
    let _ = writeln!(
        s,
        "- caps: closure {}, quotient {}, samples {}",
        r.caps.closure_cap,
        r.caps.quotient_cap,
        r.caps.samples.map_or("default".to_string(), |n| n.to_string())
    );
    if r.cap_exhausted {
        let _ = writeln!(s, "- cap exhausted: yes");
    }
    let _ = writeln!(s, "- schema: {SCHEMA_VERSION}");
    if !r.parameters.is_empty() {
        let _ = writeln!(s, "\n## Parameters\n");
        for (k, v) in &r.parameters {
            let _ = writeln!(s, "- {k}: {}", inline(v));
        }
    }
    let _ = writeln!(s, "\n## Steps");
    for step in &r.steps {
        let _ = writeln!(s, "\n### {}. {} [{}]\n", step.id, step.description, status(step.status));
        let _ = writeln!(s, "> {}\n", step.anchor);
        let evidence = serde_json::to_string_pretty(&step.evidence).expect("serializable");
        let _ = writeln!(s, "```json\n{evidence}\n```");
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "\n## Notes\n");
        for n in &r.notes {
            let _ = writeln!(s, "- {n}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Step;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo", "a demo", 7, &Caps::default());
        r.param("p", 3);
        r.push(Step::new(1, "one is one", "ℤ/2×ℤ/2").with("x", 1).pass_if(true));
        r
    }

    #[test]
    fn empty_report_rejected() {
        let r = VerificationReport::new("demo", "empty", 0, &Caps::default());
        assert_eq!(emit_report(&r, &RunConfig::default()), Err(Error::EmptyReport));
    }

    #[test]
    fn markdown_carries_anchor_and_seed() {
        let cfg = RunConfig {
            format: OutputFormat::Markdown,
            ..RunConfig::default()
        };
        let md = emit_report(&sample(), &cfg).unwrap();
        assert!(md.contains("> ℤ/2×ℤ/2"));
        assert!(md.contains("seed: 7"));
        assert!(md.contains("[PASS]"));
    }

    #[test]
    fn json_is_versioned_and_stable() {
        let cfg = RunConfig::default();
        let a = emit_report(&sample(), &cfg).unwrap();
        assert_eq!(a, emit_report(&sample(), &cfg).unwrap());
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["report"]["steps"][0]["status"], "Pass");
    }
}
