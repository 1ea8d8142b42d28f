use std::fmt::Write as _;

use qclab_core::structures::{AxiomReport, Failure};
use qclab_core::Error;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct Statement {
    pub name: String,
    pub passed: bool,
    pub report: AxiomReport,
}

/// Everything one invocation verified and wrote.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub statements: Vec<Statement>,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            passed: true,
            ..Default::default()
        }
    }

    pub fn push(&mut self, name: impl Into<String>, report: AxiomReport) -> bool {
        let passed = report.passed();
        self.passed &= passed;
        self.statements.push(Statement {
            name: name.into(),
            passed,
            report,
        });
        passed
    }

    pub fn artifact(&mut self, path: &std::path::Path) {
        self.artifacts.push(path.display().to_string());
    }

    /// Records an error that stems from the mathematics rather than the input.
    pub fn math_error(&mut self, e: &Error) -> bool {
        let (name, report) = match e {
            Error::Hypothesis { name, report } => (format!("hypothesis {name}"), report.clone()),
            Error::Consistency { name, report } => (format!("consistency {name}"), report.clone()),
            Error::InvalidBase(r) => ("base structure".to_string(), r.clone()),
            Error::InvalidLayerZero(r) => ("layer 0".to_string(), r.clone()),
            Error::NotCommutative(_)
            | Error::NonCommuting
            | Error::NotDerivation(_)
            | Error::BlockMixing
            | Error::NontrivialCarrier
            | Error::Degenerate(_) => {
                self.passed = false;
                self.error = Some(e.to_string());
                return true;
            }
            _ => return false,
        };
        self.push(name, report);
        self.passed = false;
        self.error = Some(e.to_string());
        true
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            if s.passed {
                let n = s.report.checked.len();
                let _ = writeln!(out, "PASS {} ({n} {})", s.name, plural(n, "identity", "identities"));
                continue;
            }
            let total: usize = s.report.failure_counts.values().sum();
            let _ = writeln!(
                out,
                "FAIL {} ({total} failing {})",
                s.name,
                plural(total, "tuple", "tuples")
            );
            for axiom in s.report.failing_axioms() {
                if let Some(f) = s.report.first_failure(&axiom) {
                    let _ = writeln!(out, "  {}", describe(f));
                }
            }
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "wrote {a}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(
            out,
            "{}: {}",
            self.command,
            if self.passed { "verified" } else { "failed" }
        );
        out
    }
}

fn describe(f: &Failure) -> String {
    let idx = f.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
    let res = f
        .residual
        .iter()
        .map(|(k, cs)| {
            format!(
                "{}: {}",
                k,
                cs.get(f.order).map(ToString::to_string).unwrap_or_default()
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    format!("{} at ({idx}), order {}, residual {res}", f.axiom, f.order)
}

fn plural<'a>(n: usize, one: &'a str, many: &'a str) -> &'a str {
    if n == 1 {
        one
    } else {
        many
    }
}
