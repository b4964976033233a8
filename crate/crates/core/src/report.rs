//! Pass/fail/skip reports with text and TSV rendering.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportItem {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: Option<String>) {
        self.items.push(ReportItem {
            name: name.into(),
            status,
            witness,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: Option<String>) {
        self.push(name, Status::from_bool(ok), witness);
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.push(name, Status::Skip, Some(why.into()));
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn get(&self, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|i| i.status)
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    /// 0 iff nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for item in &self.items {
            match format {
                Format::Text => {
                    out.push_str(&format!("PROP {} {}", item.name, item.status));
                    if let Some(w) = &item.witness {
                        out.push(' ');
                        out.push_str(w);
                    }
                }
                Format::Tsv => {
                    out.push_str(&format!(
                        "{}\t{}\t{}",
                        item.name,
                        item.status,
                        item.witness.as_deref().unwrap_or("")
                    ));
                }
            }
            out.push('\n');
        }
        out
    }
}
