//! Tabular reports with pass/fail status.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
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
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub quantity: String,
    /// Empty for purely informational rows.
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub rows: Vec<Row>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            rows: Vec::new(),
        }
    }

    /// A row that is only reported.
    pub fn info(&mut self, quantity: impl Into<String>, computed: impl Into<String>) {
        self.rows.push(Row {
            quantity: quantity.into(),
            expected: String::new(),
            computed: computed.into(),
            status: Status::Pass,
        });
    }

    pub fn check(
        &mut self,
        quantity: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) {
        self.row(quantity, expected, computed, Status::from_bool(ok));
    }

    pub fn row(
        &mut self,
        quantity: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        status: Status,
    ) {
        self.rows.push(Row {
            quantity: quantity.into(),
            expected: expected.into(),
            computed: computed.into(),
            status,
        });
    }

    /// Fail if any row fails, otherwise inconclusive if any row is.
    pub fn status(&self) -> Status {
        if self.rows.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else if self.rows.iter().any(|r| r.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.status() != Status::Fail)
    }

    /// 0 when no section fails, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("== {} [{}]\n", s.name, s.status()));
            let wq = s.rows.iter().map(|r| r.quantity.chars().count()).max().unwrap_or(0);
            let we = s.rows.iter().map(|r| r.expected.chars().count()).max().unwrap_or(0);
            for r in &s.rows {
                let tag = if r.expected.is_empty() && r.status == Status::Pass {
                    "    ".to_string()
                } else {
                    format!("{:<4}", r.status.to_string().chars().take(4).collect::<String>())
                };
                out.push_str(&format!(
                    "  {} {:<wq$}  {:<we$}  {}\n",
                    tag,
                    r.quantity,
                    r.expected,
                    r.computed,
                    wq = wq,
                    we = we
                ));
            }
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}
