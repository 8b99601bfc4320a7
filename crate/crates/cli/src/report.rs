use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One reported quantity: `text` is what the terminal shows, `value` what JSON carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub text: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    /// Result the verdicts in this section rest on.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theorem: Option<String>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub sections: Vec<Section>,
}

impl Section {
    pub fn new(title: &str) -> Self {
        Section { title: title.into(), theorem: None, entries: Vec::new() }
    }

    pub fn cite(mut self, theorem: &str) -> Self {
        self.theorem = Some(theorem.into());
        self
    }

    pub fn entry(mut self, key: &str, text: impl Into<String>, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.entries.push(Entry { key: key.into(), text: text.into(), value });
        self
    }

    /// An entry whose text is its own display and whose value is the displayed string.
    pub fn text(self, key: &str, text: impl fmt::Display) -> Self {
        let s = text.to_string();
        self.entry(key, s.clone(), s)
    }

    pub fn flag(self, key: &str, b: bool) -> Self {
        self.entry(key, b.to_string(), b)
    }
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report { command: command.to_vec(), sections: Vec::new() }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "$ lpa {}", self.command.join(" "))?;
        for s in &self.sections {
            writeln!(f)?;
            writeln!(f, "[{}]", s.title)?;
            for e in &s.entries {
                if e.text.contains('\n') {
                    writeln!(f, "{}:", e.key)?;
                    for line in e.text.lines() {
                        writeln!(f, "  {line}")?;
                    }
                } else {
                    writeln!(f, "{}: {}", e.key, e.text)?;
                }
            }
            if let Some(t) = &s.theorem {
                writeln!(f, "by: {t}")?;
            }
        }
        Ok(())
    }
}
