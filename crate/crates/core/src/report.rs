use std::fmt;

/// Structured pass/fail outcome of a checker.
///
/// A failing report always carries the first counterexample witness in
/// lexicographic element order, so reports are reproducible across runs.
#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub details: Vec<(String, String)>,
}

impl Report {
    pub fn pass(name: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            pass: true,
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
            details: Vec::new(),
        }
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl fmt::Display) -> Report {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    /// Line-oriented `key=value` rendering; first line is the status.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status={}", if self.pass { "pass" } else { "fail" })?;
        writeln!(f, "check={}", self.name)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness={w}")?;
        }
        for (k, v) in &self.details {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
