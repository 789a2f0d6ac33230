//! Pass/fail reports produced by the verification suites.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: usize,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: usize) -> Self {
        Check { name: name.into(), passed: true, cases, witness: None }
    }

    pub fn fail(name: impl Into<String>, cases: usize, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, cases, witness: Some(witness.into()) }
    }

    /// Passes iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, cases: usize, witness: Option<String>) -> Self {
        Check { name: name.into(), passed: witness.is_none(), cases, witness }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            if !other.title.is_empty() {
                c.name = format!("{}: {}", other.title, c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for c in &self.checks {
            match (&c.passed, &c.witness) {
                (true, _) => writeln!(f, "PASS {} [{} cases]", c.name, c.cases)?,
                (false, Some(w)) => writeln!(f, "FAIL({w}) {} [{} cases]", c.name, c.cases)?,
                (false, None) => writeln!(f, "FAIL {} [{} cases]", c.name, c.cases)?,
            }
        }
        Ok(())
    }
}
