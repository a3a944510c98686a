use alloc::string::String;
use alloc::vec::Vec;

/// One axiom or identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    /// Largest residual seen, for tolerance-based checks.
    pub max_residual: Option<f64>,
    /// First counterexample, for exhaustive checks.
    pub witness: Option<String>,
}

/// Pass/fail record of a validation pass.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub entries: Vec<CheckEntry>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub(crate) fn exact(&mut self, name: &str, witness: Option<String>) {
        self.entries.push(CheckEntry { name: name.into(), passed: witness.is_none(), max_residual: None, witness });
    }

    pub(crate) fn residual(&mut self, name: &str, residual: f64, tol: f64) {
        self.entries.push(CheckEntry {
            name: name.into(),
            passed: residual <= tol,
            max_residual: Some(residual),
            witness: None,
        });
    }
}
