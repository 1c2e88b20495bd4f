use std::fmt;

use super::fmt_simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindingKind {
    /// A dimension matrix whose determinant is not ±1.
    Determinant { det: String },
    /// Dimension matrices that should agree but do not.
    DimensionMismatch { detail: String },
    /// A non-invertible morphism entry.
    SingularEntry { entry: (usize, usize) },
    /// A coherence equation failing at a matrix position.
    Equation {
        entry: (usize, usize),
        position: (usize, usize),
        left: String,
        right: String,
    },
}

/// One failed check, located at a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub simplex: Vec<usize>,
    pub kind: FindingKind,
}

impl Finding {
    pub fn simplex_kind(&self) -> &'static str {
        match self.simplex.len() {
            1 => "vertex",
            2 => "edge",
            3 => "triangle",
            4 => "tetrahedron",
            _ => "simplex",
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "INVALID at {} {}: ", self.simplex_kind(), fmt_simplex(&self.simplex))?;
        match &self.kind {
            FindingKind::Determinant { det } => write!(f, "determinant {det} is not ±1"),
            FindingKind::DimensionMismatch { detail } => write!(f, "dimension mismatch: {detail}"),
            FindingKind::SingularEntry { entry } => {
                write!(f, "entry ({},{}) is not invertible", entry.0, entry.1)
            }
            FindingKind::Equation {
                entry,
                position,
                left,
                right,
            } => write!(
                f,
                "entry ({},{}) differs at ({},{}): {left} vs {right}",
                entry.0, entry.1, position.0, position.1
            ),
        }
    }
}

/// Findings sorted by simplex; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new(mut findings: Vec<Finding>) -> Self {
        findings.sort_by(|a, b| a.simplex.cmp(&b.simplex));
        ValidationReport { findings }
    }

    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    /// Simplices of the given dimension that carry a finding.
    pub fn failing(&self, dim: usize) -> Vec<&[usize]> {
        let mut out: Vec<&[usize]> = self
            .findings
            .iter()
            .filter(|f| f.simplex.len() == dim + 1)
            .map(|f| f.simplex.as_slice())
            .collect();
        out.dedup();
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "VALID");
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}
