//! Validation findings shared by every checker in the crate.

use std::fmt;

/// The family of axiom a finding belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    MissingTableEntry,
    BoundaryMismatch,
    UnitViolation,
    AssociativityViolation,
    InterchangeViolation,
    FunctorViolation,
    NormalizationViolation,
    NaturalityViolation,
    CocycleViolation,
    HexagonViolation,
    VerticalFunctorialityViolation,
    HorizontalSquareViolation,
    ZetaCocycleViolation,
    NonStrictTensor,
    ActionAxiomViolation,
    SimplicialIdentity,
    DegeneracyFlag,
    MapNotSimplicial,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: String,
}

/// An ordered list of violations; empty iff every checked axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, kind: ViolationKind, witness: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            witness: witness.into(),
        });
    }

    /// Records a violation when `holds` is false; the witness is built lazily.
    pub fn require(&mut self, holds: bool, kind: ViolationKind, witness: impl FnOnce() -> String) {
        if !holds {
            self.push(kind, witness());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn extend(&mut self, other: ValidationReport, context: &str) {
        for v in other.violations {
            self.violations.push(Violation {
                kind: v.kind,
                witness: if context.is_empty() {
                    v.witness
                } else {
                    format!("{context}: {}", v.witness)
                },
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "OK valid");
        }
        for v in &self.violations {
            writeln!(f, "FAIL {}: {}", v.kind, v.witness)?;
        }
        Ok(())
    }
}
