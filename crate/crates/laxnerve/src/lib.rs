//! A workbench for finite 2-categories: nerves, geometric nerves, homotopy-fibre and
//! Grothendieck 2-categories, homotopy colimits, and exact integral homology checks.

pub mod cli;
pub mod fibres;
pub mod grothendieck;
pub mod hocolim;
pub mod invariants;
pub mod nerves;
pub mod report;
pub mod simplicial;
pub mod twocat;

pub use report::{ValidationReport, Violation, ViolationKind};
pub use twocat::{DefId, MorId, ObjId, TwoCategory};

/// Default truncation dimension.
pub const DEFAULT_CAP: usize = 4;
/// Default enumeration budget in candidate cells.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
