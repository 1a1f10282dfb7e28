//! Structure functions, finite-dimensional unirreps of the deformed oscillator
//! algebra, and their comparison with the separated spectrum.

mod audit;
mod export;
mod structure;
mod unirreps;

pub use audit::{audit_cutoff, physical_comparison, AuditOptions, ComparisonReport, LevelCount, MultipletCoords};
pub use export::{render_csv, render_text, verify_spectrum, CSV_HEADER};
pub use structure::{energy_root, structure_function, StructureFunctionSpec};
pub use unirreps::{
    branch_energy, branch_u, final_structure_function, ptilde_max, solve_unirreps, Branch, Rejected, UnirrepSet,
    UnirrepSolution,
};
