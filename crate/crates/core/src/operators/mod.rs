//! Shift, ladder, supercharge and composite operators acting on eigenfunctions,
//! with their closed-form action coefficients.

pub mod closed;
mod composite;
mod ladder;
mod radical;
mod tables;

pub use composite::{apply_x, apply_x_product, OperatorAction};
pub use ladder::{apply_ladder, apply_lowering, apply_shift, apply_supercharge, Direction};
pub use radical::RadicalScalar;
pub use tables::verify_action_tables;
