//! Products of the integrals `X+-`, the polynomials `P1`, `P2`, the generalized
//! Heisenberg and polynomial algebras, and the deformed-oscillator realization.

mod bivar;
mod products;
mod relations;
mod states;

pub use bivar::BivarPoly;
pub use products::{casimir_realization, compute_p1p2, product_polynomial, AlgebraSpec, CasimirRealization};
pub use relations::{
    export_p1p2, verify_algebra, verify_gha, verify_poly_algebra, verify_products_on_states, verify_realization,
};
pub use states::{OEPrime, Op, StateEngine, StateVector};
