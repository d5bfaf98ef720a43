//! Explicit cocycles at exponent level and the coboundary machinery used to
//! machine-check their defining identities.

pub mod cochain;
pub mod gerbe;
pub mod line;
pub mod universal;

pub use cochain::{BasePoint, Cochain, GroupElement};
pub use gerbe::{
    basis_sum_corrector, boundary_parts, holomorphic_term, imag_corrector, isogeny_pullback,
    isogeny_pullback_difference, mixed_two_cochain, real_corrector, six_term_boundary_closed,
    six_term_boundary_direct, structure_corrector, GerbeCocycle, SlotMultiplier,
};
pub use line::{covector_hodge, line_bundle_exponent, poincare_exponent, CocycleError, DualPoint};
pub use universal::{trivializer_exponent, universal_class_value, universal_exponent};
