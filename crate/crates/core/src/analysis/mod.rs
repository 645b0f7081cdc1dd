//! Positivity scans, `1/j` expansions, quasimodular decomposition and the
//! identity regression suite.

mod decompose;
mod identities;
mod invj;
mod positivity;

pub use decompose::{decompose_quasimodular, modular_basis, QuasiDecomposition, QuasiPart};
pub use identities::{identity_suite, lattice_theta, IdentityCheck, IdentityReport, LATTICE_SOLUTIONS};
pub use invj::{expand_in_inv_j, CfTarget};
pub use positivity::{
    alpha_bound_check, char3_case_check, char3_closed_form, check_positivity, halfint_coefficients,
    halfint_sign_window, sigma_gap_identity, PositivityReport, PositivityStatus,
};
