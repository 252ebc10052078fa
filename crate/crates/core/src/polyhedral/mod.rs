//! Linear forms, the operators `S_k`, windows of `Θ_ι` and the membership
//! tests for the image of `B(∞)`.

mod closed_form;
mod form;
mod membership;
mod theta;

pub use closed_form::{rank2_member, rank3_member};
pub use form::LinearForm;
pub use membership::{
    gamma_member_all_imaginary, gamma_member_general, gamma_member_single_real, Clause,
    GammaTester, TesterStats, Verdict,
};
pub use theta::{
    beta_form, check_positivity, generate_theta, generate_theta_excluding, s_j_coordinate, s_k,
    PositivityViolation, ThetaLimits, ThetaSet,
};
