//! Monomials, exact rational coefficients and the S-functions.

mod coefficient;
mod monomial;
mod poly;
mod sfunc;

pub use coefficient::{s_eval, s_r_eval, Coefficient, Factored, General, LimitGen};
pub use monomial::{gen_latex, Gen, Monomial, Subst};
pub use poly::Poly;
pub use sfunc::{latex_s, s_decompose, SFactor};
