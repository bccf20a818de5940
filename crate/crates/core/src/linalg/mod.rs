//! Exact arithmetic: rationals, rational rank/nullspace, integer normal forms.

mod int;
mod rat;
mod rational;

pub use int::{hermite_normal_form, lattice_membership, smith_normal_form, IntMatrix, Membership, Smith};
pub use rat::{rat_rank, RatMatrix, RowEchelon};
pub use rational::{format_rational, parse_rational, Rational};
