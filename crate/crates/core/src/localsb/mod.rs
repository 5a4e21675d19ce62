//! Standard bases in the local ring at the origin.
//!
//! Everything here works under the local degree order [`LocalOrder`], where
//! `1` is the largest monomial. Normal forms follow Mora's tangent-cone
//! algorithm, and the dimension of a quotient is the number of monomials
//! outside the leading ideal.

mod basis;
mod local_poly;
mod monomial_ideal;
mod normal_form;
mod order;

pub use basis::{standard_basis, SbOptions, StandardBasis};
pub use monomial_ideal::MonomialIdeal;
pub use normal_form::mora_normal_form;
pub use order::LocalOrder;

/// Default total-degree cap for intermediate remainders.
pub const DEFAULT_DEGREE_CAP: u32 = 60;
