//! Exact polynomials, truncated series and length generating functions.

mod closed;
mod enumerate;
mod poly;
mod series;

pub use closed::{
    affine_series, pochhammer, q_bracket, q_factorial, q_poly, type_a_plus, type_b_length,
    type_b_plus, Affine,
};
pub use enumerate::{gf_enumerated, gf_plus_from_quotient, Statistic};
pub use poly::{compare, Comparison, Monomial, MultiPoly, Var};
pub use series::TruncSeries;
