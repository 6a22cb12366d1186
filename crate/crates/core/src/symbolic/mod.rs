//! Exact polynomial and rational-function arithmetic, weighted gradings and
//! the expression parser.

pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod weight;

pub use parse::parse_expr;
pub use poly::{fmt_q, q, qr, Monomial, Poly, VarSet, Q};
pub use ratfn::RationalFn;
pub use weight::{weighted_decompose, WeightVector};
