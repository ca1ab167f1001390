//! Real-coefficient polynomial and rational-function algebra: the numeric
//! substrate for every spectral map. All values are immutable and every
//! operation is a pure function.

mod poly;
mod ratfunc;
mod roots;

pub use poly::{poly_quotient, Poly};
pub use ratfunc::{partial_fractions, PartialFraction, RatFunc};
pub use roots::real_roots;
