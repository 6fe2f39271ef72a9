//! Exact arithmetic: big rationals, sparse Laurent polynomials in up to
//! three named variables, and quotients by binomial factors.

mod json;
mod laurent;
mod ratfn;

pub use json::{poly_from_json, poly_to_json, series_from_json, series_to_json, PolyJson, TermJson};
pub use laurent::{Exponents, Image, LaurentPoly, Vars, MAX_VARS};
pub use ratfn::{Binomial, RationalFn};

pub type Rational = num_rational::BigRational;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
