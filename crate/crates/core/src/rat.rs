//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Rat`] (arbitrary-precision
//! rational); no floating point is used anywhere in rank decisions or
//! identities. Serialized form is `p` or `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;

pub type Rat = BigRational;

/// The rational p/q. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer p as a rational.
pub fn rint(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    t.parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("invalid rational `{t}`")))
}

/// Canonical text form, `p` or `p/q` in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}
