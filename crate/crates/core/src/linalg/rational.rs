use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Validation(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Validation(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}
