use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

use crate::error::Error;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `p`, `-p`, or `p/q`; surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        let q = parse_rational("4/-6").unwrap();
        assert_eq!(format_rational(&q), "-2/3");
        assert_eq!(format_rational(&parse_rational(" 0/5 ").unwrap()), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
