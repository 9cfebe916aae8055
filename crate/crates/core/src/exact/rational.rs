use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PencilError, Result};

/// Exact scalar of every computation in the crate.
///
/// `BigRational` keeps itself in lowest terms with a positive denominator after
/// every operation, so no extra normalization is needed on top of it.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || PencilError::InvalidInput(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(PencilError::InvalidInput(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Wire encoding: `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators in `values` (1 for an empty slice).
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the integers, always nonnegative (0 for all-zero input).
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut g = BigInt::zero();
    for v in values {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    g.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-3, 4)), "-3/4");
        assert_eq!(format_rational(&ratio(8, 4)), "2");
    }

    #[test]
    fn lcm_and_gcd() {
        let v = [ratio(1, 4), ratio(1, 6), rat(3)];
        assert_eq!(denominator_lcm(&v), BigInt::from(12));
        let ints = [BigInt::from(-12), BigInt::from(18)];
        assert_eq!(gcd_all(&ints), BigInt::from(6));
        assert_eq!(gcd_all(&[] as &[BigInt]), BigInt::zero());
    }
}
