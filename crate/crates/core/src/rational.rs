//! Exact rational weights.
//!
//! Every cost, bound and budget in the crate is a [`Rational`]. Rendering is
//! canonical (`p/q` in lowest terms, or a bare integer when `q = 1`) so output
//! is byte-stable.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Canonical text form: `p/q` or `p`.
pub fn render(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, a bare integer, or a finite decimal such as `1.5`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("'{text}' is not a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Parse(format!("'{text}' has a zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 12 {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w: i64 = if whole.is_empty() || whole == "-" || whole == "+" {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let mag = w.abs() * den + f;
        return Ok(Rational::new(if negative { -mag } else { mag }, den));
    }
    s.parse::<i64>().map(int).map_err(|_| bad())
}

/// Least common multiple of the denominators, used to scale costs into
/// integers for the search keys.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i64 {
    values
        .into_iter()
        .fold(1i64, |acc, r| acc.lcm(r.denom()))
}

/// Serialized form `{ "num": p, "den": q }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl TryFrom<RationalJson> for Rational {
    type Error = Error;

    fn try_from(j: RationalJson) -> Result<Rational> {
        if j.den == 0 {
            return Err(Error::Parse("rational with zero denominator".into()));
        }
        Ok(Rational::new(j.num, j.den))
    }
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub(crate) fn is_non_negative(r: &Rational) -> bool {
    r.is_zero() || r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(render(&ratio(6, 4)), "3/2");
        assert_eq!(render(&ratio(6, 3)), "2");
        assert_eq!(render(&ratio(-1, 3)), "-1/3");
        assert_eq!(render(&int(0)), "0");
    }

    #[test]
    fn parses_forms() {
        assert_eq!(parse("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse("2").unwrap(), int(2));
        assert_eq!(parse("1.5").unwrap(), ratio(3, 2));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn common_denominator_of_costs() {
        let v = [ratio(1, 2), ratio(2, 3), int(4)];
        assert_eq!(common_denominator(&v), 6);
    }
}
