//! Exact rational arithmetic helpers.
//!
//! All loads and processing times are `BigRational` so that ties in the
//! scheduling rules are bit-exact; several worst-case constructions hinge on
//! exact ties that float arithmetic would scramble. `f64` conversion exists
//! for the exponential-potential computations and for report output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_u(n: usize) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion; every finite f64 is a dyadic rational.
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    BigRational::from_float(x).ok_or_else(|| Error::Parameter(format!("not a finite number: {x}")))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"7"`, `"-3/4"`, `"0.125"`, and scientific notation like `"1e-4"`,
/// all as exact rationals.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parameter("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parameter(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    // Decimal with optional exponent.
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e
                .parse()
                .map_err(|_| Error::Parameter(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(Error::Parameter(format!("bad number {s:?}")));
    } else {
        digits
    };
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::Parameter(format!("bad number {s:?}")))?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    })
}

/// Round-trippable text form: integers plainly, otherwise `num/den`.
pub fn format_exact(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `ceil(x)` as usize; errors when negative or absurdly large.
pub fn ceil_to_usize(x: &Rat) -> Result<usize> {
    if x.is_negative() {
        return Err(Error::Parameter(format!("expected non-negative, got {x}")));
    }
    x.ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Parameter(format!("{x} too large")))
}

pub fn is_one(x: &Rat) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_exponent() {
        assert_eq!(parse_rat("4/5").unwrap(), rat(4, 5));
        assert_eq!(parse_rat("0.8").unwrap(), rat(4, 5));
        assert_eq!(parse_rat("1.4812").unwrap(), rat(14812, 10000));
        assert_eq!(parse_rat("1e-4").unwrap(), rat(1, 10000));
        assert_eq!(parse_rat("-2.5e2").unwrap(), rat_int(-250));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn exact_format_round_trips() {
        for v in [rat(4, 5), rat_int(3), rat(-7, 3)] {
            assert_eq!(parse_rat(&format_exact(&v)).unwrap(), v);
        }
    }

    #[test]
    fn f64_conversion_is_exact_for_dyadics() {
        let v = rat_from_f64(0.375).unwrap();
        assert_eq!(v, rat(3, 8));
        assert_eq!(to_f64(&v), 0.375);
    }
}
