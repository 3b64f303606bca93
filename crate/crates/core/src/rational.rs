//! Rational helpers on top of `BigRational`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Renders `n` for integers and `n/d` otherwise.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n`, `n/d` or `-n/d`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(alloc::format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().numer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(x: &Q) -> i64 {
    x.ceil().numer().to_i64().expect("ceil out of i64 range")
}

pub fn dot(a: &[Q], b: &[i64]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(_, &y)| y != 0)
        .fold(Q::zero(), |acc, (x, &y)| acc + x * q(y))
}

pub fn dot_qq(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Smallest positive integer `k` with `k * v` integral, and that multiple.
pub fn clear_denominators(v: &[Q]) -> (BigInt, Vec<BigInt>) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    (l, scaled)
}

/// Primitive integral vector on the ray through `v` (which must be nonzero).
pub fn primitive_multiple(v: &[Q]) -> Vec<i64> {
    let (_, ints) = clear_denominators(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("coordinate out of i64 range"))
        .collect()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_q(&qf(6, 1)), "6");
        assert_eq!(format_q(&qf(5, 2)), "5/2");
        assert_eq!(format_q(&qf(-3, 6)), "-1/2");
    }

    #[test]
    fn parses_and_rejects() {
        assert_eq!(parse_q("3/2").unwrap(), qf(3, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), q(-4));
        assert_eq!(parse_q("6/4").unwrap(), qf(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn primitive_multiple_clears_and_divides() {
        assert_eq!(primitive_multiple(&[qf(1, 2), qf(3, 4)]), [2, 3]);
        assert_eq!(primitive_multiple(&[q(4), q(-6)]), [2, -3]);
    }
}
