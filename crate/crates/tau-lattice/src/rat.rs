//! Exact rational scalars over arbitrary-precision integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` as a rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: u32) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `2^k` as a rational, with negative exponents allowed.
pub fn pow2(k: i32) -> Rat {
    let two = rat(2);
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &two;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Parses "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Result<Rat, crate::Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational: {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational: {s:?}")))?;
    if d.is_zero() {
        return Err(crate::Error::Parse(format!("zero denominator: {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form: "p" or "p/q" with the sign on the numerator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else if r.denom().is_negative() {
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-3", "3/4", "-3/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn pow2_negative() {
        assert_eq!(pow2(-3), ratio(1, 8));
        assert_eq!(pow2(4), rat(16));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(5), rat(120));
    }
}
