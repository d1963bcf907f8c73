use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or just `p` when the value is an integer.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multisets of cardinality `n` drawn from `m` symbols, i.e. the
/// number of degree-`n` monomials in `m` variables.
pub fn multiset_number(m: u64, n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    if m == 0 {
        return BigUint::zero();
    }
    binomial(m + n - 1, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_multisets(m: u64, n: u64) -> u64 {
        // weakly increasing sequences of length n over 0..m
        fn go(start: u64, m: u64, left: u64) -> u64 {
            if left == 0 {
                return 1;
            }
            (start..m).map(|s| go(s, m, left - 1)).sum()
        }
        go(0, m, n)
    }

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_number(4, 2), BigUint::from(10u32));
        assert_eq!(multiset_number(7, 0), BigUint::one());
        assert_eq!(multiset_number(0, 0), BigUint::one());
        assert_eq!(multiset_number(0, 3), BigUint::zero());
        assert_eq!(multiset_number(1, 5), BigUint::one());
    }

    #[test]
    fn multiset_matches_enumeration() {
        for m in 0..6 {
            for n in 0..6 {
                assert_eq!(multiset_number(m, n), BigUint::from(brute_multisets(m, n)));
            }
        }
    }

    #[test]
    fn rat_strings_round_trip() {
        for s in ["0", "3", "-1/2", "7/3"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(format_rat(&rat(4, 8)), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
