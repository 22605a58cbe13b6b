//! Exact scalars: arbitrary precision rationals and integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zq(z: &Z) -> Q {
    Q::from_integer(z.clone())
}

/// Reduced `p/q` form, or just `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse("", format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse("", format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Integer value of `x`, if any.
pub fn as_int(x: &Q) -> Option<Z> {
    x.is_integer().then(|| x.to_integer())
}

pub fn as_i64(x: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    as_int(x).and_then(|z| z.to_i64())
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_z(base: &Q, exp: &Z) -> Q {
    use num_traits::ToPrimitive;
    let e = exp.to_i32().expect("exponent out of range");
    num_traits::pow::Pow::pow(base, e)
}

/// Exact `n`-th root of a rational. Even roots take the positive branch.
pub fn rational_root(value: &Q, n: u64) -> Option<Q> {
    if n == 1 {
        return Some(value.clone());
    }
    if value.is_zero() {
        return Some(Q::zero());
    }
    let negative = value.is_negative();
    if negative && n % 2 == 0 {
        return None;
    }
    let num = value.numer().abs();
    let den = value.denom().clone();
    let n32 = n as u32;
    let rn = num.nth_root(n32);
    let rd = den.nth_root(n32);
    if num_traits::pow(rn.clone(), n as usize) != num || num_traits::pow(rd.clone(), n as usize) != den {
        return None;
    }
    let r = Q::new(rn, rd);
    Some(if negative { -r } else { r })
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Z {
    xs.into_iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Z>) -> Z {
    xs.into_iter().fold(Z::zero(), |acc, x| acc.gcd(x))
}
