//! Exact rational scalars and the float bridge.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! canonical form (positive denominator, reduced), so equality and hashing are
//! structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `"p/q"` text; the denominator is always written, even when 1.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// The exact dyadic value of a finite float.
pub fn from_f64_exact(v: f64) -> Option<Rational> {
    if v.is_finite() {
        Rational::from_float(v)
    } else {
        None
    }
}

/// Last continued-fraction convergent of `x` with denominator at most
/// `max_den`. The error is below `1 / (q * max_den)` where `q` is the
/// returned denominator.
pub fn best_convergent(x: &Rational, max_den: &BigInt) -> Rational {
    // convergents h/k built from the partial quotients of x
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let (a, rem) = num.div_mod_floor(&den);
        let k_next = &a * &k + &k_prev;
        if &k_next > max_den {
            break;
        }
        let h_next = &a * &h + &h_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if rem.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, rem);
    }
    Rational::new(h, k)
}

/// Converts floats to nearby rationals with denominators at most `max_den`.
pub fn rationalize(values: &[f64], max_den: u64) -> Result<Vec<Rational>> {
    if max_den == 0 {
        return Err(Error::InvalidArgument(
            "max_denominator must be >= 1".into(),
        ));
    }
    let bound = BigInt::from(max_den);
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let exact = from_f64_exact(v).ok_or(Error::NonFinite(i))?;
            Ok(best_convergent(&exact, &bound))
        })
        .collect()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

pub(crate) fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}

pub(crate) mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub(crate) mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
