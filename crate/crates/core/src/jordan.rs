//! Exact Jordan-constant bounds for automorphism groups.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dimension above which the orthogonal-group bound on the finite part is known to hold.
pub const VALIDITY_THRESHOLD: u64 = 10;

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn pow2(k: u64) -> BigUint {
    BigUint::one() << k
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    /// `2n - 2`.
    pub d: u64,
    #[serde(serialize_with = "as_decimal")]
    pub gamma_bound: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub jordan_bound: BigUint,
    /// `4^d (d!)^2 ((d/2 + 1)^2)!`, the same number written in `d`.
    #[serde(serialize_with = "as_decimal")]
    pub dimension_form: BigUint,
    pub forms_agree: bool,
    pub validity_note: String,
}

/// `2^d d!`, the order of the signed permutation group `O_d(Z)`.
pub fn gamma_bound(d: u64) -> Result<BigUint> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("d = {d} must be even and at least 2")));
    }
    Ok(pow2(d) * factorial(d))
}

pub fn validity_note(d: u64) -> String {
    if d > VALIDITY_THRESHOLD {
        format!("valid: d = {d} > {VALIDITY_THRESHOLD}")
    } else {
        format!("caveat: d = {d} <= {VALIDITY_THRESHOLD}, the bound on the finite part is only established for d > {VALIDITY_THRESHOLD}")
    }
}

/// `2^(4n-4) ((2n-2)!)^2 (n^2)!`, together with its form in `d = 2n - 2`.
pub fn jordan_upper_bound(n: u64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    let d = 2 * n - 2;
    let gamma = gamma_bound(d)?;
    let f = factorial(2 * n - 2);
    let jordan_bound = pow2(4 * n - 4) * &f * &f * factorial(n * n);
    let df = factorial(d);
    let half = d / 2 + 1;
    let dimension_form = pow2(2 * d) * &df * &df * factorial(half * half);
    let forms_agree = jordan_bound == dimension_form && jordan_bound == &gamma * &gamma * factorial(n * n);
    Ok(BoundReport { n, d, gamma_bound: gamma, jordan_bound, dimension_form, forms_agree, validity_note: validity_note(d) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gamma_bound(2).unwrap(), BigUint::from(8u32));
        assert_eq!(gamma_bound(4).unwrap(), BigUint::from(384u32));
        assert!(gamma_bound(3).is_err() && gamma_bound(0).is_err());
        let r = jordan_upper_bound(2).unwrap();
        assert_eq!(r.jordan_bound, BigUint::from(1536u32));
        assert!(r.forms_agree);
        assert!(r.validity_note.starts_with("caveat"));
        assert!(jordan_upper_bound(7).unwrap().validity_note.starts_with("valid"));
        assert!(jordan_upper_bound(1).is_err());
    }
}
