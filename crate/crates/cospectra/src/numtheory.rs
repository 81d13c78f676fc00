//! Integer square-free analysis by trial division plus a perfect-square
//! test on the unfactored cofactor. "Unknown" is an honest verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquarefreeVerdict {
    Yes,
    No,
    Unknown,
}

pub fn two_adic_valuation(n: &BigInt) -> u64 {
    assert!(!n.is_zero());
    n.trailing_zeros().expect("nonzero")
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Decide whether the odd part of |N| is square-free.
///
/// Strips all factors of 2, trial-divides the odd part by odd numbers up to
/// `trial_bound`, and resolves any remaining cofactor when possible: a
/// cofactor below bound^2 is prime, one below bound^3 that is not a perfect
/// square has at most two distinct prime factors, hence square-free.
pub fn odd_squarefree_check(n: &BigInt, trial_bound: u64) -> Result<SquarefreeVerdict> {
    if n.is_zero() {
        return Err(Error::Domain(
            "discriminant zero: repeated eigenvalues, criterion inapplicable".into(),
        ));
    }
    let mut odd = n.abs() >> two_adic_valuation(n);
    let mut d = 3u64;
    while d <= trial_bound {
        let db = BigInt::from(d);
        if &db * &db > odd {
            break;
        }
        if odd.is_multiple_of(&db) {
            odd /= &db;
            if odd.is_multiple_of(&db) {
                return Ok(SquarefreeVerdict::No);
            }
        }
        d += 2;
    }
    if odd.is_one() {
        return Ok(SquarefreeVerdict::Yes);
    }
    let bound = BigInt::from(trial_bound);
    if odd < &bound * &bound {
        // all factors exceed the bound yet the cofactor is below bound^2: prime
        return Ok(SquarefreeVerdict::Yes);
    }
    if is_perfect_square(&odd) {
        return Ok(SquarefreeVerdict::No);
    }
    if odd < &bound * &bound * &bound {
        // at most two primes, and not a square
        return Ok(SquarefreeVerdict::Yes);
    }
    Ok(SquarefreeVerdict::Unknown)
}

/// Square-free verdict for a positive odd integer (used for eta).
pub fn odd_integer_squarefree(n: &BigInt, trial_bound: u64) -> Result<SquarefreeVerdict> {
    if n.is_zero() {
        return Err(Error::Domain("squarefree check on zero".into()));
    }
    odd_squarefree_check(n, trial_bound)
}
