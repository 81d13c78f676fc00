//! Univariate polynomials over arbitrary-precision integers, with the
//! Sylvester-resultant route to discriminants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of x^i.
/// The zero polynomial is the empty list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    /// Build from low-to-high coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients reduced into {0..m-1}.
    pub fn mod_coeffs(&self, m: u64) -> Vec<u64> {
        let m = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c % &m;
                let r = if r.is_negative() { r + &m } else { r };
                u64::try_from(r).unwrap()
            })
            .collect()
    }

    /// True iff every coefficient of self - other is divisible by m.
    pub fn congruent_mod(&self, other: &IntPoly, m: u64) -> bool {
        let m = BigInt::from(m);
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| ((self.coeff(i) - other.coeff(i)) % &m).is_zero())
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
        }
        Ok(())
    }
}

/// Resultant of p and q as the Bareiss determinant of their Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let dp = p
        .degree()
        .ok_or_else(|| Error::Domain("resultant of zero polynomial".into()))?;
    let dq = q
        .degree()
        .ok_or_else(|| Error::Domain("resultant of zero polynomial".into()))?;
    if dp == 0 && dq == 0 {
        return Ok(BigInt::one());
    }
    let n = dp + dq;
    let mut syl = crate::linalg::IntMatrix::zeros(n);
    // dq rows of p's coefficients, then dp rows of q's
    for r in 0..dq {
        for (j, c) in p.coeffs.iter().rev().enumerate() {
            syl.set(r, r + j, c.clone());
        }
    }
    for r in 0..dp {
        for (j, c) in q.coeffs.iter().rev().enumerate() {
            syl.set(dq + r, r + j, c.clone());
        }
    }
    Ok(crate::linalg::det(&syl))
}

/// Discriminant of p: (-1)^{d(d-1)/2} * Res(p, p') / lc(p).
/// Zero iff p has a repeated complex root.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    let d = p
        .degree()
        .ok_or_else(|| Error::Domain("discriminant of zero polynomial".into()))?;
    if d < 1 {
        return Err(Error::Domain("discriminant requires degree >= 1".into()));
    }
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading().unwrap();
    let (quot, rem) = num_integer::Integer::div_rem(&res, lc);
    if !rem.is_zero() {
        return Err(Error::Domain("leading coefficient does not divide resultant".into()));
    }
    let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(quot * BigInt::from(sign))
}
