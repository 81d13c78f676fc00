//! The named invariants: walk counts N_m = e^T A^m e, the walk matrix,
//! eta = 2^{-floor(n/2)} |det W|, polynomial discriminants, and the
//! complement characteristic polynomial computed two independent ways.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, IntMatrix};
use crate::numtheory::{self, SquarefreeVerdict};
use crate::poly::IntPoly;

/// Walk counts N_0..N_M for one graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkProfile {
    pub graph_id: String,
    pub max_power: usize,
    /// Decimal strings; exact values.
    pub counts: Vec<String>,
}

impl WalkProfile {
    pub fn counts_bigint(&self) -> Vec<BigInt> {
        self.counts
            .iter()
            .map(|s| s.parse().expect("profile holds decimal integers"))
            .collect()
    }
}

/// N_m = e^T A^m e for m = 0..=max_power, by iterated matrix-vector
/// products starting from the all-one vector.
pub fn walk_counts(g: &Graph, max_power: usize) -> WalkProfile {
    let a = IntMatrix::from_graph(g);
    let mut v = vec![BigInt::one(); g.n()];
    let mut counts = Vec::with_capacity(max_power + 1);
    for m in 0..=max_power {
        counts.push(v.iter().sum::<BigInt>().to_string());
        if m < max_power {
            v = linalg::mat_vec(&a, &v).expect("dims agree");
        }
    }
    WalkProfile {
        graph_id: crate::graph::to_graph6(g).unwrap_or_else(|_| format!("n={}", g.n())),
        max_power,
        counts,
    }
}

/// Raw walk counts as integers, without the report wrapper.
pub fn walk_counts_raw(g: &Graph, max_power: usize) -> Vec<BigInt> {
    walk_counts(g, max_power).counts_bigint()
}

/// W(G) = [e, Ae, ..., A^{n-1}e], column j = A^j e.
pub fn walk_matrix(g: &Graph) -> IntMatrix {
    let n = g.n();
    let a = IntMatrix::from_graph(g);
    let mut w = IntMatrix::zeros(n);
    let mut v = vec![BigInt::one(); n];
    for j in 0..n {
        for i in 0..n {
            w.set(i, j, v[i].clone());
        }
        if j + 1 < n {
            v = linalg::mat_vec(&a, &v).expect("dims agree");
        }
    }
    w
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaCertificate {
    pub graph_id: String,
    /// det W(G), sign retained for debugging.
    pub det_walk: String,
    /// |det W| / 2^{floor(n/2)}, always an integer.
    pub eta: String,
    pub parity: Parity,
}

impl EtaCertificate {
    pub fn eta_bigint(&self) -> BigInt {
        self.eta.parse().expect("certificate holds a decimal integer")
    }
}

/// Compute eta(G). The claimed divisibility 2^{floor(n/2)} | det W is an
/// invariant of the theory; a violation aborts loudly.
pub fn eta(g: &Graph) -> Result<EtaCertificate> {
    let w = walk_matrix(g);
    let d = linalg::det(&w);
    let shift = g.n() / 2;
    let abs = d.abs();
    let eta = if abs.is_zero() {
        BigInt::zero()
    } else {
        if numtheory::two_adic_valuation(&abs) < shift as u64 {
            return Err(Error::TheoremViolation(format!(
                "2^{shift} does not divide det W = {d} for graph on {} vertices",
                g.n()
            )));
        }
        &abs >> shift
    };
    let parity = if num_integer::Integer::is_odd(&eta) { Parity::Odd } else { Parity::Even };
    Ok(EtaCertificate {
        graph_id: crate::graph::to_graph6(g).unwrap_or_else(|_| format!("n={}", g.n())),
        det_walk: d.to_string(),
        eta: eta.to_string(),
        parity,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub poly_id: String,
    pub delta: String,
    pub two_adic_valuation: u64,
    pub odd_part_squarefree: SquarefreeVerdict,
    pub trial_bound: u64,
}

/// Discriminant of a polynomial plus its odd-square-free analysis.
pub fn discriminant_report(p: &IntPoly, poly_id: &str, trial_bound: u64) -> Result<DiscriminantReport> {
    let delta = crate::poly::discriminant(p)?;
    if delta.is_zero() {
        return Ok(DiscriminantReport {
            poly_id: poly_id.into(),
            delta: "0".into(),
            two_adic_valuation: 0,
            odd_part_squarefree: SquarefreeVerdict::No,
            trial_bound,
        });
    }
    Ok(DiscriminantReport {
        poly_id: poly_id.into(),
        delta: delta.to_string(),
        two_adic_valuation: numtheory::two_adic_valuation(&delta),
        odd_part_squarefree: numtheory::odd_squarefree_check(&delta, trial_bound)?,
        trial_bound,
    })
}

/// phi of the complement, computed directly and revalidated through the
/// walk generating-series identity.
pub fn complement_char_poly(g: &Graph) -> Result<IntPoly> {
    let direct = linalg::char_poly(&IntMatrix::from_graph(&g.complement()));
    let phi = linalg::char_poly(&IntMatrix::from_graph(g));
    let profile = walk_counts(g, g.n());
    let via_walks = complement_poly_via_walks(&phi, &profile)?;
    if direct != via_walks {
        return Err(Error::TheoremViolation(format!(
            "complement char poly routes disagree: direct {direct} vs series {via_walks}"
        )));
    }
    Ok(direct)
}

/// Reconstruct phi of the complement from phi(G) and the walk counts via
/// the generating-series identity, entirely over the integers.
///
/// With P(t) = t^n phi(G; 1/t) and S(t) = 1 + sum_{m>=0} N_m t^{m+1}, the
/// product Q = P*S truncated at degree n satisfies
///   Q(t) = (-1)^n t^n phi(comp; -(t+1)/t),
/// and the coefficient map from phi(comp) to Q is triangular, so the
/// complement polynomial is recovered by exact back-substitution.
pub fn complement_poly_via_walks(phi: &IntPoly, profile: &WalkProfile) -> Result<IntPoly> {
    let n = phi
        .degree()
        .ok_or_else(|| Error::Domain("zero characteristic polynomial".into()))?;
    if !phi.is_monic() {
        return Err(Error::Domain("characteristic polynomial must be monic".into()));
    }
    let counts = profile.counts_bigint();
    if counts.len() < n + 1 {
        return Err(Error::Domain(format!(
            "walk profile covers m <= {}, need m <= {n}",
            counts.len().saturating_sub(1)
        )));
    }
    // P_i = coeff of x^{n-i} in phi
    let p: Vec<BigInt> = (0..=n).map(|i| phi.coeff(n - i)).collect();
    // S_0 = 1, S_j = N_{j-1}
    let s = |j: usize| -> BigInt {
        if j == 0 {
            BigInt::one()
        } else {
            counts[j - 1].clone()
        }
    };
    let q: Vec<BigInt> = (0..=n)
        .map(|k| (0..=k).map(|i| &p[i] * s(k - i)).sum())
        .collect();

    // Pascal triangle up to n
    let mut binom = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for (i, row) in binom.iter_mut().enumerate() {
        row[0] = BigInt::one();
        for k in 1..=i {
            // C(i,k) = C(i-1,k-1) + C(i-1,k); fill via symmetry-free additive pass
            row[k] = BigInt::zero();
        }
    }
    for i in 1..=n {
        for k in 1..=i {
            let v = &binom[i - 1][k - 1] + &binom[i - 1][k];
            binom[i][k] = v;
        }
    }

    // Solve (-1)^n Q_{n-r} = sum_{j>=r} (-1)^j b_j C(j, j-r) downward in r.
    let sign_n = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut b = vec![BigInt::zero(); n + 1];
    for r in (0..=n).rev() {
        let mut rhs = &sign_n * &q[n - r];
        for j in r + 1..=n {
            let sj = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            rhs -= sj * &b[j] * &binom[j][j - r];
        }
        let sr = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        b[r] = sr * rhs;
    }
    let out = IntPoly::from_coeffs(b);
    debug_assert!(out.is_monic() && out.degree() == Some(n));
    Ok(out)
}
