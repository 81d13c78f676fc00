//! Explicit closed-walk enumeration with the translation/converse
//! structure: the brute-force oracle behind the congruence theorems.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants;
use crate::linalg::{self, IntMatrix};

/// Default hard cap on estimated enumeration steps.
pub const DEFAULT_WORK_CAP: u128 = 100_000_000;

/// Effective enumeration cap; the COSPECTRA_CAP environment variable
/// overrides the default.
pub fn work_cap() -> u128 {
    std::env::var("COSPECTRA_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WORK_CAP)
}

fn check_cap(g: &Graph, m: usize) -> Result<()> {
    // work estimate n * maxdeg^{m-1}
    let d = g.max_degree() as u128;
    let mut est = g.n() as u128;
    for _ in 1..m {
        est = est.saturating_mul(d.max(1));
        if est > work_cap() {
            break;
        }
    }
    if est > work_cap() {
        return Err(Error::Resource(format!(
            "estimated {est} steps for n={}, m={m} exceeds cap {}",
            g.n(),
            work_cap()
        )));
    }
    Ok(())
}

/// A closed walk (c_1, ..., c_m) with the closure edge (c_m, c_1) implicit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClosedWalk {
    verts: Vec<u8>,
}

impl ClosedWalk {
    pub fn new(g: &Graph, verts: Vec<u8>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::Domain("closed walk must have positive length".into()));
        }
        let m = verts.len();
        for i in 0..m {
            let u = verts[i] as usize;
            let v = verts[(i + 1) % m] as usize;
            if u >= g.n() || v >= g.n() || !g.adj(u, v) {
                return Err(Error::Domain(format!(
                    "({u},{v}) is not an edge; walk invalid at position {i}"
                )));
            }
        }
        Ok(ClosedWalk { verts })
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn verts(&self) -> &[u8] {
        &self.verts
    }

    /// d-translation; d is taken modulo the length.
    pub fn translate(&self, d: usize) -> ClosedWalk {
        let m = self.verts.len();
        let d = d % m;
        let mut verts = Vec::with_capacity(m);
        verts.extend_from_slice(&self.verts[d..]);
        verts.extend_from_slice(&self.verts[..d]);
        ClosedWalk { verts }
    }

    /// Converse: reverse the traversal keeping the start vertex.
    pub fn converse(&self) -> ClosedWalk {
        let mut verts = Vec::with_capacity(self.verts.len());
        verts.push(self.verts[0]);
        verts.extend(self.verts[1..].iter().rev());
        ClosedWalk { verts }
    }

    pub fn is_palindromic(&self) -> bool {
        let m = self.verts.len();
        (1..m).all(|i| self.verts[i] == self.verts[m - i])
    }

    /// Minimal period: smallest d > 0 with c^{+d} = c. Always divides m.
    pub fn minimal_period(&self) -> usize {
        let m = self.verts.len();
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            if (0..m).all(|i| self.verts[i] == self.verts[(i + d) % m]) {
                return d;
            }
        }
        unreachable!("d = m always works")
    }

    /// Lexicographically minimal rotation: canonical orbit key.
    pub fn canonical_rotation(&self) -> Vec<u8> {
        (0..self.verts.len())
            .map(|d| self.translate(d).verts)
            .min()
            .expect("m >= 1")
    }
}

/// A translation orbit.
#[derive(Clone, Debug)]
pub struct WalkOrbit {
    pub representative: ClosedWalk,
    pub size: usize,
    pub members: Vec<ClosedWalk>,
}

pub fn orbit(c: &ClosedWalk) -> WalkOrbit {
    let d = c.minimal_period();
    assert_eq!(c.len() % d, 0, "orbit size must divide walk length");
    let members = (0..d).map(|k| c.translate(k)).collect();
    WalkOrbit { representative: c.clone(), size: d, members }
}

/// Visit every walk of length m (open walks, m+1 vertices with the last
/// free). The callback receives the full vertex sequence.
fn for_each_walk<F: FnMut(&[u8])>(g: &Graph, m: usize, f: &mut F) {
    let n = g.n();
    let mut seq = vec![0u8; m + 1];
    fn rec<F: FnMut(&[u8])>(g: &Graph, seq: &mut Vec<u8>, depth: usize, m: usize, f: &mut F) {
        if depth == m + 1 {
            f(seq);
            return;
        }
        let prev = seq[depth - 1] as usize;
        let mut nbrs = g.row(prev);
        while nbrs != 0 {
            let v = nbrs.trailing_zeros() as u8;
            nbrs &= nbrs - 1;
            seq[depth] = v;
            rec(g, seq, depth + 1, m, f);
        }
    }
    for start in 0..n {
        seq[0] = start as u8;
        rec(g, &mut seq, 1, m, f);
    }
}

/// Visit every closed walk of length m as (c_1..c_m).
pub fn for_each_closed_walk<F: FnMut(&ClosedWalk)>(g: &Graph, m: usize, f: &mut F) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain("closed walks need m >= 1".into()));
    }
    check_cap(g, m)?;
    let n = g.n();
    let mut seq = vec![0u8; m];
    fn rec<F: FnMut(&ClosedWalk)>(
        g: &Graph,
        seq: &mut Vec<u8>,
        depth: usize,
        m: usize,
        start: u8,
        f: &mut F,
    ) {
        if depth == m {
            if g.adj(seq[m - 1] as usize, start as usize) {
                f(&ClosedWalk { verts: seq.clone() });
            }
            return;
        }
        let prev = seq[depth - 1] as usize;
        let mut nbrs = g.row(prev);
        while nbrs != 0 {
            let v = nbrs.trailing_zeros() as u8;
            nbrs &= nbrs - 1;
            seq[depth] = v;
            rec(g, seq, depth + 1, m, start, f);
        }
    }
    for start in 0..n {
        seq[0] = start as u8;
        rec(g, &mut seq, 1, m, start as u8, f);
    }
    Ok(())
}

/// |W(m)| by brute-force enumeration, asserted against e^T A^m e.
pub fn enumerate_walks(g: &Graph, m: usize) -> Result<BigInt> {
    check_cap(g, m)?;
    let mut count = BigInt::zero();
    for_each_walk(g, m, &mut |_| count += 1);
    let expected = invariants::walk_counts_raw(g, m).pop().unwrap();
    if count != expected {
        return Err(Error::TheoremViolation(format!(
            "|W({m})| = {count} by enumeration but e^T A^{m} e = {expected}"
        )));
    }
    Ok(count)
}

/// |C(m)| by brute-force enumeration, asserted against Tr(A^m).
pub fn enumerate_closed_walks(g: &Graph, m: usize) -> Result<BigInt> {
    let mut count = BigInt::zero();
    for_each_closed_walk(g, m, &mut |_| count += 1)?;
    let expected = linalg::trace_power(&IntMatrix::from_graph(g), m as u64);
    if count != expected {
        return Err(Error::TheoremViolation(format!(
            "|C({m})| = {count} by enumeration but Tr(A^{m}) = {expected}"
        )));
    }
    Ok(count)
}

/// Count self-converse closed walks of even length m by enumeration and
/// assert the count equals N_{m/2}.
pub fn count_palindromic(g: &Graph, m: usize) -> Result<BigInt> {
    if m % 2 != 0 {
        return Err(Error::Domain("count_palindromic requires even m".into()));
    }
    let mut count = BigInt::zero();
    for_each_closed_walk(g, m, &mut |c| {
        if c.is_palindromic() {
            count += 1;
        }
    })?;
    let expected = invariants::walk_counts_raw(g, m / 2).pop().unwrap();
    if count != expected {
        return Err(Error::TheoremViolation(format!(
            "palindromic |C({m})| = {count} but N_{} = {expected}",
            m / 2
        )));
    }
    Ok(count)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub graph_id: String,
    pub m: usize,
    pub orbits_checked: usize,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every full-size orbit in C(m) with 4 | m: the orbit meets its
/// converse orbit iff some translate is self-converse, and then exactly
/// two translates are.
pub fn verify_translation_converse_lemma(g: &Graph, m: usize) -> Result<LemmaReport> {
    if m % 4 != 0 {
        return Err(Error::Domain("lemma requires 4 | m".into()));
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut reps: Vec<ClosedWalk> = Vec::new();
    for_each_closed_walk(g, m, &mut |c| {
        if seen.insert(c.canonical_rotation()) {
            reps.push(c.clone());
        }
    })?;
    let mut violations = Vec::new();
    let mut orbits_checked = 0usize;
    for c in &reps {
        if c.minimal_period() != m {
            continue;
        }
        orbits_checked += 1;
        let conv = c.converse();
        let orbits_meet = conv.canonical_rotation() == c.canonical_rotation();
        let fixed: Vec<usize> = (0..m)
            .filter(|&k| {
                let t = c.translate(k);
                t.converse() == t
            })
            .collect();
        if orbits_meet != !fixed.is_empty() {
            violations.push(format!(
                "walk {:?}: orbit/converse-orbit equality {} but self-converse translates {:?}",
                c.verts, orbits_meet, fixed
            ));
        }
        if orbits_meet && fixed.len() != 2 {
            violations.push(format!(
                "walk {:?}: expected exactly two self-converse translates, found {:?}",
                c.verts, fixed
            ));
        }
    }
    Ok(LemmaReport {
        graph_id: crate::graph::to_graph6(g).unwrap_or_default(),
        m,
        orbits_checked,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub graph_id: String,
    pub m: usize,
    pub full_orbit_walks: String,
    pub lhs: String,
    pub rhs_mod4: u8,
    pub pass: bool,
}

/// Reproduce the counting chain behind the trace identity for m a power of
/// two (m in {1,2,4}): the full-orbit walks in C(4m) tally with
/// Tr(A^{4m}) - Tr(A^{2m}), their (1/2m)-fraction is congruent mod 4 to
/// the self-converse full-orbit count, and that count is N_{2m} - N_m.
pub fn verify_theorem31_counting(g: &Graph, m: usize) -> Result<CountingReport> {
    if ![1, 2, 4].contains(&m) {
        return Err(Error::Domain("counting verification supports m in {1,2,4}".into()));
    }
    let len = 4 * m;
    let mut full = 0u64;
    let mut full_selfconv = 0u64;
    for_each_closed_walk(g, len, &mut |c| {
        if c.minimal_period() == len {
            full += 1;
            if c.is_palindromic() {
                full_selfconv += 1;
            }
        }
    })?;
    let a = IntMatrix::from_graph(g);
    let mut cache = linalg::PowerCache::new(a);
    let trace_diff = cache.trace(4 * m as u64) - cache.trace(2 * m as u64);
    if trace_diff != BigInt::from(full) {
        return Err(Error::TheoremViolation(format!(
            "full-orbit count {full} != Tr(A^{}) - Tr(A^{}) = {trace_diff}",
            4 * m,
            2 * m
        )));
    }
    if full % (2 * m as u64) != 0 {
        return Err(Error::TheoremViolation(format!(
            "2m = {} does not divide full-orbit count {full}",
            2 * m
        )));
    }
    let s_over = full / (2 * m as u64);
    let counts = invariants::walk_counts_raw(g, 2 * m);
    let lhs = &counts[2 * m] - &counts[m];
    let pass = s_over % 4 == full_selfconv % 4
        && lhs == BigInt::from(full_selfconv)
        && (&lhs - BigInt::from(s_over)) % BigInt::from(4) == BigInt::zero();
    Ok(CountingReport {
        graph_id: crate::graph::to_graph6(g).unwrap_or_default(),
        m,
        full_orbit_walks: full.to_string(),
        lhs: lhs.to_string(),
        rhs_mod4: (s_over % 4) as u8,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn enumeration_counts() {
        let k3 = gen::complete_graph(3);
        assert_eq!(enumerate_closed_walks(&k3, 3).unwrap(), BigInt::from(6));
        let c4 = gen::cycle_graph(4);
        assert_eq!(enumerate_closed_walks(&c4, 2).unwrap(), BigInt::from(8));
        let k2 = gen::complete_graph(2);
        assert_eq!(enumerate_closed_walks(&k2, 3).unwrap(), BigInt::zero());
        assert_eq!(enumerate_walks(&k3, 2).unwrap(), BigInt::from(12));
    }

    #[test]
    fn cap_refuses_rather_than_thrashing() {
        let k5 = gen::complete_graph(5);
        match enumerate_closed_walks(&k5, 40) {
            Err(Error::Resource(msg)) => assert!(msg.contains("exceeds cap")),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn translate_and_converse_examples() {
        let k2 = gen::complete_graph(2);
        let c = ClosedWalk::new(&k2, vec![0, 1]).unwrap();
        assert_eq!(c.translate(1).verts(), &[1, 0]);

        let k3 = gen::complete_graph(3);
        let c = ClosedWalk::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(c.converse().verts(), &[0, 2, 1]);
    }

    #[test]
    fn c4_walk_example() {
        // c = (v1,v2,v3,v4,v3,v2,v1,v4) on C4, zero-indexed
        let c4 = gen::cycle_graph(4);
        let c = ClosedWalk::new(&c4, vec![0, 1, 2, 3, 2, 1, 0, 3]).unwrap();
        let t3 = c.translate(3);
        assert_eq!(t3.verts(), &[3, 2, 1, 0, 3, 0, 1, 2]);
        assert_eq!(t3.converse(), t3);
        let t7 = c.translate(7);
        assert_eq!(t7.converse(), t7);
        // exactly the two fixed translates from the worked example
        let fixed: Vec<usize> = (0..8)
            .filter(|&k| {
                let t = c.translate(k);
                t.converse() == t
            })
            .collect();
        assert_eq!(fixed, vec![3, 7]);
    }

    #[test]
    fn orbit_sizes() {
        let k2 = gen::complete_graph(2);
        let c = ClosedWalk::new(&k2, vec![0, 1]).unwrap();
        assert_eq!(orbit(&c).size, 2);

        let k3 = gen::complete_graph(3);
        let c = ClosedWalk::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(orbit(&c).size, 3);

        let c = ClosedWalk::new(&k2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(orbit(&c).size, 2);
    }

    #[test]
    fn orbit_sizes_partition_closed_walks() {
        let k3 = gen::complete_graph(3);
        for m in [2usize, 3, 4, 6] {
            let mut seen = HashSet::new();
            let mut total = 0usize;
            let mut by_orbits = 0usize;
            for_each_closed_walk(&k3, m, &mut |c| {
                total += 1;
                if seen.insert(c.canonical_rotation()) {
                    by_orbits += orbit(c).size;
                }
            })
            .unwrap();
            assert_eq!(total, by_orbits, "m={m}");
        }
    }

    #[test]
    fn palindromic_counts() {
        let k2 = gen::complete_graph(2);
        assert_eq!(count_palindromic(&k2, 2).unwrap(), BigInt::from(2));
        let c4 = gen::cycle_graph(4);
        assert_eq!(count_palindromic(&c4, 4).unwrap(), BigInt::from(16));
        let k3 = gen::complete_graph(3);
        assert_eq!(count_palindromic(&k3, 4).unwrap(), BigInt::from(12));
    }

    #[test]
    fn no_odd_self_converse_walks() {
        for n in 2..=4 {
            for g in gen::all_labeled_graphs(n) {
                for m in [3usize, 5, 7] {
                    for_each_closed_walk(&g, m, &mut |c| {
                        assert!(!c.is_palindromic(), "odd self-converse walk {c:?}");
                    })
                    .unwrap();
                }
            }
        }
    }

    #[test]
    fn translation_converse_lemma_examples() {
        let c4 = gen::cycle_graph(4);
        let rep = verify_translation_converse_lemma(&c4, 8).unwrap();
        assert!(rep.clean(), "{:?}", rep.violations);
        assert!(rep.orbits_checked > 0);

        let k3 = gen::complete_graph(3);
        assert!(verify_translation_converse_lemma(&k3, 4).unwrap().clean());
        let k2 = gen::complete_graph(2);
        assert!(verify_translation_converse_lemma(&k2, 4).unwrap().clean());

        assert!(verify_translation_converse_lemma(&k3, 6).is_err());
    }

    #[test]
    fn theorem31_counting_examples() {
        let k3 = gen::complete_graph(3);
        let rep = verify_theorem31_counting(&k3, 1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, "6");

        assert!(verify_theorem31_counting(&gen::cycle_graph(4), 1).unwrap().pass);
        assert!(verify_theorem31_counting(&gen::complete_graph(2), 2).unwrap().pass);
    }

    #[test]
    fn eq21_identities_exhaustive_small() {
        // (c^conv)^conv = c and (c^{+d})^conv = (c^conv)^{+(m-d)}
        for n in 2..=4 {
            for g in gen::all_labeled_graphs(n) {
                for m in 2..=6 {
                    for_each_closed_walk(&g, m, &mut |c| {
                        assert_eq!(c.converse().converse(), *c);
                        for d in 0..m {
                            assert_eq!(c.translate(d).converse(), c.converse().translate(m - d));
                        }
                    })
                    .unwrap();
                }
            }
        }
    }
}
