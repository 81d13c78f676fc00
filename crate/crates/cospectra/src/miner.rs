//! Corpus-scale discovery: group graphs by characteristic polynomial,
//! run the congruence suite over every cospectral class, certify graphs
//! as determined by their generalized spectrum, and hunt the corollary
//! witnesses (tree perfect matchings, triangle parity).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::congruence::{self, Verdict};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::invariants::{self, Parity};
use crate::linalg::{self, IntMatrix};
use crate::numtheory::{self, SquarefreeVerdict};
use crate::par;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupMode {
    Adjacency,
    Complement,
    Generalized,
}

impl std::str::FromStr for GroupMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(GroupMode::Adjacency),
            "complement" => Ok(GroupMode::Complement),
            "generalized" => Ok(GroupMode::Generalized),
            other => Err(Error::Input(format!("unknown mode {other:?}"))),
        }
    }
}

/// Grouping key for one graph under the chosen mode: the coefficient list
/// of phi(G), phi(comp G), or their concatenation.
pub fn group_key(g: &Graph, mode: GroupMode) -> Vec<BigInt> {
    let phi = |g: &Graph| linalg::char_poly(&IntMatrix::from_graph(g));
    match mode {
        GroupMode::Adjacency => phi(g).coeffs().to_vec(),
        GroupMode::Complement => phi(&g.complement()).coeffs().to_vec(),
        GroupMode::Generalized => {
            let mut k = phi(g).coeffs().to_vec();
            k.extend(phi(&g.complement()).coeffs().to_vec());
            k
        }
    }
}

/// A class of graphs sharing one polynomial key, members in input order.
#[derive(Clone, Debug)]
pub struct CospectralClass {
    pub key: Vec<BigInt>,
    pub members: Vec<(usize, Graph)>,
}

#[derive(Clone, Debug)]
pub struct GroupingResult {
    pub classes: Vec<CospectralClass>,
    pub total: usize,
    pub skipped: usize,
}

/// Group an in-memory corpus. Keys are sorted, members keep line order,
/// so the partition is deterministic regardless of worker count.
pub fn group_graphs(graphs: Vec<(usize, Graph)>, mode: GroupMode) -> GroupingResult {
    let total = graphs.len();
    let keyed = par::map_ordered(graphs, move |(idx, g)| {
        let key = group_key(&g, mode);
        (key, idx, g)
    });
    let mut map: BTreeMap<Vec<BigInt>, Vec<(usize, Graph)>> = BTreeMap::new();
    for (key, idx, g) in keyed {
        map.entry(key).or_default().push((idx, g));
    }
    let classes = map
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_by_key(|(idx, _)| *idx);
            CospectralClass { key, members }
        })
        .collect();
    GroupingResult { classes, total, skipped: 0 }
}

/// Group a graph6 corpus given as text lines. Malformed lines are skipped
/// and counted; I/O style errors carry line numbers.
pub fn group_corpus_lines(lines: &[String], mode: GroupMode) -> (GroupingResult, Vec<String>) {
    let mut graphs = Vec::new();
    let mut warnings = Vec::new();
    for (idx, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match graph::parse_graph6(line) {
            Ok(g) => graphs.push((idx, g)),
            Err(e) => warnings.push(format!("line {}: {e}", idx + 1)),
        }
    }
    let skipped = warnings.len();
    let mut res = group_graphs(graphs, mode);
    res.skipped = skipped;
    res.total += skipped;
    (res, warnings)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CongruenceSummary {
    pub members_checked: usize,
    pub walk_mod4: Verdict,
    pub complement_mod4: Verdict,
    pub eta_parity: Verdict,
    pub equivalence: Verdict,
    pub gram_parity_equal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CospectralClassReport {
    /// Coefficient list, low degree first, decimal strings.
    pub char_poly: Vec<String>,
    pub n: usize,
    pub mode: GroupMode,
    pub members: Vec<String>,
    pub congruence: Option<CongruenceSummary>,
    pub eta_parities: Vec<Parity>,
    pub nonisomorphic_witness: Option<(String, String)>,
}

/// Run the full pairwise congruence suite on one class. Members are
/// compared against the first member; the checks are equivalence
/// relations, so this covers every pair. Any theorem-mandated failure
/// aborts loudly.
pub fn run_class_suite(class: &CospectralClass, mode: GroupMode, max_power: usize) -> Result<CospectralClassReport> {
    let members: Vec<String> = class
        .members
        .iter()
        .map(|(_, g)| graph::to_graph6(g))
        .collect::<Result<_>>()?;
    let n = class.members[0].1.n();
    for (_, g) in &class.members {
        if g.n() != n {
            return Err(Error::TheoremViolation(
                "class members disagree on vertex count despite equal keys".into(),
            ));
        }
    }
    let eta_parities: Vec<Parity> = class
        .members
        .iter()
        .map(|(_, g)| invariants::eta(g).map(|c| c.parity))
        .collect::<Result<_>>()?;

    let congruence = if class.members.len() >= 2 {
        let rep = &class.members[0].1;
        let rep_gram = congruence::gram_parity_matrix(rep)?;
        let mut gram_equal = true;
        for (_, g) in class.members.iter().skip(1) {
            let walk = congruence::check_walk_mod4_pair(rep, g, max_power);
            let comp = congruence::check_complement_mod4_pair(rep, g);
            let eta = congruence::check_eta_parity_pair(rep, g)?;
            for (name, rep_chk) in [("walk-mod4", &walk), ("complement-mod4", &comp), ("eta-parity", &eta)] {
                if rep_chk.verdict == Verdict::Fail {
                    return Err(Error::TheoremViolation(format!(
                        "{name} failed inside class {}: {}",
                        poly_key_string(&class.key),
                        rep_chk.pair_id
                    )));
                }
            }
            if congruence::gram_parity_matrix(g)? != rep_gram {
                gram_equal = false;
            }
        }
        // the biconditional is an invariant of the pair, so one
        // representative pair per class suffices
        congruence::check_equivalence_theorem(rep, &class.members[1].1, max_power)?;
        if !gram_equal {
            return Err(Error::TheoremViolation(format!(
                "gram parity matrices differ inside class {}",
                poly_key_string(&class.key)
            )));
        }
        Some(CongruenceSummary {
            members_checked: class.members.len(),
            walk_mod4: Verdict::Pass,
            complement_mod4: Verdict::Pass,
            eta_parity: Verdict::Pass,
            equivalence: Verdict::Pass,
            gram_parity_equal: true,
        })
    } else {
        None
    };

    let nonisomorphic_witness = find_nonisomorphic_witness(class);

    Ok(CospectralClassReport {
        char_poly: class.key.iter().map(|c| c.to_string()).collect(),
        n,
        mode,
        members,
        congruence,
        eta_parities,
        nonisomorphic_witness,
    })
}

fn poly_key_string(key: &[BigInt]) -> String {
    let parts: Vec<String> = key.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn find_nonisomorphic_witness(class: &CospectralClass) -> Option<(String, String)> {
    if class.members.len() < 2 {
        return None;
    }
    let rep = &class.members[0].1;
    for (_, g) in class.members.iter().skip(1) {
        if is_isomorphic(rep, g) == Some(false) {
            return Some((graph::to_graph6(rep).ok()?, graph::to_graph6(g).ok()?));
        }
    }
    None
}

/// Exact isomorphism by permutation backtracking with degree pruning.
/// Returns None (unknown) above the supported size.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<bool> {
    if g.n() != h.n() {
        return Some(false);
    }
    let n = g.n();
    if n > 10 {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() || g.edge_count() != h.edge_count() {
        return Some(false);
    }
    // map[i] = image of vertex i of g in h
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = g.n();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || g.degree(i) != h.degree(cand) {
                continue;
            }
            let consistent = (0..i).all(|j| g.adj(i, j) == h.adj(cand, map[j]));
            if consistent {
                map[i] = cand;
                used[cand] = true;
                if rec(g, h, map, used, i + 1) {
                    return true;
                }
                used[cand] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
    Some(rec(g, h, &mut map, &mut used, 0))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DgsVerdict {
    CertifiedThm1_5,
    CertifiedThm1_1,
    NotApplicable,
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgsCertificate {
    pub graph6: String,
    pub eta: String,
    pub eta_odd: bool,
    pub eta_squarefree: SquarefreeVerdict,
    pub delta: String,
    /// "inapplicable" is encoded as None (delta = 0, repeated eigenvalues).
    pub delta_odd_squarefree: Option<SquarefreeVerdict>,
    pub verdict: DgsVerdict,
    /// Certified verdicts extend to every graph cospectral with this one
    /// (including itself).
    pub scope: Option<String>,
}

/// Certify a graph as determined by its generalized spectrum.
///
/// The eta-based criterion (eta odd and square-free) is tried first since
/// it needs no factoring of the large discriminant; the discriminant
/// criterion (eta odd, discriminant square-free for odd primes) is the
/// fallback.
pub fn certify_dgs(g: &Graph, trial_bound: u64) -> Result<DgsCertificate> {
    let graph6 = graph::to_graph6(g)?;
    let eta_cert = invariants::eta(g)?;
    let eta = eta_cert.eta_bigint();
    let eta_odd = eta_cert.parity == Parity::Odd;

    let phi = linalg::char_poly(&IntMatrix::from_graph(g));
    let delta = crate::poly::discriminant(&phi)?;
    let delta_zero = num_traits::Zero::is_zero(&delta);
    let delta_odd_squarefree = if delta_zero {
        None
    } else {
        Some(numtheory::odd_squarefree_check(&delta, trial_bound)?)
    };
    let eta_squarefree = if eta_odd {
        numtheory::odd_integer_squarefree(&eta, trial_bound)?
    } else {
        SquarefreeVerdict::Unknown
    };

    let verdict = if !eta_odd {
        DgsVerdict::NotApplicable
    } else if eta_squarefree == SquarefreeVerdict::Yes {
        DgsVerdict::CertifiedThm1_1
    } else if delta_odd_squarefree == Some(SquarefreeVerdict::Yes) {
        DgsVerdict::CertifiedThm1_5
    } else {
        DgsVerdict::Unknown
    };
    let scope = matches!(verdict, DgsVerdict::CertifiedThm1_5 | DgsVerdict::CertifiedThm1_1).then(|| {
        "every graph that is cospectral with this graph (including itself) is DGS".to_string()
    });
    Ok(DgsCertificate {
        graph6,
        eta: eta_cert.eta,
        eta_odd,
        eta_squarefree,
        delta: delta.to_string(),
        delta_odd_squarefree,
        verdict,
        scope,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeMatchingReport {
    pub trees: usize,
    pub rejected_non_trees: usize,
    pub classes: usize,
    pub multi_member_classes: usize,
    pub vacuous: bool,
    pub violations: Vec<String>,
}

/// Group trees by the complement characteristic polynomial; inside every
/// multi-member class all members must agree on having a perfect
/// matching. A vacuous outcome (no multi-member class) is reported
/// explicitly, not hidden.
pub fn find_tree_matching_witnesses(corpus: Vec<(usize, Graph)>) -> Result<TreeMatchingReport> {
    let mut trees = Vec::new();
    let mut rejected = 0usize;
    for (idx, g) in corpus {
        if g.is_tree() {
            trees.push((idx, g));
        } else {
            rejected += 1;
        }
    }
    let tree_count = trees.len();
    let grouping = group_graphs(trees, GroupMode::Complement);
    let mut multi = 0usize;
    let mut violations = Vec::new();
    for class in &grouping.classes {
        if class.members.len() < 2 {
            continue;
        }
        multi += 1;
        let verdicts: Vec<bool> = class
            .members
            .iter()
            .map(|(_, g)| graph::tree_has_perfect_matching(g))
            .collect::<Result<_>>()?;
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            violations.push(format!(
                "class {} mixes matching verdicts {verdicts:?}",
                poly_key_string(&class.key)
            ));
        }
    }
    Ok(TreeMatchingReport {
        trees: tree_count,
        rejected_non_trees: rejected,
        classes: grouping.classes.len(),
        multi_member_classes: multi,
        vacuous: multi == 0,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleParityReport {
    pub graphs: usize,
    pub classes: usize,
    pub multi_member_classes: usize,
    pub violations: Vec<String>,
}

/// Group graphs by the complement characteristic polynomial; within each
/// class triangle counts must share a parity. Both the combinatorial
/// count and the (1/6) Tr(A^3) trace form are checked.
pub fn find_triangle_parity_witnesses(corpus: Vec<(usize, Graph)>) -> Result<TriangleParityReport> {
    let total = corpus.len();
    let grouping = group_graphs(corpus, GroupMode::Complement);
    let mut multi = 0usize;
    let mut violations = Vec::new();
    for class in &grouping.classes {
        if class.members.len() < 2 {
            continue;
        }
        multi += 1;
        let parities: Vec<u64> = class
            .members
            .iter()
            .map(|(_, g)| {
                let direct = g.triangle_count();
                let trace = linalg::trace_power(&IntMatrix::from_graph(g), 3);
                let (t, rem) = num_integer::Integer::div_rem(&trace, &BigInt::from(6));
                assert!(num_traits::Zero::is_zero(&rem), "Tr(A^3) divisible by 6");
                assert_eq!(BigInt::from(direct), t, "triangle count routes agree");
                direct % 2
            })
            .collect();
        if parities.windows(2).any(|w| w[0] != w[1]) {
            violations.push(format!(
                "class {} mixes triangle parities {parities:?}",
                poly_key_string(&class.key)
            ));
        }
    }
    Ok(TriangleParityReport {
        graphs: total,
        classes: grouping.classes.len(),
        multi_member_classes: multi,
        violations,
    })
}
