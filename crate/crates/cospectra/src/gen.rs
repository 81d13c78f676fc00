//! Graph generators and built-in fixtures: exhaustive labeled graphs for
//! desk-scale theorem verification, free trees up to isomorphism, random
//! graphs/matrices for property suites, and the two 9-vertex graphs used
//! as golden data.

use num_bigint::BigInt;
use rand::Rng;

use crate::graph::Graph;
use crate::linalg::IntMatrix;

/// All 2^C(n,2) labeled graphs on n vertices, in edge-mask order.
/// No isomorphism reduction; duplicates are harmless for theorem checks.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let bits = n * (n - 1) / 2;
    assert!(bits < 64, "labeled enumeration capped well below this");
    (0u64..1 << bits).map(move |mask| graph_from_edge_mask(n, mask))
}

pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << (n * (n - 1) / 2)
}

/// Decode an edge bit-mask over the upper triangle in row-major order.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("n in range");
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let bits = n * (n - 1) / 2;
    graph_from_edge_mask(n, rng.gen::<u64>() & ((1u64 << bits) - 1))
}

/// Random symmetric integral matrix with entries in [-max_abs, max_abs];
/// when `even_diagonal` is set, diagonal entries are forced even.
pub fn random_symmetric_matrix<R: Rng>(
    n: usize,
    max_abs: i64,
    even_diagonal: bool,
    rng: &mut R,
) -> IntMatrix {
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut v = rng.gen_range(-max_abs..=max_abs);
            if i == j && even_diagonal && v % 2 != 0 {
                v -= v.signum();
            }
            m.set(i, j, BigInt::from(v));
            if i != j {
                m.set(j, i, BigInt::from(v));
            }
        }
    }
    m
}

/// AHU canonical code of a tree, rooted at its center(s).
fn tree_canonical_code(g: &Graph) -> String {
    let n = g.n();
    if n == 1 {
        return "()".into();
    }
    // find centers by repeated leaf stripping
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut leaves: Vec<usize> = (0..n).filter(|&u| degree[u] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &u in &leaves {
            removed[u] = true;
            remaining -= 1;
            for v in 0..n {
                if g.adj(u, v) && !removed[v] {
                    degree[v] -= 1;
                    if degree[v] == 1 {
                        next.push(v);
                    }
                }
            }
        }
        leaves = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&u| !removed[u]).collect();

    fn code(g: &Graph, u: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = (0..g.n())
            .filter(|&v| g.adj(u, v) && Some(v) != parent)
            .map(|v| code(g, v, Some(u)))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }

    centers
        .iter()
        .map(|&c| code(g, c, None))
        .min()
        .expect("tree has a center")
}

/// All free (unlabeled) trees on 1..=n_max vertices, one representative per
/// isomorphism class, generated by leaf extension with AHU deduplication.
pub fn all_free_trees(n_max: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut current = vec![Graph::empty(1).unwrap()];
    out.extend(current.iter().cloned());
    for n in 2..=n_max {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for t in &current {
            for attach in 0..t.n() {
                let mut bigger = Graph::empty(n).unwrap();
                for (u, v) in t.edges() {
                    bigger.add_edge(u, v).unwrap();
                }
                bigger.add_edge(attach, n - 1).unwrap();
                let key = tree_canonical_code(&bigger);
                if seen.insert(key) {
                    next.push(bigger);
                }
            }
        }
        out.extend(next.iter().cloned());
        current = next;
    }
    out
}

/// The two cospectral 9-vertex graphs used as built-in golden fixtures.
pub fn paper_example() -> (Graph, Graph) {
    let a: [[u8; 9]; 9] = [
        [0, 1, 0, 1, 0, 0, 0, 0, 1],
        [1, 0, 1, 1, 1, 0, 1, 0, 0],
        [0, 1, 0, 1, 0, 0, 1, 0, 0],
        [1, 1, 1, 0, 1, 1, 0, 0, 0],
        [0, 1, 0, 1, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0, 0],
    ];
    let b: [[u8; 9]; 9] = [
        [0, 1, 1, 0, 1, 1, 0, 0, 1],
        [1, 0, 1, 1, 0, 0, 0, 0, 0],
        [1, 1, 0, 1, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 1, 0, 0, 0, 0],
        [1, 0, 1, 1, 0, 1, 0, 0, 0],
        [1, 0, 0, 0, 1, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0, 0],
    ];
    let build = |m: &[[u8; 9]; 9]| {
        let mut g = Graph::empty(9).unwrap();
        for i in 0..9 {
            for j in i + 1..9 {
                if m[i][j] == 1 {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    };
    (build(&a), build(&b))
}

/// Common small named graphs, used across tests.
pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    e.push((n - 1, 0));
    Graph::from_edges(n, &e).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &e).unwrap()
}

pub fn star_graph(n: usize) -> Graph {
    Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>()).unwrap()
}

/// C4 plus one isolated vertex: the classic 5-vertex cospectral mate of
/// the star K_{1,4}.
pub fn c4_plus_k1() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}
