//! Simple undirected graphs with bit-packed adjacency rows, graph6 I/O,
//! and the elementary structural queries the congruence checks depend on.

use crate::error::{Error, Result};

/// Maximum vertex count of the internal representation (one machine word
/// per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// Maximum vertex count for graph6 I/O (single-byte header only).
pub const MAX_GRAPH6_VERTICES: usize = 62;

/// A simple undirected graph on vertices `0..n`, no loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Input(format!(
                "vertex count {n} out of supported range 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Input(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Input(format!("loop at vertex {u} not allowed")));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn adj(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighbors of `u` as a bit mask.
    #[inline]
    pub fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter_map(move |v| self.adj(u, v).then_some((u, v))))
    }

    /// Complement graph: edge iff non-edge, diagonal stays empty.
    pub fn complement(&self) -> Graph {
        let mask = if self.n == 64 { !0u64 } else { (1u64 << self.n) - 1 };
        let rows = (0..self.n)
            .map(|u| !self.rows[u] & mask & !(1 << u))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Number of triangles, computed as Tr(A^3)/6 via bit tricks.
    /// The division is exact for every simple graph.
    pub fn triangle_count(&self) -> u64 {
        let mut closed3 = 0u64;
        for u in 0..self.n {
            let nu = self.rows[u];
            for v in u + 1..self.n {
                if nu >> v & 1 == 1 {
                    closed3 += (nu & self.rows[v]).count_ones() as u64;
                }
            }
        }
        // closed3 counts each triangle 3 times (once per edge), Tr(A^3) = 6*t
        debug_assert_eq!(closed3 % 3, 0);
        closed3 / 3
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        let all = if self.n == 64 { !0u64 } else { (1u64 << self.n) - 1 };
        seen == all
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() == self.n - 1
    }

    /// Greedy leaf-matching on a tree: repeatedly match a leaf with its
    /// support vertex and delete both. A tree has a perfect matching iff
    /// this process consumes every vertex, and the matching is then unique.
    pub fn tree_greedy_perfect_matching(&self) -> Result<bool> {
        if !self.is_tree() {
            return Err(Error::Domain("tree_greedy_perfect_matching requires a tree".into()));
        }
        if self.n % 2 != 0 {
            return Ok(false);
        }
        let mut rows = self.rows.clone();
        let mut alive = if self.n == 64 { !0u64 } else { (1u64 << self.n) - 1 };
        loop {
            if alive == 0 {
                return Ok(true);
            }
            // find a leaf among alive vertices
            let mut leaf = None;
            let mut a = alive;
            while a != 0 {
                let u = a.trailing_zeros() as usize;
                a &= a - 1;
                if (rows[u] & alive).count_ones() == 1 {
                    leaf = Some(u);
                    break;
                }
            }
            let Some(u) = leaf else {
                // no leaf but vertices remain: isolated alive vertices, no matching
                return Ok(false);
            };
            let v = (rows[u] & alive).trailing_zeros() as usize;
            alive &= !(1 << u);
            alive &= !(1 << v);
            for r in rows.iter_mut() {
                *r &= !(1 << u);
                *r &= !(1 << v);
            }
            // any now-isolated alive vertex kills the matching
            let mut a = alive;
            while a != 0 {
                let w = a.trailing_zeros() as usize;
                a &= a - 1;
                if rows[w] & alive == 0 {
                    return Ok(false);
                }
            }
        }
    }
}

/// Decode one line of McKay's graph6 format (single-byte header, n <= 62).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 { offset: 0, msg: "empty line".into() });
    }
    let header = bytes[0];
    if header == 126 {
        return Err(Error::Graph6 {
            offset: 0,
            msg: "multi-byte size header (n > 62) not supported".into(),
        });
    }
    if !(63..=125).contains(&header) {
        return Err(Error::Graph6 {
            offset: 0,
            msg: format!("invalid header byte {header}"),
        });
    }
    let n = (header - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6 { offset: 0, msg: "graph on 0 vertices".into() });
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Graph6 {
            offset: bytes.len().min(1 + nbytes),
            msg: format!("expected {} data bytes for n={n}, found {}", nbytes, bytes.len() - 1),
        });
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    // upper triangle, column-major: x(0,1), x(0,2), x(1,2), x(0,3), ...
    let mut pairs = (1..n).flat_map(|v| (0..v).map(move |u| (u, v)));
    for (k, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6 {
                offset: 1 + k,
                msg: format!("invalid data byte {b}"),
            });
        }
        let group = b - 63;
        for j in (0..6).rev() {
            let set = group >> j & 1 == 1;
            if bit < nbits {
                let (u, v) = pairs.next().unwrap();
                if set {
                    g.add_edge(u, v)?;
                }
            } else if set {
                return Err(Error::Graph6 {
                    offset: 1 + k,
                    msg: "nonzero padding bits".into(),
                });
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Encode a graph as a graph6 line (n <= 62).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::Input(format!(
            "graph6 output supports n <= {MAX_GRAPH6_VERTICES}, got {n}"
        )));
    }
    let mut out = vec![63 + n as u8];
    let mut group = 0u8;
    let mut filled = 0usize;
    for v in 1..n {
        for u in 0..v {
            group = group << 1 | g.adj(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parse the plain adjacency-matrix text format: n lines of n characters
/// in {0,1}; symmetry and zero diagonal are validated.
pub fn parse_adjacency_text(text: &str) -> Result<Graph> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let n = lines.len();
    if n == 0 {
        return Err(Error::Input("empty adjacency matrix".into()));
    }
    let mut g = Graph::empty(n)?;
    let mut cells = vec![vec![false; n]; n];
    for (i, line) in lines.iter().enumerate() {
        let row = line.trim();
        let chars: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != n {
            return Err(Error::Input(format!(
                "row {i} has {} entries, expected {n}",
                chars.len()
            )));
        }
        for (j, c) in chars.iter().enumerate() {
            cells[i][j] = match c {
                '0' => false,
                '1' => true,
                other => return Err(Error::Input(format!("row {i} col {j}: invalid char {other:?}"))),
            };
        }
    }
    for i in 0..n {
        if cells[i][i] {
            return Err(Error::Input(format!("nonzero diagonal at {i}")));
        }
        for j in i + 1..n {
            if cells[i][j] != cells[j][i] {
                return Err(Error::Input(format!("asymmetric entries at ({i},{j})")));
            }
            if cells[i][j] {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Verify tree perfect matching two ways: char-poly constant term in {1,-1}
/// and the greedy leaf matching. Both routes must agree.
pub fn tree_has_perfect_matching(g: &Graph) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::Domain("tree_has_perfect_matching requires a tree".into()));
    }
    let phi = crate::linalg::char_poly(&crate::linalg::IntMatrix::from_graph(g));
    let c0 = phi.coeff(0);
    let via_poly = c0 == 1.into() || c0 == (-1).into();
    let via_greedy = g.tree_greedy_perfect_matching()?;
    if via_poly != via_greedy {
        return Err(Error::TheoremViolation(format!(
            "tree matching routes disagree: char-poly says {via_poly}, greedy says {via_greedy}"
        )));
    }
    Ok(via_poly)
}
