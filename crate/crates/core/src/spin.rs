//! Spin structures on stable curves, counted on the dual graph.
//!
//! A spin structure is supported on an even subset `D` of the nodes (the
//! nodes blown up to exceptional components). Its multiplicity as a point of
//! the spin moduli space is `2^(b1(G) - b1(G_D))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest arithmetic genus whose counts fit the `u128` arithmetic.
pub const MAX_GENUS: u32 = 60;
/// Largest cycle rank for which even subsets are listed explicitly.
pub const MAX_LISTED_BETTI: u32 = 24;

/// Stable curve encoded by its dual graph. Vertices carry geometric genera,
/// edges are nodes; a loop `(v, v)` is a node of an irreducible component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if genera.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let n = genera.len();
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        for &(a, b) in &edges {
            if b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) names a missing vertex")));
            }
        }
        let graph = DualGraph { genera, edges };
        if graph.components(&graph.all_edges()) != 1 {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        let g = graph.genus();
        if g < 2 {
            return Err(Error::InvalidGraph(format!("arithmetic genus {g} < 2")));
        }
        if g > u64::from(MAX_GENUS) {
            return Err(Error::InvalidGraph(format!("arithmetic genus {g} exceeds {MAX_GENUS}")));
        }
        for v in 0..n {
            if graph.genera[v] == 0 && graph.valence(v) < 3 {
                return Err(Error::InvalidGraph(format!(
                    "rational vertex {v} has {} incidences, needs at least 3",
                    graph.valence(v)
                )));
            }
        }
        Ok(graph)
    }

    /// Irreducible curve of geometric genus `g` with `loops` nodes.
    pub fn irreducible(g: u32, loops: usize) -> Result<Self> {
        DualGraph::new(vec![g], vec![(0, 0); loops])
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Incidences at `v`, loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn geometric_genus_sum(&self) -> u64 {
        self.genera.iter().map(|&g| u64::from(g)).sum()
    }

    /// Arithmetic genus `sum g_v + b1`.
    pub fn genus(&self) -> u64 {
        self.geometric_genus_sum() + self.betti(&self.all_edges())
    }

    pub fn all_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).collect()
    }

    /// First Betti number of the subgraph on all vertices with the given edges.
    pub fn betti(&self, subset: &[usize]) -> u64 {
        let comps = self.components(subset);
        (subset.len() + comps - self.genera.len()) as u64
    }

    fn components(&self, subset: &[usize]) -> usize {
        let mut parent: Vec<usize> = (0..self.genera.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut comps = self.genera.len();
        for &e in subset {
            let (a, b) = self.edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    /// Vertex at which `subset` has odd degree, if any.
    pub fn odd_vertex(&self, subset: &[usize]) -> Option<usize> {
        let mut deg = vec![0usize; self.genera.len()];
        for &e in subset {
            let (a, b) = self.edges[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().position(|d| d % 2 == 1)
    }

    pub fn is_even(&self, subset: &[usize]) -> bool {
        self.odd_vertex(subset).is_none()
    }
}

impl FromStr for DualGraph {
    type Err = Error;

    /// Line format: `v <genus>` per vertex (numbered from 0 in order of
    /// appearance), `e <i> <j>` per edge. `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut genera = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::InvalidGraph(format!("line {}: {what}: {raw:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or("");
            let nums: Vec<usize> = parts
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("expected non-negative integers"))?;
            match (tag, nums.as_slice()) {
                ("v", [g]) => genera.push(u32::try_from(*g).map_err(|_| bad("genus too large"))?),
                ("e", [a, b]) => edges.push((*a, *b)),
                _ => return Err(bad("expected `v <genus>` or `e <i> <j>`")),
            }
        }
        DualGraph::new(genera, edges)
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.genera {
            writeln!(f, "v {g}")?;
        }
        for (a, b) in &self.edges {
            writeln!(f, "e {a} {b}")?;
        }
        Ok(())
    }
}

/// Spin structures supported on one even subset of nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinSupport {
    pub delta: Vec<usize>,
    pub count: u128,
    pub multiplicity: u128,
}

/// Basis of the cycle space: the kernel of the vertex-edge incidence map
/// over `F_2`, each vector a sorted list of edges.
pub fn cycle_basis(graph: &DualGraph) -> Vec<Vec<usize>> {
    let m = graph.edge_count();
    let words = m.div_ceil(64).max(1);
    // rows of the incidence matrix, one bit per edge; loops vanish mod 2
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; graph.vertex_count()];
    for (e, &(a, b)) in graph.edges.iter().enumerate() {
        if a != b {
            rows[a][e / 64] ^= 1 << (e % 64);
            rows[b][e / 64] ^= 1 << (e % 64);
        }
    }
    let bit = |r: &[u64], e: usize| (r[e / 64] >> (e % 64)) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut next = 0;
    for col in 0..m {
        let Some(p) = (next..rows.len()).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && bit(row, col) {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m];
        pivots.iter().for_each(|&(_, c)| v[c] = true);
        v
    };
    (0..m)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![f];
            v.extend(pivots.iter().filter(|&&(r, _)| bit(&rows[r], f)).map(|&(_, c)| c));
            v.sort_unstable();
            v
        })
        .collect()
}

/// All even subsets of nodes, as sorted edge lists, ordered by size then
/// lexicographically. There are `2^b1` of them.
pub fn even_subsets(graph: &DualGraph) -> Result<Vec<Vec<usize>>> {
    let basis = cycle_basis(graph);
    if basis.len() as u32 > MAX_LISTED_BETTI {
        return Err(Error::InvalidGraph(format!(
            "b1 = {} too large to list even subsets (limit {MAX_LISTED_BETTI})",
            basis.len()
        )));
    }
    let m = graph.edge_count();
    let mut out = Vec::with_capacity(1 << basis.len());
    for mask in 0u64..(1 << basis.len()) {
        let mut in_delta = vec![false; m];
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.iter().for_each(|&e| in_delta[e] ^= true);
            }
        }
        out.push((0..m).filter(|&e| in_delta[e]).collect::<Vec<_>>());
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn spin_counts(graph: &DualGraph, delta: &[usize]) -> Result<SpinSupport> {
    let mut delta = delta.to_vec();
    delta.sort_unstable();
    delta.dedup();
    if let Some(&e) = delta.iter().find(|&&e| e >= graph.edge_count()) {
        return Err(Error::InvalidGraph(format!("edge index {e} out of range")));
    }
    if let Some(v) = graph.odd_vertex(&delta) {
        return Err(Error::NotEven(v));
    }
    let b_delta = graph.betti(&delta);
    let b = graph.betti(&graph.all_edges());
    Ok(SpinSupport {
        count: 1u128 << (2 * graph.geometric_genus_sum() + b_delta),
        multiplicity: 1u128 << (b - b_delta),
        delta,
    })
}

/// Every support of the spin scheme of `graph`.
pub fn spin_scheme(graph: &DualGraph) -> Result<Vec<SpinSupport>> {
    even_subsets(graph)?
        .iter()
        .map(|d| spin_counts(graph, d))
        .collect()
}

/// Numbers of odd and even theta characteristics in genus `g`.
pub fn theta_counts(g: u32) -> (u128, u128) {
    if g == 0 {
        return (0, 1);
    }
    let half = 1u128 << (g - 1);
    let full = 1u128 << g;
    (half * (full - 1), half * (full + 1))
}

/// Points of multiplicity `2^k` on an irreducible curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinTableRow {
    pub k: u32,
    pub count: u128,
    pub multiplicity: u128,
    pub odd: u128,
    pub even: u128,
}

/// Multiplicity and parity data for an irreducible curve of arithmetic genus
/// `g` with `n` nodes.
pub fn spin_table_irreducible(g: u32, n: u32) -> Result<Vec<SpinTableRow>> {
    if g < 2 || g > MAX_GENUS {
        return Err(Error::InvalidSpinTable(format!("genus {g} outside 2..={MAX_GENUS}")));
    }
    if n > g {
        return Err(Error::InvalidSpinTable(format!("{n} nodes exceed genus {g}")));
    }
    if g == n && n < 2 {
        return Err(Error::InvalidSpinTable("rational curve with fewer than 2 nodes is unstable".into()));
    }
    let (n_minus, n_plus) = theta_counts(g - n);
    Ok((0..=n)
        .map(|k| {
            let count = binomial(n, k) * (1u128 << (2 * g - n - k));
            let (odd, even) = if k < n { (count / 2, count / 2) } else { (n_minus, n_plus) };
            SpinTableRow {
                k,
                count,
                multiplicity: 1 << k,
                odd,
                even,
            }
        })
        .collect())
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Parity table for irreducible curves of genus `g` with `0..=max_nodes`
/// nodes: one column per node count, rows `mult 2^k even/odd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    pub genus: u32,
    pub columns: Vec<Vec<SpinTableRow>>,
}

pub fn parity_table(g: u32, max_nodes: u32) -> Result<ParityTable> {
    let columns = (0..=max_nodes)
        .map(|n| spin_table_irreducible(g, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParityTable { genus: g, columns })
}

const NUMBER_WORDS: [&str; 10] = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"];

impl ParityTable {
    pub fn header(&self) -> Vec<String> {
        (0..self.columns.len())
            .map(|n| match n {
                0 => "smooth".to_string(),
                1 => "one node".to_string(),
                n if n < NUMBER_WORDS.len() => format!("{} nodes", NUMBER_WORDS[n]),
                n => format!("{n} nodes"),
            })
            .collect()
    }

    /// Row labels and cells; `None` where the multiplicity does not occur.
    pub fn rows(&self) -> Vec<(String, Vec<Option<u128>>)> {
        let kmax = self.columns.len() as u32 - 1;
        let mut out = Vec::new();
        for k in 0..=kmax {
            for even in [true, false] {
                let label = format!("mult {} {}", 1u128 << k, if even { "even" } else { "odd" });
                let cells = self
                    .columns
                    .iter()
                    .map(|col| col.iter().find(|r| r.k == k).map(|r| if even { r.even } else { r.odd }))
                    .collect();
                out.push((label, cells));
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        s.push('\t');
        s.push_str(&self.header().join("\t"));
        s.push('\n');
        for (label, cells) in self.rows() {
            s.push_str(&label);
            for c in cells {
                s.push('\t');
                match c {
                    Some(v) => s.push_str(&v.to_string()),
                    None => s.push('-'),
                }
            }
            s.push('\n');
        }
        s
    }
}
