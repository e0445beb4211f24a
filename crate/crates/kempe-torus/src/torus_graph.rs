//! Construction, canonicalization, enumeration, and sampling of the 6-regular
//! toroidal graphs: shifted triangulated grids `T[a x b, c]` and circulants
//! `C_n[1, r, r+1]`.
//!
//! Every graph carries its rotation system (neighbors in cyclic order around
//! each vertex) and a homology voltage per directed edge: the displacement the
//! edge realizes in the universal cover, as a `(row, col)` vector with rows
//! growing southward and columns eastward. A closed walk is contractible
//! exactly when its voltages sum to `(0, 0)`; it closes up in the base graph
//! exactly when the sum lies in the deck lattice.

use crate::graph::{fnv1a64, Graph};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusGraphError {
    #[error("parameters produce a loop or parallel edge: {0}")]
    SimpleGraphViolation(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("straight-line walk failed to close; rotation system is malformed")]
    MalformedRotation,
    #[error("no valid 6-regular toroidal graph on {0} vertices")]
    NoValidGraph(usize),
}

/// Family parameters. Grids use the convention `1 <= c <= a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphParams {
    ShiftedGrid { a: usize, b: usize, c: usize },
    Circulant { n: usize, r: usize },
}

impl fmt::Display for GraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphParams::ShiftedGrid { a, b, c } => write!(f, "T[{a}x{b},{c}]"),
            GraphParams::Circulant { n, r } => write!(f, "C{n}[1,{r},{}]", r + 1),
        }
    }
}

/// Rotation order of the six lattice directions, shared by both families.
/// For grids: E, NE, N, W, SW, S in matrix coordinates (row i south, col j
/// east). For circulants: +1, +(r+1), +r, -1, -(r+1), -r.
pub const DIRECTIONS: usize = 6;

/// An immutable 6-regular toroidal graph with rotation system and homology
/// voltages.
#[derive(Debug)]
pub struct TorusGraph {
    params: GraphParams,
    n: usize,
    rotation: Vec<[usize; 6]>,
    /// Voltage of a step in rotation direction `k`, identical at every vertex.
    step_voltages: [(i64, i64); 6],
    /// Two generators of the deck lattice.
    deck: [(i64, i64); 2],
    edge_width: OnceLock<(usize, Vec<usize>)>,
    six_cycles: OnceLock<Vec<Vec<usize>>>,
}

impl Graph for TorusGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }
}

fn wrap1(x: i64, m: usize) -> usize {
    (x - 1).rem_euclid(m as i64) as usize + 1
}

fn grid_rotation(a: usize, b: usize, c: usize) -> Result<Vec<[usize; 6]>, TorusGraphError> {
    if a < 1 || b < 1 {
        return Err(TorusGraphError::InvalidParams(format!("a={a}, b={b}")));
    }
    if c < 1 || c > a {
        return Err(TorusGraphError::InvalidParams(format!("c={c} not in 1..={a}")));
    }
    let n = a * b;
    let idx = |i: usize, j: usize| (i - 1) * b + (j - 1);
    let mut rotation = Vec::with_capacity(n);
    let ci = c as i64;
    for v in 0..n {
        let i = (v / b + 1) as i64;
        let j = v % b + 1;
        let east = if j < b {
            (wrap1(i, a), j + 1)
        } else {
            (wrap1(i + ci - 1, a), 1)
        };
        let northeast = if j < b {
            (wrap1(i - 1, a), j + 1)
        } else {
            (wrap1(i + ci - 2, a), 1)
        };
        let west = if j > 1 {
            (wrap1(i, a), j - 1)
        } else {
            (wrap1(i - ci + 1, a), b)
        };
        let southwest = if j > 1 {
            (wrap1(i + 1, a), j - 1)
        } else {
            (wrap1(i - ci + 2, a), b)
        };
        let north = (wrap1(i - 1, a), j);
        let south = (wrap1(i + 1, a), j);
        let nbrs = [east, northeast, north, west, southwest, south].map(|(x, y)| idx(x, y));
        rotation.push(nbrs);
    }
    Ok(rotation)
}

/// Builds `T[a x b, c]`: vertex `(i, j)` (1-based, matrix layout) has index
/// `(i-1)*b + (j-1)`; column `b` wraps to column 1 with row shift `c`.
pub fn build_shifted_grid(a: usize, b: usize, c: usize) -> Result<TorusGraph, TorusGraphError> {
    let rotation = grid_rotation(a, b, c)?;
    TorusGraph::finish(
        GraphParams::ShiftedGrid { a, b, c },
        rotation,
        [(0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0)],
        [(a as i64, 0), (1 - c as i64, b as i64)],
    )
}

fn circulant_rotation(n: usize, r: usize) -> Result<Vec<[usize; 6]>, TorusGraphError> {
    if n < 3 {
        return Err(TorusGraphError::InvalidParams(format!("n={n} < 3")));
    }
    if r < 2 {
        return Err(TorusGraphError::InvalidParams(format!("r={r} < 2")));
    }
    let (ni, ri) = (n as i64, r as i64);
    let steps = [1, ri + 1, ri, -1, -ri - 1, -ri];
    Ok((0..n)
        .map(|v| steps.map(|s| (v as i64 + s).rem_euclid(ni) as usize))
        .collect())
}

/// Builds `C_n[1, r, r+1]`: vertex labels `1..=n` map to indices `0..n`;
/// labels `i`, `j` are adjacent when `i - j` is congruent to one of
/// `+-1, +-r, +-(r+1)` mod `n`.
pub fn build_circulant(n: usize, r: usize) -> Result<TorusGraph, TorusGraphError> {
    if n < 7 {
        return Err(TorusGraphError::InvalidParams(format!("n={n} < 7")));
    }
    let rotation = circulant_rotation(n, r)?;
    let (ni, ri) = (n as i64, r as i64);
    TorusGraph::finish(
        GraphParams::Circulant { n, r },
        rotation,
        [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        [(ni, 0), (-ri, 1)],
    )
}

/// Underlying simple graph of the (possibly multigraph) family member:
/// parallel edges are collapsed; parameters producing loops are rejected.
/// This is what 4-colorability questions about the multigraph families
/// (e.g. `T[m x 2, 1]`) operate on.
pub fn multigraph_skeleton(params: GraphParams) -> Result<crate::graph::AdjGraph, TorusGraphError> {
    let rotation = match params {
        GraphParams::ShiftedGrid { a, b, c } => grid_rotation(a, b, c)?,
        GraphParams::Circulant { n, r } => circulant_rotation(n, r)?,
    };
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(rotation.len());
    for (v, nbrs) in rotation.iter().enumerate() {
        if nbrs.contains(&v) {
            return Err(TorusGraphError::SimpleGraphViolation(format!(
                "loop at vertex {v} in {params}"
            )));
        }
        let mut list = nbrs.to_vec();
        list.sort_unstable();
        list.dedup();
        adj.push(list);
    }
    Ok(crate::graph::AdjGraph::new(adj))
}

/// Builds the graph described by `params`.
pub fn build(params: GraphParams) -> Result<TorusGraph, TorusGraphError> {
    match params {
        GraphParams::ShiftedGrid { a, b, c } => build_shifted_grid(a, b, c),
        GraphParams::Circulant { n, r } => build_circulant(n, r),
    }
}

impl TorusGraph {
    fn finish(
        params: GraphParams,
        rotation: Vec<[usize; 6]>,
        step_voltages: [(i64, i64); 6],
        deck: [(i64, i64); 2],
    ) -> Result<TorusGraph, TorusGraphError> {
        let n = rotation.len();
        for (v, nbrs) in rotation.iter().enumerate() {
            if nbrs.contains(&v) {
                return Err(TorusGraphError::SimpleGraphViolation(format!(
                    "loop at vertex {v} in {params}"
                )));
            }
            let mut sorted = *nbrs;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(TorusGraphError::SimpleGraphViolation(format!(
                    "parallel edge at vertex {v} in {params}"
                )));
            }
        }
        let g = TorusGraph {
            params,
            n,
            rotation,
            step_voltages,
            deck,
            edge_width: OnceLock::new(),
            six_cycles: OnceLock::new(),
        };
        debug_assert!(g.validate().is_ok());
        Ok(g)
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    /// Neighbor reached from `v` by one step in rotation direction `dir`.
    pub fn step(&self, v: usize, dir: usize) -> usize {
        self.rotation[v][dir]
    }

    /// Position of neighbor `u` in the cyclic order around `v`.
    pub fn neighbor_index(&self, v: usize, u: usize) -> Option<usize> {
        self.rotation[v].iter().position(|&w| w == u)
    }

    /// Walks `count` steps in direction `dir` (negative counts walk the
    /// opposite direction `dir + 3`).
    pub fn lattice_walk(&self, base: usize, dir: usize, count: i64) -> usize {
        let (d, steps) = if count >= 0 { (dir, count) } else { ((dir + 3) % 6, -count) };
        let mut v = base;
        for _ in 0..steps {
            v = self.step(v, d);
        }
        v
    }

    /// Vertex at lattice offset `alpha * dir_u + beta * dir_v` from `base`.
    pub fn lattice_offset(&self, base: usize, dir_u: usize, alpha: i64, dir_v: usize, beta: i64) -> usize {
        self.lattice_walk(self.lattice_walk(base, dir_u, alpha), dir_v, beta)
    }

    /// Voltage of one step in rotation direction `dir`.
    pub fn direction_voltage(&self, dir: usize) -> (i64, i64) {
        self.step_voltages[dir]
    }

    /// Voltage of the directed edge `u -> v`, if it exists.
    pub fn voltage(&self, u: usize, v: usize) -> Option<(i64, i64)> {
        self.neighbor_index(u, v).map(|k| self.step_voltages[k])
    }

    pub fn deck_generators(&self) -> [(i64, i64); 2] {
        self.deck
    }

    /// Whether `(x, y)` lies in the deck lattice, i.e. whether a walk with
    /// that net voltage closes up in the base graph.
    pub fn deck_contains(&self, x: i64, y: i64) -> bool {
        let [(u1, u2), (v1, v2)] = self.deck.map(|(p, q)| (p as i128, q as i128));
        let det = u1 * v2 - u2 * v1;
        debug_assert!(det != 0);
        let (x, y) = (x as i128, y as i128);
        let mn = x * v2 - y * v1;
        let kn = y * u1 - x * u2;
        mn % det == 0 && kn % det == 0
    }

    pub(crate) fn edge_width_cell(&self) -> &OnceLock<(usize, Vec<usize>)> {
        &self.edge_width
    }

    pub(crate) fn six_cycles_cell(&self) -> &OnceLock<Vec<Vec<usize>>> {
        &self.six_cycles
    }

    /// Sorted edge list (u < v).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(3 * self.n);
        for v in 0..self.n {
            for &u in &self.rotation[v] {
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// 64-bit fingerprint of the labeled graph, used to anchor certificates.
    pub fn fingerprint(&self) -> u64 {
        let mut bytes = Vec::with_capacity(8 + 16 * 3 * self.n);
        bytes.extend_from_slice(&(self.n as u64).to_le_bytes());
        for (u, v) in self.edges() {
            bytes.extend_from_slice(&(u as u64).to_le_bytes());
            bytes.extend_from_slice(&(v as u64).to_le_bytes());
        }
        fnv1a64(&bytes)
    }

    /// Checks the structural invariants: 6 distinct non-self neighbors,
    /// symmetric adjacency, triangulated rotation (consecutive neighbors in
    /// a vertex's cyclic order are adjacent), voltage antisymmetry, and zero
    /// voltage sum around every face triangle.
    pub fn validate(&self) -> Result<(), String> {
        for v in 0..self.n {
            let nbrs = self.rotation[v];
            for (k, &u) in nbrs.iter().enumerate() {
                if u == v {
                    return Err(format!("loop at {v}"));
                }
                if self.neighbor_index(u, v).is_none() {
                    return Err(format!("asymmetric edge {v}->{u}"));
                }
                let next = nbrs[(k + 1) % 6];
                if self.neighbor_index(u, next).is_none() {
                    return Err(format!("rotation at {v} is not a triangulation fan"));
                }
                let vf = self.step_voltages[k];
                let back = self.voltage(u, v).unwrap();
                if vf.0 + back.0 != 0 || vf.1 + back.1 != 0 {
                    return Err(format!("voltage not antisymmetric on {v}-{u}"));
                }
                // Face triangle v -> u -> next -> v.
                let e2 = self.voltage(u, next).unwrap();
                let e3 = self.voltage(next, v).unwrap();
                if vf.0 + e2.0 + e3.0 != 0 || vf.1 + e2.1 + e3.1 != 0 {
                    return Err(format!("face at {v} (dir {k}) has nonzero voltage sum"));
                }
            }
            let mut sorted = nbrs;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("parallel edge at {v}"));
            }
        }
        Ok(())
    }
}

/// Follows a straight line from `v0` through its `dir`-th incident edge:
/// the successor of each vertex is three later than its predecessor in the
/// cyclic neighbor order. Returns the closed walk's vertices.
fn straight_walk(g: &TorusGraph, v0: usize, dir: usize) -> Result<Vec<usize>, TorusGraphError> {
    let v1 = g.rotation[v0][dir];
    let start = (v0, v1);
    let mut walk = vec![v0];
    let (mut p, mut c) = start;
    for _ in 0..6 * g.n + 1 {
        let pos = g
            .neighbor_index(c, p)
            .ok_or(TorusGraphError::MalformedRotation)?;
        let next = g.rotation[c][(pos + 3) % 6];
        if (c, next) == start {
            return Ok(walk);
        }
        walk.push(c);
        p = c;
        c = next;
    }
    Err(TorusGraphError::MalformedRotation)
}

/// Attempts to read off a `T[a x b, c]` parameterization whose column through
/// vertex 0 is the straight walk in direction `dir`; `orient` (+1 or -1)
/// selects which side of the walk counts as east.
fn reconstruct_parameterization(
    g: &TorusGraph,
    dir: usize,
    orient: i64,
) -> Result<Option<(usize, usize, usize)>, TorusGraphError> {
    let column = straight_walk(g, 0, dir)?;
    let a = column.len();
    let n = g.n;
    if n % a != 0 {
        return Ok(None);
    }
    let b = n / a;
    {
        let mut seen = vec![false; n];
        for &v in &column {
            if std::mem::replace(&mut seen[v], true) {
                return Ok(None);
            }
        }
    }
    // Leaving the column turns off the walk direction by one position; after
    // that, eastward rows continue straight.
    let turn_east = |at: usize, from: usize| -> Option<usize> {
        let pos = g.neighbor_index(at, from)?;
        Some(g.rotation[at][(pos as i64 + 3 + orient).rem_euclid(6) as usize])
    };
    let continue_straight = |at: usize, from: usize| -> Option<usize> {
        let pos = g.neighbor_index(at, from)?;
        Some(g.rotation[at][(pos + 3) % 6])
    };
    // coords[v] = row-major grid index, usize::MAX = unassigned.
    let mut coords = vec![usize::MAX; n];
    for (m, &v) in column.iter().enumerate() {
        coords[v] = m * b;
    }
    let mut shift = None;
    for m in 0..a {
        let pred = column[(m + a - 1) % a];
        let mut from = pred;
        let mut at = column[m];
        // First eastward step leaves the column; subsequent ones continue
        // straight. After b steps we must be back on the column.
        let mut row_pos = vec![column[m]];
        for j in 0..b {
            let step = if j == 0 { turn_east(at, from) } else { continue_straight(at, from) };
            let Some(next) = step else {
                return Ok(None);
            };
            from = at;
            at = next;
            row_pos.push(at);
        }
        for (j, &v) in row_pos.iter().enumerate().take(b).skip(1) {
            if coords[v] != usize::MAX {
                return Ok(None);
            }
            coords[v] = m * b + j;
        }
        let landing = row_pos[b];
        let Some(row) = column.iter().position(|&v| v == landing) else {
            return Ok(None);
        };
        let s = (row + a - m) % a;
        if *shift.get_or_insert(s) != s {
            return Ok(None);
        }
    }
    let c = shift.unwrap() + 1;
    if coords.iter().any(|&x| x == usize::MAX) {
        return Ok(None);
    }
    // Exact check: the coordinate map must carry g's edges onto T[a x b, c].
    let Ok(grid) = build_shifted_grid(a, b, c) else {
        return Ok(None);
    };
    for v in 0..n {
        let mut img: Vec<usize> = g.rotation[v].iter().map(|&u| coords[u]).collect();
        img.sort_unstable();
        let mut want = grid.rotation[coords[v]];
        want.sort_unstable();
        if img != want {
            return Ok(None);
        }
    }
    Ok(Some((a, b, c)))
}

/// All parameter triples `(a, b, c)` with `c <= a` realizing `g` as
/// `T[a x b, c]`, found by straight-line closed walks from vertex 0 through
/// each of its six incident edges. Sorted and duplicate-free; two graphs are
/// isomorphic exactly when their lists intersect.
pub fn canonical_forms(g: &TorusGraph) -> Result<Vec<(usize, usize, usize)>, TorusGraphError> {
    let mut found = BTreeSet::new();
    for dir in 0..DIRECTIONS {
        for orient in [1i64, -1] {
            if let Some(triple) = reconstruct_parameterization(g, dir, orient)? {
                found.insert(triple);
            }
        }
    }
    debug_assert!(!found.is_empty(), "no parameterization recovered");
    Ok(found.into_iter().collect())
}

/// Every `(a, b, c)` candidate attempted when enumerating order-`n` graphs:
/// all ordered divisor pairs `a * b = n` with `c` in `1..=a`, whether or not
/// the triple yields a simple graph.
pub fn raw_parameterizations(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let b = n / a;
        for c in 1..=a {
            out.push((a, b, c));
        }
    }
    out
}

/// All isomorphism classes of simple 6-regular toroidal graphs on `n`
/// vertices, in deterministic order, deduplicated by canonical-form lists.
pub fn enumerate_graphs(n: usize) -> Result<Vec<TorusGraph>, TorusGraphError> {
    let mut seen: BTreeSet<Vec<(usize, usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b, c) in raw_parameterizations(n) {
        let g = match build_shifted_grid(a, b, c) {
            Ok(g) => g,
            Err(TorusGraphError::SimpleGraphViolation(_)) => continue,
            Err(e) => return Err(e),
        };
        let forms = canonical_forms(&g)?;
        if seen.insert(forms) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Uniform sample over the isomorphism classes from [`enumerate_graphs`].
pub fn sample_uniform(n: usize, seed: u64) -> Result<TorusGraph, TorusGraphError> {
    let mut classes = enumerate_graphs(n)?;
    if classes.is_empty() {
        return Err(TorusGraphError::NoValidGraph(n));
    }
    let mut rng = Rng::new(seed);
    let i = rng.gen_range(classes.len());
    Ok(classes.swap_remove(i))
}

/// Uniform sample over valid parameter triples rather than isomorphism
/// classes (the two distributions differ; which one "uniformly at random"
/// means is left open, so both are exposed).
pub fn sample_uniform_triples(n: usize, seed: u64) -> Result<TorusGraph, TorusGraphError> {
    let valid: Vec<_> = raw_parameterizations(n)
        .into_iter()
        .filter(|&(a, b, c)| build_shifted_grid(a, b, c).is_ok())
        .collect();
    if valid.is_empty() {
        return Err(TorusGraphError::NoValidGraph(n));
    }
    let mut rng = Rng::new(seed);
    let (a, b, c) = valid[rng.gen_range(valid.len())];
    build_shifted_grid(a, b, c)
}
