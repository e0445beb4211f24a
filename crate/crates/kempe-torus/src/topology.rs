//! Homology classes of closed walks and edge-width (length of the shortest
//! non-contractible cycle) computed by breadth-first search in the universal
//! cover.

use crate::graph::Graph;
use crate::torus_graph::{GraphParams, TorusGraph};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("vertices {0} and {1} are not adjacent; not a walk")]
    NotAWalk(usize, usize),
    #[error("walk is not closed (starts at {0}, ends at {1})")]
    NotClosed(usize, usize),
    #[error("walk is empty")]
    EmptyWalk,
    #[error("cover search exceeded its radius cap without closing; graph invariants violated")]
    CoverSearchOverflow,
}

/// Net voltage of a closed walk; `(0, 0)` means contractible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass(pub i64, pub i64);

impl HomologyClass {
    pub fn is_contractible(self) -> bool {
        self == HomologyClass(0, 0)
    }
}

/// Componentwise sum of voltages along a closed walk given as a vertex
/// sequence with `walk[0] == walk[last]`.
pub fn walk_class(g: &TorusGraph, walk: &[usize]) -> Result<HomologyClass, TopologyError> {
    if walk.is_empty() {
        return Err(TopologyError::EmptyWalk);
    }
    let (first, last) = (walk[0], *walk.last().unwrap());
    if first != last {
        return Err(TopologyError::NotClosed(first, last));
    }
    let mut sum = (0i64, 0i64);
    for w in walk.windows(2) {
        let (u, v) = (w[0], w[1]);
        let (dx, dy) = g.voltage(u, v).ok_or(TopologyError::NotAWalk(u, v))?;
        sum.0 += dx;
        sum.1 += dy;
    }
    debug_assert!(g.deck_contains(sum.0, sum.1), "closed walk voltage outside deck lattice");
    Ok(HomologyClass(sum.0, sum.1))
}

fn radius_cap(g: &TorusGraph) -> usize {
    match g.params() {
        GraphParams::ShiftedGrid { a, b, .. } => 2 * (a + b),
        GraphParams::Circulant { n, .. } => 2 * n,
    }
}

/// Shortest non-contractible closed walk through `base`, via BFS from one
/// lift of `base` in the universal cover to any distinct lift of it.
pub fn edge_width_from_base(
    g: &TorusGraph,
    base: usize,
) -> Result<(usize, Vec<usize>), TopologyError> {
    type State = (usize, i64, i64);
    let start: State = (base, 0, 0);
    let cap = radius_cap(g);
    let mut parent: HashMap<State, State> = HashMap::new();
    let mut depth: HashMap<State, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(start, 0);
    queue.push_back(start);
    let mut hits: Vec<State> = Vec::new();
    let mut hit_depth = None;
    while let Some(state) = queue.pop_front() {
        let d = depth[&state];
        if let Some(hd) = hit_depth {
            if d >= hd {
                break;
            }
        }
        if d >= cap {
            return Err(TopologyError::CoverSearchOverflow);
        }
        let (v, x, y) = state;
        for dir in 0..6 {
            let u = g.step(v, dir);
            let (dx, dy) = g.direction_voltage(dir);
            let next: State = (u, x + dx, y + dy);
            if depth.contains_key(&next) {
                continue;
            }
            depth.insert(next, d + 1);
            parent.insert(next, state);
            if u == base && (next.1, next.2) != (0, 0) {
                hits.push(next);
                hit_depth.get_or_insert(d + 1);
            } else {
                queue.push_back(next);
            }
        }
    }
    if hits.is_empty() {
        return Err(TopologyError::CoverSearchOverflow);
    }
    hits.sort_unstable();
    let rebuild = |end: State| {
        let mut path = vec![end];
        let mut cur = end;
        while cur != start {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path.into_iter().map(|(v, _, _)| v).collect::<Vec<usize>>()
    };
    let is_simple = |walk: &[usize]| {
        let mut inner = walk[..walk.len() - 1].to_vec();
        inner.sort_unstable();
        inner.windows(2).all(|w| w[0] != w[1])
    };
    // The minimum-length witness is always a cycle; scanning for a simple one
    // among the equal-depth arrivals is a defensive fallback only.
    let mut first = None;
    for &h in &hits {
        let walk = rebuild(h);
        if first.is_none() {
            first = Some(walk.clone());
        }
        if is_simple(&walk) {
            return Ok((walk.len() - 1, walk));
        }
    }
    let walk = first.unwrap();
    Ok((walk.len() - 1, walk))
}

/// Length of the shortest non-contractible cycle, with a witness cycle
/// (closed vertex walk). One base vertex suffices by vertex-transitivity;
/// the result is cached on the graph.
pub fn edge_width(g: &TorusGraph) -> Result<(usize, Vec<usize>), TopologyError> {
    if let Some((w, wit)) = g.edge_width_cell().get() {
        return Ok((*w, wit.clone()));
    }
    let computed = edge_width_from_base(g, 0)?;
    let _ = g.edge_width_cell().set(computed.clone());
    Ok(computed)
}

/// All non-contractible simple cycles of exactly `len` edges, each reported
/// once in canonical form (minimum vertex first, smaller second vertex picks
/// the direction). Used by the `T[6 x b]` machinery and its checks.
pub fn noncontractible_cycles_of_length(g: &TorusGraph, len: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut path: Vec<usize> = Vec::with_capacity(len + 1);
    let mut on_path = vec![false; n];
    // Paths start at their minimum vertex; the canonical direction makes the
    // second vertex smaller than the last.
    fn dfs(
        g: &TorusGraph,
        root: usize,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        volt: (i64, i64),
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if path.len() == len {
            if g.neighbor_index(v, root).is_some() {
                let (dx, dy) = g.voltage(v, root).unwrap();
                if (volt.0 + dx, volt.1 + dy) != (0, 0) && path[1] < path[len - 1] {
                    let mut cycle = path.clone();
                    cycle.push(root);
                    out.push(cycle);
                }
            }
            return;
        }
        for dir in 0..6 {
            let u = g.step(v, dir);
            if u <= root || on_path[u] {
                continue;
            }
            let (dx, dy) = g.direction_voltage(dir);
            on_path[u] = true;
            path.push(u);
            dfs(g, root, len, path, on_path, (volt.0 + dx, volt.1 + dy), out);
            path.pop();
            on_path[u] = false;
        }
    }
    for root in 0..n {
        path.clear();
        path.push(root);
        on_path[root] = true;
        dfs(g, root, len, &mut path, &mut on_path, (0, 0), &mut out);
        on_path[root] = false;
    }
    out.sort_unstable();
    out
}

/// Cached list of non-contractible 6-cycles, computed on first use.
pub fn six_cycles_cached(g: &TorusGraph) -> &[Vec<usize>] {
    g.six_cycles_cell()
        .get_or_init(|| noncontractible_cycles_of_length(g, 6))
}
