//! Minimal graph abstraction shared by the toroidal graphs, quotient graphs,
//! and plain fixtures (e.g. small cycles used in reconfiguration tests).

use std::collections::VecDeque;

/// FNV-1a 64-bit hash (offset basis `0xcbf29ce484222325`, prime
/// `0x100000001b3`). Certificates depend on this being bit-exact.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub trait Graph {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(&v)
    }
}

/// Plain adjacency-list graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjGraph {
    adj: Vec<Vec<usize>>,
}

impl AdjGraph {
    pub fn new(adj: Vec<Vec<usize>>) -> Self {
        AdjGraph { adj }
    }

    /// Builds from an edge list, deduplicating parallel edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        AdjGraph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }
}

impl Graph for AdjGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// BFS distances from `start`, `usize::MAX` for unreachable vertices.
pub fn bfs_distances<G: Graph>(g: &G, start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// BFS distances within the induced subgraph on `set` (given as a membership
/// mask), from `start` which must be in the set.
pub fn bfs_distances_within<G: Graph>(g: &G, mask: &[bool], start: usize) -> Vec<usize> {
    debug_assert!(mask[start]);
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if mask[w] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Whether the induced subgraph on the masked vertex set is connected.
/// An empty set counts as connected.
pub fn is_connected_within<G: Graph>(g: &G, mask: &[bool]) -> bool {
    let Some(start) = mask.iter().position(|&m| m) else {
        return true;
    };
    let dist = bfs_distances_within(g, mask, start);
    mask.iter().enumerate().all(|(v, &m)| !m || dist[v] != usize::MAX)
}

/// Vertices within BFS distance `radius` of any vertex in `seeds`.
pub fn ball<G: Graph>(g: &G, seeds: &[usize], radius: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..n).filter(|&v| dist[v] != usize::MAX).collect()
}
