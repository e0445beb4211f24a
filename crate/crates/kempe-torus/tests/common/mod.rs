//! Independent oracles used by the integration and acceptance suites. These
//! deliberately avoid the library's implementation paths they cross-check:
//! edge-width is found by depth-first cycle enumeration rather than cover
//! BFS, isomorphism by rotation-frame propagation rather than canonical
//! forms, and Kempe classes by union-find rather than flood fill.

#![allow(dead_code)]

use kempe_torus::coloring::Coloring;
use kempe_torus::graph::Graph;
use kempe_torus::torus_graph::TorusGraph;
use std::collections::HashMap;

/// Shortest non-contractible simple cycle by iterative-deepening DFS over
/// simple paths, tracking homology voltages.
pub fn brute_force_edge_width(g: &TorusGraph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    fn dfs(
        g: &TorusGraph,
        root: usize,
        limit: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        volt: (i64, i64),
    ) -> Option<Vec<usize>> {
        let v = *path.last().unwrap();
        if path.len() == limit {
            if g.neighbor_index(v, root).is_some() {
                let (dx, dy) = g.voltage(v, root).unwrap();
                if (volt.0 + dx, volt.1 + dy) != (0, 0) {
                    let mut cycle = path.clone();
                    cycle.push(root);
                    return Some(cycle);
                }
            }
            return None;
        }
        for dir in 0..6 {
            let u = g.step(v, dir);
            if u < root || on_path[u] {
                continue;
            }
            let (dx, dy) = g.direction_voltage(dir);
            on_path[u] = true;
            path.push(u);
            let hit = dfs(g, root, limit, path, on_path, (volt.0 + dx, volt.1 + dy));
            path.pop();
            on_path[u] = false;
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
    for limit in 3..=n {
        for root in 0..n {
            let mut path = vec![root];
            let mut on_path = vec![false; n];
            on_path[root] = true;
            if let Some(cycle) = dfs(g, root, limit, &mut path, &mut on_path, (0, 0)) {
                return (limit, cycle);
            }
        }
    }
    unreachable!("a toroidal graph always has a non-contractible cycle");
}

/// Isomorphism oracle by frame propagation: a 6-regular toroidal graph has a
/// unique embedding, so any isomorphism maps rotations onto rotations up to
/// cyclic offset and reflection. Every root frame is tried and each candidate
/// map is verified edge-by-edge, so a `true` answer is always sound.
pub fn frame_isomorphic(g1: &TorusGraph, g2: &TorusGraph) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() {
        return false;
    }
    'frames: for root_image in 0..n {
        for offset in 0..6usize {
            for flip in [1i64, -1] {
                let mut map = vec![usize::MAX; n];
                let mut frame = vec![(usize::MAX, 0i64); n];
                map[0] = root_image;
                frame[0] = (offset, flip);
                let mut queue = std::collections::VecDeque::from([0usize]);
                let mut consistent = true;
                while let Some(u) = queue.pop_front() {
                    let (off, fl) = frame[u];
                    let u2 = map[u];
                    for i in 0..6usize {
                        let w = g1.step(u, i);
                        let j = (off as i64 + fl * i as i64).rem_euclid(6) as usize;
                        let w2 = g2.step(u2, j);
                        if map[w] == usize::MAX {
                            map[w] = w2;
                            let p = g1.neighbor_index(w, u).unwrap() as i64;
                            let p2 = g2.neighbor_index(w2, u2);
                            let Some(p2) = p2 else {
                                consistent = false;
                                break;
                            };
                            frame[w] = (((p2 as i64 - fl * p).rem_euclid(6)) as usize, fl);
                            queue.push_back(w);
                        } else if map[w] != w2 {
                            consistent = false;
                            break;
                        }
                    }
                    if !consistent {
                        break;
                    }
                }
                if !consistent {
                    continue;
                }
                // Bijection + full edge preservation check.
                let mut hit = vec![false; n];
                for &m in &map {
                    if m == usize::MAX || hit[m] {
                        continue 'frames;
                    }
                    hit[m] = true;
                }
                let ok = (0..n).all(|v| {
                    g1.neighbors(v)
                        .iter()
                        .all(|&w| g2.neighbor_index(map[v], map[w]).is_some())
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

/// Independent Kempe-class count: enumerate all proper k-colorings, then
/// union-find over single-swap edges.
pub fn union_find_class_count<G: Graph>(g: &G, k: u8) -> (usize, usize) {
    let n = g.vertex_count();
    let mut colorings: Vec<Vec<u8>> = Vec::new();
    let mut current = vec![0u8; n];
    fn enumerate<G: Graph>(g: &G, k: u8, v: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if v == g.vertex_count() {
            out.push(cur.clone());
            return;
        }
        for c in 1..=k {
            if g.neighbors(v).iter().any(|&u| cur[u] == c) {
                continue;
            }
            cur[v] = c;
            enumerate(g, k, v + 1, cur, out);
            cur[v] = 0;
        }
    }
    enumerate(g, k, 0, &mut current, &mut colorings);
    let index: HashMap<Vec<u8>, usize> =
        colorings.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut parent: Vec<usize> = (0..colorings.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, coloring) in colorings.iter().enumerate() {
        for alpha in 1..=k {
            for beta in alpha + 1..=k {
                let mut seen = vec![false; n];
                for v in 0..n {
                    if seen[v] || (coloring[v] != alpha && coloring[v] != beta) {
                        continue;
                    }
                    let mut comp = vec![v];
                    seen[v] = true;
                    let mut stack = vec![v];
                    while let Some(u) = stack.pop() {
                        for &w in g.neighbors(u) {
                            if !seen[w] && (coloring[w] == alpha || coloring[w] == beta) {
                                seen[w] = true;
                                comp.push(w);
                                stack.push(w);
                            }
                        }
                    }
                    let mut swapped = coloring.clone();
                    for &u in &comp {
                        swapped[u] = if swapped[u] == alpha { beta } else { alpha };
                    }
                    let j = index[&swapped];
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..colorings.len()).map(|i| find(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    (colorings.len(), roots.len())
}

/// Independent certificate replay: recomputes components by scan-and-flood,
/// tracks properness, and compares FNV-1a hashes computed from scratch.
pub fn independent_replay(g: &TorusGraph, start: &Coloring, cert: &kempe_torus::Certificate) -> bool {
    fn fnv(bytes: &[u8]) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
    let n = g.vertex_count();
    let proper = |c: &[u8]| {
        (0..n).all(|v| {
            c[v] >= 1 && c[v] <= start.k && g.neighbors(v).iter().all(|&u| c[u] != c[v])
        })
    };
    if fnv(&start.colors) != cert.start_hash || !proper(&start.colors) {
        return false;
    }
    let mut colors = start.colors.clone();
    for mv in &cert.moves {
        if mv.anchor >= n || mv.alpha == mv.beta {
            return false;
        }
        let c = colors[mv.anchor];
        if c != mv.alpha && c != mv.beta {
            return false;
        }
        let mut seen = vec![false; n];
        seen[mv.anchor] = true;
        let mut stack = vec![mv.anchor];
        let mut comp = vec![mv.anchor];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] && (colors[w] == mv.alpha || colors[w] == mv.beta) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        for &u in &comp {
            colors[u] = if colors[u] == mv.alpha { mv.beta } else { mv.alpha };
        }
        if !proper(&colors) {
            return false;
        }
    }
    fnv(&colors) == cert.end_hash
}
