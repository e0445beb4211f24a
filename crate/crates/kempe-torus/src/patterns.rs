//! Detection of the local coloring motifs that drive reconfiguration: pairs,
//! triples, parallel pairs, and crossing pairs; enumeration of the twelve
//! good 4-templates extending a triple; bonus vertices.
//!
//! Motif geometry is expressed through rotation-system positions, so the same
//! detectors work on shifted grids and circulants:
//! - triple: three same-colored vertices at alternating cyclic positions of a
//!   common neighbor;
//! - pair: two same-colored vertices with exactly two common neighbors;
//! - parallel / crossing pairs: two disjoint same-colored position pairs
//!   `{p, p+2}` occupying `{p+3, p+5}` (parallel) or `{p+1, p+3}` (crossing)
//!   around a common center.

use crate::coloring::Coloring;
use crate::degeneracy::{is_good, Template};
use crate::graph::{ball, Graph};
use crate::torus_graph::TorusGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Pair,
    Triple,
    ParallelPairs,
    CrossingPairs,
}

/// A detected motif. Witness layout:
/// - pair: the two same-colored vertices, then their two common neighbors;
/// - triple: the three vertices, then the common neighbor (center);
/// - parallel/crossing pairs: the four vertices, one color pair then the
///   other, the pair containing the smallest vertex first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: PatternKind,
    pub witness: Vec<usize>,
}

fn common_neighbors<G: Graph>(g: &G, u: usize, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&w| g.has_edge(w, v))
        .collect();
    out.sort_unstable();
    out
}

/// All motif instances in `phi`, in deterministic order.
pub fn find_patterns(g: &TorusGraph, phi: &Coloring) -> Vec<Pattern> {
    let n = g.vertex_count();
    let mut found: BTreeSet<Pattern> = BTreeSet::new();

    // Triples: alternating positions around each center.
    for center in 0..n {
        for parity in 0..2 {
            let trio = [
                g.step(center, parity),
                g.step(center, parity + 2),
                g.step(center, parity + 4),
            ];
            if phi.color(trio[0]) == phi.color(trio[1]) && phi.color(trio[1]) == phi.color(trio[2])
            {
                let mut witness = trio.to_vec();
                witness.sort_unstable();
                witness.push(center);
                found.insert(Pattern { kind: PatternKind::Triple, witness });
            }
        }
    }

    // Pairs: same color, exactly two common neighbors.
    for u in 0..n {
        for w in u + 1..n {
            if phi.color(u) != phi.color(w) || g.has_edge(u, w) {
                continue;
            }
            let common = common_neighbors(g, u, w);
            if common.len() == 2 {
                let witness = vec![u, w, common[0], common[1]];
                found.insert(Pattern { kind: PatternKind::Pair, witness });
            }
        }
    }

    // Parallel and crossing pairs around each center.
    let mut push_pairs = |kind: PatternKind, a: (usize, usize), b: (usize, usize)| {
        let mut pa = [a.0.min(a.1), a.0.max(a.1)];
        let mut pb = [b.0.min(b.1), b.0.max(b.1)];
        if pb[0] < pa[0] {
            std::mem::swap(&mut pa, &mut pb);
        }
        found.insert(Pattern { kind, witness: vec![pa[0], pa[1], pb[0], pb[1]] });
    };
    for z in 0..n {
        let nb: Vec<usize> = (0..6).map(|k| g.step(z, k)).collect();
        let col: Vec<u8> = nb.iter().map(|&v| phi.color(v)).collect();
        let same = |i: usize, j: usize| col[i % 6] == col[j % 6];
        for p in 0..3 {
            if same(p, p + 2) && same(p + 3, p + 5) && !same(p, p + 3) {
                push_pairs(
                    PatternKind::ParallelPairs,
                    (nb[p], nb[(p + 2) % 6]),
                    (nb[(p + 3) % 6], nb[(p + 5) % 6]),
                );
            }
        }
        for p in 0..6 {
            if same(p, p + 2) && same(p + 1, p + 3) && !same(p, p + 1) {
                push_pairs(
                    PatternKind::CrossingPairs,
                    (nb[p], nb[(p + 2) % 6]),
                    (nb[(p + 1) % 6], nb[(p + 3) % 6]),
                );
            }
        }
    }

    found.into_iter().collect()
}

/// Lattice offsets (in the basis of the triple's two leading directions) of
/// the twelve 4th-vertex positions extending a triple to a good 4-template:
/// the two figure shapes closed under the rotations and reflections fixing
/// the triple's center.
const TRIPLE_EXTENSION_OFFSETS: [(i64, i64); 12] = [
    (3, 1),
    (2, -1),
    (1, 3),
    (-1, 2),
    (-2, -3),
    (-3, -2),
    (3, 2),
    (1, -2),
    (2, 3),
    (-2, 1),
    (-1, -3),
    (-3, -1),
];

/// The candidate 4th vertices for a triple, by offset walking from its
/// center; callers filter for independence and goodness.
pub fn triple_extension_candidates(g: &TorusGraph, triple: &Pattern) -> Vec<usize> {
    assert_eq!(triple.kind, PatternKind::Triple);
    let center = triple.witness[3];
    let parity = (0..2)
        .find(|&q| {
            let mut trio: Vec<usize> = (0..3).map(|i| g.step(center, q + 2 * i)).collect();
            trio.sort_unstable();
            trio == triple.witness[..3]
        })
        .expect("witness vertices are not alternating neighbors of the center");
    TRIPLE_EXTENSION_OFFSETS
        .iter()
        .map(|&(alpha, beta)| g.lattice_offset(center, parity, alpha, parity + 2, beta))
        .collect()
}

/// The good 4-templates obtained by adding a 4th vertex to a triple in the
/// twelve symmetric positions. On edge-width >= 7 graphs all twelve are good.
pub fn triple_templates(g: &TorusGraph, triple: &Pattern) -> Vec<Template> {
    let trio = &triple.witness[..3];
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for w in triple_extension_candidates(g, triple) {
        if trio.contains(&w) || trio.iter().any(|&t| g.has_edge(t, w)) {
            continue;
        }
        let mut verts = trio.to_vec();
        verts.push(w);
        verts.sort_unstable();
        if !seen.insert(verts.clone()) {
            continue;
        }
        let t = Template::monochromatic(verts);
        if is_good(g, &t).unwrap_or(None).is_some() {
            out.push(t);
        }
    }
    out
}

/// Vertices `v` outside the witness subgraph `h` such that adding `{v}` as
/// its own color keeps the template good, paired with the augmented template.
pub fn bonus_vertices(
    g: &TorusGraph,
    t: &Template,
    h: &[usize],
) -> Vec<(usize, Template)> {
    let tv = t.vertices();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if h.contains(&v) || tv.contains(&v) {
            continue;
        }
        let mut colors = t.colors.clone();
        colors.push(vec![v]);
        let augmented = Template { colors };
        if is_good(g, &augmented).unwrap_or(None).is_some() {
            out.push((v, augmented));
        }
    }
    out
}

/// Candidate bonus vertices near the template, for callers that only need
/// local ones (the lemma's use sites all are).
pub fn bonus_vertices_near(
    g: &TorusGraph,
    t: &Template,
    h: &[usize],
    radius: usize,
) -> Vec<(usize, Template)> {
    let tv = t.vertices();
    let near = ball(g, &tv, radius);
    bonus_vertices(g, t, h)
        .into_iter()
        .filter(|(v, _)| near.contains(v))
        .collect()
}
