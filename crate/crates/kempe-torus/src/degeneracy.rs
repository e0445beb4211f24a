//! Template contraction, 4-degeneracy orders and prefixes, good-template
//! certification, and well-behaved subgraph checks.
//!
//! A template is a collection of disjoint independent vertex sets ("colors").
//! Contracting it identifies the vertices of each color; the template is good
//! when the contraction admits a 4-degeneracy order: an order in which every
//! vertex has at least `d(v) - 4` neighbors earlier (degrees taken in the
//! quotient), with the contracted super-vertices last. Eligibility for the
//! forward greedy is monotone in the placed set, so the greedy order is exact:
//! it succeeds whenever any valid order exists.

use crate::coloring::{Coloring, ColoringError};
use crate::graph::{bfs_distances_within, is_connected_within, Graph};
use crate::rng::Rng;
use crate::topology::{edge_width, six_cycles_cached};
use crate::torus_graph::TorusGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("template colors overlap at vertex {0}")]
    Overlap(usize),
    #[error("template color {0} is not independent: edge {1}-{2}")]
    NotIndependent(usize, usize, usize),
    #[error("template vertex {0} out of range")]
    OutOfRange(usize),
    #[error("prefix is not a valid 4-degeneracy prefix")]
    InvalidPrefix,
    #[error("prescribed template colors conflict on adjacent super-vertices")]
    TemplateColorsConflict,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Disjoint independent vertex sets to be contracted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub colors: Vec<Vec<usize>>,
}

impl Template {
    pub fn monochromatic(vertices: Vec<usize>) -> Self {
        Template { colors: vec![vertices] }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.colors.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// The template appears in `phi` when each color is monochromatic.
    pub fn appears_in(&self, phi: &Coloring) -> bool {
        self.colors
            .iter()
            .all(|color| color.windows(2).all(|w| phi.color(w[0]) == phi.color(w[1])))
    }

    pub fn validate<G: Graph>(&self, g: &G) -> Result<(), TemplateError> {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for (ci, color) in self.colors.iter().enumerate() {
            for &v in color {
                if v >= n {
                    return Err(TemplateError::OutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(TemplateError::Overlap(v));
                }
            }
            for (i, &u) in color.iter().enumerate() {
                for &v in &color[i + 1..] {
                    if g.has_edge(u, v) {
                        return Err(TemplateError::NotIndependent(ci, u, v));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The contraction `G_T`: uncontracted originals keep their relative order
/// and occupy ids `0..`, followed by one super-vertex per template color.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    adj: Vec<Vec<usize>>,
    /// Original vertex -> quotient id.
    pub map: Vec<usize>,
    /// Quotient id -> original vertices.
    pub preimages: Vec<Vec<usize>>,
    /// Quotient ids of the template colors, in color order.
    pub super_ids: Vec<usize>,
}

impl Graph for QuotientGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

impl QuotientGraph {
    pub fn is_super(&self, q: usize) -> bool {
        self.super_ids.contains(&q)
    }
}

/// Contracts a template; the quotient is simple (parallel edges collapsed)
/// and its degree table is the degree in `G_T`.
pub fn contract<G: Graph>(g: &G, t: &Template) -> Result<QuotientGraph, TemplateError> {
    t.validate(g)?;
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if t.colors.iter().all(|c| !c.contains(&v)) {
            map[v] = preimages.len();
            preimages.push(vec![v]);
        }
    }
    let mut super_ids = Vec::new();
    for color in &t.colors {
        let id = preimages.len();
        super_ids.push(id);
        let mut pre = color.clone();
        pre.sort_unstable();
        for &v in &pre {
            map[v] = id;
        }
        preimages.push(pre);
    }
    let m = preimages.len();
    let mut adj = vec![Vec::new(); m];
    for u in 0..n {
        for &v in g.neighbors(u) {
            if u < v && map[u] != map[v] && !adj[map[u]].contains(&map[v]) {
                adj[map[u]].push(map[v]);
                adj[map[v]].push(map[u]);
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok(QuotientGraph { adj, map, preimages, super_ids })
}

/// A vertex order over quotient ids in which every vertex has at least
/// `d(v) - 4` neighbors earlier, super-vertices last when complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder(pub Vec<usize>);

impl DegeneracyOrder {
    /// Direct recount of the earlier-neighbor thresholds.
    pub fn validate(&self, qg: &QuotientGraph) -> bool {
        let m = qg.vertex_count();
        if self.0.len() != m {
            return false;
        }
        let mut pos = vec![usize::MAX; m];
        for (i, &v) in self.0.iter().enumerate() {
            if v >= m || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        let supers_start = m - qg.super_ids.len();
        if qg.super_ids.iter().any(|&s| pos[s] < supers_start) {
            return false;
        }
        (0..m).all(|v| {
            let earlier = qg.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]).count();
            earlier + 4 >= qg.degree(v)
        })
    }
}

/// Extends `prefix` to a complete 4-degeneracy order of the quotient with all
/// super-vertices last, by the greedy growth rule: append any vertex that
/// already has at least `d(v) - 4` placed neighbors. Returns `None` when the
/// growth stalls (no such order exists).
pub fn degeneracy_order(
    qg: &QuotientGraph,
    prefix: Option<&[usize]>,
) -> Result<Option<DegeneracyOrder>, TemplateError> {
    let m = qg.vertex_count();
    let mut placed = vec![false; m];
    let mut placed_nbrs = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    let place = |v: usize, placed: &mut Vec<bool>, placed_nbrs: &mut Vec<usize>, order: &mut Vec<usize>| {
        placed[v] = true;
        order.push(v);
        for &u in qg.neighbors(v) {
            placed_nbrs[u] += 1;
        }
    };
    if let Some(prefix) = prefix {
        for &v in prefix {
            if v >= m || placed[v] || qg.is_super(v) || placed_nbrs[v] + 4 < qg.degree(v) {
                return Err(TemplateError::InvalidPrefix);
            }
            place(v, &mut placed, &mut placed_nbrs, &mut order);
        }
    }
    let non_supers = m - qg.super_ids.len();
    while order.len() < non_supers {
        let next = (0..m).find(|&v| {
            !placed[v] && !qg.is_super(v) && placed_nbrs[v] + 4 >= qg.degree(v)
        });
        match next {
            Some(v) => place(v, &mut placed, &mut placed_nbrs, &mut order),
            None => return Ok(None),
        }
    }
    for &s in &qg.super_ids {
        if placed_nbrs[s] + 4 < qg.degree(s) {
            return Ok(None);
        }
        place(s, &mut placed, &mut placed_nbrs, &mut order);
    }
    let order = DegeneracyOrder(order);
    debug_assert!(order.validate(qg));
    Ok(Some(order))
}

/// Whether `t` is good for `g`: the contraction is 4-degenerate, witnessed
/// by a degeneracy order with the super-vertices last.
pub fn is_good<G: Graph>(g: &G, t: &Template) -> Result<Option<DegeneracyOrder>, TemplateError> {
    let qg = contract(g, t)?;
    degeneracy_order(&qg, None)
}

/// Local connectivity by the definition: every pair of `h`-vertices at
/// distance two in `g` is at distance two inside the induced subgraph.
pub fn locally_connected_direct<G: Graph>(g: &G, h: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for &v in h {
        mask[v] = true;
    }
    for (i, &u) in h.iter().enumerate() {
        for &v in &h[i + 1..] {
            if g.has_edge(u, v) {
                continue;
            }
            let common_g = g.neighbors(u).iter().any(|&w| g.has_edge(w, v));
            if !common_g {
                continue;
            }
            let common_h = g.neighbors(u).iter().any(|&w| mask[w] && g.has_edge(w, v));
            if !common_h {
                return false;
            }
        }
    }
    true
}

/// The shortcut criterion: a diameter-at-most-4 subgraph of a graph with
/// edge-width at least 7 is locally connected unless some vertex outside `h`
/// has at least four neighbors inside it.
pub fn loc_help_criterion<G: Graph>(g: &G, h: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for &v in h {
        mask[v] = true;
    }
    !(0..n).any(|w| !mask[w] && g.neighbors(w).iter().filter(|&&u| mask[u]).count() >= 4)
}

fn induced_diameter(g: &TorusGraph, mask: &[bool], h: &[usize]) -> Option<usize> {
    let mut diam = 0;
    for &v in h {
        let dist = bfs_distances_within(g, mask, v);
        for &u in h {
            if dist[u] == usize::MAX {
                return None; // disconnected
            }
            diam = diam.max(dist[u]);
        }
    }
    Some(diam)
}

/// Sixth vertices of non-contractible 6-cycles that meet `h` in exactly five
/// vertices; callers in `T[6 x b]` mode add these to the template and to `h`.
pub fn six_cycle_gaps(g: &TorusGraph, h: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; g.vertex_count()];
    for &v in h {
        mask[v] = true;
    }
    let mut gaps = Vec::new();
    for cycle in six_cycles_cached(g) {
        let verts = &cycle[..6];
        let outside: Vec<usize> = verts.iter().copied().filter(|&v| !mask[v]).collect();
        if outside.len() == 1 && !gaps.contains(&outside[0]) {
            gaps.push(outside[0]);
        }
    }
    gaps.sort_unstable();
    gaps
}

/// Whether `h` is well-behaved: locally connected with connected complement.
///
/// With edge-width at least 7 and diameter at most 4, local connectivity is
/// decided by [`loc_help_criterion`]. With `augment_six_cycles` set (the
/// `T[6 x b]` mode), any non-contractible 6-cycle meeting `h` in exactly five
/// vertices is flagged by returning `false`, so the caller can add the final
/// vertex via [`six_cycle_gaps`]; once none remains, the criterion applies at
/// edge-width 6 as well.
pub fn is_well_behaved(g: &TorusGraph, h: &[usize], augment_six_cycles: bool) -> bool {
    assert!(!h.is_empty(), "is_well_behaved needs a nonempty subgraph");
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for &v in h {
        mask[v] = true;
    }
    let ew = edge_width(g).map(|(w, _)| w).unwrap_or(0);
    if augment_six_cycles && ew == 6 && !six_cycle_gaps(g, h).is_empty() {
        return false;
    }
    let fast_ew = ew >= 7 || (augment_six_cycles && ew >= 6);
    let locally_connected = if fast_ew
        && induced_diameter(g, &mask, h).is_some_and(|d| d <= 4)
    {
        loc_help_criterion(g, h)
    } else {
        locally_connected_direct(g, h)
    };
    if !locally_connected {
        return false;
    }
    let complement: Vec<bool> = mask.iter().map(|&m| !m).collect();
    is_connected_within(g, &complement)
}

/// Extends prescribed colors on the template's classes to a proper
/// `k`-coloring of all of `g`, coloring the quotient in the reverse of the
/// witness degeneracy order (each vertex then sees at most four colored
/// neighbors). Color choice among the free ones is seeded.
pub fn extend_template_coloring<G: Graph>(
    g: &G,
    qg: &QuotientGraph,
    order: &DegeneracyOrder,
    template_colors: &[u8],
    k: u8,
    seed: u64,
) -> Result<Coloring, TemplateError> {
    assert_eq!(template_colors.len(), qg.super_ids.len());
    let m = qg.vertex_count();
    let mut qcolor = vec![0u8; m];
    for (i, &s) in qg.super_ids.iter().enumerate() {
        qcolor[s] = template_colors[i];
    }
    for (i, &s) in qg.super_ids.iter().enumerate() {
        for &u in qg.neighbors(s) {
            if qg.is_super(u) && qcolor[u] == template_colors[i] {
                return Err(TemplateError::TemplateColorsConflict);
            }
        }
    }
    let mut rng = Rng::new(seed);
    for &v in order.0.iter().rev() {
        if qcolor[v] != 0 {
            continue;
        }
        let mut free: Vec<u8> = (1..=k)
            .filter(|&c| qg.neighbors(v).iter().all(|&u| qcolor[u] != c))
            .collect();
        if free.is_empty() {
            return Err(TemplateError::Coloring(ColoringError::Unsatisfiable { k }));
        }
        let pick = rng.gen_range(free.len());
        qcolor[v] = free.swap_remove(pick);
    }
    let colors: Vec<u8> = (0..g.vertex_count()).map(|v| qcolor[qg.map[v]]).collect();
    Ok(Coloring::new(k, colors))
}
