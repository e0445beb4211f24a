//! Exact Kempe-equivalence classes on small instances, and the certificate
//! pipeline connecting any two 5-colorings: normalize a coloring until it
//! contains a good monochromatic 4-template, align two colorings sharing a
//! template by peeling a 4-degeneracy order of the contraction, and route
//! between template colorings through a 4-coloring (or, for the one
//! non-4-colorable graph in scope, through rotations of its explicit
//! 5-coloring).

use crate::coloring::{
    apply_move, is_proper, kempe_component, transposition_moves, Certificate, Coloring,
    ColoringError, KempeMove,
};
use crate::coloring::{verify_certificate, CertificateError};
use crate::degeneracy::{contract, degeneracy_order, QuotientGraph, Template, TemplateError};
use crate::fourcolor::{classify, FourColorError};
use crate::graph::{ball, Graph};
use crate::patterns::{find_patterns, triple_extension_candidates, Pattern, PatternKind};
use crate::topology::edge_width;
use crate::torus_graph::{canonical_forms, TorusGraph, TorusGraphError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReconfigError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("guided search exhausted all pattern witnesses at rank {rank}; this indicates a bug or an out-of-hypothesis input")]
    SearchExhausted { rank: u8 },
    #[error("state cap exceeded; at least {partial} proper colorings exist")]
    StateCapExceeded { partial: usize },
    #[error("a coloring does not contain the template")]
    TemplateNotContained,
    #[error("template is not good (contraction is not 4-degenerate)")]
    NotGood,
    #[error("graph is not 4-colorable and not C37[1,10,11]; unreachable for edge-width >= 6 inputs")]
    NotFourColorable,
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    FourColor(#[from] FourColorError),
    #[error(transparent)]
    Graph(#[from] TorusGraphError),
    #[error("emitted certificate failed verification: {0}")]
    Certificate(#[from] CertificateError),
}

// ---------------------------------------------------------------------------
// Exact equivalence classes
// ---------------------------------------------------------------------------

/// Exact connected components of the reconfiguration graph over all proper
/// `k`-colorings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub k: u8,
    pub quotient: bool,
    pub class_count: usize,
    /// Lexicographically smallest member of each class, in class-id order.
    pub representatives: Vec<Coloring>,
    pub states_visited: usize,
    #[serde(skip)]
    class_by_state: HashMap<Vec<u8>, usize>,
}

impl ClassReport {
    /// Class id of a proper coloring, canonicalizing first in quotient mode.
    pub fn class_of(&self, phi: &Coloring) -> Option<usize> {
        let key = if self.quotient { canonical_color_form(&phi.colors) } else { phi.colors.clone() };
        self.class_by_state.get(&key).copied()
    }
}

/// Lexicographically smallest image under color permutations: relabel colors
/// by first occurrence.
pub fn canonical_color_form(colors: &[u8]) -> Vec<u8> {
    let mut relabel = [0u8; 256];
    let mut next = 0u8;
    colors
        .iter()
        .map(|&c| {
            let slot = &mut relabel[c as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        })
        .collect()
}

fn enumerate_proper_colorings<G: Graph>(
    g: &G,
    k: u8,
    cap: usize,
) -> Result<Vec<Vec<u8>>, ReconfigError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut colors = vec![0u8; n];
    fn rec<G: Graph>(
        g: &G,
        k: u8,
        colors: &mut Vec<u8>,
        v: usize,
        out: &mut Vec<Vec<u8>>,
        cap: usize,
    ) -> bool {
        if v == g.vertex_count() {
            out.push(colors.clone());
            return out.len() <= cap;
        }
        for c in 1..=k {
            if g.neighbors(v).iter().any(|&u| colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if !rec(g, k, colors, v + 1, out, cap) {
                return false;
            }
            colors[v] = 0;
        }
        true
    }
    if !rec(g, k, &mut colors, 0, &mut out, cap) {
        return Err(ReconfigError::StateCapExceeded { partial: out.len() });
    }
    Ok(out)
}

/// All Kempe moves out of a state, one canonical move per component of each
/// color pair (anchored at the component's minimum vertex).
fn all_swap_neighbors<G: Graph>(g: &G, colors: &[u8], k: u8) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for alpha in 1..=k {
        for beta in alpha + 1..=k {
            let mut seen = vec![false; n];
            for v in 0..n {
                if seen[v] || (colors[v] != alpha && colors[v] != beta) {
                    continue;
                }
                // Flood the component and swap it.
                let mut comp = vec![v];
                seen[v] = true;
                let mut stack = vec![v];
                while let Some(u) = stack.pop() {
                    for &w in g.neighbors(u) {
                        if !seen[w] && (colors[w] == alpha || colors[w] == beta) {
                            seen[w] = true;
                            comp.push(w);
                            stack.push(w);
                        }
                    }
                }
                let mut next = colors.to_vec();
                for &u in &comp {
                    next[u] = if next[u] == alpha { beta } else { alpha };
                }
                out.push(next);
            }
        }
    }
    out
}

/// The full Kempe class of one coloring, flooded move by move; errors with
/// `StateCapExceeded` when the class outgrows `cap`. Useful when the whole
/// state space is too large to enumerate but one class is small.
pub fn flood_class<G: Graph>(
    g: &G,
    phi: &Coloring,
    k: u8,
    cap: usize,
) -> Result<HashSet<Vec<u8>>, ReconfigError> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(phi.colors.clone());
    let mut stack = vec![phi.colors.clone()];
    while let Some(state) = stack.pop() {
        for nb in all_swap_neighbors(g, &state, k) {
            if seen.len() >= cap {
                return Err(ReconfigError::StateCapExceeded { partial: seen.len() });
            }
            if seen.insert(nb.clone()) {
                stack.push(nb);
            }
        }
    }
    Ok(seen)
}

/// Exact Kempe classes via flood fill over all proper colorings. In quotient
/// mode colorings are identified up to color permutation (sound because
/// global color transpositions are realizable by swap sequences).
pub fn kempe_classes<G: Graph>(
    g: &G,
    k: u8,
    quotient: bool,
    state_cap: usize,
) -> Result<ClassReport, ReconfigError> {
    let raw = enumerate_proper_colorings(g, k, state_cap)?;
    let mut states: Vec<Vec<u8>> = if quotient {
        let set: BTreeSet<Vec<u8>> = raw.iter().map(|c| canonical_color_form(c)).collect();
        set.into_iter().collect()
    } else {
        raw
    };
    states.sort_unstable();
    let index: HashMap<Vec<u8>, usize> =
        states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut class_of = vec![usize::MAX; states.len()];
    let mut class_count = 0;
    for start in 0..states.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = class_count;
        class_count += 1;
        class_of[start] = id;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for mut nb in all_swap_neighbors(g, &states[s], k) {
                if quotient {
                    nb = canonical_color_form(&nb);
                }
                let &j = index
                    .get(&nb)
                    .expect("swap image of an enumerated proper coloring must be enumerated");
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    stack.push(j);
                }
            }
        }
    }
    // Lexicographically smallest member per class; states are sorted, so the
    // first member seen is the smallest.
    let mut representatives: Vec<Option<Coloring>> = vec![None; class_count];
    for (i, s) in states.iter().enumerate() {
        let id = class_of[i];
        if representatives[id].is_none() {
            representatives[id] = Some(Coloring::new(k, s.clone()));
        }
    }
    let class_by_state: HashMap<Vec<u8>, usize> =
        states.iter().enumerate().map(|(i, s)| (s.clone(), class_of[i])).collect();
    Ok(ClassReport {
        k,
        quotient,
        class_count,
        representatives: representatives.into_iter().map(Option::unwrap).collect(),
        states_visited: states.len(),
        class_by_state,
    })
}

// ---------------------------------------------------------------------------
// Normalization: reach a coloring containing a good monochromatic 4-template
// ---------------------------------------------------------------------------

/// Search locality and effort bounds for the pattern-ladder search: swaps are
/// restricted to components meeting the radius-3 ball around the current
/// pattern witness, at most 12 moves per rank upgrade.
const SEARCH_RADIUS: usize = 3;
const SEARCH_DEPTH: usize = 12;
const SEARCH_NODE_BUDGET: usize = 60_000;

type GoodnessMemo = HashMap<Vec<usize>, bool>;

fn pattern_rank(kind: PatternKind) -> u8 {
    match kind {
        PatternKind::Pair => 1,
        PatternKind::ParallelPairs | PatternKind::CrossingPairs => 2,
        PatternKind::Triple => 3,
    }
}

fn rank_of(patterns: &[Pattern]) -> u8 {
    patterns.iter().map(|p| pattern_rank(p.kind)).max().unwrap_or(0)
}

fn template_is_good_memo(g: &TorusGraph, verts: &[usize], memo: &mut GoodnessMemo) -> bool {
    if let Some(&good) = memo.get(verts) {
        return good;
    }
    let t = Template::monochromatic(verts.to_vec());
    let good = matches!(crate::degeneracy::is_good(g, &t), Ok(Some(_)));
    memo.insert(verts.to_vec(), good);
    good
}

/// First good monochromatic 4-template contained in `phi`: a same-colored
/// triple together with a same-colored 4th vertex among its twelve extension
/// positions whose contraction is 4-degenerate.
fn contained_good_template(
    g: &TorusGraph,
    phi: &Coloring,
    patterns: &[Pattern],
    memo: &mut GoodnessMemo,
) -> Option<Template> {
    for p in patterns.iter().filter(|p| p.kind == PatternKind::Triple) {
        let trio = &p.witness[..3];
        let color = phi.color(trio[0]);
        let mut tried = BTreeSet::new();
        for w in triple_extension_candidates(g, p) {
            if phi.color(w) != color || trio.contains(&w) || !tried.insert(w) {
                continue;
            }
            if trio.iter().any(|&t| g.has_edge(t, w)) {
                continue;
            }
            let mut verts = trio.to_vec();
            verts.push(w);
            verts.sort_unstable();
            if template_is_good_memo(g, &verts, memo) {
                return Some(Template::monochromatic(verts));
            }
        }
    }
    None
}

fn has_good_template(
    g: &TorusGraph,
    phi: &Coloring,
    patterns: &[Pattern],
    memo: &mut GoodnessMemo,
) -> bool {
    contained_good_template(g, phi, patterns, memo).is_some()
}

/// Canonical local moves: one per Kempe component meeting the ball, for every
/// unordered color pair, in deterministic order.
fn local_moves(g: &TorusGraph, phi: &Coloring, ball_verts: &[usize], k: u8) -> Vec<KempeMove> {
    let n = g.vertex_count();
    let mut moves = Vec::new();
    for alpha in 1..=k {
        for beta in alpha + 1..=k {
            let mut seen = vec![false; n];
            for &v in ball_verts {
                if seen[v] || (phi.color(v) != alpha && phi.color(v) != beta) {
                    continue;
                }
                let comp = kempe_component(g, phi, v, alpha, beta).unwrap();
                for &u in &comp {
                    seen[u] = true;
                }
                moves.push(KempeMove { anchor: comp[0], alpha, beta });
            }
        }
    }
    moves
}

struct SearchNode {
    coloring: Coloring,
    parent: usize,
    mv: Option<KempeMove>,
}

/// Best-first search for any coloring of rank greater than `base_rank`
/// (rank 4 meaning: contains a good monochromatic 4-template), with moves
/// restricted to components meeting the witness ball.
fn guided_search(
    g: &TorusGraph,
    start: &Coloring,
    base_rank: u8,
    witness: &[usize],
    memo: &mut GoodnessMemo,
) -> Option<Vec<KempeMove>> {
    let ball_verts = ball(g, witness, SEARCH_RADIUS);
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    visited.insert(start.colors.clone());
    let mut arena = vec![SearchNode { coloring: start.clone(), parent: usize::MAX, mv: None }];
    // Max-heap: highest pattern rank first, then shallowest, then FIFO.
    let mut heap: BinaryHeap<(u8, std::cmp::Reverse<usize>, std::cmp::Reverse<usize>)> =
        BinaryHeap::new();
    heap.push((base_rank, std::cmp::Reverse(0), std::cmp::Reverse(0)));
    let mut nodes = 0usize;
    let rebuild = |arena: &[SearchNode], mut idx: usize| {
        let mut path = Vec::new();
        while let Some(mv) = arena[idx].mv {
            path.push(mv);
            idx = arena[idx].parent;
        }
        path.reverse();
        path
    };
    while let Some((_, std::cmp::Reverse(depth), std::cmp::Reverse(idx))) = heap.pop() {
        if depth >= SEARCH_DEPTH {
            continue;
        }
        let moves = local_moves(g, &arena[idx].coloring, &ball_verts, start.k);
        for mv in moves {
            let next = apply_move(g, &arena[idx].coloring, mv).expect("canonical move is valid");
            if !visited.insert(next.colors.clone()) {
                continue;
            }
            nodes += 1;
            if nodes > SEARCH_NODE_BUDGET {
                return None;
            }
            let patterns = find_patterns(g, &next);
            let r = rank_of(&patterns);
            let reached_goal = r > base_rank
                || (base_rank == 3 && has_good_template(g, &next, &patterns, memo));
            arena.push(SearchNode { coloring: next, parent: idx, mv: Some(mv) });
            let new_idx = arena.len() - 1;
            if reached_goal {
                return Some(rebuild(&arena, new_idx));
            }
            heap.push((r, std::cmp::Reverse(depth + 1), std::cmp::Reverse(new_idx)));
        }
    }
    None
}

/// Which hypothesis admits the graph: plain edge-width >= 7, or the
/// `T[6 x b]` family (edge-width 6) with the six-cycle augmentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Standard,
    SixAugmented,
}

pub fn supported_mode(g: &TorusGraph) -> Result<Mode, ReconfigError> {
    let (ew, _) = edge_width(g).map_err(|e| ReconfigError::Internal(e.to_string()))?;
    if ew >= 7 {
        return Ok(Mode::Standard);
    }
    if ew == 6 {
        let forms = canonical_forms(g)?;
        if forms.iter().any(|&(a, b, c)| a == 6 && b >= 6 && c == 1) {
            return Ok(Mode::SixAugmented);
        }
    }
    Err(ReconfigError::PreconditionViolated(format!(
        "edge-width {ew} outside the supported families (need >= 7, or T[6 x b])"
    )))
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub certificate: Certificate,
    pub template: Template,
    pub final_coloring: Coloring,
}

fn check_five_coloring(g: &TorusGraph, phi: &Coloring) -> Result<(), ReconfigError> {
    if phi.k != 5 {
        return Err(ReconfigError::PreconditionViolated(format!(
            "expected a 5-coloring, got k={}",
            phi.k
        )));
    }
    if !is_proper(g, phi)? {
        return Err(ReconfigError::PreconditionViolated("coloring is not proper".into()));
    }
    Ok(())
}

/// Transforms `phi` by Kempe swaps until it contains a good monochromatic
/// 4-template, scoring colorings by the pattern ladder (good template >
/// triple > parallel/crossing pairs > pair > none) and searching locally
/// around each pattern witness in turn.
pub fn normalize(g: &TorusGraph, phi: &Coloring) -> Result<NormalizeOutcome, ReconfigError> {
    check_five_coloring(g, phi)?;
    supported_mode(g)?;
    let mut memo: GoodnessMemo = HashMap::new();
    let mut current = phi.clone();
    let mut moves: Vec<KempeMove> = Vec::new();
    loop {
        let patterns = find_patterns(g, &current);
        if let Some(template) = contained_good_template(g, &current, &patterns, &mut memo) {
            let certificate = Certificate::new(g, phi, &current, moves);
            verify_certificate(g, phi, &certificate)?;
            return Ok(NormalizeOutcome { certificate, template, final_coloring: current });
        }
        let rank = rank_of(&patterns);
        let witnesses: Vec<Vec<usize>> = if rank == 0 {
            (0..g.vertex_count()).map(|v| vec![v]).collect()
        } else {
            patterns
                .iter()
                .filter(|p| pattern_rank(p.kind) == rank)
                .map(|p| p.witness.clone())
                .collect()
        };
        let mut progressed = false;
        for witness in &witnesses {
            if let Some(path) = guided_search(g, &current, rank, witness, &mut memo) {
                for mv in path {
                    crate::coloring::apply_move_in_place(g, &mut current, mv);
                    moves.push(mv);
                }
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(ReconfigError::SearchExhausted { rank });
        }
    }
}

// ---------------------------------------------------------------------------
// Alignment of two colorings containing the same good template
// ---------------------------------------------------------------------------

fn project_to_quotient(qg: &QuotientGraph, phi: &Coloring) -> Vec<u8> {
    qg.preimages.iter().map(|pre| phi.color(pre[0])).collect()
}

fn masked_component(
    qg: &QuotientGraph,
    active: &[bool],
    colors: &[u8],
    v: usize,
    alpha: u8,
    beta: u8,
) -> Vec<usize> {
    debug_assert!(active[v] && (colors[v] == alpha || colors[v] == beta));
    let mut seen = vec![false; qg.vertex_count()];
    seen[v] = true;
    let mut comp = vec![v];
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in qg.neighbors(u) {
            if active[w] && !seen[w] && (colors[w] == alpha || colors[w] == beta) {
                seen[w] = true;
                comp.push(w);
                stack.push(w);
            }
        }
    }
    comp
}

/// Aligns two quotient colorings along a 4-degeneracy order by the peeling
/// recursion: the inner move list for the graph minus the order's first
/// vertex `w` is replayed with a detour recoloring of `w` whenever `w` sits
/// in the active component with at least two neighbors there.
fn align_quotient(
    qg: &QuotientGraph,
    order: &[usize],
    psi1: &[u8],
    psi2: &[u8],
    k: u8,
) -> Result<Vec<KempeMove>, ReconfigError> {
    let m = order.len();
    debug_assert_eq!(m, qg.vertex_count());
    let mut active = vec![false; m];
    let mut moves: Vec<KempeMove> = Vec::new();
    for level in (0..m).rev() {
        let w = order[level];
        active[w] = true;
        if level == m - 1 {
            moves = if psi1[w] != psi2[w] {
                vec![KempeMove { anchor: w, alpha: psi1[w], beta: psi2[w] }]
            } else {
                Vec::new()
            };
            continue;
        }
        let mut lifted: Vec<KempeMove> = Vec::with_capacity(moves.len() + 2);
        let mut psi = psi1.to_vec();
        let apply = |psi: &mut Vec<u8>, lifted: &mut Vec<KempeMove>, mv: KempeMove| {
            let comp = masked_component(qg, &active, psi, mv.anchor, mv.alpha, mv.beta);
            for &u in &comp {
                psi[u] = if psi[u] == mv.alpha { mv.beta } else { mv.alpha };
            }
            lifted.push(mv);
        };
        for &mv in &moves {
            let comp = masked_component(qg, &active, &psi, mv.anchor, mv.alpha, mv.beta);
            let w_neighbors_in_comp = qg
                .neighbors(w)
                .iter()
                .filter(|&&u| active[u] && comp.contains(&u))
                .count();
            if comp.contains(&w) && w_neighbors_in_comp >= 2 {
                // Detour: some color is free on w's closed neighborhood.
                let mut used = vec![false; k as usize + 1];
                used[psi[w] as usize] = true;
                for &u in qg.neighbors(w) {
                    if active[u] {
                        used[psi[u] as usize] = true;
                    }
                }
                let gamma = (1..=k)
                    .find(|&c| !used[c as usize])
                    .ok_or_else(|| ReconfigError::Internal("no free color for the detour".into()))?;
                let w_color = psi[w];
                apply(&mut psi, &mut lifted, KempeMove { anchor: w, alpha: w_color, beta: gamma });
            }
            apply(&mut psi, &mut lifted, mv);
        }
        if psi[w] != psi2[w] {
            let w_color = psi[w];
            apply(&mut psi, &mut lifted, KempeMove { anchor: w, alpha: w_color, beta: psi2[w] });
        }
        for (v, ok) in active.iter().enumerate() {
            if *ok {
                debug_assert_eq!(psi[v], psi2[v], "level {level} misaligned at {v}");
            }
        }
        moves = lifted;
    }
    Ok(moves)
}

/// Expands quotient moves into graph moves: each quotient swap becomes one
/// swap per Kempe component of the component's preimage (Lemma-style
/// simulation: identified vertices swap together).
fn expand_quotient_moves(
    g: &TorusGraph,
    qg: &QuotientGraph,
    phi_start: &Coloring,
    quotient_moves: &[KempeMove],
) -> Vec<KempeMove> {
    let full_mask = vec![true; qg.vertex_count()];
    let mut phi = phi_start.clone();
    let mut out = Vec::new();
    for &qmv in quotient_moves {
        let psi = project_to_quotient(qg, &phi);
        let qcomp = masked_component(qg, &full_mask, &psi, qmv.anchor, qmv.alpha, qmv.beta);
        let mut pre: Vec<usize> = qcomp
            .iter()
            .flat_map(|&q| qg.preimages[q].iter().copied())
            .collect();
        pre.sort_unstable();
        let in_pre: HashSet<usize> = pre.iter().copied().collect();
        let mut done: HashSet<usize> = HashSet::new();
        for &v in &pre {
            if done.contains(&v) {
                continue;
            }
            let comp = kempe_component(&*g, &phi, v, qmv.alpha, qmv.beta)
                .expect("preimage vertices carry the swap colors");
            debug_assert!(comp.iter().all(|u| in_pre.contains(u)));
            let mv = KempeMove { anchor: comp[0], alpha: qmv.alpha, beta: qmv.beta };
            for &u in &comp {
                done.insert(u);
            }
            crate::coloring::apply_move_in_place(g, &mut phi, mv);
            out.push(mv);
        }
    }
    out
}

fn align_moves(
    g: &TorusGraph,
    phi1: &Coloring,
    phi2: &Coloring,
    t: &Template,
) -> Result<Vec<KempeMove>, ReconfigError> {
    check_five_coloring(g, phi1)?;
    check_five_coloring(g, phi2)?;
    if !t.appears_in(phi1) || !t.appears_in(phi2) {
        return Err(ReconfigError::TemplateNotContained);
    }
    let qg = contract(g, t)?;
    let order = degeneracy_order(&qg, None)?.ok_or(ReconfigError::NotGood)?;
    let psi1 = project_to_quotient(&qg, phi1);
    let psi2 = project_to_quotient(&qg, phi2);
    let qmoves = align_quotient(&qg, &order.0, &psi1, &psi2, phi1.k)?;
    Ok(expand_quotient_moves(g, &qg, phi1, &qmoves))
}

/// Certificate from `phi1` to `phi2`, both containing the good template `t`
/// (every color of `t` monochromatic in both).
pub fn align_on_template(
    g: &TorusGraph,
    phi1: &Coloring,
    phi2: &Coloring,
    t: &Template,
) -> Result<Certificate, ReconfigError> {
    let moves = align_moves(g, phi1, phi2, t)?;
    let certificate = Certificate::new(g, phi1, phi2, moves);
    verify_certificate(g, phi1, &certificate)?;
    Ok(certificate)
}

// ---------------------------------------------------------------------------
// Full certification
// ---------------------------------------------------------------------------

/// Which route produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Identity,
    ColorPermutation,
    FourColorSwitch,
    RotationC37,
}

#[derive(Clone, Debug)]
pub struct CertifyOutcome {
    pub certificate: Certificate,
    pub route: Route,
}

/// Singleton recoloring moves turning `base` into `base` with the template's
/// classes recolored `green`; each step recolors one vertex whose target
/// color is absent from its neighborhood, hence a singleton Kempe swap.
fn greening_moves(t: &Template, base: &Coloring, green: u8) -> Vec<KempeMove> {
    let mut moves = Vec::new();
    for color in &t.colors {
        let mut vs = color.clone();
        vs.sort_unstable();
        for v in vs {
            if base.color(v) != green {
                moves.push(KempeMove { anchor: v, alpha: base.color(v), beta: green });
            }
        }
    }
    moves
}

fn apply_all(g: &TorusGraph, phi: &Coloring, moves: &[KempeMove]) -> Coloring {
    let mut cur = phi.clone();
    for &mv in moves {
        crate::coloring::apply_move_in_place(g, &mut cur, mv);
    }
    cur
}

fn reversed_moves(moves: &[KempeMove]) -> Vec<KempeMove> {
    moves.iter().rev().copied().collect()
}

/// Detects whether `phi2` is a color-permutation image of `phi1`; returns the
/// permutation as `perm[old - 1] = new`.
fn permutation_between(phi1: &Coloring, phi2: &Coloring) -> Option<Vec<u8>> {
    let k = phi1.k as usize;
    let mut perm = vec![0u8; k];
    for (a, b) in phi1.colors.iter().zip(phi2.colors.iter()) {
        let slot = &mut perm[(a - 1) as usize];
        if *slot == 0 {
            *slot = *b;
        } else if *slot != *b {
            return None;
        }
    }
    // Fill unused colors bijectively.
    let used: HashSet<u8> = perm.iter().copied().filter(|&c| c != 0).collect();
    if used.len() != perm.iter().filter(|&&c| c != 0).count() {
        return None;
    }
    let mut free: Vec<u8> = (1..=phi1.k).filter(|c| !used.contains(c)).collect();
    for slot in perm.iter_mut() {
        if *slot == 0 {
            *slot = free.remove(0);
        }
    }
    Some(perm)
}

fn permutation_route(
    g: &TorusGraph,
    phi1: &Coloring,
    phi2: &Coloring,
    perm: &[u8],
) -> Vec<KempeMove> {
    // Decompose into transpositions and realize each by its component swaps.
    let mut current_perm: Vec<u8> = (1..=phi1.k).collect();
    let mut moves = Vec::new();
    let mut cur = phi1.clone();
    for target in 1..=phi1.k {
        // The original color o destined for `target` currently shows as
        // current_perm[o-1]; transpose that image with `target` globally.
        let o = (1..=phi1.k).find(|&o| perm[(o - 1) as usize] == target).unwrap();
        let image = current_perm[(o - 1) as usize];
        if image == target {
            continue;
        }
        for mv in transposition_moves(g, &cur, image, target) {
            cur = apply_move(g, &cur, mv).unwrap();
            moves.push(mv);
        }
        for c in current_perm.iter_mut() {
            if *c == image {
                *c = target;
            } else if *c == target {
                *c = image;
            }
        }
    }
    debug_assert_eq!(&cur, phi2);
    moves
}

/// The explicit 5-coloring of C37[1,10,11] with the fifth color on index `t`
/// and color `((v - t) mod 37) mod 4 + 1` elsewhere.
fn c37_rotation(t: usize) -> Coloring {
    let colors: Vec<u8> = (0..37)
        .map(|v| {
            if v == t {
                5
            } else {
                ((v as i64 - t as i64).rem_euclid(37) % 4) as u8 + 1
            }
        })
        .collect();
    Coloring::new(5, colors)
}

fn closed_neighborhood(g: &TorusGraph, verts: &[usize]) -> HashSet<usize> {
    let mut out: HashSet<usize> = verts.iter().copied().collect();
    for &v in verts {
        out.extend(g.neighbors(v).iter().copied());
    }
    out
}

fn is_c37(g: &TorusGraph) -> Result<bool, ReconfigError> {
    if g.vertex_count() != 37 {
        return Ok(false);
    }
    let forms = canonical_forms(g)?;
    Ok(forms.contains(&(37, 1, 12)) || forms.contains(&(37, 1, 28)))
}

/// From a coloring containing good template `t`, moves reaching the rotation
/// coloring `c37_rotation(s)` where `s` avoids the template's closed
/// neighborhood: align onto the rotation-with-greened-template, then undo the
/// greening singletons.
fn c37_template_to_rotation(
    g: &TorusGraph,
    from: &Coloring,
    t: &Template,
    s: usize,
) -> Result<Vec<KempeMove>, ReconfigError> {
    let rotation = c37_rotation(s);
    let greening = greening_moves(t, &rotation, 5);
    let greened = apply_all(g, &rotation, &greening);
    let mut moves = align_moves(g, from, &greened, t)?;
    moves.extend(reversed_moves(&greening));
    Ok(moves)
}

fn c37_route(
    g: &TorusGraph,
    n1: &NormalizeOutcome,
    n2: &NormalizeOutcome,
) -> Result<Vec<KempeMove>, ReconfigError> {
    let n = 37usize;
    // A catalog template that can be translated anywhere: the first good
    // 4-template extending the alternating triple around vertex 0.
    let base_template = {
        let trio: Vec<usize> = [0usize, 2, 4].iter().map(|&d| g.step(0, d)).collect();
        let mut sorted = trio.clone();
        sorted.sort_unstable();
        let mut witness = sorted;
        witness.push(0);
        let pattern = Pattern { kind: PatternKind::Triple, witness };
        crate::patterns::triple_templates(g, &pattern)
            .into_iter()
            .next()
            .ok_or_else(|| ReconfigError::Internal("no good template at vertex 0 of C37".into()))?
    };
    let base_verts = base_template.colors[0].clone();
    let blocked0 = closed_neighborhood(g, &base_verts);
    let valid0: Vec<usize> = (0..n).filter(|v| !blocked0.contains(v)).collect();
    if valid0.len() < 9 {
        return Err(ReconfigError::Internal("fewer than 9 valid rotations for a 4-template".into()));
    }
    let translate = |verts: &[usize], tau: usize| -> Vec<usize> {
        let mut out: Vec<usize> = verts.iter().map(|&v| (v + tau) % n).collect();
        out.sort_unstable();
        out
    };
    // Rotation hop graph: s ~ s' when some translate of the catalog template
    // avoids both closed neighborhoods.
    let diff_ok = |s: usize, s2: usize| -> Option<usize> {
        (0..n).find(|&tau| {
            let shifted: Vec<usize> = valid0.iter().map(|&v| (v + tau) % n).collect();
            shifted.contains(&s) && shifted.contains(&s2)
        })
    };
    let pick_rotation = |t: &Template| -> Result<usize, ReconfigError> {
        let blocked = closed_neighborhood(g, &t.vertices());
        (0..n)
            .find(|s| !blocked.contains(s))
            .ok_or_else(|| ReconfigError::Internal("no rotation avoids the template".into()))
    };
    let s1 = pick_rotation(&n1.template)?;
    let s2 = pick_rotation(&n2.template)?;

    let mut moves = Vec::new();
    let mut cur = n1.final_coloring.clone();
    // Side 1: template coloring -> rotation s1.
    let side1 = c37_template_to_rotation(g, &cur, &n1.template, s1)?;
    cur = apply_all(g, &cur, &side1);
    moves.extend(side1);
    debug_assert_eq!(cur, c37_rotation(s1));

    // Bridge rotations s1 -> s2 by BFS over hops.
    if s1 != s2 {
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        prev[s1] = Some(s1);
        queue.push_back(s1);
        while let Some(s) = queue.pop_front() {
            if s == s2 {
                break;
            }
            for s_next in 0..n {
                if prev[s_next].is_none() && diff_ok(s, s_next).is_some() {
                    prev[s_next] = Some(s);
                    queue.push_back(s_next);
                }
            }
        }
        let mut path = vec![s2];
        let mut at = s2;
        while at != s1 {
            at = prev[at].ok_or_else(|| {
                ReconfigError::Internal("rotation hop graph is disconnected".into())
            })?;
            path.push(at);
        }
        path.reverse();
        for hop in path.windows(2) {
            let (s, s_next) = (hop[0], hop[1]);
            let tau = diff_ok(s, s_next).unwrap();
            let t_mid = Template::monochromatic(translate(&base_verts, tau));
            // phi_s -> greened(phi_s, T) -> greened(phi_s', T) -> phi_s'.
            let rot_s = c37_rotation(s);
            let greening_a = greening_moves(&t_mid, &rot_s, 5);
            let start_mid = apply_all(g, &rot_s, &greening_a);
            moves.extend(greening_a.iter().copied());
            cur = apply_all(g, &cur, &greening_a);
            debug_assert_eq!(cur, start_mid);
            let hop_moves = c37_template_to_rotation(g, &cur, &t_mid, s_next)?;
            cur = apply_all(g, &cur, &hop_moves);
            moves.extend(hop_moves);
            debug_assert_eq!(cur, c37_rotation(s_next));
        }
    }

    // Side 2, reversed: rotation s2 -> template coloring 2.
    let side2 = c37_template_to_rotation(g, &n2.final_coloring, &n2.template, s2)?;
    moves.extend(reversed_moves(&side2));
    Ok(moves)
}

fn switch_route(
    g: &TorusGraph,
    n1: &NormalizeOutcome,
    n2: &NormalizeOutcome,
    phi0: &Coloring,
) -> Result<Vec<KempeMove>, ReconfigError> {
    // Lift the 4-coloring into the 5-color palette; color 5 plays green.
    let base = Coloring::new(5, phi0.colors.clone());
    if !is_proper(g, &base)? {
        return Err(ReconfigError::Internal("4-coloring witness is improper".into()));
    }
    let side = |nrm: &NormalizeOutcome| -> Result<Vec<KempeMove>, ReconfigError> {
        let greening = greening_moves(&nrm.template, &base, 5);
        let greened = apply_all(g, &base, &greening);
        let mut moves = align_moves(g, &nrm.final_coloring, &greened, &nrm.template)?;
        moves.extend(reversed_moves(&greening));
        Ok(moves)
    };
    let mut moves = side(n1)?;
    moves.extend(reversed_moves(&side(n2)?));
    Ok(moves)
}

/// Produces a verified certificate that `phi1` and `phi2` are 5-equivalent.
pub fn certify_equivalence(
    g: &TorusGraph,
    phi1: &Coloring,
    phi2: &Coloring,
) -> Result<CertifyOutcome, ReconfigError> {
    check_five_coloring(g, phi1)?;
    check_five_coloring(g, phi2)?;
    if phi1 == phi2 {
        let certificate = Certificate::new(g, phi1, phi2, vec![]);
        verify_certificate(g, phi1, &certificate)?;
        return Ok(CertifyOutcome { certificate, route: Route::Identity });
    }
    if let Some(perm) = permutation_between(phi1, phi2) {
        let moves = permutation_route(g, phi1, phi2, &perm);
        let certificate = Certificate::new(g, phi1, phi2, moves);
        verify_certificate(g, phi1, &certificate)?;
        return Ok(CertifyOutcome { certificate, route: Route::ColorPermutation });
    }
    supported_mode(g)?;
    let n1 = normalize(g, phi1)?;
    let n2 = normalize(g, phi2)?;
    let (middle, route) = if is_c37(g)? {
        (c37_route(g, &n1, &n2)?, Route::RotationC37)
    } else {
        let verdict = classify(g.params())?;
        match verdict.witness {
            Some(phi0) if verdict.colorable => {
                (switch_route(g, &n1, &n2, &phi0)?, Route::FourColorSwitch)
            }
            _ => return Err(ReconfigError::NotFourColorable),
        }
    };
    let mut moves = n1.certificate.moves.clone();
    moves.extend(middle);
    moves.extend(reversed_moves(&n2.certificate.moves));
    let certificate = Certificate::new(g, phi1, phi2, moves);
    verify_certificate(g, phi1, &certificate)?;
    Ok(CertifyOutcome { certificate, route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::random_proper;
    use crate::graph::AdjGraph;
    use crate::torus_graph::{build_circulant, build_shifted_grid};

    #[test]
    fn canonical_form_is_first_occurrence_relabel() {
        assert_eq!(canonical_color_form(&[3, 3, 1, 2]), vec![1, 1, 2, 3]);
        assert_eq!(canonical_color_form(&[5, 4, 5, 1]), vec![1, 2, 1, 3]);
    }

    #[test]
    fn c4_three_colorings_form_one_class() {
        let c4 = AdjGraph::cycle(4);
        let report = kempe_classes(&c4, 3, false, 100_000).unwrap();
        assert_eq!(report.class_count, 1);
        let quotient = kempe_classes(&c4, 3, true, 100_000).unwrap();
        assert_eq!(quotient.class_count, 1);
    }

    #[test]
    fn t3x3_four_coloring_classes_pinned() {
        // All 240 proper 4-colorings of T[3x3,1] (= K_{3,3,3}) form a single
        // class; non-ergodicity first appears at T[6x6,1] (see the
        // acceptance suite).
        let g = build_shifted_grid(3, 3, 1).unwrap();
        let report = kempe_classes(&g, 4, false, 100_000).unwrap();
        assert_eq!(report.states_visited, 240);
        assert_eq!(report.class_count, 1);
        let quotient = kempe_classes(&g, 4, true, 100_000).unwrap();
        assert_eq!(quotient.class_count, report.class_count);
        for (i, rep) in report.representatives.iter().enumerate() {
            assert_eq!(report.class_of(rep), Some(i));
        }
    }

    #[test]
    fn t6x6_four_colorings_are_not_all_equivalent() {
        // The class of the linear coloring is finite and small; random
        // 4-colorings outside it witness a second class.
        let g = build_shifted_grid(6, 6, 1).unwrap();
        let linear: Vec<u8> = (0..36u32)
            .map(|v| ((v / 6 + 2 * (v % 6)) % 4) as u8 + 1)
            .collect();
        let phi = Coloring::new(4, linear);
        assert!(crate::coloring::is_proper(&g, &phi).unwrap());
        let class = flood_class(&g, &phi, 4, 100_000).expect("class is small");
        assert_eq!(class.len(), 1104);
        let outside = (0..50)
            .filter_map(|seed| random_proper(&g, 4, seed).ok())
            .find(|r| !class.contains(&r.colors));
        assert!(outside.is_some(), "no coloring outside the linear class found");
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = build_shifted_grid(3, 3, 1).unwrap();
        match kempe_classes(&g, 4, false, 10) {
            Err(ReconfigError::StateCapExceeded { partial }) => assert!(partial >= 10),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn normalize_terminates_on_random_colorings() {
        let g = build_shifted_grid(7, 7, 1).unwrap();
        for seed in 0..25 {
            let phi = random_proper(&g, 5, seed).unwrap();
            let out = normalize(&g, &phi).unwrap();
            verify_certificate(&g, &phi, &out.certificate).unwrap();
            assert!(out.template.appears_in(&out.final_coloring));
            assert!(crate::degeneracy::is_good(&g, &out.template).unwrap().is_some());
            // The template class is monochromatic in the final coloring.
            let class = &out.template.colors[0];
            assert!(class.windows(2).all(|w| {
                out.final_coloring.color(w[0]) == out.final_coloring.color(w[1])
            }));
        }
    }

    #[test]
    fn normalize_rejects_small_edge_width() {
        let g = build_shifted_grid(5, 5, 1).unwrap();
        let phi = random_proper(&g, 5, 0).unwrap();
        assert!(matches!(
            normalize(&g, &phi),
            Err(ReconfigError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn align_identity_is_empty() {
        let g = build_shifted_grid(7, 7, 1).unwrap();
        let phi = random_proper(&g, 5, 1).unwrap();
        let out = normalize(&g, &phi).unwrap();
        let cert =
            align_on_template(&g, &out.final_coloring, &out.final_coloring, &out.template).unwrap();
        assert!(cert.moves.is_empty());
    }

    #[test]
    fn align_random_template_colorings() {
        let g = build_shifted_grid(7, 7, 1).unwrap();
        let phi = random_proper(&g, 5, 2).unwrap();
        let out = normalize(&g, &phi).unwrap();
        let qg = contract(&g, &out.template).unwrap();
        let order = degeneracy_order(&qg, None).unwrap().unwrap();
        let n = g.vertex_count();
        for seed in 0..8 {
            let a = crate::degeneracy::extend_template_coloring(&g, &qg, &order, &[1], 5, seed)
                .unwrap();
            let b = crate::degeneracy::extend_template_coloring(&g, &qg, &order, &[2], 5, 999 - seed)
                .unwrap();
            let cert = align_on_template(&g, &a, &b, &out.template).unwrap();
            verify_certificate(&g, &a, &cert).unwrap();
            assert!(cert.moves.len() <= 4 * n, "observed bound exceeded: {}", cert.moves.len());
        }
    }

    #[test]
    fn certify_transposed_colorings_takes_fast_path() {
        let g = build_shifted_grid(7, 7, 1).unwrap();
        let phi = random_proper(&g, 5, 3).unwrap();
        let mut perm: Vec<u8> = (1..=5).collect();
        perm.swap(0, 3);
        let phi2 = phi.permuted(&perm);
        let out = certify_equivalence(&g, &phi, &phi2).unwrap();
        assert_eq!(out.route, Route::ColorPermutation);
        verify_certificate(&g, &phi, &out.certificate).unwrap();
    }

    #[test]
    fn certify_random_pairs_t7() {
        let g = build_shifted_grid(7, 7, 1).unwrap();
        for seed in 0..6 {
            let a = random_proper(&g, 5, 100 + seed).unwrap();
            let b = random_proper(&g, 5, 200 + seed).unwrap();
            let out = certify_equivalence(&g, &a, &b).unwrap();
            verify_certificate(&g, &a, &out.certificate).unwrap();
            // Reversal soundness.
            verify_certificate(&g, &b, &out.certificate.reversed()).unwrap();
        }
    }

    #[test]
    fn certify_pairs_on_c37_use_rotation_route() {
        let g = build_circulant(37, 10).unwrap();
        for seed in 0..3 {
            let a = random_proper(&g, 5, 10 + seed).unwrap();
            let b = random_proper(&g, 5, 20 + seed).unwrap();
            let out = certify_equivalence(&g, &a, &b).unwrap();
            assert_eq!(out.route, Route::RotationC37);
            verify_certificate(&g, &a, &out.certificate).unwrap();
        }
    }

    #[test]
    fn certify_pairs_on_t6_family() {
        let g = build_shifted_grid(6, 6, 1).unwrap();
        for seed in 0..3 {
            let a = random_proper(&g, 5, 30 + seed).unwrap();
            let b = random_proper(&g, 5, 40 + seed).unwrap();
            let out = certify_equivalence(&g, &a, &b).unwrap();
            assert_eq!(out.route, Route::FourColorSwitch);
            verify_certificate(&g, &a, &out.certificate).unwrap();
        }
    }
}
