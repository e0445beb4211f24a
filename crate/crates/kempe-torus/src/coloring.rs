//! Colorings, Kempe components and swaps, and hash-anchored swap-sequence
//! certificates with an independent replay verifier.
//!
//! Colors are 1-based (`1..=k`). The coloring hash is FNV-1a 64 over the
//! color bytes in vertex-index order, so certificates are bit-exact across
//! implementations.

use crate::graph::{fnv1a64, Graph};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries, graph has {want} vertices")]
    LengthMismatch { got: usize, want: usize },
    #[error("anchor {anchor} has color {color}, not in swap pair ({alpha},{beta})")]
    AnchorColorMismatch { anchor: usize, color: u8, alpha: u8, beta: u8 },
    #[error("no proper {k}-coloring exists")]
    Unsatisfiable { k: u8 },
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(u8, u8),
}

/// Errors reported by certificate verification, with the index of the first
/// failing move where applicable.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate was issued for a different graph")]
    GraphMismatch,
    #[error("start coloring hash {got:#018x} does not match certificate {want:#018x}")]
    StartHashMismatch { got: u64, want: u64 },
    #[error("end coloring hash {got:#018x} does not match certificate {want:#018x}")]
    EndHashMismatch { got: u64, want: u64 },
    #[error("start coloring is not proper")]
    StartNotProper,
    #[error("move {index} is invalid: {reason}")]
    BadMove { index: usize, reason: String },
    #[error("coloring after move {index} is not proper")]
    ImproperAfterMove { index: usize },
}

/// A total color assignment with palette size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub k: u8,
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(k: u8, colors: Vec<u8>) -> Self {
        Coloring { k, colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    /// FNV-1a 64 over the color bytes in vertex order.
    pub fn hash64(&self) -> u64 {
        fnv1a64(&self.colors)
    }

    /// Image under a color permutation given as `perm[old - 1] = new`.
    pub fn permuted(&self, perm: &[u8]) -> Coloring {
        let colors = self.colors.iter().map(|&c| perm[(c - 1) as usize]).collect();
        Coloring { k: self.k, colors }
    }
}

/// Recoloring the alpha/beta Kempe component that contains `anchor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeMove {
    pub anchor: usize,
    pub alpha: u8,
    pub beta: u8,
}

/// A replayable, hash-anchored swap sequence. Intermediate colorings are not
/// stored; the verifier recomputes everything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Hex fingerprint of the labeled graph the moves refer to.
    pub graph: String,
    pub start_hash: u64,
    pub end_hash: u64,
    pub moves: Vec<KempeMove>,
}

impl Certificate {
    pub fn new<G: Graph>(g: &G, start: &Coloring, end: &Coloring, moves: Vec<KempeMove>) -> Self
    where
        G: GraphFingerprint,
    {
        Certificate {
            graph: format!("{:016x}", g.graph_fingerprint()),
            start_hash: start.hash64(),
            end_hash: end.hash64(),
            moves,
        }
    }

    /// Certificate for the reverse direction: swaps are involutions, so the
    /// reversed move list replays from the end coloring back to the start.
    pub fn reversed(&self) -> Certificate {
        Certificate {
            graph: self.graph.clone(),
            start_hash: self.end_hash,
            end_hash: self.start_hash,
            moves: self.moves.iter().rev().copied().collect(),
        }
    }
}

/// Graphs that can anchor a certificate.
pub trait GraphFingerprint {
    fn graph_fingerprint(&self) -> u64;
}

impl GraphFingerprint for crate::torus_graph::TorusGraph {
    fn graph_fingerprint(&self) -> u64 {
        self.fingerprint()
    }
}

impl GraphFingerprint for crate::graph::AdjGraph {
    fn graph_fingerprint(&self) -> u64 {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&(self.vertex_count() as u64).to_le_bytes());
        for v in 0..self.vertex_count() {
            for &u in self.neighbors(v) {
                if v < u {
                    bytes.extend_from_slice(&(v as u64).to_le_bytes());
                    bytes.extend_from_slice(&(u as u64).to_le_bytes());
                }
            }
        }
        fnv1a64(&bytes)
    }
}

/// True when no edge is monochromatic.
pub fn is_proper<G: Graph>(g: &G, phi: &Coloring) -> Result<bool, ColoringError> {
    if phi.len() != g.vertex_count() {
        return Err(ColoringError::LengthMismatch { got: phi.len(), want: g.vertex_count() });
    }
    for v in 0..g.vertex_count() {
        if phi.color(v) < 1 || phi.color(v) > phi.k {
            return Err(ColoringError::ColorOutOfRange(phi.color(v), phi.k));
        }
        for &u in g.neighbors(v) {
            if phi.color(u) == phi.color(v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The connected component containing `v` of the subgraph induced by colors
/// `{alpha, beta}`. Returned sorted.
pub fn kempe_component<G: Graph>(
    g: &G,
    phi: &Coloring,
    v: usize,
    alpha: u8,
    beta: u8,
) -> Result<Vec<usize>, ColoringError> {
    let c = phi.color(v);
    if c != alpha && c != beta {
        return Err(ColoringError::AnchorColorMismatch { anchor: v, color: c, alpha, beta });
    }
    let mut comp = vec![v];
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] && (phi.color(w) == alpha || phi.color(w) == beta) {
                seen[w] = true;
                comp.push(w);
                stack.push(w);
            }
        }
    }
    comp.sort_unstable();
    Ok(comp)
}

/// Applies a Kempe move: alpha and beta are interchanged exactly on the
/// component containing the anchor. A swap of a proper coloring is proper.
pub fn apply_move<G: Graph>(g: &G, phi: &Coloring, m: KempeMove) -> Result<Coloring, ColoringError> {
    let comp = kempe_component(g, phi, m.anchor, m.alpha, m.beta)?;
    let mut out = phi.clone();
    for v in comp {
        let c = out.colors[v];
        out.colors[v] = if c == m.alpha { m.beta } else { m.alpha };
    }
    Ok(out)
}

/// In-place variant used by the search loops.
pub(crate) fn apply_move_in_place<G: Graph>(g: &G, phi: &mut Coloring, m: KempeMove) {
    let comp = kempe_component(g, phi, m.anchor, m.alpha, m.beta).expect("valid move");
    for v in comp {
        let c = phi.colors[v];
        phi.colors[v] = if c == m.alpha { m.beta } else { m.alpha };
    }
}

/// Replays a certificate from `phi_start`, checking the graph anchor, both
/// hashes, move validity, and properness of every intermediate coloring.
pub fn verify_certificate<G: Graph + GraphFingerprint>(
    g: &G,
    phi_start: &Coloring,
    cert: &Certificate,
) -> Result<(), CertificateError> {
    if cert.graph != format!("{:016x}", g.graph_fingerprint()) {
        return Err(CertificateError::GraphMismatch);
    }
    let got = phi_start.hash64();
    if got != cert.start_hash {
        return Err(CertificateError::StartHashMismatch { got, want: cert.start_hash });
    }
    if !is_proper(g, phi_start).map_err(|_| CertificateError::StartNotProper)? {
        return Err(CertificateError::StartNotProper);
    }
    let mut phi = phi_start.clone();
    for (index, &m) in cert.moves.iter().enumerate() {
        if m.alpha == m.beta || m.alpha < 1 || m.alpha > phi.k || m.beta < 1 || m.beta > phi.k {
            return Err(CertificateError::BadMove {
                index,
                reason: format!("color pair ({},{}) invalid", m.alpha, m.beta),
            });
        }
        if m.anchor >= g.vertex_count() {
            return Err(CertificateError::BadMove {
                index,
                reason: format!("anchor {} out of range", m.anchor),
            });
        }
        phi = apply_move(g, &phi, m).map_err(|e| CertificateError::BadMove {
            index,
            reason: e.to_string(),
        })?;
        if !is_proper(g, &phi).unwrap_or(false) {
            return Err(CertificateError::ImproperAfterMove { index });
        }
    }
    let got = phi.hash64();
    if got != cert.end_hash {
        return Err(CertificateError::EndHashMismatch { got, want: cert.end_hash });
    }
    Ok(())
}

/// Moves realizing the global transposition of colors alpha and beta: one
/// swap per alpha/beta component, anchored at its minimum vertex.
pub fn transposition_moves<G: Graph>(g: &G, phi: &Coloring, alpha: u8, beta: u8) -> Vec<KempeMove> {
    let mut seen = vec![false; g.vertex_count()];
    let mut moves = Vec::new();
    for v in 0..g.vertex_count() {
        if seen[v] || (phi.color(v) != alpha && phi.color(v) != beta) {
            continue;
        }
        let comp = kempe_component(g, phi, v, alpha, beta).unwrap();
        for &u in &comp {
            seen[u] = true;
        }
        moves.push(KempeMove { anchor: comp[0], alpha, beta });
    }
    moves
}

/// Samples a proper `k`-coloring by randomized-order greedy assignment with
/// backtracking; deterministic per seed. Each attempt backtracks within a
/// node budget and restarts with fresh randomness; a stubborn instance falls
/// through to the exact solver, whose exhaustion proves unsatisfiability.
pub fn random_proper<G: Graph>(g: &G, k: u8, seed: u64) -> Result<Coloring, ColoringError> {
    let n = g.vertex_count();
    let mut rng = Rng::new(seed);
    const ATTEMPTS: usize = 64;
    const NODES_PER_ATTEMPT: usize = 4096;
    fn assign<G: Graph>(
        g: &G,
        order: &[usize],
        prefs: &[Vec<u8>],
        colors: &mut Vec<u8>,
        pos: usize,
        budget: &mut usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for &c in &prefs[v] {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                colors[v] = c;
                if assign(g, order, prefs, colors, pos + 1, budget) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    for _ in 0..ATTEMPTS {
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let prefs: Vec<Vec<u8>> = (0..n)
            .map(|_| {
                let mut p: Vec<u8> = (1..=k).collect();
                rng.shuffle(&mut p);
                p
            })
            .collect();
        let mut colors = vec![0u8; n];
        let mut budget = NODES_PER_ATTEMPT;
        if assign(g, &order, &prefs, &mut colors, 0, &mut budget) {
            return Ok(Coloring::new(k, colors));
        }
    }
    match crate::fourcolor::solve_k_coloring(g, k, 1_000_000_000) {
        Ok(Some(phi)) => Ok(phi),
        _ => Err(ColoringError::Unsatisfiable { k }),
    }
}
