//! Zero-temperature Wang-Swendsen-Kotecky dynamics: a Markov chain over
//! proper k-colorings whose transitions are Kempe swaps.
//!
//! Proposal kernel: a uniform vertex `v` and a uniform color `beta` distinct
//! from the current color of `v`; the `(color(v), beta)` swap at `v` is then
//! applied. Every proposal is a valid Kempe swap (so none is rejected), and
//! the chain is symmetric. The kernel is one standard choice among several;
//! output records it as `uniform_vertex_color`.

use crate::coloring::{random_proper, Coloring, ColoringError, KempeMove};
use crate::graph::Graph;
use crate::reconfig::ClassReport;
use crate::rng::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Trajectory statistics. `accepted + rejected = steps`; with this proposal
/// kernel nothing is ever rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStats {
    pub steps: u64,
    pub accepted: u64,
    pub distinct_colorings: usize,
    /// Visit tally per Kempe class, when an exact class report was supplied.
    pub class_visits: Option<Vec<u64>>,
    pub final_coloring: Coloring,
    pub proposal: &'static str,
}

/// One WSK step: applies the proposed swap and reports the move taken.
pub fn wsk_step<G: Graph>(
    g: &G,
    phi: &Coloring,
    k: u8,
    rng: &mut Rng,
) -> (Coloring, Option<KempeMove>) {
    let v = rng.gen_range(g.vertex_count());
    let alpha = phi.color(v);
    let mut beta = rng.gen_range(k as usize - 1) as u8 + 1;
    if beta >= alpha {
        beta += 1;
    }
    let mv = KempeMove { anchor: v, alpha, beta };
    let next = crate::coloring::apply_move(g, phi, mv).expect("proposal is always a valid swap");
    (next, Some(mv))
}

/// Runs a chain from an explicit initial coloring; deterministic per seed.
pub fn run_chain_from<G: Graph>(
    g: &G,
    phi0: &Coloring,
    k: u8,
    steps: u64,
    seed: u64,
    class_report: Option<&ClassReport>,
) -> ChainStats {
    let mut rng = Rng::new(seed);
    let mut phi = phi0.clone();
    let mut distinct: HashSet<u64> = HashSet::new();
    distinct.insert(phi.hash64());
    let mut class_visits =
        class_report.map(|r| vec![0u64; r.class_count]);
    let tally = |phi: &Coloring, visits: &mut Option<Vec<u64>>| {
        if let (Some(visits), Some(report)) = (visits.as_mut(), class_report) {
            if let Some(id) = report.class_of(phi) {
                visits[id] += 1;
            }
        }
    };
    tally(&phi, &mut class_visits);
    let mut accepted = 0u64;
    for _ in 0..steps {
        let (next, mv) = wsk_step(g, &phi, k, &mut rng);
        if mv.is_some() {
            accepted += 1;
        }
        phi = next;
        distinct.insert(phi.hash64());
        tally(&phi, &mut class_visits);
    }
    ChainStats {
        steps,
        accepted,
        distinct_colorings: distinct.len(),
        class_visits,
        final_coloring: phi,
        proposal: "uniform_vertex_color",
    }
}

/// Runs a chain whose initial coloring is drawn from the same seed.
pub fn run_chain<G: Graph>(
    g: &G,
    k: u8,
    steps: u64,
    seed: u64,
    class_report: Option<&ClassReport>,
) -> Result<ChainStats, ColoringError> {
    let phi0 = random_proper(g, k, seed)?;
    Ok(run_chain_from(g, &phi0, k, steps, seed, class_report))
}
