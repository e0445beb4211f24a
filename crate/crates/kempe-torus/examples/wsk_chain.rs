//! Zero-temperature Wang-Swendsen-Kotecky dynamics: seeded chains of random
//! Kempe swaps, with per-class occupancy against exact class reports.
//!
//! Run with: `cargo run --release --example wsk_chain`

use kempe_torus::coloring::{random_proper, Coloring};
use kempe_torus::patterns::{find_patterns, PatternKind};
use kempe_torus::reconfig::{flood_class, kempe_classes};
use kempe_torus::torus_graph::build_shifted_grid;
use kempe_torus::wsk::{run_chain, run_chain_from};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Ergodic setting: k = 5 on T[7x7,1]; chains wander freely and keep
    // stumbling onto triples.
    let g = build_shifted_grid(7, 7, 1)?;
    let stats = run_chain(&g, 5, 10_000, 1, None)?;
    println!(
        "T[7x7,1] k=5, 10^4 steps: {} distinct colorings, final coloring proper: {}",
        stats.distinct_colorings,
        kempe_torus::coloring::is_proper(&g, &stats.final_coloring)?
    );
    let mut with_triple = 0;
    for seed in 0..100 {
        let s = run_chain(&g, 5, 100, seed, None)?;
        if find_patterns(&g, &s.final_coloring).iter().any(|p| p.kind == PatternKind::Triple) {
            with_triple += 1;
        }
    }
    println!("  {with_triple}/100 seeded chains end on a coloring containing a triple");

    // Exact per-class occupancy on a fully enumerated instance.
    let g33 = build_shifted_grid(3, 3, 1)?;
    let report = kempe_classes(&g33, 4, false, 1_000_000)?;
    let stats = run_chain(&g33, 4, 5_000, 2, Some(&report))?;
    println!(
        "\nT[3x3,1] k=4: {} class(es); chain visits per class: {:?}",
        report.class_count,
        stats.class_visits.unwrap()
    );

    // Class confinement where the state space is genuinely split: a chain
    // started in the 1104-state class of T[6x6,1] never leaves it.
    let g66 = build_shifted_grid(6, 6, 1)?;
    let linear: Vec<u8> = (0..36u32).map(|v| ((v / 6 + 2 * (v % 6)) % 4) as u8 + 1).collect();
    let start = Coloring::new(4, linear);
    let class = flood_class(&g66, &start, 4, 1_000_000)?;
    let stats = run_chain_from(&g66, &start, 4, 50_000, 3, None);
    assert!(class.contains(&stats.final_coloring.colors));
    println!(
        "\nT[6x6,1] k=4: chain of 5*10^4 steps stayed inside its 1104-state class \
         ({} distinct colorings visited)",
        stats.distinct_colorings
    );
    let outside = random_proper(&g66, 4, 11)?;
    if !class.contains(&outside.colors) {
        let stats = run_chain_from(&g66, &outside, 4, 50_000, 4, None);
        assert!(!class.contains(&stats.final_coloring.colors));
        println!("  a chain started outside the class never enters it: WSK is non-ergodic here");
    }
    Ok(())
}
