//! Constructing the two 6-regular toroidal families, reading off canonical
//! parameterizations, enumerating isomorphism classes, and sampling.
//!
//! Run with: `cargo run --example generate_graphs`

use kempe_torus::graph::Graph;
use kempe_torus::torus_graph::{
    build_circulant, build_shifted_grid, canonical_forms, enumerate_graphs, sample_uniform,
    sample_uniform_triples,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = build_shifted_grid(5, 7, 1)?;
    println!("{}: {} vertices, 6-regular", grid.params(), grid.vertex_count());
    println!("  neighbors of vertex 0: {:?}", grid.neighbors(0));
    println!("  canonical forms: {:?}", canonical_forms(&grid)?);

    let circ = build_circulant(37, 10)?;
    println!("{}: canonical forms {:?}", circ.params(), canonical_forms(&circ)?);

    // The circulant is the same abstract graph as a one-column shifted grid.
    let one_column = build_shifted_grid(37, 1, 12)?;
    assert_eq!(canonical_forms(&circ)?, canonical_forms(&one_column)?);
    println!("  C37[1,10,11] == T[37x1,12] (canonical lists agree)");

    // Parameters that would create loops or parallel edges are rejected.
    println!("\nT[7x2,1]: {}", build_shifted_grid(7, 2, 1).unwrap_err());
    println!("C7[1,3,4]: {}", build_circulant(7, 3).unwrap_err());

    let classes = enumerate_graphs(24)?;
    println!("\nisomorphism classes on 24 vertices: {}", classes.len());
    for g in &classes {
        println!("  {} ~ {:?}", g.params(), canonical_forms(g)?);
    }

    let by_class = sample_uniform(24, 7)?;
    let by_triple = sample_uniform_triples(24, 7)?;
    println!("\nsampled (class-uniform, seed 7):  {}", by_class.params());
    println!("sampled (triple-uniform, seed 7): {}", by_triple.params());
    Ok(())
}
