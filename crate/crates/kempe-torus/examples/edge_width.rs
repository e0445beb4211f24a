//! Homology classes of closed walks and edge-width (the length of the
//! shortest non-contractible cycle), computed in the universal cover.
//!
//! Run with: `cargo run --example edge_width`

use kempe_torus::topology::{edge_width, noncontractible_cycles_of_length, walk_class};
use kempe_torus::torus_graph::{build_circulant, build_shifted_grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_shifted_grid(7, 7, 1)?;

    // A face triangle is contractible; a column wraps around the torus.
    let face = vec![0, g.step(0, 0), g.step(0, 1), 0];
    println!("face triangle class: {:?}", walk_class(&g, &face)?);
    let mut column = vec![0];
    let mut v = 0;
    for _ in 0..7 {
        v = g.step(v, 5);
        column.push(v);
    }
    println!("column cycle class:  {:?} (non-contractible)", walk_class(&g, &column)?);

    for params in [(7usize, 7usize, 1usize), (6, 9, 1), (5, 7, 3)] {
        let g = build_shifted_grid(params.0, params.1, params.2)?;
        let (w, witness) = edge_width(&g)?;
        println!("{}: edge-width {w}, witness {witness:?}", g.params());
    }
    for (n, r) in [(17usize, 6usize), (26, 10), (37, 10)] {
        let g = build_circulant(n, r)?;
        let (w, _) = edge_width(&g)?;
        println!("{}: edge-width {w}", g.params());
    }

    // The T[6 x b] family keeps its short cycles in a thin, enumerable set.
    let g66 = build_shifted_grid(6, 6, 1)?;
    println!(
        "T[6x6,1]: {} non-contractible 6-cycles (rows, columns, diagonals)",
        noncontractible_cycles_of_length(&g66, 6).len()
    );
    Ok(())
}
