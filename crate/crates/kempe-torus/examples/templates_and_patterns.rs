//! The local machinery behind the reconfiguration pipeline: motif detection
//! in a coloring, the twelve good 4-templates extending a triple, degeneracy
//! orders, bonus vertices, and well-behaved subgraphs.
//!
//! Run with: `cargo run --release --example templates_and_patterns`

use kempe_torus::coloring::random_proper;
use kempe_torus::degeneracy::{
    contract, degeneracy_order, extend_template_coloring, is_good, is_well_behaved, Template,
};
use kempe_torus::patterns::{bonus_vertices_near, find_patterns, triple_templates, PatternKind};
use kempe_torus::torus_graph::{build_shifted_grid, TorusGraph};

/// Walks figure coordinates: east steps and north-east steps from a base.
fn fig(g: &TorusGraph, x: i64, y: i64) -> usize {
    g.lattice_offset(0, 0, (x - y) / 2, 1, y)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_shifted_grid(9, 9, 1)?;

    // Motifs of a random 5-coloring.
    let phi = random_proper(&g, 5, 42)?;
    let patterns = find_patterns(&g, &phi);
    for kind in [
        PatternKind::Pair,
        PatternKind::Triple,
        PatternKind::ParallelPairs,
        PatternKind::CrossingPairs,
    ] {
        let count = patterns.iter().filter(|p| p.kind == kind).count();
        println!("{kind:?}: {count} instance(s)");
    }

    // The two figure templates: a triple around a center plus a 4th vertex.
    let orange = vec![fig(&g, -2, 0), fig(&g, 1, 1), fig(&g, 1, -1), fig(&g, 4, 2)];
    let template = Template::monochromatic(orange.clone());
    let order = is_good(&g, &template)?.expect("figure template is good");
    println!("\ntemplate {orange:?} is good; degeneracy order ends at the super-vertex");

    // Its quotient admits prescribed-prefix orders and proper extensions.
    let qg = contract(&g, &template)?;
    let prefix = [fig(&g, 0, 0), fig(&g, 2, 0), fig(&g, 3, 1)].map(|v| qg.map[v]);
    assert!(degeneracy_order(&qg, Some(&prefix))?.is_some());
    let extended = extend_template_coloring(&g, &qg, &order, &[1], 5, 7)?;
    println!("template coloring extends to all of G (color 1 on the template class)");
    assert!(kempe_torus::coloring::is_proper(&g, &extended)?);

    // Every triple extends to exactly 12 good 4-templates.
    let triple = find_patterns(&g, &extended)
        .into_iter()
        .find(|p| p.kind == PatternKind::Triple)
        .expect("the extended coloring contains a triple");
    let twelve = triple_templates(&g, &triple);
    println!("triple {:?} has {} good extensions", &triple.witness[..3], twelve.len());

    // Bonus vertices extend a good template by a singleton color.
    let h: Vec<usize> = {
        let mut h = orange.clone();
        h.extend([fig(&g, 0, 0), fig(&g, 2, 0), fig(&g, 3, 1)]);
        h
    };
    println!("witness subgraph well-behaved: {}", is_well_behaved(&g, &h, false));
    let bonus = bonus_vertices_near(&g, &template, &h, 3);
    println!("bonus vertices within distance 3: {:?}", bonus.iter().map(|(v, _)| *v).collect::<Vec<_>>());
    Ok(())
}
