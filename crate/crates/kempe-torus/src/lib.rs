//! Kempe-swap reconfiguration on 6-regular toroidal graphs.
//!
//! The crate builds the shifted triangulated grids `T[a x b, c]` and
//! circulants `C_n[1, r, r+1]`, computes edge-width via homology voltages,
//! detects the local coloring motifs that drive reconfiguration (pairs,
//! triples, parallel and crossing pairs), certifies good 4-templates through
//! degeneracy orders, and produces machine-checkable Kempe swap sequences
//! connecting any two 5-colorings on graphs of edge-width at least 7 (and on
//! the `T[6 x b]` family). A zero-temperature Wang-Swendsen-Kotecky sampler
//! and exact Kempe-class computation support desk-scale experiments.
//!
//! See the `examples/` directory for one runnable example per capability, and
//! the `kempe-torus` binary for the JSON-speaking command line.

pub mod cli;
pub mod coloring;
pub mod degeneracy;
pub mod fourcolor;
pub mod graph;
pub mod io;
pub mod patterns;
pub mod reconfig;
pub mod rng;
pub mod topology;
pub mod torus_graph;
pub mod wsk;

pub use coloring::{Certificate, Coloring, KempeMove};
pub use graph::Graph;
pub use torus_graph::{build, build_circulant, build_shifted_grid, GraphParams, TorusGraph};
