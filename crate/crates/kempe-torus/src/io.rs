//! File formats: graph spec JSON, coloring JSON, certificate JSON, DIMACS
//! edge export with a rotation-system sidecar.
//!
//! Vertex ids in JSON are 0-based indices; DIMACS is 1-based as usual.

use crate::coloring::{Certificate, Coloring};
use crate::graph::Graph;
use crate::torus_graph::{build, GraphParams, TorusGraph, TorusGraphError};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] TorusGraphError),
}

pub fn read_graph(path: &Path) -> Result<TorusGraph, IoError> {
    let text = fs::read_to_string(path)?;
    let params: GraphParams = serde_json::from_str(&text)?;
    Ok(build(params)?)
}

pub fn write_graph_spec(path: &Path, params: GraphParams) -> Result<(), IoError> {
    fs::write(path, serde_json::to_string_pretty(&params)?)?;
    Ok(())
}

pub fn read_coloring(path: &Path) -> Result<Coloring, IoError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_coloring(path: &Path, phi: &Coloring) -> Result<(), IoError> {
    fs::write(path, serde_json::to_string(phi)?)?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<Certificate, IoError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_certificate(path: &Path, cert: &Certificate) -> Result<(), IoError> {
    fs::write(path, serde_json::to_string(cert)?)?;
    Ok(())
}

/// Rotation-system sidecar accompanying a DIMACS export.
#[derive(Serialize, Deserialize)]
pub struct RotationSidecar {
    pub n: usize,
    /// 0-based cyclic neighbor lists, one per vertex.
    pub rotation: Vec<Vec<usize>>,
}

/// DIMACS edge format: `p edge n m` then 1-based `e u v` lines with edges
/// sorted lexicographically. The rotation sidecar goes to
/// `<path>.rotation.json`.
pub fn write_dimacs(path: &Path, g: &TorusGraph) -> Result<(), IoError> {
    let edges = g.edges();
    let mut out = fs::File::create(path)?;
    writeln!(out, "c 6-regular toroidal graph {}", g.params())?;
    writeln!(out, "p edge {} {}", g.vertex_count(), edges.len())?;
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    let sidecar = RotationSidecar {
        n: g.vertex_count(),
        rotation: (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(),
    };
    let sidecar_path = path.with_extension(format!(
        "{}.rotation.json",
        path.extension().and_then(|e| e.to_str()).unwrap_or("col")
    ));
    fs::write(sidecar_path, serde_json::to_string(&sidecar)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_graph::build_shifted_grid;
    use tempfile::tempdir;

    #[test]
    fn graph_spec_roundtrip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_graph_spec(&path, GraphParams::ShiftedGrid { a: 5, b: 7, c: 1 }).unwrap();
        let g = read_graph(&path).unwrap();
        assert_eq!(g.vertex_count(), 35);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"family\": \"shifted_grid\""));

        write_graph_spec(&path, GraphParams::Circulant { n: 37, r: 10 }).unwrap();
        let g = read_graph(&path).unwrap();
        assert_eq!(g.vertex_count(), 37);
    }

    #[test]
    fn coloring_json_shape() {
        let phi = Coloring::new(5, vec![1, 2, 3, 4, 5]);
        let json = serde_json::to_string(&phi).unwrap();
        assert_eq!(json, r#"{"k":5,"colors":[1,2,3,4,5]}"#);
    }

    #[test]
    fn dimacs_export_format() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("g.col");
        let g = build_shifted_grid(3, 3, 1).unwrap();
        write_dimacs(&path, &g).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with('c'));
        assert_eq!(lines.next().unwrap(), "p edge 9 27");
        let edges: Vec<&str> = lines.collect();
        assert_eq!(edges.len(), 27);
        assert!(edges[0].starts_with("e 1 "));
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        // 1-based, lexicographically sorted as written (single-digit ids here).
        assert_eq!(edges, sorted);
        let sidecar: RotationSidecar = serde_json::from_str(
            &fs::read_to_string(dir.path().join("g.col.rotation.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(sidecar.rotation.len(), 9);
        assert_eq!(sidecar.rotation[0].len(), 6);
    }
}
