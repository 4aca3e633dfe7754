//! OBJ and PLY writers and the JSON metadata sidecar.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::{Classification, Family, FacetKind, PlateauStats, RealizedPolyhedron};
use crate::error::Result;

fn num(x: f64) -> String {
    // 17 significant digits; `+ 0.0` folds -0 into 0.
    format!("{:.16e}", x + 0.0)
}

/// `v` lines for every facet mesh in facet order, then one `g facet_<j>`
/// group of `f` lines per facet, 1-based.
pub fn write_obj<W: Write>(rp: &RealizedPolyhedron, out: &mut W) -> Result<()> {
    let (p, q) = rp.skeleton.polyhedron().source().schlafli();
    writeln!(out, "# {{{p},{q}}} {} {}", rp.skeleton.representation().name(), rp.family)?;
    for f in &rp.facets {
        for v in &f.mesh.vertices {
            writeln!(out, "v {} {} {}", num(v[0]), num(v[1]), num(v[2]))?;
        }
    }
    let mut offset = 1;
    for (j, f) in rp.facets.iter().enumerate() {
        writeln!(out, "g facet_{}", j + 1)?;
        for t in &f.mesh.triangles {
            writeln!(out, "f {} {} {}", t[0] + offset, t[1] + offset, t[2] + offset)?;
        }
        offset += f.mesh.vertices.len();
    }
    Ok(())
}

pub fn export_obj(rp: &RealizedPolyhedron, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_obj(rp, &mut w)?;
    w.flush()?;
    Ok(())
}

/// ASCII PLY with the same vertices and triangles as the OBJ output and a
/// per-face `facet` property (1-based).
pub fn write_ply<W: Write>(rp: &RealizedPolyhedron, out: &mut W) -> Result<()> {
    writeln!(out, "ply")?;
    writeln!(out, "format ascii 1.0")?;
    writeln!(out, "element vertex {}", rp.vertex_count())?;
    for axis in ["x", "y", "z"] {
        writeln!(out, "property double {axis}")?;
    }
    writeln!(out, "element face {}", rp.triangle_count())?;
    writeln!(out, "property list uchar int vertex_indices")?;
    writeln!(out, "property int facet")?;
    writeln!(out, "end_header")?;
    for f in &rp.facets {
        for v in &f.mesh.vertices {
            writeln!(out, "{} {} {}", num(v[0]), num(v[1]), num(v[2]))?;
        }
    }
    let mut offset = 0;
    for (j, f) in rp.facets.iter().enumerate() {
        for t in &f.mesh.triangles {
            writeln!(out, "3 {} {} {} {}", t[0] + offset, t[1] + offset, t[2] + offset, j + 1)?;
        }
        offset += f.mesh.vertices.len();
    }
    Ok(())
}

pub fn export_ply(rp: &RealizedPolyhedron, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_ply(rp, &mut w)?;
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct MeshMetadata {
    pub name: String,
    pub representation: String,
    pub family: Family,
    pub facet_kind: FacetKind,
    /// Abstract `[v, e, f]`.
    pub counts: [usize; 3],
    pub mesh_vertices: usize,
    pub mesh_triangles: usize,
    pub classification: Classification,
    pub facet_components: usize,
    /// Whether the cell is a union of several open regions.
    pub star_cell: bool,
    pub symmetric_copy_error: f64,
    pub plateau: Option<PlateauStats>,
    pub spherical_area: Option<f64>,
}

impl MeshMetadata {
    pub fn new(rp: &RealizedPolyhedron, name: &str) -> MeshMetadata {
        let (v, e, f) = rp.skeleton.counts();
        MeshMetadata {
            name: name.to_string(),
            representation: rp.skeleton.representation().name().to_string(),
            family: rp.family,
            facet_kind: rp.facets[0].kind,
            counts: [v, e, f],
            mesh_vertices: rp.vertex_count(),
            mesh_triangles: rp.triangle_count(),
            classification: rp.classification.clone(),
            facet_components: rp.facet_components,
            star_cell: rp.classification.family == Family::Star,
            symmetric_copy_error: rp.symmetric_copy_error(),
            plateau: rp.plateau.clone(),
            spherical_area: (rp.family == Family::Spherical).then(|| rp.spherical_area()),
        }
    }
}
