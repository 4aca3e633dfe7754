//! Meshes for the four realization families: spherical, convex, star and
//! skew.
//!
//! Decisions (planarity, crossings, the even-odd regions of star facets)
//! are made in exact arithmetic; only the final mesh coordinates are
//! floats. Every facet mesh is the base facet mesh moved by the facet's
//! representative matrix.

pub mod arrangement;
pub mod classify;
pub mod export;
pub mod plateau;
pub mod spherical;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Mat3, Vec3};
use crate::exec::{self, Execution};
use crate::wythoff::RealizationSkeleton;

pub use arrangement::{planar_region, PlanarRegion};
pub use classify::{classify_family, classify_family_with, facet_coplanar, Classification};
pub use export::{export_obj, export_ply, write_obj, write_ply, MeshMetadata};
pub use plateau::{solve_plateau, PlateauParams, PlateauStats};
pub use spherical::{realize_spherical, spherical_triangle_area};

pub type P3 = [f64; 3];

/// Small helpers on float 3-vectors.
pub mod fvec {
    use super::P3;

    pub fn add(a: P3, b: P3) -> P3 {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    pub fn sub(a: P3, b: P3) -> P3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    pub fn scale(a: P3, k: f64) -> P3 {
        [a[0] * k, a[1] * k, a[2] * k]
    }

    pub fn dot(a: P3, b: P3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn cross(a: P3, b: P3) -> P3 {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    }

    pub fn norm(a: P3) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn normalize(a: P3) -> P3 {
        scale(a, 1.0 / norm(a))
    }

    /// Row vector times matrix.
    pub fn mul_mat(a: P3, m: &[[f64; 3]; 3]) -> P3 {
        std::array::from_fn(|c| a[0] * m[0][c] + a[1] * m[1][c] + a[2] * m[2][c])
    }

    pub fn triangle_area(a: P3, b: P3, c: P3) -> f64 {
        norm(cross(sub(b, a), sub(c, a))) / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Spherical,
    Convex,
    Star,
    Skew,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Spherical, Family::Convex, Family::Star, Family::Skew];

    pub fn slug(self) -> &'static str {
        match self {
            Family::Spherical => "sp",
            Family::Convex => "co",
            Family::Star => "st",
            Family::Skew => "sk",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.slug() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}; expected sp, co, st or sk")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetKind {
    PlanarConvex,
    PlanarStar,
    Spherical,
    MinimalSurface,
}

/// Float triangle mesh with shared vertices.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Mesh {
    pub vertices: Vec<P3>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    /// Builds a mesh from exact triangles, merging equal corners.
    pub fn from_exact(triangles: &[[Vec3; 3]]) -> Mesh {
        let mut index: HashMap<&Vec3, usize> = HashMap::new();
        let mut mesh = Mesh::default();
        for t in triangles {
            let ids = t.each_ref().map(|p| {
                *index.entry(p).or_insert_with(|| {
                    mesh.vertices.push(p.to_f64());
                    mesh.vertices.len() - 1
                })
            });
            mesh.triangles.push(ids);
        }
        mesh
    }

    pub fn transformed(&self, m: &[[f64; 3]; 3]) -> Mesh {
        Mesh { vertices: self.vertices.iter().map(|&v| fvec::mul_mat(v, m)).collect(), triangles: self.triangles.clone() }
    }

    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| fvec::triangle_area(self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]))
            .sum()
    }

    pub fn min_triangle_area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| fvec::triangle_area(self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetGeometry {
    pub kind: FacetKind,
    pub mesh: Mesh,
    /// Closed boundary polyline through the facet's vertices.
    pub boundary: Vec<P3>,
}

impl FacetGeometry {
    fn transformed(&self, m: &[[f64; 3]; 3]) -> FacetGeometry {
        FacetGeometry {
            kind: self.kind,
            mesh: self.mesh.transformed(m),
            boundary: self.boundary.iter().map(|&v| fvec::mul_mat(v, m)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealizedPolyhedron {
    pub skeleton: RealizationSkeleton,
    pub family: Family,
    pub facets: Vec<FacetGeometry>,
    /// One polyline per edge; two points for straight edges.
    pub edges: Vec<Vec<P3>>,
    pub classification: Classification,
    /// Connected pieces of the base facet region.
    pub facet_components: usize,
    pub plateau: Option<PlateauStats>,
}

impl RealizedPolyhedron {
    pub fn vertex_count(&self) -> usize {
        self.facets.iter().map(|f| f.mesh.vertices.len()).sum()
    }

    pub fn triangle_count(&self) -> usize {
        self.facets.iter().map(|f| f.mesh.triangles.len()).sum()
    }

    /// Largest coordinate gap between each facet mesh and the base mesh
    /// moved by that facet's matrix.
    pub fn symmetric_copy_error(&self) -> f64 {
        let base = &self.facets[0].mesh;
        let mut worst = 0.0f64;
        for (j, f) in self.facets.iter().enumerate() {
            let expected = base.transformed(&self.skeleton.facet_matrix(j).to_f64());
            if expected.triangles != f.mesh.triangles || expected.vertices.len() != f.mesh.vertices.len() {
                return f64::INFINITY;
            }
            for (a, b) in expected.vertices.iter().zip(&f.mesh.vertices) {
                for k in 0..3 {
                    worst = worst.max((a[k] - b[k]).abs());
                }
            }
        }
        worst
    }
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub plateau: PlateauParams,
    pub samples_per_arc: usize,
    /// Midpoint subdivisions applied to spherical facet triangles.
    pub sphere_subdivisions: usize,
    pub mode: Execution,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            plateau: PlateauParams::default(),
            samples_per_arc: 16,
            sphere_subdivisions: 2,
            mode: Execution::default(),
        }
    }
}

/// Realizes `skel` in the requested family.
pub fn realize(skel: &RealizationSkeleton, family: Family, opts: &RealizeOptions) -> Result<RealizedPolyhedron> {
    match family {
        Family::Spherical => realize_spherical(skel, opts),
        Family::Convex | Family::Star => {
            let rp = realize_classical_with(skel, opts.mode)?;
            if rp.family != family {
                return Err(Error::Invalid(format!(
                    "this realization is {} rather than {}",
                    name(rp.family),
                    name(family)
                )));
            }
            Ok(rp)
        }
        Family::Skew => realize_skew_with(skel, &opts.plateau, opts.mode),
    }
}

fn name(f: Family) -> &'static str {
    match f {
        Family::Spherical => "spherical",
        Family::Convex => "convex",
        Family::Star => "star",
        Family::Skew => "skew",
    }
}

fn float_vertices(skel: &RealizationSkeleton) -> Vec<P3> {
    skel.vertices().iter().map(Vec3::to_f64).collect()
}

fn boundary_of(skel: &RealizationSkeleton, j: usize) -> Vec<P3> {
    skel.facets()[j].vertices.iter().map(|&v| skel.vertices()[v].to_f64()).collect()
}

fn straight_edges(skel: &RealizationSkeleton) -> Vec<Vec<P3>> {
    let v = float_vertices(skel);
    skel.edges().iter().map(|e| vec![v[e[0]], v[e[1]]]).collect()
}

/// Copies of the base facet onto every facet, exactly then rounded.
fn fan_out_exact(skel: &RealizationSkeleton, base: &[[Vec3; 3]], kind: FacetKind, mode: Execution) -> Vec<FacetGeometry> {
    let ids: Vec<usize> = (0..skel.facets().len()).collect();
    exec::map_collect(mode, &ids, |&j| {
        let m: &Mat3 = skel.facet_matrix(j);
        let moved: Vec<[Vec3; 3]> = base.iter().map(|t| t.each_ref().map(|p| p.mul_mat(m))).collect();
        FacetGeometry { kind, mesh: Mesh::from_exact(&moved), boundary: boundary_of(skel, j) }
    })
}

/// Copies of a float base facet onto every facet.
fn fan_out_float(skel: &RealizationSkeleton, base: &FacetGeometry, mode: Execution) -> Vec<FacetGeometry> {
    let ids: Vec<usize> = (0..skel.facets().len()).collect();
    exec::map_collect(mode, &ids, |&j| base.transformed(&skel.facet_matrix(j).to_f64()))
}

pub fn realize_classical(skel: &RealizationSkeleton) -> Result<RealizedPolyhedron> {
    realize_classical_with(skel, Execution::default())
}

/// Straight edges and planar facets: the convex hull interior of a simple
/// facet polygon, or the even-odd region of a self-crossing one.
pub fn realize_classical_with(skel: &RealizationSkeleton, mode: Execution) -> Result<RealizedPolyhedron> {
    let classification = classify_family_with(skel, mode);
    if let Some(j) = classification.coplanar.iter().position(|c| !c) {
        return Err(Error::NonCoplanarFacet(j));
    }
    let region = planar_region(&skel.facet_points(0));
    let kind = if region.convex { FacetKind::PlanarConvex } else { FacetKind::PlanarStar };
    let facets = fan_out_exact(skel, &region.triangles, kind, mode);
    Ok(RealizedPolyhedron {
        skeleton: skel.clone(),
        family: classification.family,
        facets,
        edges: straight_edges(skel),
        classification,
        facet_components: region.components,
        plateau: None,
    })
}

pub fn realize_skew(skel: &RealizationSkeleton, params: &PlateauParams) -> Result<RealizedPolyhedron> {
    realize_skew_with(skel, params, Execution::default())
}

/// Straight edges and minimal-surface facets. The base facet is relaxed
/// once; the rest are its images.
pub fn realize_skew_with(skel: &RealizationSkeleton, params: &PlateauParams, mode: Execution) -> Result<RealizedPolyhedron> {
    let classification = classify_family_with(skel, mode);
    if classification.family != Family::Skew {
        return Err(Error::NoSkewFacet);
    }
    let boundary = boundary_of(skel, 0);
    let (mesh, stats) = solve_plateau(&boundary, params)?;
    let base = FacetGeometry { kind: FacetKind::MinimalSurface, mesh, boundary };
    let facets = fan_out_float(skel, &base, mode);
    Ok(RealizedPolyhedron {
        skeleton: skel.clone(),
        family: Family::Skew,
        facets,
        edges: straight_edges(skel),
        classification,
        facet_components: 1,
        plateau: Some(stats),
    })
}
