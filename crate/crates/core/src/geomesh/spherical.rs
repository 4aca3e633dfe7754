//! Spherical realizations: vertices, edges and facets pushed radially onto
//! the unit sphere.

use super::fvec::{add, cross, dot, normalize, scale};
use super::{
    boundary_of, classify_family_with, fan_out_float, planar_region, FacetGeometry, FacetKind, Mesh, RealizeOptions,
    RealizedPolyhedron, P3,
};
use crate::error::{Error, Result};
use crate::exactnum::Vec3;
use crate::geomesh::classify::points_coplanar;
use crate::wythoff::RealizationSkeleton;

/// Area of the spherical triangle with unit-vector corners.
pub fn spherical_triangle_area(a: P3, b: P3, c: P3) -> f64 {
    let det = dot(a, cross(b, c)).abs();
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * det.atan2(den)
}

/// Points along the shorter great-circle arc from `a` to `b`, both ends
/// included.
pub fn great_arc(a: P3, b: P3, samples: usize) -> Vec<P3> {
    let theta = dot(a, b).clamp(-1.0, 1.0).acos();
    let n = samples.max(1);
    (0..=n)
        .map(|k| {
            let t = k as f64 / n as f64;
            if theta < 1e-15 {
                return a;
            }
            let s = theta.sin();
            add(scale(a, ((1.0 - t) * theta).sin() / s), scale(b, (t * theta).sin() / s))
        })
        .collect()
}

fn subdivide(tris: Vec<[P3; 3]>, levels: usize) -> Vec<[P3; 3]> {
    let mut out = tris;
    for _ in 0..levels {
        out = out
            .into_iter()
            .flat_map(|[a, b, c]| {
                let mid = |p: P3, q: P3| normalize(add(p, q));
                let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
                [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
            })
            .collect();
    }
    out
}

fn mesh_from_float(tris: &[[P3; 3]]) -> Mesh {
    // Corners are shared bit-for-bit where they coincide.
    let mut mesh = Mesh::default();
    let mut index: std::collections::HashMap<[u64; 3], usize> = std::collections::HashMap::new();
    for t in tris {
        let ids = t.map(|p| {
            let key = p.map(|x| (x + 0.0).to_bits());
            *index.entry(key).or_insert_with(|| {
                mesh.vertices.push(p);
                mesh.vertices.len() - 1
            })
        });
        mesh.triangles.push(ids);
    }
    mesh
}

/// Planar facets keep their classical regions (even-odd for star
/// polygons); non-planar facets are fanned from the direction of their
/// vertex sum, or from their first vertex when that sum vanishes.
pub fn realize_spherical(skel: &RealizationSkeleton, opts: &RealizeOptions) -> Result<RealizedPolyhedron> {
    if skel.vertices().iter().any(Vec3::is_zero) {
        return Err(Error::Domain("a vertex sits at the centre of the sphere".into()));
    }
    let verts = skel.vertices();
    for (j, e) in skel.edges().iter().enumerate() {
        let (a, b) = (&verts[e[0]], &verts[e[1]]);
        if a.cross(b).is_zero() && a.dot(b).signum() < 0 {
            return Err(Error::AntipodalEdge(j));
        }
    }
    let classification = classify_family_with(skel, opts.mode);
    let cycle = skel.facet_points(0);
    let (flat, components): (Vec<[P3; 3]>, usize) = if points_coplanar(&cycle) {
        let region = planar_region(&cycle);
        let tris = region.triangles.iter().map(|t| t.each_ref().map(|p| normalize(p.to_f64()))).collect();
        (tris, region.components)
    } else {
        let sum = cycle.iter().skip(1).fold(cycle[0].clone(), |acc, p| &acc + p);
        let pts: Vec<P3> = cycle.iter().map(|p| normalize(p.to_f64())).collect();
        let n = pts.len();
        let tris = if sum.is_zero() {
            (1..n - 1).map(|k| [pts[0], pts[k], pts[k + 1]]).collect()
        } else {
            let c = normalize(sum.to_f64());
            (0..n).map(|k| [c, pts[k], pts[(k + 1) % n]]).collect()
        };
        (tris, 1)
    };
    let tris = subdivide(flat, opts.sphere_subdivisions);
    let boundary = boundary_of(skel, 0).into_iter().map(normalize).collect();
    let base = FacetGeometry { kind: FacetKind::Spherical, mesh: mesh_from_float(&tris), boundary };
    let facets = fan_out_float(skel, &base, opts.mode);
    let edges = skel
        .edges()
        .iter()
        .map(|e| great_arc(normalize(verts[e[0]].to_f64()), normalize(verts[e[1]].to_f64()), opts.samples_per_arc))
        .collect();
    Ok(RealizedPolyhedron {
        skeleton: skel.clone(),
        family: super::Family::Spherical,
        facets,
        edges,
        classification,
        facet_components: components,
        plateau: None,
    })
}

impl RealizedPolyhedron {
    /// Sum of spherical triangle areas over all facet meshes, treating
    /// every mesh vertex as a unit vector.
    pub fn spherical_area(&self) -> f64 {
        self.facets
            .iter()
            .flat_map(|f| {
                f.mesh.triangles.iter().map(|t| {
                    let [a, b, c] = t.map(|i| normalize(f.mesh.vertices[i]));
                    spherical_triangle_area(a, b, c)
                })
            })
            .sum()
    }
}
