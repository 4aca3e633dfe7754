use std::f64::consts::PI;

use polyreal_core::cgroups::LabelledClass;
use polyreal_core::geomesh::fvec::{cross, dot, norm, normalize, sub};
use polyreal_core::geomesh::{self, Family, FacetKind, PlateauParams, RealizeOptions};
use polyreal_core::h3;
use polyreal_core::polytope::build_polyhedron;
use polyreal_core::wythoff::{builtin_representation, build_skeleton, wythoff_space, RealizationSkeleton};

fn skeleton(class: &str, rep: &str) -> RealizationSkeleton {
    let classes = h3::classes();
    let c: &LabelledClass = class.parse::<polyreal_core::cgroups::Selector>().unwrap().resolve(&classes).unwrap();
    let rep = builtin_representation(rep).unwrap();
    let base = wythoff_space(&rep, &c.cgroup).unwrap().default_base_point().unwrap();
    build_skeleton(&build_polyhedron(&c.cgroup), &rep, &base).unwrap()
}

#[test]
fn classification_table() {
    let expected = [
        ("3,5", "phi1", Family::Convex),
        ("5,3", "phi1", Family::Convex),
        ("3,5", "phi2", Family::Star),
        ("5,3", "phi2", Family::Star),
        ("5,5", "phi1", Family::Star),
        ("5,5", "phi2", Family::Star),
        ("6,5:c", "phi1", Family::Skew),
        ("6,5:c", "phi2", Family::Skew),
        ("10,3:b", "phi1", Family::Skew),
        ("10,3:b", "phi2", Family::Skew),
        ("10,5:b", "phi1", Family::Skew),
        ("10,5:b", "phi2", Family::Skew),
    ];
    for (class, rep, family) in expected {
        let c = geomesh::classify_family(&skeleton(class, rep));
        println!("{class} {rep} {c:?}");
        assert_eq!(c.family, family, "{class} {rep}");
    }
}

#[test]
fn pentagram_has_five_pieces() {
    let rp = geomesh::realize_classical(&skeleton("5,3", "phi2")).unwrap();
    assert_eq!(rp.facet_components, 5);
    assert_eq!(rp.facets[0].kind, FacetKind::PlanarStar);
    assert!(rp.symmetric_copy_error() < 1e-9);
}

#[test]
fn sphere_area() {
    let rp = geomesh::realize_spherical(&skeleton("5,3", "phi1"), &RealizeOptions::default()).unwrap();
    assert!((rp.spherical_area() - 4.0 * PI).abs() < 1e-6);
}

const SKEW: [(&str, &str); 6] =
    [("6,5:c", "phi1"), ("6,5:c", "phi2"), ("10,3:b", "phi1"), ("10,3:b", "phi2"), ("10,5:b", "phi1"), ("10,5:b", "phi2")];

#[test]
fn skew_facets_relax_to_minimal_surfaces() {
    for (class, rep) in SKEW {
        let skel = skeleton(class, rep);
        let rp = geomesh::realize_skew(&skel, &PlateauParams::default()).unwrap();
        let s = rp.plateau.as_ref().unwrap();
        assert!(s.iterations <= 20_000, "{class} {rep}");
        assert!(s.final_displacement < 1e-10, "{class} {rep}");
        assert!(s.area_non_increasing(1e-12), "{class} {rep}");
        assert!(s.final_area < s.initial_area, "{class} {rep}");
        assert_eq!(s.boundary_displacement, 0.0, "{class} {rep}");
        assert!(s.gradient_residual < 1e-6, "{class} {rep}");
        assert!(rp.symmetric_copy_error() < 1e-9, "{class} {rep}");
        for f in &rp.facets {
            assert_eq!(f.kind, FacetKind::MinimalSurface);
            assert!(f.mesh.min_triangle_area() > 1e-12, "{class} {rep}");
        }
        assert_eq!(rp.facets.len(), skel.facets().len());
    }
}

fn ray_hits(o: [f64; 3], d: [f64; 3], [a, b, c]: [[f64; 3]; 3]) -> bool {
    let (e1, e2) = (sub(b, a), sub(c, a));
    let p = cross(d, e2);
    let det = dot(e1, p);
    if det.abs() < 1e-14 {
        return false;
    }
    let t = sub(o, a);
    let u = dot(t, p) / det;
    let q = cross(t, e1);
    let v = dot(d, q) / det;
    u >= 0.0 && v >= 0.0 && u + v <= 1.0 && dot(e2, q) / det > 0.0
}

/// Fraction of a grid over the bounding box whose points see an odd number
/// of facet triangles along a fixed ray: the even-odd inside of the
/// surface, which needs no orientation.
fn odd_fraction(rp: &geomesh::RealizedPolyhedron, steps: usize) -> f64 {
    let tris: Vec<[[f64; 3]; 3]> =
        rp.facets.iter().flat_map(|f| f.mesh.triangles.iter().map(|t| t.map(|i| f.mesh.vertices[i]))).collect();
    let r = rp.skeleton.vertices().iter().map(|v| norm(v.to_f64())).fold(0.0, f64::max);
    let d = normalize([0.31, 0.83, 0.47]);
    let mut odd = 0;
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                let o = [i, j, k].map(|n| -r + 2.0 * r * (n as f64 + 0.5) / steps as f64);
                if tris.iter().filter(|&&t| ray_hits(o, d, t)).count() % 2 == 1 {
                    odd += 1;
                }
            }
        }
    }
    odd as f64 / (steps * steps * steps) as f64
}

#[test]
fn skew_decagons_enclose_volume() {
    let skel = skeleton("10,3:b", "phi1");
    assert_eq!(skel.facets().len(), 6);
    assert!(skel.facets().iter().all(|f| f.vertices.len() == 10));
    let rp = geomesh::realize_skew(&skel, &PlateauParams::default()).unwrap();
    assert!(rp.classification.coplanar.iter().all(|c| !c));
    // The map is not orientable, so the region is its even-odd inside.
    assert!(odd_fraction(&rp, 12) > 0.01);
}

#[test]
fn skew_realization_rejects_planar_facets() {
    assert!(geomesh::realize_skew(&skeleton("3,5", "phi1"), &PlateauParams::default()).is_err());
    assert!(geomesh::realize(&skeleton("6,5:c", "phi1"), Family::Convex, &RealizeOptions::default()).is_err());
}

#[test]
fn icosahedron_is_its_hull() {
    let skel = skeleton("3,5", "phi1");
    let rp = geomesh::realize(&skel, Family::Convex, &RealizeOptions::default()).unwrap();
    assert_eq!(rp.triangle_count(), 20);
    let verts: Vec<[f64; 3]> = skel.vertices().iter().map(|v| v.to_f64()).collect();
    assert_eq!(verts.len(), 12);
    for f in &rp.facets {
        let t = f.mesh.triangles[0];
        let [a, b, c] = t.map(|i| f.mesh.vertices[i]);
        for p in [a, b, c] {
            assert!(verts.iter().any(|v| (0..3).all(|k| (v[k] - p[k]).abs() < 1e-12)));
        }
        let n = cross(sub(b, a), sub(c, a));
        let sides: Vec<f64> = verts.iter().map(|v| dot(n, sub(*v, a))).collect();
        let pos = sides.iter().filter(|s| **s > 1e-9).count();
        let neg = sides.iter().filter(|s| **s < -1e-9).count();
        assert!(pos == 0 || neg == 0);
        assert_eq!(pos + neg, 9);
    }
}

#[test]
fn facet_boundaries_match_skeleton() {
    for (class, rep) in [("5,5", "phi1"), ("5,3", "phi1"), ("3,5", "phi2")] {
        let skel = skeleton(class, rep);
        let rp = geomesh::realize_classical(&skel).unwrap();
        for (j, f) in rp.facets.iter().enumerate() {
            let exact = skel.facet_points(j);
            assert_eq!(exact.len(), f.boundary.len());
            for (e, b) in exact.iter().zip(&f.boundary) {
                let e = e.to_f64();
                assert!((0..3).all(|k| (e[k] - b[k]).abs() < 1e-9));
            }
            assert!(f.mesh.min_triangle_area() > 1e-12);
        }
    }
}

#[test]
fn obj_lists_every_facet() {
    let rp = geomesh::realize_classical(&skeleton("3,5", "phi1")).unwrap();
    let mut buf = Vec::new();
    geomesh::write_obj(&rp, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let vs: Vec<[f64; 3]> = text
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let x: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            [x[0], x[1], x[2]]
        })
        .collect();
    let expected: Vec<[f64; 3]> = rp.facets.iter().flat_map(|f| f.mesh.vertices.iter().map(|v| v.map(|x| x + 0.0))).collect();
    assert_eq!(vs, expected);
    assert_eq!(text.lines().filter(|l| l.starts_with("g facet_")).count(), 20);
    let faces: Vec<Vec<usize>> = text
        .lines()
        .filter_map(|l| l.strip_prefix("f "))
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(faces.len(), rp.triangle_count());
    assert!(faces.iter().flatten().all(|&i| i >= 1 && i <= vs.len()));
}

#[test]
fn spherical_edges_are_great_arcs() {
    let rp = geomesh::realize_spherical(&skeleton("5,5", "phi2"), &RealizeOptions::default()).unwrap();
    for arc in &rp.edges {
        let n = normalize(cross(arc[0], arc[arc.len() - 1]));
        for p in arc {
            assert!(dot(*p, n).abs() < 1e-12);
            assert!((dot(*p, *p) - 1.0).abs() < 1e-12);
        }
    }
    for f in &rp.facets {
        assert_eq!(f.kind, FacetKind::Spherical);
        assert!(f.mesh.vertices.iter().all(|v| (norm(*v) - 1.0).abs() < 1e-12));
    }
}


