//! Orthogonal representations of H3, Wythoff spaces, and the exact skeleton
//! (vertices, edges, facet cycles) of a symmetric realization.
//!
//! Points are row vectors and group elements act on the right:
//! `x · φ(γ)`. A word's matrix is the product of its letters' matrices in
//! word order, so `x · φ(ab) = (x · φ(a)) · φ(b)`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::cgroups::StringCGroup;
use crate::error::{Error, Result};
use crate::exactnum::{null_space, Mat3, QSqrt5, Vec3};
use crate::groups::{ElementId, FiniteGroup};
use crate::polytope::{AbstractPolyhedron, Face};

/// Images of the generators of a group under an orthogonal representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    name: String,
    generators: Vec<Mat3>,
}

impl Representation {
    pub fn new(name: impl Into<String>, generators: Vec<Mat3>) -> Representation {
        Representation { name: name.into(), generators }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_images(&self) -> &[Mat3] {
        &self.generators
    }

    /// Images of every element of `group`, indexed by element id.
    pub fn element_images(&self, group: &FiniteGroup) -> Result<Vec<Mat3>> {
        let images = group.homomorphism_images(&self.generators)?;
        if let Some(k) = images.iter().position(|m| !m.is_orthogonal()) {
            return Err(Error::NotAHomomorphism(format!("image of element {k} is not orthogonal")));
        }
        Ok(images)
    }

    pub fn is_faithful(&self, group: &FiniteGroup) -> Result<bool> {
        let images = self.element_images(group)?;
        Ok(images.iter().collect::<HashSet<_>>().len() == group.order())
    }
}

fn half(a: QSqrt5) -> QSqrt5 {
    &a * &QSqrt5::from_ratios(1, 2, 0, 1)
}

/// The two irreducible 3-dimensional representations of H3, `phi1` and
/// `phi2`, which differ by the Galois swap `τ ↔ σ`.
pub fn builtin_representation(name: &str) -> Result<Representation> {
    let (a, b) = match name {
        "phi1" => (QSqrt5::tau(), QSqrt5::sigma()),
        "phi2" => (QSqrt5::sigma(), QSqrt5::tau()),
        _ => return Err(Error::UnknownRepresentation(name.to_string())),
    };
    let one = QSqrt5::one;
    let s0 = Mat3::diag(QSqrt5::from_int(-1), one(), one());
    let s1 = Mat3::from_rows([
        [half(one()), half(-&a), half(-&b)],
        [half(-&a), half(b.clone()), half(one())],
        [half(-&b), half(one()), half(a.clone())],
    ]);
    let s2 = Mat3::diag(one(), QSqrt5::from_int(-1), one());
    Ok(Representation::new(name, vec![s0, s1, s2]))
}

pub const BUILTIN_REPRESENTATIONS: [&str; 2] = ["phi1", "phi2"];

/// `(1/2q) Σ_{γ ∈ ⟨t1,t2⟩} Tr φ(γ)`.
pub fn wythoff_dimension(rep: &Representation, s: &StringCGroup) -> Result<usize> {
    let images = rep.element_images(s.group())?;
    let (_, q) = s.schlafli();
    let stab = s.face_stabilizer(0);
    let total = stab.elements().iter().fold(QSqrt5::zero(), |acc, g| &acc + &images[g.0].trace());
    let dim = &total * &QSqrt5::from_ratios(1, 2 * q as i64, 0, 1);
    let r = dim.rational_part();
    if !dim.is_rational() || !r.is_integer() || r < &num_rational::BigRational::from_integer(0.into()) {
        return Err(Error::Invariant(format!("trace formula gave non-integral dimension {dim}")));
    }
    Ok(r.to_integer().try_into().expect("dimension fits in usize"))
}

/// Exact basis of the points fixed by `φ(t1)` and `φ(t2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WythoffSpace {
    pub basis: Vec<Vec3>,
}

impl WythoffSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The first basis vector, scaled so its first nonzero coordinate is 1.
    pub fn default_base_point(&self) -> Option<Vec3> {
        self.basis.first().cloned()
    }
}

/// Common fixed space of a set of matrices under the right action.
pub fn fixed_space(matrices: &[Mat3]) -> WythoffSpace {
    // x · M = x  ⇔  (Mᵀ − I) x = 0.
    let rows: Vec<Vec3> = matrices
        .iter()
        .flat_map(|m| {
            let d = m.transpose().sub(&Mat3::identity());
            d.0.into_iter().map(Vec3)
        })
        .collect();
    if rows.is_empty() {
        let e = |k: usize| {
            let mut v = Vec3::zero();
            v.0[k] = QSqrt5::one();
            v
        };
        return WythoffSpace { basis: vec![e(0), e(1), e(2)] };
    }
    WythoffSpace { basis: null_space(&rows) }
}

pub fn wythoff_space(rep: &Representation, s: &StringCGroup) -> Result<WythoffSpace> {
    let images = rep.element_images(s.group())?;
    Ok(fixed_space(&[images[s.t(1).0].clone(), images[s.t(2).0].clone()]))
}

/// 0-based indices of the `(i−1)`-faces incident to the base `i`-face.
pub fn incident_lower_faces(poly: &AbstractPolyhedron, i: i32) -> Vec<usize> {
    assert!((1..=3).contains(&i), "rank must be 1, 2 or 3");
    let mut out: Vec<usize> = poly.poset().covers_below(Face::new(i, 0)).iter().map(|f| f.index).collect();
    out.sort_unstable();
    out
}

/// A facet boundary: `vertices[k]` and `vertices[k+1]` (cyclically) are the
/// endpoints of `edges[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl FacetCycle {
    fn reversed(&self) -> FacetCycle {
        let n = self.edges.len();
        FacetCycle {
            vertices: (0..n).map(|k| self.vertices[(n - k) % n]).collect(),
            edges: (0..n).map(|k| self.edges[n - 1 - k]).collect(),
        }
    }

    fn rotated(&self, start: usize) -> FacetCycle {
        let n = self.edges.len();
        FacetCycle {
            vertices: (0..n).map(|k| self.vertices[(start + k) % n]).collect(),
            edges: (0..n).map(|k| self.edges[(start + k) % n]).collect(),
        }
    }

    /// Starts at the lowest edge index and runs toward the lower of its
    /// two neighbouring edges.
    fn canonical(&self) -> FacetCycle {
        let n = self.edges.len();
        let start = |c: &FacetCycle| (0..n).min_by_key(|&k| c.edges[k]).expect("non-empty cycle");
        let fwd = self.rotated(start(self));
        let rev = self.reversed();
        let rev = rev.rotated(start(&rev));
        if n > 1 && rev.edges[1] < fwd.edges[1] {
            rev
        } else {
            fwd
        }
    }
}

/// Exact vertices, edges and facet cycles of a realization.
#[derive(Clone, Debug)]
pub struct RealizationSkeleton {
    poly: AbstractPolyhedron,
    representation: Representation,
    images: Vec<Mat3>,
    base: Vec3,
    vertices: Vec<Vec3>,
    edges: Vec<[usize; 2]>,
    facets: Vec<FacetCycle>,
}

pub fn build_skeleton(poly: &AbstractPolyhedron, rep: &Representation, base: &Vec3) -> Result<RealizationSkeleton> {
    let s = poly.source();
    let group = s.group();
    let images = rep.element_images(group)?;
    if base.is_zero() {
        return Err(Error::BadBasePoint);
    }
    let space = fixed_space(&[images[s.t(1).0].clone(), images[s.t(2).0].clone()]);
    if space.dimension() == 0 {
        return Err(Error::EmptyWythoffSpace);
    }
    if [s.t(1), s.t(2)].iter().any(|t| &base.mul_mat(&images[t.0]) != base) {
        return Err(Error::BadBasePoint);
    }

    let p = poly.poset();
    let vertices: Vec<Vec3> = (0..p.count(0))
        .map(|j| base.mul_mat(&images[poly.representative(Face::new(0, j)).0]))
        .collect();
    let mut seen: HashMap<&Vec3, usize> = HashMap::new();
    for (j, v) in vertices.iter().enumerate() {
        if let Some(&i) = seen.get(v) {
            return Err(Error::CoincidentVertices(i, j));
        }
        seen.insert(v, j);
    }

    let base_edge = [poly.flag_of(group.identity())[0], poly.flag_of(s.t(0))[0]];
    let edges = (0..p.count(1))
        .map(|j| {
            let g = poly.representative(Face::new(1, j));
            base_edge.map(|v| poly.act(v, g).index)
        })
        .collect();

    let base_cycle = walk_base_facet(poly);
    let facets = (0..p.count(2))
        .map(|j| {
            let g = poly.representative(Face::new(2, j));
            FacetCycle {
                vertices: base_cycle.vertices.iter().map(|&v| poly.act(Face::new(0, v), g).index).collect(),
                edges: base_cycle.edges.iter().map(|&e| poly.act(Face::new(1, e), g).index).collect(),
            }
            .canonical()
        })
        .collect();

    Ok(RealizationSkeleton {
        poly: poly.clone(),
        representation: rep.clone(),
        images,
        base: base.clone(),
        vertices,
        edges,
        facets,
    })
}

/// Boundary of the base facet, walked by alternating `t0` (next vertex
/// on the same edge) and `t1` (next edge through the same vertex).
fn walk_base_facet(poly: &AbstractPolyhedron) -> FacetCycle {
    let s = poly.source();
    let group = s.group();
    let (t0, t1) = (s.t(0), s.t(1));
    let mut g = group.identity();
    let mut cycle = FacetCycle { vertices: Vec::new(), edges: Vec::new() };
    loop {
        let [v, e, _] = poly.flag_of(g);
        cycle.vertices.push(v.index);
        cycle.edges.push(e.index);
        g = group.mul(t1, group.mul(t0, g));
        if g == group.identity() || poly.flag_of(g)[..2] == poly.flag_of(group.identity())[..2] {
            break;
        }
    }
    cycle
}

impl RealizationSkeleton {
    pub fn polyhedron(&self) -> &AbstractPolyhedron {
        &self.poly
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn base_point(&self) -> &Vec3 {
        &self.base
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn facets(&self) -> &[FacetCycle] {
        &self.facets
    }

    /// `φ(γ)` for a group element.
    pub fn matrix(&self, g: ElementId) -> &Mat3 {
        &self.images[g.0]
    }

    /// `φ(γ_{2,j})`, which carries the base facet onto facet `j`.
    pub fn facet_matrix(&self, j: usize) -> &Mat3 {
        self.matrix(self.poly.representative(Face::new(2, j)))
    }

    pub fn facet_points(&self, j: usize) -> Vec<Vec3> {
        self.facets[j].vertices.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Cell facet indices; a polyhedron has a single cell containing all.
    pub fn cell(&self) -> Vec<usize> {
        (0..self.facets.len()).collect()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.facets.len())
    }

    fn vertex_index(&self) -> HashMap<&Vec3, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect()
    }

    /// Equivariance under every generator `t_k`: realizing `F · t_k`
    /// agrees with transforming the realization of `F` by `φ(t_k)`.
    /// Returns the first disagreement found.
    pub fn check_symmetry(&self) -> std::result::Result<(), String> {
        let s = self.poly.source();
        let index = self.vertex_index();
        for k in 0..3 {
            let t = s.t(k);
            let m = self.matrix(t);
            let mut vmap = vec![0; self.vertices.len()];
            for (j, v) in self.vertices.iter().enumerate() {
                let moved = self.poly.act(Face::new(0, j), t).index;
                let image = v.mul_mat(m);
                if self.vertices[moved] != image {
                    return Err(format!("vertex {j} under t{k}"));
                }
                vmap[j] = index[&image];
            }
            for (j, e) in self.edges.iter().enumerate() {
                let moved = self.edges[self.poly.act(Face::new(1, j), t).index];
                let mut a = e.map(|v| vmap[v]);
                let mut b = moved;
                a.sort();
                b.sort();
                if a != b {
                    return Err(format!("edge {j} under t{k}"));
                }
            }
            for (j, f) in self.facets.iter().enumerate() {
                let moved = &self.facets[self.poly.act(Face::new(2, j), t).index];
                let mut a: Vec<usize> = f.vertices.iter().map(|&v| vmap[v]).collect();
                let mut b = moved.vertices.clone();
                a.sort();
                b.sort();
                if a != b {
                    return Err(format!("facet {j} under t{k}"));
                }
            }
        }
        // Every face is the base face moved by its representative.
        for (j, v) in self.vertices.iter().enumerate() {
            if *v != self.base.mul_mat(self.matrix(self.poly.representative(Face::new(0, j)))) {
                return Err(format!("vertex {j} is not the image of the base vertex"));
            }
        }
        Ok(())
    }

    /// Set stabilizers in `G` of the base vertex, base edge and base facet,
    /// each compared with `φ(Γ_i)`.
    pub fn check_stabilizers(&self) -> std::result::Result<(), String> {
        let s = self.poly.source();
        let group = s.group();
        let index = self.vertex_index();
        let edge_index: HashMap<[usize; 2], usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let mut k = *e;
                k.sort();
                (k, j)
            })
            .collect();
        let base_edges: HashSet<usize> = self.facets[0].edges.iter().copied().collect();
        for i in 0..3 {
            let expected = s.face_stabilizer(i);
            for g in group.ids() {
                let m = self.matrix(g);
                let vmap = |v: usize| index.get(&self.vertices[v].mul_mat(m)).copied();
                let fixes = match i {
                    0 => vmap(0) == Some(0),
                    1 => {
                        let mut a = self.edges[0].map(|v| vmap(v).unwrap_or(usize::MAX));
                        let mut b = self.edges[0];
                        a.sort();
                        b.sort();
                        a == b
                    }
                    _ => base_edges.iter().all(|&e| {
                        let mut a = self.edges[e].map(|v| vmap(v).unwrap_or(usize::MAX));
                        a.sort();
                        edge_index.get(&a).is_some_and(|x| base_edges.contains(x))
                    }),
                };
                if fixes != expected.contains(g) {
                    return Err(format!("stabilizer of the base {}-face differs at {}", i, group.word_string(g)));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_norms_equal(&self) -> bool {
        let n0 = self.vertices[0].norm_sq();
        self.vertices.iter().all(|v| v.norm_sq() == n0)
    }

    pub fn edge_lengths_equal(&self) -> bool {
        let len = |e: &[usize; 2]| (&self.vertices[e[0]] - &self.vertices[e[1]]).norm_sq();
        let l0 = len(&self.edges[0]);
        self.edges.iter().all(|e| len(e) == l0)
    }

    pub fn to_json(&self, name: &str) -> SkeletonJson {
        let (p, q) = self.poly.source().schlafli();
        let point = |v: &Vec3| PointJson {
            exact: v.0.clone().map(|c| c.to_quadruple().map(|n| n.to_string())),
            float: v.to_f64(),
        };
        SkeletonJson {
            name: name.to_string(),
            representation: self.representation.name.clone(),
            schlafli: [p, q],
            counts: {
                let (v, e, f) = self.counts();
                [v, e, f]
            },
            base_point: point(&self.base),
            vertices: self.vertices.iter().map(point).collect(),
            edges: self.edges.clone(),
            facets: self.facets.clone(),
            cell: self.cell(),
        }
    }
}

/// Exact coordinates are `[a_num, a_den, b_num, b_den]` per axis for
/// `a + b√5`, as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub exact: [[String; 4]; 3],
    pub float: [f64; 3],
}

/// Indices in `edges`, `facets` and `cell` are 0-based positions in the
/// `vertices`, `edges` and `facets` arrays.
#[derive(Clone, Debug, Serialize)]
pub struct SkeletonJson {
    pub name: String,
    pub representation: String,
    pub schlafli: [usize; 2],
    pub counts: [usize; 3],
    pub base_point: PointJson,
    pub vertices: Vec<PointJson>,
    pub edges: Vec<[usize; 2]>,
    pub facets: Vec<FacetCycle>,
    pub cell: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgroups::{check_string_cgroup, GeneratorTriple};
    use crate::h3;
    use crate::polytope::build_polyhedron;

    fn q(s: &str) -> QSqrt5 {
        s.parse().unwrap()
    }

    fn cgroup(words: [&str; 3]) -> StringCGroup {
        let g = h3::group();
        let t = GeneratorTriple(words.map(|w| g.parse_word(w).unwrap()));
        check_string_cgroup(&g, t).unwrap()
    }

    #[test]
    fn builtin_matrices() {
        let phi2 = builtin_representation("phi2").unwrap();
        let g = phi2.generator_images();
        assert_eq!(g[0], Mat3::diag(q("-1"), q("1"), q("1")));
        for m in g {
            assert!(m.mul(m).is_identity());
            assert!(m.is_orthogonal());
        }
        assert!(matches!(builtin_representation("phi3"), Err(Error::UnknownRepresentation(_))));
        for name in BUILTIN_REPRESENTATIONS {
            let rep = builtin_representation(name).unwrap();
            assert_eq!(crate::groups::generate_group(rep.generator_images()).unwrap().order(), 120);
            assert!(rep.is_faithful(&h3::group()).unwrap());
        }
    }

    #[test]
    fn dimension_examples() {
        let phi1 = builtin_representation("phi1").unwrap();
        let phi2 = builtin_representation("phi2").unwrap();
        assert_eq!(wythoff_dimension(&phi1, &cgroup(["s0", "s1", "s2"])).unwrap(), 1);
        assert_eq!(wythoff_dimension(&phi1, &cgroup(["s0", "s1", "s0s2"])).unwrap(), 0);
        let dodeca = cgroup(["s2", "s1", "s0"]);
        assert_eq!(wythoff_dimension(&phi2, &dodeca).unwrap(), 1);
        assert_eq!(wythoff_space(&phi2, &dodeca).unwrap().dimension(), 1);
    }

    #[test]
    fn worked_pentagram() {
        let phi2 = builtin_representation("phi2").unwrap();
        let s = cgroup(["s2", "s1", "s0"]);
        let space = wythoff_space(&phi2, &s).unwrap();
        let expected = Vec3::new(q("0"), q("1"), &q("1") + &QSqrt5::sigma());
        assert_eq!(space.basis, vec![expected.clone()]);

        let poly = build_polyhedron(&s);
        assert_eq!(incident_lower_faces(&poly, 1), vec![0, 1]);
        assert_eq!(incident_lower_faces(&poly, 2).len(), 5);
        assert_eq!(incident_lower_faces(&poly, 3).len(), 12);

        let sk = build_skeleton(&poly, &phi2, &expected).unwrap();
        let [a, b] = sk.edges()[0];
        assert_eq!(sk.vertices()[a], expected);
        assert_eq!(sk.vertices()[b], Vec3::new(q("0"), q("-1"), &q("1") + &QSqrt5::sigma()));
        let sigma = QSqrt5::sigma();
        let base = sk.facet_points(0);
        for want in [
            Vec3::new(sigma.clone(), -&sigma, sigma.clone()),
            Vec3::new(&q("1") + &sigma, q("0"), q("1")),
            Vec3::new(sigma.clone(), sigma.clone(), sigma.clone()),
        ] {
            assert!(base.contains(&want), "{want:?}");
        }
        assert!(sk.check_symmetry().is_ok());
        assert!(sk.check_stabilizers().is_ok());
    }

    #[test]
    fn icosahedron_skeleton() {
        let phi1 = builtin_representation("phi1").unwrap();
        let s = cgroup(["s0", "s1", "s2"]);
        let poly = build_polyhedron(&s);
        let base = wythoff_space(&phi1, &s).unwrap().default_base_point().unwrap();
        let sk = build_skeleton(&poly, &phi1, &base).unwrap();
        assert_eq!(sk.counts(), (12, 30, 20));
        assert!(sk.facets().iter().all(|f| f.vertices.len() == 3));
        assert!(sk.vertex_norms_equal() && sk.edge_lengths_equal());
        // Consecutive cycle vertices are the endpoints of the cycle edges.
        for f in sk.facets() {
            let n = f.edges.len();
            for k in 0..n {
                let mut e = sk.edges()[f.edges[k]];
                let mut want = [f.vertices[k], f.vertices[(k + 1) % n]];
                e.sort();
                want.sort();
                assert_eq!(e, want);
            }
        }

        let doubled = build_skeleton(&poly, &phi1, &base.scale(&q("2"))).unwrap();
        for (a, b) in sk.vertices().iter().zip(doubled.vertices()) {
            assert_eq!(a.scale(&q("2")), *b);
        }
        assert_eq!(doubled.facets(), sk.facets());
    }

    #[test]
    fn skeleton_errors() {
        let phi1 = builtin_representation("phi1").unwrap();
        let poly = build_polyhedron(&cgroup(["s0", "s1", "s2"]));
        assert!(matches!(build_skeleton(&poly, &phi1, &Vec3::zero()), Err(Error::BadBasePoint)));
        let off = Vec3::new(q("1"), q("2"), q("3"));
        assert!(matches!(build_skeleton(&poly, &phi1, &off), Err(Error::BadBasePoint)));
        let flat = build_polyhedron(&cgroup(["s0", "s1", "s0s2"]));
        assert!(matches!(build_skeleton(&flat, &phi1, &off), Err(Error::EmptyWythoffSpace)));
    }

    #[test]
    fn identity_constraints_fix_everything() {
        assert_eq!(fixed_space(&[Mat3::identity(), Mat3::identity()]).dimension(), 3);
        assert_eq!(fixed_space(&[]).dimension(), 3);
    }
}
