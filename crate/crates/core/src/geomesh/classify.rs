//! Exact coplanarity and intersection predicates, and the family
//! recommendation built on them.

use serde::Serialize;

use super::Family;
use crate::exactnum::{rank, QSqrt5, Vec3};
use crate::exec::{self, Execution};
use crate::wythoff::RealizationSkeleton;

/// All vertices of a point list lie on one plane.
pub fn points_coplanar(points: &[Vec3]) -> bool {
    let Some(o) = points.first() else { return true };
    let diffs: Vec<Vec3> = points[1..].iter().map(|p| p - o).collect();
    rank(&diffs) <= 2
}

pub fn facet_coplanar(skel: &RealizationSkeleton, j: usize) -> bool {
    points_coplanar(&skel.facet_points(j))
}

fn sign(x: &QSqrt5) -> i32 {
    x.signum()
}

/// `p` lies on the closed segment `[a, b]`, given that it is collinear
/// with it.
fn on_collinear_segment(a: &Vec3, b: &Vec3, p: &Vec3) -> bool {
    let d = b - a;
    let t = (p - a).dot(&d);
    t.signum() >= 0 && t <= d.norm_sq()
}

/// Whether closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: &Vec3, b: &Vec3, c: &Vec3, d: &Vec3) -> bool {
    let ab = b - a;
    if !ab.cross(&(c - a)).dot(&(d - a)).is_zero() {
        return false;
    }
    let normal = [ab.cross(&(c - a)), ab.cross(&(d - a)), (d - c).cross(&(a - c))]
        .into_iter()
        .find(|n| !n.is_zero());
    let Some(n) = normal else {
        // All four points on one line.
        return on_collinear_segment(a, b, c)
            || on_collinear_segment(a, b, d)
            || on_collinear_segment(c, d, a)
            || on_collinear_segment(c, d, b);
    };
    let orient = |p: &Vec3, q: &Vec3, r: &Vec3| sign(&(q - p).cross(&(r - p)).dot(&n));
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_collinear_segment(a, b, c))
        || (o2 == 0 && on_collinear_segment(a, b, d))
        || (o3 == 0 && on_collinear_segment(c, d, a))
        || (o4 == 0 && on_collinear_segment(c, d, b))
}

/// Pairs of edges without a common vertex that meet.
pub fn crossing_edge_pairs(skel: &RealizationSkeleton, mode: Execution) -> Vec<(usize, usize)> {
    let edges = skel.edges();
    let v = skel.vertices();
    let pairs: Vec<(usize, usize)> = (0..edges.len())
        .flat_map(|i| (i + 1..edges.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| edges[i].iter().all(|x| !edges[j].contains(x)))
        .collect();
    exec::filter_map_collect(mode, &pairs, |&(i, j)| {
        let ([a, b], [c, d]) = (edges[i], edges[j]);
        segments_intersect(&v[a], &v[b], &v[c], &v[d]).then_some((i, j))
    })
}

/// Whether a closed polygon crosses itself (non-adjacent sides meet).
pub fn polygon_self_crossing(cycle: &[Vec3]) -> bool {
    let n = cycle.len();
    (0..n).any(|i| {
        (i + 1..n).any(|j| {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            !adjacent && segments_intersect(&cycle[i], &cycle[(i + 1) % n], &cycle[j], &cycle[(j + 1) % n])
        })
    })
}

/// Open interval of line parameters, `None` bounds meaning unbounded.
#[derive(Clone, Debug)]
struct Interval {
    lo: Option<QSqrt5>,
    hi: Option<QSqrt5>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(l), Some(h)) if l >= h)
    }

    fn meet(&self, other: &Interval) -> Interval {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        Interval { lo, hi }
    }
}

fn polygon_normal(poly: &[Vec3]) -> Vec3 {
    let o = &poly[0];
    (1..poly.len() - 1)
        .map(|k| (&poly[k] - o).cross(&(&poly[k + 1] - o)))
        .find(|n| !n.is_zero())
        .expect("polygon spans a plane")
}

/// Orientation sign of a convex polygon with respect to `n`.
fn convex_orientation(poly: &[Vec3], n: &Vec3) -> i32 {
    let o = &poly[0];
    (1..poly.len() - 1)
        .map(|k| sign(&(&poly[k] - o).cross(&(&poly[k + 1] - o)).dot(n)))
        .find(|&s| s != 0)
        .expect("non-degenerate polygon")
}

/// Parameters `t` with `p + t·d` in the open interior of a convex polygon.
fn chord(poly: &[Vec3], n: &Vec3, p: &Vec3, d: &Vec3) -> Interval {
    let s = convex_orientation(poly, n);
    let mut out = Interval { lo: None, hi: None };
    for k in 0..poly.len() {
        let (u, v) = (&poly[k], &poly[(k + 1) % poly.len()]);
        let side = (v - u).cross(&(p - u)).dot(n);
        let slope = (v - u).cross(d).dot(n);
        let (side, slope) = if s > 0 { (side, slope) } else { (-side, -slope) };
        // Need side + t·slope > 0.
        if slope.is_zero() {
            if side.signum() <= 0 {
                return Interval { lo: Some(QSqrt5::zero()), hi: Some(QSqrt5::zero()) };
            }
            continue;
        }
        let root = &(-&side) / &slope;
        let bound = if slope.signum() > 0 {
            Interval { lo: Some(root), hi: None }
        } else {
            Interval { lo: None, hi: Some(root) }
        };
        out = out.meet(&bound);
    }
    out
}

/// Whether the open interiors of two convex planar polygons meet.
pub fn convex_polygons_overlap(a: &[Vec3], b: &[Vec3]) -> bool {
    let (na, nb) = (polygon_normal(a), polygon_normal(b));
    let d = na.cross(&nb);
    let (ca, cb) = (na.dot(&a[0]), nb.dot(&b[0]));
    if d.is_zero() {
        if !(&nb.dot(&a[0]) - &cb).is_zero() {
            return false;
        }
        return !separated(a, b, &na) && !separated(b, a, &na);
    }
    let (aa, bb, ab) = (na.norm_sq(), nb.norm_sq(), na.dot(&nb));
    let p = &na.scale(&(&(&ca * &bb) - &(&cb * &ab))) + &nb.scale(&(&(&cb * &aa) - &(&ca * &ab)));
    let p = p.scale(&d.norm_sq().inv().expect("planes not parallel"));
    !chord(a, &na, &p, &d).meet(&chord(b, &nb, &p, &d)).is_empty()
}

/// Some side of coplanar convex `a` has all of `b` weakly outside.
fn separated(a: &[Vec3], b: &[Vec3], n: &Vec3) -> bool {
    let s = convex_orientation(a, n);
    (0..a.len()).any(|k| {
        let (u, v) = (&a[k], &a[(k + 1) % a.len()]);
        b.iter().all(|x| s * sign(&(v - u).cross(&(x - u)).dot(n)) <= 0)
    })
}

/// Pairs of facets whose open regions meet, for facets bounded by simple
/// convex polygons.
pub fn crossing_facet_pairs(skel: &RealizationSkeleton, mode: Execution) -> Vec<(usize, usize)> {
    let polys: Vec<Vec<Vec3>> = (0..skel.facets().len()).map(|j| skel.facet_points(j)).collect();
    let pairs: Vec<(usize, usize)> =
        (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
    exec::filter_map_collect(mode, &pairs, |&(i, j)| convex_polygons_overlap(&polys[i], &polys[j]).then_some((i, j)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub coplanar: Vec<bool>,
    pub crossing_edges: usize,
    pub crossing_facets: usize,
    pub self_crossing_facets: bool,
    pub family: Family,
}

pub fn classify_family(skel: &RealizationSkeleton) -> Classification {
    classify_family_with(skel, Execution::default())
}

/// Skew if a facet is not planar; otherwise star if edges or facets cross;
/// otherwise convex. Facet crossings are only examined when every facet is
/// a simple polygon, so its region is its convex hull.
pub fn classify_family_with(skel: &RealizationSkeleton, mode: Execution) -> Classification {
    let ids: Vec<usize> = (0..skel.facets().len()).collect();
    let coplanar = exec::map_collect(mode, &ids, |&j| facet_coplanar(skel, j));
    if coplanar.iter().any(|c| !c) {
        return Classification {
            coplanar,
            crossing_edges: 0,
            crossing_facets: 0,
            self_crossing_facets: false,
            family: Family::Skew,
        };
    }
    let crossing_edges = crossing_edge_pairs(skel, mode).len();
    let self_crossing_facets = polygon_self_crossing(&skel.facet_points(0));
    let crossing_facets = if self_crossing_facets { 0 } else { crossing_facet_pairs(skel, mode).len() };
    let family = if crossing_edges > 0 || crossing_facets > 0 { Family::Star } else { Family::Convex };
    Classification { coplanar, crossing_edges, crossing_facets, self_crossing_facets, family }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::new(x.into(), y.into(), z.into())
    }

    #[test]
    fn segment_cases() {
        assert!(segments_intersect(&v(0, 0, 0), &v(2, 2, 0), &v(0, 2, 0), &v(2, 0, 0)));
        assert!(!segments_intersect(&v(0, 0, 0), &v(2, 2, 0), &v(0, 2, 1), &v(2, 0, 1)));
        assert!(!segments_intersect(&v(0, 0, 0), &v(1, 0, 0), &v(2, 0, 0), &v(3, 0, 0)));
        assert!(segments_intersect(&v(0, 0, 0), &v(2, 0, 0), &v(1, 0, 0), &v(3, 0, 0)));
        // T-junction: endpoint of one in the interior of the other.
        assert!(segments_intersect(&v(0, 0, 0), &v(2, 0, 0), &v(1, 0, 0), &v(1, 5, 0)));
        assert!(!segments_intersect(&v(0, 0, 0), &v(2, 0, 0), &v(3, -1, 0), &v(3, 5, 0)));
    }

    #[test]
    fn triangle_is_coplanar() {
        assert!(points_coplanar(&[v(1, 2, 3), v(-4, 0, 7), v(5, 5, -1)]));
        assert!(!points_coplanar(&[v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)]));
    }

    #[test]
    fn convex_overlap() {
        let square = [v(0, 0, 0), v(2, 0, 0), v(2, 2, 0), v(0, 2, 0)];
        let through = [v(1, 1, -1), v(1, 1, 1), v(1, 3, 1), v(1, 3, -1)];
        let touching = [v(2, 0, -1), v(2, 0, 1), v(2, 2, 1), v(2, 2, -1)];
        let shifted = [v(1, 1, 0), v(3, 1, 0), v(3, 3, 0), v(1, 3, 0)];
        let beside = [v(2, 0, 0), v(4, 0, 0), v(4, 2, 0), v(2, 2, 0)];
        assert!(convex_polygons_overlap(&square, &through));
        assert!(!convex_polygons_overlap(&square, &touching));
        assert!(convex_polygons_overlap(&square, &shifted));
        assert!(!convex_polygons_overlap(&square, &beside));
    }
}
