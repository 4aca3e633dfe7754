//! Exact even-odd regions of closed planar polygons, triangulated.
//!
//! The polygon is mapped to exact plane coordinates by an affine frame, cut
//! into vertical slabs at every vertex and crossing abscissa, and inside
//! each slab the sides are ordered by height; alternate gaps between them
//! are inside. Each inside gap is a trapezoid.

use std::collections::BTreeSet;

use crate::exactnum::{QSqrt5, Vec3};

type P2 = [QSqrt5; 2];

/// Triangles covering the even-odd interior, and the number of connected
/// pieces of that interior.
#[derive(Clone, Debug)]
pub struct PlanarRegion {
    pub triangles: Vec<[Vec3; 3]>,
    pub components: usize,
    pub convex: bool,
}

struct Frame {
    origin: Vec3,
    u: Vec3,
    w: Vec3,
    inv_u: QSqrt5,
    inv_w: QSqrt5,
}

impl Frame {
    fn new(points: &[Vec3]) -> Frame {
        let origin = points[0].clone();
        let (u, n) = points[1..]
            .iter()
            .flat_map(|a| points[1..].iter().map(move |b| (a, b)))
            .find_map(|(a, b)| {
                let u = a - &origin;
                let n = u.cross(&(b - &origin));
                (!n.is_zero()).then_some((u, n))
            })
            .expect("points span a plane");
        let w = n.cross(&u);
        let inv_u = u.norm_sq().inv().expect("nonzero");
        let inv_w = w.norm_sq().inv().expect("nonzero");
        Frame { origin, u, w, inv_u, inv_w }
    }

    fn to_plane(&self, p: &Vec3) -> P2 {
        let d = p - &self.origin;
        [d.dot(&self.u), d.dot(&self.w)]
    }

    fn to_space(&self, p: &P2) -> Vec3 {
        let a = self.u.scale(&(&p[0] * &self.inv_u));
        let b = self.w.scale(&(&p[1] * &self.inv_w));
        &(&self.origin + &a) + &b
    }
}

fn cross2(o: &P2, a: &P2, b: &P2) -> QSqrt5 {
    &(&(&a[0] - &o[0]) * &(&b[1] - &o[1])) - &(&(&a[1] - &o[1]) * &(&b[0] - &o[0]))
}

/// Every turn has the same strict sign and no two sides cross; turning
/// alone would accept a pentagram.
fn is_convex(poly: &[P2]) -> bool {
    let n = poly.len();
    let signs: BTreeSet<i32> =
        (0..n).map(|k| cross2(&poly[k], &poly[(k + 1) % n], &poly[(k + 2) % n]).signum()).collect();
    signs.len() == 1
        && !signs.contains(&0)
        && !crate::geomesh::classify::polygon_self_crossing(&poly.iter().map(lift).collect::<Vec<_>>())
}

fn lift(p: &P2) -> Vec3 {
    Vec3::new(p[0].clone(), p[1].clone(), QSqrt5::zero())
}

/// Abscissa of proper or touching intersections of two segments.
fn crossing_x(a: &P2, b: &P2, c: &P2, d: &P2) -> Option<QSqrt5> {
    let den = &(&(&b[0] - &a[0]) * &(&d[1] - &c[1])) - &(&(&b[1] - &a[1]) * &(&d[0] - &c[0]));
    if den.is_zero() {
        return None;
    }
    let t = &(&(&(&c[0] - &a[0]) * &(&d[1] - &c[1])) - &(&(&c[1] - &a[1]) * &(&d[0] - &c[0]))) / &den;
    let s = &(&(&(&c[0] - &a[0]) * &(&b[1] - &a[1])) - &(&(&c[1] - &a[1]) * &(&b[0] - &a[0]))) / &den;
    let unit = |x: &QSqrt5| x.signum() >= 0 && *x <= QSqrt5::one();
    (unit(&t) && unit(&s)).then(|| &a[0] + &(&t * &(&b[0] - &a[0])))
}

struct Segment {
    lo: P2,
    hi: P2,
}

impl Segment {
    fn y_at(&self, x: &QSqrt5) -> QSqrt5 {
        let t = &(x - &self.lo[0]) / &(&self.hi[0] - &self.lo[0]);
        &self.lo[1] + &(&t * &(&self.hi[1] - &self.lo[1]))
    }
}

struct Trapezoid {
    slab: usize,
    bottom: [QSqrt5; 2],
    top: [QSqrt5; 2],
}

/// Even-odd interior of the closed polygon through `cycle`, which must
/// lie in a plane. Convex polygons are fanned from their first vertex.
pub fn planar_region(cycle: &[Vec3]) -> PlanarRegion {
    let frame = Frame::new(cycle);
    let poly: Vec<P2> = cycle.iter().map(|p| frame.to_plane(p)).collect();
    let n = poly.len();
    if is_convex(&poly) {
        let triangles = (1..n - 1).map(|k| [cycle[0].clone(), cycle[k].clone(), cycle[k + 1].clone()]).collect();
        return PlanarRegion { triangles, components: 1, convex: true };
    }

    let sides: Vec<(P2, P2)> = (0..n).map(|k| (poly[k].clone(), poly[(k + 1) % n].clone())).collect();
    let mut xs: BTreeSet<QSqrt5> = poly.iter().map(|p| p[0].clone()).collect();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(x) = crossing_x(&sides[i].0, &sides[i].1, &sides[j].0, &sides[j].1) {
                xs.insert(x);
            }
        }
    }
    let xs: Vec<QSqrt5> = xs.into_iter().collect();
    let segments: Vec<Segment> = sides
        .iter()
        .filter(|(a, b)| a[0] != b[0])
        .map(|(a, b)| if a[0] < b[0] { Segment { lo: a.clone(), hi: b.clone() } } else { Segment { lo: b.clone(), hi: a.clone() } })
        .collect();

    let half = QSqrt5::from_ratios(1, 2, 0, 1);
    let mut traps: Vec<Trapezoid> = Vec::new();
    for slab in 0..xs.len().saturating_sub(1) {
        let (x0, x1) = (&xs[slab], &xs[slab + 1]);
        let mid = &(x0 + x1) * &half;
        let mut active: Vec<(QSqrt5, &Segment)> = segments
            .iter()
            .filter(|s| s.lo[0] <= *x0 && s.hi[0] >= *x1)
            .map(|s| (s.y_at(&mid), s))
            .collect();
        active.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in active.chunks_exact(2) {
            let (lower, upper) = (pair[0].1, pair[1].1);
            traps.push(Trapezoid {
                slab,
                bottom: [lower.y_at(x0), lower.y_at(x1)],
                top: [upper.y_at(x0), upper.y_at(x1)],
            });
        }
    }

    // Corner heights on each vertical line, to avoid T-junctions.
    let mut on_line: Vec<BTreeSet<QSqrt5>> = vec![BTreeSet::new(); xs.len()];
    for t in &traps {
        for side in 0..2 {
            on_line[t.slab + side].insert(t.bottom[side].clone());
            on_line[t.slab + side].insert(t.top[side].clone());
        }
    }

    let mut triangles = Vec::new();
    for t in &traps {
        let (x0, x1) = (&xs[t.slab], &xs[t.slab + 1]);
        let between = |line: usize, lo: &QSqrt5, hi: &QSqrt5| -> Vec<QSqrt5> {
            on_line[line].range(lo.clone()..=hi.clone()).cloned().collect()
        };
        // Counter-clockwise: bottom side, up the right, back along the top,
        // down the left.
        let mut ring: Vec<P2> = Vec::new();
        for y in between(t.slab + 1, &t.bottom[1], &t.top[1]) {
            ring.push([x1.clone(), y]);
        }
        for y in between(t.slab, &t.bottom[0], &t.top[0]).into_iter().rev() {
            ring.push([x0.clone(), y]);
        }
        if ring.len() < 3 {
            continue;
        }
        let space: Vec<Vec3> = ring.iter().map(|p| frame.to_space(p)).collect();
        if ring.len() == 3 {
            triangles.push([space[0].clone(), space[1].clone(), space[2].clone()]);
            continue;
        }
        let k = QSqrt5::from_ratios(1, ring.len() as i64, 0, 1);
        let centre = [
            &ring.iter().fold(QSqrt5::zero(), |acc, p| &acc + &p[0]) * &k,
            &ring.iter().fold(QSqrt5::zero(), |acc, p| &acc + &p[1]) * &k,
        ];
        let c = frame.to_space(&centre);
        for i in 0..space.len() {
            triangles.push([c.clone(), space[i].clone(), space[(i + 1) % space.len()].clone()]);
        }
    }

    let components = count_components(&traps);
    PlanarRegion { triangles, components, convex: false }
}

/// Trapezoids in neighbouring slabs are joined when their shared vertical
/// sides overlap in more than a point.
fn count_components(traps: &[Trapezoid]) -> usize {
    let mut parent: Vec<usize> = (0..traps.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..traps.len() {
        for j in 0..traps.len() {
            let (a, b) = (&traps[i], &traps[j]);
            if b.slab != a.slab + 1 {
                continue;
            }
            let lo = a.bottom[1].clone().max(b.bottom[0].clone());
            let hi = a.top[1].clone().min(b.top[0].clone());
            if lo < hi {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..traps.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vec3 {
        Vec3::new(x.into(), y.into(), QSqrt5::from_int(3))
    }

    fn area2(t: &[Vec3; 3]) -> f64 {
        let [a, b, c] = t.each_ref().map(|p| p.to_f64());
        let u = [b[0] - a[0], b[1] - a[1]];
        let w = [c[0] - a[0], c[1] - a[1]];
        (u[0] * w[1] - u[1] * w[0]).abs() / 2.0
    }

    #[test]
    fn square_is_fanned() {
        let r = planar_region(&[v(0, 0), v(2, 0), v(2, 2), v(0, 2)]);
        assert!(r.convex);
        assert_eq!(r.triangles.len(), 2);
        assert_eq!(r.components, 1);
    }

    #[test]
    fn bowtie_has_two_lobes() {
        let r = planar_region(&[v(0, 0), v(2, 2), v(2, 0), v(0, 2)]);
        assert!(!r.convex);
        assert_eq!(r.components, 2);
        let area: f64 = r.triangles.iter().map(area2).sum();
        assert!((area - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_convex_simple_polygon() {
        // An L shape of area 3.
        let r = planar_region(&[v(0, 0), v(2, 0), v(2, 1), v(1, 1), v(1, 2), v(0, 2)]);
        assert!(!r.convex);
        assert_eq!(r.components, 1);
        let area: f64 = r.triangles.iter().map(area2).sum();
        assert!((area - 3.0).abs() < 1e-12);
    }
}
