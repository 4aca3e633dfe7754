//! Discrete Plateau problem: a triangulated disk spanning a fixed closed
//! polygon, relaxed toward a local area minimum.
//!
//! The disk starts as the polygon fanned from its centroid and is refined
//! coarse to fine, relaxing at every level. Each interior vertex in turn
//! moves along its normal by `step` times the minimizer of the cotangent
//! Dirichlet energy on that line, with weights from the current 1-ring. That
//! energy bounds the 1-ring area from above and equals it at the current
//! position, so no move ever increases area. Restricting moves to the normal
//! keeps triangles from sliding into slivers.

use std::collections::HashMap;

use serde::Serialize;

use super::fvec::{add, cross, dot, norm, scale, sub};
use super::{Mesh, P3};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlateauParams {
    /// Boundary segments per polygon edge on the finest level; must be a
    /// multiple of `2^levels`.
    pub samples_per_edge: usize,
    pub step: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub levels: usize,
}

impl Default for PlateauParams {
    fn default() -> Self {
        PlateauParams { samples_per_edge: 8, step: 0.3, tolerance: 1e-10, max_iterations: 20_000, levels: 3 }
    }
}

impl PlateauParams {
    /// Boundary segments per polygon edge on the coarsest level; each
    /// refinement doubles it, ending at `samples_per_edge`.
    fn coarse_cuts(&self) -> usize {
        self.samples_per_edge >> self.levels
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.samples_per_edge > 0
            && self.step > 0.0
            && self.step < 1.0
            && self.tolerance > 0.0
            && self.max_iterations > 0
            && self.levels < usize::BITS as usize
            && self.samples_per_edge.is_multiple_of(1 << self.levels);
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("bad Plateau parameters {self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlateauStats {
    /// Relaxation sweeps over all refinement levels.
    pub iterations: usize,
    /// Largest vertex move in the final sweep.
    pub final_displacement: f64,
    pub initial_area: f64,
    pub final_area: f64,
    /// Largest relative area increase between consecutive sweeps (0 when
    /// the area never went up).
    pub max_area_increase: f64,
    /// Largest normal component of an interior area gradient, divided by
    /// the mean edge length.
    pub gradient_residual: f64,
    /// Largest boundary vertex move; the boundary is held fixed.
    pub boundary_displacement: f64,
    pub vertices: usize,
    pub triangles: usize,
    #[serde(skip)]
    pub area_history: Vec<f64>,
}

impl PlateauStats {
    pub fn area_non_increasing(&self, rel_slack: f64) -> bool {
        self.area_history.windows(2).all(|w| w[1] <= w[0] * (1.0 + rel_slack))
    }
}

struct DiskMesh {
    mesh: Mesh,
    fixed: Vec<bool>,
}

/// The polygon corners fanned from their centroid, each fan triangle cut
/// into a `cuts`-by-`cuts` triangular grid.
fn initial_disk(boundary: &[P3], cuts: usize) -> DiskMesh {
    let m = boundary.len();
    let centre = scale(boundary.iter().fold([0.0; 3], |acc, &p| add(acc, p)), 1.0 / m as f64);
    let mut vertices: Vec<P3> = boundary.to_vec();
    vertices.push(centre);
    let mut fixed = vec![true; m];
    fixed.push(false);
    // Grid points shared along spokes and the rim are keyed by the corner
    // pair and the fraction along it.
    let mut shared: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut triangles = Vec::new();
    for k in 0..m {
        let corners = [m, k, (k + 1) % m];
        let pos = |i: usize, j: usize| -> P3 {
            // Barycentric (cuts - i - j, i, j) over (centre, a, b).
            let (a, b) = (boundary[corners[1]], boundary[corners[2]]);
            let w = 1.0 / cuts as f64;
            add(scale(centre, (cuts - i - j) as f64 * w), add(scale(a, i as f64 * w), scale(b, j as f64 * w)))
        };
        let mut grid = vec![vec![usize::MAX; cuts + 1]; cuts + 1];
        for i in 0..=cuts {
            for j in 0..=cuts - i {
                let l = cuts - i - j;
                let key = if l == cuts {
                    Some((m, m, 0))
                } else if i == cuts {
                    Some((corners[1], corners[1], 0))
                } else if j == cuts {
                    Some((corners[2], corners[2], 0))
                } else if j == 0 {
                    Some((m, corners[1], i))
                } else if i == 0 {
                    Some((m, corners[2], j))
                } else if l == 0 {
                    let (lo, hi) = (corners[1].min(corners[2]), corners[1].max(corners[2]));
                    Some((lo, hi, if lo == corners[1] { j } else { i }))
                } else {
                    None
                };
                let id = match key {
                    Some((a, b, 0)) if a == b => if a == m { m } else { a },
                    Some(key) => *shared.entry(key).or_insert_with(|| {
                        vertices.push(pos(i, j));
                        fixed.push(l == 0);
                        vertices.len() - 1
                    }),
                    None => {
                        vertices.push(pos(i, j));
                        fixed.push(false);
                        vertices.len() - 1
                    }
                };
                grid[i][j] = id;
            }
        }
        for i in 0..cuts {
            for j in 0..cuts - i {
                triangles.push([grid[i][j], grid[i + 1][j], grid[i][j + 1]]);
                if i + j + 1 < cuts {
                    triangles.push([grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]]);
                }
            }
        }
    }
    DiskMesh { mesh: Mesh { vertices, triangles }, fixed }
}

/// Splits every triangle into four at edge midpoints.
fn refine(disk: &DiskMesh) -> DiskMesh {
    let mut mesh = disk.mesh.clone();
    let mut fixed = disk.fixed.clone();
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for t in &disk.mesh.triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut triangles = Vec::with_capacity(disk.mesh.triangles.len() * 4);
    for t in &disk.mesh.triangles {
        let mut mid = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            *mids.entry(key).or_insert_with(|| {
                let p = scale(add(mesh.vertices[a], mesh.vertices[b]), 0.5);
                mesh.vertices.push(p);
                fixed.push(edge_count[&key] == 1);
                mesh.vertices.len() - 1
            })
        };
        let [a, b, c] = *t;
        let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
        triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    mesh.triangles = triangles;
    DiskMesh { mesh, fixed }
}

fn cot(apex: P3, p: P3, q: P3) -> f64 {
    let (u, v) = (sub(p, apex), sub(q, apex));
    dot(u, v) / norm(cross(u, v))
}

/// Per-vertex lists of the two other corners of each incident triangle.
fn rings(mesh: &Mesh) -> Vec<Vec<[usize; 2]>> {
    let mut out = vec![Vec::new(); mesh.vertices.len()];
    for &[a, b, c] in &mesh.triangles {
        out[a].push([b, c]);
        out[b].push([c, a]);
        out[c].push([a, b]);
    }
    out
}

/// `Σ w_ij (x_j − x_i)` and `Σ w_ij` with cotangent weights from the
/// current positions.
fn weighted_pull(v: &[P3], i: usize, ring: &[[usize; 2]]) -> (P3, f64) {
    let x = v[i];
    let mut pull = [0.0; 3];
    let mut total = 0.0;
    for &[j, k] in ring {
        let (cj, ck) = (cot(v[j], x, v[k]), cot(v[k], x, v[j]));
        pull = add(pull, add(scale(sub(v[j], x), ck), scale(sub(v[k], x), cj)));
        total += cj + ck;
    }
    (pull, total)
}

/// Unit normal from the area-weighted sum of 1-ring triangle normals.
fn vertex_normal(v: &[P3], i: usize, ring: &[[usize; 2]]) -> P3 {
    let x = v[i];
    let sum = ring.iter().fold([0.0; 3], |acc, &[j, k]| add(acc, cross(sub(v[j], x), sub(v[k], x))));
    let len = norm(sum);
    if len > 0.0 {
        scale(sum, 1.0 / len)
    } else {
        [0.0; 3]
    }
}

/// One Gauss–Seidel sweep moving each interior vertex along its normal by
/// `step` times the minimizer of the cotangent Dirichlet energy on that
/// line.
fn sweep(disk: &mut DiskMesh, interior: &[usize], ring: &[Vec<[usize; 2]>], step: f64) -> f64 {
    let v = &mut disk.mesh.vertices;
    let mut worst = 0.0f64;
    for &i in interior {
        let (pull, total) = weighted_pull(v, i, &ring[i]);
        if total <= 0.0 {
            continue;
        }
        let n = vertex_normal(v, i, &ring[i]);
        let delta = scale(n, step * dot(pull, n) / total);
        v[i] = add(v[i], delta);
        worst = worst.max(norm(delta));
    }
    worst
}

fn relax(disk: &mut DiskMesh, params: &PlateauParams, budget: usize, history: &mut Vec<f64>) -> (usize, f64) {
    let ring = rings(&disk.mesh);
    let interior: Vec<usize> = (0..disk.fixed.len()).filter(|&i| !disk.fixed[i]).collect();
    let mut sweeps = 0;
    let mut last = f64::INFINITY;
    while sweeps < budget {
        let worst = sweep(disk, &interior, &ring, params.step);
        sweeps += 1;
        history.push(disk.mesh.area());
        last = worst;
        if worst < params.tolerance {
            break;
        }
    }
    (sweeps, last)
}

/// Relaxes a disk spanning `boundary` (a closed polygon, last vertex joined
/// to the first). Coarse levels are relaxed before each refinement; the
/// iteration budget is shared by all levels.
pub fn solve_plateau(boundary: &[P3], params: &PlateauParams) -> Result<(Mesh, PlateauStats)> {
    params.validate()?;
    if boundary.len() < 3 {
        return Err(Error::Invalid("a facet boundary needs at least 3 vertices".into()));
    }
    let cuts = params.coarse_cuts();
    let mut disk = initial_disk(boundary, cuts);
    let initial_area = disk.mesh.area();
    let mut history = vec![initial_area];
    let mut used = 0;
    let mut displacement = f64::INFINITY;
    for level in 0..=params.levels {
        if level > 0 {
            disk = refine(&disk);
        }
        let (sweeps, last) = relax(&mut disk, params, params.max_iterations - used, &mut history);
        used += sweeps;
        displacement = last;
        if used >= params.max_iterations && last >= params.tolerance {
            return Err(Error::NonConvergence { iterations: used, residual: last });
        }
    }

    let ring = rings(&disk.mesh);
    let mut edge_total = 0.0;
    let mut edge_count = 0usize;
    for &[a, b, c] in &disk.mesh.triangles {
        for (p, q) in [(a, b), (b, c), (c, a)] {
            edge_total += norm(sub(disk.mesh.vertices[p], disk.mesh.vertices[q]));
            edge_count += 1;
        }
    }
    let mean_edge = edge_total / edge_count as f64;
    let gradient = (0..disk.fixed.len())
        .filter(|&i| !disk.fixed[i])
        .map(|i| {
            let v = &disk.mesh.vertices;
            dot(weighted_pull(v, i, &ring[i]).0, vertex_normal(v, i, &ring[i])).abs() / 2.0
        })
        .fold(0.0f64, f64::max);
    let start = initial_disk(boundary, cuts);
    let boundary_displacement = start
        .mesh
        .vertices
        .iter()
        .zip(&start.fixed)
        .zip(&disk.mesh.vertices)
        .filter(|((_, f), _)| **f)
        .map(|((a, _), b)| norm(sub(*a, *b)))
        .fold(0.0f64, f64::max);
    let max_area_increase = history.windows(2).map(|w| (w[1] - w[0]) / w[0]).fold(0.0f64, f64::max);
    let stats = PlateauStats {
        iterations: used,
        final_displacement: displacement,
        initial_area,
        final_area: disk.mesh.area(),
        max_area_increase,
        gradient_residual: gradient / mean_edge,
        boundary_displacement,
        vertices: disk.mesh.vertices.len(),
        triangles: disk.mesh.triangles.len(),
        area_history: history,
    };
    Ok((disk.mesh, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_square_stays_flat() {
        let square = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
        let params = PlateauParams { levels: 2, ..PlateauParams::default() };
        let (mesh, stats) = solve_plateau(&square, &params).unwrap();
        assert!(mesh.vertices.iter().all(|v| v[2].abs() < 1e-12));
        assert!((stats.final_area - 1.0).abs() < 1e-9);
        assert_eq!(stats.boundary_displacement, 0.0);
    }

    #[test]
    fn skew_quadrilateral_shrinks() {
        let quad = [[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 1.0]];
        let (_, stats) = solve_plateau(&quad, &PlateauParams { levels: 2, ..PlateauParams::default() }).unwrap();
        assert!(stats.final_area < stats.initial_area);
        assert!(stats.area_non_increasing(1e-12));
        assert!(stats.final_displacement < 1e-10);
        assert!(stats.gradient_residual < 1e-6);
    }

    #[test]
    fn budget_exhaustion_reports_residual() {
        let quad = [[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 1.0]];
        let params = PlateauParams { max_iterations: 3, ..PlateauParams::default() };
        match solve_plateau(&quad, &params) {
            Err(Error::NonConvergence { iterations, residual }) => {
                assert_eq!(iterations, 3);
                assert!(residual > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
