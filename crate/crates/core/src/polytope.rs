//! Regular abstract polyhedra built from string C-groups by the coset
//! construction, and checks of the abstract-polytope axioms.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::cgroups::StringCGroup;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::groups::{right_cosets, CosetDecomposition, ElementId};

/// A face of a ranked poset; `index` is 0-based within its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub rank: i32,
    pub index: usize,
}

impl Face {
    pub fn new(rank: i32, index: usize) -> Face {
        Face { rank, index }
    }
}

/// A ranked poset stored as cover relations between consecutive ranks.
///
/// `down[l][j]` lists the faces of level `l − 1` covered by face `j` of
/// level `l`; level `l` holds rank `min_rank + l`. The full order is the
/// reflexive-transitive closure of the covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    min_rank: i32,
    down: Vec<Vec<Vec<usize>>>,
    up: Vec<Vec<Vec<usize>>>,
    offsets: Vec<usize>,
    /// `below[global(f)][global(g)]` iff `g ≤ f`.
    below: Vec<Vec<bool>>,
}

impl Poset {
    /// `down[0]` must contain one empty list per bottom-level face.
    pub fn from_covers(min_rank: i32, mut down: Vec<Vec<Vec<usize>>>) -> Poset {
        for level in &mut down {
            for covers in level.iter_mut() {
                covers.sort_unstable();
                covers.dedup();
            }
        }
        let mut up: Vec<Vec<Vec<usize>>> = down.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for l in 1..down.len() {
            for (j, covers) in down[l].iter().enumerate() {
                for &c in covers {
                    up[l - 1][c].push(j);
                }
            }
        }
        let mut offsets = vec![0];
        for level in &down {
            offsets.push(offsets.last().unwrap() + level.len());
        }
        let total = *offsets.last().unwrap();
        let mut below = vec![vec![false; total]; total];
        for l in 0..down.len() {
            for j in 0..down[l].len() {
                let me = offsets[l] + j;
                below[me][me] = true;
                if l > 0 {
                    for &c in &down[l][j] {
                        let child = below[offsets[l - 1] + c].clone();
                        for (slot, v) in below[me].iter_mut().zip(child) {
                            *slot |= v;
                        }
                    }
                }
            }
        }
        Poset { min_rank, down, up, offsets, below }
    }

    pub fn min_rank(&self) -> i32 {
        self.min_rank
    }

    pub fn max_rank(&self) -> i32 {
        self.min_rank + self.down.len() as i32 - 1
    }

    fn level(&self, rank: i32) -> usize {
        (rank - self.min_rank) as usize
    }

    pub fn count(&self, rank: i32) -> usize {
        if rank < self.min_rank || rank > self.max_rank() {
            return 0;
        }
        self.down[self.level(rank)].len()
    }

    pub fn faces(&self, rank: i32) -> impl Iterator<Item = Face> + '_ {
        (0..self.count(rank)).map(move |j| Face::new(rank, j))
    }

    pub fn all_faces(&self) -> Vec<Face> {
        (self.min_rank..=self.max_rank()).flat_map(|r| self.faces(r)).collect()
    }

    pub fn covers_below(&self, f: Face) -> Vec<Face> {
        let l = self.level(f.rank);
        self.down[l][f.index].iter().map(|&c| Face::new(f.rank - 1, c)).collect()
    }

    pub fn covers_above(&self, f: Face) -> Vec<Face> {
        let l = self.level(f.rank);
        self.up[l][f.index].iter().map(|&c| Face::new(f.rank + 1, c)).collect()
    }

    fn global(&self, f: Face) -> usize {
        self.offsets[self.level(f.rank)] + f.index
    }

    pub fn leq(&self, f: Face, g: Face) -> bool {
        f.rank <= g.rank && self.below[self.global(g)][self.global(f)]
    }

    /// Number of cover pairs between consecutive ranks.
    pub fn cover_count(&self) -> usize {
        self.down.iter().flatten().map(Vec::len).sum()
    }

    /// Maximal chains, each listed from the bottom face up.
    pub fn flags(&self) -> Vec<Vec<Face>> {
        let mut out = Vec::new();
        let tops: Vec<Face> = self.all_faces().into_iter().filter(|&f| self.covers_above(f).is_empty()).collect();
        for top in tops {
            let mut stack = vec![vec![top]];
            while let Some(chain) = stack.pop() {
                let last = *chain.last().unwrap();
                let below = self.covers_below(last);
                if below.is_empty() {
                    let mut flag = chain;
                    flag.reverse();
                    out.push(flag);
                } else {
                    for b in below.into_iter().rev() {
                        let mut next = chain.clone();
                        next.push(b);
                        stack.push(next);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The section `G/F = {H : F ≤ H ≤ G}` as a poset of its own, together
    /// with the original face behind each of its faces.
    pub fn section(&self, f: Face, g: Face) -> Result<(Poset, Vec<Vec<Face>>)> {
        if !self.leq(f, g) {
            return Err(Error::Incomparable(format!("{f:?} is not below {g:?}")));
        }
        let mut kept: Vec<Vec<Face>> = Vec::new();
        let mut index: HashMap<Face, usize> = HashMap::new();
        for r in f.rank..=g.rank {
            let level: Vec<Face> = self.faces(r).filter(|&h| self.leq(f, h) && self.leq(h, g)).collect();
            for (i, &h) in level.iter().enumerate() {
                index.insert(h, i);
            }
            kept.push(level);
        }
        let down = kept
            .iter()
            .enumerate()
            .map(|(l, level)| {
                level
                    .iter()
                    .map(|&h| {
                        if l == 0 {
                            return Vec::new();
                        }
                        self.covers_below(h).into_iter().filter_map(|c| index.get(&c).copied()).collect()
                    })
                    .collect()
            })
            .collect();
        Ok((Poset::from_covers(f.rank, down), kept))
    }

    /// Whether the flags are connected under adjacency (differing in
    /// exactly one face). A poset with one flag is connected; one with
    /// none is not.
    pub fn is_flag_connected(&self) -> bool {
        let flags = self.flags();
        if flags.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(flags.len());
        // Flags are adjacent iff they agree after removing one position.
        let len = flags[0].len();
        for skip in 0..len {
            let mut buckets: HashMap<Vec<Face>, usize> = HashMap::new();
            for (i, flag) in flags.iter().enumerate() {
                if flag.len() != len {
                    continue;
                }
                let key: Vec<Face> =
                    flag.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, f)| *f).collect();
                match buckets.get(&key) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        buckets.insert(key, i);
                    }
                }
            }
        }
        if flags.iter().any(|f| f.len() != len) {
            return false;
        }
        uf.components() == 1
    }

    /// Graphviz rendering of the Hasse diagram: one row per rank, edges only
    /// between consecutive ranks.
    pub fn to_dot(&self, name: &str, label: impl Fn(Face) -> String) -> String {
        let node = |f: Face| format!("\"F{}_{}\"", f.rank, f.index + 1);
        let mut out = String::new();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box, fontsize=10];").unwrap();
        for r in self.min_rank..=self.max_rank() {
            writeln!(out, "  subgraph rank_{} {{", r + 1).unwrap();
            writeln!(out, "    rank=same;").unwrap();
            for f in self.faces(r) {
                writeln!(out, "    {} [label=\"{}\"];", node(f), label(f)).unwrap();
            }
            writeln!(out, "  }}").unwrap();
        }
        for r in self.min_rank + 1..=self.max_rank() {
            for f in self.faces(r) {
                for c in self.covers_below(f) {
                    writeln!(out, "  {} -> {};", node(c), node(f)).unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Orbits of the automorphism group on flags, found by propagating a
    /// candidate automorphism along flag adjacencies. Needs the diamond
    /// property (every flag has exactly one `i`-adjacent flag); returns
    /// `None` otherwise.
    pub fn flag_orbit_count(&self) -> Option<usize> {
        let flags = self.flags();
        let pos: HashMap<&Vec<Face>, usize> = flags.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let len = flags.first()?.len();
        let mut adjacent = vec![vec![usize::MAX; len]; flags.len()];
        for (i, flag) in flags.iter().enumerate() {
            for k in 0..len {
                let others: Vec<usize> = flags
                    .iter()
                    .enumerate()
                    .filter(|(j, other)| {
                        *j != i && other.len() == len && (0..len).all(|m| (m == k) != (other[m] == flag[m]))
                    })
                    .map(|(j, _)| j)
                    .collect();
                match others.as_slice() {
                    [] if k == 0 || k == len - 1 => {}
                    [j] => adjacent[i][k] = *j,
                    _ => return None,
                }
            }
        }
        let maps_to = |from: usize, to: usize| -> bool {
            let mut image: Vec<usize> = vec![usize::MAX; flags.len()];
            let mut face_map: HashMap<Face, Face> = HashMap::new();
            image[from] = to;
            let mut queue = VecDeque::from([from]);
            while let Some(a) = queue.pop_front() {
                let b = image[a];
                for (x, y) in flags[a].iter().zip(&flags[b]) {
                    if *face_map.entry(*x).or_insert(*y) != *y {
                        return false;
                    }
                }
                for k in 0..len {
                    let (na, nb) = (adjacent[a][k], adjacent[b][k]);
                    if (na == usize::MAX) != (nb == usize::MAX) {
                        return false;
                    }
                    if na == usize::MAX {
                        continue;
                    }
                    if image[na] == usize::MAX {
                        image[na] = nb;
                        queue.push_back(na);
                    } else if image[na] != nb {
                        return false;
                    }
                }
            }
            let mut targets: Vec<Face> = face_map.values().copied().collect();
            targets.sort();
            targets.dedup();
            targets.len() == face_map.len()
                && face_map.iter().all(|(f, g)| {
                    let mut a: Vec<Face> = self.covers_below(*f).iter().map(|c| face_map[c]).collect();
                    let mut b = self.covers_below(*g);
                    a.sort();
                    b.sort();
                    a == b
                })
        };
        let _ = pos;
        let mut orbit_of = vec![usize::MAX; flags.len()];
        let mut orbits = 0;
        for start in 0..flags.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            for (t, slot) in orbit_of.iter_mut().enumerate() {
                if *slot == usize::MAX && maps_to(start, t) {
                    *slot = orbits;
                }
            }
            orbits += 1;
        }
        Some(orbits)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Pass/fail per axiom, with a short reason for every failure.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub p1_least_greatest: bool,
    pub p2_flags_have_five_faces: bool,
    pub p3_strongly_flag_connected: bool,
    pub p4_diamond: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.p1_least_greatest && self.p2_flags_have_five_faces && self.p3_strongly_flag_connected && self.p4_diamond
    }
}

pub fn verify_axioms(poset: &Poset) -> AxiomReport {
    verify_axioms_with(poset, Execution::default())
}

/// Checks P1–P4 on a poset meant to have ranks −1..=3.
pub fn verify_axioms_with(poset: &Poset, mode: Execution) -> AxiomReport {
    let mut report = AxiomReport::default();
    let shaped = poset.min_rank() == -1 && poset.max_rank() == 3;
    if !shaped {
        report.failures.push(format!("ranks {}..={} instead of -1..=3", poset.min_rank(), poset.max_rank()));
        return report;
    }
    let least = Face::new(-1, 0);
    let greatest = Face::new(3, 0);
    let faces = poset.all_faces();

    report.p1_least_greatest = poset.count(-1) == 1
        && poset.count(3) == 1
        && faces.iter().all(|&f| poset.leq(least, f) && poset.leq(f, greatest));
    if !report.p1_least_greatest {
        report.failures.push("P1: no unique least and greatest face".into());
    }

    let flags = poset.flags();
    report.p2_flags_have_five_faces = !flags.is_empty() && flags.iter().all(|f| f.len() == 5);
    if !report.p2_flags_have_five_faces {
        report.failures.push("P2: a maximal chain does not have 5 faces".into());
    }

    let mut pairs = Vec::new();
    for &f in &faces {
        for &g in &faces {
            if g.rank - f.rank >= 2 && poset.leq(f, g) {
                pairs.push((f, g));
            }
        }
    }
    let disconnected = exec::filter_map_collect(mode, &pairs, |&(f, g)| {
        let (sec, _) = poset.section(f, g).expect("comparable");
        (!sec.is_flag_connected()).then_some((f, g))
    });
    report.p3_strongly_flag_connected = disconnected.is_empty();
    if let Some((f, g)) = disconnected.first() {
        report.failures.push(format!("P3: section {g:?}/{f:?} is not flag-connected"));
    }

    let diamond_breaks: Vec<(Face, Face, usize)> = pairs
        .iter()
        .filter(|(f, g)| g.rank - f.rank == 2)
        .filter_map(|&(f, g)| {
            let between = poset.faces(f.rank + 1).filter(|&h| poset.leq(f, h) && poset.leq(h, g)).count();
            (between != 2).then_some((f, g, between))
        })
        .collect();
    report.p4_diamond = diamond_breaks.is_empty();
    if let Some((f, g, n)) = diamond_breaks.first() {
        report.failures.push(format!("P4: {n} faces between {f:?} and {g:?}"));
    }
    report
}

/// The regular polyhedron of a string C-group: faces are right cosets of
/// `Γ_i = ⟨t_k | k ≠ i⟩`, ordered by non-empty intersection.
#[derive(Clone, Debug)]
pub struct AbstractPolyhedron {
    source: StringCGroup,
    cosets: [CosetDecomposition; 3],
    poset: Poset,
}

pub fn build_polyhedron(source: &StringCGroup) -> AbstractPolyhedron {
    let group = source.group();
    let cosets = [0, 1, 2].map(|i| right_cosets(group, &source.face_stabilizer(i)));
    // Every element g lies in exactly one coset per rank; those three
    // cosets meet (in g), and every meeting pair arises this way.
    let mut vertex_edge = vec![Vec::new(); cosets[1].len()];
    let mut edge_facet = vec![Vec::new(); cosets[2].len()];
    for g in group.ids() {
        let [c0, c1, c2] = [0, 1, 2].map(|i| cosets[i].coset_of(g));
        vertex_edge[c1].push(c0);
        edge_facet[c2].push(c1);
    }
    let down = vec![
        vec![Vec::new()],
        vec![vec![0]; cosets[0].len()],
        vertex_edge,
        edge_facet,
        vec![(0..cosets[2].len()).collect()],
    ];
    AbstractPolyhedron { source: source.clone(), cosets, poset: Poset::from_covers(-1, down) }
}

impl AbstractPolyhedron {
    pub fn source(&self) -> &StringCGroup {
        &self.source
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Coset decomposition for rank `i ∈ 0..=2`.
    pub fn cosets(&self, i: usize) -> &CosetDecomposition {
        &self.cosets[i]
    }

    /// `(vertices, edges, facets)`.
    pub fn face_counts(&self) -> (usize, usize, usize) {
        (self.poset.count(0), self.poset.count(1), self.poset.count(2))
    }

    /// Coset representative `γ_{i,j}`; the identity for ranks −1 and 3.
    pub fn representative(&self, f: Face) -> ElementId {
        match f.rank {
            0..=2 => self.cosets[f.rank as usize].representative(f.index),
            _ => self.source.group().identity(),
        }
    }

    /// The face `F·γ`, i.e. the coset of `γ_{i,j}·γ`.
    pub fn act(&self, f: Face, gamma: ElementId) -> Face {
        match f.rank {
            0..=2 => {
                let d = &self.cosets[f.rank as usize];
                let moved = self.source.group().mul(d.representative(f.index), gamma);
                Face::new(f.rank, d.coset_of(moved))
            }
            _ => f,
        }
    }

    /// The flag `(Γ_0 g, Γ_1 g, Γ_2 g)` determined by a group element,
    /// without the least and greatest faces.
    pub fn flag_of(&self, g: ElementId) -> [Face; 3] {
        [0, 1, 2].map(|i| Face::new(i as i32, self.cosets[i].coset_of(g)))
    }

    pub fn section(&self, f: Face, g: Face) -> Result<(Poset, Vec<Vec<Face>>)> {
        self.poset.section(f, g)
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        verify_axioms(&self.poset)
    }

    /// For each generator `t_k`, the induced face map preserves covers.
    pub fn generators_preserve_order(&self) -> bool {
        (0..3).all(|k| {
            let t = self.source.t(k);
            (0..=3).all(|r| {
                self.poset.faces(r).all(|f| {
                    let mut image: Vec<Face> = self.poset.covers_below(f).into_iter().map(|c| self.act(c, t)).collect();
                    let mut expected = self.poset.covers_below(self.act(f, t));
                    image.sort();
                    expected.sort();
                    image == expected
                })
            })
        })
    }

    /// Vertices per facet and facets per vertex, if constant.
    pub fn incidence_numbers(&self) -> (Option<usize>, Option<usize>) {
        let p = &self.poset;
        let constant = |v: Vec<usize>| {
            let first = *v.first()?;
            v.iter().all(|&x| x == first).then_some(first)
        };
        let per_facet = p.faces(2).map(|f| p.faces(0).filter(|&v| p.leq(v, f)).count()).collect();
        let per_vertex = p.faces(0).map(|v| p.faces(2).filter(|&f| p.leq(v, f)).count()).collect();
        (constant(per_facet), constant(per_vertex))
    }

    pub fn export_hasse(&self, name: &str) -> String {
        let group = self.source.group();
        self.poset.to_dot(name, |f| {
            let word = group.word_string(self.representative(f));
            format!("F{},{}\\n{}", f.rank, f.index + 1, word)
        })
    }

    pub fn to_json(&self, name: &str) -> PosetJson {
        let group = self.source.group();
        let (p, q) = self.source.schlafli();
        let ranks = (-1..=3)
            .map(|r| RankJson {
                rank: r,
                faces: self
                    .poset
                    .faces(r)
                    .map(|f| FaceJson { index: f.index + 1, representative: group.word_string(self.representative(f)) })
                    .collect(),
            })
            .collect();
        let mut covers = Vec::new();
        for r in 0..=3 {
            for f in self.poset.faces(r) {
                for c in self.poset.covers_below(f) {
                    covers.push(CoverJson { lower: (c.rank, c.index + 1), upper: (f.rank, f.index + 1) });
                }
            }
        }
        PosetJson {
            name: name.to_string(),
            group_order: group.order(),
            schlafli: [p, q],
            generators: self.source.words(),
            ranks,
            covers,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetJson {
    pub name: String,
    pub group_order: usize,
    pub schlafli: [usize; 2],
    pub generators: [String; 3],
    pub ranks: Vec<RankJson>,
    pub covers: Vec<CoverJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankJson {
    pub rank: i32,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceJson {
    /// 1-based, as in `F_{i,j}`.
    pub index: usize,
    pub representative: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverJson {
    pub lower: (i32, usize),
    pub upper: (i32, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlagTransitivity {
    pub flags: usize,
    pub orbits: usize,
    pub group_order: usize,
}

impl FlagTransitivity {
    pub fn is_regular(&self) -> bool {
        self.orbits == 1 && self.flags == self.group_order
    }
}

/// Orbits of the right action of the group on flags (via coset labels).
pub fn flag_transitive(poly: &AbstractPolyhedron) -> FlagTransitivity {
    let group = poly.source().group();
    let flags: Vec<[Face; 3]> = poly
        .poset()
        .flags()
        .into_iter()
        .filter(|f| f.len() == 5)
        .map(|f| [f[1], f[2], f[3]])
        .collect();
    let index: HashMap<[Face; 3], usize> = flags.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let gens = group.generator_ids();
    let mut orbit = vec![usize::MAX; flags.len()];
    let mut orbits = 0;
    for start in 0..flags.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = orbits;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &g in &gens {
                let image = flags[i].map(|f| poly.act(f, g));
                let j = index[&image];
                if orbit[j] == usize::MAX {
                    orbit[j] = orbits;
                    queue.push_back(j);
                }
            }
        }
        orbits += 1;
    }
    FlagTransitivity { flags: flags.len(), orbits, group_order: group.order() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgroups::{check_string_cgroup, GeneratorTriple};
    use crate::h3;

    fn poly(words: [&str; 3]) -> AbstractPolyhedron {
        let g = h3::group();
        let t = GeneratorTriple(words.map(|w| g.parse_word(w).unwrap()));
        build_polyhedron(&check_string_cgroup(&g, t).unwrap())
    }

    #[test]
    fn face_counts_match_indices() {
        assert_eq!(poly(["s2", "s1", "s0"]).face_counts(), (20, 30, 12));
        assert_eq!(poly(["s0", "s1", "s2"]).face_counts(), (12, 30, 20));
        assert_eq!(poly(["s0s2", "s1", "s2"]).face_counts(), (12, 30, 6));
    }

    #[test]
    fn dodecahedron_sections_and_axioms() {
        let p = poly(["s2", "s1", "s0"]);
        let report = p.verify_axioms();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(p.incidence_numbers(), (Some(5), Some(3)));
        assert!(p.generators_preserve_order());

        let (whole, _) = p.section(Face::new(-1, 0), Face::new(3, 0)).unwrap();
        assert_eq!(whole.all_faces().len(), 64);
        let (vf, faces) = p.section(Face::new(0, 0), Face::new(3, 0)).unwrap();
        assert_eq!(vf.count(1), 3);
        assert_eq!(vf.count(2), 3);
        assert_eq!(faces[0], vec![Face::new(0, 0)]);
        // Oracle: edges through the base vertex are the cosets meeting Γ_0.
        let g = p.source().group();
        let g0 = p.source().face_stabilizer(0);
        let mut meeting: Vec<usize> = g0.elements().iter().map(|&x| p.cosets(1).coset_of(x)).collect();
        meeting.sort();
        meeting.dedup();
        assert_eq!(meeting.len(), 3);
        let _ = g;
        let (single, _) = p.section(Face::new(1, 4), Face::new(1, 4)).unwrap();
        assert_eq!(single.all_faces(), vec![Face::new(1, 0)]);
        let incomparable = p.section(Face::new(2, 0), Face::new(0, 0));
        assert!(matches!(incomparable, Err(Error::Incomparable(_))));
    }

    #[test]
    fn regularity() {
        for words in [["s0", "s1", "s2"], ["s0", "s1s2s1", "s2"]] {
            let ft = flag_transitive(&poly(words));
            assert_eq!(ft, FlagTransitivity { flags: 120, orbits: 1, group_order: 120 });
        }
    }

    #[test]
    fn flag_of_is_a_flag() {
        let p = poly(["s0s2", "s1", "s0"]);
        let g = p.source().group();
        for x in g.ids() {
            let [v, e, f] = p.flag_of(x);
            assert!(p.poset().leq(v, e) && p.poset().leq(e, f));
        }
    }

    #[test]
    fn hasse_diagram() {
        let p = poly(["s2", "s1", "s0"]);
        let dot = p.export_hasse("5_3");
        let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
        assert_eq!(nodes, 64);
        let edge_vertex = dot.lines().filter(|l| l.trim_start().starts_with("\"F0_") && l.contains("-> \"F1_")).count();
        assert_eq!(edge_vertex, 60);
        for r in ["rank_0", "rank_1", "rank_2", "rank_3", "rank_4"] {
            assert!(dot.contains(r));
        }
        for e in 1..=30 {
            let down = dot.lines().filter(|l| l.ends_with(&format!("-> \"F1_{e}\";"))).count();
            assert_eq!(down, 2);
        }
    }

    /// Square pyramid: apex 4, base vertices 0..4.
    fn square_pyramid() -> Poset {
        let vertices = vec![vec![0]; 5];
        let edges: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![0, 4], vec![1, 4], vec![2, 4], vec![3, 4]];
        let facets = vec![vec![0, 1, 2, 3], vec![0, 4, 5], vec![1, 5, 6], vec![2, 6, 7], vec![3, 7, 4]];
        Poset::from_covers(-1, vec![vec![vec![]], vertices, edges, facets, vec![(0..5).collect()]])
    }

    #[test]
    fn square_pyramid_is_polytope_but_not_regular() {
        let sp = square_pyramid();
        assert!(verify_axioms(&sp).all_pass());
        assert_eq!(sp.flags().len(), 32);
        // Oracle: brute force over the 120 vertex permutations. An
        // automorphism is fixed by its vertex map since edges and facets
        // are determined by their vertex sets.
        let vsets = |rank: i32| -> Vec<Vec<usize>> {
            sp.faces(rank)
                .map(|f| {
                    let mut v: Vec<usize> = sp.faces(0).filter(|&x| sp.leq(x, f)).map(|x| x.index).collect();
                    v.sort();
                    v
                })
                .collect()
        };
        let (edges, facets) = (vsets(1), vsets(2));
        let mut autos = 0;
        let mut perm: Vec<usize> = (0..5).collect();
        permutations(&mut perm, 0, &mut |p| {
            let maps = |sets: &Vec<Vec<usize>>| {
                sets.iter().all(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
                    img.sort();
                    sets.contains(&img)
                })
            };
            if maps(&edges) && maps(&facets) {
                autos += 1;
            }
        });
        assert_eq!(autos, 8);
        // Automorphisms act freely on flags, so 32 / 8 orbits.
        assert_eq!(sp.flag_orbit_count(), Some(32 / autos));
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn generic_orbit_count_agrees_on_regular_polyhedron() {
        let p = poly(["s0", "s1", "s2"]);
        assert_eq!(p.poset().flag_orbit_count(), Some(1));
    }

    #[test]
    fn deleting_an_edge_breaks_the_diamond() {
        let p = poly(["s2", "s1", "s0"]);
        let mutated = delete_edge(p.poset(), 0);
        let report = verify_axioms(&mutated);
        assert!(!report.p4_diamond);
        assert!(report.p1_least_greatest);
    }

    fn delete_edge(poset: &Poset, edge: usize) -> Poset {
        let mut down: Vec<Vec<Vec<usize>>> = (-1..=3)
            .map(|r| poset.faces(r).map(|f| poset.covers_below(f).iter().map(|c| c.index).collect()).collect())
            .collect();
        down[2].remove(edge);
        for covers in &mut down[3] {
            covers.retain(|&e| e != edge);
            for e in covers.iter_mut() {
                if *e > edge {
                    *e -= 1;
                }
            }
        }
        Poset::from_covers(-1, down)
    }

    #[test]
    fn two_glued_copies_break_strong_connectivity() {
        let p = poly(["s2", "s1", "s0"]);
        let glued = glue_two_copies(p.poset());
        let report = verify_axioms(&glued);
        assert!(report.p1_least_greatest);
        assert!(report.p2_flags_have_five_faces);
        assert!(report.p4_diamond);
        assert!(!report.p3_strongly_flag_connected);
        // Oracle: the whole-poset flag graph splits into the two copies.
        assert!(!glued.is_flag_connected());
        assert_eq!(glued.flags().len(), 240);
    }

    fn glue_two_copies(poset: &Poset) -> Poset {
        let mut down: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        for r in 0..=2 {
            let n_below = poset.count(r - 1);
            let mut level: Vec<Vec<usize>> = Vec::new();
            for copy in 0..2 {
                for f in poset.faces(r) {
                    let covers = poset
                        .covers_below(f)
                        .iter()
                        .map(|c| if r == 0 { 0 } else { c.index + copy * n_below })
                        .collect();
                    level.push(covers);
                }
            }
            down.push(level);
        }
        down.push(vec![(0..2 * poset.count(2)).collect()]);
        Poset::from_covers(-1, down)
    }
}
