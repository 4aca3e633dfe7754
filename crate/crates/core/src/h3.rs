//! The icosahedral Coxeter group H3 and its known regular polyhedra.

use std::sync::{Arc, OnceLock};

use crate::cgroups::{self, GeneratorTriple, LabelledClass, ReferenceClass};
use crate::groups::{FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::wythoff::builtin_representation;

pub fn generator_names() -> Vec<String> {
    vec!["s0".into(), "s1".into(), "s2".into()]
}

/// H3 as the matrix group generated by the φ1 images of `s0, s1, s2`.
pub fn group() -> Arc<FiniteGroup> {
    static GROUP: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    GROUP
        .get_or_init(|| {
            let rep = builtin_representation("phi1").expect("builtin");
            Arc::new(
                FiniteGroup::generate(rep.generator_images(), &generator_names(), DEFAULT_ORDER_BOUND)
                    .expect("H3 closes at order 120"),
            )
        })
        .clone()
}

/// One row of the Atlas listing of H3 polyhedra: type, index letter,
/// generating words and the Wythoff dimensions under φ1 and φ2.
#[derive(Clone, Copy, Debug)]
pub struct KnownPolyhedron {
    pub p: usize,
    pub q: usize,
    pub label: Option<char>,
    pub words: [&'static str; 3],
    pub wythoff_dims: [usize; 2],
}

const fn row(p: usize, q: usize, label: Option<char>, words: [&'static str; 3], d: usize) -> KnownPolyhedron {
    KnownPolyhedron { p, q, label, words, wythoff_dims: [d, d] }
}

pub const KNOWN_POLYHEDRA: [KnownPolyhedron; 15] = [
    row(3, 5, None, ["s0", "s1", "s2"], 1),
    row(3, 10, Some('a'), ["s0", "s1", "s0s2"], 0),
    row(3, 10, Some('b'), ["s0s2", "(s1s2)^2s0s1s2s1", "s0"], 0),
    row(5, 3, None, ["s2", "s1", "s0"], 1),
    row(5, 5, None, ["s0", "s1s2s1", "s2"], 1),
    row(5, 6, Some('b'), ["s0", "s1s2s1", "s0s2"], 0),
    row(5, 6, Some('c'), ["s0s2", "s1s0s2s1", "s2"], 0),
    row(5, 10, Some('a'), ["s0", "s1s2s1", "(s1s0s2)^4s1s0"], 0),
    row(5, 10, Some('b'), ["s0s2", "s1s0s2s1", "s0"], 0),
    row(6, 5, Some('b'), ["s0", "(s1s0s2)^3s1", "s0s2"], 0),
    row(6, 5, Some('c'), ["s0s2", "s1s2s1", "s0"], 1),
    row(10, 3, Some('b'), ["s0s2", "s1", "s0"], 1),
    row(10, 3, Some('c'), ["s0", "s1s0s2s1", "(s1s0s2)^4s1s0"], 0),
    row(10, 5, Some('a'), ["s0", "s1s0s2s1", "s0s2"], 0),
    row(10, 5, Some('b'), ["s0s2", "s1", "s2"], 1),
];

impl KnownPolyhedron {
    pub fn triple(&self, group: &FiniteGroup) -> GeneratorTriple {
        GeneratorTriple(self.words.map(|w| group.parse_word(w).expect("valid H3 word")))
    }
}

pub fn reference_classes(group: &FiniteGroup) -> Vec<ReferenceClass> {
    KNOWN_POLYHEDRA
        .iter()
        .map(|k| ReferenceClass { p: k.p, q: k.q, label: k.label, triple: k.triple(group) })
        .collect()
}

/// Enumerated H3 classes carrying the Atlas index letters, ordered by type
/// and letter.
///
/// Each class is represented by its listed generating triple. An outer
/// automorphism of H3 swaps `phi1` and `phi2`, so the representative fixes
/// which realization each name refers to.
pub fn classes() -> Vec<LabelledClass> {
    let g = group();
    let found = cgroups::enumerate_string_cgroups(&g);
    let reference = reference_classes(&g);
    let mut labelled = cgroups::assign_labels(found, &reference);
    for class in &mut labelled {
        let listed = reference.iter().find(|r| (r.p, r.q) == class.cgroup.schlafli() && r.label == class.label);
        if let Some(r) = listed {
            class.cgroup = cgroups::check_string_cgroup(&g, r.triple).expect("listed triples are string C-groups");
        }
    }
    labelled.sort_by(cgroups::compare_labelled);
    labelled
}
