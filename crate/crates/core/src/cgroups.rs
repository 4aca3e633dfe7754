//! Rank-3 string C-groups: recognition of a generating triple and
//! enumeration of all triples of a finite group up to automorphism.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::groups::{extends_to_automorphism, subgroup_generated, ElementId, FiniteGroup, Subgroup};

/// Ordered triple `(t0, t1, t2)` of group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTriple(pub [ElementId; 3]);

/// Why a triple is not a string C-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    NotInvolution,
    NotDistinct,
    NotGenerating,
    StringFails,
    IntersectionFails,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rejection::NotInvolution => "not-involution",
            Rejection::NotDistinct => "not-distinct",
            Rejection::NotGenerating => "not-generating",
            Rejection::StringFails => "string-fails",
            Rejection::IntersectionFails => "intersection-fails",
        };
        f.write_str(s)
    }
}

/// A group with a distinguished triple satisfying the string, intersection
/// and generation conditions. `p = ord(t0 t1)`, `q = ord(t1 t2)`.
#[derive(Clone)]
pub struct StringCGroup {
    group: Arc<FiniteGroup>,
    triple: GeneratorTriple,
    p: usize,
    q: usize,
}

impl fmt::Debug for StringCGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}} {:?}", self.p, self.q, self.words())
    }
}

impl StringCGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn triple(&self) -> GeneratorTriple {
        self.triple
    }

    pub fn t(&self, i: usize) -> ElementId {
        self.triple.0[i]
    }

    pub fn schlafli(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// `Γ_i = ⟨t_k | k ≠ i⟩` for `i ∈ 0..=2`.
    pub fn face_stabilizer(&self, i: usize) -> Subgroup {
        assert!(i < 3, "face stabilizers exist for ranks 0..=2");
        let gens: Vec<ElementId> = (0..3).filter(|&k| k != i).map(|k| self.t(k)).collect();
        subgroup_generated(&self.group, &gens)
    }

    pub fn words(&self) -> [String; 3] {
        self.triple.0.map(|t| self.group.word_string(t))
    }

    fn sort_key(&self) -> (usize, usize, [(usize, Vec<usize>); 3]) {
        let w = self.triple.0.map(|t| {
            let word = self.group.word(t);
            (word.len(), word)
        });
        (self.p, self.q, w)
    }
}

/// Validates `triple` as a string C-group of `group`.
///
/// Checks run cheapest first: involutions, distinctness, the string
/// relation, generation, and finally the intersection condition.
pub fn check_string_cgroup(
    group: &Arc<FiniteGroup>,
    triple: GeneratorTriple,
) -> std::result::Result<StringCGroup, Rejection> {
    let g = group.as_ref();
    let [t0, t1, t2] = triple.0;
    let e = g.identity();
    if triple.0.iter().any(|&t| t == e || g.mul(t, t) != e) {
        return Err(Rejection::NotInvolution);
    }
    if t0 == t1 || t1 == t2 || t0 == t2 {
        return Err(Rejection::NotDistinct);
    }
    if g.mul(t0, t2) != g.mul(t2, t0) {
        return Err(Rejection::StringFails);
    }
    if subgroup_generated(g, &triple.0).order() != g.order() {
        return Err(Rejection::NotGenerating);
    }
    let left = subgroup_generated(g, &[t0, t1]);
    let right = subgroup_generated(g, &[t1, t2]);
    if left.intersection(&right).order() != 2 {
        return Err(Rejection::IntersectionFails);
    }
    Ok(StringCGroup {
        group: Arc::clone(group),
        triple,
        p: g.element_order(g.mul(t0, t1)),
        q: g.element_order(g.mul(t1, t2)),
    })
}

pub fn enumerate_string_cgroups(group: &Arc<FiniteGroup>) -> Vec<StringCGroup> {
    enumerate_string_cgroups_with(group, Execution::default())
}

/// All string C-group triples of `group`, one representative per orbit of
/// the automorphism group, sorted by type and then by generator words.
pub fn enumerate_string_cgroups_with(group: &Arc<FiniteGroup>, mode: Execution) -> Vec<StringCGroup> {
    let g = group.as_ref();
    let involutions = g.involutions();
    let mut candidates = Vec::new();
    for &t0 in &involutions {
        for &t2 in &involutions {
            if t2 == t0 || g.mul(t0, t2) != g.mul(t2, t0) {
                continue;
            }
            for &t1 in &involutions {
                if t1 != t0 && t1 != t2 {
                    candidates.push(GeneratorTriple([t0, t1, t2]));
                }
            }
        }
    }
    let mut valid = exec::filter_map_collect(mode, &candidates, |&t| check_string_cgroup(group, t).ok());
    valid.sort_by_key(|a| a.sort_key());

    let mut classes: Vec<StringCGroup> = Vec::new();
    for candidate in valid {
        let known = classes.iter().any(|c| {
            c.schlafli() == candidate.schlafli() && equivalent(c, &candidate).expect("triples generate")
        });
        if !known {
            classes.push(candidate);
        }
    }
    classes
}

/// Whether `t_i ↦ t_i'` extends to an automorphism of the common group.
pub fn equivalent(a: &StringCGroup, b: &StringCGroup) -> Result<bool> {
    if !Arc::ptr_eq(&a.group, &b.group) {
        return Err(Error::Invalid("string C-groups over different groups".into()));
    }
    if a.schlafli() != b.schlafli() {
        return Ok(false);
    }
    let pairs: Vec<_> = (0..3).map(|i| (a.t(i), b.t(i))).collect();
    extends_to_automorphism(&a.group, &pairs)
}

/// An enumerated class with its index letter among classes of equal type.
#[derive(Clone, Debug)]
pub struct LabelledClass {
    pub cgroup: StringCGroup,
    pub label: Option<char>,
}

impl LabelledClass {
    /// Atlas-style name such as `{10,3}*120_b`.
    pub fn name(&self) -> String {
        let (p, q) = self.cgroup.schlafli();
        let order = self.cgroup.group().order();
        match self.label {
            Some(c) => format!("{{{p},{q}}}*{order}_{c}"),
            None => format!("{{{p},{q}}}*{order}"),
        }
    }

    /// File-name friendly form of [`name`](Self::name), e.g. `10_3_b`.
    pub fn slug(&self) -> String {
        let (p, q) = self.cgroup.schlafli();
        match self.label {
            Some(c) => format!("{p}_{q}_{c}"),
            None => format!("{p}_{q}"),
        }
    }
}

/// A known class: type, index letter and a triple in the same group.
pub struct ReferenceClass {
    pub p: usize,
    pub q: usize,
    pub label: Option<char>,
    pub triple: GeneratorTriple,
}

/// Attaches index letters to enumerated classes.
///
/// A class equivalent to a reference entry takes that entry's letter.
/// Remaining classes of a type with several classes get the unused letters
/// `a, b, c, …` in enumeration order; a type with a single class gets none.
pub fn assign_labels(classes: Vec<StringCGroup>, reference: &[ReferenceClass]) -> Vec<LabelledClass> {
    // Outer `Some` marks a class matched by a reference entry.
    let matched: Vec<Option<Option<char>>> = classes
        .iter()
        .map(|c| {
            reference.iter().find_map(|r| {
                if (r.p, r.q) != c.schlafli() {
                    return None;
                }
                let rc = check_string_cgroup(c.group(), r.triple).ok()?;
                equivalent(c, &rc).ok()?.then_some(r.label)
            })
        })
        .collect();
    let mut labelled: Vec<LabelledClass> = classes
        .into_iter()
        .zip(&matched)
        .map(|(cgroup, m)| LabelledClass { cgroup, label: m.flatten() })
        .collect();
    for i in 0..labelled.len() {
        if matched[i].is_some() {
            continue;
        }
        let ty = labelled[i].cgroup.schlafli();
        let same_type: Vec<Option<char>> =
            labelled.iter().filter(|c| c.cgroup.schlafli() == ty).map(|c| c.label).collect();
        if same_type.len() < 2 {
            continue;
        }
        labelled[i].label = ('a'..='z').find(|c| !same_type.contains(&Some(*c)));
    }
    labelled
}

/// `p,q` or `p,q:x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    pub p: usize,
    pub q: usize,
    pub label: Option<char>,
}

impl std::str::FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad polyhedron selector {s:?}; expected p,q or p,q:x"));
        let trimmed = s.trim().trim_start_matches('{');
        let (ty, label) = match trimmed.split_once(':') {
            Some((ty, l)) => {
                let mut chars = l.chars();
                let c = chars.next().ok_or_else(bad)?;
                if chars.next().is_some() || !c.is_ascii_lowercase() {
                    return Err(bad());
                }
                (ty, Some(c))
            }
            None => (trimmed, None),
        };
        let ty = ty.trim_end_matches('}');
        let (p, q) = ty.split_once(',').ok_or_else(bad)?;
        Ok(Selector {
            p: p.trim().parse().map_err(|_| bad())?,
            q: q.trim().parse().map_err(|_| bad())?,
            label,
        })
    }
}

impl Selector {
    pub fn resolve<'a>(&self, classes: &'a [LabelledClass]) -> Result<&'a LabelledClass> {
        let of_type: Vec<&LabelledClass> =
            classes.iter().filter(|c| c.cgroup.schlafli() == (self.p, self.q)).collect();
        if of_type.is_empty() {
            return Err(Error::Invalid(format!("no polyhedron of type {{{},{}}}", self.p, self.q)));
        }
        match self.label {
            Some(l) => of_type.into_iter().find(|c| c.label == Some(l)).ok_or_else(|| {
                Error::Invalid(format!("no polyhedron {{{},{}}} with index {l}", self.p, self.q))
            }),
            None if of_type.len() == 1 => Ok(of_type[0]),
            None => Err(Error::Invalid(format!(
                "type {{{},{}}} is ambiguous; add an index letter, e.g. {},{}:{}",
                self.p,
                self.q,
                self.p,
                self.q,
                of_type[0].label.unwrap_or('a')
            ))),
        }
    }
}

/// Orders classes by type, then by index letter.
pub fn compare_labelled(a: &LabelledClass, b: &LabelledClass) -> Ordering {
    a.cgroup.schlafli().cmp(&b.cgroup.schlafli()).then(a.label.cmp(&b.label))
}
