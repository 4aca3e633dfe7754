//! Finite matrix groups: closure from generators, subgroups, right cosets and
//! automorphism tests.
//!
//! Elements are identified by their exact matrices. Closure is breadth-first
//! over right multiplication by the generators, so element `0` is the
//! identity and every element's stored word is a shortest word in the
//! generators. All later arithmetic runs on element indices through a
//! right-multiplication table; no matrix products are needed after closure.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Mat3;

pub const DEFAULT_ORDER_BOUND: usize = 100_000;

/// Full multiplication tables are kept only up to this order.
const TABLE_LIMIT: usize = 2048;

/// Index of an element in its group's deterministic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A group element together with a shortest generator word evaluating to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub id: ElementId,
    pub matrix: Mat3,
    pub word: Vec<usize>,
}

pub struct FiniteGroup {
    generator_names: Vec<String>,
    generators: Vec<Mat3>,
    elements: Vec<Mat3>,
    lookup: HashMap<Mat3, usize>,
    /// `element = parent · generator`, `None` for the identity.
    parent: Vec<Option<(usize, usize)>>,
    right_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("generators", &self.generator_names)
            .field("order", &self.order())
            .finish()
    }
}

/// Generates the group with default generator names `g0, g1, …` and the
/// default order bound.
pub fn generate_group(gens: &[Mat3]) -> Result<FiniteGroup> {
    let names: Vec<String> = (0..gens.len()).map(|i| format!("g{i}")).collect();
    FiniteGroup::generate(gens, &names, DEFAULT_ORDER_BOUND)
}

impl FiniteGroup {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn generate(gens: &[Mat3], names: &[String], bound: usize) -> Result<FiniteGroup> {
        assert_eq!(gens.len(), names.len(), "one name per generator");
        if let Some(index) = gens.iter().position(|g| !g.is_orthogonal()) {
            return Err(Error::NonOrthogonalGenerator { index });
        }
        let mut elements = vec![Mat3::identity()];
        let mut lookup = HashMap::from([(Mat3::identity(), 0usize)]);
        let mut parent = vec![None];
        let mut right_gen: Vec<Vec<usize>> = Vec::new();
        let mut cursor = 0;
        while cursor < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let product = elements[cursor].mul(g);
                let id = match lookup.get(&product) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= bound {
                            return Err(Error::GroupTooLarge { bound });
                        }
                        let id = elements.len();
                        lookup.insert(product.clone(), id);
                        elements.push(product);
                        parent.push(Some((cursor, k)));
                        id
                    }
                };
                row.push(id);
            }
            right_gen.push(row);
            cursor += 1;
        }

        let inverse = elements
            .iter()
            .map(|m| lookup[&m.transpose()])
            .collect::<Vec<_>>();

        let mut group = FiniteGroup {
            generator_names: names.to_vec(),
            generators: gens.to_vec(),
            elements,
            lookup,
            parent,
            right_gen,
            inverse,
            table: None,
        };
        if group.order() <= TABLE_LIMIT {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            // Elements are in BFS order, so every parent precedes its child.
            for b in 1..n {
                let (pb, k) = self.parent[b].expect("non-identity has a parent");
                let ab_parent = table[a * n + pb] as usize;
                table[a * n + b] = self.right_gen[ab_parent][k] as u32;
            }
        }
        table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_matrices(&self) -> &[Mat3] {
        &self.generators
    }

    /// Element ids of the generators, in generator order.
    pub fn generator_ids(&self) -> Vec<ElementId> {
        (0..self.generators.len()).map(|k| ElementId(self.right_gen[0][k])).collect()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order()).map(ElementId)
    }

    pub fn matrix(&self, g: ElementId) -> &Mat3 {
        &self.elements[g.0]
    }

    pub fn find(&self, m: &Mat3) -> Option<ElementId> {
        self.lookup.get(m).copied().map(ElementId)
    }

    pub fn element(&self, g: ElementId) -> GroupElement {
        GroupElement { id: g, matrix: self.matrix(g).clone(), word: self.word(g) }
    }

    /// Shortest word (generator indices) evaluating to `g`.
    pub fn word(&self, g: ElementId) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = g.0;
        while let Some((p, k)) = self.parent[cur] {
            word.push(k);
            cur = p;
        }
        word.reverse();
        word
    }

    pub fn word_string(&self, g: ElementId) -> String {
        let word = self.word(g);
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|&k| self.generator_names[k].as_str()).collect()
    }

    /// Multiplies one generator on the right.
    pub fn mul_gen(&self, a: ElementId, k: usize) -> ElementId {
        ElementId(self.right_gen[a.0][k])
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        let n = self.order();
        if let Some(t) = &self.table {
            return ElementId(t[a.0 * n + b.0] as usize);
        }
        let mut cur = a.0;
        for k in self.word(b) {
            cur = self.right_gen[cur][k];
        }
        ElementId(cur)
    }

    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inverse[a.0])
    }

    pub fn product(&self, items: &[ElementId]) -> ElementId {
        items.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }

    pub fn pow(&self, a: ElementId, e: usize) -> ElementId {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn evaluate_word(&self, word: &[usize]) -> ElementId {
        word.iter().fold(self.identity(), |acc, &k| self.mul_gen(acc, k))
    }

    /// Least `k ≥ 1` with `gᵏ = e`.
    pub fn element_order(&self, g: ElementId) -> usize {
        let mut k = 1;
        let mut cur = g;
        while cur != self.identity() {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    pub fn involutions(&self) -> Vec<ElementId> {
        self.ids().filter(|&g| g != self.identity() && self.mul(g, g) == self.identity()).collect()
    }

    /// Parses words such as `s0s2`, `(s1s2)^2s0s1` or `e`.
    pub fn parse_word(&self, text: &str) -> Result<ElementId> {
        let compact: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let g = self.parse_sequence(&compact, &mut pos, text)?;
        if pos != compact.len() {
            return Err(Error::Parse(format!("unexpected {:?} in word {text:?}", compact[pos])));
        }
        Ok(g)
    }

    fn parse_sequence(&self, s: &[char], pos: &mut usize, text: &str) -> Result<ElementId> {
        let mut acc = self.identity();
        while *pos < s.len() && s[*pos] != ')' {
            let mut factor = if s[*pos] == '(' {
                *pos += 1;
                let inner = self.parse_sequence(s, pos, text)?;
                if s.get(*pos) != Some(&')') {
                    return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
                }
                *pos += 1;
                inner
            } else {
                self.parse_atom(s, pos, text)?
            };
            if s.get(*pos) == Some(&'^') {
                *pos += 1;
                let start = *pos;
                while *pos < s.len() && s[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                let digits: String = s[start..*pos].iter().collect();
                let e: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
                factor = self.pow(factor, e);
            }
            acc = self.mul(acc, factor);
        }
        Ok(acc)
    }

    fn parse_atom(&self, s: &[char], pos: &mut usize, text: &str) -> Result<ElementId> {
        let rest: String = s[*pos..].iter().collect();
        // Longest matching generator name wins.
        let best = self
            .generator_names
            .iter()
            .enumerate()
            .filter(|(_, name)| rest.starts_with(name.as_str()))
            .max_by_key(|(_, name)| name.len());
        if let Some((k, name)) = best {
            *pos += name.chars().count();
            return Ok(self.generator_ids()[k]);
        }
        if s[*pos] == 'e' {
            *pos += 1;
            return Ok(self.identity());
        }
        Err(Error::Parse(format!("unknown generator at {rest:?} in {text:?}")))
    }

    /// Images of every element under the map sending generator `k` to
    /// `images[k]`, or an error if that map is not a homomorphism.
    pub fn homomorphism_images(&self, images: &[Mat3]) -> Result<Vec<Mat3>> {
        if images.len() != self.generators.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                self.generators.len()
            )));
        }
        let mut out: Vec<Mat3> = Vec::with_capacity(self.order());
        out.push(Mat3::identity());
        for x in 1..self.order() {
            let (p, k) = self.parent[x].expect("parent");
            out.push(out[p].mul(&images[k]));
        }
        // Every Cayley-graph edge must be respected, not just the BFS tree.
        for x in 0..self.order() {
            for (k, img) in images.iter().enumerate() {
                if out[self.right_gen[x][k]] != out[x].mul(img) {
                    return Err(Error::NotAHomomorphism(format!(
                        "relation broken at {} · {}",
                        self.word_string(ElementId(x)),
                        self.generator_names[k]
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// A subgroup, stored as a membership mask over its parent's elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<bool>,
    elements: Vec<ElementId>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: ElementId) -> bool {
        self.members[g.0]
    }

    /// Members in parent order.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<bool> = self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect();
        Subgroup::from_mask(members)
    }

    fn from_mask(members: Vec<bool>) -> Subgroup {
        let elements = members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(ElementId(i)))
            .collect();
        Subgroup { members, elements }
    }

    pub fn whole(group: &FiniteGroup) -> Subgroup {
        Subgroup::from_mask(vec![true; group.order()])
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(group: &FiniteGroup, gens: &[ElementId]) -> Subgroup {
    let mut members = vec![false; group.order()];
    members[0] = true;
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if !members[y.0] {
                members[y.0] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_mask(members)
}

/// Right cosets `H·γ` of a subgroup, in the group's element order.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    subgroup: Subgroup,
    representatives: Vec<ElementId>,
    coset_of: Vec<usize>,
}

impl CosetDecomposition {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Number of cosets, `[G : H]`.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[ElementId] {
        &self.representatives
    }

    pub fn representative(&self, j: usize) -> ElementId {
        self.representatives[j]
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: ElementId) -> usize {
        self.coset_of[g.0]
    }

    pub fn members(&self, j: usize) -> impl Iterator<Item = ElementId> + '_ {
        self.coset_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == j)
            .map(|(i, _)| ElementId(i))
    }
}

/// Each coset is represented by its first element in group order, so the
/// coset `H` itself comes first with the identity as representative.
pub fn right_cosets(group: &FiniteGroup, subgroup: &Subgroup) -> CosetDecomposition {
    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; group.order()];
    let mut representatives = Vec::new();
    for g in group.ids() {
        if coset_of[g.0] != UNSET {
            continue;
        }
        let j = representatives.len();
        representatives.push(g);
        for &h in subgroup.elements() {
            coset_of[group.mul(h, g).0] = j;
        }
    }
    CosetDecomposition { subgroup: subgroup.clone(), representatives, coset_of }
}

/// Does `sources[k] ↦ targets[k]` extend to an automorphism of the group?
///
/// Walks the Cayley graph of the sources, assigning images along the way;
/// the map is a homomorphism iff every edge agrees, and an automorphism iff
/// it is also injective.
pub fn extends_to_automorphism(group: &FiniteGroup, pairs: &[(ElementId, ElementId)]) -> Result<bool> {
    let sources: Vec<ElementId> = pairs.iter().map(|p| p.0).collect();
    if subgroup_generated(group, &sources).order() != group.order() {
        return Err(Error::NotGenerating);
    }
    const UNSET: usize = usize::MAX;
    let mut image = vec![UNSET; group.order()];
    image[0] = 0;
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = ElementId(image[x.0]);
        for &(s, t) in pairs {
            let y = group.mul(x, s);
            let fy = group.mul(fx, t);
            if image[y.0] == UNSET {
                image[y.0] = fy.0;
                queue.push_back(y);
            } else if image[y.0] != fy.0 {
                return Ok(false);
            }
        }
    }
    let mut hit = vec![false; group.order()];
    for &i in &image {
        if std::mem::replace(&mut hit[i], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3;

    fn h3_phi2() -> FiniteGroup {
        let rep = crate::wythoff::builtin_representation("phi2").unwrap();
        FiniteGroup::generate(rep.generator_images(), &h3::generator_names(), DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn h3_has_order_120() {
        assert_eq!(h3_phi2().order(), 120);
        assert_eq!(h3::group().order(), 120);
    }

    #[test]
    fn trivial_and_klein() {
        assert_eq!(generate_group(&[Mat3::identity()]).unwrap().order(), 1);
        assert_eq!(generate_group(&[]).unwrap().order(), 1);
        let rep = crate::wythoff::builtin_representation("phi2").unwrap();
        let g = rep.generator_images();
        let klein = generate_group(&[g[0].clone(), g[2].clone()]).unwrap();
        assert_eq!(klein.order(), 4);
        // Oracle: the products of two commuting distinct involutions.
        let (a, b) = (&g[0], &g[2]);
        assert_eq!(a.mul(b), b.mul(a));
        let mut brute = vec![Mat3::identity(), a.clone(), b.clone(), a.mul(b)];
        brute.dedup();
        assert_eq!(brute.len(), 4);
    }

    #[test]
    fn rejects_bad_generators() {
        let two = Mat3::identity().scale(&crate::exactnum::QSqrt5::from_int(2));
        assert!(matches!(generate_group(&[two]), Err(Error::NonOrthogonalGenerator { index: 0 })));
        let rep = crate::wythoff::builtin_representation("phi1").unwrap();
        let names = h3::generator_names();
        assert!(matches!(
            FiniteGroup::generate(rep.generator_images(), &names, 50),
            Err(Error::GroupTooLarge { bound: 50 })
        ));
    }

    #[test]
    fn element_orders() {
        let g = h3::group();
        let s = g.generator_ids();
        assert_eq!(g.element_order(g.identity()), 1);
        assert_eq!(g.element_order(g.mul(s[1], s[2])), 5);
        assert_eq!(g.element_order(g.mul(s[0], s[1])), 3);
        assert_eq!(g.element_order(g.mul(s[0], s[2])), 2);
        assert_eq!(g.involutions().len(), 31);
    }

    #[test]
    fn words_are_sound_and_shortest() {
        let g = h3::group();
        let gens = g.generator_matrices();
        for id in g.ids() {
            let m = g.word(id).iter().fold(Mat3::identity(), |acc, &k| acc.mul(&gens[k]));
            assert_eq!(&m, g.matrix(id));
            assert_eq!(g.evaluate_word(&g.word(id)), id);
        }
        // BFS order means word lengths never decrease.
        let lens: Vec<usize> = g.ids().map(|id| g.word(id).len()).collect();
        assert!(lens.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*lens.last().unwrap(), 15);
    }

    #[test]
    fn multiplication_matches_matrices() {
        let g = h3::group();
        for a in g.ids().step_by(7) {
            for b in g.ids().step_by(5) {
                assert_eq!(g.matrix(g.mul(a, b)), &g.matrix(a).mul(g.matrix(b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn word_parser() {
        let g = h3::group();
        let s = g.generator_ids();
        assert_eq!(g.parse_word("e").unwrap(), g.identity());
        assert_eq!(g.parse_word("s0s2").unwrap(), g.mul(s[0], s[2]));
        let w = g.parse_word("(s1s2)^2s0").unwrap();
        assert_eq!(w, g.product(&[s[1], s[2], s[1], s[2], s[0]]));
        assert!(g.parse_word("s3").is_err());
        assert!(g.parse_word("(s1").is_err());
    }

    #[test]
    fn subgroups() {
        let g = h3::group();
        let s = g.generator_ids();
        assert_eq!(subgroup_generated(&g, &[]).order(), 1);
        assert_eq!(subgroup_generated(&g, &[s[1]]).order(), 2);
        assert_eq!(subgroup_generated(&g, &[s[1], s[0]]).order(), 6);
        assert_eq!(subgroup_generated(&g, &[s[1], s[2]]).order(), 10);
        assert_eq!(subgroup_generated(&g, &s).order(), 120);
    }

    #[test]
    fn coset_decompositions() {
        let g = h3::group();
        let s = g.generator_ids();
        let whole = Subgroup::whole(&g);
        assert_eq!(right_cosets(&g, &whole).len(), 1);
        // T = (s2, s1, s0): Γ0 = ⟨s1, s0⟩, Γ2 = ⟨s2, s1⟩.
        let g0 = subgroup_generated(&g, &[s[1], s[0]]);
        let g2 = subgroup_generated(&g, &[s[2], s[1]]);
        for (h, n) in [(&g0, 20), (&g2, 12)] {
            let dec = right_cosets(&g, h);
            assert_eq!(dec.len(), n);
            assert_eq!(dec.len() * h.order(), g.order());
            assert_eq!(dec.representative(0), g.identity());
            for j in 0..dec.len() {
                assert_eq!(dec.coset_of(dec.representative(j)), j);
                assert_eq!(dec.members(j).count(), h.order());
            }
        }
    }

    #[test]
    fn automorphism_tests() {
        let g = h3::group();
        let s = g.generator_ids();
        let id: Vec<_> = s.iter().map(|&x| (x, x)).collect();
        assert!(extends_to_automorphism(&g, &id).unwrap());
        let reversed = vec![(s[0], s[2]), (s[1], s[1]), (s[2], s[0])];
        assert!(!extends_to_automorphism(&g, &reversed).unwrap());
        for c in g.ids().step_by(11) {
            let ci = g.inv(c);
            let inner: Vec<_> = s.iter().map(|&x| (x, g.product(&[c, x, ci]))).collect();
            assert!(extends_to_automorphism(&g, &inner).unwrap());
        }
        assert!(matches!(extends_to_automorphism(&g, &[(s[0], s[0])]), Err(Error::NotGenerating)));
    }

    #[test]
    fn homomorphism_check_catches_broken_relations() {
        let g = h3::group();
        let rep = crate::wythoff::builtin_representation("phi2").unwrap();
        assert!(g.homomorphism_images(rep.generator_images()).is_ok());
        // Swapping two generators breaks (s0s1)^3 = e.
        let imgs = rep.generator_images();
        let swapped = [imgs[2].clone(), imgs[1].clone(), imgs[0].clone()];
        assert!(g.homomorphism_images(&swapped).is_err());
    }

    #[test]
    fn closure_idempotent() {
        let g = h3::group();
        let all: Vec<Mat3> = g.ids().map(|id| g.matrix(id).clone()).collect();
        let again = generate_group(&all).unwrap();
        assert_eq!(again.order(), g.order());
        for m in &all {
            assert!(again.find(m).is_some());
        }
    }

    proptest::proptest! {
        #[test]
        fn lagrange(a in 0usize..120, b in 0usize..120) {
            let g = h3::group();
            let h = subgroup_generated(&g, &[ElementId(a), ElementId(b)]);
            proptest::prop_assert_eq!(g.order() % h.order(), 0);
            let dec = right_cosets(&g, &h);
            let total: usize = (0..dec.len()).map(|j| dec.members(j).count()).sum();
            proptest::prop_assert_eq!(total, g.order());
        }
    }
}
