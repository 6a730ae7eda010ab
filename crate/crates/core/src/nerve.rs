//! The category of elements of the positive nerve `∫N⁺I`, and the
//! length-truncated category of elements of the full nerve `∫N C`.
//!
//! Objects are composable sequences of arrows (outermost-last, matching the
//! left-to-right reading of a string `X₀ → X₁ → …`). In the positive case
//! the arrows are non-identities, so sequences over an inverse category are
//! bounded by the maximal degree and the whole thing stays finite. A
//! morphism `s → t` exists when `t` arises from `s` by discarding a prefix
//! and/or suffix and composing adjacent runs of what remains; its witness is
//! a vertex map into `s`, which is also the morphism's image under the shape
//! functor to the (opposite of the) semisimplex category.

pub mod dot;

use crate::fincat::{FinCategory, MorId, MorSpec, ObjId};
use crate::report::Report;
use crate::simplex::{monotone_maps, SimplexMap};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("base category is not inverse; the positive nerve would not be finite:\n{0}")]
    NotInverse(Report),
}

/// A composable chain of arrows starting at `start`. Length 0 is the bare
/// object. `arrows[k]` feeds into `arrows[k+1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq {
    pub start: ObjId,
    pub arrows: Vec<MorId>,
}

impl Seq {
    pub fn empty(start: ObjId) -> Self {
        Seq {
            start,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Vertices `X₀ … Xₙ` of the chain.
    pub fn vertices(&self, cat: &FinCategory) -> Vec<ObjId> {
        let mut v = Vec::with_capacity(self.arrows.len() + 1);
        v.push(self.start);
        for &m in &self.arrows {
            v.push(cat.dst(m));
        }
        v
    }

    pub fn end(&self, cat: &FinCategory) -> ObjId {
        self.arrows.last().map_or(self.start, |&m| cat.dst(m))
    }

    /// Display label: the bare object for length 0, the arrow name for
    /// length 1, a tuple of arrow names beyond.
    pub fn label(&self, cat: &FinCategory) -> String {
        match self.arrows.len() {
            0 => cat.object_name(self.start).to_string(),
            1 => cat.morphism_name(self.arrows[0]).to_string(),
            _ => {
                let names: Vec<&str> = self
                    .arrows
                    .iter()
                    .map(|&m| cat.morphism_name(m))
                    .collect();
                format!("({})", names.join(","))
            }
        }
    }

    /// The face of this chain on the vertex positions selected by `map`
    /// (weakly monotone into `[len]`): runs between selected positions are
    /// composed, an empty run contributes an identity.
    pub fn face(&self, cat: &FinCategory, map: &SimplexMap) -> Seq {
        let verts = self.vertices(cat);
        let start = verts[map.apply(0)];
        let mut arrows = Vec::with_capacity(map.domain());
        for j in 0..map.domain() {
            let (a, b) = (map.apply(j), map.apply(j + 1));
            let run = &self.arrows[a..b];
            let at = verts[a];
            arrows.push(
                cat.compose_word(&reversed_word(run), at)
                    .expect("face runs compose"),
            );
        }
        Seq { start, arrows }
    }
}

/// `compose_word` takes outermost-first words; chain runs are stored
/// outermost-last.
fn reversed_word(run: &[MorId]) -> Vec<MorId> {
    run.iter().rev().copied().collect()
}

/// Witness for a morphism `s → t`: the vertex map `[len t] → [len s]`.
/// Injective in the positive nerve; weakly monotone once identities are in
/// play. Read in the semisimplex-opposite direction it is the image of the
/// morphism under the shape functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqWitness {
    pub map: SimplexMap,
}

impl SeqWitness {
    /// The retained interval of `s`: positions of the first and last chosen
    /// vertex.
    pub fn interval(&self) -> (usize, usize) {
        (self.map.apply(0), self.map.apply(self.map.domain()))
    }

    /// The runs of `s`-arrows composed into each `t`-arrow.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        (0..self.map.domain())
            .map(|j| (self.map.apply(j), self.map.apply(j + 1)))
            .collect()
    }
}

/// The category of elements of a nerve, materialized as its object list.
/// Homs are computed on demand from the witnesses.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    pub base: FinCategory,
    objects: Vec<Seq>,
    index: HashMap<Seq, usize>,
    /// Identities allowed in chains (the full-nerve variant).
    pub with_identities: bool,
    /// Length bound for the full-nerve variant.
    pub truncation: Option<usize>,
}

/// All composable chains of non-identity arrows, including the empty chain
/// at every object. Requires the base to pass the inverse check; otherwise
/// chains could cycle and the object set would be infinite.
pub fn positive_nerve_elements(cat: &FinCategory) -> Result<ElementsCategory, NerveError> {
    let report = crate::inverse::check_inverse(cat);
    if !report.is_empty() {
        return Err(NerveError::NotInverse(report));
    }
    let bound = cat.max_degree() as usize;
    Ok(enumerate(cat, false, bound, None))
}

/// All composable chains of length at most `k`, identities allowed.
/// Truncation is always explicit: the full object set is infinite as soon as
/// the base has an object.
pub fn nerve_elements_truncated(cat: &FinCategory, k: usize) -> ElementsCategory {
    enumerate(cat, true, k, Some(k))
}

fn enumerate(
    cat: &FinCategory,
    with_identities: bool,
    max_len: usize,
    truncation: Option<usize>,
) -> ElementsCategory {
    let mut objects: Vec<Seq> = Vec::new();
    let mut level: Vec<Seq> = cat.objects().map(Seq::empty).collect();
    for _len in 0..=max_len {
        level.sort();
        objects.extend(level.iter().cloned());
        let mut next = Vec::new();
        for s in &level {
            let end = s.end(cat);
            for m in cat.morphisms_from(end) {
                if with_identities || !cat.is_identity(m) {
                    let mut arrows = s.arrows.clone();
                    arrows.push(m);
                    next.push(Seq {
                        start: s.start,
                        arrows,
                    });
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    let index = objects
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    ElementsCategory {
        base: cat.clone(),
        objects,
        index,
        with_identities,
        truncation,
    }
}

impl ElementsCategory {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[Seq] {
        &self.objects
    }

    pub fn seq(&self, i: usize) -> &Seq {
        &self.objects[i]
    }

    pub fn position(&self, s: &Seq) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The shape of a sequence: its length, read as the object `[n]` of the
    /// (semi)simplex-opposite category.
    pub fn shape(&self, s: &Seq) -> usize {
        s.len()
    }

    /// The unique morphism witness `s → t`, if any. In the positive nerve
    /// the candidate vertex maps are the injective ones and at most one
    /// fits; with identities all weakly monotone maps compete and the least
    /// (lexicographically) witness is returned.
    pub fn seq_morphism(&self, s: &Seq, t: &Seq) -> Option<SeqWitness> {
        let mut all = self.seq_morphisms(s, t);
        if !self.with_identities {
            debug_assert!(all.len() <= 1, "positive nerve must be a preorder");
        }
        if all.is_empty() {
            None
        } else {
            Some(all.swap_remove(0))
        }
    }

    /// Every witness `s → t`, in lexicographic order of the vertex map.
    pub fn seq_morphisms(&self, s: &Seq, t: &Seq) -> Vec<SeqWitness> {
        if t.len() > s.len() && !self.with_identities {
            return Vec::new();
        }
        monotone_maps(t.len(), s.len())
            .into_iter()
            .filter(|map| self.with_identities || map.is_injective())
            .filter(|map| &s.face(&self.base, map) == t)
            .map(|map| SeqWitness { map })
            .collect()
    }

    /// All proper faces of `s` along injective vertex maps, paired with
    /// their witnesses. Ordered by (face size ascending, width, start).
    pub fn proper_faces(&self, s: &Seq) -> Vec<(SeqWitness, Seq)> {
        let n = s.len();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << (n + 1)) {
            let subset: Vec<usize> = (0..=n).filter(|&i| mask & (1 << i) != 0).collect();
            if subset.len() <= n {
                subsets.push(subset);
            }
        }
        subsets.sort_by_key(|sub| {
            (
                sub.len(),
                sub.last().unwrap() - sub.first().unwrap(),
                sub.clone(),
            )
        });
        subsets
            .into_iter()
            .map(|sub| {
                let map = SimplexMap::new(n, sub).expect("valid face map");
                let face = s.face(&self.base, &map);
                (SeqWitness { map }, face)
            })
            .collect()
    }

    /// Positions of the length-1 identity chains (the carriers of the
    /// equivalence condition when identities are in play).
    pub fn identity_seqs(&self) -> Vec<usize> {
        self.objects
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == 1 && self.base.is_identity(s.arrows[0]))
            .map(|(i, _)| i)
            .collect()
    }

    /// Materialize as an explicit category: one object per sequence
    /// (degree = length), one morphism per witness.
    pub fn to_fincategory(&self) -> FinCategory {
        self.to_fincategory_with_witnesses().0
    }

    /// As [`ElementsCategory::to_fincategory`], also returning the witness
    /// map behind each morphism.
    pub fn to_fincategory_with_witnesses(&self) -> (FinCategory, Vec<SimplexMap>) {
        let objects: Vec<(String, u64)> = self
            .objects
            .iter()
            .map(|s| (s.label(&self.base), s.len() as u64))
            .collect();
        let mut witnesses = Vec::new();
        let mut morphisms: Vec<MorSpec<SimplexMap>> = Vec::new();
        for (i, s) in self.objects.iter().enumerate() {
            for (j, t) in self.objects.iter().enumerate() {
                for w in self.seq_morphisms(s, t) {
                    let identity = i == j && w.map.is_identity();
                    witnesses.push(w.map.clone());
                    morphisms.push(MorSpec {
                        name: format!("{}:{}->{}", w.map, i, j),
                        src: i,
                        dst: j,
                        identity,
                        payload: w.map,
                    });
                }
            }
        }
        // witness composition: s→t by α, t→r by β gives s→r by α∘β
        let cat = FinCategory::from_parts(objects, morphisms, |g: &SimplexMap, f: &SimplexMap| {
            f.compose(g).expect("witness maps compose")
        });
        (cat, witnesses)
    }

    /// Hasse-style DOT rendering; degeneracy-type morphisms (non-injective
    /// witnesses) are the marked, dashed edges.
    pub fn dot(&self, title: &str) -> String {
        let (cat, witnesses) = self.to_fincategory_with_witnesses();
        let marked = witnesses
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_injective())
            .map(|(i, _)| i)
            .collect();
        dot::render(&cat, &marked, title)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{build_category, CategorySpec};

    fn example_e() -> FinCategory {
        let spec: CategorySpec = serde_json::from_str(
            r#"{"objects":[{"name":"x","degree":0},{"name":"y","degree":1},{"name":"z","degree":2}],
                "generators":[{"name":"u","src":"y","dst":"x"},{"name":"v","src":"y","dst":"x"},
                              {"name":"w","src":"z","dst":"y"}],
                "relations":[[["u","w"],["v","w"]]]}"#,
        )
        .unwrap();
        build_category(&spec, 4).unwrap()
    }

    fn terminal() -> FinCategory {
        let spec: CategorySpec =
            serde_json::from_str(r#"{"objects":[{"name":"pt","degree":0}]}"#).unwrap();
        build_category(&spec, 1).unwrap()
    }

    #[test]
    fn positive_nerve_of_e_has_nine_objects() {
        let e = example_e();
        let n = positive_nerve_elements(&e).unwrap();
        assert_eq!(n.len(), 9);
        let labels: Vec<String> = n.objects().iter().map(|s| s.label(&e)).collect();
        assert_eq!(
            labels,
            vec!["x", "y", "z", "u", "v", "w", "u∘w", "(w,u)", "(w,v)"]
        );
    }

    #[test]
    fn positive_nerve_of_terminal_is_terminal() {
        let n = positive_nerve_elements(&terminal()).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n.seq(0).len(), 0);
    }

    #[test]
    fn non_inverse_base_is_rejected() {
        let spec: CategorySpec = serde_json::from_str(
            r#"{"objects":[{"name":"x","degree":0},{"name":"y","degree":1}],
                "generators":[{"name":"f","src":"x","dst":"y"}]}"#,
        )
        .unwrap();
        let c = build_category(&spec, 2).unwrap();
        assert!(matches!(
            positive_nerve_elements(&c),
            Err(NerveError::NotInverse(_))
        ));
    }

    #[test]
    fn seq_morphism_composes_and_discards() {
        let e = example_e();
        let n = positive_nerve_elements(&e).unwrap();
        let w = e.find_morphism("w").unwrap();
        let u = e.find_morphism("u").unwrap();
        let v = e.find_morphism("v").unwrap();
        let uw = e.find_morphism("u∘w").unwrap();
        let z = e.find_object("z").unwrap();

        let wu = Seq { start: z, arrows: vec![w, u] };
        let s_uw = Seq { start: z, arrows: vec![uw] };
        let s_v = Seq { start: e.find_object("y").unwrap(), arrows: vec![v] };

        // composing the two arrows
        let witness = n.seq_morphism(&wu, &s_uw).unwrap();
        assert_eq!(witness.map.values(), &[0, 2]);
        assert_eq!(witness.interval(), (0, 2));
        assert_eq!(witness.runs(), vec![(0, 2)]);

        // v is not a composite of a sub-run of (w,u)
        assert!(n.seq_morphism(&wu, &s_v).is_none());

        // identity witness
        let idw = n.seq_morphism(&wu, &wu).unwrap();
        assert!(idw.map.is_identity());
    }

    #[test]
    fn shape_is_the_length() {
        let e = example_e();
        let n = positive_nerve_elements(&e).unwrap();
        let shapes: Vec<usize> = n.objects().iter().map(|s| n.shape(s)).collect();
        assert_eq!(shapes, vec![0, 0, 0, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn truncated_nerve_counts() {
        // terminal category, one object per length 0..=3
        let n = nerve_elements_truncated(&terminal(), 3);
        assert_eq!(n.len(), 4);

        // E at k Exactly=1: 3 empty + 3 identity + 4 non-identity chains
        let e = example_e();
        let n = nerve_elements_truncated(&e, 1);
        assert_eq!(n.len(), 10);
        assert_eq!(n.identity_seqs().len(), 3);

        // k = 0 recovers the object set
        let n = nerve_elements_truncated(&e, 0);
        assert_eq!(n.len(), e.object_count());
    }

    #[test]
    fn truncated_nerve_morphisms_use_degeneracies() {
        let t = terminal();
        let n = nerve_elements_truncated(&t, 2);
        let id = t.identity(0);
        let pt = Seq::empty(0);
        let one = Seq { start: 0, arrows: vec![id] };
        // a degenerate witness from the point up to the identity chain
        assert!(n.seq_morphism(&pt, &one).is_some());
        assert_eq!(n.seq_morphisms(&one, &pt).len(), 2);
    }

    #[test]
    fn proper_faces_of_a_triangle() {
        let e = example_e();
        let n = positive_nerve_elements(&e).unwrap();
        let wu = Seq {
            start: e.find_object("z").unwrap(),
            arrows: vec![e.find_morphism("w").unwrap(), e.find_morphism("u").unwrap()],
        };
        let faces: Vec<String> = n
            .proper_faces(&wu)
            .iter()
            .map(|(_, f)| f.label(&e))
            .collect();
        assert_eq!(faces, vec!["z", "y", "x", "w", "u", "u∘w"]);
    }

    #[test]
    fn elements_category_materializes() {
        let e = example_e();
        let n = positive_nerve_elements(&e).unwrap();
        let cat = n.to_fincategory();
        assert_eq!(cat.object_count(), 9);
        assert!(crate::inverse::check_inverse(&cat).is_empty());
    }
}
