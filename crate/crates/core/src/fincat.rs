//! Explicit finite categories, built either by saturating a finite
//! presentation (generators and relations) or directly from enumerated
//! morphism data.
//!
//! Saturation enumerates all composable generator words up to an explicit
//! length bound in length-then-lexicographic order (lexicographic on
//! generator names, so the result does not depend on declaration order),
//! merges them into congruence classes with a union-find, and takes the
//! least word of each class as its canonical representative. Identities are
//! synthetic: one is added per object and none can be declared.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("ill-formed relation #{index}: {reason}")]
    IllFormedRelation { index: usize, reason: String },
    #[error(
        "saturation bound {bound} exceeded: composable word `{word}` of length {len}; \
         the presentation is not inverse-bounded at this bound"
    )]
    SaturationBound {
        bound: usize,
        word: String,
        len: usize,
    },
    #[error("degree synthesis failed: the generator graph has a cycle through `{0}`")]
    DegreeCycle(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("morphisms are not composable: target of `{f}` is not the source of `{g}`")]
pub struct NotComposable {
    pub g: String,
    pub f: String,
}

/// A finite presentation: named objects with optional degrees, generating
/// arrows, and relations between parallel composable generator words.
/// Words are written outermost-first: `["u","w"]` means `u ∘ w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: Vec<ObjectSpec>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    #[serde(default)]
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ObjectData {
    name: String,
    degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorData {
    name: String,
    src: ObjId,
    dst: ObjId,
    identity: bool,
    /// One representative generator word (morphism ids of generators),
    /// outermost-first. Empty for identities.
    witness: Vec<MorId>,
}

/// An explicit finite category: indexed objects with degrees, indexed
/// morphisms, hom sets, and a total composition table on composable pairs.
/// Immutable once built; queries are read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct FinCategory {
    objects: Vec<ObjectData>,
    morphisms: Vec<MorData>,
    identities: Vec<MorId>,
    hom: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
    /// `(g, f) -> g ∘ f` for composable non-identity pairs.
    table: HashMap<(MorId, MorId), MorId>,
    /// Atomic morphisms by name: the presentation's generators, or every
    /// non-identity for directly built categories.
    generators: BTreeMap<String, MorId>,
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x].name
    }

    pub fn degree(&self, x: ObjId) -> u64 {
        self.objects[x].degree
    }

    pub fn max_degree(&self) -> u64 {
        self.objects.iter().map(|o| o.degree).max().unwrap_or(0)
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m].dst
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.morphisms[m].identity
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// The morphism an atomic (generator) name denotes; survives class
    /// merging, unlike [`FinCategory::find_morphism`] on the display name.
    pub fn generator(&self, name: &str) -> Option<MorId> {
        self.generators.get(name).copied()
    }

    /// Representative generator word for `m` (ids of generator morphisms,
    /// outermost-first). Empty for identities.
    pub fn witness(&self, m: MorId) -> &[MorId] {
        &self.morphisms[m].witness
    }

    /// Witness word rendered with generator names, outermost-first.
    pub fn witness_names(&self, m: MorId) -> Vec<&str> {
        self.morphisms[m]
            .witness
            .iter()
            .map(|&g| self.morphism_name(g))
            .collect()
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.hom.get(&(x, y)).map_or(&[], |v| v.as_slice())
    }

    pub fn morphisms_from(&self, x: ObjId) -> Vec<MorId> {
        self.objects()
            .flat_map(|y| self.hom(x, y).iter().copied())
            .collect()
    }

    pub fn non_identities(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(|&m| !self.is_identity(m))
    }

    /// `g ∘ f`; requires `target(f) = source(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId, NotComposable> {
        if self.dst(f) != self.src(g) {
            return Err(NotComposable {
                g: self.morphism_name(g).to_string(),
                f: self.morphism_name(f).to_string(),
            });
        }
        if self.is_identity(g) {
            return Ok(f);
        }
        if self.is_identity(f) {
            return Ok(g);
        }
        Ok(*self
            .table
            .get(&(g, f))
            .expect("composition table is total on composable pairs"))
    }

    /// Fold a word of morphisms (outermost-first) down to one morphism.
    /// Returns the identity of `at` for the empty word.
    pub fn compose_word(&self, word: &[MorId], at: ObjId) -> Result<MorId, NotComposable> {
        match word.split_last() {
            None => Ok(self.identity(at)),
            Some((&first, rest)) => {
                let mut acc = first;
                for &g in rest.iter().rev() {
                    acc = self.compose(g, acc)?;
                }
                Ok(acc)
            }
        }
    }

    /// The opposite category. Sources and targets swap, witnesses reverse,
    /// degrees are kept as-is.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorData {
                name: m.name.clone(),
                src: m.dst,
                dst: m.src,
                identity: m.identity,
                witness: m.witness.iter().rev().copied().collect(),
            })
            .collect();
        let hom = self
            .hom
            .iter()
            .map(|(&(x, y), v)| ((y, x), v.clone()))
            .collect();
        let table = self
            .table
            .iter()
            .map(|(&(g, f), &c)| ((f, g), c))
            .collect();
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            hom,
            table,
            generators: self.generators.clone(),
        }
    }

    /// Full subcategory on `keep` (deduplicated, sorted). Returns the new
    /// category plus object and morphism maps back into `self`.
    pub fn restrict(&self, keep: &[ObjId]) -> (FinCategory, Vec<ObjId>, Vec<MorId>) {
        let mut object_map: Vec<ObjId> = keep.to_vec();
        object_map.sort_unstable();
        object_map.dedup();
        let obj_new: HashMap<ObjId, ObjId> = object_map
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();

        let mut mor_map: Vec<MorId> = Vec::new();
        let mut mor_new: HashMap<MorId, MorId> = HashMap::new();
        for m in self.morphisms() {
            if obj_new.contains_key(&self.src(m)) && obj_new.contains_key(&self.dst(m)) {
                mor_new.insert(m, mor_map.len());
                mor_map.push(m);
            }
        }

        let objects = object_map
            .iter()
            .map(|&o| self.objects[o].clone())
            .collect();
        let morphisms = mor_map
            .iter()
            .map(|&m| {
                let d = &self.morphisms[m];
                // a witness may pass through a dropped object; the morphism
                // then counts as atomic in the subcategory
                let witness = if d.identity {
                    vec![]
                } else if d.witness.iter().all(|g| mor_new.contains_key(g)) {
                    d.witness.iter().map(|g| mor_new[g]).collect()
                } else {
                    vec![mor_new[&m]]
                };
                MorData {
                    name: d.name.clone(),
                    src: obj_new[&d.src],
                    dst: obj_new[&d.dst],
                    identity: d.identity,
                    witness,
                }
            })
            .collect();
        let identities = object_map
            .iter()
            .map(|&o| mor_new[&self.identities[o]])
            .collect();
        let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for (&(x, y), v) in &self.hom {
            if let (Some(&nx), Some(&ny)) = (obj_new.get(&x), obj_new.get(&y)) {
                hom.insert((nx, ny), v.iter().map(|m| mor_new[m]).collect());
            }
        }
        let table = self
            .table
            .iter()
            .filter_map(|(&(g, f), &c)| {
                Some(((*mor_new.get(&g)?, *mor_new.get(&f)?), mor_new[&c]))
            })
            .collect();
        let generators = self
            .generators
            .iter()
            .filter_map(|(name, m)| Some((name.clone(), *mor_new.get(m)?)))
            .collect();
        (
            FinCategory {
                objects,
                morphisms,
                identities,
                hom,
                table,
                generators,
            },
            object_map,
            mor_map,
        )
    }

    /// Build a category from enumerated morphism data. Each morphism carries
    /// a payload; `compose` on payloads must land back in the enumerated set.
    /// Used for categories given semantically (truncations of Δ, nerves,
    /// iota extensions) rather than by presentation.
    pub fn from_parts<P, F>(
        objects: Vec<(String, u64)>,
        morphisms: Vec<MorSpec<P>>,
        compose: F,
    ) -> FinCategory
    where
        P: Clone + Eq + std::hash::Hash,
        F: Fn(&P, &P) -> P,
    {
        let objects: Vec<ObjectData> = objects
            .into_iter()
            .map(|(name, degree)| ObjectData { name, degree })
            .collect();
        let mut index: HashMap<(ObjId, ObjId, P), MorId> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            let prev = index.insert((m.src, m.dst, m.payload.clone()), i);
            assert!(prev.is_none(), "duplicate morphism payload in from_parts");
        }
        let mut identities = vec![usize::MAX; objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if m.identity {
                assert_eq!(m.src, m.dst, "identity with distinct endpoints");
                identities[m.src] = i;
            }
        }
        assert!(
            identities.iter().all(|&i| i != usize::MAX),
            "every object needs an identity morphism"
        );

        let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        let mut by_src: Vec<Vec<MorId>> = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            hom.entry((m.src, m.dst)).or_default().push(i);
            if !m.identity {
                by_src[m.src].push(i);
            }
        }
        let mut table = HashMap::new();
        for (f, fm) in morphisms.iter().enumerate() {
            if fm.identity {
                continue;
            }
            for &g in &by_src[fm.dst] {
                let gm = &morphisms[g];
                let c = compose(&gm.payload, &fm.payload);
                let cid = *index
                    .get(&(fm.src, gm.dst, c))
                    .expect("composite payload missing from enumerated morphisms");
                table.insert((g, f), cid);
            }
        }
        let morphisms: Vec<MorData> = morphisms
            .into_iter()
            .enumerate()
            .map(|(i, m)| MorData {
                name: m.name,
                src: m.src,
                dst: m.dst,
                identity: m.identity,
                witness: if m.identity { vec![] } else { vec![i] },
            })
            .collect();
        let generators: BTreeMap<String, MorId> = morphisms
            .iter()
            .enumerate()
            .filter(|(_, m): &(usize, &MorData)| !m.identity)
            .map(|(i, m)| (m.name.clone(), i))
            .collect();
        FinCategory {
            objects,
            morphisms,
            identities,
            hom,
            table,
            generators,
        }
    }
}

/// Input row for [`FinCategory::from_parts`].
pub struct MorSpec<P> {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
    pub identity: bool,
    pub payload: P,
}

// ---------------------------------------------------------------------------
// Saturation of a presentation
// ---------------------------------------------------------------------------

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so representatives are stable
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Saturate a presentation into an explicit [`FinCategory`].
///
/// Morphisms are congruence classes of composable generator words; the
/// congruence is generated by the relations and closed under one-generator
/// extension on both sides. Any composable word longer than
/// `max_word_length` aborts with [`BuildError::SaturationBound`]. If any
/// object omits its degree, degrees are synthesized for all objects by
/// longest-path layering over the generator graph.
pub fn build_category(spec: &CategorySpec, max_word_length: usize) -> Result<FinCategory, BuildError> {
    let n_obj = spec.objects.len();
    let mut obj_ids: HashMap<&str, ObjId> = HashMap::new();
    for (i, o) in spec.objects.iter().enumerate() {
        if obj_ids.insert(o.name.as_str(), i).is_some() {
            return Err(BuildError::DuplicateName(o.name.clone()));
        }
    }

    // generators, with a name-based rank for canonical word comparison
    struct Gen {
        name: String,
        src: ObjId,
        dst: ObjId,
    }
    let mut gens: Vec<Gen> = Vec::new();
    let mut gen_ids: HashMap<&str, usize> = HashMap::new();
    for g in &spec.generators {
        if obj_ids.contains_key(g.name.as_str()) || gen_ids.insert(g.name.as_str(), gens.len()).is_some()
        {
            return Err(BuildError::DuplicateName(g.name.clone()));
        }
        gens.push(Gen {
            name: g.name.clone(),
            src: *obj_ids
                .get(g.src.as_str())
                .ok_or_else(|| BuildError::UnknownObject(g.src.clone()))?,
            dst: *obj_ids
                .get(g.dst.as_str())
                .ok_or_else(|| BuildError::UnknownObject(g.dst.clone()))?,
        });
    }
    let mut rank_order: Vec<usize> = (0..gens.len()).collect();
    rank_order.sort_by(|&a, &b| gens[a].name.cmp(&gens[b].name));
    let mut rank = vec![0usize; gens.len()];
    for (r, &g) in rank_order.iter().enumerate() {
        rank[g] = r;
    }

    if max_word_length == 0 && !gens.is_empty() {
        return Err(BuildError::SaturationBound {
            bound: 0,
            word: gens[0].name.clone(),
            len: 1,
        });
    }

    let word_src = |w: &[usize]| gens[*w.last().unwrap()].src;
    let word_dst = |w: &[usize]| gens[w[0]].dst;
    let composable = |w: &[usize]| w.windows(2).all(|p| gens[p[0]].src == gens[p[1]].dst);
    let show = |w: &[usize]| {
        w.iter()
            .map(|&g| gens[g].name.as_str())
            .collect::<Vec<_>>()
            .join("∘")
    };

    // resolve relations
    let mut relations: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (index, (lhs, rhs)) in spec.relations.iter().enumerate() {
        let resolve = |word: &[String]| -> Result<Vec<usize>, BuildError> {
            word.iter()
                .map(|n| {
                    gen_ids
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| BuildError::UnknownGenerator(n.clone()))
                })
                .collect()
        };
        let (l, r) = (resolve(lhs)?, resolve(rhs)?);
        if l.is_empty() || r.is_empty() {
            return Err(BuildError::IllFormedRelation {
                index,
                reason: "relation words must be nonempty".into(),
            });
        }
        if !composable(&l) || !composable(&r) {
            return Err(BuildError::IllFormedRelation {
                index,
                reason: "relation word is not composable".into(),
            });
        }
        if word_src(&l) != word_src(&r) || word_dst(&l) != word_dst(&r) {
            return Err(BuildError::IllFormedRelation {
                index,
                reason: "relation words are not parallel".into(),
            });
        }
        for w in [&l, &r] {
            if w.len() > max_word_length {
                return Err(BuildError::SaturationBound {
                    bound: max_word_length,
                    word: show(w),
                    len: w.len(),
                });
            }
        }
        relations.push((l, r));
    }

    // enumerate all composable words up to the bound, by prefix extension
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut word_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut level: Vec<Vec<usize>> = (0..gens.len()).map(|g| vec![g]).collect();
    for w in &level {
        word_ids.insert(w.clone(), words.len());
        words.push(w.clone());
    }
    for _len in 2..=max_word_length.max(1) {
        let mut next = Vec::new();
        for w in &level {
            let head_dst = word_dst(w);
            for (g, gen) in gens.iter().enumerate() {
                if gen.src == head_dst {
                    let mut ext = Vec::with_capacity(w.len() + 1);
                    ext.push(g);
                    ext.extend_from_slice(w);
                    word_ids.insert(ext.clone(), words.len());
                    words.push(ext.clone());
                    next.push(ext);
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    // a word of length bound+1 signals a presentation that is not
    // inverse-bounded at this bound
    for w in &level {
        if w.len() == max_word_length {
            let head_dst = word_dst(w);
            for (g, gen) in gens.iter().enumerate() {
                if gen.src == head_dst {
                    let mut ext = vec![g];
                    ext.extend_from_slice(w);
                    return Err(BuildError::SaturationBound {
                        bound: max_word_length,
                        word: show(&ext),
                        len: ext.len(),
                    });
                }
            }
        }
    }

    // congruence closure
    let mut uf = UnionFind::new(words.len());
    let mut queue: VecDeque<(usize, usize)> = relations
        .iter()
        .map(|(l, r)| (word_ids[l], word_ids[r]))
        .collect();
    while let Some((a, b)) = queue.pop_front() {
        if !uf.union(a, b) {
            continue;
        }
        let (wa, wb) = (words[a].clone(), words[b].clone());
        for (g, gen) in gens.iter().enumerate() {
            // left extension g∘w
            if gen.src == word_dst(&wa) {
                let mut ea = vec![g];
                ea.extend_from_slice(&wa);
                let mut eb = vec![g];
                eb.extend_from_slice(&wb);
                queue.push_back((word_ids[&ea], word_ids[&eb]));
            }
            // right extension w∘g
            if gen.dst == word_src(&wa) {
                let mut ea = wa.clone();
                ea.push(g);
                let mut eb = wb.clone();
                eb.push(g);
                queue.push_back((word_ids[&ea], word_ids[&eb]));
            }
        }
    }

    // canonical representative per class: least (length, name-rank lex)
    let word_key = |w: &[usize]| (w.len(), w.iter().map(|&g| rank[g]).collect::<Vec<_>>());
    let mut class_rep: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..words.len() {
        let root = uf.find(i);
        let w = &words[i];
        let better = match class_rep.get(&root) {
            None => true,
            Some(cur) => word_key(w) < word_key(cur),
        };
        if better {
            class_rep.insert(root, w.clone());
        }
    }
    let mut reps: Vec<(usize, Vec<usize>)> = class_rep.into_iter().collect();
    reps.sort_by(|a, b| word_key(&a.1).cmp(&word_key(&b.1)));

    // assemble: identities first, then classes in canonical order
    let degrees = if spec.objects.iter().all(|o| o.degree.is_some()) {
        spec.objects.iter().map(|o| o.degree.unwrap()).collect()
    } else {
        let edges: Vec<(ObjId, ObjId)> = gens.iter().map(|g| (g.src, g.dst)).collect();
        longest_path_layering(n_obj, &edges)
            .map_err(|cycle_obj| BuildError::DegreeCycle(spec.objects[cycle_obj].name.clone()))?
    };
    let objects: Vec<ObjectData> = spec
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| ObjectData {
            name: o.name.clone(),
            degree: degrees[i],
        })
        .collect();

    let mut morphisms: Vec<MorData> = Vec::new();
    let mut identities = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        identities.push(morphisms.len());
        morphisms.push(MorData {
            name: format!("id_{}", o.name),
            src: i,
            dst: i,
            identity: true,
            witness: vec![],
        });
    }
    let mut class_mor: HashMap<usize, MorId> = HashMap::new();
    let mut gen_mor: Vec<MorId> = vec![0; gens.len()];
    for (root, repw) in &reps {
        class_mor.insert(*root, morphisms.len());
        morphisms.push(MorData {
            name: show(repw),
            src: word_src(repw),
            dst: word_dst(repw),
            identity: false,
            witness: vec![], // filled below once generator classes are known
        });
    }
    for g in 0..gens.len() {
        gen_mor[g] = class_mor[&uf.find(word_ids[&vec![g]])];
    }
    for (root, repw) in &reps {
        let mid = class_mor[root];
        morphisms[mid].witness = repw.iter().map(|&g| gen_mor[g]).collect();
    }

    let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        hom.entry((m.src, m.dst)).or_default().push(i);
    }
    let mut table = HashMap::new();
    for (root_f, wf) in &reps {
        let f = class_mor[root_f];
        for (root_g, wg) in &reps {
            if word_src(wg) != word_dst(wf) {
                continue;
            }
            let g = class_mor[root_g];
            let mut concat = wg.clone();
            concat.extend_from_slice(wf);
            debug_assert!(concat.len() <= max_word_length);
            let c = class_mor[&uf.find(word_ids[&concat])];
            table.insert((g, f), c);
        }
    }

    let generators = gens
        .iter()
        .enumerate()
        .map(|(g, gen)| (gen.name.clone(), gen_mor[g]))
        .collect();
    Ok(FinCategory {
        objects,
        morphisms,
        identities,
        hom,
        table,
        generators,
    })
}

/// Degree of a node = length of the longest edge path out of it.
/// Errors with a node on a cycle if the graph is not acyclic.
pub(crate) fn longest_path_layering(
    n: usize,
    edges: &[(ObjId, ObjId)],
) -> Result<Vec<u64>, ObjId> {
    // Kahn ordering on reversed edges: peel nodes with no outgoing edges
    let mut remaining = vec![0usize; n]; // unprocessed outgoing edges
    let mut incoming: Vec<Vec<ObjId>> = vec![Vec::new(); n];
    for &(s, d) in edges {
        remaining[s] += 1;
        incoming[d].push(s);
    }
    let mut queue: VecDeque<ObjId> = (0..n).filter(|&i| remaining[i] == 0).collect();
    let mut degree = vec![0u64; n];
    let mut seen = 0usize;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &p in &incoming[v] {
            degree[p] = degree[p].max(degree[v] + 1);
            remaining[p] -= 1;
            if remaining[p] == 0 {
                queue.push_back(p);
            }
        }
    }
    if seen != n {
        let stuck = (0..n).find(|&i| remaining[i] > 0).unwrap();
        return Err(stuck);
    }
    Ok(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_e() -> CategorySpec {
        CategorySpec {
            objects: vec![
                ObjectSpec { name: "x".into(), degree: Some(0) },
                ObjectSpec { name: "y".into(), degree: Some(1) },
                ObjectSpec { name: "z".into(), degree: Some(2) },
            ],
            generators: vec![
                GeneratorSpec { name: "u".into(), src: "y".into(), dst: "x".into() },
                GeneratorSpec { name: "v".into(), src: "y".into(), dst: "x".into() },
                GeneratorSpec { name: "w".into(), src: "z".into(), dst: "y".into() },
            ],
            relations: vec![(vec!["u".into(), "w".into()], vec!["v".into(), "w".into()])],
        }
    }

    #[test]
    fn saturates_the_running_example() {
        let e = build_category(&example_e(), 4).unwrap();
        assert_eq!(e.object_count(), 3);
        assert_eq!(e.morphism_count(), 7); // 3 identities + u, v, w, u∘w
        let non_id: Vec<_> = e.non_identities().map(|m| e.morphism_name(m)).collect();
        assert_eq!(non_id, vec!["u", "v", "w", "u∘w"]);
    }

    #[test]
    fn compose_in_e() {
        let e = build_category(&example_e(), 4).unwrap();
        let (u, v, w) = (
            e.find_morphism("u").unwrap(),
            e.find_morphism("v").unwrap(),
            e.find_morphism("w").unwrap(),
        );
        let uw = e.find_morphism("u∘w").unwrap();
        assert_eq!(e.compose(u, w).unwrap(), uw);
        assert_eq!(e.compose(v, w).unwrap(), uw);
        let x = e.find_object("x").unwrap();
        assert_eq!(e.compose(e.identity(x), u).unwrap(), u);
        assert_eq!(e.compose(u, e.identity(e.find_object("y").unwrap())).unwrap(), u);
        assert!(e.compose(w, u).is_err());
    }

    #[test]
    fn hom_sets_in_e() {
        let e = build_category(&example_e(), 4).unwrap();
        let (x, y, z) = (0, 1, 2);
        assert_eq!(e.hom(z, x).len(), 1);
        assert_eq!(e.hom(x, z).len(), 0);
        assert_eq!(e.hom(y, y), &[e.identity(y)]);
        assert_eq!(e.hom(y, x).len(), 2);
    }

    #[test]
    fn terminal_and_free_pair() {
        let spec = CategorySpec {
            objects: vec![ObjectSpec { name: "pt".into(), degree: Some(0) }],
            generators: vec![],
            relations: vec![],
        };
        let c = build_category(&spec, 2).unwrap();
        assert_eq!(c.object_count(), 1);
        assert_eq!(c.morphism_count(), 1);

        let pair = CategorySpec {
            objects: vec![
                ObjectSpec { name: "x".into(), degree: Some(0) },
                ObjectSpec { name: "y".into(), degree: Some(1) },
            ],
            generators: vec![
                GeneratorSpec { name: "f".into(), src: "y".into(), dst: "x".into() },
                GeneratorSpec { name: "g".into(), src: "y".into(), dst: "x".into() },
            ],
            relations: vec![],
        };
        let c = build_category(&pair, 3).unwrap();
        assert_eq!(c.hom(1, 0).len(), 2);
        let f = c.find_morphism("f").unwrap();
        let g = c.find_morphism("g").unwrap();
        assert_ne!(c.compose(c.identity(0), f).unwrap(), g);
    }

    #[test]
    fn saturation_bound_detects_loops() {
        let spec = CategorySpec {
            objects: vec![ObjectSpec { name: "x".into(), degree: Some(0) }],
            generators: vec![GeneratorSpec { name: "e".into(), src: "x".into(), dst: "x".into() }],
            relations: vec![],
        };
        let err = build_category(&spec, 5).unwrap_err();
        assert!(matches!(err, BuildError::SaturationBound { bound: 5, .. }));
    }

    #[test]
    fn ill_formed_relations_are_rejected() {
        let mut spec = example_e();
        spec.relations = vec![(vec!["u".into()], vec!["w".into()])];
        assert!(matches!(
            build_category(&spec, 4),
            Err(BuildError::IllFormedRelation { .. })
        ));
        let mut spec = example_e();
        spec.relations = vec![(vec!["w".into(), "u".into()], vec!["w".into(), "v".into()])];
        assert!(matches!(
            build_category(&spec, 4),
            Err(BuildError::IllFormedRelation { .. })
        ));
    }

    #[test]
    fn word_soundness() {
        let e = build_category(&example_e(), 4).unwrap();
        for m in e.morphisms() {
            let w = e.witness(m).to_vec();
            assert_eq!(e.compose_word(&w, e.src(m)).unwrap(), m);
        }
    }

    #[test]
    fn degree_synthesis_by_longest_path() {
        let mut spec = example_e();
        for o in &mut spec.objects {
            o.degree = None;
        }
        let e = build_category(&spec, 4).unwrap();
        assert_eq!(e.degree(0), 0);
        assert_eq!(e.degree(1), 1);
        assert_eq!(e.degree(2), 2);
    }

    #[test]
    fn opposite_involutes() {
        let e = build_category(&example_e(), 4).unwrap();
        let op = e.opposite();
        let u = e.find_morphism("u").unwrap();
        assert_eq!(op.src(u), e.dst(u));
        assert_eq!(op.opposite(), e);
    }
}
