//! The inverse-category axioms, coslices, downward-closed full
//! subcategories, and matching-object index sets.
//!
//! An inverse category carries a degree per object and every non-identity
//! morphism strictly lowers the degree toward its codomain. The coslice
//! `x ⫽ I` (non-identity arrows out of `x`) indexes the matching object at
//! `x`; its entries, in a canonical order, become the telescope a family is
//! emitted over.

use crate::fincat::{FinCategory, MorId, MorSpec, ObjId};
use crate::report::Report;

/// Check the degree axiom: every non-identity morphism must strictly lower
/// the degree. The fan-out of each object is finite by construction, so that
/// part of the definition degenerates to a count reported as a note.
pub fn check_inverse(cat: &FinCategory) -> Report {
    let mut report = Report::new("inverse");
    for m in cat.non_identities() {
        let (s, d) = (cat.src(m), cat.dst(m));
        if cat.degree(d) >= cat.degree(s) {
            report.push(
                cat.morphism_name(m),
                format!(
                    "does not lower degree: {} (deg {}) -> {} (deg {})",
                    cat.object_name(s),
                    cat.degree(s),
                    cat.object_name(d),
                    cat.degree(d)
                ),
            );
        }
    }
    let max_fan_out = cat
        .objects()
        .map(|x| cat.morphisms_from(x).len())
        .max()
        .unwrap_or(0);
    report.note(format!(
        "fan-out finite for all {} objects (max {})",
        cat.object_count(),
        max_fan_out
    ));
    report
}

/// Synthesize a valid degree map by longest-path layering over the
/// non-identity morphism graph. Fails if that graph has a cycle.
pub fn synthesize_degrees(cat: &FinCategory) -> Result<Vec<u64>, Report> {
    let edges: Vec<(ObjId, ObjId)> = cat
        .non_identities()
        .map(|m| (cat.src(m), cat.dst(m)))
        .collect();
    crate::fincat::longest_path_layering(cat.object_count(), &edges).map_err(|obj| {
        let mut r = Report::new("degree synthesis");
        r.push(
            cat.object_name(obj),
            "lies on a cycle of non-identity morphisms",
        );
        r
    })
}

/// Canonical sort key for a morphism: witness word compared by
/// length-then-lexicographic on generator names.
pub(crate) fn word_key(cat: &FinCategory, m: MorId) -> (usize, Vec<String>) {
    let names: Vec<String> = cat
        .witness_names(m)
        .into_iter()
        .map(str::to_string)
        .collect();
    (names.len(), names)
}

/// The full subcategory of the coslice `x / I` with `id_x` removed.
/// Objects are pairs `(target, arrow out of the apex)`; a morphism
/// `(y,f) -> (z,g)` is an `h` with `h ∘ f = g`.
#[derive(Debug, Clone)]
pub struct CosliceCategory {
    pub apex: ObjId,
    /// `(target object, morphism from apex)` in canonical order:
    /// target degree ascending, then canonical word.
    pub entries: Vec<(ObjId, MorId)>,
    /// The coslice as an explicit category (entry index = object id).
    pub category: FinCategory,
}

impl CosliceCategory {
    /// The forgetful functor to the base, on objects.
    pub fn forget(&self, entry: usize) -> ObjId {
        self.entries[entry].0
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, target: ObjId, arrow: MorId) -> Option<usize> {
        self.entries.iter().position(|&e| e == (target, arrow))
    }
}

pub fn coslice(cat: &FinCategory, apex: ObjId) -> CosliceCategory {
    let mut entries: Vec<(ObjId, MorId)> = cat
        .objects()
        .flat_map(|y| cat.hom(apex, y).iter().copied().map(move |f| (y, f)))
        .filter(|&(_, f)| !cat.is_identity(f))
        .collect();
    entries.sort_by(|&(y1, f1), &(y2, f2)| {
        (cat.degree(y1), word_key(cat, f1)).cmp(&(cat.degree(y2), word_key(cat, f2)))
    });

    // triangles (i -> j, h) with h ∘ f_i = f_j
    let objects: Vec<(String, u64)> = entries
        .iter()
        .map(|&(y, f)| {
            (
                format!("({},{})", cat.object_name(y), cat.morphism_name(f)),
                cat.degree(y),
            )
        })
        .collect();
    let mut morphisms: Vec<MorSpec<MorId>> = Vec::new();
    for (i, &(y, f)) in entries.iter().enumerate() {
        for (j, &(z, g)) in entries.iter().enumerate() {
            for &h in cat.hom(y, z) {
                if cat.compose(h, f).expect("coslice triangle composable") == g {
                    morphisms.push(MorSpec {
                        name: format!("{}:{}->{}", cat.morphism_name(h), i, j),
                        src: i,
                        dst: j,
                        identity: cat.is_identity(h),
                        payload: h,
                    });
                }
            }
        }
    }
    let category = FinCategory::from_parts(objects, morphisms, |&g, &f| {
        cat.compose(g, f).expect("coslice composable")
    });
    CosliceCategory {
        apex,
        entries,
        category,
    }
}

/// The index set over which the matching object at `x` is a limit: exactly
/// the coslice objects, in canonical order. The limit itself is only ever
/// realized as an emitted telescope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingIndex {
    pub apex: ObjId,
    pub entries: Vec<(ObjId, MorId)>,
}

pub fn matching_index(cat: &FinCategory, apex: ObjId) -> MatchingIndex {
    MatchingIndex {
        apex,
        entries: coslice(cat, apex).entries,
    }
}

/// A downward-closed full subcategory together with its inclusion data.
#[derive(Debug, Clone)]
pub struct DownwardClosure {
    /// Objects of the closure in the base category, sorted.
    pub objects: Vec<ObjId>,
    pub category: FinCategory,
    /// Maps the subcategory's object ids back into the base.
    pub object_map: Vec<ObjId>,
    /// Maps the subcategory's morphism ids back into the base.
    pub morphism_map: Vec<MorId>,
}

/// Smallest full subcategory containing `seeds` that is closed under
/// following morphisms out of its objects.
pub fn downward_closed(cat: &FinCategory, seeds: &[ObjId]) -> DownwardClosure {
    let mut in_set = vec![false; cat.object_count()];
    let mut stack: Vec<ObjId> = seeds.to_vec();
    while let Some(x) = stack.pop() {
        if in_set[x] {
            continue;
        }
        in_set[x] = true;
        for m in cat.morphisms_from(x) {
            if !in_set[cat.dst(m)] {
                stack.push(cat.dst(m));
            }
        }
    }
    let objects: Vec<ObjId> = (0..cat.object_count()).filter(|&i| in_set[i]).collect();
    let (category, object_map, morphism_map) = cat.restrict(&objects);
    DownwardClosure {
        objects,
        category,
        object_map,
        morphism_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{build_category, CategorySpec, GeneratorSpec, ObjectSpec};

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

    #[test]
    fn e_is_inverse() {
        assert!(check_inverse(&example_e()).is_empty());
    }

    #[test]
    fn single_object_is_inverse() {
        let spec = CategorySpec {
            objects: vec![ObjectSpec { name: "pt".into(), degree: Some(0) }],
            generators: vec![],
            relations: vec![],
        };
        let c = build_category(&spec, 1).unwrap();
        assert!(check_inverse(&c).is_empty());
    }

    #[test]
    fn degree_raising_generator_is_reported() {
        let spec = CategorySpec {
            objects: vec![
                ObjectSpec { name: "x".into(), degree: Some(0) },
                ObjectSpec { name: "y".into(), degree: Some(1) },
            ],
            generators: vec![GeneratorSpec { name: "f".into(), src: "x".into(), dst: "y".into() }],
            relations: vec![],
        };
        let c = build_category(&spec, 2).unwrap();
        let report = check_inverse(&c);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].location, "f");
    }

    #[test]
    fn coslices_of_e() {
        let e = example_e();
        let (x, y, z) = (0, 1, 2);
        assert!(coslice(&e, x).is_empty());

        let cy = coslice(&e, y);
        let u = e.find_morphism("u").unwrap();
        let v = e.find_morphism("v").unwrap();
        assert_eq!(cy.entries, vec![(x, u), (x, v)]);
        assert!(cy.category.non_identities().next().is_none());

        let cz = coslice(&e, z);
        let w = e.find_morphism("w").unwrap();
        let uw = e.find_morphism("u∘w").unwrap();
        assert_eq!(cz.entries, vec![(x, uw), (y, w)]);
    }

    #[test]
    fn coslices_are_inverse() {
        let e = example_e();
        for x in e.objects() {
            assert!(check_inverse(&coslice(&e, x).category).is_empty());
        }
    }

    #[test]
    fn matching_indices_of_e() {
        let e = example_e();
        let mi_y = matching_index(&e, 1);
        assert_eq!(mi_y.entries.len(), 2);
        assert!(mi_y.entries.iter().all(|&(t, _)| t == 0));

        assert!(matching_index(&e, 0).entries.is_empty());

        let mi_z = matching_index(&e, 2);
        assert_eq!(
            mi_z.entries
                .iter()
                .map(|&(t, m)| (e.object_name(t), e.morphism_name(m)))
                .collect::<Vec<_>>(),
            vec![("x", "u∘w"), ("y", "w")]
        );
        // the matching index never mentions the apex
        for x in e.objects() {
            assert!(matching_index(&e, x).entries.iter().all(|&(t, _)| t != x));
        }
    }

    #[test]
    fn downward_closures_of_e() {
        let e = example_e();
        assert_eq!(downward_closed(&e, &[2]).objects, vec![0, 1, 2]);
        assert_eq!(downward_closed(&e, &[0]).objects, vec![0]);
        assert_eq!(downward_closed(&e, &[1]).objects, vec![0, 1]);
    }

    #[test]
    fn degree_synthesis_matches_layering() {
        let e = example_e();
        assert_eq!(synthesize_degrees(&e).unwrap(), vec![0, 1, 2]);
    }
}
