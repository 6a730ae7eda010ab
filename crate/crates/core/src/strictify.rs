//! The ι-extension categories and the component bookkeeping of the
//! strictification construction.
//!
//! Adding a fresh object ι to an inverse category `I`, with an arrow into a
//! chosen object `i` (and the composites it generates), splits the extra
//! objects of the extended positive nerve into the components of the fiber
//! `A_i` (sequences starting with the arrow `ι → i` itself) and the
//! components of its matching object `M^A_i` (sequences starting at ι
//! through a composite). Everything here is index bookkeeping and emitted
//! type expressions; no pullback of actual types is ever evaluated.

use crate::emit::schema::{ContextSchema, PathExpr, SourceTag, TypeExpr};
use crate::fincat::{FinCategory, MorId, MorSpec, ObjId};
use crate::inverse::{coslice, matching_index};
use crate::nerve::{positive_nerve_elements, NerveError, Seq};
use crate::report::Report;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtendError {
    #[error("unknown object id {0}")]
    UnknownObject(ObjId),
    #[error(transparent)]
    Nerve(#[from] NerveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IotaVariant {
    /// `I + ι`: ι isolated (the coproduct with the terminal category).
    Plain,
    /// `I + ι_{→i}`: one generator `ι → i` plus the composites it
    /// generates.
    Arrow(ObjId),
    /// `I + ι_{⇢i}`: the arrow variant with the single generator removed
    /// but its composites kept as atomic arrows.
    Dashed(ObjId),
}

/// The extended category, with enough bookkeeping to trace every new arrow
/// back to the base morphism it came from.
#[derive(Debug, Clone)]
pub struct IotaExtension {
    pub variant: IotaVariant,
    pub category: FinCategory,
    /// Object id of ι in the extended category.
    pub iota: ObjId,
    /// The generator `ι → i` (arrow variant only).
    pub iota_arrow: Option<MorId>,
    /// For every arrow out of ι: the base morphism `f` with
    /// `arrow = f ∘ (ι→i)` (`f = id_i` for the generator itself).
    pub composite_of: BTreeMap<MorId, MorId>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ExtPayload {
    Base(MorId),
    IotaId,
    /// `f ∘ (ι → i)` for a base morphism `f` out of `i`.
    FromIota(MorId),
}

pub fn extend_with_iota(base: &FinCategory, variant: IotaVariant) -> Result<IotaExtension, ExtendError> {
    let target = match variant {
        IotaVariant::Plain => None,
        IotaVariant::Arrow(i) | IotaVariant::Dashed(i) => {
            if i >= base.object_count() {
                return Err(ExtendError::UnknownObject(i));
            }
            Some(i)
        }
    };

    let iota = base.object_count();
    let mut objects: Vec<(String, u64)> = base
        .objects()
        .map(|o| (base.object_name(o).to_string(), base.degree(o)))
        .collect();
    objects.push(("ι".to_string(), base.max_degree() + 1));

    // base morphisms first, so their ids carry over unchanged
    let mut morphisms: Vec<MorSpec<ExtPayload>> = base
        .morphisms()
        .map(|m| MorSpec {
            name: base.morphism_name(m).to_string(),
            src: base.src(m),
            dst: base.dst(m),
            identity: base.is_identity(m),
            payload: ExtPayload::Base(m),
        })
        .collect();
    morphisms.push(MorSpec {
        name: "id_ι".to_string(),
        src: iota,
        dst: iota,
        identity: true,
        payload: ExtPayload::IotaId,
    });

    // base morphisms f giving rise to a composite f∘(ι→i)
    let mut from_iota: Vec<MorId> = Vec::new();
    if let Some(i) = target {
        if matches!(variant, IotaVariant::Arrow(_)) {
            from_iota.push(base.identity(i));
        }
        for y in base.objects() {
            for &f in base.hom(i, y) {
                if !base.is_identity(f) {
                    from_iota.push(f);
                }
            }
        }
        for &f in &from_iota {
            let name = if base.is_identity(f) {
                format!("ι→{}", base.object_name(i))
            } else {
                format!("{}∘ι", base.morphism_name(f))
            };
            morphisms.push(MorSpec {
                name,
                src: iota,
                dst: base.dst(f),
                identity: false,
                payload: ExtPayload::FromIota(f),
            });
        }
    }

    let category = FinCategory::from_parts(objects, morphisms, |g, f| match (g, f) {
        (ExtPayload::Base(g), ExtPayload::Base(f)) => {
            ExtPayload::Base(base.compose(*g, *f).expect("base composable"))
        }
        (ExtPayload::Base(g), ExtPayload::FromIota(f)) => {
            ExtPayload::FromIota(base.compose(*g, *f).expect("base composable"))
        }
        _ => unreachable!("no arrows into ι"),
    });

    // ids are assigned in construction order: base block, id_ι, then the
    // arrows out of ι in `from_iota` order
    let mut composite_of = BTreeMap::new();
    let mut iota_arrow = None;
    let offset = base.morphism_count() + 1;
    for (k, &f) in from_iota.iter().enumerate() {
        let m = offset + k;
        composite_of.insert(m, f);
        if base.is_identity(f) {
            iota_arrow = Some(m);
        }
    }

    Ok(IotaExtension {
        variant,
        category,
        iota,
        iota_arrow,
        composite_of,
    })
}

/// One entry of a strictification plan: a sequence of the extended nerve
/// starting at ι, its shape level, and the emitted variable name.
#[derive(Debug, Clone)]
pub struct PlanEntry {
    pub seq: Seq,
    pub level: usize,
    pub name: String,
}

/// Per-object split of the extra nerve objects into fiber and matching
/// components.
#[derive(Debug, Clone)]
pub struct ObjectPlan {
    pub object: ObjId,
    pub extension: IotaExtension,
    pub new_components: Vec<PlanEntry>,
    pub matching_components: Vec<PlanEntry>,
}

#[derive(Debug, Clone)]
pub struct StrictComponentPlan {
    pub base: FinCategory,
    pub plans: Vec<ObjectPlan>,
}

pub fn strict_components(base: &FinCategory) -> Result<StrictComponentPlan, ExtendError> {
    let mut plans = Vec::new();
    for i in base.objects() {
        let ext = extend_with_iota(base, IotaVariant::Arrow(i))?;
        let nerve = positive_nerve_elements(&ext.category)?;
        let iota_arrow = ext.iota_arrow.expect("arrow variant");
        let index = matching_index(base, i);

        let mut new_seqs: Vec<Seq> = Vec::new();
        let mut matching_seqs: Vec<(usize, Seq)> = Vec::new();
        for s in nerve.objects() {
            if s.start != ext.iota || s.is_empty() {
                continue;
            }
            if s.arrows[0] == iota_arrow {
                new_seqs.push(s.clone());
            } else {
                let f = ext.composite_of[&s.arrows[0]];
                let pos = index
                    .entries
                    .iter()
                    .position(|&(t, m)| t == base.dst(f) && m == f)
                    .expect("composite arrow pairs with a coslice entry");
                matching_seqs.push((pos, s.clone()));
            }
        }
        // fiber components in sequence order, matching components keyed by
        // the coslice position of their first arrow
        new_seqs.sort_by_key(|s| (s.len(), s.arrows.clone()));
        matching_seqs.sort_by_key(|(pos, s)| (s.len(), *pos, s.arrows.clone()));

        let new_components = new_seqs
            .into_iter()
            .map(|seq| {
                let level = seq.len();
                let name = match level {
                    1 => base.object_name(i).to_string(),
                    2 => format!("e_{}", rest_word(base, &seq.arrows[1..])),
                    _ => format!("c_{}", rest_word(base, &seq.arrows[1..])),
                };
                PlanEntry { seq, level, name }
            })
            .collect();
        let matching_components = matching_seqs
            .into_iter()
            .map(|(_, seq)| {
                let level = seq.len();
                let f = ext.composite_of[&seq.arrows[0]];
                let head = format!(
                    "{}_{}",
                    base.object_name(base.dst(f)),
                    rest_word(base, &[f])
                );
                let name = if level == 1 {
                    head
                } else {
                    format!("{head}__{}", rest_word(base, &seq.arrows[1..]))
                };
                PlanEntry { seq, level, name }
            })
            .collect();
        plans.push(ObjectPlan {
            object: i,
            extension: ext,
            new_components,
            matching_components,
        });
    }
    Ok(StrictComponentPlan {
        base: base.clone(),
        plans,
    })
}

fn rest_word(base: &FinCategory, arrows: &[MorId]) -> String {
    arrows
        .iter()
        .map(|&m| base.morphism_name(m).replace('∘', "_"))
        .collect::<Vec<_>>()
        .join("_")
}

/// Check, for every object, the index-set identity behind the matching
/// object claim: the extra objects of the dashed extension's nerve are
/// exactly the arrow-extension fiber components of the coslice targets,
/// whiskered along the coslice arrows — bijectively.
pub fn verify_matching_claim(base: &FinCategory) -> Result<Report, ExtendError> {
    let mut report = Report::new("matching claim");
    let plan = strict_components(base)?;
    for i in base.objects() {
        let dashed = extend_with_iota(base, IotaVariant::Dashed(i))?;
        let nerve = positive_nerve_elements(&dashed.category)?;
        let mut actual: Vec<Vec<MorId>> = nerve
            .objects()
            .iter()
            .filter(|s| s.start == dashed.iota && !s.is_empty())
            .map(|s| s.arrows.clone())
            .collect();
        actual.sort();

        // whisker each coslice target's fiber components along its arrow
        let arrow_of: HashMap<MorId, MorId> = dashed
            .composite_of
            .iter()
            .map(|(&m, &f)| (f, m))
            .collect();
        let mut expected: Vec<Vec<MorId>> = Vec::new();
        for &(x, f) in &coslice(base, i).entries {
            let xplan = &plan.plans[x];
            for entry in &xplan.new_components {
                let mut arrows = Vec::with_capacity(entry.seq.len());
                arrows.push(arrow_of[&f]);
                // the tail of a fiber sequence lives in the base category
                arrows.extend_from_slice(&entry.seq.arrows[1..]);
                expected.push(arrows);
            }
        }
        let total = expected.len();
        expected.sort();
        expected.dedup();
        if expected.len() != total {
            report.push(
                base.object_name(i),
                "whiskered fiber components collide (the pairing is not injective)",
            );
        }
        if actual != expected {
            report.push(
                base.object_name(i),
                format!(
                    "index sets differ: {} extra nerve objects vs {} whiskered components",
                    actual.len(),
                    expected.len()
                ),
            );
        }
    }
    Ok(report)
}

/// The strict-chain context at level `n`: `n+1` types and `n` functions.
pub fn sp_schema(n: usize) -> ContextSchema {
    let mut schema = ContextSchema::new(format!("sp-{n}"));
    for k in 0..=n {
        schema.push(format!("A_{k}"), TypeExpr::Universe, SourceTag::Synthetic);
    }
    for k in 0..n {
        schema.push(
            format!("f_{k}"),
            TypeExpr::FunType(
                Box::new(TypeExpr::Ref(format!("A_{k}"))),
                Box::new(TypeExpr::Ref(format!("A_{}", k + 1))),
            ),
            SourceTag::Synthetic,
        );
    }
    schema
}

/// The fibrant-replacement component at one object: a Σ of the old
/// component and a pointwise equality against the matching tuple, with the
/// unit map recorded as a constant. An empty matching context degenerates
/// to the old component.
pub fn fibrant_replacement_schema(f_component: &str, matching: &ContextSchema) -> ContextSchema {
    let mut schema = ContextSchema::new(format!("fibrant-replacement-{f_component}"));
    let ty = if matching.is_empty() {
        TypeExpr::Ref(f_component.to_string())
    } else {
        let mut tel: Vec<(String, TypeExpr)> =
            vec![("a".to_string(), TypeExpr::Ref(f_component.to_string()))];
        for c in &matching.components {
            tel.push((
                format!("e_{}", c.name),
                TypeExpr::EqType {
                    lhs: PathExpr::App {
                        fun: format!("eta_{}", c.name),
                        arg: "a".to_string(),
                    },
                    rhs: PathExpr::Name(c.name.clone()),
                },
            ));
        }
        TypeExpr::SigmaTel(tel)
    };
    schema.push(format!("G_{f_component}"), ty, SourceTag::Synthetic);
    schema
        .constants
        .push(("unit".to_string(), "a ↦ (η̃(a), a, refl)".to_string()));
    schema
}

/// The per-object contexts of a plan: the matching context `M^A_i` and the
/// fiber context `A_i` over it. References to the ambient weak diagram
/// components stay symbolic; `unit` names the pinned ι entry.
pub struct PlanContexts {
    pub object: ObjId,
    pub matching: ContextSchema,
    pub fiber: ContextSchema,
}

pub fn plan_contexts(plan: &StrictComponentPlan) -> Result<Vec<PlanContexts>, NerveError> {
    let base = &plan.base;
    let base_nerve = positive_nerve_elements(base)?;
    let weak_names = crate::emit::nerve_component_names(&base_nerve);
    let weak_of: HashMap<Seq, String> = base_nerve
        .objects()
        .iter()
        .cloned()
        .zip(weak_names.iter().cloned())
        .collect();

    let mut out = Vec::new();
    for oplan in &plan.plans {
        let ext = &oplan.extension;
        let ext_nerve = positive_nerve_elements(&ext.category)?;
        let entry_names: HashMap<Seq, String> = oplan
            .new_components
            .iter()
            .chain(&oplan.matching_components)
            .map(|e| (e.seq.clone(), e.name.clone()))
            .collect();

        // resolve any face of an extended sequence to a component name
        let resolve = |s: &Seq| -> String {
            if s.start == ext.iota {
                if s.is_empty() {
                    "unit".to_string()
                } else {
                    entry_names[s].clone()
                }
            } else {
                weak_of[s].clone()
            }
        };

        let entry_type = |entry: &PlanEntry| -> TypeExpr {
            let faces = ext_nerve.proper_faces(&entry.seq);
            let face = |positions: &[usize]| -> &Seq {
                faces
                    .iter()
                    .find(|(w, _)| w.map.values() == positions)
                    .map(|(_, f)| f)
                    .expect("face present")
            };
            match entry.level {
                1 => {
                    let target = entry.seq.end(&ext.category);
                    TypeExpr::Ref(crate::emit::type_name(base.object_name(target)))
                }
                2 => TypeExpr::EqType {
                    lhs: PathExpr::App {
                        fun: resolve(face(&[1, 2])),
                        arg: resolve(face(&[0, 1])),
                    },
                    rhs: PathExpr::Name(resolve(face(&[0, 2]))),
                },
                level => TypeExpr::OpaqueT {
                    level,
                    args: faces.iter().map(|(_, f)| resolve(f)).collect(),
                },
            }
        };

        let mut matching = ContextSchema::new(format!(
            "matching-{}",
            base.object_name(oplan.object)
        ));
        for entry in &oplan.matching_components {
            matching.push(entry.name.clone(), entry_type(entry), seq_tag(ext, entry));
        }
        let mut fiber =
            ContextSchema::new(format!("fiber-{}", base.object_name(oplan.object)));
        for entry in &oplan.new_components {
            fiber.push(entry.name.clone(), entry_type(entry), seq_tag(ext, entry));
        }
        out.push(PlanContexts {
            object: oplan.object,
            matching,
            fiber,
        });
    }
    Ok(out)
}

fn seq_tag(ext: &IotaExtension, entry: &PlanEntry) -> SourceTag {
    SourceTag::Seq {
        start: ext.category.object_name(entry.seq.start).to_string(),
        arrows: entry
            .seq
            .arrows
            .iter()
            .map(|&m| ext.category.morphism_name(m).to_string())
            .collect(),
        level: entry.level,
    }
}
