//! Builders for the diagram-type schemas, and renderers for them.
//!
//! Each builder returns a [`ContextSchema`]: the ordered telescope of named,
//! typed components that makes up the (nested Σ-)type of diagrams of the
//! given kind. Components are ordered by the degree of their source objects,
//! and the schemas pass the telescope well-formedness checker by
//! construction.

mod render;
pub mod schema;

pub use render::{context_text, parse_json, render, Format, RenderError};
pub use schema::{
    check_telescope, Component, ContextSchema, PathExpr, SourceTag, TelescopeError, TypeExpr,
};

use crate::fincat::{FinCategory, MorId, ObjId};
use crate::inverse::matching_index;
use crate::nerve::{nerve_elements_truncated, positive_nerve_elements, ElementsCategory, NerveError, Seq};
use crate::reedy::frak_d;
use std::collections::HashMap;

/// First letter uppercased: the type-component name for an object.
pub(crate) fn type_name(object: &str) -> String {
    let mut chars = object.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// Identifier-ish name for a sequence: the object for length 0, otherwise
/// the arrow names joined with `_` (composites `u∘w` flatten to `u_w`).
pub(crate) fn seq_comp_name(cat: &FinCategory, s: &Seq) -> String {
    if s.is_empty() {
        return type_name(cat.object_name(s.start));
    }
    let parts: Vec<String> = s
        .arrows
        .iter()
        .map(|&m| cat.morphism_name(m).replace('∘', "_"))
        .collect();
    parts.join("_")
}

/// Append a numeric suffix to later occurrences of a clashing name.
fn disambiguate(names: &mut [String]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in names.iter_mut() {
        let count = seen.entry(n.clone()).or_insert(0);
        *count += 1;
        if *count > 1 {
            *n = format!("{n}__{count}");
        }
    }
}

/// One family per object, ascending degree: a Universe-valued family over
/// the Σ-telescope of its matching index (plain Universe when the index is
/// empty).
pub fn reedy_diagram_type(cat: &FinCategory) -> ContextSchema {
    let mut order: Vec<ObjId> = cat.objects().collect();
    order.sort_by_key(|&x| (cat.degree(x), x));

    let comp_name: HashMap<ObjId, String> = order
        .iter()
        .map(|&x| (x, format!("R_{}", cat.object_name(x))))
        .collect();
    let indices: HashMap<ObjId, Vec<(ObjId, MorId)>> = order
        .iter()
        .map(|&x| (x, matching_index(cat, x).entries))
        .collect();

    let mut schema = ContextSchema::new("reedy-diagram");
    for &x in &order {
        let entries = &indices[&x];
        // telescope variable per matching entry
        let mut var_names: Vec<String> = entries
            .iter()
            .map(|&(t, f)| {
                let word = cat
                    .witness_names(f)
                    .iter()
                    .map(|w| w.replace('∘', "_"))
                    .collect::<Vec<_>>()
                    .join("_");
                format!("{}_{}", cat.object_name(t), word)
            })
            .collect();
        disambiguate(&mut var_names);
        let var_of: HashMap<(ObjId, MorId), String> = entries
            .iter()
            .copied()
            .zip(var_names.iter().cloned())
            .collect();

        let tel: Vec<(String, TypeExpr)> = entries
            .iter()
            .zip(&var_names)
            .map(|(&(t, f), var)| {
                let ty = if indices[&t].is_empty() {
                    TypeExpr::Ref(comp_name[&t].clone())
                } else {
                    let args = indices[&t]
                        .iter()
                        .map(|&(t2, g)| {
                            let composite = cat.compose(g, f).expect("coslice closed");
                            var_of[&(t2, composite)].clone()
                        })
                        .collect();
                    TypeExpr::FamilyApp {
                        family: comp_name[&t].clone(),
                        args,
                    }
                };
                (var.clone(), ty)
            })
            .collect();

        let ty = if tel.is_empty() {
            TypeExpr::Universe
        } else {
            TypeExpr::FunType(
                Box::new(TypeExpr::SigmaTel(tel)),
                Box::new(TypeExpr::Universe),
            )
        };
        schema.push(
            comp_name[&x].clone(),
            ty,
            SourceTag::Object {
                name: cat.object_name(x).to_string(),
            },
        );
    }
    schema
}

/// One component per object of `∫N⁺I`, ascending degree: Universe at shape
/// 0, functions at shape 1, composition equalities at shape 2, and opaque
/// coherence cells above.
pub fn weak_diagram_type(cat: &FinCategory) -> Result<ContextSchema, NerveError> {
    let nerve = positive_nerve_elements(cat)?;
    let mut schema = components_over_nerve(&nerve, "weak-diagram");
    schema.truncated = None;
    Ok(schema)
}

/// The general homotopy coherent diagram type over any finite category,
/// truncated at sequence length `k`: the weak-diagram shape over the
/// truncated `∫N C`, plus one equivalence condition per identity sequence.
pub fn general_hc_type(cat: &FinCategory, k: usize) -> ContextSchema {
    let nerve = nerve_elements_truncated(cat, k);
    let mut schema = components_over_nerve(&nerve, &format!("general-hc-{k}"));
    schema.truncated = Some(k);

    let names: Vec<String> = schema.components.iter().map(|c| c.name.clone()).collect();
    let positions = nerve.identity_seqs();
    for i in positions {
        let target = names[i].clone();
        schema.push(
            format!("isequiv_{target}"),
            TypeExpr::IsEquiv(target),
            SourceTag::Seq {
                start: cat.object_name(nerve.seq(i).start).to_string(),
                arrows: nerve
                    .seq(i)
                    .arrows
                    .iter()
                    .map(|&m| cat.morphism_name(m).to_string())
                    .collect(),
                level: 1,
            },
        );
    }
    schema
}

/// Component names for the objects of a nerve, in object order.
pub(crate) fn nerve_component_names(nerve: &ElementsCategory) -> Vec<String> {
    let mut names: Vec<String> = nerve
        .objects()
        .iter()
        .map(|s| seq_comp_name(&nerve.base, s))
        .collect();
    disambiguate(&mut names);
    names
}

fn components_over_nerve(nerve: &ElementsCategory, name: &str) -> ContextSchema {
    let cat = &nerve.base;
    let names = nerve_component_names(nerve);
    let name_of: HashMap<Seq, String> = nerve
        .objects()
        .iter()
        .cloned()
        .zip(names.iter().cloned())
        .collect();

    let mut schema = ContextSchema::new(name);
    for (i, s) in nerve.objects().iter().enumerate() {
        let source = SourceTag::Seq {
            start: cat.object_name(s.start).to_string(),
            arrows: s
                .arrows
                .iter()
                .map(|&m| cat.morphism_name(m).to_string())
                .collect(),
            level: s.len(),
        };
        let ty = match s.len() {
            0 => TypeExpr::Universe,
            1 => {
                let verts = s.vertices(cat);
                TypeExpr::FunType(
                    Box::new(TypeExpr::Ref(name_of[&Seq::empty(verts[0])].clone())),
                    Box::new(TypeExpr::Ref(name_of[&Seq::empty(verts[1])].clone())),
                )
            }
            2 => {
                let faces = nerve.proper_faces(s);
                let face = |positions: &[usize]| -> String {
                    let seq = faces
                        .iter()
                        .find(|(w, _)| w.map.values() == positions)
                        .map(|(_, f)| f)
                        .expect("face present");
                    name_of[seq].clone()
                };
                TypeExpr::EqType {
                    lhs: PathExpr::Name(face(&[0, 2])),
                    rhs: PathExpr::Compose(vec![
                        PathExpr::Name(face(&[1, 2])),
                        PathExpr::Name(face(&[0, 1])),
                    ]),
                }
            }
            level => {
                let args = nerve
                    .proper_faces(s)
                    .iter()
                    .map(|(_, f)| name_of[f].clone())
                    .collect();
                TypeExpr::OpaqueT { level, args }
            }
        };
        schema.push(names[i].clone(), ty, source);
    }
    schema
}

/// Face-subset variable names: points `p_i`, lines `l_ij`, triangles
/// `t_ijk`, generically `c{dim}_{indices}`.
fn face_var(subset: &[usize]) -> String {
    let idx: String = subset.iter().map(usize::to_string).collect();
    match subset.len() {
        1 => format!("p_{idx}"),
        2 => format!("l_{idx}"),
        3 => format!("t_{idx}"),
        d => format!("c{}_{idx}", d - 1),
    }
}

/// Proper nonempty subsets of `{0..=k}`, ordered by (size, width, indices).
fn face_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << (k + 1)) {
        let subset: Vec<usize> = (0..=k).filter(|&i| mask & (1 << i) != 0).collect();
        if subset.len() <= k {
            subsets.push(subset);
        }
    }
    subsets.sort_by_key(|s| (s.len(), s.last().unwrap() - s.first().unwrap(), s.clone()));
    subsets
}

/// The semisimplicial diagram type up to level `n`: components `A_[0..n]`,
/// each a family over all its proper faces; level `k` has `2^{k+1} - 2`
/// boundary entries.
pub fn semisimplicial_type(n: usize) -> ContextSchema {
    let mut schema = ContextSchema::new(format!("semisimplicial-{n}"));
    for k in 0..=n {
        let comp = format!("A_[{k}]");
        let subsets = face_subsets(k);
        let tel: Vec<(String, TypeExpr)> = subsets
            .iter()
            .map(|s| {
                let dim = s.len() - 1;
                let ty = if dim == 0 {
                    TypeExpr::Ref("A_[0]".to_string())
                } else {
                    let args = face_subsets(dim)
                        .iter()
                        .map(|sub| face_var(&sub.iter().map(|&i| s[i]).collect::<Vec<_>>()))
                        .collect();
                    TypeExpr::FamilyApp {
                        family: format!("A_[{dim}]"),
                        args,
                    }
                };
                (face_var(s), ty)
            })
            .collect();
        let ty = if tel.is_empty() {
            TypeExpr::Universe
        } else {
            TypeExpr::FunType(
                Box::new(TypeExpr::SigmaTel(tel)),
                Box::new(TypeExpr::Universe),
            )
        };
        schema.push(
            comp,
            ty,
            SourceTag::Object {
                name: format!("[{k}]"),
            },
        );
    }
    schema
}

/// The simplicial diagram type up to level `n`: the Reedy diagram type over
/// the opposite of the truncated direct replacement, followed by one
/// equivalence condition per generating marked morphism.
pub fn simplicial_type(n: usize) -> ContextSchema {
    let fd = frak_d(n);
    let op = fd.marked.cat.opposite();
    let mut order: Vec<ObjId> = op.objects().collect();
    order.sort_by_key(|&x| (op.degree(x), x));

    let comp_name: HashMap<ObjId, String> = fd
        .lists
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let joined: Vec<String> = l.iter().map(u32::to_string).collect();
            (i, format!("S_{}", joined.join("_")))
        })
        .collect();
    let indices: HashMap<ObjId, Vec<(ObjId, MorId)>> = order
        .iter()
        .map(|&x| (x, matching_index(&op, x).entries))
        .collect();

    let mut schema = ContextSchema::new(format!("simplicial-{n}"));
    for &x in &order {
        let entries = &indices[&x];
        let var_names: Vec<String> = (0..entries.len()).map(|i| format!("m{i}")).collect();
        let var_of: HashMap<(ObjId, MorId), String> = entries
            .iter()
            .copied()
            .zip(var_names.iter().cloned())
            .collect();
        let tel: Vec<(String, TypeExpr)> = entries
            .iter()
            .zip(&var_names)
            .map(|(&(t, f), var)| {
                let ty = if indices[&t].is_empty() {
                    TypeExpr::Ref(comp_name[&t].clone())
                } else {
                    let args = indices[&t]
                        .iter()
                        .map(|&(t2, g)| {
                            let composite = op.compose(g, f).expect("coslice closed");
                            var_of[&(t2, composite)].clone()
                        })
                        .collect();
                    TypeExpr::FamilyApp {
                        family: comp_name[&t].clone(),
                        args,
                    }
                };
                (var.clone(), ty)
            })
            .collect();
        let ty = if tel.is_empty() {
            TypeExpr::Universe
        } else {
            TypeExpr::FunType(
                Box::new(TypeExpr::SigmaTel(tel)),
                Box::new(TypeExpr::Universe),
            )
        };
        schema.push(
            comp_name[&x].clone(),
            ty,
            SourceTag::DList {
                entries: fd.lists[x].clone(),
            },
        );
    }

    // one equivalence condition per generating marking; the remaining
    // marked composites are equivalences by 2-out-of-3
    for m in fd.marked.generating_marked() {
        let (a, b) = (fd.marked.cat.src(m), fd.marked.cat.dst(m));
        let (from, to) = (comp_name[&a].clone(), comp_name[&b].clone());
        schema.push(
            format!("eq_{}_{}", &from[2..], &to[2..]),
            TypeExpr::IsEquiv(to.clone()),
            SourceTag::Marking { from, to },
        );
    }
    schema
}
