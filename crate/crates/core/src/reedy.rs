//! Reedy categories: wide direct/inverse subcategory pairs with unique
//! minus-then-plus factorization, plus explicit truncations of the simplex
//! category to test them on.

mod direct_replacement;

pub use direct_replacement::{
    check_degree_monotone, check_degree_monotone_mode, check_no_infinite_chains,
    check_opfibration, d_construction, frak_d, frak_d_degree, frak_d_mode, list_of_surjection,
    surjection_of_list, DCategory, DError, FrakD, MarkedCategory,
};

use crate::exec::{self, ExecMode};
use crate::fincat::{build_category, BuildError, CategorySpec, FinCategory, MorId, MorSpec};
use crate::report::Report;
use crate::simplex::{monotone_maps, SimplexMap};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A finite category with distinguished wide subcategories of plus
/// (degree-raising) and minus (degree-lowering) morphisms.
#[derive(Debug, Clone)]
pub struct ReedyCategory {
    pub cat: FinCategory,
    plus: Vec<bool>,
    minus: Vec<bool>,
}

impl ReedyCategory {
    /// Membership is given per morphism; identities are always added to
    /// both parts.
    pub fn new(cat: FinCategory, plus: &[MorId], minus: &[MorId]) -> Self {
        let mut p = vec![false; cat.morphism_count()];
        let mut m = vec![false; cat.morphism_count()];
        for &i in plus {
            p[i] = true;
        }
        for &i in minus {
            m[i] = true;
        }
        for x in cat.objects() {
            p[cat.identity(x)] = true;
            m[cat.identity(x)] = true;
        }
        ReedyCategory { cat, plus: p, minus: m }
    }

    pub fn is_plus(&self, m: MorId) -> bool {
        self.plus[m]
    }

    pub fn is_minus(&self, m: MorId) -> bool {
        self.minus[m]
    }

    pub fn minus_morphisms(&self) -> Vec<MorId> {
        self.cat.morphisms().filter(|&m| self.minus[m]).collect()
    }

    /// Swap the two parts (useful as a negative test: for Δ the swapped
    /// version fails the axioms).
    pub fn swapped(&self) -> ReedyCategory {
        ReedyCategory {
            cat: self.cat.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }
}

/// A Reedy presentation: a category presentation extended with the plus
/// and minus parts as lists of morphism words (identities are implicit).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReedySpec {
    #[serde(flatten)]
    pub base: CategorySpec,
    #[serde(default)]
    pub plus: Vec<Vec<String>>,
    #[serde(default)]
    pub minus: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum ReedySpecError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("unknown generator `{0}` in a part word")]
    UnknownGenerator(String),
    #[error("part word `{0}` is not composable")]
    NotComposable(String),
}

/// Saturate the base presentation and resolve the part words to morphisms.
pub fn build_reedy(spec: &ReedySpec, max_word_length: usize) -> Result<ReedyCategory, ReedySpecError> {
    let cat = build_category(&spec.base, max_word_length)?;
    let resolve_all = |words: &[Vec<String>]| -> Result<Vec<MorId>, ReedySpecError> {
        words.iter().map(|w| resolve_word(&cat, w)).collect()
    };
    let plus = resolve_all(&spec.plus)?;
    let minus = resolve_all(&spec.minus)?;
    Ok(ReedyCategory::new(cat, &plus, &minus))
}

fn resolve_word(cat: &FinCategory, word: &[String]) -> Result<MorId, ReedySpecError> {
    let show = || word.join("∘");
    if word.is_empty() {
        return Err(ReedySpecError::NotComposable(show()));
    }
    let ids: Vec<MorId> = word
        .iter()
        .map(|n| {
            cat.generator(n)
                .ok_or_else(|| ReedySpecError::UnknownGenerator(n.clone()))
        })
        .collect::<Result<_, _>>()?;
    let start = cat.src(*ids.last().unwrap());
    cat.compose_word(&ids, start)
        .map_err(|_| ReedySpecError::NotComposable(show()))
}

/// The simplex category truncated to objects `[0] … [n]`: all monotone
/// maps, with injections as the plus part and surjections as the minus part.
pub fn delta_le(n: usize) -> ReedyCategory {
    let objects: Vec<(String, u64)> = (0..=n).map(|k| (format!("[{k}]"), k as u64)).collect();
    let mut morphisms: Vec<MorSpec<SimplexMap>> = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            for map in monotone_maps(m, k) {
                morphisms.push(MorSpec {
                    name: format!("{map}:[{m}]->[{k}]"),
                    src: m,
                    dst: k,
                    identity: map.is_identity(),
                    payload: map,
                });
            }
        }
    }
    let cat = FinCategory::from_parts(objects, morphisms, |g, f| {
        g.compose(f).expect("simplex maps compose")
    });
    let plus: Vec<MorId> = cat
        .morphisms()
        .filter(|&i| delta_payload(&cat, i).is_injective())
        .collect();
    let minus: Vec<MorId> = cat
        .morphisms()
        .filter(|&i| delta_payload(&cat, i).is_surjective())
        .collect();
    ReedyCategory::new(cat, &plus, &minus)
}

/// Recover the monotone map behind a morphism of [`delta_le`] from its name.
pub fn delta_payload(cat: &FinCategory, m: MorId) -> SimplexMap {
    let name = cat.morphism_name(m);
    let tuple = &name[..name.find(':').expect("delta morphism name")];
    let codomain: usize = name[name.rfind("->[").unwrap() + 3..name.len() - 1]
        .parse()
        .expect("codomain");
    let values: Vec<usize> = tuple[1..tuple.len() - 1]
        .split(',')
        .map(|v| v.parse().expect("value"))
        .collect();
    SimplexMap::new(codomain, values).expect("valid delta payload")
}

/// The opposite of the semisimplex category truncated to `[0] … [n]`:
/// morphisms `[k] → [j]` are the injective monotone maps `[j] ↪ [k]`.
/// This is the standard finite inverse index for semisimplicial diagrams.
pub fn delta_plus_op(n: usize) -> FinCategory {
    let objects: Vec<(String, u64)> = (0..=n).map(|k| (format!("[{k}]"), k as u64)).collect();
    let mut morphisms: Vec<MorSpec<SimplexMap>> = Vec::new();
    for k in 0..=n {
        for j in 0..=n {
            for map in monotone_maps(j, k) {
                if map.is_injective() {
                    morphisms.push(MorSpec {
                        name: format!("{map}:[{k}]~>[{j}]"),
                        src: k,
                        dst: j,
                        identity: map.is_identity(),
                        payload: map,
                    });
                }
            }
        }
    }
    // opposite composition: the underlying injections compose the other way
    FinCategory::from_parts(objects, morphisms, |g, f| {
        f.compose(g).expect("injections compose")
    })
}

/// Verify the Reedy axioms: wideness, closure of both parts under
/// composition, the minus part inverse and the plus part direct for the
/// shared degree, and — by exhaustive search over all (minus, plus) pairs —
/// existence and uniqueness of the factorization of every morphism.
pub fn check_reedy(r: &ReedyCategory) -> Report {
    check_reedy_mode(r, ExecMode::default())
}

pub fn check_reedy_mode(r: &ReedyCategory, mode: ExecMode) -> Report {
    let cat = &r.cat;
    let mut report = Report::new("reedy");

    for x in cat.objects() {
        let id = cat.identity(x);
        if !r.is_plus(id) || !r.is_minus(id) {
            report.push(cat.morphism_name(id), "identity missing from a wide part");
        }
    }

    // degree discipline
    for m in cat.non_identities() {
        let (s, d) = (cat.src(m), cat.dst(m));
        if r.is_minus(m) && cat.degree(d) >= cat.degree(s) {
            report.push(
                cat.morphism_name(m),
                "minus part not inverse: does not lower degree",
            );
        }
        if r.is_plus(m) && cat.degree(d) <= cat.degree(s) {
            report.push(
                cat.morphism_name(m),
                "plus part not direct: does not raise degree",
            );
        }
    }

    // closure under composition
    let closure = exec::flat_map_indexed(mode, cat.morphism_count(), |f| {
        let mut local = Vec::new();
        for g in cat.morphisms() {
            if cat.dst(f) != cat.src(g) {
                continue;
            }
            let c = cat.compose(g, f).expect("composable");
            if r.is_plus(f) && r.is_plus(g) && !r.is_plus(c) {
                local.push((
                    cat.morphism_name(c).to_string(),
                    "plus part not closed under composition".to_string(),
                ));
            }
            if r.is_minus(f) && r.is_minus(g) && !r.is_minus(c) {
                local.push((
                    cat.morphism_name(c).to_string(),
                    "minus part not closed under composition".to_string(),
                ));
            }
        }
        local
    });
    for (loc, detail) in closure {
        report.push(loc, detail);
    }

    // unique minus-then-plus factorization, by exhaustive pair search
    let per_object_minus: Vec<Vec<Vec<MorId>>> = (0..cat.object_count())
        .map(|x| {
            (0..cat.object_count())
                .map(|w| {
                    cat.hom(x, w)
                        .iter()
                        .copied()
                        .filter(|&m| r.is_minus(m))
                        .collect()
                })
                .collect()
        })
        .collect();
    let per_object_plus: Vec<Vec<Vec<MorId>>> = (0..cat.object_count())
        .map(|w| {
            (0..cat.object_count())
                .map(|y| {
                    cat.hom(w, y)
                        .iter()
                        .copied()
                        .filter(|&m| r.is_plus(m))
                        .collect()
                })
                .collect()
        })
        .collect();
    let fact = exec::filter_map_indexed(mode, cat.morphism_count(), |f| {
        let (x, y) = (cat.src(f), cat.dst(f));
        let mut count = 0usize;
        for w in cat.objects() {
            for &mm in &per_object_minus[x][w] {
                for &pp in &per_object_plus[w][y] {
                    if cat.compose(pp, mm).expect("composable") == f {
                        count += 1;
                    }
                }
            }
        }
        if count != 1 {
            Some((
                cat.morphism_name(f).to_string(),
                format!("has {count} minus-then-plus factorizations, expected exactly 1"),
            ))
        } else {
            None
        }
    });
    for (loc, detail) in fact {
        report.push(loc, detail);
    }
    report.note(format!(
        "checked {} morphisms over {} objects",
        cat.morphism_count(),
        cat.object_count()
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{build_category, CategorySpec};
    use crate::simplex::binomial;

    #[test]
    fn delta_truncations_are_reedy() {
        for n in 0..=3 {
            let r = delta_le(n);
            assert!(check_reedy(&r).is_empty(), "delta_le({n})");
        }
    }

    #[test]
    fn delta_morphism_counts() {
        let r = delta_le(3);
        for m in 0..=3usize {
            for k in 0..=3usize {
                let expected = binomial((m + k + 1) as u64, (m + 1) as u64) as usize;
                assert_eq!(r.cat.hom(m, k).len(), expected);
            }
        }
    }

    #[test]
    fn discrete_category_is_reedy() {
        let spec: CategorySpec = serde_json::from_str(
            r#"{"objects":[{"name":"a","degree":0},{"name":"b","degree":0}]}"#,
        )
        .unwrap();
        let cat = build_category(&spec, 1).unwrap();
        let r = ReedyCategory::new(cat, &[], &[]);
        assert!(check_reedy(&r).is_empty());
    }

    #[test]
    fn swapped_delta_fails_with_located_violations() {
        let r = delta_le(2).swapped();
        let report = check_reedy(&r);
        assert!(!report.is_empty());
        assert!(report
            .violations
            .iter()
            .any(|v| v.detail.contains("minus part not inverse")));
    }

    #[test]
    fn delta_plus_op_is_inverse() {
        let c = delta_plus_op(3);
        assert!(crate::inverse::check_inverse(&c).is_empty());
        // hom([2], [1]) in the opposite = injections [1] into [2]
        assert_eq!(c.hom(2, 1).len(), 3);
        assert_eq!(c.hom(1, 2).len(), 0);
    }

    #[test]
    fn delta_payload_round_trips() {
        let r = delta_le(3);
        for m in r.cat.morphisms() {
            let p = delta_payload(&r.cat, m);
            assert_eq!(
                format!("{p}:[{}]->[{}]", r.cat.src(m), r.cat.dst(m)),
                r.cat.morphism_name(m)
            );
        }
    }
}
