//! The emitted form of contexts and nested Σ-types: an ordered telescope of
//! named, typed components over a small type-expression grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Formal path/term expressions: component names, applications, `ap`,
/// pointwise application of an equality, function composites, and path
/// concatenations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathExpr {
    Name(String),
    /// Plain application of a function component to a component name.
    App { fun: String, arg: String },
    /// Pointwise application of an equality-between-functions component.
    Happly { fun: String, arg: String },
    /// `ap` of a function component on a path.
    Ap { fun: String, path: Box<PathExpr> },
    /// Function composite, outermost first.
    Compose(Vec<PathExpr>),
    /// Path concatenation, left to right.
    Concat(Vec<PathExpr>),
}

/// Types of components. `Ref` and `FamilyApp` arguments must name
/// components declared earlier in the enclosing telescope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeExpr {
    Universe,
    Ref(String),
    FamilyApp { family: String, args: Vec<String> },
    FunType(Box<TypeExpr>, Box<TypeExpr>),
    /// A telescope used as a type: nested Σ ending in the last entry.
    SigmaTel(Vec<(String, TypeExpr)>),
    EqType { lhs: PathExpr, rhs: PathExpr },
    /// The Harpaz condition on a function component.
    IsEquiv(String),
    /// The coherence tower above the concretized levels: a postulated
    /// family at level `k` applied to the boundary components.
    OpaqueT { level: usize, args: Vec<String> },
}

/// Where a component came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceTag {
    Object { name: String },
    Seq { start: String, arrows: Vec<String>, level: usize },
    Matching { target: String, word: Vec<String> },
    DList { entries: Vec<u32> },
    Marking { from: String, to: String },
    Synthetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub ty: TypeExpr,
    pub source: SourceTag,
}

/// An ordered telescope with unique names; order respects the degrees of
/// the source objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSchema {
    pub name: String,
    pub components: Vec<Component>,
    /// Set when the schema is an explicit truncation of an infinite tuple.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<usize>,
    /// Named constants recorded alongside the schema (e.g. unit maps).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<(String, String)>,
}

impl ContextSchema {
    pub fn new(name: impl Into<String>) -> Self {
        ContextSchema {
            name: name.into(),
            components: Vec::new(),
            truncated: None,
            constants: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, ty: TypeExpr, source: SourceTag) {
        self.components.push(Component {
            name: name.into(),
            ty,
            source,
        });
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TelescopeError {
    #[error("component `{0}` declared twice")]
    DuplicateComponent(String),
    #[error("component `{component}` references `{name}`, which is not declared earlier")]
    ForwardReference { component: String, name: String },
}

/// Telescope well-formedness: names unique, and every reference points to a
/// strictly earlier component (or an ambient name supplied by the caller).
pub fn check_telescope(
    schema: &ContextSchema,
    ambient: &[String],
) -> Result<(), TelescopeError> {
    let mut scope: Vec<String> = ambient.to_vec();
    for c in &schema.components {
        if scope.iter().any(|n| n == &c.name) {
            return Err(TelescopeError::DuplicateComponent(c.name.clone()));
        }
        check_type(&c.ty, &mut scope, &c.name)?;
        scope.push(c.name.clone());
    }
    Ok(())
}

fn check_type(
    ty: &TypeExpr,
    scope: &mut Vec<String>,
    component: &str,
) -> Result<(), TelescopeError> {
    let look = |name: &str, scope: &[String]| -> Result<(), TelescopeError> {
        if scope.iter().any(|n| n == name) {
            Ok(())
        } else {
            Err(TelescopeError::ForwardReference {
                component: component.to_string(),
                name: name.to_string(),
            })
        }
    };
    match ty {
        TypeExpr::Universe => Ok(()),
        TypeExpr::Ref(n) => look(n, scope),
        TypeExpr::FamilyApp { family, args } => {
            look(family, scope)?;
            for a in args {
                look(a, scope)?;
            }
            Ok(())
        }
        TypeExpr::FunType(a, b) => {
            check_type(a, scope, component)?;
            check_type(b, scope, component)
        }
        TypeExpr::SigmaTel(entries) => {
            let depth = scope.len();
            for (name, ty) in entries {
                check_type(ty, scope, component)?;
                scope.push(name.clone());
            }
            scope.truncate(depth);
            Ok(())
        }
        TypeExpr::EqType { lhs, rhs } => {
            check_path(lhs, scope, component)?;
            check_path(rhs, scope, component)
        }
        TypeExpr::IsEquiv(n) => look(n, scope),
        TypeExpr::OpaqueT { args, .. } => {
            for a in args {
                look(a, scope)?;
            }
            Ok(())
        }
    }
}

fn check_path(
    path: &PathExpr,
    scope: &[String],
    component: &str,
) -> Result<(), TelescopeError> {
    let look = |name: &str| -> Result<(), TelescopeError> {
        if scope.iter().any(|n| n == name) {
            Ok(())
        } else {
            Err(TelescopeError::ForwardReference {
                component: component.to_string(),
                name: name.to_string(),
            })
        }
    };
    match path {
        PathExpr::Name(n) => look(n),
        PathExpr::App { fun, arg } | PathExpr::Happly { fun, arg } => {
            look(fun)?;
            look(arg)
        }
        PathExpr::Ap { fun, path } => {
            look(fun)?;
            check_path(path, scope, component)
        }
        PathExpr::Compose(parts) | PathExpr::Concat(parts) => {
            for p in parts {
                check_path(p, scope, component)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn telescope_rejects_forward_references() {
        let mut s = ContextSchema::new("t");
        s.push("A", TypeExpr::Universe, SourceTag::Synthetic);
        s.push("f", TypeExpr::Ref("B".into()), SourceTag::Synthetic);
        assert!(matches!(
            check_telescope(&s, &[]),
            Err(TelescopeError::ForwardReference { .. })
        ));
        let mut s = ContextSchema::new("t");
        s.push("A", TypeExpr::Universe, SourceTag::Synthetic);
        s.push("A", TypeExpr::Universe, SourceTag::Synthetic);
        assert!(matches!(
            check_telescope(&s, &[]),
            Err(TelescopeError::DuplicateComponent(_))
        ));
    }

    #[test]
    fn sigma_binders_scope_locally() {
        let mut s = ContextSchema::new("t");
        s.push("A", TypeExpr::Universe, SourceTag::Synthetic);
        s.push(
            "B",
            TypeExpr::FunType(
                Box::new(TypeExpr::SigmaTel(vec![
                    ("a".into(), TypeExpr::Ref("A".into())),
                    (
                        "b".into(),
                        TypeExpr::FamilyApp { family: "A".into(), args: vec!["a".into()] },
                    ),
                ])),
                Box::new(TypeExpr::Universe),
            ),
            SourceTag::Synthetic,
        );
        // the Σ-bound `a` must not leak into later components
        s.push("C", TypeExpr::Ref("a".into()), SourceTag::Synthetic);
        assert!(matches!(
            check_telescope(&s, &[]),
            Err(TelescopeError::ForwardReference { .. })
        ));
    }
}
