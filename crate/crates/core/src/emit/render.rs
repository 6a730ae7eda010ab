//! Renderers: the paper-style turnstile text notation, an Agda record
//! against a small fixed prelude, and a lossless JSON document.

use super::schema::{Component, ContextSchema, PathExpr, SourceTag, TypeExpr};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Agda,
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "agda" => Ok(Format::Agda),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected agda|json|text)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("name collision after identifier mangling: `{0}` and `{1}` both map to `{2}`")]
    NameCollision(String, String, String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn render(schema: &ContextSchema, format: Format) -> Result<String, RenderError> {
    match format {
        Format::Text => Ok(text(schema)),
        Format::Json => Ok(serde_json::to_string_pretty(schema)? + "\n"),
        Format::Agda => agda(schema),
    }
}

pub fn parse_json(doc: &str) -> Result<ContextSchema, RenderError> {
    Ok(serde_json::from_str(doc)?)
}

// ---------------------------------------------------------------------------
// text
// ---------------------------------------------------------------------------

/// Inline context rendering: `(a : A), (b : B(a))`. Empty contexts print
/// as the unit context `()`.
pub fn context_text(schema: &ContextSchema) -> String {
    if schema.is_empty() {
        return "()".to_string();
    }
    schema
        .components
        .iter()
        .map(|c| format!("({} : {})", c.name, type_text(&c.ty)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn text(schema: &ContextSchema) -> String {
    let mut out = String::new();
    if let Some(k) = schema.truncated {
        let _ = writeln!(out, "-- TRUNCATED: sequences of length <= {k}");
    }
    for (name, value) in &schema.constants {
        let _ = writeln!(out, "-- constant {name}: {value}");
    }
    for c in &schema.components {
        let _ = writeln!(out, "{}", component_text(c));
    }
    out
}

fn component_text(c: &Component) -> String {
    match &c.ty {
        TypeExpr::Universe => format!("⊢ {} type", c.name),
        TypeExpr::FunType(dom, cod)
            if matches!(dom.as_ref(), TypeExpr::SigmaTel(_))
                && matches!(cod.as_ref(), TypeExpr::Universe) =>
        {
            let TypeExpr::SigmaTel(tel) = dom.as_ref() else {
                unreachable!()
            };
            let entries: Vec<String> = tel
                .iter()
                .map(|(v, t)| format!("({} : {})", v, type_text(t)))
                .collect();
            format!("{} ⊢ {} type", entries.join(", "), c.name)
        }
        ty => format!("{} : {}", c.name, type_text(ty)),
    }
}

fn type_text(ty: &TypeExpr) -> String {
    match ty {
        TypeExpr::Universe => "U".to_string(),
        TypeExpr::Ref(n) => n.clone(),
        TypeExpr::FamilyApp { family, args } => format!("{}({})", family, args.join(",")),
        TypeExpr::FunType(a, b) => {
            let left = match a.as_ref() {
                TypeExpr::FunType(..) | TypeExpr::SigmaTel(_) => format!("({})", type_text(a)),
                _ => type_text(a),
            };
            format!("{} → {}", left, type_text(b))
        }
        TypeExpr::SigmaTel(tel) => sigma_text(tel),
        TypeExpr::EqType { lhs, rhs } => format!("{} = {}", path_text(lhs), path_text(rhs)),
        TypeExpr::IsEquiv(n) => format!("isEquiv({n})"),
        TypeExpr::OpaqueT { level, args } => format!("T_[{}]({})", level, args.join(",")),
    }
}

/// `Σ(v : T). body`, or a plain product when no entry is referenced later.
fn sigma_text(tel: &[(String, TypeExpr)]) -> String {
    match tel {
        [] => "1".to_string(),
        [(_, only)] => type_text(only),
        _ => {
            let dependent = tel.iter().enumerate().any(|(i, (v, _))| {
                tel[i + 1..].iter().any(|(_, t)| mentions(t, v))
            });
            if dependent {
                let (last, init) = tel.split_last().unwrap();
                let binders: Vec<String> = init
                    .iter()
                    .map(|(v, t)| format!("Σ({} : {}). ", v, type_text(t)))
                    .collect();
                format!("{}{}", binders.join(""), type_text(&last.1))
            } else {
                let parts: Vec<String> = tel.iter().map(|(_, t)| type_text(t)).collect();
                parts.join(" × ")
            }
        }
    }
}

fn mentions(ty: &TypeExpr, var: &str) -> bool {
    match ty {
        TypeExpr::Universe => false,
        TypeExpr::Ref(n) => n == var,
        TypeExpr::FamilyApp { family, args } => family == var || args.iter().any(|a| a == var),
        TypeExpr::FunType(a, b) => mentions(a, var) || mentions(b, var),
        TypeExpr::SigmaTel(tel) => tel.iter().any(|(_, t)| mentions(t, var)),
        TypeExpr::EqType { lhs, rhs } => path_mentions(lhs, var) || path_mentions(rhs, var),
        TypeExpr::IsEquiv(n) => n == var,
        TypeExpr::OpaqueT { args, .. } => args.iter().any(|a| a == var),
    }
}

fn path_mentions(p: &PathExpr, var: &str) -> bool {
    match p {
        PathExpr::Name(n) => n == var,
        PathExpr::App { fun, arg } | PathExpr::Happly { fun, arg } => fun == var || arg == var,
        PathExpr::Ap { fun, path } => fun == var || path_mentions(path, var),
        PathExpr::Compose(ps) | PathExpr::Concat(ps) => ps.iter().any(|p| path_mentions(p, var)),
    }
}

fn path_text(p: &PathExpr) -> String {
    match p {
        PathExpr::Name(n) => n.clone(),
        PathExpr::App { fun, arg } | PathExpr::Happly { fun, arg } => format!("{fun}({arg})"),
        PathExpr::Ap { fun, path } => format!("ap_{}({})", fun, path_text(path)),
        PathExpr::Compose(ps) => ps
            .iter()
            .map(path_text)
            .collect::<Vec<_>>()
            .join(" ∘ "),
        PathExpr::Concat(ps) => ps.iter().map(path_text).collect::<Vec<_>>().join(" · "),
    }
}

// ---------------------------------------------------------------------------
// agda
// ---------------------------------------------------------------------------

/// Valid Agda identifier: underscores would declare mixfix holes, so
/// everything outside `[A-Za-z0-9']` becomes `-`.
fn mangle(name: &str) -> String {
    let mut out = String::new();
    let mut dash = false;
    for c in name.chars() {
        if c.is_ascii_alphanumeric() || c == '\'' {
            out.push(c);
            dash = false;
        } else if !dash && !out.is_empty() {
            out.push('-');
            dash = true;
        } else {
            dash = true;
        }
    }
    let out = out.trim_end_matches('-').to_string();
    if out.is_empty() || !out.chars().next().unwrap().is_ascii_alphabetic() {
        format!("x{out}")
    } else {
        out
    }
}

fn agda(schema: &ContextSchema) -> Result<String, RenderError> {
    // stable renaming with collision detection
    let mut rename: HashMap<String, String> = HashMap::new();
    let mut taken: HashMap<String, String> = HashMap::new();
    for c in &schema.components {
        let m = mangle(&c.name);
        if let Some(prev) = taken.get(&m) {
            return Err(RenderError::NameCollision(
                prev.clone(),
                c.name.clone(),
                m,
            ));
        }
        taken.insert(m.clone(), c.name.clone());
        rename.insert(c.name.clone(), m);
    }
    let record = {
        let m = mangle(&schema.name);
        let mut chars = m.chars();
        chars
            .next()
            .map(|c| c.to_uppercase().collect::<String>() + chars.as_str())
            .unwrap_or_else(|| "Schema".to_string())
    };

    let mut out = String::new();
    let _ = writeln!(out, "open import Prelude");
    let _ = writeln!(out);
    if let Some(k) = schema.truncated {
        let _ = writeln!(out, "-- truncated: sequences of length at most {k}");
    }
    for (name, value) in &schema.constants {
        let _ = writeln!(out, "-- constant {name}: {value}");
    }
    let _ = writeln!(out, "record {record} : Set₁ where");
    let _ = writeln!(out, "  field");
    for c in &schema.components {
        let ty = agda_component_type(c, &mut |n: &str| {
            rename.get(n).cloned().unwrap_or_else(|| mangle(n))
        });
        let _ = writeln!(out, "    {} : {}", rename[&c.name], ty);
    }
    Ok(out)
}

fn agda_component_type(c: &Component, rn: &mut dyn FnMut(&str) -> String) -> String {
    match (&c.ty, &c.source) {
        // a marking condition names the projection's two families
        (TypeExpr::IsEquiv(_), SourceTag::Marking { from, to }) => {
            format!("IsEquivProj {} {}", rn(to), rn(from))
        }
        (ty, _) => agda_type(ty, rn),
    }
}

fn agda_type(ty: &TypeExpr, rn: &mut dyn FnMut(&str) -> String) -> String {
    match ty {
        TypeExpr::Universe => "Set".to_string(),
        TypeExpr::Ref(n) => rn(n),
        TypeExpr::FamilyApp { family, args } => {
            let tuple = agda_tuple(&args.iter().map(|a| rn(a)).collect::<Vec<_>>());
            format!("{} {}", rn(family), tuple)
        }
        TypeExpr::FunType(a, b) => {
            let left = match a.as_ref() {
                TypeExpr::FunType(..) => format!("({})", agda_type(a, rn)),
                _ => agda_type(a, rn),
            };
            format!("{} → {}", left, agda_type(b, rn))
        }
        TypeExpr::SigmaTel(tel) => agda_sigma(tel, rn),
        TypeExpr::EqType { lhs, rhs } => {
            format!("{} ≡ {}", agda_path(lhs, rn), agda_path(rhs, rn))
        }
        TypeExpr::IsEquiv(n) => format!("IsEquiv {}", rn(n)),
        TypeExpr::OpaqueT { level, args } => {
            let tuple = agda_tuple(&args.iter().map(|a| rn(a)).collect::<Vec<_>>());
            format!("T {} {}", level, tuple)
        }
    }
}

fn agda_tuple(args: &[String]) -> String {
    match args {
        [] => "tt".to_string(),
        [one] => {
            if one.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '-') {
                one.clone()
            } else {
                format!("({one})")
            }
        }
        many => format!("({})", many.join(" , ")),
    }
}

fn agda_sigma(tel: &[(String, TypeExpr)], rn: &mut dyn FnMut(&str) -> String) -> String {
    match tel {
        [] => "⊤".to_string(),
        [(_, only)] => agda_type(only, rn),
        _ => {
            let (last, init) = tel.split_last().unwrap();
            let mut body = agda_type(&last.1, rn);
            for (v, t) in init.iter().rev() {
                body = format!("Σ {} (λ {} → {})", agda_atom(t, rn), mangle(v), body);
            }
            body
        }
    }
}

fn agda_atom(ty: &TypeExpr, rn: &mut dyn FnMut(&str) -> String) -> String {
    match ty {
        TypeExpr::Universe | TypeExpr::Ref(_) => agda_type(ty, rn),
        _ => format!("({})", agda_type(ty, rn)),
    }
}

fn agda_path(p: &PathExpr, rn: &mut dyn FnMut(&str) -> String) -> String {
    match p {
        PathExpr::Name(n) => rn(n),
        PathExpr::App { fun, arg } => format!("({} {})", rn(fun), rn(arg)),
        PathExpr::Happly { fun, arg } => format!("(happly {} {})", rn(fun), rn(arg)),
        PathExpr::Ap { fun, path } => format!("(ap {} {})", rn(fun), agda_path(path, rn)),
        PathExpr::Compose(ps) => {
            let parts: Vec<String> = ps.iter().map(|p| agda_path(p, rn)).collect();
            format!("({})", parts.join(" ∘ "))
        }
        PathExpr::Concat(ps) => {
            let parts: Vec<String> = ps.iter().map(|p| agda_path(p, rn)).collect();
            format!("({})", parts.join(" · "))
        }
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emit::{semisimplicial_type, ContextSchema};

    #[test]
    fn semisimplicial_2_text_matches_the_display() {
        let schema = semisimplicial_type(2);
        let expected = "\
⊢ A_[0] type
(p_0 : A_[0]), (p_1 : A_[0]) ⊢ A_[1] type
(p_0 : A_[0]), (p_1 : A_[0]), (p_2 : A_[0]), (l_01 : A_[1](p_0,p_1)), (l_12 : A_[1](p_1,p_2)), (l_02 : A_[1](p_0,p_2)) ⊢ A_[2] type
";
        assert_eq!(render(&schema, Format::Text).unwrap(), expected);
    }

    #[test]
    fn empty_schema_renders_empty() {
        let schema = ContextSchema::new("nothing");
        assert_eq!(render(&schema, Format::Text).unwrap(), "");
    }

    #[test]
    fn json_round_trips() {
        let schema = semisimplicial_type(3);
        let doc = render(&schema, Format::Json).unwrap();
        assert_eq!(parse_json(&doc).unwrap(), schema);
    }

    #[test]
    fn mangling_avoids_mixfix_holes() {
        assert_eq!(mangle("A_[2]"), "A-2");
        assert_eq!(mangle("u_w"), "u-w");
        assert_eq!(mangle("(w,u)"), "w-u");
        assert_eq!(mangle("0fst"), "x0fst");
    }

    #[test]
    fn agda_render_is_a_record() {
        let schema = semisimplicial_type(2);
        let doc = render(&schema, Format::Agda).unwrap();
        assert!(doc.starts_with("open import Prelude"));
        assert!(doc.contains("record Semisimplicial-2 : Set₁ where"));
        assert!(doc.contains("A-0 : Set"));
        assert!(doc.contains("A-1 : Σ A-0 (λ p-0 → A-0) → Set"));
    }
}
