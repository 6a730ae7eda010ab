//! Built-in inputs, so the bundled examples run without authoring JSON.

use diagram_forge::fincat::{build_category, CategorySpec, FinCategory};
use diagram_forge::reedy::delta_plus_op;

pub const NAMES: &str = "E, terminal, parallel-pair, chain3, delta-plus-op-<n>";

pub fn lookup(name: &str) -> Option<FinCategory> {
    if let Some(rest) = name.strip_prefix("delta-plus-op-") {
        let n: usize = rest.parse().ok()?;
        return Some(delta_plus_op(n));
    }
    let spec = spec_json(name)?;
    let spec: CategorySpec = serde_json::from_str(spec).expect("builtin spec parses");
    Some(build_category(&spec, 8).expect("builtin spec saturates"))
}

fn spec_json(name: &str) -> Option<&'static str> {
    match name {
        "E" => Some(
            r#"{"objects":[{"name":"x","degree":0},{"name":"y","degree":1},{"name":"z","degree":2}],
                "generators":[{"name":"u","src":"y","dst":"x"},{"name":"v","src":"y","dst":"x"},
                              {"name":"w","src":"z","dst":"y"}],
                "relations":[[["u","w"],["v","w"]]]}"#,
        ),
        "terminal" => Some(r#"{"objects":[{"name":"pt","degree":0}]}"#),
        "parallel-pair" => Some(
            r#"{"objects":[{"name":"x","degree":0},{"name":"y","degree":1}],
                "generators":[{"name":"f","src":"y","dst":"x"},{"name":"g","src":"y","dst":"x"}]}"#,
        ),
        "chain3" => Some(
            r#"{"objects":[{"name":"x","degree":0},{"name":"y","degree":1},{"name":"z","degree":2}],
                "generators":[{"name":"f","src":"z","dst":"y"},{"name":"g","src":"y","dst":"x"}]}"#,
        ),
        _ => None,
    }
}
