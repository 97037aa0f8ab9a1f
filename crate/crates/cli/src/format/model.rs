//! Countermodels as a text block or a JSON document.

use std::fmt::Write as _;

use confluence_core::KripkeModel;
use serde_json::{json, Map, Value};

/// Worlds, one edge list per agent, then the true propositions of each
/// world. Definition and surrogate symbols are left out.
pub fn write_model(m: &KripkeModel) -> String {
    let mut out = String::new();
    let worlds: Vec<String> = (0..m.world_count()).map(|w| format!("w{w}")).collect();
    writeln!(out, "worlds: {}", worlds.join(" ")).unwrap();
    for agent in m.agents() {
        let edges: Vec<String> = m.edges(agent).into_iter().map(|(u, v)| format!("w{u}->w{v}")).collect();
        writeln!(out, "{}", format!("R{agent}: {}", edges.join(" ")).trim_end()).unwrap();
    }
    for w in 0..m.world_count() {
        let props = visible(m.true_at(w));
        if props.is_empty() {
            writeln!(out, "w{w}:").unwrap();
        } else {
            writeln!(out, "w{w}: {}", props.join(" ")).unwrap();
        }
    }
    out
}

/// `{"worlds": n, "relations": {"1": [[0, 1]]}, "valuation": {"w0": ["p"]}}`.
pub fn model_json(m: &KripkeModel) -> Value {
    let mut relations = Map::new();
    for agent in m.agents() {
        let edges: Vec<Value> = m.edges(agent).into_iter().map(|(u, v)| json!([u, v])).collect();
        relations.insert(agent.to_string(), Value::Array(edges));
    }
    let mut valuation = Map::new();
    for w in 0..m.world_count() {
        valuation.insert(format!("w{w}"), json!(visible(m.true_at(w))));
    }
    json!({ "worlds": m.world_count(), "relations": relations, "valuation": valuation })
}

fn visible<'a>(names: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    names.filter(|n| !n.starts_with('_')).collect()
}
