//! JSON, DOT and plain-text renderings of valuations, models and results.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::embedded::EmbeddedResolutionResult;
use crate::hash::fnv1a;
use crate::maclane::InductiveValuation;
use crate::models::{ModelGraph, SpecializationReport};
use crate::valued_field::ValuedField;

/// Literal without spaces, the canonical key for identifiers and labels.
pub fn compact_literal<F: ValuedField>(v: &InductiveValuation<F>) -> String {
    v.literal().replace(' ', "")
}

/// Stable node identifier derived from the compact literal.
pub fn vertex_id<F: ValuedField>(v: &InductiveValuation<F>) -> String {
    format!("n{:016x}", fnv1a(compact_literal(v).as_bytes()))
}

pub fn model_json<F: ValuedField>(g: &ModelGraph<F>) -> Value {
    json!({"valuations": g.vertices().iter().map(|v| v.to_json()).collect::<Vec<_>>()})
}

pub fn dual_graph_json<F: ValuedField>(g: &ModelGraph<F>) -> Value {
    let vs = g.vertices();
    let vertices: Vec<Value> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "id": vertex_id(v),
                "literal": v.literal(),
                "e": g.multiplicities()[i],
                "c": g.self_intersections()[i],
            })
        })
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|&(a, b)| json!([vertex_id(&vs[a]), vertex_id(&vs[b])])).collect();
    json!({"vertices": vertices, "edges": edges})
}

pub fn model_dot<F: ValuedField>(g: &ModelGraph<F>) -> String {
    let vs = g.vertices();
    let mut out = String::from("graph model {\n");
    for (i, v) in vs.iter().enumerate() {
        let label = format!(
            "{}\\n e={}, c={}",
            compact_literal(v),
            g.multiplicities()[i],
            g.self_intersections()[i]
        );
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", vertex_id(v), label);
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", vertex_id(&vs[a]), vertex_id(&vs[b]));
    }
    out.push_str("}\n");
    out
}

pub fn model_text<F: ValuedField>(g: &ModelGraph<F>) -> String {
    let vs = g.vertices();
    let mut out = String::new();
    for (i, v) in vs.iter().enumerate() {
        let _ = writeln!(out, "{}  e={} c={}", v.literal(), g.multiplicities()[i], g.self_intersections()[i]);
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{} -- {}", vs[a].literal(), vs[b].literal());
    }
    out
}

pub fn specialization_json<F: ValuedField>(s: &SpecializationReport<F>) -> Value {
    json!({
        "component": s.component.to_json(),
        "at_node_with": s.at_node_with.as_ref().map(|w| w.to_json()),
    })
}

pub fn specialization_text<F: ValuedField>(s: &SpecializationReport<F>) -> String {
    let node = s.at_node_with.as_ref().map_or_else(|| "none".to_string(), |w| w.literal());
    format!("component: {}\nat_node_with: {}\n", s.component.literal(), node)
}

pub fn embedded_json<F: ValuedField>(r: &EmbeddedResolutionResult<F>) -> Value {
    json!({
        "vf": r.vf.to_json(),
        "vf_prime": r.vf_prime.to_json(),
        "vf_dprime": r.vf_dprime.to_json(),
        "e_prime": r.e_prime,
        "e_dprime": r.e_dprime,
        "chosen": r.chosen.to_string(),
        "model": model_json(&r.model),
        "dual_graph": dual_graph_json(&r.model),
        "specialization": specialization_json(&r.specialization),
    })
}

pub fn embedded_text<F: ValuedField>(r: &EmbeddedResolutionResult<F>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vf: {}", r.vf.literal());
    let _ = writeln!(out, "vf_prime: {}", r.vf_prime.literal());
    let _ = writeln!(out, "vf_dprime: {}", r.vf_dprime.literal());
    let _ = writeln!(out, "e_prime: {}", r.e_prime);
    let _ = writeln!(out, "e_dprime: {}", r.e_dprime);
    let _ = writeln!(out, "chosen: {}", r.chosen);
    out.push_str("model:\n");
    out.push_str(&model_text(&r.model));
    out.push_str(&specialization_text(&r.specialization));
    out
}
