//! Rendering of query results.
//!
//! Three surfaces with different contracts: `text` is for people and may
//! include timing, `json` is for machines and must be byte-identical for
//! identical inputs (so it carries no timing and fixes the key order),
//! and `dot` draws whatever graph shape the payload suggests, degrading
//! to a minimal valid digraph when there is nothing to draw.

use crate::query::{Payload, QueryResult, Witness};
use serde_json::{json, Map, Value};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl Format {
    pub fn from_name(name: &str) -> Option<Format> {
        match name {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "dot" => Some(Format::Dot),
            _ => None,
        }
    }
}

pub fn emit(r: &QueryResult, format: Format) -> String {
    match format {
        Format::Text => emit_text(r),
        Format::Json => emit_json(r),
        Format::Dot => emit_dot(r),
    }
}

fn matrix_json(m: &[Vec<String>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|s| Value::String(s.clone())).collect()))
            .collect(),
    )
}

fn witnesses_json(ws: &[Witness]) -> Value {
    Value::Array(
        ws.iter()
            .map(|w| {
                json!({
                    "label": w.label,
                    "items": w.items,
                })
            })
            .collect(),
    )
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Validation { objects, morphisms, edges } => json!({
            "kind": "validation",
            "objects": objects,
            "morphisms": morphisms,
            "arrows": edges
                .iter()
                .map(|(n, d, c)| json!({"name": n, "dom": d, "cod": c}))
                .collect::<Vec<_>>(),
        }),
        Payload::Classification { morphism, dom, cod, flags, .. } => {
            let mut fl = Map::new();
            for (name, value) in flags {
                fl.insert(name.to_string(), Value::Bool(*value));
            }
            json!({
                "kind": "classification",
                "morphism": morphism,
                "dom": dom,
                "cod": cod,
                "flags": Value::Object(fl),
            })
        }
        Payload::NodalTable { morphism, dom, cod, found, parts } => json!({
            "kind": "nodal",
            "morphism": morphism,
            "dom": dom,
            "cod": cod,
            "found": found,
            "parts": parts.as_ref().map(|p| json!({
                "gamma": p.gamma,
                "rho": p.rho,
                "iota": p.iota,
                "coim": p.coim,
                "im": p.im,
            })),
        }),
        Payload::EnvelopeTable { dual, object, found, rho, apex, mediators, extensions } => json!({
            "kind": if *dual { "imprint" } else { "envelope" },
            "object": object,
            "found": found,
            "rho": rho,
            "apex": apex,
            "mediators": mediators
                .iter()
                .map(|(s, o, u)| json!({"sigma": s, "endpoint": o, "upsilon": u}))
                .collect::<Vec<_>>(),
            "extensions": extensions,
        }),
        Payload::NetReport { valid, failures } => json!({
            "kind": "netcheck",
            "valid": valid,
            "failures": failures,
        }),
        Payload::NetLimitTable { object, apex, limit_morphism, legs } => json!({
            "kind": "netlimit",
            "object": object,
            "apex": apex,
            "limit_morphism": limit_morphism,
            "legs": legs
                .iter()
                .map(|(s, o, l)| json!({"element": s, "endpoint": o, "leg": l}))
                .collect::<Vec<_>>(),
        }),
        Payload::NetMapTable { morphism, induced, dom_apex, cod_apex } => json!({
            "kind": "netmap",
            "morphism": morphism,
            "induced": induced,
            "dom_apex": dom_apex,
            "cod_apex": cod_apex,
        }),
        Payload::WordResult { monoid, word, normal_form } => json!({
            "kind": "normal_form",
            "monoid": monoid,
            "word": word,
            "normal_form": normal_form,
        }),
        Payload::MonoidVerdict { monoid, property, word, verdict, bound, confluent } => json!({
            "kind": "monoid_verdict",
            "monoid": monoid,
            "property": property,
            "word": word,
            "verdict": verdict,
            "bound": bound,
            "confluent": confluent,
        }),
        Payload::LinCornerTable { construction, morphism, object, arrow_role, arrow } => json!({
            "kind": "corner",
            "construction": construction,
            "morphism": morphism,
            "object": object,
            "arrow_role": arrow_role,
            "arrow": matrix_json(arrow),
        }),
        Payload::LinPartsTable { construction, morphism, steps, parts } => json!({
            "kind": "parts",
            "construction": construction,
            "morphism": morphism,
            "steps": steps,
            "parts": parts
                .iter()
                .map(|(role, src, tgt, m)| json!({
                    "role": role,
                    "source": src,
                    "target": tgt,
                    "matrix": matrix_json(m),
                }))
                .collect::<Vec<_>>(),
        }),
        Payload::HomologyTable { f, g, h_minus, h_plus, comparison, comparison_is_iso } => json!({
            "kind": "homology",
            "f": f,
            "g": g,
            "h_minus": h_minus,
            "h_plus": h_plus,
            "comparison": matrix_json(comparison),
            "comparison_is_iso": comparison_is_iso,
        }),
    }
}

/// Machine form.  Key order is fixed by construction and timing is
/// deliberately absent, so identical inputs produce identical bytes no
/// matter how the work was scheduled.
pub fn emit_json(r: &QueryResult) -> String {
    let v = json!({
        "schema": "catdsl/1",
        "query": r.query,
        "payload": payload_json(&r.payload),
        "witnesses": witnesses_json(&r.witnesses),
    });
    let mut s = serde_json::to_string_pretty(&v).expect("value has no non-string keys");
    s.push('\n');
    s
}

fn write_matrix(out: &mut String, indent: &str, m: &[Vec<String>]) {
    if m.is_empty() {
        let _ = writeln!(out, "{indent}[]");
    }
    for row in m {
        let _ = writeln!(out, "{indent}[{}]", row.join(", "));
    }
}

pub fn emit_text(r: &QueryResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "query: {}", r.query);
    match &r.payload {
        Payload::Validation { objects, morphisms, .. } => {
            let _ = writeln!(out, "valid category: {objects} objects, {morphisms} morphisms");
        }
        Payload::Classification { morphism, dom, cod, flags, .. } => {
            let _ = writeln!(out, "{morphism}: {dom} -> {cod}");
            let rendered: Vec<String> = flags
                .iter()
                .map(|(n, v)| format!("{n} {}", if *v { "yes" } else { "no" }))
                .collect();
            let _ = writeln!(out, "{}", rendered.join(", "));
        }
        Payload::NodalTable { morphism, dom, cod, found, parts } => {
            if let (true, Some(p)) = (*found, parts) {
                let _ = writeln!(out, "nodal decomposition of {morphism}: {dom} -> {cod}");
                let _ = writeln!(out, "gamma {} : {} -> {}", p.gamma, dom, p.coim);
                let _ = writeln!(out, "rho   {} : {} -> {}", p.rho, p.coim, p.im);
                let _ = writeln!(out, "iota  {} : {} -> {}", p.iota, p.im, cod);
            } else {
                let _ = writeln!(out, "{morphism} has no nodal decomposition");
            }
        }
        Payload::EnvelopeTable { dual, object, found, rho, apex, mediators, extensions } => {
            let what = if *dual { "imprint" } else { "envelope" };
            if *found {
                let _ = writeln!(
                    out,
                    "{what} of object {object}: rho {} onto object {}",
                    rho.as_deref().unwrap_or("?"),
                    apex.unwrap_or(usize::MAX),
                );
                for (s, o, u) in mediators {
                    let _ = writeln!(out, "extension {s} (object {o}) mediates via {u}");
                }
            } else {
                let _ = writeln!(out, "object {object} has no {what}");
                if !extensions.is_empty() {
                    let _ = writeln!(out, "extensions considered: {}", extensions.join(", "));
                }
            }
        }
        Payload::NetReport { valid, failures } => {
            if *valid {
                let _ = writeln!(out, "net is valid");
            } else {
                let _ = writeln!(out, "net is invalid:");
                for f in failures {
                    let _ = writeln!(out, "- {f}");
                }
            }
        }
        Payload::NetLimitTable { object, apex, limit_morphism, legs } => {
            let _ = writeln!(
                out,
                "local limit at object {object}: apex {apex}, canonical morphism {limit_morphism}"
            );
            for (s, o, l) in legs {
                let _ = writeln!(out, "leg for {s}: {l} -> object {o}");
            }
        }
        Payload::NetMapTable { morphism, induced, dom_apex, cod_apex } => {
            let _ = writeln!(out, "induced by {morphism}: {induced} : {dom_apex} -> {cod_apex}");
        }
        Payload::WordResult { word, normal_form, .. } => {
            let _ = writeln!(out, "nf({word}) = {normal_form}");
        }
        Payload::MonoidVerdict { property, word, verdict, bound, confluent, .. } => {
            let _ = writeln!(out, "{property}({word}) = {verdict} (bound {bound})");
            if !confluent {
                let _ = writeln!(out, "note: rewriting is not confluent at this bound");
            }
        }
        Payload::LinCornerTable { construction, morphism, object, arrow_role, arrow } => {
            let _ = writeln!(out, "{construction} of {morphism}: {object}");
            let _ = writeln!(out, "{arrow_role} matrix:");
            write_matrix(&mut out, "  ", arrow);
        }
        Payload::LinPartsTable { construction, morphism, steps, parts } => {
            let _ = writeln!(out, "{construction} decomposition of {morphism}");
            if let Some(s) = steps {
                let _ = writeln!(out, "steps: {s}");
            }
            for (role, src, tgt, m) in parts {
                let _ = writeln!(out, "{role}: {src} -> {tgt}");
                write_matrix(&mut out, "  ", m);
            }
        }
        Payload::HomologyTable { h_minus, h_plus, comparison, comparison_is_iso, .. } => {
            let _ = writeln!(out, "lower side: {h_minus}");
            let _ = writeln!(out, "upper side: {h_plus}");
            let _ = writeln!(
                out,
                "comparison {}an isomorphism:",
                if *comparison_is_iso { "is " } else { "is not " }
            );
            write_matrix(&mut out, "  ", comparison);
        }
    }
    for w in &r.witnesses {
        let _ = writeln!(out, "{}: {}", w.label, w.items.join(", "));
    }
    let _ = writeln!(out, "elapsed: {:?}", r.elapsed);
    out
}

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn category_graph(name: &str, edges: &[(String, usize, usize)], highlight: Option<&str>) -> String {
    let mut objects: Vec<usize> = edges.iter().flat_map(|&(_, d, c)| [d, c]).collect();
    objects.sort_unstable();
    objects.dedup();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=LR;");
    for o in &objects {
        let _ = writeln!(out, "  o{o} [label=\"{o}\"];");
    }
    for (n, d, c) in edges {
        let style = if highlight == Some(n.as_str()) {
            ", color=firebrick, penwidth=2"
        } else {
            ""
        };
        let _ = writeln!(out, "  o{d} -> o{c} [label=\"{}\"{style}];", esc(n));
    }
    let _ = writeln!(out, "}}");
    out
}

const MINIMAL: &str = "digraph result {\n}\n";

pub fn emit_dot(r: &QueryResult) -> String {
    match &r.payload {
        Payload::Validation { edges, .. } => category_graph("category", edges, None),
        Payload::Classification { morphism, edges, .. } => {
            category_graph("category", edges, Some(morphism))
        }
        Payload::NodalTable { morphism, dom, cod, found, parts } => {
            let (true, Some(p)) = (*found, parts) else {
                return MINIMAL.to_string();
            };
            let mut out = String::new();
            let _ = writeln!(out, "digraph nodal {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  label=\"{}\";", esc(morphism));
            let _ = writeln!(out, "  n0 [label=\"{dom}\"];");
            let _ = writeln!(out, "  n1 [label=\"{}\"];", p.coim);
            let _ = writeln!(out, "  n2 [label=\"{}\"];", p.im);
            let _ = writeln!(out, "  n3 [label=\"{cod}\"];");
            let _ = writeln!(
                out,
                "  n0 -> n1 [label=\"{}\", color=steelblue, penwidth=2];",
                esc(&p.gamma)
            );
            let _ = writeln!(out, "  n1 -> n2 [label=\"{}\", style=dashed];", esc(&p.rho));
            let _ = writeln!(
                out,
                "  n2 -> n3 [label=\"{}\", color=firebrick, penwidth=2];",
                esc(&p.iota)
            );
            let _ = writeln!(out, "}}");
            out
        }
        Payload::EnvelopeTable { dual, object, found, rho, apex, mediators, .. } => {
            if !found {
                return MINIMAL.to_string();
            }
            let mut out = String::new();
            let graph = if *dual { "imprint" } else { "envelope" };
            let _ = writeln!(out, "digraph {graph} {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  x [label=\"{object}\"];");
            let _ = writeln!(out, "  e [label=\"{}\"];", apex.unwrap_or(usize::MAX));
            let rho = rho.as_deref().unwrap_or("?");
            if *dual {
                let _ = writeln!(out, "  e -> x [label=\"{}\", penwidth=2];", esc(rho));
            } else {
                let _ = writeln!(out, "  x -> e [label=\"{}\", penwidth=2];", esc(rho));
            }
            for (i, (s, o, u)) in mediators.iter().enumerate() {
                let _ = writeln!(out, "  s{i} [label=\"{o}\"];");
                if *dual {
                    let _ = writeln!(out, "  s{i} -> x [label=\"{}\"];", esc(s));
                    let _ = writeln!(out, "  e -> s{i} [label=\"{}\", style=dashed];", esc(u));
                } else {
                    let _ = writeln!(out, "  x -> s{i} [label=\"{}\"];", esc(s));
                    let _ = writeln!(out, "  s{i} -> e [label=\"{}\", style=dashed];", esc(u));
                }
            }
            let _ = writeln!(out, "}}");
            out
        }
        Payload::NetLimitTable { object, apex, limit_morphism, legs } => {
            let mut out = String::new();
            let _ = writeln!(out, "digraph netlimit {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  x [label=\"{object}\"];");
            let _ = writeln!(out, "  a [label=\"{apex}\"];");
            let _ = writeln!(out, "  x -> a [label=\"{}\", penwidth=2];", esc(limit_morphism));
            for (i, (s, o, l)) in legs.iter().enumerate() {
                let _ = writeln!(out, "  t{i} [label=\"{o}\"];");
                let _ = writeln!(out, "  a -> t{i} [label=\"{}\", style=dashed];", esc(l));
                let _ = writeln!(out, "  x -> t{i} [label=\"{}\", color=gray];", esc(s));
            }
            let _ = writeln!(out, "}}");
            out
        }
        Payload::NetMapTable { morphism, induced, dom_apex, cod_apex } => {
            let mut out = String::new();
            let _ = writeln!(out, "digraph netmap {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  a [label=\"{dom_apex}\"];");
            let _ = writeln!(out, "  b [label=\"{cod_apex}\"];");
            let _ = writeln!(
                out,
                "  a -> b [label=\"{} induced by {}\", penwidth=2];",
                esc(induced),
                esc(morphism)
            );
            let _ = writeln!(out, "}}");
            out
        }
        Payload::LinPartsTable { morphism, parts, .. } => {
            if parts.len() != 3 {
                return MINIMAL.to_string();
            }
            let styles = [
                ", color=steelblue, penwidth=2",
                ", style=dashed",
                ", color=firebrick, penwidth=2",
            ];
            let mut out = String::new();
            let _ = writeln!(out, "digraph parts {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  label=\"{}\";", esc(morphism));
            let _ = writeln!(out, "  n0 [label=\"{}\"];", esc(&parts[0].1));
            for (i, part) in parts.iter().enumerate() {
                let _ = writeln!(out, "  n{} [label=\"{}\"];", i + 1, esc(&part.2));
                let _ = writeln!(
                    out,
                    "  n{i} -> n{} [label=\"{}\"{}];",
                    i + 1,
                    esc(&part.0),
                    styles[i]
                );
            }
            let _ = writeln!(out, "}}");
            out
        }
        Payload::HomologyTable { h_minus, h_plus, comparison_is_iso, .. } => {
            let mut out = String::new();
            let _ = writeln!(out, "digraph homology {{");
            let _ = writeln!(out, "  rankdir=LR;");
            let _ = writeln!(out, "  hm [label=\"{}\"];", esc(h_minus));
            let _ = writeln!(out, "  hp [label=\"{}\"];", esc(h_plus));
            let style = if *comparison_is_iso { ", penwidth=2" } else { ", style=dashed" };
            let _ = writeln!(out, "  hm -> hp [label=\"comparison\"{style}];");
            let _ = writeln!(out, "}}");
            out
        }
        _ => MINIMAL.to_string(),
    }
}
