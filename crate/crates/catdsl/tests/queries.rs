//! End-to-end query behavior on one worked workspace.
//!
//! The category is a split idempotent: p = s ∘ r with r ∘ s = id1, so r
//! is a split epimorphism, s a split monomorphism, and p has the obvious
//! nodal decomposition through object 1.  The hand-checked answers below
//! pin the query layer to that arithmetic.

use catdsl::query::{MonoidProperty, Payload};
use catdsl::{emit, parse_query, parse_workspace, run_query, Format, Query, QueryResult};

const FIXTURE: &str = "\
category C {
  objects 2;
  mor p: 0 -> 0;
  mor r: 0 -> 1;
  mor s: 1 -> 0;
  comp r s = p;
  comp s r = id1;
  comp p p = p;
  comp p r = r;
  comp s p = s;
}

monoid M {
  gens a b c;
  rel a c = b c;
  bound 8;
}

vect V = 2;

vect W = 1;

vect U = 1;

lin h: V -> W = matrix [[1, 0]];

lin z: W -> U = matrix [[0]];

pair P = 2 sub [[1, 0]];

pair Pfull = 2 sub [[1, 0], [0, 1]];

lin t: P -> Pfull = matrix [[1, 0], [0, 1]];

net N on C {
  at 0: {id0, r};
  at 1: {id1};
}

class K = sepi;
";

fn run(query: &str) -> QueryResult {
    let ws = parse_workspace(FIXTURE).unwrap();
    let q = parse_query(query).unwrap();
    run_query(&ws, &q).unwrap()
}

#[test]
fn queries_round_trip_through_their_canonical_form() {
    let texts = [
        "validate C",
        "classify C.r",
        "nodal C.p",
        "envelope C.0 in sepi wrt set{p}",
        "imprint C.1 in smono wrt set{s}",
        "netcheck N",
        "netlimit N.0",
        "netmap N.s",
        "nf M a c",
        "mono M a",
        "epi M c",
        "immediate M a c",
        "extremal M a c",
        "kernel h",
        "cokernel h",
        "image t",
        "coimage t",
        "basic h",
        "linnodal t",
        "homology h z",
    ];
    for text in texts {
        let q = parse_query(text).unwrap();
        assert_eq!(catdsl::print_query(&q), text);
        assert_eq!(parse_query(&catdsl::print_query(&q)).unwrap(), q);
    }
}

#[test]
fn the_split_pair_classifies_as_computed_by_hand() {
    let r = run("classify C.r");
    let Payload::Classification { flags, dom, cod, .. } = &r.payload else { panic!() };
    assert_eq!((*dom, *cod), (0, 1));
    let get = |name: &str| flags.iter().find(|(n, _)| *n == name).unwrap().1;
    assert!(!get("mono"), "r is collapsed by the idempotent: r after id0 and after p agree");
    assert!(get("epi"));
    assert!(get("strong_epi"));
    assert!(!get("iso"));
}

#[test]
fn the_idempotent_splits_through_object_one() {
    let r = run("nodal C.p");
    let Payload::NodalTable { found, parts, dom, cod, .. } = &r.payload else { panic!() };
    assert!(*found);
    assert_eq!((*dom, *cod), (0, 0));
    let p = parts.as_ref().unwrap();
    assert_eq!((p.coim, p.im), (1, 1));
    assert_eq!((p.gamma.as_str(), p.rho.as_str(), p.iota.as_str()), ("r", "id1", "s"));

    let dot = emit(&r, Format::Dot);
    assert!(dot.starts_with("digraph nodal {"));
    assert!(dot.contains("color=steelblue"));
    assert!(dot.contains("style=dashed"));
    assert!(dot.contains("color=firebrick"));
}

#[test]
fn the_envelope_of_the_carrier_is_the_retract() {
    let r = run("envelope C.0 in sepi wrt set{p}");
    let Payload::EnvelopeTable { found, rho, apex, mediators, extensions, dual, .. } = &r.payload
    else {
        panic!()
    };
    assert!(!dual);
    assert!(*found);
    assert_eq!(rho.as_deref(), Some("r"));
    assert_eq!(*apex, Some(1));
    let sigmas: Vec<&str> = extensions.iter().map(|s| s.as_str()).collect();
    assert_eq!(sigmas, vec!["id0", "r"]);
    assert!(mediators.iter().any(|(s, _, u)| s == "id0" && u == "r"));
    assert!(mediators.iter().any(|(s, _, u)| s == "r" && u == "id1"));
}

#[test]
fn the_net_is_valid_with_the_carrier_as_local_limit() {
    let r = run("netcheck N");
    let Payload::NetReport { valid, failures } = &r.payload else { panic!() };
    assert!(*valid, "failures: {failures:?}");

    let r = run("netlimit N.0");
    let Payload::NetLimitTable { object, apex, limit_morphism, legs } = &r.payload else {
        panic!()
    };
    assert_eq!((*object, *apex), (0, 0));
    assert_eq!(limit_morphism, "id0");
    assert_eq!(legs.len(), 2);

    let r = run("netmap N.s");
    let Payload::NetMapTable { induced, dom_apex, cod_apex, .. } = &r.payload else { panic!() };
    assert_eq!(induced, "s");
    assert_eq!((*dom_apex, *cod_apex), (1, 0));
}

#[test]
fn monoid_queries_report_bounded_verdicts_with_witnesses() {
    let r = run("nf M a c a c");
    let Payload::WordResult { word, normal_form, .. } = &r.payload else { panic!() };
    assert_eq!((word.as_str(), normal_form.as_str()), ("acac", "bcbc"));

    let r = run("mono M a");
    let Payload::MonoidVerdict { verdict, bound, confluent, .. } = &r.payload else { panic!() };
    assert_eq!((*verdict, *bound, *confluent), ("yes", 8, true));
    assert!(r.witnesses.is_empty());

    let r = run("epi M c");
    let Payload::MonoidVerdict { verdict, .. } = &r.payload else { panic!() };
    assert_eq!(*verdict, "no");
    assert_eq!(r.witnesses[0].items, vec!["a".to_string(), "b".to_string()]);

    let q = parse_query("immediate M 1").unwrap();
    let Query::MonoidCheck { word, property, .. } = &q else { panic!() };
    assert!(word.is_empty());
    assert_eq!(*property, MonoidProperty::ImmediateEpi);
}

#[test]
fn linear_corners_and_homology_come_back_exact() {
    let r = run("kernel h");
    let Payload::LinCornerTable { object, arrow, arrow_role, .. } = &r.payload else { panic!() };
    assert_eq!(object, "Q^1");
    assert_eq!(*arrow_role, "inclusion");
    assert_eq!(*arrow, vec![vec!["0".to_string()], vec!["1".to_string()]]);

    let r = run("image t");
    let Payload::LinCornerTable { object, .. } = &r.payload else { panic!() };
    assert_eq!(object, "(Q^2, sub dim 2)");

    let r = run("linnodal t");
    let Payload::LinPartsTable { steps, parts, .. } = &r.payload else { panic!() };
    assert_eq!(*steps, Some(1));
    assert_eq!(parts.len(), 3);

    let r = run("homology h z");
    let Payload::HomologyTable { h_minus, h_plus, comparison_is_iso, .. } = &r.payload else {
        panic!()
    };
    assert_eq!((h_minus.as_str(), h_plus.as_str()), ("Q^0", "Q^0"));
    assert!(comparison_is_iso);
}

#[test]
fn json_output_is_pinned_for_a_representative_query() {
    let r = run("nf M a c");
    let expected = r#"{
  "schema": "catdsl/1",
  "query": "nf M a c",
  "payload": {
    "kind": "normal_form",
    "monoid": "M",
    "word": "ac",
    "normal_form": "bc"
  },
  "witnesses": []
}
"#;
    assert_eq!(emit(&r, Format::Json), expected);
}

#[test]
fn text_output_carries_timing_but_json_does_not() {
    let r = run("validate C");
    let text = emit(&r, Format::Text);
    assert!(text.contains("elapsed:"));
    let json = emit(&r, Format::Json);
    assert!(!json.contains("elapsed"));
}

#[test]
fn evaluation_errors_name_the_missing_piece() {
    let ws = parse_workspace(FIXTURE).unwrap();
    let e = run_query(&ws, &parse_query("validate D").unwrap()).unwrap_err();
    assert!(e.to_string().contains("unknown category 'D'"));
    let e = run_query(&ws, &parse_query("netlimit N.7").unwrap()).unwrap_err();
    assert!(e.to_string().contains("out of range"));
    let e = run_query(&ws, &parse_query("envelope C.0 in depi wrt set{p}").unwrap()).unwrap_err();
    assert!(e.to_string().contains("class cannot be evaluated"));
    let e = run_query(&ws, &parse_query("homology h t").unwrap()).unwrap_err();
    assert!(e.to_string().contains("same setting"));
}

#[test]
fn minimal_dot_is_emitted_when_there_is_nothing_to_draw() {
    let r = run("netcheck N");
    assert_eq!(emit(&r, Format::Dot), "digraph result {\n}\n");
    let r = run("validate C");
    let dot = emit(&r, Format::Dot);
    assert!(dot.contains("o0 -> o1 [label=\"r\"];"));
    assert!(dot.contains("o1 -> o0 [label=\"s\"];"));
}
