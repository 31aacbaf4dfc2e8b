//! Query parsing and evaluation.
//!
//! A query is a single line addressing one declaration of a resolved
//! workspace.  Evaluation is deterministic: every search inside the
//! underlying modules is order-preserving, so the same workspace and
//! query yield the same result regardless of the execution mode or
//! thread count.  Timing is measured but carried separately from the
//! payload precisely so serialized payloads stay byte-stable.

use crate::ast::ClassExprAst;
use crate::lexer::{lex, ParseError, Tok};
use crate::parser::Parser;
use crate::workspace::{BuiltCategory, LinKind, Workspace};
use fincat::factor::nodal_decomposition;
use fincat::{
    classify_all, envelope, extensions, imprint, induced_morphism, local_limit, validate_net,
    ClassSpecError, MorId, MorphismClassSpec, Net, NetIssue, ObjId,
};
use monoid_adapter::{BoundedVerdict, RewriteError, Verdict};
use prelin::{pair, vect, LinError, LinMor, PairError, PairMor, PairObj, VectObj};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassRef {
    /// A class keyword or an inline `set{...}` literal.
    Expr(ClassExprAst),
    /// The name of a `class` declaration.
    Named(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoidProperty {
    Mono,
    Epi,
    ImmediateEpi,
    ExtremalEpi,
}

impl MonoidProperty {
    pub fn keyword(self) -> &'static str {
        match self {
            MonoidProperty::Mono => "mono",
            MonoidProperty::Epi => "epi",
            MonoidProperty::ImmediateEpi => "immediate",
            MonoidProperty::ExtremalEpi => "extremal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinConstruction {
    Kernel,
    Cokernel,
    Image,
    Coimage,
}

impl LinConstruction {
    pub fn keyword(self) -> &'static str {
        match self {
            LinConstruction::Kernel => "kernel",
            LinConstruction::Cokernel => "cokernel",
            LinConstruction::Image => "image",
            LinConstruction::Coimage => "coimage",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Validate { category: String },
    Classify { category: String, morphism: String },
    Nodal { category: String, morphism: String },
    Envelope { category: String, object: usize, within: ClassRef, wrt: ClassRef },
    Imprint { category: String, object: usize, within: ClassRef, wrt: ClassRef },
    NetCheck { net: String },
    NetLimit { net: String, object: usize },
    NetMap { net: String, morphism: String },
    NormalForm { monoid: String, word: Vec<String> },
    MonoidCheck { monoid: String, property: MonoidProperty, word: Vec<String> },
    LinCorner { construction: LinConstruction, morphism: String },
    LinBasic { morphism: String },
    LinNodal { morphism: String },
    Homology { f: String, g: String },
}

fn fmt_class_ref(r: &ClassRef) -> String {
    match r {
        ClassRef::Expr(e) => crate::printer::print_class_expr(e),
        ClassRef::Named(n) => n.clone(),
    }
}

fn fmt_tokens(word: &[String]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.join(" ")
    }
}

/// Canonical form of a query; parsing it back gives the same tree.
pub fn print_query(q: &Query) -> String {
    match q {
        Query::Validate { category } => format!("validate {category}"),
        Query::Classify { category, morphism } => format!("classify {category}.{morphism}"),
        Query::Nodal { category, morphism } => format!("nodal {category}.{morphism}"),
        Query::Envelope { category, object, within, wrt } => format!(
            "envelope {category}.{object} in {} wrt {}",
            fmt_class_ref(within),
            fmt_class_ref(wrt)
        ),
        Query::Imprint { category, object, within, wrt } => format!(
            "imprint {category}.{object} in {} wrt {}",
            fmt_class_ref(within),
            fmt_class_ref(wrt)
        ),
        Query::NetCheck { net } => format!("netcheck {net}"),
        Query::NetLimit { net, object } => format!("netlimit {net}.{object}"),
        Query::NetMap { net, morphism } => format!("netmap {net}.{morphism}"),
        Query::NormalForm { monoid, word } => format!("nf {monoid} {}", fmt_tokens(word)),
        Query::MonoidCheck { monoid, property, word } => {
            format!("{} {monoid} {}", property.keyword(), fmt_tokens(word))
        }
        Query::LinCorner { construction, morphism } => {
            format!("{} {morphism}", construction.keyword())
        }
        Query::LinBasic { morphism } => format!("basic {morphism}"),
        Query::LinNodal { morphism } => format!("linnodal {morphism}"),
        Query::Homology { f, g } => format!("homology {f} {g}"),
    }
}

impl Parser {
    fn class_ref(&mut self) -> Result<ClassRef, ParseError> {
        let (word, _) = self.expect_ident("a class keyword, 'set{...}', or a class name")?;
        if word == "set" {
            // Step back onto the keyword so the shared set parser sees it.
            self.unread();
            return Ok(ClassRef::Expr(self.class_body()?));
        }
        match ClassExprAst::from_keyword(&word) {
            Some(e) => Ok(ClassRef::Expr(e)),
            None => Ok(ClassRef::Named(word)),
        }
    }

    fn dotted_name(&mut self) -> Result<(String, String), ParseError> {
        let (owner, _) = self.expect_ident("a declaration name")?;
        self.expect_tok(Tok::Dot)?;
        let (member, _) = self.expect_ident("a morphism name")?;
        Ok((owner, member))
    }

    fn dotted_index(&mut self) -> Result<(String, usize), ParseError> {
        let (owner, _) = self.expect_ident("a declaration name")?;
        self.expect_tok(Tok::Dot)?;
        let idx = self.expect_number("an object index")?;
        Ok((owner, idx))
    }
}

pub fn parse_query(src: &str) -> Result<Query, ParseError> {
    let lexed = lex(src)?;
    let mut p = Parser::new(lexed);
    let verbs = [
        "'validate'",
        "'classify'",
        "'nodal'",
        "'envelope'",
        "'imprint'",
        "'netcheck'",
        "'netlimit'",
        "'netmap'",
        "'nf'",
        "'mono'",
        "'epi'",
        "'immediate'",
        "'extremal'",
        "'kernel'",
        "'cokernel'",
        "'image'",
        "'coimage'",
        "'basic'",
        "'linnodal'",
        "'homology'",
    ];
    let (verb, _) = p.expect_ident("a query verb").map_err(|_| p.fail(&verbs))?;
    let q = match verb.as_str() {
        "validate" => Query::Validate { category: p.expect_ident("a category name")?.0 },
        "classify" => {
            let (category, morphism) = p.dotted_name()?;
            Query::Classify { category, morphism }
        }
        "nodal" => {
            let (category, morphism) = p.dotted_name()?;
            Query::Nodal { category, morphism }
        }
        "envelope" | "imprint" => {
            let (category, object) = p.dotted_index()?;
            p.expect_keyword("in")?;
            let within = p.class_ref()?;
            p.expect_keyword("wrt")?;
            let wrt = p.class_ref()?;
            if verb == "envelope" {
                Query::Envelope { category, object, within, wrt }
            } else {
                Query::Imprint { category, object, within, wrt }
            }
        }
        "netcheck" => Query::NetCheck { net: p.expect_ident("a net name")?.0 },
        "netlimit" => {
            let (net, object) = p.dotted_index()?;
            Query::NetLimit { net, object }
        }
        "netmap" => {
            let (net, morphism) = p.dotted_name()?;
            Query::NetMap { net, morphism }
        }
        "nf" => {
            let monoid = p.expect_ident("a monoid name")?.0;
            Query::NormalForm { monoid, word: p.word()? }
        }
        "mono" | "epi" | "immediate" | "extremal" => {
            let property = match verb.as_str() {
                "mono" => MonoidProperty::Mono,
                "epi" => MonoidProperty::Epi,
                "immediate" => MonoidProperty::ImmediateEpi,
                _ => MonoidProperty::ExtremalEpi,
            };
            let monoid = p.expect_ident("a monoid name")?.0;
            Query::MonoidCheck { monoid, property, word: p.word()? }
        }
        "kernel" | "cokernel" | "image" | "coimage" => {
            let construction = match verb.as_str() {
                "kernel" => LinConstruction::Kernel,
                "cokernel" => LinConstruction::Cokernel,
                "image" => LinConstruction::Image,
                _ => LinConstruction::Coimage,
            };
            Query::LinCorner { construction, morphism: p.expect_ident("a morphism name")?.0 }
        }
        "basic" => Query::LinBasic { morphism: p.expect_ident("a morphism name")?.0 },
        "linnodal" => Query::LinNodal { morphism: p.expect_ident("a morphism name")?.0 },
        "homology" => Query::Homology {
            f: p.expect_ident("a morphism name")?.0,
            g: p.expect_ident("a morphism name")?.0,
        },
        _ => return Err(p.fail(&verbs)),
    };
    if !p.at_end() {
        return Err(p.fail(&["end of the query"]));
    }
    Ok(q)
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QueryError {
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("object index {index} is out of range ({count} objects)")]
    ObjectOutOfRange { index: usize, count: usize },
    #[error("class cannot be evaluated: {source}")]
    ClassSpec {
        #[from]
        source: ClassSpecError,
    },
    #[error("net computation failed: {message}")]
    Net { message: String },
    #[error("rewriting failed: {source}")]
    Rewrite {
        #[from]
        source: RewriteError,
    },
    #[error("word is not over the monoid's generators: {message}")]
    BadWord { message: String },
    #[error("linear computation failed: {source}")]
    Lin {
        #[from]
        source: LinError,
    },
    #[error("decorated computation failed: {source}")]
    Pair {
        #[from]
        source: PairError,
    },
    #[error("'{f}' and '{g}' do not live in the same setting")]
    MixedHomology { f: String, g: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: &'static str,
    pub items: Vec<String>,
}

/// Names of the three nodal components and their middle objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalNames {
    pub gamma: String,
    pub rho: String,
    pub iota: String,
    pub coim: usize,
    pub im: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Validation {
        objects: usize,
        morphisms: usize,
        edges: Vec<(String, usize, usize)>,
    },
    Classification {
        morphism: String,
        dom: usize,
        cod: usize,
        flags: Vec<(&'static str, bool)>,
        edges: Vec<(String, usize, usize)>,
    },
    NodalTable {
        morphism: String,
        dom: usize,
        cod: usize,
        found: bool,
        parts: Option<NodalNames>,
    },
    EnvelopeTable {
        dual: bool,
        object: usize,
        found: bool,
        rho: Option<String>,
        apex: Option<usize>,
        /// One row per extension kept by the terminal object: the
        /// defining morphism, its other endpoint, and the mediator.
        mediators: Vec<(String, usize, String)>,
        /// Defining morphisms of all extensions, even without a terminal
        /// one among them.
        extensions: Vec<String>,
    },
    NetReport {
        valid: bool,
        failures: Vec<String>,
    },
    NetLimitTable {
        object: usize,
        apex: usize,
        limit_morphism: String,
        legs: Vec<(String, usize, String)>,
    },
    NetMapTable {
        morphism: String,
        induced: String,
        dom_apex: usize,
        cod_apex: usize,
    },
    WordResult {
        monoid: String,
        word: String,
        normal_form: String,
    },
    MonoidVerdict {
        monoid: String,
        property: &'static str,
        word: String,
        verdict: &'static str,
        bound: usize,
        confluent: bool,
    },
    LinCornerTable {
        construction: &'static str,
        morphism: String,
        object: String,
        arrow_role: &'static str,
        arrow: Vec<Vec<String>>,
    },
    LinPartsTable {
        construction: &'static str,
        morphism: String,
        steps: Option<usize>,
        parts: Vec<(String, String, String, Vec<Vec<String>>)>,
    },
    HomologyTable {
        f: String,
        g: String,
        h_minus: String,
        h_plus: String,
        comparison: Vec<Vec<String>>,
        comparison_is_iso: bool,
    },
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub query: String,
    pub payload: Payload,
    pub witnesses: Vec<Witness>,
    pub elapsed: Duration,
}

fn desc_vect(v: &VectObj) -> String {
    format!("Q^{}", v.dim)
}

fn desc_pair(p: &PairObj) -> String {
    format!("(Q^{}, sub dim {})", p.dim(), p.subspace().dim())
}

fn lookup_category<'a>(ws: &'a Workspace, name: &str) -> Result<&'a BuiltCategory, QueryError> {
    ws.category(name).ok_or(QueryError::Unknown { kind: "category", name: name.to_string() })
}

fn lookup_morphism(cat: &BuiltCategory, name: &str) -> Result<MorId, QueryError> {
    cat.morphism_id(name)
        .ok_or(QueryError::Unknown { kind: "morphism", name: name.to_string() })
}

fn lookup_object(cat: &BuiltCategory, index: usize) -> Result<ObjId, QueryError> {
    let count = cat.category.object_count();
    if index < count {
        Ok(ObjId(index))
    } else {
        Err(QueryError::ObjectOutOfRange { index, count })
    }
}

fn lookup_net<'a>(ws: &'a Workspace, name: &str) -> Result<(&'a BuiltCategory, &'a Net), QueryError> {
    let (cat_name, net) =
        ws.net(name).ok_or(QueryError::Unknown { kind: "net", name: name.to_string() })?;
    Ok((lookup_category(ws, cat_name)?, net))
}

fn expr_to_spec(cat: &BuiltCategory, e: &ClassExprAst) -> Result<MorphismClassSpec, QueryError> {
    Ok(match e {
        ClassExprAst::All => MorphismClassSpec::AllMorphisms,
        ClassExprAst::Epi => MorphismClassSpec::Epi,
        ClassExprAst::Mono => MorphismClassSpec::Mono,
        ClassExprAst::Bim => MorphismClassSpec::Bim,
        ClassExprAst::SEpi => MorphismClassSpec::SEpi,
        ClassExprAst::SMono => MorphismClassSpec::SMono,
        ClassExprAst::DEpi => MorphismClassSpec::DEpi,
        ClassExprAst::Set(names) => {
            let mut ids = Vec::new();
            for n in names {
                ids.push(lookup_morphism(cat, n)?);
            }
            MorphismClassSpec::ExplicitSet(ids)
        }
    })
}

fn class_spec(
    ws: &Workspace,
    cat: &BuiltCategory,
    r: &ClassRef,
) -> Result<MorphismClassSpec, QueryError> {
    match r {
        ClassRef::Expr(e) => expr_to_spec(cat, e),
        ClassRef::Named(n) => {
            let e = ws
                .class(n)
                .ok_or(QueryError::Unknown { kind: "class", name: n.clone() })?;
            expr_to_spec(cat, e)
        }
    }
}

fn context_edges(cat: &BuiltCategory) -> Vec<(String, usize, usize)> {
    let c = &cat.category;
    c.morphisms()
        .filter(|&m| !c.is_identity(m))
        .map(|m| (cat.morphism_name(m).to_string(), c.dom(m).0, c.cod(m).0))
        .collect()
}

fn render_net_issue(cat: &BuiltCategory, issue: &NetIssue) -> String {
    let name = |m: &MorId| cat.morphism_name(*m).to_string();
    match issue {
        NetIssue::ElementNotEpiFromObject { object, element } => {
            format!("element {} at object {} is not an epimorphism out of it", name(element), object.0)
        }
        NetIssue::EmptyAtObject { object } => format!("no elements at object {}", object.0),
        NetIssue::NotDirected { object, sigma, sigma_prime } => format!(
            "elements {} and {} at object {} have no common refinement in the net",
            name(sigma),
            name(sigma_prime),
            object.0
        ),
        NetIssue::InvalidBindingShape { object, detail } => {
            format!("binding system at object {} is malformed: {detail}", object.0)
        }
        NetIssue::MissingBindingLimit { object } => {
            format!("binding system at object {} has no limit", object.0)
        }
        NetIssue::MissingCounterfort { alpha, tau } => {
            format!("no net element at the source of {} fills onto {}", name(alpha), name(tau))
        }
    }
}

fn monoid_word(
    m: &monoid_adapter::MonoidPresentation,
    tokens: &[String],
) -> Result<Vec<u8>, QueryError> {
    if tokens.is_empty() {
        return Ok(Vec::new());
    }
    m.parse_word(&tokens.join(" "))
        .map_err(|e| QueryError::BadWord { message: e.to_string() })
}

fn verdict_str(v: &BoundedVerdict) -> &'static str {
    match v.value {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::UnknownAtBound => "unknown at bound",
    }
}

pub fn run_query(ws: &Workspace, q: &Query) -> Result<QueryResult, QueryError> {
    let started = Instant::now();
    let (payload, witnesses) = eval(ws, q)?;
    Ok(QueryResult {
        query: print_query(q),
        payload,
        witnesses,
        elapsed: started.elapsed(),
    })
}

fn eval(ws: &Workspace, q: &Query) -> Result<(Payload, Vec<Witness>), QueryError> {
    match q {
        Query::Validate { category } => {
            let cat = lookup_category(ws, category)?;
            let payload = Payload::Validation {
                objects: cat.category.object_count(),
                morphisms: cat.category.morphism_count(),
                edges: context_edges(cat),
            };
            Ok((payload, Vec::new()))
        }
        Query::Classify { category, morphism } => {
            let cat = lookup_category(ws, category)?;
            let m = lookup_morphism(cat, morphism)?;
            let all = classify_all(&cat.category);
            let cls = &all[m.0];
            let flags = vec![
                ("mono", cls.mono),
                ("epi", cls.epi),
                ("bim", cls.bim),
                ("iso", cls.iso),
                ("immediate_mono", cls.immediate_mono),
                ("immediate_epi", cls.immediate_epi),
                ("strong_mono", cls.strong_mono),
                ("strong_epi", cls.strong_epi),
            ];
            let payload = Payload::Classification {
                morphism: morphism.clone(),
                dom: cat.category.dom(m).0,
                cod: cat.category.cod(m).0,
                flags,
                edges: context_edges(cat),
            };
            Ok((payload, Vec::new()))
        }
        Query::Nodal { category, morphism } => {
            let cat = lookup_category(ws, category)?;
            let m = lookup_morphism(cat, morphism)?;
            let c = &cat.category;
            let found = nodal_decomposition(c, m);
            let parts = found.as_ref().map(|n| NodalNames {
                gamma: cat.morphism_name(n.coim_inf).to_string(),
                rho: cat.morphism_name(n.red_inf).to_string(),
                iota: cat.morphism_name(n.im_inf).to_string(),
                coim: n.coim.0,
                im: n.im.0,
            });
            let witnesses = parts
                .as_ref()
                .map(|p| {
                    vec![Witness {
                        label: "components",
                        items: vec![p.gamma.clone(), p.rho.clone(), p.iota.clone()],
                    }]
                })
                .unwrap_or_default();
            let payload = Payload::NodalTable {
                morphism: morphism.clone(),
                dom: c.dom(m).0,
                cod: c.cod(m).0,
                found: parts.is_some(),
                parts,
            };
            Ok((payload, witnesses))
        }
        Query::Envelope { category, object, within, wrt } => {
            let cat = lookup_category(ws, category)?;
            let x = lookup_object(cat, *object)?;
            let omega = class_spec(ws, cat, within)?;
            let phi = class_spec(ws, cat, wrt)?;
            let exts = extensions(&cat.category, x, &omega, &phi)?;
            let extension_names: Vec<String> =
                exts.iter().map(|e| cat.morphism_name(e.sigma).to_string()).collect();
            let res = envelope(&cat.category, x, &omega, &phi)?;
            let witnesses = vec![Witness { label: "extensions", items: extension_names.clone() }];
            let payload = match res {
                Some(r) => Payload::EnvelopeTable {
                    dual: false,
                    object: *object,
                    found: true,
                    rho: Some(cat.morphism_name(r.rho).to_string()),
                    apex: Some(r.e.0),
                    mediators: r
                        .upsilon
                        .iter()
                        .map(|(&s, &u)| {
                            (
                                cat.morphism_name(s).to_string(),
                                cat.category.cod(s).0,
                                cat.morphism_name(u).to_string(),
                            )
                        })
                        .collect(),
                    extensions: extension_names,
                },
                None => Payload::EnvelopeTable {
                    dual: false,
                    object: *object,
                    found: false,
                    rho: None,
                    apex: None,
                    mediators: Vec::new(),
                    extensions: extension_names,
                },
            };
            Ok((payload, witnesses))
        }
        Query::Imprint { category, object, within, wrt } => {
            let cat = lookup_category(ws, category)?;
            let x = lookup_object(cat, *object)?;
            let omega = class_spec(ws, cat, within)?;
            let phi = class_spec(ws, cat, wrt)?;
            let res = imprint(&cat.category, x, &omega, &phi)?;
            let payload = match res {
                Some(r) => {
                    let mediators: Vec<(String, usize, String)> = r
                        .upsilon
                        .iter()
                        .map(|(&s, &u)| {
                            (
                                cat.morphism_name(s).to_string(),
                                cat.category.dom(s).0,
                                cat.morphism_name(u).to_string(),
                            )
                        })
                        .collect();
                    Payload::EnvelopeTable {
                        dual: true,
                        object: *object,
                        found: true,
                        rho: Some(cat.morphism_name(r.rho).to_string()),
                        apex: Some(r.e.0),
                        extensions: mediators.iter().map(|(s, _, _)| s.clone()).collect(),
                        mediators,
                    }
                }
                None => Payload::EnvelopeTable {
                    dual: true,
                    object: *object,
                    found: false,
                    rho: None,
                    apex: None,
                    mediators: Vec::new(),
                    extensions: Vec::new(),
                },
            };
            let witnesses = match &payload {
                Payload::EnvelopeTable { extensions, .. } => {
                    vec![Witness { label: "extensions", items: extensions.clone() }]
                }
                _ => unreachable!(),
            };
            Ok((payload, witnesses))
        }
        Query::NetCheck { net } => {
            let (cat, n) = lookup_net(ws, net)?;
            let report = validate_net(&cat.category, n);
            let failures: Vec<String> =
                report.failures.iter().map(|i| render_net_issue(cat, i)).collect();
            let witnesses = if failures.is_empty() {
                Vec::new()
            } else {
                vec![Witness { label: "failures", items: failures.clone() }]
            };
            Ok((Payload::NetReport { valid: report.is_valid(), failures }, witnesses))
        }
        Query::NetLimit { net, object } => {
            let (cat, n) = lookup_net(ws, net)?;
            let x = lookup_object(cat, *object)?;
            let lim = local_limit(&cat.category, n, x)
                .map_err(|i| QueryError::Net { message: render_net_issue(cat, &i) })?;
            let legs: Vec<(String, usize, String)> = lim
                .legs
                .iter()
                .map(|(&sigma, &leg)| {
                    (
                        cat.morphism_name(sigma).to_string(),
                        cat.category.cod(sigma).0,
                        cat.morphism_name(leg).to_string(),
                    )
                })
                .collect();
            let payload = Payload::NetLimitTable {
                object: *object,
                apex: lim.x_n.0,
                limit_morphism: cat.morphism_name(lim.limit_morphism).to_string(),
                legs,
            };
            Ok((payload, Vec::new()))
        }
        Query::NetMap { net, morphism } => {
            let (cat, n) = lookup_net(ws, net)?;
            let alpha = lookup_morphism(cat, morphism)?;
            let induced = induced_morphism(&cat.category, n, alpha)
                .map_err(|i| QueryError::Net { message: render_net_issue(cat, &i) })?;
            let payload = Payload::NetMapTable {
                morphism: morphism.clone(),
                induced: cat.morphism_name(induced).to_string(),
                dom_apex: cat.category.dom(induced).0,
                cod_apex: cat.category.cod(induced).0,
            };
            Ok((payload, Vec::new()))
        }
        Query::NormalForm { monoid, word } => {
            let m = ws
                .monoid(monoid)
                .ok_or(QueryError::Unknown { kind: "monoid", name: monoid.clone() })?;
            let w = monoid_word(m, word)?;
            let nf = m.normal_form(&w)?;
            let payload = Payload::WordResult {
                monoid: monoid.clone(),
                word: m.format_word(&w),
                normal_form: m.format_word(&nf),
            };
            Ok((payload, Vec::new()))
        }
        Query::MonoidCheck { monoid, property, word } => {
            let m = ws
                .monoid(monoid)
                .ok_or(QueryError::Unknown { kind: "monoid", name: monoid.clone() })?;
            let w = monoid_word(m, word)?;
            let v = match property {
                MonoidProperty::Mono => m.bounded_is_mono(&w),
                MonoidProperty::Epi => m.bounded_is_epi(&w),
                MonoidProperty::ImmediateEpi => m.bounded_is_immediate_epi(&w),
                MonoidProperty::ExtremalEpi => m.bounded_is_extremal_epi(&w),
            };
            let witnesses = v
                .witness
                .as_ref()
                .map(|(a, b)| {
                    vec![Witness {
                        label: "counterexample",
                        items: vec![m.format_word(a), m.format_word(b)],
                    }]
                })
                .unwrap_or_default();
            let payload = Payload::MonoidVerdict {
                monoid: monoid.clone(),
                property: property.keyword(),
                word: m.format_word(&w),
                verdict: verdict_str(&v),
                bound: v.bound_used,
                confluent: m.is_confluent_at_bound(),
            };
            Ok((payload, witnesses))
        }
        Query::LinCorner { construction, morphism } => {
            let lk = ws
                .lin(morphism)
                .ok_or(QueryError::Unknown { kind: "morphism", name: morphism.clone() })?;
            let (object, arrow, role): (String, Vec<Vec<String>>, &'static str) = match lk {
                LinKind::Vect(f) => {
                    let (obj, arrow) = match construction {
                        LinConstruction::Kernel => vect::kernel(f),
                        LinConstruction::Cokernel => vect::cokernel(f),
                        LinConstruction::Image => vect::image(f),
                        LinConstruction::Coimage => vect::coimage(f),
                    };
                    (desc_vect(&obj), arrow.matrix.entry_strings(), corner_role(*construction))
                }
                LinKind::Pair(f) => {
                    let (obj, arrow) = match construction {
                        LinConstruction::Kernel => pair::kernel(f),
                        LinConstruction::Cokernel => pair::cokernel(f),
                        LinConstruction::Image => pair::image(f),
                        LinConstruction::Coimage => pair::coimage(f),
                    };
                    (desc_pair(&obj), arrow.matrix().entry_strings(), corner_role(*construction))
                }
            };
            let payload = Payload::LinCornerTable {
                construction: construction.keyword(),
                morphism: morphism.clone(),
                object,
                arrow_role: role,
                arrow,
            };
            Ok((payload, Vec::new()))
        }
        Query::LinBasic { morphism } => lin_parts(ws, morphism, false),
        Query::LinNodal { morphism } => lin_parts(ws, morphism, true),
        Query::Homology { f, g } => {
            let lf = ws.lin(f).ok_or(QueryError::Unknown { kind: "morphism", name: f.clone() })?;
            let lg = ws.lin(g).ok_or(QueryError::Unknown { kind: "morphism", name: g.clone() })?;
            let payload = match (lf, lg) {
                (LinKind::Vect(mf), LinKind::Vect(mg)) => {
                    let h = vect::homology(mf, mg)?;
                    Payload::HomologyTable {
                        f: f.clone(),
                        g: g.clone(),
                        h_minus: desc_vect(&h.h_minus),
                        h_plus: desc_vect(&h.h_plus),
                        comparison: h.h.matrix.entry_strings(),
                        comparison_is_iso: h.h.is_iso(),
                    }
                }
                (LinKind::Pair(mf), LinKind::Pair(mg)) => {
                    let h = prelin::homology::homology(mf, mg)?;
                    Payload::HomologyTable {
                        f: f.clone(),
                        g: g.clone(),
                        h_minus: desc_pair(&h.h_minus),
                        h_plus: desc_pair(&h.h_plus),
                        comparison: h.h.matrix().entry_strings(),
                        comparison_is_iso: h.h.is_iso(),
                    }
                }
                _ => return Err(QueryError::MixedHomology { f: f.clone(), g: g.clone() }),
            };
            Ok((payload, Vec::new()))
        }
    }
}

fn corner_role(c: LinConstruction) -> &'static str {
    match c {
        LinConstruction::Kernel | LinConstruction::Image => "inclusion",
        LinConstruction::Cokernel | LinConstruction::Coimage => "projection",
    }
}

fn lin_parts(ws: &Workspace, morphism: &str, nodal: bool) -> Result<(Payload, Vec<Witness>), QueryError> {
    let lk = ws
        .lin(morphism)
        .ok_or(QueryError::Unknown { kind: "morphism", name: morphism.to_string() })?;
    let mut parts: Vec<(String, String, String, Vec<Vec<String>>)> = Vec::new();
    let mut steps = None;
    match lk {
        LinKind::Vect(f) => {
            let push = |parts: &mut Vec<(String, String, String, Vec<Vec<String>>)>,
                        role: &str,
                        m: &LinMor| {
                parts.push((
                    role.to_string(),
                    desc_vect(&m.source),
                    desc_vect(&m.target),
                    m.matrix.entry_strings(),
                ));
            };
            if nodal {
                let n = vect::nodal_decomposition(f);
                steps = Some(n.steps);
                push(&mut parts, "gamma", &n.gamma);
                push(&mut parts, "rho", &n.rho);
                push(&mut parts, "iota", &n.iota);
            } else {
                let b = vect::basic_decomposition(f);
                push(&mut parts, "coim", &b.coim);
                push(&mut parts, "red", &b.red);
                push(&mut parts, "im", &b.im);
            }
        }
        LinKind::Pair(f) => {
            let push = |parts: &mut Vec<(String, String, String, Vec<Vec<String>>)>,
                        role: &str,
                        m: &PairMor| {
                parts.push((
                    role.to_string(),
                    desc_pair(m.source()),
                    desc_pair(m.target()),
                    m.matrix().entry_strings(),
                ));
            };
            if nodal {
                let n = pair::nodal_decomposition(f);
                steps = Some(n.steps);
                push(&mut parts, "gamma", &n.gamma);
                push(&mut parts, "rho", &n.rho);
                push(&mut parts, "iota", &n.iota);
            } else {
                let b = pair::basic_decomposition(f);
                push(&mut parts, "coim", &b.coim);
                push(&mut parts, "red", &b.red);
                push(&mut parts, "im", &b.im);
            }
        }
    }
    let payload = Payload::LinPartsTable {
        construction: if nodal { "nodal" } else { "basic" },
        morphism: morphism.to_string(),
        steps,
        parts,
    };
    Ok((payload, Vec::new()))
}
