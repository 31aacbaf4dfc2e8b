//! Resolution of a parsed workspace into live values.
//!
//! Declarations are processed in order and may only mention names that
//! are already bound, so a file never needs two passes and cycles cannot
//! arise.  Each kind of declaration keeps its own namespace, except that
//! vector and decorated objects share one: a morphism's endpoints must
//! name objects of a single setting, and sharing the namespace keeps the
//! lookup unambiguous.

use crate::ast::*;
use crate::lexer::Pos;
use fincat::{validate_category, CategoryError, FinCategory, MorId, Net, ObjId, RawCategory};
use monoid_adapter::{MonoidPresentation, PresentationError, DEFAULT_BOUND};
use prelin::{LinError, LinMor, PairError, PairMor, PairObj, RatMatrix, VectObj};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ResolveError {
    #[error("{pos}: duplicate {kind} name '{name}'")]
    DuplicateName { kind: &'static str, name: String, pos: Pos },
    #[error("{pos}: '{name}' is reserved by the class grammar")]
    ReservedName { name: String, pos: Pos },
    #[error("{pos}: unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String, pos: Pos },
    #[error("{pos}: object index {index} is out of range ({count} objects)")]
    ObjectOutOfRange { index: usize, count: usize, pos: Pos },
    #[error("{pos}: the pair f g was already given a composite")]
    DuplicateComposition { pos: Pos },
    #[error("{pos}: net lists object {object} twice")]
    DuplicateNetObject { object: usize, pos: Pos },
    #[error("{pos}: matrix rows have unequal lengths")]
    RaggedMatrix { pos: Pos },
    #[error("category '{name}' fails validation: {source}")]
    Category { name: String, source: CategoryError },
    #[error("monoid '{name}' is not usable: {source}")]
    Monoid { name: String, source: PresentationError },
    #[error("object '{name}' is malformed: {source}")]
    PairObject { name: String, source: PairError },
    #[error("morphism '{name}' is malformed: {source}")]
    LinMorphism { name: String, source: LinError },
    #[error("morphism '{name}' is malformed: {source}")]
    PairMorphism { name: String, source: PairError },
    #[error("{pos}: morphism '{name}' mixes plain and decorated endpoints")]
    MixedEndpoints { name: String, pos: Pos },
}

/// A finite category together with the user-facing names of its
/// morphisms, index-aligned with `MorId`.
#[derive(Clone)]
pub struct BuiltCategory {
    pub category: FinCategory,
    pub morphism_names: Vec<String>,
}

impl std::fmt::Debug for BuiltCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BuiltCategory")
            .field("objects", &self.category.object_count())
            .field("morphisms", &self.morphism_names)
            .finish()
    }
}

impl BuiltCategory {
    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphism_names.iter().position(|n| n == name).map(MorId)
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphism_names[m.0]
    }
}

/// A linear morphism in either the plain or the decorated setting.
#[derive(Clone, Debug)]
pub enum LinKind {
    Vect(LinMor),
    Pair(PairMor),
}

#[derive(Clone, Debug)]
pub enum ObjKind {
    Vect(VectObj),
    Pair(PairObj),
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub ast: WorkspaceAst,
    pub categories: Vec<(String, BuiltCategory)>,
    pub monoids: Vec<(String, MonoidPresentation)>,
    pub objects: Vec<(String, ObjKind)>,
    pub lin_morphisms: Vec<(String, LinKind)>,
    pub nets: Vec<(String, String, Net)>,
    pub classes: Vec<(String, ClassExprAst)>,
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&BuiltCategory> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn monoid(&self, name: &str) -> Option<&MonoidPresentation> {
        self.monoids.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn object(&self, name: &str) -> Option<&ObjKind> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn lin(&self, name: &str) -> Option<&LinKind> {
        self.lin_morphisms.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }

    pub fn net(&self, name: &str) -> Option<(&str, &Net)> {
        self.nets.iter().find(|(n, _, _)| n == name).map(|(_, c, net)| (c.as_str(), net))
    }

    pub fn class(&self, name: &str) -> Option<&ClassExprAst> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

fn check_fresh(
    taken: &mut BTreeSet<String>,
    kind: &'static str,
    name: &str,
    pos: Pos,
) -> Result<(), ResolveError> {
    if taken.insert(name.to_string()) {
        Ok(())
    } else {
        Err(ResolveError::DuplicateName { kind, name: name.to_string(), pos })
    }
}

fn rows_matrix(rows: &[Vec<prelin::Q>], width_when_empty: usize, pos: Pos) -> Result<RatMatrix, ResolveError> {
    if rows.is_empty() {
        return Ok(RatMatrix::zeros(0, width_when_empty));
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(ResolveError::RaggedMatrix { pos });
    }
    Ok(RatMatrix::from_rows(rows.to_vec()))
}

fn build_category(d: &CategoryDecl) -> Result<BuiltCategory, ResolveError> {
    let n = d.object_count;
    let mut names: Vec<String> = (0..n).map(|i| format!("id{i}")).collect();
    let mut index: HashMap<String, usize> =
        names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut dom: Vec<usize> = (0..n).collect();
    let mut cod: Vec<usize> = (0..n).collect();
    for m in &d.morphisms {
        for &end in [m.dom, m.cod].iter() {
            if end >= n {
                return Err(ResolveError::ObjectOutOfRange { index: end, count: n, pos: m.pos });
            }
        }
        if index.insert(m.name.clone(), names.len()).is_some() {
            return Err(ResolveError::DuplicateName { kind: "morphism", name: m.name.clone(), pos: m.pos });
        }
        names.push(m.name.clone());
        dom.push(m.dom);
        cod.push(m.cod);
    }
    let mut declared: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut comp: Vec<(usize, usize, usize)> = Vec::new();
    let lookup = |name: &str, pos: Pos| {
        index
            .get(name)
            .copied()
            .ok_or(ResolveError::UnknownName { kind: "morphism", name: name.to_string(), pos })
    };
    for c in &d.compositions {
        let f = lookup(&c.f, c.pos)?;
        let g = lookup(&c.g, c.pos)?;
        let h = lookup(&c.h, c.pos)?;
        if !declared.insert((f, g)) {
            return Err(ResolveError::DuplicateComposition { pos: c.pos });
        }
        comp.push((f, g, h));
    }
    // Identities compose trivially on either side; spell those entries out
    // so the file only has to list the interesting pairs.
    for m in 0..names.len() {
        for (f, g) in [(dom[m], m), (m, cod[m])] {
            if declared.insert((f, g)) {
                comp.push((f, g, m));
            }
        }
    }
    let raw = RawCategory {
        object_count: n,
        dom,
        cod,
        identity: (0..n).collect(),
        comp,
        object_labels: None,
        morphism_labels: Some(names.clone()),
    };
    let category = validate_category(raw)
        .map_err(|source| ResolveError::Category { name: d.name.clone(), source })?;
    Ok(BuiltCategory { category, morphism_names: names })
}

fn build_monoid(d: &MonoidDecl, bound_override: Option<usize>) -> Result<MonoidPresentation, ResolveError> {
    let gen_index: HashMap<&str, u8> =
        d.generators.iter().enumerate().map(|(i, s)| (s.as_str(), i as u8)).collect();
    let mut relations = Vec::new();
    for r in &d.relations {
        let side = |word: &[String]| -> Result<Vec<u8>, ResolveError> {
            word.iter()
                .map(|s| {
                    gen_index.get(s.as_str()).copied().ok_or(ResolveError::UnknownName {
                        kind: "generator",
                        name: s.clone(),
                        pos: r.pos,
                    })
                })
                .collect()
        };
        relations.push((side(&r.lhs)?, side(&r.rhs)?));
    }
    let bound = bound_override.or(d.bound).unwrap_or(DEFAULT_BOUND);
    MonoidPresentation::new(d.generators.clone(), relations, bound)
        .map_err(|source| ResolveError::Monoid { name: d.name.clone(), source })
}

/// Options applied during resolution; the discovery surface for command
/// line overrides.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResolveOptions {
    /// Replaces the bound of every monoid in the file when set.
    pub bound_override: Option<usize>,
}

pub fn resolve(ast: WorkspaceAst) -> Result<Workspace, ResolveError> {
    resolve_with(ast, ResolveOptions::default())
}

pub fn resolve_with(ast: WorkspaceAst, opts: ResolveOptions) -> Result<Workspace, ResolveError> {
    let mut ws = Workspace {
        ast: WorkspaceAst { decls: Vec::new() },
        categories: Vec::new(),
        monoids: Vec::new(),
        objects: Vec::new(),
        lin_morphisms: Vec::new(),
        nets: Vec::new(),
        classes: Vec::new(),
    };
    let mut cat_names = BTreeSet::new();
    let mut monoid_names = BTreeSet::new();
    let mut object_names = BTreeSet::new();
    let mut lin_names = BTreeSet::new();
    let mut net_names = BTreeSet::new();
    let mut class_names = BTreeSet::new();
    for decl in &ast.decls {
        match decl {
            Decl::Category(d) => {
                check_fresh(&mut cat_names, "category", &d.name, d.pos)?;
                let built = build_category(d)?;
                ws.categories.push((d.name.clone(), built));
            }
            Decl::Monoid(d) => {
                check_fresh(&mut monoid_names, "monoid", &d.name, d.pos)?;
                let m = build_monoid(d, opts.bound_override)?;
                ws.monoids.push((d.name.clone(), m));
            }
            Decl::Vect(d) => {
                check_fresh(&mut object_names, "object", &d.name, d.pos)?;
                ws.objects.push((d.name.clone(), ObjKind::Vect(VectObj::new(d.dim))));
            }
            Decl::Pair(d) => {
                check_fresh(&mut object_names, "object", &d.name, d.pos)?;
                let rows = rows_matrix(&d.sub_rows, d.dim, d.pos)?;
                let obj = PairObj::new(d.dim, &rows)
                    .map_err(|source| ResolveError::PairObject { name: d.name.clone(), source })?;
                ws.objects.push((d.name.clone(), ObjKind::Pair(obj)));
            }
            Decl::Lin(d) => {
                check_fresh(&mut lin_names, "morphism", &d.name, d.pos)?;
                let src = ws.object(&d.source).ok_or(ResolveError::UnknownName {
                    kind: "object",
                    name: d.source.clone(),
                    pos: d.pos,
                })?;
                let tgt = ws.object(&d.target).ok_or(ResolveError::UnknownName {
                    kind: "object",
                    name: d.target.clone(),
                    pos: d.pos,
                })?;
                let built = match (src, tgt) {
                    (ObjKind::Vect(s), ObjKind::Vect(t)) => {
                        let m = rows_matrix(&d.rows, s.dim, d.pos)?;
                        LinKind::Vect(LinMor::new(*s, *t, m).map_err(|source| {
                            ResolveError::LinMorphism { name: d.name.clone(), source }
                        })?)
                    }
                    (ObjKind::Pair(s), ObjKind::Pair(t)) => {
                        let m = rows_matrix(&d.rows, s.dim(), d.pos)?;
                        LinKind::Pair(PairMor::new(s.clone(), t.clone(), m).map_err(
                            |source| ResolveError::PairMorphism { name: d.name.clone(), source },
                        )?)
                    }
                    _ => {
                        return Err(ResolveError::MixedEndpoints { name: d.name.clone(), pos: d.pos })
                    }
                };
                ws.lin_morphisms.push((d.name.clone(), built));
            }
            Decl::Net(d) => {
                check_fresh(&mut net_names, "net", &d.name, d.pos)?;
                let built = ws.category(&d.category).ok_or(ResolveError::UnknownName {
                    kind: "category",
                    name: d.category.clone(),
                    pos: d.pos,
                })?;
                let count = built.category.object_count();
                let mut per_object: BTreeMap<ObjId, Vec<MorId>> = BTreeMap::new();
                for e in &d.entries {
                    if e.object >= count {
                        return Err(ResolveError::ObjectOutOfRange {
                            index: e.object,
                            count,
                            pos: e.pos,
                        });
                    }
                    let mut elems = Vec::new();
                    for m in &e.elements {
                        elems.push(built.morphism_id(m).ok_or(ResolveError::UnknownName {
                            kind: "morphism",
                            name: m.clone(),
                            pos: e.pos,
                        })?);
                    }
                    if per_object.insert(ObjId(e.object), elems).is_some() {
                        return Err(ResolveError::DuplicateNetObject { object: e.object, pos: e.pos });
                    }
                }
                ws.nets.push((d.name.clone(), d.category.clone(), Net::new(per_object)));
            }
            Decl::Class(d) => {
                if RESERVED_CLASS_WORDS.contains(&d.name.as_str()) {
                    return Err(ResolveError::ReservedName { name: d.name.clone(), pos: d.pos });
                }
                check_fresh(&mut class_names, "class", &d.name, d.pos)?;
                ws.classes.push((d.name.clone(), d.expr.clone()));
            }
        }
    }
    ws.ast = ast;
    Ok(ws)
}
