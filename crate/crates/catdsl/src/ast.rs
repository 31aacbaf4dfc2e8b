//! Syntax tree for workspace files.
//!
//! Declarations appear in source order and may only refer to names
//! introduced by earlier declarations.  Rational entries are stored in
//! lowest terms, so printing is canonical even when the source wrote
//! `2/4`.

use crate::lexer::Pos;
use prelin::Q;

#[derive(Clone, Debug, PartialEq)]
pub struct WorkspaceAst {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Category(CategoryDecl),
    Monoid(MonoidDecl),
    Vect(VectDecl),
    Pair(PairDecl),
    Lin(LinDecl),
    Net(NetDecl),
    Class(ClassDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Category(d) => &d.name,
            Decl::Monoid(d) => &d.name,
            Decl::Vect(d) => &d.name,
            Decl::Pair(d) => &d.name,
            Decl::Lin(d) => &d.name,
            Decl::Net(d) => &d.name,
            Decl::Class(d) => &d.name,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            Decl::Category(d) => d.pos,
            Decl::Monoid(d) => d.pos,
            Decl::Vect(d) => d.pos,
            Decl::Pair(d) => d.pos,
            Decl::Lin(d) => d.pos,
            Decl::Net(d) => d.pos,
            Decl::Class(d) => d.pos,
        }
    }
}

/// `category C { objects n; mor f: i -> j; comp f g = h; }`
///
/// Identities are implicit: object `i` gets `id<i>`, and compositions
/// with an identity are filled in automatically.  Every other composable
/// pair must be listed, or validation reports it as missing.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryDecl {
    pub name: String,
    pub pos: Pos,
    pub object_count: usize,
    pub morphisms: Vec<MorDecl>,
    pub compositions: Vec<CompDecl>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorDecl {
    pub name: String,
    pub pos: Pos,
    pub dom: usize,
    pub cod: usize,
}

/// `comp f g = h` declares the composite "f then g", i.e. `h = g ∘ f`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompDecl {
    pub pos: Pos,
    pub f: String,
    pub g: String,
    pub h: String,
}

/// `monoid M { gens a b c; rel a c = b c; bound 8; }`
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidDecl {
    pub name: String,
    pub pos: Pos,
    pub generators: Vec<String>,
    pub relations: Vec<RelDecl>,
    pub bound: Option<usize>,
}

/// Relation between two words, each a sequence of generator names; the
/// literal `1` denotes the empty word.
#[derive(Clone, Debug, PartialEq)]
pub struct RelDecl {
    pub pos: Pos,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// `vect V = n;`
#[derive(Clone, Debug, PartialEq)]
pub struct VectDecl {
    pub name: String,
    pub pos: Pos,
    pub dim: usize,
}

/// `pair P = n sub [[...], ...];` with the rows spanning the marked
/// subspace of the n-dimensional carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDecl {
    pub name: String,
    pub pos: Pos,
    pub dim: usize,
    pub sub_rows: Vec<Vec<Q>>,
}

/// `lin f: V -> W = matrix [[...], ...];` with one row per coordinate of
/// the target and one column per coordinate of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct LinDecl {
    pub name: String,
    pub pos: Pos,
    pub source: String,
    pub target: String,
    pub rows: Vec<Vec<Q>>,
}

/// `net N on C { at 0: {f, g}; }`
#[derive(Clone, Debug, PartialEq)]
pub struct NetDecl {
    pub name: String,
    pub pos: Pos,
    pub category: String,
    pub entries: Vec<NetEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetEntry {
    pub pos: Pos,
    pub object: usize,
    pub elements: Vec<String>,
}

/// `class K = sepi;` or `class K = set{f, g};`
#[derive(Clone, Debug, PartialEq)]
pub struct ClassDecl {
    pub name: String,
    pub pos: Pos,
    pub expr: ClassExprAst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassExprAst {
    All,
    Epi,
    Mono,
    Bim,
    SEpi,
    SMono,
    /// Parses for compatibility with inputs naming the dense class, but
    /// has no finite semantics and is rejected when evaluated.
    DEpi,
    Set(Vec<String>),
}

impl ClassExprAst {
    pub fn keyword(&self) -> Option<&'static str> {
        match self {
            ClassExprAst::All => Some("all"),
            ClassExprAst::Epi => Some("epi"),
            ClassExprAst::Mono => Some("mono"),
            ClassExprAst::Bim => Some("bim"),
            ClassExprAst::SEpi => Some("sepi"),
            ClassExprAst::SMono => Some("smono"),
            ClassExprAst::DEpi => Some("depi"),
            ClassExprAst::Set(_) => None,
        }
    }

    pub fn from_keyword(kw: &str) -> Option<ClassExprAst> {
        match kw {
            "all" => Some(ClassExprAst::All),
            "epi" => Some(ClassExprAst::Epi),
            "mono" => Some(ClassExprAst::Mono),
            "bim" => Some(ClassExprAst::Bim),
            "sepi" => Some(ClassExprAst::SEpi),
            "smono" => Some(ClassExprAst::SMono),
            "depi" => Some(ClassExprAst::DEpi),
            _ => None,
        }
    }
}

/// Names that cannot be declared because the class grammar claims them.
pub const RESERVED_CLASS_WORDS: [&str; 8] =
    ["all", "epi", "mono", "bim", "sepi", "smono", "depi", "set"];
