//! Print/parse stability over randomized trees.
//!
//! Positions differ between a generated tree and its reparse, so the
//! invariant is stated at the text level: printing is idempotent across
//! a parse, and a canonical text reparses to a tree that prints back to
//! the same bytes.

use catdsl::ast::*;
use catdsl::lexer::Pos;
use catdsl::{parse_workspace_ast, print_workspace};
use prelin::Q;
use proptest::collection::vec;
use proptest::prelude::*;

fn at() -> Pos {
    Pos { line: 1, col: 1 }
}

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}"
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn matrix() -> impl Strategy<Value = Vec<Vec<Q>>> {
    (0usize..3, 0usize..3)
        .prop_flat_map(|(r, c)| vec(vec(rational(), c), r))
}

fn word() -> impl Strategy<Value = Vec<String>> {
    vec(ident(), 0..3)
}

fn category_decl() -> impl Strategy<Value = Decl> {
    (
        ident(),
        1usize..4,
        vec((ident(), 0usize..3, 0usize..3), 0..3),
        vec((ident(), ident(), ident()), 0..3),
    )
        .prop_map(|(name, object_count, mors, comps)| {
            Decl::Category(CategoryDecl {
                name,
                pos: at(),
                object_count,
                morphisms: mors
                    .into_iter()
                    .map(|(name, dom, cod)| MorDecl { name, pos: at(), dom, cod })
                    .collect(),
                compositions: comps
                    .into_iter()
                    .map(|(f, g, h)| CompDecl { pos: at(), f, g, h })
                    .collect(),
            })
        })
}

fn monoid_decl() -> impl Strategy<Value = Decl> {
    (ident(), vec(ident(), 0..4), vec((word(), word()), 0..3), proptest::option::of(1usize..12))
        .prop_map(|(name, generators, rels, bound)| {
            Decl::Monoid(MonoidDecl {
                name,
                pos: at(),
                generators,
                relations: rels
                    .into_iter()
                    .map(|(lhs, rhs)| RelDecl { pos: at(), lhs, rhs })
                    .collect(),
                bound,
            })
        })
}

fn class_expr() -> impl Strategy<Value = ClassExprAst> {
    prop_oneof![
        Just(ClassExprAst::All),
        Just(ClassExprAst::Epi),
        Just(ClassExprAst::Mono),
        Just(ClassExprAst::Bim),
        Just(ClassExprAst::SEpi),
        Just(ClassExprAst::SMono),
        Just(ClassExprAst::DEpi),
        vec(ident(), 0..3).prop_map(ClassExprAst::Set),
    ]
}

fn decl() -> impl Strategy<Value = Decl> {
    prop_oneof![
        category_decl(),
        monoid_decl(),
        (ident(), 0usize..5).prop_map(|(name, dim)| Decl::Vect(VectDecl { name, pos: at(), dim })),
        (ident(), 0usize..3, matrix()).prop_map(|(name, dim, sub_rows)| {
            Decl::Pair(PairDecl { name, pos: at(), dim, sub_rows })
        }),
        (ident(), ident(), ident(), matrix()).prop_map(|(name, source, target, rows)| {
            Decl::Lin(LinDecl { name, pos: at(), source, target, rows })
        }),
        (ident(), ident(), vec((0usize..3, vec(ident(), 0..3)), 0..3)).prop_map(
            |(name, category, entries)| {
                Decl::Net(NetDecl {
                    name,
                    pos: at(),
                    category,
                    entries: entries
                        .into_iter()
                        .map(|(object, elements)| NetEntry { pos: at(), object, elements })
                        .collect(),
                })
            }
        ),
        (ident(), class_expr()).prop_map(|(name, expr)| {
            Decl::Class(ClassDecl { name, pos: at(), expr })
        }),
    ]
}

proptest! {
    #[test]
    fn printing_is_stable_across_a_parse(decls in vec(decl(), 0..6)) {
        let text = print_workspace(&WorkspaceAst { decls });
        let reparsed = parse_workspace_ast(&text).unwrap();
        prop_assert_eq!(print_workspace(&reparsed), text);
    }
}
