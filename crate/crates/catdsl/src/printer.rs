//! Canonical rendering of workspace files.
//!
//! The printer fixes one concrete layout (two-space indent, one item per
//! line, single blank line between declarations) so that printing after
//! parsing is the identity on files already in this form, and any parse
//! of a printed file reproduces the same tree.

use crate::ast::*;
use prelin::{format_q, Q};
use std::fmt::Write;

fn fmt_row(row: &[Q]) -> String {
    let cells: Vec<String> = row.iter().map(format_q).collect();
    format!("[{}]", cells.join(", "))
}

fn fmt_matrix(rows: &[Vec<Q>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| fmt_row(r)).collect();
    format!("[{}]", body.join(", "))
}

fn fmt_word(word: &[String]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.join(" ")
    }
}

pub fn print_class_expr(e: &ClassExprAst) -> String {
    match e {
        ClassExprAst::Set(names) => format!("set{{{}}}", names.join(", ")),
        other => other.keyword().expect("non-set class exprs have keywords").to_string(),
    }
}

pub fn print_decl(d: &Decl) -> String {
    let mut out = String::new();
    match d {
        Decl::Category(c) => {
            let _ = writeln!(out, "category {} {{", c.name);
            let _ = writeln!(out, "  objects {};", c.object_count);
            for m in &c.morphisms {
                let _ = writeln!(out, "  mor {}: {} -> {};", m.name, m.dom, m.cod);
            }
            for cp in &c.compositions {
                let _ = writeln!(out, "  comp {} {} = {};", cp.f, cp.g, cp.h);
            }
            let _ = write!(out, "}}");
        }
        Decl::Monoid(m) => {
            let _ = writeln!(out, "monoid {} {{", m.name);
            let _ = writeln!(out, "  gens {};", m.generators.join(" "));
            for r in &m.relations {
                let _ = writeln!(out, "  rel {} = {};", fmt_word(&r.lhs), fmt_word(&r.rhs));
            }
            if let Some(b) = m.bound {
                let _ = writeln!(out, "  bound {b};");
            }
            let _ = write!(out, "}}");
        }
        Decl::Vect(v) => {
            let _ = write!(out, "vect {} = {};", v.name, v.dim);
        }
        Decl::Pair(p) => {
            let _ = write!(out, "pair {} = {} sub {};", p.name, p.dim, fmt_matrix(&p.sub_rows));
        }
        Decl::Lin(l) => {
            let _ = write!(
                out,
                "lin {}: {} -> {} = matrix {};",
                l.name,
                l.source,
                l.target,
                fmt_matrix(&l.rows)
            );
        }
        Decl::Net(n) => {
            let _ = writeln!(out, "net {} on {} {{", n.name, n.category);
            for e in &n.entries {
                let _ = writeln!(out, "  at {}: {{{}}};", e.object, e.elements.join(", "));
            }
            let _ = write!(out, "}}");
        }
        Decl::Class(c) => {
            let _ = write!(out, "class {} = {};", c.name, print_class_expr(&c.expr));
        }
    }
    out
}

pub fn print_workspace(ws: &WorkspaceAst) -> String {
    let blocks: Vec<String> = ws.decls.iter().map(print_decl).collect();
    let mut text = blocks.join("\n\n");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_workspace_ast;

    const CANONICAL: &str = "\
category C {
  objects 2;
  mor f: 0 -> 1;
  mor g: 1 -> 0;
  comp f g = id0;
  comp g f = id1;
}

monoid M {
  gens a b c;
  rel a c = b c;
  bound 8;
}

vect V = 2;

vect W = 1;

pair P = 2 sub [[1, 0]];

lin h: V -> W = matrix [[1, -1/2]];

net N on C {
  at 0: {f};
  at 1: {g, id1};
}

class K = sepi;

class L = set{f, g};
";

    #[test]
    fn printing_after_parsing_is_the_identity_on_canonical_files() {
        let ast = parse_workspace_ast(CANONICAL).unwrap();
        assert_eq!(print_workspace(&ast), CANONICAL);
    }

    #[test]
    fn messy_input_normalizes_to_the_same_tree() {
        let messy = "category C{objects 2;mor f:0->1;mor g:1->0;comp f g=id0;comp g f=id1;}
monoid M { gens a b c; rel a c=b c; bound 8; }
vect V=2; vect W=1; pair P=2 sub [[2/2, 0]];
lin h: V->W = matrix [[1, -2/4]];
net N on C { at 0:{f}; at 1:{g, id1}; }
class K=sepi; class L=set{f, g};";
        let ast = parse_workspace_ast(messy).unwrap();
        assert_eq!(print_workspace(&ast), CANONICAL);
        let reparsed = parse_workspace_ast(&print_workspace(&ast)).unwrap();
        assert_eq!(print_workspace(&reparsed), CANONICAL);
    }

    #[test]
    fn empty_collections_keep_a_printable_form() {
        let src = "pair P = 3 sub [];\n\nnet N on C {\n  at 0: {};\n}\n";
        let ast = parse_workspace_ast(src).unwrap();
        assert_eq!(print_workspace(&ast), src);
    }
}
