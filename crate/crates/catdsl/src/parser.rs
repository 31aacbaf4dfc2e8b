//! Recursive-descent parser for workspace files.
//!
//! Errors carry the offending position and the full set of tokens that
//! would have been accepted there, so a caller can render "expected X or
//! Y" messages without re-deriving grammar knowledge.

use crate::ast::*;
use crate::lexer::{lex, Lexed, ParseError, Pos, Tok};
use prelin::{q_int, Q};

pub fn parse_workspace_ast(src: &str) -> Result<WorkspaceAst, ParseError> {
    let lexed = lex(src)?;
    let mut p = Parser::new(lexed);
    let mut decls = Vec::new();
    while !p.at_end() {
        decls.push(p.decl()?);
    }
    Ok(WorkspaceAst { decls })
}

pub(crate) struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    eof: Pos,
}

impl Parser {
    pub(crate) fn new(lexed: Lexed) -> Parser {
        Parser { toks: lexed.toks, i: 0, eof: lexed.eof }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    /// Steps back over the token just consumed.
    pub(crate) fn unread(&mut self) {
        debug_assert!(self.i > 0);
        self.i -= 1;
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|&(_, p)| p).unwrap_or(self.eof)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".into(),
        }
    }

    pub(crate) fn fail(&self, expected: &[&str]) -> ParseError {
        ParseError::new(self.pos(), self.found(), expected.iter().map(|s| s.to_string()).collect())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_tok(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.fail(&[&t.describe()]))
        }
    }

    pub(crate) fn expect_ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(s)) = self.bump() else { unreachable!() };
                Ok((s, pos))
            }
            _ => Err(self.fail(&[what])),
        }
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> Result<Pos, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.i += 1;
                Ok(pos)
            }
            _ => Err(self.fail(&[&format!("'{kw}'")])),
        }
    }

    pub(crate) fn expect_number(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Number(_)) => {
                let Some(Tok::Number(n)) = self.bump() else { unreachable!() };
                Ok(n)
            }
            _ => Err(self.fail(&[what])),
        }
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let keywords =
            ["'category'", "'monoid'", "'vect'", "'pair'", "'lin'", "'net'", "'class'", "end of input"];
        match self.peek() {
            Some(Tok::Ident(kw)) => match kw.as_str() {
                "category" => self.category_decl().map(Decl::Category),
                "monoid" => self.monoid_decl().map(Decl::Monoid),
                "vect" => self.vect_decl().map(Decl::Vect),
                "pair" => self.pair_decl().map(Decl::Pair),
                "lin" => self.lin_decl().map(Decl::Lin),
                "net" => self.net_decl().map(Decl::Net),
                "class" => self.class_decl().map(Decl::Class),
                _ => Err(self.fail(&keywords)),
            },
            _ => Err(self.fail(&keywords)),
        }
    }

    fn category_decl(&mut self) -> Result<CategoryDecl, ParseError> {
        let pos = self.expect_keyword("category")?;
        let (name, _) = self.expect_ident("a category name")?;
        self.expect_tok(Tok::LBrace)?;
        let mut object_count = None;
        let mut morphisms = Vec::new();
        let mut compositions = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            match self.peek() {
                Some(Tok::Ident(kw)) if kw == "objects" => {
                    let at = self.pos();
                    self.i += 1;
                    let n = self.expect_number("an object count")?;
                    if object_count.replace(n).is_some() {
                        return Err(ParseError::new(
                            at,
                            "a second 'objects' item".to_string(),
                            vec!["a single 'objects' item per category".into()],
                        ));
                    }
                    self.expect_tok(Tok::Semi)?;
                }
                Some(Tok::Ident(kw)) if kw == "mor" => {
                    self.i += 1;
                    let (mname, mpos) = self.expect_ident("a morphism name")?;
                    self.expect_tok(Tok::Colon)?;
                    let dom = self.expect_number("a source object index")?;
                    self.expect_tok(Tok::Arrow)?;
                    let cod = self.expect_number("a target object index")?;
                    self.expect_tok(Tok::Semi)?;
                    morphisms.push(MorDecl { name: mname, pos: mpos, dom, cod });
                }
                Some(Tok::Ident(kw)) if kw == "comp" => {
                    let cpos = self.pos();
                    self.i += 1;
                    let (f, _) = self.expect_ident("a morphism name")?;
                    let (g, _) = self.expect_ident("a morphism name")?;
                    self.expect_tok(Tok::Eq)?;
                    let (h, _) = self.expect_ident("a morphism name")?;
                    self.expect_tok(Tok::Semi)?;
                    compositions.push(CompDecl { pos: cpos, f, g, h });
                }
                _ => return Err(self.fail(&["'objects'", "'mor'", "'comp'", "'}'"])),
            }
        }
        let object_count = object_count.ok_or_else(|| {
            ParseError::new(pos, format!("category '{name}' without an 'objects' item"), vec![
                "an 'objects' item".into(),
            ])
        })?;
        Ok(CategoryDecl { name, pos, object_count, morphisms, compositions })
    }

    pub(crate) fn word(&mut self) -> Result<Vec<String>, ParseError> {
        // A word is one or more generator names, or the literal 1 for the
        // empty word.
        if self.eat(&Tok::Number(1)) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) => {
                    let Some(Tok::Ident(s)) = self.bump() else { unreachable!() };
                    out.push(s);
                }
                _ if out.is_empty() => {
                    return Err(self.fail(&["a generator name", "'1' for the empty word"]))
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn monoid_decl(&mut self) -> Result<MonoidDecl, ParseError> {
        let pos = self.expect_keyword("monoid")?;
        let (name, _) = self.expect_ident("a monoid name")?;
        self.expect_tok(Tok::LBrace)?;
        let mut generators = Vec::new();
        let mut relations = Vec::new();
        let mut bound = None;
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            match self.peek() {
                Some(Tok::Ident(kw)) if kw == "gens" => {
                    self.i += 1;
                    loop {
                        match self.peek() {
                            Some(Tok::Ident(_)) => {
                                let Some(Tok::Ident(s)) = self.bump() else { unreachable!() };
                                generators.push(s);
                            }
                            Some(Tok::Semi) => {
                                self.i += 1;
                                break;
                            }
                            _ => return Err(self.fail(&["a generator name", "';'"])),
                        }
                    }
                }
                Some(Tok::Ident(kw)) if kw == "rel" => {
                    let rpos = self.pos();
                    self.i += 1;
                    let lhs = self.word()?;
                    self.expect_tok(Tok::Eq)?;
                    let rhs = self.word()?;
                    self.expect_tok(Tok::Semi)?;
                    relations.push(RelDecl { pos: rpos, lhs, rhs });
                }
                Some(Tok::Ident(kw)) if kw == "bound" => {
                    self.i += 1;
                    bound = Some(self.expect_number("a positive bound")?);
                    self.expect_tok(Tok::Semi)?;
                }
                _ => return Err(self.fail(&["'gens'", "'rel'", "'bound'", "'}'"])),
            }
        }
        Ok(MonoidDecl { name, pos, generators, relations, bound })
    }

    fn vect_decl(&mut self) -> Result<VectDecl, ParseError> {
        let pos = self.expect_keyword("vect")?;
        let (name, _) = self.expect_ident("an object name")?;
        self.expect_tok(Tok::Eq)?;
        let dim = self.expect_number("a dimension")?;
        self.expect_tok(Tok::Semi)?;
        Ok(VectDecl { name, pos, dim })
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let negative = self.eat(&Tok::Minus);
        let numer = self.expect_number("a rational entry")? as i64;
        let q = if self.eat(&Tok::Slash) {
            let denom = self.expect_number("a denominator")?;
            if denom == 0 {
                return Err(self.fail(&["a nonzero denominator"]));
            }
            Q::new(numer.into(), (denom as i64).into())
        } else {
            q_int(numer)
        };
        Ok(if negative { -q } else { q })
    }

    fn row(&mut self) -> Result<Vec<Q>, ParseError> {
        self.expect_tok(Tok::LBracket)?;
        let mut row = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(row);
        }
        loop {
            row.push(self.rational()?);
            if self.eat(&Tok::RBracket) {
                return Ok(row);
            }
            self.expect_tok(Tok::Comma)?;
        }
    }

    pub(crate) fn matrix(&mut self) -> Result<Vec<Vec<Q>>, ParseError> {
        self.expect_tok(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(rows);
        }
        loop {
            rows.push(self.row()?);
            if self.eat(&Tok::RBracket) {
                return Ok(rows);
            }
            self.expect_tok(Tok::Comma)?;
        }
    }

    fn pair_decl(&mut self) -> Result<PairDecl, ParseError> {
        let pos = self.expect_keyword("pair")?;
        let (name, _) = self.expect_ident("an object name")?;
        self.expect_tok(Tok::Eq)?;
        let dim = self.expect_number("a dimension")?;
        self.expect_keyword("sub")?;
        let sub_rows = self.matrix()?;
        self.expect_tok(Tok::Semi)?;
        Ok(PairDecl { name, pos, dim, sub_rows })
    }

    fn lin_decl(&mut self) -> Result<LinDecl, ParseError> {
        let pos = self.expect_keyword("lin")?;
        let (name, _) = self.expect_ident("a morphism name")?;
        self.expect_tok(Tok::Colon)?;
        let (source, _) = self.expect_ident("a source object name")?;
        self.expect_tok(Tok::Arrow)?;
        let (target, _) = self.expect_ident("a target object name")?;
        self.expect_tok(Tok::Eq)?;
        self.expect_keyword("matrix")?;
        let rows = self.matrix()?;
        self.expect_tok(Tok::Semi)?;
        Ok(LinDecl { name, pos, source, target, rows })
    }

    fn net_decl(&mut self) -> Result<NetDecl, ParseError> {
        let pos = self.expect_keyword("net")?;
        let (name, _) = self.expect_ident("a net name")?;
        self.expect_keyword("on")?;
        let (category, _) = self.expect_ident("a category name")?;
        self.expect_tok(Tok::LBrace)?;
        let mut entries = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            let epos = self.expect_keyword("at").map_err(|_| self.fail(&["'at'", "'}'"]))?;
            let object = self.expect_number("an object index")?;
            self.expect_tok(Tok::Colon)?;
            self.expect_tok(Tok::LBrace)?;
            let mut elements = Vec::new();
            if !self.eat(&Tok::RBrace) {
                loop {
                    let (m, _) = self.expect_ident("a morphism name")?;
                    elements.push(m);
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect_tok(Tok::Comma)?;
                }
            }
            self.expect_tok(Tok::Semi)?;
            entries.push(NetEntry { pos: epos, object, elements });
        }
        Ok(NetDecl { name, pos, category, entries })
    }

    pub(crate) fn class_body(&mut self) -> Result<ClassExprAst, ParseError> {
        let options =
            ["'all'", "'epi'", "'mono'", "'bim'", "'sepi'", "'smono'", "'depi'", "'set'"];
        let (kw, _) = self.expect_ident("a class keyword").map_err(|_| self.fail(&options))?;
        if kw == "set" {
            self.expect_tok(Tok::LBrace)?;
            let mut names = Vec::new();
            if !self.eat(&Tok::RBrace) {
                loop {
                    let (m, _) = self.expect_ident("a morphism name")?;
                    names.push(m);
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect_tok(Tok::Comma)?;
                }
            }
            return Ok(ClassExprAst::Set(names));
        }
        ClassExprAst::from_keyword(&kw).ok_or_else(|| {
            ParseError::new(
                self.pos(),
                format!("identifier '{kw}'"),
                options.iter().map(|s| s.to_string()).collect(),
            )
        })
    }

    fn class_decl(&mut self) -> Result<ClassDecl, ParseError> {
        let pos = self.expect_keyword("class")?;
        let (name, _) = self.expect_ident("a class name")?;
        self.expect_tok(Tok::Eq)?;
        let expr = self.class_body()?;
        self.expect_tok(Tok::Semi)?;
        Ok(ClassDecl { name, pos, expr })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_full_workspace_parses() {
        let src = "\
category C {
  objects 2;
  mor f: 0 -> 1;
}

monoid M {
  gens a b;
  rel a a = 1;
  bound 6;
}

vect V = 2;

pair P = 2 sub [[1, 0]];

lin g: V -> V = matrix [[1, 0], [0, 1/2]];

net N on C {
  at 0: {f};
}

class K = set{f};
";
        let ws = parse_workspace_ast(src).unwrap();
        assert_eq!(ws.decls.len(), 7);
        let Decl::Monoid(m) = &ws.decls[1] else { panic!() };
        assert_eq!(m.relations[0].rhs, Vec::<String>::new());
        let Decl::Lin(l) = &ws.decls[4] else { panic!() };
        assert_eq!(l.rows[1][1], Q::new(1.into(), 2.into()));
    }

    #[test]
    fn errors_carry_position_and_expected_tokens() {
        let e = parse_workspace_ast("category C {\n  objects 2;\n  mor f 0 -> 1;\n}").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (3, 9));
        assert_eq!(e.expected, vec!["':'".to_string()]);

        let e = parse_workspace_ast("widget W {}").unwrap_err();
        assert!(e.expected.iter().any(|x| x == "'category'"));
        assert!(e.expected.iter().any(|x| x == "'class'"));

        let e = parse_workspace_ast("category C { objects 2;").unwrap_err();
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn negative_and_fractional_entries_parse() {
        let ws = parse_workspace_ast("vect V = 1;\nlin f: V -> V = matrix [[-3/4]];").unwrap();
        let Decl::Lin(l) = &ws.decls[1] else { panic!() };
        assert_eq!(l.rows[0][0], Q::new((-3).into(), 4.into()));
    }

    #[test]
    fn zero_denominators_are_rejected() {
        let e = parse_workspace_ast("vect V = 1;\nlin f: V -> V = matrix [[1/0]];").unwrap_err();
        assert!(e.expected.iter().any(|x| x.contains("nonzero")));
    }
}
