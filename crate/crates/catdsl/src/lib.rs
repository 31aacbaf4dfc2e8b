//! Workspace language and query driver for the toolkit.
//!
//! A workspace file declares finite categories, monoid presentations,
//! linear objects and morphisms (plain or decorated), nets, and named
//! morphism classes.  Declarations resolve in order against earlier
//! names only.  A query is a one-line request addressed to one of those
//! declarations; running it dispatches to the owning crate and wraps the
//! answer in a format-independent result.
//!
//! The driver itself is single threaded.  Whatever parallelism the
//! underlying modules use is controlled through their execution mode,
//! and results are deterministic either way.

pub mod ast;
pub mod emit;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod query;
pub mod workspace;

pub use ast::{ClassExprAst, Decl, WorkspaceAst};
pub use emit::{emit, emit_dot, emit_json, emit_text, Format};
pub use lexer::{ParseError, Pos};
pub use parser::parse_workspace_ast;
pub use printer::{print_class_expr, print_decl, print_workspace};
pub use query::{
    parse_query, print_query, run_query, ClassRef, Payload, Query, QueryError, QueryResult,
    Witness,
};
pub use workspace::{
    resolve, resolve_with, BuiltCategory, LinKind, ObjKind, ResolveError, ResolveOptions,
    Workspace,
};
use thiserror::Error;

/// Either failure mode of [`parse_workspace`].
#[derive(Clone, Debug, Error, PartialEq)]
pub enum WorkspaceError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Resolve(#[from] ResolveError),
}

/// Parses and resolves a workspace file in one step.
pub fn parse_workspace(src: &str) -> Result<Workspace, WorkspaceError> {
    Ok(resolve(parse_workspace_ast(src)?)?)
}

/// Like [`parse_workspace`] with resolution options applied.
pub fn parse_workspace_with(
    src: &str,
    opts: ResolveOptions,
) -> Result<Workspace, WorkspaceError> {
    Ok(resolve_with(parse_workspace_ast(src)?, opts)?)
}
