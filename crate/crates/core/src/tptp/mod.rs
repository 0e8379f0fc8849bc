//! Reading THF problems, printing formulas, SZS status lines and proofs.

pub mod ast;
mod elab;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod szs;

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::modal::LogicSpec;
use crate::signature::Signature;
use crate::term::Term;
use crate::types::Type;

pub use szs::SzsStatus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("{line}:{col}: lexical error: {msg}")]
    Lexical { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("type error in formula {formula}: {msg}")]
    Type { formula: String, msg: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Axiom,
    Hypothesis,
    Definition,
    Lemma,
    Theorem,
    Conjecture,
    NegatedConjecture,
    Plain,
}

impl Role {
    pub fn parse(s: &str) -> Option<Role> {
        Some(match s {
            "axiom" => Role::Axiom,
            "hypothesis" => Role::Hypothesis,
            "definition" => Role::Definition,
            "lemma" => Role::Lemma,
            "theorem" | "corollary" => Role::Theorem,
            "conjecture" => Role::Conjecture,
            "negated_conjecture" => Role::NegatedConjecture,
            "plain" | "assumption" | "unknown" => Role::Plain,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Hypothesis => "hypothesis",
            Role::Definition => "definition",
            Role::Lemma => "lemma",
            Role::Theorem => "theorem",
            Role::Conjecture => "conjecture",
            Role::NegatedConjecture => "negated_conjecture",
            Role::Plain => "plain",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnnotatedFormula {
    pub name: String,
    pub role: Role,
    pub formula: Term,
    pub annotation: Option<String>,
}

#[derive(Debug, Clone)]
pub struct TypeDecl {
    pub name: String,
    pub symbol: String,
    /// `None` declares a base type (`$tType`).
    pub ty: Option<Type>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub signature: Signature,
    pub type_decls: Vec<TypeDecl>,
    pub formulas: Vec<AnnotatedFormula>,
    pub logic: Option<LogicSpec>,
}

impl Problem {
    pub fn conjecture(&self) -> Option<&AnnotatedFormula> {
        self.formulas.iter().find(|f| f.role == Role::Conjecture)
    }

    /// Does any formula mention `$box` or `$dia`?
    pub fn uses_modal_operators(&self) -> bool {
        use crate::signature::Symbol;
        self.formulas.iter().any(|f| {
            f.formula.contains_symbol(Symbol::BOX) || f.formula.contains_symbol(Symbol::DIA)
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    pub include_dirs: Vec<PathBuf>,
    /// Directory of the problem file, tried after `include_dirs`.
    pub base_dir: Option<PathBuf>,
}

const MAX_INCLUDE_DEPTH: usize = 16;

fn resolve_include(path: &str, opts: &ParseOptions) -> Option<PathBuf> {
    let mut candidates: Vec<PathBuf> = opts.include_dirs.iter().map(|d| d.join(path)).collect();
    if let Some(b) = &opts.base_dir {
        candidates.push(b.join(path));
    }
    if let Ok(root) = std::env::var("TPTP") {
        candidates.push(Path::new(&root).join(path));
    }
    candidates.push(PathBuf::from(path));
    candidates.into_iter().find(|c| c.is_file())
}

fn expand_includes(
    items: Vec<ast::Item>,
    opts: &ParseOptions,
    depth: usize,
    out: &mut Vec<ast::Statement>,
) -> Result<(), InputError> {
    for item in items {
        match item {
            ast::Item::Statement(s) => out.push(s),
            ast::Item::Include {
                path,
                selection,
                line,
                col,
            } => {
                if depth >= MAX_INCLUDE_DEPTH {
                    return Err(InputError::Invalid(format!(
                        "include nesting too deep at {line}:{col}"
                    )));
                }
                let file = resolve_include(&path, opts).ok_or_else(|| InputError::Io {
                    path: path.clone(),
                    msg: format!("include file not found ({line}:{col})"),
                })?;
                let text = std::fs::read_to_string(&file).map_err(|e| InputError::Io {
                    path: file.display().to_string(),
                    msg: e.to_string(),
                })?;
                let inner = parser::Parser::new(lexer::tokenize(&text)?).parse_file()?;
                let mut stmts = Vec::new();
                expand_includes(inner, opts, depth + 1, &mut stmts)?;
                if let Some(sel) = &selection {
                    stmts.retain(|s| sel.contains(&s.name));
                }
                out.extend(stmts);
            }
        }
    }
    Ok(())
}

/// Parses and type-checks a THF problem.
pub fn parse_problem(text: &str, name: &str, opts: &ParseOptions) -> Result<Problem, InputError> {
    let items = parser::Parser::new(lexer::tokenize(text)?).parse_file()?;
    let mut stmts = Vec::new();
    expand_includes(items, opts, 0, &mut stmts)?;
    let mut seen = HashSet::new();
    for s in &stmts {
        if !seen.insert(s.name.clone()) {
            return Err(InputError::Invalid(format!("duplicate formula name {}", s.name)));
        }
    }
    let problem = elab::elaborate(stmts, name)?;
    if problem
        .formulas
        .iter()
        .filter(|f| f.role == Role::Conjecture)
        .count()
        > 1
    {
        return Err(InputError::Invalid("more than one conjecture".into()));
    }
    Ok(problem)
}

/// Reads and parses a problem file; includes resolve against `opts` and the
/// file's own directory.
pub fn parse_file(path: &Path, opts: &ParseOptions) -> Result<Problem, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut opts = opts.clone();
    if opts.base_dir.is_none() {
        opts.base_dir = path.parent().map(Path::to_path_buf);
    }
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_problem(&text, &name, &opts)
}
