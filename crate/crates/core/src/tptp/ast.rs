//! Untyped syntax trees produced by the parser.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    Base(String),
    /// `$tType`
    Kind,
    Fun(Box<TypeExpr>, Box<TypeExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Or,
    And,
    Implies,
    RevImplies,
    Equiv,
    Xor,
    Nor,
    Nand,
    Eq,
    Neq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    Forall,
    Exists,
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    /// Constant or defined word (`$true`, `$box`, user symbols).
    Const(String),
    /// A connective used as a term, e.g. `(&)` or `!!`.
    Connective(ConnTerm),
    App(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Quant(Quant, Vec<(String, Option<TypeExpr>)>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnTerm {
    Not,
    Bin(BinOp),
    Pi,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicVal {
    Word(String),
    List(Vec<LogicVal>),
    Assign(String, Box<LogicVal>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Formula(Expr),
    TypeDecl(String, TypeExpr),
    Logic(LogicVal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub name: String,
    pub role: String,
    pub body: Body,
    /// Source text of the annotation, if present.
    pub annotation: Option<String>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Statement(Statement),
    Include {
        path: String,
        selection: Option<Vec<String>>,
        line: usize,
        col: usize,
    },
}
