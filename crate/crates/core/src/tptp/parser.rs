//! Recursive-descent parser from tokens to [`Item`]s.
//!
//! Binding strength, tightest first: `@`, `=`/`!=`, `&`, `|`, then the
//! non-associative connectives `=>`, `<=`, `<=>`, `<~>`, `~|`, `~&`.
//! Unary `~` and quantifier bodies extend over an application chain.

use super::ast::*;
use super::lexer::{Tok, Token};
use super::InputError;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, InputError>;

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::LBracket => "[".into(),
        Tok::RBracket => "]".into(),
        Tok::Comma => ",".into(),
        Tok::Dot => ".".into(),
        Tok::Colon => ":".into(),
        Tok::Assign => ":=".into(),
        Tok::Identical => "==".into(),
        Tok::Eq => "=".into(),
        Tok::Neq => "!=".into(),
        Tok::Not => "~".into(),
        Tok::Or => "|".into(),
        Tok::And => "&".into(),
        Tok::Implies => "=>".into(),
        Tok::RevImplies => "<=".into(),
        Tok::Equiv => "<=>".into(),
        Tok::Xor => "<~>".into(),
        Tok::Nor => "~|".into(),
        Tok::Nand => "~&".into(),
        Tok::Forall => "!".into(),
        Tok::Exists => "?".into(),
        Tok::Lambda => "^".into(),
        Tok::PiConst => "!!".into(),
        Tok::SigmaConst => "??".into(),
        Tok::At => "@".into(),
        Tok::Arrow => ">".into(),
        Tok::Star => "*".into(),
        Tok::Plus => "+".into(),
        Tok::TypeForall => "!>".into(),
        Tok::Exotic(s)
        | Tok::Lower(s)
        | Tok::Upper(s)
        | Tok::Dollar(s)
        | Tok::DollarDollar(s)
        | Tok::Number(s) => s.clone(),
        Tok::Quoted(s) => format!("'{s}'"),
        Tok::Distinct(s) => format!("\"{s}\""),
    }
}

fn binop_of(t: &Tok) -> Option<BinOp> {
    Some(match t {
        Tok::Or => BinOp::Or,
        Tok::And => BinOp::And,
        Tok::Implies => BinOp::Implies,
        Tok::RevImplies => BinOp::RevImplies,
        Tok::Equiv => BinOp::Equiv,
        Tok::Xor => BinOp::Xor,
        Tok::Nor => BinOp::Nor,
        Tok::Nand => BinOp::Nand,
        Tok::Eq => BinOp::Eq,
        Tok::Neq => BinOp::Neq,
        _ => return None,
    })
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn loc(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.loc();
        let found = match self.peek() {
            Some(t) => format!(" (found '{}')", tok_text(t)),
            None => " (found end of input)".into(),
        };
        Err(InputError::Syntax {
            line,
            col,
            msg: format!("{}{found}", msg.into()),
        })
    }

    fn unsupported<T>(&self, what: &str) -> PResult<T> {
        let (line, col) = self.loc();
        Err(InputError::Unsupported(format!("{what} at {line}:{col}")))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", tok_text(t)))
        }
    }

    pub fn parse_file(&mut self) -> PResult<Vec<Item>> {
        let mut items = Vec::new();
        while self.peek().is_some() {
            items.push(self.parse_item()?);
        }
        Ok(items)
    }

    fn parse_item(&mut self) -> PResult<Item> {
        let (line, col) = self.loc();
        let kw = match self.next() {
            Some(Tok::Lower(w)) => w,
            _ => {
                self.pos -= 1;
                return self.error("expected a TPTP statement");
            }
        };
        match kw.as_str() {
            "thf" => {}
            "include" => return self.parse_include(line, col),
            "tff" | "fof" | "cnf" | "tcf" | "tpi" => {
                self.pos -= 1;
                return self.unsupported(&format!("'{kw}' statements (only THF is accepted)"));
            }
            _ => {
                self.pos -= 1;
                return self.error("expected a TPTP statement");
            }
        }
        self.expect(&Tok::LParen)?;
        let name = self.parse_name()?;
        self.expect(&Tok::Comma)?;
        let role = match self.next() {
            Some(Tok::Lower(r)) => r,
            _ => {
                self.pos -= 1;
                return self.error("expected a formula role");
            }
        };
        self.expect(&Tok::Comma)?;
        let body = match role.as_str() {
            "type" => {
                let (sym, ty) = self.parse_typing()?;
                Body::TypeDecl(sym, ty)
            }
            "logic" => Body::Logic(self.parse_logic_spec()?),
            _ => Body::Formula(self.parse_formula()?),
        };
        let annotation = if self.eat(&Tok::Comma) {
            Some(self.skip_annotation()?)
        } else {
            None
        };
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::Dot)?;
        Ok(Item::Statement(Statement {
            name,
            role,
            body,
            annotation,
            line,
        }))
    }

    fn parse_include(&mut self, line: usize, col: usize) -> PResult<Item> {
        self.expect(&Tok::LParen)?;
        let path = match self.next() {
            Some(Tok::Quoted(p)) => p,
            _ => {
                self.pos -= 1;
                return self.error("expected a quoted file name");
            }
        };
        let mut selection = None;
        if self.eat(&Tok::Comma) {
            self.expect(&Tok::LBracket)?;
            let mut names = Vec::new();
            if !self.eat(&Tok::RBracket) {
                loop {
                    names.push(self.parse_name()?);
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    self.expect(&Tok::Comma)?;
                }
            }
            selection = Some(names);
        }
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::Dot)?;
        Ok(Item::Include {
            path,
            selection,
            line,
            col,
        })
    }

    fn parse_name(&mut self) -> PResult<String> {
        match self.next() {
            Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) | Some(Tok::Number(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                self.error("expected a name")
            }
        }
    }

    /// Skips a balanced annotation and returns its text.
    fn skip_annotation(&mut self) -> PResult<String> {
        let mut depth = 0i32;
        let mut text = String::new();
        loop {
            match self.peek() {
                None => return self.error("unterminated annotation"),
                Some(Tok::RParen) if depth == 0 => return Ok(text),
                Some(t) => {
                    match t {
                        Tok::LParen | Tok::LBracket => depth += 1,
                        Tok::RParen | Tok::RBracket => depth -= 1,
                        _ => {}
                    }
                    if depth < 0 {
                        return self.error("unbalanced annotation");
                    }
                    text.push_str(&tok_text(t));
                    self.pos += 1;
                }
            }
        }
    }

    fn parse_typing(&mut self) -> PResult<(String, TypeExpr)> {
        if self.eat(&Tok::LParen) {
            let r = self.parse_typing()?;
            self.expect(&Tok::RParen)?;
            return Ok(r);
        }
        let sym = match self.next() {
            Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) | Some(Tok::DollarDollar(s)) => s,
            Some(Tok::Dollar(s)) if s == "$box" || s == "$dia" => s,
            _ => {
                self.pos -= 1;
                return self.error("expected a symbol to declare");
            }
        };
        self.expect(&Tok::Colon)?;
        let ty = self.parse_type()?;
        Ok((sym, ty))
    }

    pub fn parse_type(&mut self) -> PResult<TypeExpr> {
        let lhs = self.parse_unitary_type()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.pos += 1;
                let rhs = self.parse_type()?;
                if lhs == TypeExpr::Kind || rhs == TypeExpr::Kind {
                    return self.unsupported("type constructors of kind $tType > ...");
                }
                Ok(TypeExpr::Fun(Box::new(lhs), Box::new(rhs)))
            }
            Some(Tok::Star) => self.unsupported("product types"),
            _ => Ok(lhs),
        }
    }

    fn parse_unitary_type(&mut self) -> PResult<TypeExpr> {
        match self.next() {
            Some(Tok::LParen) => {
                let t = self.parse_type()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Dollar(s)) if s == "$tType" => Ok(TypeExpr::Kind),
            Some(Tok::Dollar(s)) if s == "$i" || s == "$o" => Ok(TypeExpr::Base(s)),
            Some(Tok::Dollar(s)) if matches!(s.as_str(), "$int" | "$rat" | "$real") => {
                self.pos -= 1;
                self.unsupported("arithmetic types")
            }
            Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) => {
                if self.peek() == Some(&Tok::LParen) {
                    return self.unsupported("type constructor application");
                }
                Ok(TypeExpr::Base(s))
            }
            Some(Tok::TypeForall) => {
                self.pos -= 1;
                self.unsupported("type quantification (TH1)")
            }
            Some(Tok::Upper(_)) => {
                self.pos -= 1;
                self.unsupported("type variables (TH1)")
            }
            _ => {
                self.pos -= 1;
                self.error("expected a type")
            }
        }
    }

    fn parse_logic_spec(&mut self) -> PResult<LogicVal> {
        if self.eat(&Tok::LParen) {
            let v = self.parse_logic_spec()?;
            self.expect(&Tok::RParen)?;
            return Ok(v);
        }
        self.parse_logic_val()
    }

    fn parse_logic_val(&mut self) -> PResult<LogicVal> {
        let v = match self.next() {
            Some(Tok::LBracket) => {
                let mut vals = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        vals.push(self.parse_logic_val()?);
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(&Tok::Comma)?;
                    }
                }
                LogicVal::List(vals)
            }
            Some(Tok::Dollar(s)) | Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) => {
                LogicVal::Word(s)
            }
            _ => {
                self.pos -= 1;
                return self.error("expected a logic specification value");
            }
        };
        if self.eat(&Tok::Assign) || self.eat(&Tok::Identical) {
            let LogicVal::Word(key) = v else {
                return self.error("expected a key before ':='");
            };
            let rhs = self.parse_logic_val()?;
            return Ok(LogicVal::Assign(key, Box::new(rhs)));
        }
        Ok(v)
    }

    pub fn parse_formula(&mut self) -> PResult<Expr> {
        let lhs = self.parse_or()?;
        let op = match self.peek() {
            Some(Tok::Assign) => Some(BinOp::Eq),
            Some(t) => binop_of(t).filter(|o| {
                matches!(
                    o,
                    BinOp::Implies
                        | BinOp::RevImplies
                        | BinOp::Equiv
                        | BinOp::Xor
                        | BinOp::Nor
                        | BinOp::Nand
                )
            }),
            None => None,
        };
        let Some(op) = op else {
            return Ok(lhs);
        };
        self.pos += 1;
        // Right-associative chains are accepted for `=>`.
        let rhs = if op == BinOp::Implies {
            self.parse_formula()?
        } else {
            self.parse_or()?
        };
        Ok(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))
    }

    fn parse_or(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.parse_and()?;
            lhs = Expr::Bin(BinOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_eq()?;
        while self.eat(&Tok::And) {
            let rhs = self.parse_eq()?;
            lhs = Expr::Bin(BinOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_eq(&mut self) -> PResult<Expr> {
        let lhs = self.parse_app()?;
        let op = match self.peek() {
            Some(Tok::Eq) => BinOp::Eq,
            Some(Tok::Neq) => BinOp::Neq,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.parse_app()?;
        Ok(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))
    }

    fn parse_app(&mut self) -> PResult<Expr> {
        let mut f = self.parse_unary()?;
        while self.eat(&Tok::At) {
            let a = self.parse_unary()?;
            f = Expr::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn parse_unary(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(Tok::Not) if self.peek_at(1) != Some(&Tok::RParen) => {
                self.pos += 1;
                let e = self.parse_app()?;
                Ok(Expr::Not(Box::new(e)))
            }
            Some(Tok::Forall) | Some(Tok::Exists) | Some(Tok::Lambda)
                if self.peek_at(1) == Some(&Tok::LBracket) =>
            {
                let q = match self.next() {
                    Some(Tok::Forall) => Quant::Forall,
                    Some(Tok::Exists) => Quant::Exists,
                    _ => Quant::Lambda,
                };
                self.expect(&Tok::LBracket)?;
                let mut vars = Vec::new();
                loop {
                    let name = match self.next() {
                        Some(Tok::Upper(v)) => v,
                        _ => {
                            self.pos -= 1;
                            return self.error("expected a variable");
                        }
                    };
                    let ty = if self.eat(&Tok::Colon) {
                        let ty = self.parse_type()?;
                        if ty == TypeExpr::Kind {
                            return self.unsupported("type quantification (TH1)");
                        }
                        Some(ty)
                    } else {
                        None
                    };
                    vars.push((name, ty));
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    self.expect(&Tok::Comma)?;
                }
                self.expect(&Tok::Colon)?;
                let body = self.parse_app()?;
                Ok(Expr::Quant(q, vars, Box::new(body)))
            }
            Some(Tok::TypeForall) => self.unsupported("type quantification (TH1)"),
            _ => self.parse_atomic(),
        }
    }

    fn parse_atomic(&mut self) -> PResult<Expr> {
        let t = self.next();
        match t {
            Some(Tok::LParen) => {
                // A parenthesized connective used as a term.
                let conn = match self.peek() {
                    Some(Tok::Not) => Some(ConnTerm::Not),
                    Some(Tok::PiConst) => Some(ConnTerm::Pi),
                    Some(Tok::SigmaConst) => Some(ConnTerm::Sigma),
                    Some(t) => binop_of(t).map(ConnTerm::Bin),
                    None => None,
                };
                if let Some(c) = conn {
                    if self.peek_at(1) == Some(&Tok::RParen) {
                        self.pos += 2;
                        return Ok(Expr::Connective(c));
                    }
                }
                let e = self.parse_formula()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::PiConst) => Ok(Expr::Connective(ConnTerm::Pi)),
            Some(Tok::SigmaConst) => Ok(Expr::Connective(ConnTerm::Sigma)),
            Some(Tok::Upper(v)) => Ok(Expr::Var(v)),
            Some(Tok::Lower(s)) | Some(Tok::Quoted(s)) | Some(Tok::DollarDollar(s)) => {
                if self.peek() == Some(&Tok::LParen) {
                    return self.unsupported("first-order style application f(...)");
                }
                Ok(Expr::Const(s))
            }
            Some(Tok::Dollar(s)) => {
                if self.peek() == Some(&Tok::LParen) {
                    return self.unsupported(&format!("defined functor {s}(...)"));
                }
                Ok(Expr::Const(s))
            }
            Some(Tok::Number(_)) => {
                self.pos -= 1;
                self.unsupported("arithmetic")
            }
            Some(Tok::Distinct(_)) => {
                self.pos -= 1;
                self.unsupported("distinct objects")
            }
            Some(Tok::Exotic(s)) => {
                self.pos -= 1;
                self.unsupported(&format!("operator '{s}'"))
            }
            Some(_) => {
                self.pos -= 1;
                self.error("expected a formula")
            }
            None => self.error("unexpected end of input"),
        }
    }
}
