//! THF pretty printing of terms, clauses and problems.
//!
//! Applications, binary connectives and equations are always enclosed in
//! parentheses; abstractions are parenthesized except as the last argument
//! of an application. Bound variables are named by binder depth, offset by
//! the number of free variables, so names never clash.

use std::collections::BTreeMap;

use super::{Problem, Role};
use crate::clause::{Clause, Literal};
use crate::formula::{self, View};
use crate::signature::{Signature, Symbol};
use crate::term::{Term, TermKind, VarId};

/// `A`..`Z`, then `A1`..`Z1`, and so on.
pub fn var_name(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

/// Quotes a symbol name unless it is a plain lower word or a defined word.
pub fn quote_name(s: &str) -> String {
    let plain = s.chars().next().is_some_and(|c| c.is_ascii_lowercase())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let defined = s.starts_with('$')
        && s.len() > 1
        && s.trim_start_matches('$').chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain || defined {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Atomic,
    Paren,
    Prefix,
    Lambda,
}

pub struct TermPrinter<'a> {
    sig: &'a Signature,
    free: BTreeMap<VarId, String>,
    offset: usize,
    bound: Vec<String>,
}

impl<'a> TermPrinter<'a> {
    /// Free variables are named from `free`; unknown ones get `V<id>`.
    pub fn new(sig: &'a Signature, free: BTreeMap<VarId, String>) -> Self {
        let offset = free.len();
        TermPrinter {
            sig,
            free,
            offset,
            bound: Vec::new(),
        }
    }

    /// Names the free variables of `t` by first occurrence.
    pub fn for_term(sig: &'a Signature, t: &Term) -> Self {
        let free = t
            .free_vars()
            .into_iter()
            .enumerate()
            .map(|(i, (v, _))| (v, var_name(i)))
            .collect();
        Self::new(sig, free)
    }

    pub fn free_names(&self) -> BTreeMap<VarId, String> {
        self.free.clone()
    }

    pub fn with_offset(mut self, offset: usize) -> Self {
        self.offset = offset;
        self
    }

    fn symbol(&self, s: Symbol) -> String {
        match s {
            Symbol::TRUE => "$true".into(),
            Symbol::FALSE => "$false".into(),
            Symbol::NOT => "(~)".into(),
            Symbol::OR => "(|)".into(),
            Symbol::AND => "(&)".into(),
            Symbol::IMPLIES => "(=>)".into(),
            Symbol::EQUIV => "(<=>)".into(),
            Symbol::EQ => "(=)".into(),
            Symbol::FORALL => "!!".into(),
            Symbol::EXISTS => "??".into(),
            _ => quote_name(self.sig.name(s)),
        }
    }

    fn push_binder(&mut self) -> String {
        let name = var_name(self.offset + self.bound.len());
        self.bound.push(name.clone());
        name
    }

    /// Operand of a connective or equation: only abstractions get parentheses.
    fn operand(&mut self, t: &Term) -> String {
        let (s, shape) = self.fmt(t);
        if shape == Shape::Lambda {
            format!("( {s} )")
        } else {
            s
        }
    }

    fn binder_group(&mut self, quant: &str, lam: &Term, sym: Option<Symbol>) -> String {
        // Collect directly nested binders of the same kind into one group.
        let mut vars = Vec::new();
        let mut cur = lam.clone();
        let body = loop {
            let TermKind::Abs(ty, b) = cur.kind() else {
                unreachable!("binder group over an abstraction");
            };
            let name = self.push_binder();
            vars.push(format!("{name}: {ty}"));
            let b = b.clone();
            let next = match sym {
                None => matches!(b.kind(), TermKind::Abs(..)).then(|| b.clone()),
                Some(q) => match formula::view(&b) {
                    View::Quant(q2, _, l) if q2 == q && matches!(l.kind(), TermKind::Abs(..)) => {
                        Some(l)
                    }
                    _ => None,
                },
            };
            match next {
                Some(n) => cur = n,
                None => break b,
            }
        };
        let body = self.fmt(&body).0;
        self.bound.truncate(self.bound.len() - vars.len());
        format!("{quant} [{}] : {body}", vars.join(","))
    }

    fn fmt(&mut self, t: &Term) -> (String, Shape) {
        match t.kind() {
            TermKind::Bound(i) => {
                let n = self.bound.len();
                let s = match (*i as usize) < n {
                    true => self.bound[n - 1 - *i as usize].clone(),
                    false => format!("LOOSE{}", *i as usize - n),
                };
                (s, Shape::Atomic)
            }
            TermKind::Var(v) => {
                let s = self.free.get(v).cloned().unwrap_or_else(|| format!("V{}", v.0));
                (s, Shape::Atomic)
            }
            TermKind::Const(s) => (self.symbol(*s), Shape::Atomic),
            TermKind::Abs(..) => {
                // `λP. ∀x. P x` keeps its binder form instead of becoming `!!`.
                let body = t.strip_abs().1;
                let quantified = matches!(body.head_symbol(), Some(Symbol::FORALL | Symbol::EXISTS))
                    && body.args().len() == 1;
                match t.eta_contract_top().filter(|_| !quantified) {
                    Some(c) => self.fmt(&c),
                    None => (self.binder_group("^", t, None), Shape::Lambda),
                }
            }
            TermKind::App(h, args) => {
                match (h.as_const(), args.len()) {
                    (Some(Symbol::NOT), 1) => {
                        if let View::Eq(l, r) = formula::view(&args[0]) {
                            let l = self.operand(&l);
                            let r = self.operand(&r);
                            return (format!("( {l} != {r} )"), Shape::Paren);
                        }
                        let a = self.fmt(&args[0]).0;
                        return (format!("~ {a}"), Shape::Prefix);
                    }
                    (Some(op @ (Symbol::OR | Symbol::AND)), 2) => {
                        // The parser associates to the left, so only the
                        // left spine is flattened.
                        let mut rights = Vec::new();
                        let mut x = t.clone();
                        while x.is_app_of(op) && x.args().len() == 2 {
                            rights.push(x.args()[1].clone());
                            x = x.args()[0].clone();
                        }
                        let mut ops = vec![self.operand(&x)];
                        ops.extend(rights.iter().rev().map(|r| self.operand(r)));
                        let sep = if op == Symbol::OR { " | " } else { " & " };
                        return (format!("( {} )", ops.join(sep)), Shape::Paren);
                    }
                    (Some(op @ (Symbol::IMPLIES | Symbol::EQUIV | Symbol::EQ)), 2) => {
                        let l = self.operand(&args[0]);
                        let r = self.operand(&args[1]);
                        let o = match op {
                            Symbol::IMPLIES => "=>",
                            Symbol::EQUIV => "<=>",
                            _ => "=",
                        };
                        return (format!("( {l} {o} {r} )"), Shape::Paren);
                    }
                    (Some(q @ (Symbol::FORALL | Symbol::EXISTS)), 1)
                        if matches!(args[0].kind(), TermKind::Abs(..)) =>
                    {
                        let s = if q == Symbol::FORALL { "!" } else { "?" };
                        return (self.binder_group(s, &args[0], Some(q)), Shape::Prefix);
                    }
                    _ => {}
                }
                let (hs, hshape) = self.fmt(h);
                let mut parts = vec![if hshape == Shape::Atomic { hs } else { format!("( {hs} )") }];
                let n = args.len();
                for (k, a) in args.iter().enumerate() {
                    let (s, shape) = self.fmt(a);
                    let bare = match shape {
                        Shape::Atomic | Shape::Paren => true,
                        Shape::Lambda | Shape::Prefix => k + 1 == n,
                    };
                    parts.push(if bare { s } else { format!("( {s} )") });
                }
                (format!("( {} )", parts.join(" @ ")), Shape::Paren)
            }
        }
    }

    /// A term as an argument-free expression (no enclosing parentheses added).
    pub fn bare(&mut self, t: &Term) -> String {
        let (s, shape) = self.fmt(t);
        match shape {
            Shape::Paren if matches!(t.kind(), TermKind::App(..)) && !formula::is_compound(t) => {
                // Strip the outer parentheses of a plain application.
                s[2..s.len() - 2].to_string()
            }
            _ => s,
        }
    }

    /// A formula in statement position: parenthesized exactly once.
    pub fn top(&mut self, t: &Term) -> String {
        let (s, shape) = self.fmt(t);
        wrap_top(s, shape)
    }

    fn literal(&mut self, l: &Literal) -> (String, Shape) {
        if l.is_prop() {
            let (s, shape) = self.fmt(&l.lhs);
            if l.is_pos() {
                return (s, shape);
            }
            return (format!("~ {s}"), Shape::Prefix);
        }
        let a = self.operand(&l.lhs);
        let b = self.operand(&l.rhs);
        let op = if l.is_pos() { "=" } else { "!=" };
        (format!("( {a} {op} {b} )"), Shape::Paren)
    }
}

fn wrap_top(s: String, shape: Shape) -> String {
    if shape == Shape::Paren {
        s
    } else {
        format!("( {s} )")
    }
}

/// Variable names of a clause: first occurrence order.
pub fn clause_var_names(c: &Clause) -> BTreeMap<VarId, String> {
    c.free_vars()
        .into_iter()
        .enumerate()
        .map(|(i, (v, _))| (v, var_name(i)))
        .collect()
}

/// A clause as a universally closed disjunction in statement position.
pub fn clause(sig: &Signature, c: &Clause) -> String {
    if c.is_empty() {
        return "( $false )".into();
    }
    let fv = c.free_vars();
    let names = clause_var_names(c);
    let mut p = TermPrinter::new(sig, names.clone());
    let lits: Vec<(String, Shape)> = c.literals.iter().map(|l| p.literal(l)).collect();
    let (body, shape) = if lits.len() == 1 {
        lits.into_iter().next().unwrap()
    } else {
        let parts: Vec<String> = lits.into_iter().map(|(s, _)| s).collect();
        (format!("( {} )", parts.join(" | ")), Shape::Paren)
    };
    if fv.is_empty() {
        return wrap_top(body, shape);
    }
    let prefix: Vec<String> = fv
        .iter()
        .rev()
        .map(|(v, ty)| format!("{}: {ty}", names[v]))
        .collect();
    format!("( ! [{}] : {body} )", prefix.join(","))
}

pub fn formula(sig: &Signature, t: &Term) -> String {
    TermPrinter::for_term(sig, t).top(t)
}

/// A statement `thf(name, role, body[, annotation]).`
pub fn statement(name: &str, role: &str, body: &str, annotation: Option<&str>) -> String {
    let name = quote_name(name);
    match annotation {
        Some(a) => format!("thf({name},{role},\n    {body},\n    {a})."),
        None => format!("thf({name},{role},\n    {body})."),
    }
}

/// Formula names: integers stay bare, other names are quoted when needed.
pub fn quote_name_or_number(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
        s.to_string()
    } else {
        quote_name(s)
    }
}

/// Prints a whole problem; parsing the result yields the same problem.
pub fn problem(p: &Problem) -> String {
    let mut out = String::new();
    if let Some(spec) = &p.logic {
        out.push_str(&crate::modal::spec_statement(spec));
        out.push('\n');
    }
    for d in &p.type_decls {
        let ty = match &d.ty {
            Some(t) => t.to_string(),
            None => "$tType".into(),
        };
        out.push_str(&format!(
            "thf({},type,\n    {}: {ty}).\n",
            quote_name_or_number(&d.name),
            quote_name(&d.symbol)
        ));
    }
    for f in &p.formulas {
        let role = if f.role == Role::Plain { "plain" } else { f.role.as_str() };
        out.push_str(&format!(
            "thf({},{role},\n    {}).\n",
            quote_name_or_number(&f.name),
            formula(&p.signature, &f.formula)
        ));
    }
    out
}
