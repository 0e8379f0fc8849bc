//! Formula-level preprocessing: definition expansion, simplification,
//! defined-equality replacement and miniscoping.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{self, View};
use crate::signature::Symbol;
use crate::term::{Term, TermKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefinitionError {
    #[error("cyclic definition of symbol {0}")]
    Cyclic(String),
    #[error("symbol {0} is defined twice")]
    Duplicate(String),
}

/// Definitions with bodies already unfolded, so expansion is a single pass.
#[derive(Debug, Clone, Default)]
pub struct Definitions {
    bodies: BTreeMap<Symbol, Term>,
    /// In the order given by the problem.
    order: Vec<Symbol>,
}

/// Replaces defined constants by their bodies, β-reducing hereditarily.
fn unfold(t: &Term, defs: &BTreeMap<Symbol, Term>) -> Term {
    let mut hit = false;
    t.for_each_const(&mut |s, _| hit |= defs.contains_key(&s));
    if !hit {
        return t.clone();
    }
    match t.kind() {
        TermKind::Const(s) => defs.get(s).cloned().unwrap_or_else(|| t.clone()),
        TermKind::Abs(ty, b) => Term::abs(ty.clone(), unfold(b, defs)),
        TermKind::App(h, args) => {
            let h = unfold(h, defs);
            let args = args.iter().map(|a| unfold(a, defs)).collect();
            Term::apply(h, args)
        }
        _ => t.clone(),
    }
}

impl Definitions {
    /// `names` maps symbols to display names for error messages.
    pub fn new(
        defs: Vec<(Symbol, Term)>,
        names: impl Fn(Symbol) -> String,
    ) -> Result<Definitions, DefinitionError> {
        let mut raw: BTreeMap<Symbol, Term> = BTreeMap::new();
        let mut order = Vec::new();
        for (s, body) in defs {
            if raw.insert(s, body).is_some() {
                return Err(DefinitionError::Duplicate(names(s)));
            }
            order.push(s);
        }
        // Depth-first unfolding with cycle detection.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        let mut marks: BTreeMap<Symbol, Mark> = BTreeMap::new();
        let mut bodies: BTreeMap<Symbol, Term> = BTreeMap::new();
        fn visit(
            s: Symbol,
            raw: &BTreeMap<Symbol, Term>,
            marks: &mut BTreeMap<Symbol, Mark>,
            bodies: &mut BTreeMap<Symbol, Term>,
            names: &dyn Fn(Symbol) -> String,
        ) -> Result<(), DefinitionError> {
            match marks.get(&s) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Active) => return Err(DefinitionError::Cyclic(names(s))),
                None => {}
            }
            marks.insert(s, Mark::Active);
            let body = &raw[&s];
            let mut deps = Vec::new();
            body.for_each_const(&mut |c, _| {
                if raw.contains_key(&c) && !deps.contains(&c) {
                    deps.push(c);
                }
            });
            for d in deps {
                visit(d, raw, marks, bodies, names)?;
            }
            let expanded = unfold(body, bodies).normalize();
            bodies.insert(s, expanded);
            marks.insert(s, Mark::Done);
            Ok(())
        }
        for s in &order {
            visit(*s, &raw, &mut marks, &mut bodies, &names)?;
        }
        Ok(Definitions { bodies, order })
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.bodies.contains_key(&s)
    }

    pub fn expand(&self, t: &Term) -> Term {
        if self.bodies.is_empty() {
            return t.clone();
        }
        unfold(t, &self.bodies).normalize()
    }

    /// Fully unfolded bodies in the original order.
    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &Term)> {
        self.order.iter().map(|s| (*s, &self.bodies[s]))
    }
}

/// If `t` is a definition `c = body` (or `c <=> body`) of a user constant,
/// returns the pair.
pub fn as_definition(t: &Term) -> Option<(Symbol, Term)> {
    let (l, r) = match formula::view(t) {
        View::Eq(l, r) => (l, r),
        View::Bin(Symbol::EQUIV, l, r) => (l, r),
        _ => return None,
    };
    // The defined constant may appear η-expanded.
    let c = l.eta_contract_top().unwrap_or(l);
    let s = c.as_const().filter(|s| !s.is_logical())?;
    if r.contains_symbol(s) || r.has_vars() {
        return None;
    }
    Some((s, r))
}

/// Leibniz `∀P. P s ⇒ P t` or Andrews `∀Q. (∀Z. Q Z Z) ⇒ Q s t`, given the
/// body under the quantifier; returns `s = t`.
fn defined_equality(body: &Term) -> Option<Term> {
    // Normalize `¬a ∨ b` and `b ∨ ¬a` to the implication a ⇒ b.
    let (a, b) = match formula::view(body) {
        View::Bin(Symbol::IMPLIES, a, b) => (a, b),
        View::Bin(Symbol::OR, x, y) => match (formula::view(&x), formula::view(&y)) {
            (View::Not(a), _) => (a, y),
            (_, View::Not(a)) => (a, x),
            _ => return None,
        },
        _ => return None,
    };
    let is_p = |t: &Term| t.eta_bound_index() == Some(0);
    let closed = |t: &Term| !t.mentions_bound(0);
    // Leibniz.
    if is_p(a.head()) && a.args().len() == 1 && is_p(b.head()) && b.args().len() == 1 {
        let (s, t) = (&a.args()[0], &b.args()[0]);
        if closed(s) && closed(t) {
            return Some(formula::eq(s.unshift(1), t.unshift(1)));
        }
    }
    // Andrews: a = Π(λZ. Q Z Z) with Q = index 1 inside.
    if is_p(b.head()) && b.args().len() == 2 {
        if let View::Quant(Symbol::FORALL, _, lam) = formula::view(&a) {
            if let TermKind::Abs(_, inner) = lam.kind() {
                let refl = inner.head().eta_bound_index() == Some(1)
                    && inner.args().len() == 2
                    && inner.args().iter().all(|z| z.eta_bound_index() == Some(0));
                let (s, t) = (&b.args()[0], &b.args()[1]);
                if refl && closed(s) && closed(t) {
                    return Some(formula::eq(s.unshift(1), t.unshift(1)));
                }
            }
        }
    }
    None
}

/// Unit laws for `$true`/`$false`, double negation, `s = s`, vacuous
/// quantification and (optionally) defined equalities, applied bottom-up
/// throughout the term.
pub fn simplify(t: &Term, defined_eq: bool) -> Term {
    let t = match t.kind() {
        TermKind::Abs(ty, b) => return Term::abs(ty.clone(), simplify(b, defined_eq)),
        TermKind::App(h, args) => {
            let nargs: Vec<Term> = args.iter().map(|a| simplify(a, defined_eq)).collect();
            if nargs == *args {
                t.clone()
            } else {
                Term::apply(h.clone(), nargs)
            }
        }
        _ => return t.clone(),
    };
    simplify_root(&t, defined_eq)
}

fn simplify_root(t: &Term, defined_eq: bool) -> Term {
    use formula::{bot, is_bot as f, is_top as tt, not, top};
    match formula::view(t) {
        View::Not(a) => match formula::view(&a) {
            View::True => bot(),
            View::False => top(),
            View::Not(b) => b,
            _ => t.clone(),
        },
        View::Bin(op, a, b) => match op {
            Symbol::OR => {
                if tt(&a) || tt(&b) {
                    top()
                } else if f(&a) || a == b {
                    b
                } else if f(&b) {
                    a
                } else {
                    t.clone()
                }
            }
            Symbol::AND => {
                if f(&a) || f(&b) {
                    bot()
                } else if tt(&a) || a == b {
                    b
                } else if tt(&b) {
                    a
                } else {
                    t.clone()
                }
            }
            Symbol::IMPLIES => {
                if f(&a) || tt(&b) || a == b {
                    top()
                } else if tt(&a) {
                    b
                } else if f(&b) {
                    simplify_root(&not(a), defined_eq)
                } else {
                    t.clone()
                }
            }
            _ => {
                if a == b {
                    top()
                } else if tt(&a) {
                    b
                } else if tt(&b) {
                    a
                } else if f(&a) {
                    simplify_root(&not(b), defined_eq)
                } else if f(&b) {
                    simplify_root(&not(a), defined_eq)
                } else {
                    t.clone()
                }
            }
        },
        View::Eq(a, b) if a == b => top(),
        View::Quant(q, _, lam) => {
            let TermKind::Abs(_, body) = lam.kind() else {
                return t.clone();
            };
            if !body.mentions_bound(0) {
                return body.unshift(1);
            }
            if defined_eq && q == Symbol::FORALL {
                if let Some(e) = defined_equality(body) {
                    return e;
                }
            }
            t.clone()
        }
        _ => t.clone(),
    }
}

fn quant(q: Symbol, ty: &crate::types::Type, body: Term) -> Term {
    if q == Symbol::FORALL {
        formula::forall(ty, body)
    } else {
        formula::exists(ty, body)
    }
}

fn dual(q: Symbol) -> Symbol {
    if q == Symbol::FORALL {
        Symbol::EXISTS
    } else {
        Symbol::FORALL
    }
}

/// Pushes quantifier `q` over `body` (which refers to it as index 0) into
/// the connective structure where the variable does not occur.
fn push(q: Symbol, ty: &crate::types::Type, body: Term) -> Term {
    if !body.mentions_bound(0) {
        return body.unshift(1);
    }
    let m = |t: &Term| t.mentions_bound(0);
    match formula::view(&body) {
        View::Bin(op @ (Symbol::AND | Symbol::OR), a, b) => {
            let distributes = (op == Symbol::AND) == (q == Symbol::FORALL);
            if distributes {
                formula::binary(op, push(q, ty, a), push(q, ty, b))
            } else if !m(&a) {
                formula::binary(op, a.unshift(1), push(q, ty, b))
            } else if !m(&b) {
                formula::binary(op, push(q, ty, a), b.unshift(1))
            } else {
                quant(q, ty, body)
            }
        }
        View::Bin(Symbol::IMPLIES, a, b) => {
            if !m(&a) {
                formula::implies(a.unshift(1), push(q, ty, b))
            } else if !m(&b) {
                formula::implies(push(dual(q), ty, a), b.unshift(1))
            } else {
                quant(q, ty, body)
            }
        }
        _ => quant(q, ty, body),
    }
}

/// Miniscoping through the connective structure of a formula.
pub fn miniscope(t: &Term) -> Term {
    match formula::view(t) {
        View::Not(a) => formula::not(miniscope(&a)),
        View::Bin(op, a, b) => formula::binary(op, miniscope(&a), miniscope(&b)),
        View::Quant(q, ty, lam) => match lam.kind() {
            TermKind::Abs(_, body) => push(q, &ty, miniscope(body)),
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}
