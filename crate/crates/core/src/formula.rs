//! Constructors and views for formulas built from the logical constants.

use crate::signature::Symbol;
use crate::term::{Term, VarId};
use crate::types::Type;

fn oo() -> Type {
    Type::fun(Type::o(), Type::o())
}

fn ooo() -> Type {
    Type::curried(&[Type::o(), Type::o()], Type::o())
}

pub fn top() -> Term {
    Term::constant(Symbol::TRUE, Type::o())
}

pub fn bot() -> Term {
    Term::constant(Symbol::FALSE, Type::o())
}

pub fn not(p: Term) -> Term {
    Term::apply(Term::constant(Symbol::NOT, oo()), vec![p])
}

pub fn binary(conn: Symbol, p: Term, q: Term) -> Term {
    Term::apply(Term::constant(conn, ooo()), vec![p, q])
}

pub fn or(p: Term, q: Term) -> Term {
    binary(Symbol::OR, p, q)
}

pub fn and(p: Term, q: Term) -> Term {
    binary(Symbol::AND, p, q)
}

pub fn implies(p: Term, q: Term) -> Term {
    binary(Symbol::IMPLIES, p, q)
}

pub fn equiv(p: Term, q: Term) -> Term {
    binary(Symbol::EQUIV, p, q)
}

/// Disjunction of a list; `$false` when empty.
pub fn or_all(mut ps: Vec<Term>) -> Term {
    match ps.len() {
        0 => bot(),
        _ => {
            let last = ps.pop().unwrap();
            ps.into_iter().rev().fold(last, |acc, p| or(p, acc))
        }
    }
}

pub fn and_all(mut ps: Vec<Term>) -> Term {
    match ps.len() {
        0 => top(),
        _ => {
            let last = ps.pop().unwrap();
            ps.into_iter().rev().fold(last, |acc, p| and(p, acc))
        }
    }
}

pub fn eq_const(ty: &Type) -> Term {
    Term::constant(
        Symbol::EQ,
        Type::curried(&[ty.clone(), ty.clone()], Type::o()),
    )
}

pub fn eq(s: Term, t: Term) -> Term {
    let c = eq_const(s.ty());
    Term::apply(c, vec![s, t])
}

pub fn quant_const(q: Symbol, ty: &Type) -> Term {
    Term::constant(q, Type::fun(Type::fun(ty.clone(), Type::o()), Type::o()))
}

/// `Π(λx:ty. body)` where `body` refers to the binder as index 0.
pub fn forall(ty: &Type, body: Term) -> Term {
    Term::apply(quant_const(Symbol::FORALL, ty), vec![Term::abs(ty.clone(), body)])
}

pub fn exists(ty: &Type, body: Term) -> Term {
    Term::apply(quant_const(Symbol::EXISTS, ty), vec![Term::abs(ty.clone(), body)])
}

/// `∀v. body` by abstracting the free variable `v`.
pub fn forall_var(v: VarId, ty: &Type, body: &Term) -> Term {
    Term::apply(quant_const(Symbol::FORALL, ty), vec![body.abstract_var(v, ty)])
}

pub fn exists_var(v: VarId, ty: &Type, body: &Term) -> Term {
    Term::apply(quant_const(Symbol::EXISTS, ty), vec![body.abstract_var(v, ty)])
}

/// Universal closure over the given variables (outermost first).
pub fn close_forall(vars: &[(VarId, Type)], body: &Term) -> Term {
    vars.iter()
        .rev()
        .fold(body.clone(), |acc, (v, ty)| forall_var(*v, ty, &acc))
}

/// Structural view of a formula by its head connective.
#[derive(Debug, Clone)]
pub enum View {
    True,
    False,
    Not(Term),
    Bin(Symbol, Term, Term),
    Eq(Term, Term),
    /// Quantifier, bound type and the abstraction `λx. body`.
    Quant(Symbol, Type, Term),
    Atom,
}

pub fn view(t: &Term) -> View {
    let Some(head) = t.head_symbol() else {
        return View::Atom;
    };
    let args = t.args();
    match (head, args.len()) {
        (Symbol::TRUE, 0) => View::True,
        (Symbol::FALSE, 0) => View::False,
        (Symbol::NOT, 1) => View::Not(args[0].clone()),
        (Symbol::OR | Symbol::AND | Symbol::IMPLIES | Symbol::EQUIV, 2) => {
            View::Bin(head, args[0].clone(), args[1].clone())
        }
        (Symbol::EQ, 2) => View::Eq(args[0].clone(), args[1].clone()),
        (Symbol::FORALL | Symbol::EXISTS, 1) => {
            let ty = args[0].ty().as_fun().expect("quantifier argument").0.clone();
            View::Quant(head, ty, args[0].clone())
        }
        _ => View::Atom,
    }
}

pub fn is_top(t: &Term) -> bool {
    t.as_const() == Some(Symbol::TRUE)
}

pub fn is_bot(t: &Term) -> bool {
    t.as_const() == Some(Symbol::FALSE)
}

/// Is the head of this formula a connective, quantifier or equality?
pub fn is_compound(t: &Term) -> bool {
    !matches!(view(t), View::Atom | View::True | View::False)
}

/// Does the formula contain any logical connective or quantifier below
/// non-logical symbols? Used to decide whether a term is propositional.
pub fn is_quantifier_free(t: &Term) -> bool {
    match view(t) {
        View::Quant(..) => false,
        View::Not(p) => is_quantifier_free(&p),
        View::Bin(_, p, q) => is_quantifier_free(&p) && is_quantifier_free(&q),
        _ => true,
    }
}
