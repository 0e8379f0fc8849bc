//! Clause normal form: Skolemizing clausification, clause simplification
//! and the formula-level preprocessing steps.

mod transform;

pub use transform::{as_definition, miniscope, simplify, DefinitionError, Definitions};

use crate::clause::{Clause, Literal, Polarity};
use crate::formula::{self, View};
use crate::signature::{Signature, Symbol, SymbolKind};
use crate::term::{Term, TermKind, VarId};
use crate::types::Type;

#[derive(Debug, Clone)]
pub struct PreprocessConfig {
    pub expand_definitions: bool,
    pub miniscope: bool,
    pub replace_defined_eq: bool,
    /// Types whose variables are instantiated exhaustively.
    pub exhaustive_inst_types: Vec<Type>,
    /// Clause count above which subformulas get definitional names.
    pub definitional_threshold: u64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            expand_definitions: true,
            miniscope: true,
            replace_defined_eq: true,
            exhaustive_inst_types: vec![Type::o(), Type::fun(Type::o(), Type::o())],
            definitional_threshold: 16,
        }
    }
}

/// A fresh Skolem constant of type `τ1 → .. → τn → ty` applied to the
/// given variables (the clause's free variables in first-occurrence order).
pub fn skolem_term(sig: &mut Signature, ty: &Type, vars: &[(VarId, Type)]) -> Term {
    let arg_tys: Vec<Type> = vars.iter().map(|(_, t)| t.clone()).collect();
    let sk = sig.fresh_skolem(Type::curried(&arg_tys, ty.clone()));
    let head = Term::constant(sk, sig.type_of(sk).expect("typed").clone());
    let args = vars
        .iter()
        .map(|(v, t)| Term::var(*v, t.clone()).eta_long())
        .collect();
    Term::apply(head, args).eta_long()
}

enum Expand {
    Normal,
    Remove,
    Taut,
    Replace(Vec<Literal>),
    Split(Vec<Literal>, Vec<Literal>),
    /// Instantiate the quantified variable by a fresh variable (`false`) or
    /// a Skolem term (`true`).
    Quant { skolem: bool, ty: Type, lam: Term, pol: Polarity },
}

fn lit(t: Term, pol: Polarity) -> Literal {
    Literal::prop(t, pol)
}

fn expand(l: &Literal) -> Expand {
    use Polarity::{Neg, Pos};
    let pol = l.pol;
    if !l.is_prop() {
        if formula::is_bot(&l.lhs) {
            return Expand::Replace(vec![lit(l.rhs.clone(), pol.flip())]);
        }
        if formula::is_bot(&l.rhs) {
            return Expand::Replace(vec![lit(l.lhs.clone(), pol.flip())]);
        }
        if l.lhs == l.rhs {
            return if pol.is_pos() { Expand::Taut } else { Expand::Remove };
        }
        return Expand::Normal;
    }
    let pos = pol.is_pos();
    match formula::view(&l.lhs) {
        View::True => {
            if pos {
                Expand::Taut
            } else {
                Expand::Remove
            }
        }
        View::False => {
            if pos {
                Expand::Remove
            } else {
                Expand::Taut
            }
        }
        View::Not(a) => Expand::Replace(vec![lit(a, pol.flip())]),
        View::Bin(op, a, b) => match (op, pos) {
            (Symbol::OR, true) => Expand::Replace(vec![lit(a, Pos), lit(b, Pos)]),
            (Symbol::OR, false) => Expand::Split(vec![lit(a, Neg)], vec![lit(b, Neg)]),
            (Symbol::AND, true) => Expand::Split(vec![lit(a, Pos)], vec![lit(b, Pos)]),
            (Symbol::AND, false) => Expand::Replace(vec![lit(a, Neg), lit(b, Neg)]),
            (Symbol::IMPLIES, true) => Expand::Replace(vec![lit(a, Neg), lit(b, Pos)]),
            (Symbol::IMPLIES, false) => Expand::Split(vec![lit(a, Pos)], vec![lit(b, Neg)]),
            (_, true) => Expand::Split(
                vec![lit(a.clone(), Neg), lit(b.clone(), Pos)],
                vec![lit(a, Pos), lit(b, Neg)],
            ),
            (_, false) => Expand::Split(
                vec![lit(a.clone(), Pos), lit(b.clone(), Pos)],
                vec![lit(a, Neg), lit(b, Neg)],
            ),
        },
        View::Eq(a, b) => Expand::Replace(vec![Literal::eq(a, b, pol)]),
        View::Quant(q, ty, lam) => {
            if !matches!(lam.kind(), TermKind::Abs(..)) {
                return Expand::Normal;
            }
            let universal = (q == Symbol::FORALL) == pos;
            Expand::Quant {
                skolem: !universal,
                ty,
                lam,
                pol,
            }
        }
        View::Atom => Expand::Normal,
    }
}

/// Upper estimate (saturating) of the number of clauses `[s]^pol` yields.
fn clause_count(s: &Term, pos: bool) -> u64 {
    match formula::view(s) {
        View::Not(a) => clause_count(&a, !pos),
        View::Bin(op, a, b) => {
            let (x, y) = match op {
                Symbol::OR if pos => return clause_count(&a, true).saturating_mul(clause_count(&b, true)),
                Symbol::OR => (clause_count(&a, false), clause_count(&b, false)),
                Symbol::AND if pos => (clause_count(&a, true), clause_count(&b, true)),
                Symbol::AND => return clause_count(&a, false).saturating_mul(clause_count(&b, false)),
                Symbol::IMPLIES if pos => {
                    return clause_count(&a, false).saturating_mul(clause_count(&b, true))
                }
                Symbol::IMPLIES => (clause_count(&a, true), clause_count(&b, false)),
                _ => {
                    let l = clause_count(&a, false).saturating_mul(clause_count(&b, pos));
                    let r = clause_count(&a, true).saturating_mul(clause_count(&b, !pos));
                    (l, r)
                }
            };
            x.saturating_add(y)
        }
        View::Quant(_, _, lam) => match lam.kind() {
            TermKind::Abs(_, b) => clause_count(b, pos),
            _ => 1,
        },
        _ => 1,
    }
}

fn literal_count(l: &Literal) -> u64 {
    if l.is_prop() {
        clause_count(&l.lhs, l.is_pos())
    } else {
        1
    }
}

/// Removes false literals and duplicates; `None` for tautologies.
pub fn simplify_clause(c: &Clause) -> Option<Clause> {
    let mut out: Vec<Literal> = Vec::with_capacity(c.len());
    for l in &c.literals {
        let (t, f) = if l.is_prop() {
            (formula::is_top(&l.lhs), formula::is_bot(&l.lhs))
        } else {
            (false, false)
        };
        let truth = if l.is_pos() { (t, f) } else { (f, t) };
        if truth.0 || (l.is_pos() && l.is_trivial() && !l.is_prop()) {
            return None;
        }
        if truth.1 || (!l.is_pos() && l.is_trivial()) {
            continue;
        }
        if out.iter().any(|m| m.same_as(l)) {
            continue;
        }
        out.push(l.clone());
    }
    let c = Clause::new(out);
    if c.is_tautology() {
        None
    } else {
        Some(c)
    }
}

/// Clausifies one clause. Skolem symbols are numbered in depth-first,
/// left-to-right order of the quantifiers eliminated.
pub fn clausify(c: &Clause, sig: &mut Signature, threshold: u64) -> Vec<Clause> {
    let mut stack: Vec<Vec<Literal>> = vec![c.literals.clone()];
    let mut out = Vec::new();
    while let Some(mut lits) = stack.pop() {
        // Definitional naming when the literals would multiply out.
        let counts: Vec<u64> = lits.iter().map(literal_count).collect();
        let product = counts.iter().fold(1u64, |a, b| a.saturating_mul(*b));
        let big = counts.iter().filter(|c| **c > 1).count();
        if product > threshold && big >= 2 {
            let (i, _) = counts
                .iter()
                .enumerate()
                .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
                .expect("nonempty");
            let named = lits[i].clone();
            let fv = named.lhs.free_vars();
            let tys: Vec<Type> = fv.iter().map(|(_, t)| t.clone()).collect();
            let d = sig.fresh_named("def", Type::curried(&tys, Type::o()), SymbolKind::Definitional);
            let head = Term::constant(d, sig.type_of(d).expect("typed").clone());
            let atom = Term::apply(
                head,
                fv.iter().map(|(v, t)| Term::var(*v, t.clone()).eta_long()).collect(),
            );
            lits[i] = Literal::prop(atom.clone(), Polarity::Pos);
            stack.push(vec![Literal::prop(atom, Polarity::Neg), named]);
            stack.push(lits);
            continue;
        }
        let mut action = None;
        for (i, l) in lits.iter().enumerate() {
            match expand(l) {
                Expand::Normal => {}
                e => {
                    action = Some((i, e));
                    break;
                }
            }
        }
        let Some((i, e)) = action else {
            if let Some(c) = simplify_clause(&Clause::new(lits)) {
                out.push(c);
            }
            continue;
        };
        match e {
            Expand::Normal => unreachable!(),
            Expand::Taut => {}
            Expand::Remove => {
                lits.remove(i);
                stack.push(lits);
            }
            Expand::Replace(new) => {
                lits.splice(i..=i, new);
                stack.push(lits);
            }
            Expand::Split(a, b) => {
                let mut second = lits.clone();
                second.splice(i..=i, b);
                lits.splice(i..=i, a);
                stack.push(second);
                stack.push(lits);
            }
            Expand::Quant {
                skolem,
                ty,
                lam,
                pol,
            } => {
                let inst = if skolem {
                    let fv = Clause::new(lits.clone()).free_vars();
                    skolem_term(sig, &ty, &fv)
                } else {
                    Term::fresh_var(ty.clone()).eta_long()
                };
                let body = lam.open_with(&inst).expect("abstraction").normalize();
                lits[i] = Literal::prop(body, pol);
                stack.push(lits);
            }
        }
    }
    out
}

/// Is every literal in normal form (no connectives at the top)?
pub fn is_normal(c: &Clause) -> bool {
    c.literals.iter().all(|l| matches!(expand(l), Expand::Normal))
}

/// Replaces Leibniz and Andrews equalities in the literals of `c` by
/// primitive equations.
pub fn replace_defined_equalities(c: &Clause) -> Clause {
    let lits = c
        .literals
        .iter()
        .map(|l| {
            if !l.is_prop() {
                return l.clone();
            }
            let s = simplify(&l.lhs, true);
            match formula::view(&s) {
                View::Eq(a, b) => Literal::eq(a, b, l.pol),
                _ => Literal::prop(s, l.pol),
            }
        })
        .collect();
    Clause::new(lits)
}
