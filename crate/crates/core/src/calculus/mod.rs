//! Generating and simplifying inference rules. Every function is a pure
//! map from premises to conclusions (apart from fresh variables and fresh
//! symbols), so the saturation loop and the replay checker can share them.

pub mod order;

use std::cmp::Ordering;

use crate::clause::{Clause, Literal, Polarity};
use crate::cnf::skolem_term;
use crate::formula::{self, View};
use crate::signature::{Signature, Symbol, SymbolKind};
use crate::subsumption::{match_terms, subsumes};
use crate::term::{Substitution, Term, TermKind, VarId};
use crate::types::Type;
use crate::unify::{self, partial_binding, pattern_unify, PatternResult};

/// A conclusion before constraint solving.
#[derive(Clone, Debug)]
pub struct Conclusion {
    pub clause: Clause,
    /// Indices of the literals to be solved by unification.
    pub constraints: Vec<usize>,
    /// Instantiation of the (first) premise's variables, for proof output.
    pub bindings: Vec<(VarId, Term)>,
}

impl Conclusion {
    fn plain(clause: Clause) -> Self {
        Conclusion {
            clause,
            constraints: Vec::new(),
            bindings: Vec::new(),
        }
    }
}

fn is_logical_constant(t: &Term) -> bool {
    formula::is_top(t) || formula::is_bot(t)
}

/// Both terms have constant heads and the heads differ, so no unifier
/// exists.
fn rigid_clash(s: &Term, t: &Term) -> bool {
    let (hs, ht) = (s.deep_head(), t.deep_head());
    match (hs.kind(), ht.kind()) {
        (TermKind::Const(a), TermKind::Const(b)) => {
            a != b || s.strip_abs().0.len() != t.strip_abs().0.len()
        }
        _ => false,
    }
}

/// `[s ≃ s]^ff`, `[⊤]^ff` or `[⊥]^tt`.
pub fn is_false_literal(l: &Literal) -> bool {
    if l.is_prop() {
        return if l.is_pos() {
            formula::is_bot(&l.lhs)
        } else {
            formula::is_top(&l.lhs)
        };
    }
    !l.is_pos() && l.is_trivial()
}

/// Paramodulation of `from` into `into`. The conclusion is
/// `[s[r]π ≃ t]^α ∨ C′ ∨ D′ ∨ [l ≃ s|π]^ff`.
pub fn para(from: &Clause, into: &Clause) -> Vec<Conclusion> {
    let (from, _) = from.fresh_variant();
    let mut out = Vec::new();
    for (j, eq) in from.literals.iter().enumerate() {
        if !eq.is_pos() {
            continue;
        }
        let orientations: &[bool] = if eq.is_prop() { &[false] } else { &[false, true] };
        for &flip in orientations {
            let (l, r) = if flip { (&eq.rhs, &eq.lhs) } else { (&eq.lhs, &eq.rhs) };
            if is_logical_constant(l) || l.as_eta_var().is_some() {
                continue;
            }
            if order::compare(l, r) == Some(Ordering::Less) {
                continue;
            }
            for (i, lit) in into.literals.iter().enumerate() {
                if eq.is_prop() && lit.is_prop() && lit.is_pos() {
                    continue;
                }
                let sides: &[bool] = if lit.is_prop() { &[false] } else { &[false, true] };
                for &right in sides {
                    let (s, t) = if right { (&lit.rhs, &lit.lhs) } else { (&lit.lhs, &lit.rhs) };
                    if order::compare(s, t) == Some(Ordering::Less) {
                        continue;
                    }
                    for (pos, sub) in s.positions() {
                        if sub.ty() != l.ty()
                            || !sub.is_closed()
                            || sub.as_eta_var().is_some()
                            || is_logical_constant(&sub)
                            || rigid_clash(l, &sub)
                        {
                            continue;
                        }
                        let new_s = s.replace_at(&pos, r.clone()).expect("typed position");
                        let rewritten = if right {
                            Literal::new(t.clone(), new_s, lit.pol)
                        } else {
                            Literal::new(new_s, t.clone(), lit.pol)
                        };
                        let mut lits = Vec::new();
                        if !is_false_literal(&rewritten) {
                            lits.push(rewritten);
                        }
                        lits.extend(into.without(&[i]));
                        lits.extend(from.without(&[j]));
                        lits.push(Literal::eq(l.clone(), sub.clone(), Polarity::Neg));
                        let k = lits.len() - 1;
                        out.push(Conclusion {
                            clause: Clause::new(lits),
                            constraints: vec![k],
                            bindings: Vec::new(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Equality factoring. Two propositional literals of opposite polarity are
/// factored by reading `[u]^ff` as `[¬u]^tt`.
pub fn eqfac(c: &Clause) -> Vec<Conclusion> {
    let mut out = Vec::new();
    let n = c.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (li, lj) = (&c.literals[i], &c.literals[j]);
            if li.ty() != lj.ty() {
                continue;
            }
            let mut push = |extra: Vec<Literal>| {
                let mut lits = c.without(&[j]);
                let first = lits.len();
                lits.extend(extra);
                out.push(Conclusion {
                    constraints: (first..lits.len()).collect(),
                    clause: Clause::new(lits),
                    bindings: Vec::new(),
                });
            };
            if li.is_prop() && lj.is_prop() {
                let (s, u) = (&li.lhs, &lj.lhs);
                if li.pol == lj.pol {
                    if i < j && !rigid_clash(s, u) {
                        push(vec![
                            Literal::eq(s.clone(), u.clone(), Polarity::Neg),
                            Literal::eq(li.rhs.clone(), lj.rhs.clone(), Polarity::Neg),
                        ]);
                    }
                } else if u.is_flex() || s.is_flex() {
                    push(vec![
                        Literal::eq(u.clone(), formula::not(s.clone()), Polarity::Neg),
                        Literal::eq(li.rhs.clone(), lj.rhs.clone(), Polarity::Neg),
                    ]);
                }
                continue;
            }
            if li.pol != lj.pol || li.is_prop() || lj.is_prop() || i > j {
                continue;
            }
            let (s, t) = (&li.lhs, &li.rhs);
            for (u, v) in [(&lj.lhs, &lj.rhs), (&lj.rhs, &lj.lhs)] {
                if rigid_clash(s, u) || rigid_clash(t, v) {
                    continue;
                }
                push(vec![
                    Literal::eq(s.clone(), u.clone(), Polarity::Neg),
                    Literal::eq(t.clone(), v.clone(), Polarity::Neg),
                ]);
            }
        }
    }
    out
}

/// Boolean extensionality on every equation between formulas.
pub fn bool_ext(c: &Clause) -> Vec<Conclusion> {
    let mut out = Vec::new();
    for (i, l) in c.literals.iter().enumerate() {
        if !l.ty().is_o() || l.is_prop() || is_logical_constant(&l.lhs) {
            continue;
        }
        let (s, t) = (&l.lhs, &l.rhs);
        use Polarity::{Neg, Pos};
        let pairs = if l.is_pos() {
            [(Neg, Pos), (Pos, Neg)]
        } else {
            [(Pos, Pos), (Neg, Neg)]
        };
        for (ps, pt) in pairs {
            let mut lits = c.literals[..i].to_vec();
            lits.push(Literal::prop(s.clone(), ps));
            lits.push(Literal::prop(t.clone(), pt));
            lits.extend_from_slice(&c.literals[i + 1..]);
            out.push(Conclusion::plain(Clause::new(lits)));
        }
    }
    out
}

/// Should `l` be treated by functional extensionality? Negative literals
/// with a flexible side are left to unification.
fn func_ext_applies(l: &Literal) -> bool {
    l.ty().is_fun() && (l.is_pos() || (l.lhs.is_rigid() && l.rhs.is_rigid()))
}

/// Functional extensionality, applied until every such literal is of base
/// type: positive literals get a fresh variable, negative ones a Skolem
/// term over the clause's free variables.
pub fn func_ext(c: &Clause, sig: &mut Signature) -> Option<Clause> {
    if !c.literals.iter().any(func_ext_applies) {
        return None;
    }
    let mut lits = c.literals.clone();
    while let Some(i) = lits.iter().position(func_ext_applies) {
        let (arg_ty, _) = lits[i].ty().as_fun().map(|(a, r)| (a.clone(), r.clone())).expect("fun");
        let arg = if lits[i].is_pos() {
            Term::fresh_var(arg_ty).eta_long()
        } else {
            let fv = Clause::new(lits.clone()).free_vars();
            skolem_term(sig, &arg_ty, &fv)
        };
        let l = &lits[i];
        let apply = |s: &Term| Term::apply(s.clone(), vec![arg.clone()]).normalize();
        lits[i] = Literal::new(apply(&l.lhs), apply(&l.rhs), l.pol);
    }
    Some(Clause::new(lits))
}

/// Recognizes `[f X ≃ f Y]^ff ∨ [X ≃ Y]^tt` and returns `f`.
pub fn injectivity_symbol(c: &Clause) -> Option<Symbol> {
    if c.len() != 2 {
        return None;
    }
    let (neg, pos) = match (c.literals[0].is_pos(), c.literals[1].is_pos()) {
        (false, true) => (&c.literals[0], &c.literals[1]),
        (true, false) => (&c.literals[1], &c.literals[0]),
        _ => return None,
    };
    let x = pos.lhs.as_eta_var()?;
    let y = pos.rhs.as_eta_var()?;
    if x == y {
        return None;
    }
    let f = neg.lhs.head_symbol()?;
    if f.is_logical() || neg.rhs.head_symbol() != Some(f) {
        return None;
    }
    let (a, b) = (neg.lhs.args(), neg.rhs.args());
    if a.len() != 1 || b.len() != 1 {
        return None;
    }
    let (u, v) = (a[0].as_eta_var()?, b[0].as_eta_var()?);
    if (u, v) == (x, y) || (u, v) == (y, x) {
        Some(f)
    } else {
        None
    }
}

/// The left inverse axiom `[f⁻¹ (f Z) ≃ Z]^tt` for a fresh symbol `f⁻¹`.
pub fn inj(c: &Clause, sig: &mut Signature) -> Option<(Symbol, Clause)> {
    let f = injectivity_symbol(c)?;
    let fty = sig.type_of(f)?.clone();
    let (dom, cod) = fty.as_fun().map(|(a, r)| (a.clone(), r.clone()))?;
    let name = format!("{}_inv", sig.name(f));
    let inv = sig.fresh_named(&name, Type::fun(cod, dom.clone()), SymbolKind::Inverse);
    let inv_t = Term::constant(inv, sig.type_of(inv).expect("typed").clone());
    let z = Term::fresh_var(dom).eta_long();
    let fz = Term::apply(Term::constant(f, fty), vec![z.clone()]).normalize();
    let lhs = Term::apply(inv_t, vec![fz]).normalize();
    Some((f, Clause::unit(Literal::eq(lhs, z, Polarity::Pos))))
}

/// Heads used by primitive substitution.
#[derive(Clone, Debug)]
pub struct PsHeads {
    pub heads: Vec<Term>,
}

impl PsHeads {
    /// `¬`, `∨`, and `Π`, `=` at each of the given types.
    pub fn new(types: &[Type]) -> Self {
        let o = Type::o();
        let mut heads = vec![
            Term::constant(Symbol::NOT, Type::fun(o.clone(), o.clone())),
            Term::constant(Symbol::OR, Type::curried(&[o.clone(), o.clone()], o.clone())),
        ];
        for ty in types {
            heads.push(formula::quant_const(Symbol::FORALL, ty));
            heads.push(formula::eq_const(ty));
        }
        PsHeads { heads }
    }
}

/// Primitive substitution on the head variables of flexible propositional
/// literals, with the Bind-solved instance produced directly.
pub fn prim_subst(c: &Clause, heads: &PsHeads) -> Vec<Conclusion> {
    let mut vars: Vec<(VarId, Type)> = Vec::new();
    for l in &c.literals {
        if !l.is_prop() {
            continue;
        }
        let h = l.lhs.head();
        if let TermKind::Var(v) = h.kind() {
            if !vars.iter().any(|(w, _)| w == v) {
                vars.push((*v, h.ty().clone()));
            }
        }
    }
    let mut out = Vec::new();
    for (v, ty) in vars {
        let (params, target) = ty.split();
        if !target.is_o() {
            continue;
        }
        for head in &heads.heads {
            let b = partial_binding(&params, head.clone());
            let s = Substitution::singleton(v, &ty, b.clone()).expect("typed binding");
            out.push(Conclusion {
                clause: c.apply(&s),
                constraints: Vec::new(),
                bindings: vec![(v, b)],
            });
        }
    }
    out
}

/// The elements of a finite type, if it is one we enumerate.
pub fn finite_domain(ty: &Type) -> Option<Vec<Term>> {
    let o = Type::o();
    if *ty == o {
        return Some(vec![formula::top(), formula::bot()]);
    }
    if *ty == Type::fun(o.clone(), o.clone()) {
        let x = Term::bound(0, o.clone());
        return Some(
            [formula::top(), formula::bot(), x.clone(), formula::not(x)]
                .into_iter()
                .map(|b| Term::abs(o.clone(), b))
                .collect(),
        );
    }
    None
}

/// Exhaustive instantiation of the first variable whose type is in
/// `types`.
pub fn instantiate(c: &Clause, types: &[Type]) -> Vec<Conclusion> {
    let Some((v, ty)) = c.free_vars().into_iter().find(|(_, t)| types.contains(t)) else {
        return Vec::new();
    };
    let Some(dom) = finite_domain(&ty) else {
        return Vec::new();
    };
    dom.into_iter()
        .map(|b| {
            let s = Substitution::singleton(v, &ty, b.clone()).expect("typed binding");
            Conclusion {
                clause: c.apply(&s),
                constraints: Vec::new(),
                bindings: vec![(v, b)],
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum Simplified {
    Tautology,
    Unchanged,
    Changed(Clause, Vec<(VarId, Term)>),
}

/// Destructive equality resolution, deletion of false and duplicate
/// literals, and tautology detection.
pub fn simplify(c: &Clause) -> Simplified {
    let mut lits = c.literals.clone();
    let mut bindings: Vec<(VarId, Term)> = Vec::new();
    let mut changed = false;
    loop {
        let der = lits.iter().enumerate().find_map(|(i, l)| {
            if l.is_pos() || l.is_prop() {
                return None;
            }
            for (a, b) in [(&l.lhs, &l.rhs), (&l.rhs, &l.lhs)] {
                if let Some(x) = a.as_eta_var() {
                    if !b.contains_var(x) {
                        return Some((i, x, b.clone()));
                    }
                }
            }
            None
        });
        let Some((i, x, b)) = der else {
            break;
        };
        let s = Substitution::singleton(x, &b.ty().clone(), b.clone()).expect("typed");
        lits.remove(i);
        lits = lits.iter().map(|l| l.apply(&s)).collect();
        for (_, t) in bindings.iter_mut() {
            *t = s.apply(t);
        }
        bindings.push((x, b));
        changed = true;
    }
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for l in lits {
        if is_false_literal(&l) || out.iter().any(|m| m.same_as(&l)) {
            changed = true;
            continue;
        }
        out.push(l);
    }
    let c = Clause::new(out);
    if c.is_tautology() {
        return Simplified::Tautology;
    }
    if changed {
        Simplified::Changed(c, bindings)
    } else {
        Simplified::Unchanged
    }
}

/// Removes the literals of `c` contradicted by an instance of the unit
/// clause `unit`.
pub fn unit_cut(c: &Clause, unit: &Clause) -> Option<Clause> {
    let k = unit.literals.first()?;
    let neg = Clause::unit(k.flipped());
    let keep: Vec<Literal> = c
        .literals
        .iter()
        .filter(|l| !subsumes(&neg, &Clause::unit((*l).clone())))
        .cloned()
        .collect();
    (keep.len() < c.len()).then(|| Clause::new(keep))
}

/// Some free variable occurs with arguments.
fn has_applied_var(t: &Term) -> bool {
    match t.kind() {
        TermKind::Abs(_, b) => has_applied_var(b),
        TermKind::App(h, args) => h.is_var() || args.iter().any(has_applied_var),
        _ => false,
    }
}

/// Oriented form `l → r` of a positive unit equation, if any. Equations
/// with applied variables are not used: their instances need not respect
/// the order after β-reduction, and rewriting with them can delete clauses
/// that extensional reasoning still needs.
pub fn rewrite_rule(unit: &Clause) -> Option<(Term, Term)> {
    if !unit.is_unit() {
        return None;
    }
    let l = &unit.literals[0];
    if !l.is_pos() || l.is_prop() || has_applied_var(&l.lhs) || has_applied_var(&l.rhs) {
        return None;
    }
    match order::compare(&l.lhs, &l.rhs) {
        Some(Ordering::Greater) => Some((l.lhs.clone(), l.rhs.clone())),
        Some(Ordering::Less) => Some((l.rhs.clone(), l.lhs.clone())),
        _ => None,
    }
}

/// One rewriting step with a rule `l → r` somewhere in `c`.
pub fn rewrite_step(c: &Clause, rule: &(Term, Term)) -> Option<Clause> {
    let (l, r) = rule;
    for (i, lit) in c.literals.iter().enumerate() {
        for right in [false, true] {
            let side = if right { &lit.rhs } else { &lit.lhs };
            for (pos, sub) in side.positions() {
                if sub.ty() != l.ty() || !sub.is_closed() || rigid_clash(l, &sub) {
                    continue;
                }
                let Some(m) = match_terms(l, &sub) else {
                    continue;
                };
                let new_side = side.replace_at(&pos, m.apply(r)).expect("typed position");
                let mut lits = c.literals.clone();
                lits[i] = if right {
                    Literal::new(lit.lhs.clone(), new_side, lit.pol)
                } else {
                    Literal::new(new_side, lit.rhs.clone(), lit.pol)
                };
                return Some(Clause::new(lits));
            }
        }
    }
    None
}

/// Result of solving the constraints of a conclusion.
#[derive(Clone, Debug)]
pub struct Unified {
    pub clause: Clause,
    pub bindings: Vec<(VarId, Term)>,
    /// Solved in the pattern fragment.
    pub pattern: bool,
}

#[derive(Clone, Debug, Default)]
pub struct UnifyOutcome {
    pub results: Vec<Unified>,
    /// The search was cut off, so an empty result is not definitive.
    pub incomplete: bool,
}

/// Solves the literals at `idx` as unification constraints, yielding at
/// most `limit` instances of `c` without them.
pub fn unify_constraints(c: &Clause, idx: &[usize], depth: u32, limit: usize) -> UnifyOutcome {
    let lits: Vec<Literal> = idx.iter().map(|i| c.literals[*i].clone()).collect();
    let cs = unify::constraints_of(&lits);
    let rest = c.without(idx);
    let vars: Vec<VarId> = c.free_vars().into_iter().map(|(v, _)| v).collect();
    let finish = |s: &Substitution, residual: &[(Term, Term)], pattern: bool| {
        let mut out: Vec<Literal> = rest.iter().map(|l| l.apply(s)).collect();
        out.extend(
            residual
                .iter()
                .map(|(a, b)| Literal::eq(a.clone(), b.clone(), Polarity::Neg)),
        );
        let bindings = vars
            .iter()
            .filter_map(|v| s.get(*v).map(|t| (*v, t.clone())))
            .collect();
        Unified {
            clause: Clause::new(out),
            bindings,
            pattern,
        }
    };
    match pattern_unify(&cs) {
        PatternResult::Unifier(s) => UnifyOutcome {
            results: vec![finish(&s, &[], true)],
            incomplete: false,
        },
        PatternResult::Fail => UnifyOutcome::default(),
        PatternResult::NotPattern => {
            let mut it = unify::pre_unify(cs, depth);
            let mut results = Vec::new();
            for r in it.by_ref() {
                results.push(finish(&r.subst, &r.residual, false));
                if results.len() >= limit {
                    break;
                }
            }
            UnifyOutcome {
                incomplete: results.is_empty() && it.depth_bound_reached(),
                results,
            }
        }
    }
}

/// Literals that are worth solving by unification on their own: negative
/// equations whose sides are not an obvious clash.
pub fn unification_candidates(c: &Clause) -> Vec<usize> {
    c.literals
        .iter()
        .enumerate()
        .filter(|(_, l)| {
            !l.is_pos() && !l.is_prop() && !rigid_clash(&l.lhs, &l.rhs)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Is `t` a propositional atom (a nullary constant of type `o`)?
pub fn is_propositional_atom(t: &Term) -> bool {
    matches!(formula::view(t), View::Atom) && t.as_const().is_some() && t.ty().is_o()
}

#[cfg(test)]
mod tests;
