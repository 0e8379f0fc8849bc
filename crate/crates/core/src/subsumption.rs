//! One-way matching, clause subsumption and variant checks.
//!
//! Matching is complete for higher-order patterns on the pattern side
//! (free variables applied to distinct bound variables); other flexible
//! subterms only match syntactically identical subterms.

use std::collections::BTreeMap;

use crate::clause::{Clause, Literal};
use crate::term::{Substitution, Term, TermKind, VarId};

type Bindings = BTreeMap<VarId, Term>;

/// Rebinds the loose indices of `t` (relative to `depth` surrounding
/// binders) that occur in `outer` to fresh λ-binders: `outer[i]` becomes
/// the `i`-th of `k` new binders. Fails if another loose index occurs.
fn rebind(t: &Term, outer: &[u32], d: u32) -> Option<Term> {
    if t.loose() <= d {
        return Some(t.clone());
    }
    let k = outer.len() as u32;
    match t.kind() {
        TermKind::Bound(j) => {
            let o = j - d;
            let i = outer.iter().position(|x| *x == o)? as u32;
            Some(Term::bound(d + (k - 1 - i), t.ty().clone()))
        }
        TermKind::Abs(ty, b) => Some(Term::abs(ty.clone(), rebind(b, outer, d + 1)?)),
        TermKind::App(h, args) => {
            let h = rebind(h, outer, d)?;
            let args = args
                .iter()
                .map(|a| rebind(a, outer, d))
                .collect::<Option<Vec<_>>>()?;
            Some(Term::try_app_raw(h, args).expect("well typed"))
        }
        _ => Some(t.clone()),
    }
}

fn apply_bindings(b: &Bindings, t: &Term) -> Term {
    let mut s = Substitution::new();
    for (v, u) in b {
        s.insert(*v, u.ty(), u.clone()).expect("typed binding");
    }
    s.apply(t)
}

fn bind(b: &mut Bindings, v: VarId, t: Term) -> bool {
    match b.get(&v) {
        Some(prev) => *prev == t,
        None => {
            b.insert(v, t);
            true
        }
    }
}

/// Extends `b` so that `b(p) = t`, treating variables of `t` as constants.
/// Loose bound indices in `p` and `t` refer to the same binders.
fn match_term(p: &Term, t: &Term, b: &mut Bindings) -> bool {
    if p.ty() != t.ty() {
        return false;
    }
    if !p.has_vars() {
        return p == t;
    }
    match (p.kind(), t.kind()) {
        (TermKind::Abs(_, pb), TermKind::Abs(_, tb)) => return match_term(pb, tb, b),
        (TermKind::Abs(..), _) | (_, TermKind::Abs(..)) => return false,
        _ => {}
    }
    let (ph, pargs) = (p.head(), p.args());
    if let Some(x) = ph.as_var() {
        if let Some(val) = b.get(&x).cloned() {
            let inst_args: Vec<Term> = pargs.iter().map(|a| apply_bindings(b, a)).collect();
            if inst_args.iter().any(|a| a.free_vars().iter().any(|(v, _)| !b.contains_key(v) && p.contains_var(*v))) {
                return p == t;
            }
            return Term::apply(val, inst_args) == *t;
        }
        let outer: Option<Vec<u32>> = pargs.iter().map(|a| a.eta_bound_index()).collect();
        if let Some(outer) = outer {
            let distinct = outer
                .iter()
                .enumerate()
                .all(|(i, x)| !outer[..i].contains(x));
            if distinct {
                let Some(body) = rebind(t, &outer, 0) else {
                    return false;
                };
                let tys: Vec<_> = pargs.iter().map(|a| a.ty().clone()).collect();
                return bind(b, x, Term::abs_many(&tys, body));
            }
        }
        // Outside the pattern fragment: accept only identical subterms.
        if p == t {
            return p.free_vars().into_iter().all(|(v, ty)| {
                let id = Term::var(v, ty).eta_long();
                bind(b, v, id)
            });
        }
        return false;
    }
    let (th, targs) = (t.head(), t.args());
    if ph != th || pargs.len() != targs.len() {
        return false;
    }
    for (pa, ta) in pargs.iter().zip(targs) {
        if !match_term(pa, ta, b) {
            return false;
        }
    }
    true
}

fn match_literal(p: &Literal, t: &Literal, b: &Bindings) -> Vec<Bindings> {
    if p.pol != t.pol || p.ty() != t.ty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut b1 = b.clone();
    if match_term(&p.lhs, &t.lhs, &mut b1) && match_term(&p.rhs, &t.rhs, &mut b1) {
        out.push(b1);
    }
    let mut b2 = b.clone();
    if match_term(&p.lhs, &t.rhs, &mut b2) && match_term(&p.rhs, &t.lhs, &mut b2) && !out.contains(&b2) {
        out.push(b2);
    }
    out
}

fn to_subst(b: &Bindings) -> Substitution {
    let mut s = Substitution::new();
    for (v, t) in b {
        s.insert(*v, t.ty(), t.clone()).expect("typed binding");
    }
    s
}

/// Finds `σ` with `p σ = t`, if one exists within the pattern fragment.
pub fn match_terms(p: &Term, t: &Term) -> Option<Substitution> {
    let mut b = Bindings::new();
    match_term(p, t, &mut b).then(|| to_subst(&b))
}

fn subsume_from(c: &[&Literal], d: &[Literal], used: &mut Vec<bool>, b: &Bindings) -> bool {
    let Some((first, rest)) = c.split_first() else {
        return true;
    };
    for j in 0..d.len() {
        if used[j] {
            continue;
        }
        for nb in match_literal(first, &d[j], b) {
            used[j] = true;
            if subsume_from(rest, d, used, &nb) {
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Multiset subsumption: some `σ` maps the literals of `c` injectively
/// onto literals of `d`.
pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    if c.len() > d.len() {
        return false;
    }
    // Most constrained literals first.
    let mut lits: Vec<&Literal> = c.literals.iter().collect();
    lits.sort_by_key(|l| std::cmp::Reverse(l.weight()));
    let mut used = vec![false; d.len()];
    subsume_from(&lits, &d.literals, &mut used, &Bindings::new())
}

type Renaming = (BTreeMap<VarId, VarId>, BTreeMap<VarId, VarId>);

fn rename_term(p: &Term, t: &Term, r: &mut Renaming) -> bool {
    if p.ty() != t.ty() || p.size() != t.size() {
        return false;
    }
    if !p.has_vars() && !t.has_vars() {
        return p == t;
    }
    match (p.kind(), t.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            let fwd = *r.0.entry(*x).or_insert(*y);
            let bwd = *r.1.entry(*y).or_insert(*x);
            fwd == *y && bwd == *x
        }
        (TermKind::Abs(a, pb), TermKind::Abs(b, tb)) => a == b && rename_term(pb, tb, r),
        (TermKind::App(ph, pa), TermKind::App(th, ta)) => {
            pa.len() == ta.len()
                && rename_term(ph, th, r)
                && pa.iter().zip(ta).all(|(x, y)| rename_term(x, y, r))
        }
        _ => p == t,
    }
}

fn variant_from(c: &[Literal], d: &[Literal], used: &mut Vec<bool>, r: &Renaming) -> bool {
    let Some((first, rest)) = c.split_first() else {
        return true;
    };
    for j in 0..d.len() {
        if used[j] || d[j].pol != first.pol {
            continue;
        }
        for (l, rr) in [(&d[j].lhs, &d[j].rhs), (&d[j].rhs, &d[j].lhs)] {
            let mut nr = r.clone();
            if rename_term(&first.lhs, l, &mut nr) && rename_term(&first.rhs, rr, &mut nr) {
                used[j] = true;
                if variant_from(rest, d, used, &nr) {
                    return true;
                }
                used[j] = false;
            }
        }
    }
    false
}

/// Equal up to a bijective renaming of variables and literal order.
pub fn is_variant(c: &Clause, d: &Clause) -> bool {
    if c.len() != d.len() || c.weight() != d.weight() {
        return false;
    }
    let mut used = vec![false; d.len()];
    variant_from(&c.literals, &d.literals, &mut used, &(BTreeMap::new(), BTreeMap::new()))
}
