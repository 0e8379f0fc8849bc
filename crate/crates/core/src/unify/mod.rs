//! Higher-order unification: general bindings, Huet-style pre-unification
//! and pattern unification.
//!
//! A constraint is a pair of closed β-normal η-long terms of the same type.
//! Constraints produced by decomposition keep the shared λ-prefix, so no
//! constraint ever contains loose bound variables.

mod pattern;

pub use pattern::{pattern_unify, PatternResult};

use crate::clause::Literal;
use crate::signature::Symbol;
use crate::term::{Substitution, Term, TermKind, VarId};
use crate::types::Type;

pub type Constraint = (Term, Term);

/// Default number of flex-rigid branching steps along one search path.
pub const DEFAULT_DEPTH: u32 = 8;
/// Default number of unifiers consumed per inference.
pub const DEFAULT_UNIFIERS: usize = 4;
/// Hard cap on explored search nodes per call, independent of the depth.
pub const DEFAULT_NODE_CAP: usize = 20_000;

/// Imitation of `head` (if given) followed by one projection per argument
/// position whose type ends in the goal's target type.
///
/// `goal` is `τ1 → .. → τn → β` and every binding has the shape
/// `λx1..xn. k (H1 x̄) .. (Hm x̄)` with fresh variables `Hi`.
pub fn general_bindings(goal: &Type, head: Option<(Symbol, &Type)>) -> Vec<Term> {
    let (params, target) = goal.split();
    let mut out = Vec::new();
    if let Some((sym, ty)) = head {
        if ty.target() == target {
            out.push(partial_binding(&params, Term::constant(sym, ty.clone())));
        }
    }
    let n = params.len();
    for (i, p) in params.iter().enumerate() {
        if p.target() == target {
            let head = Term::bound((n - 1 - i) as u32, p.clone());
            out.push(partial_binding(&params, head));
        }
    }
    out
}

/// `λx̄. head (H1 x̄) .. (Hm x̄)` where `head` may refer to the `x̄`.
pub fn partial_binding(params: &[Type], head: Term) -> Term {
    let n = params.len();
    let (arg_tys, _) = head.ty().split();
    let xs: Vec<Term> = params
        .iter()
        .enumerate()
        .map(|(i, t)| Term::bound((n - 1 - i) as u32, t.clone()))
        .collect();
    let args = arg_tys
        .iter()
        .map(|a| {
            let h = Term::fresh_var(Type::curried(params, a.clone()));
            Term::apply(h, xs.clone())
        })
        .collect();
    Term::abs_many(params, Term::apply(head, args)).normalize()
}

/// Result of (partial) unification.
#[derive(Clone, Debug)]
pub struct UnifResult {
    pub subst: Substitution,
    /// Remaining flex-flex constraints, already instantiated.
    pub residual: Vec<Constraint>,
}

fn flex_head(t: &Term) -> Option<(VarId, &Type)> {
    let h = t.deep_head();
    match h.kind() {
        TermKind::Var(v) => Some((*v, h.ty())),
        _ => None,
    }
}

enum Simplified {
    Clash,
    Done(Substitution, Vec<Constraint>),
}

/// Applies Triv, Decomp and Bind to a fixpoint. The returned constraints
/// are instantiated by the returned substitution and contain no
/// rigid-rigid pair.
fn simplify(mut subst: Substitution, mut todo: Vec<Constraint>) -> Simplified {
    let mut kept: Vec<Constraint> = Vec::new();
    while let Some((s, t)) = todo.pop() {
        let (s, t) = (subst.apply(&s), subst.apply(&t));
        if s == t {
            continue;
        }
        // Bind
        let bind = match (s.as_eta_var(), t.as_eta_var()) {
            (Some(x), _) if !t.contains_var(x) => Some((x, t.clone())),
            (_, Some(y)) if !s.contains_var(y) => Some((y, s.clone())),
            _ => None,
        };
        if let Some((x, b)) = bind {
            let ty = b.ty().clone();
            let single = Substitution::singleton(x, &ty, b).expect("same type");
            subst = subst.then(&single);
            // Earlier kept constraints may mention x.
            todo.append(&mut kept);
            continue;
        }
        let (ps, sb) = s.strip_abs();
        let (_, tb) = t.strip_abs();
        let (sh, th) = (sb.head(), tb.head());
        if sh.is_var() || th.is_var() {
            kept.push((s.clone(), t.clone()));
            continue;
        }
        // Decomp
        if sh != th {
            return Simplified::Clash;
        }
        for (a, b) in sb.args().iter().zip(tb.args()).rev() {
            todo.push((Term::abs_many(&ps, a.clone()), Term::abs_many(&ps, b.clone())));
        }
    }
    kept.reverse();
    let kept = kept
        .into_iter()
        .map(|(s, t)| (subst.apply(&s), subst.apply(&t)))
        .collect();
    Simplified::Done(subst, kept)
}

struct State {
    subst: Substitution,
    constraints: Vec<Constraint>,
    depth: u32,
}

/// Lazy, depth-first enumeration of pre-unifiers.
pub struct PreUnifier {
    stack: Vec<State>,
    budget: u32,
    node_cap: usize,
    nodes: usize,
    bound_reached: bool,
}

impl PreUnifier {
    pub fn new(constraints: Vec<Constraint>, budget: u32) -> Self {
        PreUnifier {
            stack: vec![State {
                subst: Substitution::new(),
                constraints,
                depth: 0,
            }],
            budget,
            node_cap: DEFAULT_NODE_CAP,
            nodes: 0,
            bound_reached: false,
        }
    }

    pub fn with_node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    /// Some branch was cut by the depth budget or the node cap, so an
    /// exhausted enumeration is not a proof of non-unifiability.
    pub fn depth_bound_reached(&self) -> bool {
        self.bound_reached
    }
}

impl Iterator for PreUnifier {
    type Item = UnifResult;

    fn next(&mut self) -> Option<UnifResult> {
        while let Some(st) = self.stack.pop() {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                self.bound_reached = true;
                self.stack.clear();
                return None;
            }
            let (subst, cs) = match simplify(st.subst, st.constraints) {
                Simplified::Clash => continue,
                Simplified::Done(s, cs) => (s, cs),
            };
            let Some(k) = cs.iter().position(|(s, t)| s.is_rigid() || t.is_rigid()) else {
                debug_assert!(verify(&subst, &cs));
                return Some(UnifResult {
                    subst,
                    residual: cs,
                });
            };
            if st.depth >= self.budget {
                self.bound_reached = true;
                continue;
            }
            let (s, t) = &cs[k];
            let (flex, rigid) = if s.is_flex() { (s, t) } else { (t, s) };
            let (x, xty) = flex_head(flex).expect("flex side");
            let rh = rigid.deep_head();
            let head = match rh.kind() {
                TermKind::Const(c) => Some((*c, rh.ty())),
                _ => None,
            };
            // Push in reverse so the imitation is explored first.
            for b in general_bindings(xty, head).into_iter().rev() {
                let mut subst = subst.clone();
                let single = Substitution::singleton(x, xty, b).expect("typed binding");
                subst = subst.then(&single);
                self.stack.push(State {
                    subst,
                    constraints: cs.clone(),
                    depth: st.depth + 1,
                });
            }
        }
        None
    }
}

/// Enumerates pre-unifiers of the constraints, searching at most `budget`
/// flex-rigid steps deep.
pub fn pre_unify(constraints: Vec<Constraint>, budget: u32) -> PreUnifier {
    PreUnifier::new(constraints, budget)
}

/// The sides of negative literals as constraints.
pub fn constraints_of(lits: &[Literal]) -> Vec<Constraint> {
    lits.iter()
        .filter(|l| !l.is_pos())
        .map(|l| (l.lhs.clone(), l.rhs.clone()))
        .collect()
}

/// Every constraint, instantiated and normalized, is either solved or
/// flex-flex.
pub fn verify(subst: &Substitution, cs: &[Constraint]) -> bool {
    cs.iter().all(|(s, t)| {
        let (s, t) = (subst.apply(s), subst.apply(t));
        s == t || (s.is_flex() && t.is_flex())
    })
}

#[cfg(test)]
mod tests;
