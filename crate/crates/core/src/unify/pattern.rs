//! Unification in the pattern fragment: every free variable is applied to
//! distinct bound variables. Unifiers are most general and failure is
//! definitive.

use super::Constraint;
use crate::term::{Substitution, Term, TermKind, VarId};
use crate::types::Type;

#[derive(Clone, Debug)]
pub enum PatternResult {
    Unifier(Substitution),
    Fail,
    /// Some flexible subterm is not a pattern; use pre-unification.
    NotPattern,
}

enum Error {
    Fail,
    NotPattern,
}

/// Bound indices of the arguments of a flexible term, if they are distinct
/// bound variables (up to η).
fn pattern_args(args: &[Term]) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(args.len());
    for a in args {
        let i = a.eta_bound_index()?;
        if out.contains(&i) {
            return None;
        }
        out.push(i);
    }
    Some(out)
}

/// `λ params. H (x_p for p in keep)` for a fresh `H` of result type `target`.
fn restricted_binding(params: &[Type], keep: &[usize], target: &Type) -> Term {
    let n = params.len();
    let kept_tys: Vec<Type> = keep.iter().map(|p| params[*p].clone()).collect();
    let h = Term::fresh_var(Type::curried(&kept_tys, target.clone()));
    let args = keep
        .iter()
        .map(|p| Term::bound((n - 1 - p) as u32, params[*p].clone()))
        .collect();
    Term::abs_many(params, Term::apply(h, args)).normalize()
}

struct Solver {
    subst: Substitution,
}

impl Solver {
    fn bind(&mut self, v: VarId, ty: &Type, t: Term) {
        let t = self.subst.apply(&t);
        let single = Substitution::singleton(v, ty, t).expect("typed binding");
        self.subst = self.subst.then(&single);
    }

    /// Copies `t` (living under `d` extra binders inside a context whose
    /// bound variables are mapped by `map`) into the body of the binding
    /// for `x`. `map[j]` is the new index (relative to the binding's own
    /// prefix) of the context's bound variable `j`.
    fn copy(&mut self, t: &Term, d: u32, map: &dyn Fn(u32) -> Option<u32>, x: VarId) -> Result<Term, Error> {
        if let TermKind::Abs(ty, b) = t.kind() {
            return Ok(Term::abs(ty.clone(), self.copy(b, d + 1, map, x)?));
        }
        let head = t.head();
        let args = t.args();
        let remap = |i: u32| -> Option<u32> {
            if i < d {
                Some(i)
            } else {
                map(i - d).map(|j| j + d)
            }
        };
        match head.kind() {
            TermKind::Var(f) => {
                if *f == x {
                    return Err(Error::Fail);
                }
                let idx = pattern_args(args).ok_or(Error::NotPattern)?;
                if idx.iter().all(|i| remap(*i).is_some()) {
                    let new_args = idx
                        .iter()
                        .zip(args)
                        .map(|(i, a)| Term::bound(remap(*i).expect("checked"), a.ty().clone()))
                        .collect();
                    return Ok(Term::apply(head.clone(), new_args));
                }
                // Prune the arguments that cannot be expressed.
                let (params, target) = head.ty().split();
                let keep: Vec<usize> = (0..idx.len()).filter(|p| remap(idx[*p]).is_some()).collect();
                let b = restricted_binding(&params, &keep, &target);
                self.bind(*f, head.ty(), b);
                let pruned = self.subst.apply(t);
                self.copy(&pruned, d, map, x)
            }
            TermKind::Bound(i) => {
                let j = remap(*i).ok_or(Error::Fail)?;
                let new_head = Term::bound(j, head.ty().clone());
                let new_args = args
                    .iter()
                    .map(|a| self.copy(a, d, map, x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::apply(new_head, new_args))
            }
            _ => {
                let new_args = args
                    .iter()
                    .map(|a| self.copy(a, d, map, x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::apply(head.clone(), new_args))
            }
        }
    }

    fn solve(&mut self, mut todo: Vec<Constraint>) -> Result<(), Error> {
        while let Some((s, t)) = todo.pop() {
            let (s, t) = (self.subst.apply(&s), self.subst.apply(&t));
            if s == t {
                continue;
            }
            let (prefix, sb) = s.strip_abs();
            let (_, tb) = t.strip_abs();
            match (sb.head().kind(), tb.head().kind()) {
                (TermKind::Var(_), TermKind::Var(_)) => self.flex_flex(sb, tb)?,
                (TermKind::Var(_), _) => self.flex_rigid(sb, tb)?,
                (_, TermKind::Var(_)) => self.flex_rigid(tb, sb)?,
                _ => {
                    if sb.head() != tb.head() {
                        return Err(Error::Fail);
                    }
                    for (a, b) in sb.args().iter().zip(tb.args()).rev() {
                        todo.push((Term::abs_many(&prefix, a.clone()), Term::abs_many(&prefix, b.clone())));
                    }
                }
            }
        }
        Ok(())
    }

    /// `λprefix. X ȳ = λprefix. t` with `t` rigid.
    fn flex_rigid(&mut self, flex: &Term, rigid: &Term) -> Result<(), Error> {
        let head = flex.head();
        let x = head.as_var().expect("flex");
        let ys = pattern_args(flex.args()).ok_or(Error::NotPattern)?;
        let n = ys.len() as u32;
        // Context bound variable j becomes the binder for the argument in
        // which it occurs.
        let map = |j: u32| ys.iter().position(|y| *y == j).map(|p| n - 1 - p as u32);
        let body = self.copy(rigid, 0, &map, x)?;
        let params: Vec<Type> = flex.args().iter().map(|a| a.ty().clone()).collect();
        let b = Term::abs_many(&params, body).normalize();
        self.bind(x, head.ty(), b);
        Ok(())
    }

    fn flex_flex(&mut self, s: &Term, t: &Term) -> Result<(), Error> {
        let (x, xty) = (s.head().as_var().expect("flex"), s.head().ty().clone());
        let (y, yty) = (t.head().as_var().expect("flex"), t.head().ty().clone());
        let xs = pattern_args(s.args()).ok_or(Error::NotPattern)?;
        let ys = pattern_args(t.args()).ok_or(Error::NotPattern)?;
        let (xparams, target) = xty.split();
        let (yparams, _) = yty.split();
        if x == y {
            let keep: Vec<usize> = (0..xs.len()).filter(|p| xs[*p] == ys[*p]).collect();
            let b = restricted_binding(&xparams, &keep, &target);
            self.bind(x, &xty, b);
            return Ok(());
        }
        let common: Vec<u32> = xs.iter().copied().filter(|i| ys.contains(i)).collect();
        let xkeep: Vec<usize> = common
            .iter()
            .map(|i| xs.iter().position(|j| j == i).expect("common"))
            .collect();
        let ykeep: Vec<usize> = common
            .iter()
            .map(|i| ys.iter().position(|j| j == i).expect("common"))
            .collect();
        let kept_tys: Vec<Type> = xkeep.iter().map(|p| xparams[*p].clone()).collect();
        let h = Term::fresh_var(Type::curried(&kept_tys, target.clone()));
        let mk = |params: &[Type], keep: &[usize]| {
            let n = params.len();
            let args = keep
                .iter()
                .map(|p| Term::bound((n - 1 - p) as u32, params[*p].clone()))
                .collect();
            Term::abs_many(params, Term::apply(h.clone(), args)).normalize()
        };
        let bx = mk(&xparams, &xkeep);
        let by = mk(&yparams, &ykeep);
        self.bind(x, &xty, bx);
        self.bind(y, &yty, by);
        Ok(())
    }
}

/// Most general unifier of constraints in the pattern fragment.
pub fn pattern_unify(constraints: &[Constraint]) -> PatternResult {
    let mut solver = Solver {
        subst: Substitution::new(),
    };
    match solver.solve(constraints.to_vec()) {
        Ok(()) => PatternResult::Unifier(solver.subst),
        Err(Error::Fail) => PatternResult::Fail,
        Err(Error::NotPattern) => PatternResult::NotPattern,
    }
}
