//! Oracles for pre-unification: soundness on random solvable sets and
//! completeness against brute-force enumeration of small bindings.

use std::collections::HashMap;

use ep_prover::unify::{pre_unify, Constraint};
use ep_prover::{Substitution, Symbol, Term, Type, VarId};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

fn i() -> Type {
    Type::i()
}

fn ii() -> Type {
    Type::fun(i(), i())
}

fn iii() -> Type {
    Type::curried(&[i(), i()], i())
}

fn konst(n: u32, ty: Type) -> Term {
    Term::constant(Symbol(5000 + n), ty)
}

fn app(h: &Term, args: Vec<Term>) -> Term {
    Term::apply(h.clone(), args).normalize()
}

/// `λv1 … vn. body` for placeholder variables `vs`.
fn lambda(vs: &[(VarId, Type)], body: Term) -> Term {
    vs.iter()
        .rev()
        .fold(body, |b, (v, ty)| b.abstract_var(*v, ty))
        .normalize()
}

/// Substitutes by beta reduction: `(λx. t) b`, repeated until no bound
/// variable of the substitution is left.
fn substitute_by_beta(t: &Term, s: &Substitution) -> Term {
    let mut t = t.clone();
    for _ in 0..16 {
        let mut changed = false;
        for (v, b) in s.iter() {
            if let Some((_, ty)) = t.free_vars().into_iter().find(|(w, _)| *w == v) {
                t = app(&t.abstract_var(v, &ty), vec![b.clone()]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    t
}

/// Equal after decomposing common rigid heads, except for pairs whose
/// heads are both free variables.
fn solved_up_to_flex_flex(s: &Term, t: &Term) -> bool {
    if s == t {
        return true;
    }
    let (bs, sb) = s.strip_abs();
    let (bt, tb) = t.strip_abs();
    if bs != bt {
        return false;
    }
    if sb.head().is_var() && tb.head().is_var() {
        return true;
    }
    sb.head() == tb.head()
        && sb.args().len() == tb.args().len()
        && sb.args().iter().zip(tb.args()).all(|(a, b)| {
            solved_up_to_flex_flex(&Term::abs_many(&bs, a.clone()), &Term::abs_many(&bs, b.clone()))
        })
}

// Random solvable constraint sets.

struct Sig {
    consts: Vec<Term>,
}

impl Sig {
    fn random(rng: &mut StdRng) -> Sig {
        let pool = [
            konst(0, i()),
            konst(1, i()),
            konst(2, ii()),
            konst(3, iii()),
            konst(4, Type::fun(ii(), i())),
            konst(5, ii()),
        ];
        let mut consts = vec![pool[0].clone()];
        let mut rest: Vec<Term> = pool[1..].to_vec();
        rest.shuffle(rng);
        consts.extend(rest.into_iter().take(rng.gen_range(1..=4)));
        Sig { consts }
    }
}

/// A random term of type `$i` or `$i > $i` with depth at most `depth`,
/// whose heads are drawn from `heads`.
fn random_term(rng: &mut StdRng, heads: &[Term], ty: &Type, depth: u32) -> Term {
    if ty == &ii() {
        if rng.gen_ratio(1, 3) {
            if let Some(h) = heads.iter().filter(|h| h.ty() == ty).collect::<Vec<_>>().choose(rng) {
                return (*h).clone();
            }
        }
        let y = Term::fresh_var(i());
        let yv = y.as_var().unwrap();
        let mut inner = heads.to_vec();
        inner.push(y);
        let body = random_term(rng, &inner, &i(), depth.saturating_sub(1).max(1));
        return lambda(&[(yv, i())], body);
    }
    let leaves: Vec<&Term> = heads.iter().filter(|h| h.ty() == ty).collect();
    let apps: Vec<&Term> = heads
        .iter()
        .filter(|h| h.ty().is_fun() && &h.ty().target() == ty)
        .collect();
    if depth <= 1 || apps.is_empty() || (rng.gen_ratio(1, 3) && !leaves.is_empty()) {
        return (*leaves.choose(rng).expect("a leaf of type $i")).clone();
    }
    let h = *apps.choose(rng).unwrap();
    let (params, _) = h.ty().split();
    let args = params.iter().map(|p| random_term(rng, heads, p, depth - 1)).collect();
    app(h, args)
}

/// Builds a set solvable by construction: random terms `u` over pattern
/// variables and the pairs `(u, θu)` for a random `θ` whose range avoids
/// its domain.
fn solvable_set(rng: &mut StdRng) -> (Vec<Constraint>, Substitution) {
    let sig = Sig::random(rng);
    let vars = [
        Term::fresh_var(i()),
        Term::fresh_var(i()),
        Term::fresh_var(ii()).normalize(),
        Term::fresh_var(iii()).normalize(),
    ];
    let mut heads = sig.consts.clone();
    heads.extend(vars.iter().take(rng.gen_range(1..=4)).cloned());
    let range_vars = [Term::fresh_var(i()), Term::fresh_var(ii()).normalize()];
    let mut range_heads = sig.consts.clone();
    range_heads.extend(range_vars.iter().cloned());

    let mut theta = Substitution::new();
    for v in &vars {
        let ty = v.ty().clone();
        let x = v.deep_head().as_var().unwrap();
        let b = match ty.arity() {
            0 => random_term(rng, &range_heads, &ty, 3),
            _ => {
                let ys: Vec<(VarId, Type)> = ty.split().0.iter().map(|t| (VarId::fresh(), t.clone())).collect();
                let mut hs = range_heads.clone();
                hs.extend(ys.iter().map(|(y, t)| Term::var(*y, t.clone())));
                lambda(&ys, random_term(rng, &hs, &i(), 3))
            }
        };
        theta.insert(x, &ty, b).unwrap();
    }
    let n = rng.gen_range(1..=3);
    let cs = (0..n)
        .map(|_| {
            let u = random_term(rng, &heads, &i(), 4);
            let tu = theta.apply(&u);
            if rng.gen_bool(0.5) {
                (u, tu)
            } else {
                (tu, u)
            }
        })
        .collect();
    (cs, theta)
}

/// Pre-unifiers returned for `count` random solvable sets that fail the
/// substitute-and-normalize check, with the number of sets for which at
/// least one unifier was found.
pub fn soundness(rng: &mut StdRng, count: usize) -> (Vec<String>, usize) {
    let mut failures = Vec::new();
    let mut solved = 0;
    for k in 0..count {
        let (cs, theta) = solvable_set(rng);
        for (s, t) in &cs {
            assert_eq!(substitute_by_beta(s, &theta), substitute_by_beta(t, &theta), "generator");
        }
        let mut any = false;
        for u in pre_unify(cs.clone(), 8).take(8) {
            any = true;
            let ok = cs
                .iter()
                .all(|(s, t)| solved_up_to_flex_flex(&substitute_by_beta(s, &u.subst), &substitute_by_beta(t, &u.subst)));
            if !ok {
                failures.push(format!("set {k}: {cs:?} with {:?}", u.subst));
            }
        }
        solved += usize::from(any);
    }
    (failures, solved)
}

// Brute-force completeness on flex-rigid problems.

/// All closed terms of type `$i` of depth at most `depth` with heads from
/// `heads` (each of type `$i`, `$i > $i` or `$i > $i > $i`).
fn enumerate(heads: &[Term], depth: u32) -> Vec<Term> {
    let mut levels: Vec<Term> = Vec::new();
    for d in 1..=depth {
        let prev = levels.clone();
        let mut next: Vec<Term> = heads.iter().filter(|h| h.ty() == &i()).cloned().collect();
        if d > 1 {
            for h in heads {
                match h.ty().arity() {
                    1 => next.extend(prev.iter().map(|a| app(h, vec![a.clone()]))),
                    2 => {
                        for a in &prev {
                            next.extend(prev.iter().map(|b| app(h, vec![a.clone(), b.clone()])));
                        }
                    }
                    _ => {}
                }
            }
        }
        levels = next;
    }
    levels.sort_by(|a, b| a.cmp_structural(b));
    levels.dedup();
    levels
}

struct FlexRigid {
    var: Term,
    args: Vec<Term>,
    rhs: Term,
    /// Heads available to brute force, besides the parameters.
    sig: Vec<Term>,
}

fn flex_rigid(rng: &mut StdRng) -> FlexRigid {
    let (a, b, f, g, h) = (konst(0, i()), konst(1, i()), konst(2, ii()), konst(3, iii()), konst(5, ii()));
    loop {
        let (xty, args, sig) = match rng.gen_range(0..3) {
            0 => {
                let sig = vec![a.clone(), f.clone(), g.clone()];
                let arg = random_term(rng, &sig, &i(), 2);
                (ii(), vec![arg], sig)
            }
            1 => {
                let sig = vec![a.clone(), b.clone(), f.clone(), h.clone()];
                let args = vec![random_term(rng, &sig, &i(), 2), random_term(rng, &sig, &i(), 2)];
                (iii(), args, sig)
            }
            _ => {
                let sig = vec![a.clone(), f.clone(), g.clone()];
                let z = Term::fresh_var(i());
                let zv = z.as_var().unwrap();
                let mut hs = sig.clone();
                hs.push(z);
                let arg = lambda(&[(zv, i())], random_term(rng, &hs, &i(), 2));
                (Type::fun(ii(), i()), vec![arg], sig)
            }
        };
        // The right-hand side mixes signature symbols and arguments.
        let mut leaves = sig.clone();
        leaves.extend(args.iter().filter(|t| t.ty() == &i()).cloned());
        let rhs = match args.first() {
            Some(arg) if arg.ty() == &ii() && rng.gen_bool(0.5) => {
                app(arg, vec![random_term(rng, &leaves, &i(), 2)])
            }
            _ => random_term(rng, &leaves, &i(), 3),
        };
        if rhs.head().as_const().is_none() || heads(&rhs) > 8 {
            continue;
        }
        let var = Term::fresh_var(xty).normalize();
        return FlexRigid { var, args, rhs, sig };
    }
}

/// All closed terms of type `ty` whose body has depth at most `depth`.
fn closed_terms(ty: &Type, sig: &[Term], depth: u32) -> Vec<Term> {
    let params: Vec<(VarId, Type)> = ty.split().0.into_iter().map(|t| (VarId::fresh(), t)).collect();
    let mut heads = sig.to_vec();
    heads.extend(params.iter().map(|(v, t)| Term::var(*v, t.clone()).normalize()));
    enumerate(&heads, depth)
        .into_iter()
        .map(|body| lambda(&params, body))
        .collect()
}

/// Closed bindings of the variable, of body depth at most `depth`, that
/// solve the problem.
fn brute_force(p: &FlexRigid, depth: u32, max_heads: usize) -> Vec<Term> {
    closed_terms(p.var.ty(), &p.sig, depth)
        .into_iter()
        .filter(|b| heads(b.strip_abs().1) <= max_heads)
        .filter(|b| app(b, p.args.clone()) == p.rhs)
        .collect()
}

/// Number of head occurrences, i.e. of imitation and projection steps
/// needed to build the term.
fn heads(t: &Term) -> usize {
    1 + t.args().iter().map(|a| heads(a.strip_abs().1)).sum::<usize>()
}

/// Is the closed term `b` an instance of `t`? Rigid heads are decomposed
/// in parallel; each free-variable occurrence is matched by brute force
/// over closed bindings of body depth at most `depth`, and the candidate
/// sets of repeated variables are intersected.
fn is_instance(t: &Term, b: &Term, sig: &[Term], depth: u32) -> bool {
    let mut candidates: HashMap<VarId, Vec<Term>> = HashMap::new();
    match_term(t, b, &[], sig, depth, &mut candidates) && candidates.values().all(|c| !c.is_empty())
}

fn match_term(
    t: &Term,
    b: &Term,
    binders: &[Type],
    sig: &[Term],
    depth: u32,
    cands: &mut HashMap<VarId, Vec<Term>>,
) -> bool {
    if t == b {
        return true;
    }
    let (bt, tb) = t.strip_abs();
    let (bb, bbody) = b.strip_abs();
    if bt != bb {
        return false;
    }
    let mut scope = binders.to_vec();
    scope.extend(bt);
    if let Some(h) = tb.head().as_var() {
        if tb.args().iter().any(|a| a.has_vars()) {
            return false;
        }
        let ty = tb.head().ty().clone();
        let pattern = Term::abs_many(&scope, tb.clone());
        let target = Term::abs_many(&scope, bbody.clone());
        let fits = |c: &Term| substitute_by_beta(&pattern, &Substitution::singleton(h, &ty, c.clone()).unwrap()) == target;
        let entry = cands.entry(h).or_insert_with(|| closed_terms(&ty, sig, depth));
        entry.retain(fits);
        return !entry.is_empty();
    }
    tb.head() == bbody.head()
        && tb.args().len() == bbody.args().len()
        && tb
            .args()
            .iter()
            .zip(bbody.args())
            .all(|(x, y)| match_term(x, y, &scope, sig, depth, cands))
}

/// Brute-force solutions of random flex-rigid problems not found among
/// the pre-unifiers, with the total number of brute-force solutions.
/// Solutions are closed bindings of depth at most 4 built from at most 8
/// heads, the most a search of budget 8 can construct.
pub fn completeness(rng: &mut StdRng, count: usize) -> (Vec<String>, usize) {
    let mut misses = Vec::new();
    let mut total = 0;
    for k in 0..count {
        let p = flex_rigid(rng);
        let lhs = app(&p.var, p.args.clone());
        let found: Vec<Term> = pre_unify(vec![(lhs, p.rhs.clone())], 8)
            .with_node_cap(1_000_000)
            .map(|u| u.subst.apply(&p.var))
            .collect();
        for b in brute_force(&p, 4, 8) {
            total += 1;
            if !found.iter().any(|t| is_instance(t, &b, &p.sig, 4)) {
                misses.push(format!("problem {k}: {:?} {:?} = {:?}; missing {b:?}", p.var, p.args, p.rhs));
            }
        }
    }
    (misses, total)
}
