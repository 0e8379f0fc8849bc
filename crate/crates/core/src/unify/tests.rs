use super::*;
use crate::formula;

fn i() -> Type {
    Type::i()
}

fn ii() -> Type {
    Type::fun(i(), i())
}

fn c(n: u32, ty: Type) -> Term {
    Term::constant(Symbol(700 + n), ty)
}

fn a() -> Term {
    c(0, i())
}

fn g(t: Term) -> Term {
    Term::apply(c(1, ii()), vec![t])
}

fn var(ty: Type) -> (VarId, Term) {
    let t = Term::fresh_var(ty);
    (t.as_var().unwrap(), t.eta_long())
}

fn app(h: &Term, args: Vec<Term>) -> Term {
    Term::apply(h.clone(), args).normalize()
}

#[test]
fn imitation_of_negation() {
    let not_ty = Type::fun(Type::o(), Type::o());
    let goal = Type::fun(i(), Type::o());
    let bs = general_bindings(&goal, Some((Symbol::NOT, &not_ty)));
    assert_eq!(bs.len(), 1);
    let (binders, body) = bs[0].strip_abs();
    assert_eq!(binders, vec![i()]);
    assert_eq!(body.head_symbol(), Some(Symbol::NOT));
    let inner = &body.args()[0];
    assert!(inner.head().is_var());
    assert_eq!(inner.args()[0].eta_bound_index(), Some(0));
}

#[test]
fn projection_only_without_constant() {
    let bs = general_bindings(&ii(), None);
    assert_eq!(bs.len(), 1);
    let (binders, body) = bs[0].strip_abs();
    assert_eq!(binders.len(), 1);
    assert_eq!(body.eta_bound_index(), Some(0));
}

#[test]
fn constant_goal_has_only_imitation() {
    let bs = general_bindings(&Type::o(), Some((Symbol::TRUE, &Type::o())));
    assert_eq!(bs, vec![formula::top()]);
}

#[test]
fn projections_respect_target_type() {
    // (ι→o) → ι → o: only the first argument has target o.
    let goal = Type::curried(&[Type::fun(i(), Type::o()), i()], Type::o());
    let bs = general_bindings(&goal, None);
    assert_eq!(bs.len(), 1);
    assert!(matches!(bs[0].strip_abs().1.head().kind(), TermKind::Bound(1)));
}

#[test]
fn trivial_constraint() {
    let mut u = pre_unify(vec![(a(), a())], 8);
    let r = u.next().unwrap();
    assert!(r.subst.is_empty() && r.residual.is_empty());
    assert!(u.next().is_none());
}

#[test]
fn rigid_clash_is_definitive() {
    let mut u = pre_unify(vec![(a(), g(a()))], 8);
    assert!(u.next().is_none());
    assert!(!u.depth_bound_reached());
}

#[test]
fn flex_rigid_finds_both_unifiers() {
    let (f, ft) = var(ii());
    let mut got: Vec<Term> = pre_unify(vec![(app(&ft, vec![a()]), g(a()))], 8)
        .map(|r| {
            assert!(verify(&r.subst, &[(app(&ft, vec![a()]), g(a()))]));
            r.subst.get(f).unwrap().clone()
        })
        .collect();
    got.sort_by(|x, y| x.cmp_structural(y));
    got.dedup();
    let const_g = Term::abs(i(), g(a()));
    let ident_g = Term::abs(i(), g(Term::bound(0, i())));
    assert_eq!(got.len(), 2);
    assert!(got.contains(&const_g) && got.contains(&ident_g));
}

#[test]
fn depth_bound_is_reported() {
    // F a = g (F a) has no solution, but search never clashes quickly.
    let (_, ft) = var(ii());
    let fa = app(&ft, vec![a()]);
    let mut u = pre_unify(vec![(fa.clone(), g(fa))], 3);
    assert!(u.next().is_none());
    assert!(u.depth_bound_reached());
}

#[test]
fn flex_flex_is_residual() {
    let (_, x) = var(ii());
    let (_, y) = var(ii());
    let s = app(&x, vec![a()]);
    let t = app(&y, vec![a()]);
    let r = pre_unify(vec![(s, t)], 8).next().unwrap();
    assert_eq!(r.residual.len(), 1);
}

#[test]
fn pattern_bind_and_occurs_check() {
    let (x, xt) = var(i());
    match pattern_unify(&[(xt.clone(), g(a()))]) {
        PatternResult::Unifier(s) => assert_eq!(s.get(x), Some(&g(a()))),
        other => panic!("{other:?}"),
    }
    assert!(matches!(pattern_unify(&[(xt.clone(), g(xt))]), PatternResult::Fail));
}

#[test]
fn pattern_not_pattern() {
    let (_, ft) = var(ii());
    assert!(matches!(
        pattern_unify(&[(app(&ft, vec![a()]), a())]),
        PatternResult::NotPattern
    ));
}

#[test]
fn pattern_flex_rigid_under_binder() {
    // λz. F z = λz. g z  gives F = λz. g z.
    let (f, ft) = var(ii());
    let s = Term::abs(i(), app(&ft, vec![Term::bound(0, i())]));
    let t = Term::abs(i(), g(Term::bound(0, i())));
    match pattern_unify(&[(s.clone(), t.clone())]) {
        PatternResult::Unifier(u) => {
            assert_eq!(u.get(f), Some(&t));
            assert!(verify(&u, &[(s, t)]));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn pattern_prunes_and_fails_on_escape() {
    // λz. F z = λz. G: prune F's argument.
    let (_, ft) = var(ii());
    let (_, gt) = var(i());
    let s = Term::abs(i(), app(&ft, vec![Term::bound(0, i())]));
    let t = Term::abs(i(), gt);
    let PatternResult::Unifier(u) = pattern_unify(&[(s.clone(), t.clone())]) else {
        panic!()
    };
    assert!(verify(&u, &[(s, t)]));
    // λz. G = λz. g z: z escapes.
    let (_, gt) = var(i());
    let s = Term::abs(i(), gt);
    let t = Term::abs(i(), g(Term::bound(0, i())));
    assert!(matches!(pattern_unify(&[(s, t)]), PatternResult::Fail));
}

#[test]
fn pattern_flex_flex() {
    let f2 = Type::curried(&[i(), i()], i());
    let (_, ft) = var(f2.clone());
    let (_, gt) = var(f2);
    let b = |k| Term::bound(k, i());
    // λxy. F x y = λxy. G y x
    let s = Term::abs_many(&[i(), i()], app(&ft, vec![b(1), b(0)]));
    let t = Term::abs_many(&[i(), i()], app(&gt, vec![b(0), b(1)]));
    let PatternResult::Unifier(u) = pattern_unify(&[(s.clone(), t.clone())]) else {
        panic!()
    };
    assert!(verify(&u, &[(s.clone(), t.clone())]));
    assert_eq!(u.apply(&s), u.apply(&t));
    // λxy. F x y = λxy. F y x
    let t2 = Term::abs_many(&[i(), i()], app(&ft, vec![b(0), b(1)]));
    let PatternResult::Unifier(u) = pattern_unify(&[(s.clone(), t2.clone())]) else {
        panic!()
    };
    assert_eq!(u.apply(&s), u.apply(&t2));
}

#[test]
fn pattern_agrees_with_pre_unify() {
    let (x, xt) = var(i());
    let (y, yt) = var(i());
    let f2 = Type::curried(&[i(), i()], i());
    let h = c(2, f2);
    let s = app(&h, vec![xt.clone(), g(yt.clone())]);
    let t = app(&h, vec![g(a()), g(xt)]);
    let PatternResult::Unifier(p) = pattern_unify(&[(s.clone(), t.clone())]) else {
        panic!()
    };
    let q = pre_unify(vec![(s, t)], 8).next().unwrap().subst;
    for v in [x, y] {
        assert_eq!(p.get(v), q.get(v));
    }
}
