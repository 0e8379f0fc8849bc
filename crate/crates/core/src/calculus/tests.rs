use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::cnf::clausify;
use crate::tptp::{parse_problem, ParseOptions};

fn o() -> Type {
    Type::o()
}

fn atom(n: u32) -> Term {
    Term::constant(Symbol(900 + n), o())
}

fn prop(t: Term, pos: bool) -> Literal {
    Literal::prop(t, if pos { Polarity::Pos } else { Polarity::Neg })
}

fn solve(c: &Conclusion) -> Vec<Clause> {
    if c.constraints.is_empty() {
        return vec![c.clause.clone()];
    }
    unify_constraints(&c.clause, &c.constraints, 8, 4)
        .results
        .into_iter()
        .map(|u| u.clause)
        .collect()
}

fn simplified(c: Clause) -> Option<Clause> {
    match simplify(&c) {
        Simplified::Tautology => None,
        Simplified::Unchanged => Some(c),
        Simplified::Changed(d, _) => Some(d),
    }
}

fn negated_conjecture(src: &str) -> (Signature, Vec<Clause>) {
    let p = parse_problem(src, "t.p", &ParseOptions::default()).unwrap();
    let mut sig = p.signature.clone();
    let f = formula::not(p.conjecture().unwrap().formula.clone());
    let cs = clausify(&Clause::unit(Literal::prop(f, Polarity::Pos)), &mut sig, 16);
    (sig, cs)
}

/// The surjective Cantor refutation along the lines of the standard
/// derivation: func_ext, bool_ext, factoring, unification, para.
#[test]
fn surjective_cantor_derivation() {
    let (mut sig, cs) = negated_conjecture(
        "thf(c, conjecture, ~ ? [F: $i > $i > $o] : ! [Y: $i > $o] : ? [X: $i] : ((F @ X) = Y)).",
    );
    let c2 = func_ext(&cs[0], &mut sig).unwrap();
    assert!(c2.literals[0].ty().is_o());
    let bx = bool_ext(&c2);
    assert_eq!(bx.len(), 2);
    let c7s: Vec<Clause> = eqfac(&bx[1].clause).iter().flat_map(solve).collect();
    let c8s: Vec<Clause> = eqfac(&bx[0].clause).iter().flat_map(solve).collect();
    let c7 = c7s.iter().find(|c| c.is_unit() && c.is_ground()).expect("C7");
    let c8 = c8s.iter().find(|c| c.is_unit() && c.is_ground()).expect("C8");
    assert!(c7.literals[0].is_pos() && !c8.literals[0].is_pos());
    let empty = para(c7, c8)
        .iter()
        .flat_map(solve)
        .filter_map(simplified)
        .any(|c| c.is_empty());
    assert!(empty);
    // The diagonal set appears in the factored clause.
    assert!(c7.literals[0].lhs.contains_symbol(Symbol::NOT));
}

#[test]
fn prim_subst_negation_approximates() {
    let p = Term::fresh_var(o());
    let c = Clause::unit(Literal::prop(p, Polarity::Pos));
    let out = prim_subst(&c, &PsHeads::new(&[Type::i()]));
    assert_eq!(out.len(), 4);
    let neg = &out[0].clause.literals[0];
    assert!(matches!(formula::view(&neg.lhs), View::Not(_)));
    let mut sig = Signature::new();
    let cnf = clausify(&out[0].clause, &mut sig, 16);
    assert_eq!(cnf.len(), 1);
    assert!(!cnf[0].literals[0].is_pos());
}

#[test]
fn prim_subst_ignores_rigid_literals() {
    let c = Clause::unit(prop(atom(0), true));
    assert!(prim_subst(&c, &PsHeads::new(&[])).is_empty());
}

#[test]
fn negative_func_ext_uses_skolem_constant() {
    let ii = Type::fun(Type::i(), Type::i());
    let f = Term::constant(Symbol(950), ii.clone()).eta_long();
    let g = Term::constant(Symbol(951), ii).eta_long();
    let mut sig = Signature::new();
    let c = func_ext(&Clause::unit(Literal::eq(f, g, Polarity::Neg)), &mut sig).unwrap();
    let l = &c.literals[0];
    assert!(l.ty() == &Type::i() && !l.is_pos());
    let sk = l.lhs.args()[0].as_const().unwrap();
    assert_eq!(sig.kind(sk), SymbolKind::Skolem);
    assert_eq!(l.rhs.args()[0].as_const(), Some(sk));
}

#[test]
fn injective_cantor_gets_left_inverse() {
    let (mut sig, cs) = negated_conjecture(
        "thf(c, conjecture, ~ ? [F: ($i > $o) > $i] : ! [X: $i > $o, Y: $i > $o] : \
         (((F @ X) = (F @ Y)) => (X = Y))).",
    );
    assert_eq!(cs.len(), 1);
    let (f, c2) = inj(&cs[0], &mut sig).expect("injectivity clause");
    assert_eq!(sig.name(f), "sk1");
    let l = &c2.literals[0];
    let inv = l.lhs.strip_abs().1.head_symbol().unwrap();
    assert_eq!(sig.kind(inv), SymbolKind::Inverse);
    assert_eq!(sig.type_of(inv).unwrap().to_string(), "$i > $i > $o");
    assert!(inj(&Clause::unit(prop(atom(0), true)), &mut sig).is_none());
}

#[test]
fn finite_instantiation() {
    let p = Term::fresh_var(o());
    let c = Clause::unit(Literal::prop(p, Polarity::Pos));
    assert_eq!(instantiate(&c, &[o()]).len(), 2);
    let oo = Type::fun(o(), o());
    let x = Term::fresh_var(oo.clone()).eta_long();
    let c = Clause::unit(Literal::prop(Term::apply(x, vec![atom(0)]).normalize(), Polarity::Pos));
    assert_eq!(instantiate(&c, std::slice::from_ref(&oo)).len(), 4);
    let y = Term::fresh_var(Type::i());
    let c = Clause::unit(Literal::eq(y.clone(), y, Polarity::Pos));
    assert!(instantiate(&c, &[o(), oo]).is_empty());
    assert!(finite_domain(&Type::i()).is_none());
}

#[test]
fn destructive_equality_resolution() {
    let x = Term::fresh_var(Type::i());
    let a = Term::constant(Symbol(960), Type::i());
    let p = Term::constant(Symbol(961), Type::fun(Type::i(), o()));
    let c = Clause::new(vec![
        Literal::eq(x.clone(), a.clone(), Polarity::Neg),
        Literal::prop(Term::apply(p.clone(), vec![x]), Polarity::Pos),
    ]);
    let Simplified::Changed(d, b) = simplify(&c) else {
        panic!()
    };
    assert_eq!(d, Clause::unit(Literal::prop(Term::apply(p, vec![a]), Polarity::Pos)));
    assert_eq!(b.len(), 1);
}

#[test]
fn duplicates_and_tautologies() {
    let c = Clause::new(vec![prop(atom(0), true), prop(atom(0), true)]);
    let Simplified::Changed(d, _) = simplify(&c) else {
        panic!()
    };
    assert_eq!(d.len(), 1);
    let t = Clause::new(vec![prop(atom(0), true), prop(atom(0), false)]);
    assert!(matches!(simplify(&t), Simplified::Tautology));
}

#[test]
fn unit_cutting_and_rewriting() {
    let c = Clause::new(vec![prop(atom(0), false), prop(atom(1), true)]);
    let unit = Clause::unit(prop(atom(0), true));
    assert_eq!(unit_cut(&c, &unit), Some(Clause::unit(prop(atom(1), true))));

    let i = Type::i();
    let a = Term::constant(Symbol(970), i.clone());
    let f = Term::constant(Symbol(971), Type::fun(i.clone(), i.clone()));
    let p = Term::constant(Symbol(972), Type::fun(i.clone(), o()));
    let x = Term::fresh_var(i);
    let fx = Term::apply(f.clone(), vec![x.clone()]);
    let rule = rewrite_rule(&Clause::unit(Literal::eq(fx, x, Polarity::Pos))).unwrap();
    let c = Clause::unit(prop(Term::apply(p.clone(), vec![Term::apply(f, vec![a.clone()])]), true));
    let d = rewrite_step(&c, &rule).unwrap();
    assert_eq!(d, Clause::unit(prop(Term::apply(p, vec![a]), true)));
}

#[test]
fn para_simulates_resolution() {
    let c = Clause::new(vec![prop(atom(0), true), prop(atom(1), true)]);
    let d = Clause::new(vec![prop(atom(0), false), prop(atom(2), true)]);
    let out: Vec<Clause> = para(&c, &d).iter().flat_map(solve).filter_map(simplified).collect();
    let expected = Clause::new(vec![prop(atom(2), true), prop(atom(1), true)]);
    assert!(out.iter().any(|r| crate::subsumption::is_variant(r, &expected)));
}

// Ground soundness: every valuation satisfying the premises satisfies the
// conclusion.

fn eval_term(t: &Term, val: &HashMap<Term, bool>) -> bool {
    match formula::view(t) {
        View::True => true,
        View::False => false,
        View::Not(a) => !eval_term(&a, val),
        View::Bin(Symbol::OR, a, b) => eval_term(&a, val) || eval_term(&b, val),
        View::Bin(Symbol::AND, a, b) => eval_term(&a, val) && eval_term(&b, val),
        View::Eq(a, b) => eval_term(&a, val) == eval_term(&b, val),
        _ => val[t],
    }
}

fn holds(c: &Clause, val: &HashMap<Term, bool>) -> bool {
    c.literals
        .iter()
        .any(|l| (eval_term(&l.lhs, val) == eval_term(&l.rhs, val)) == l.is_pos())
}

fn random_clause(rng: &mut StdRng) -> Clause {
    let n = rng.gen_range(1..=3);
    let lits = (0..n)
        .map(|_| {
            let pol = if rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg };
            let p = atom(rng.gen_range(0..3));
            if rng.gen_ratio(1, 3) {
                Literal::eq(p, atom(rng.gen_range(0..3)), pol)
            } else {
                Literal::prop(p, pol)
            }
        })
        .collect();
    Clause::new(lits)
}

#[test]
fn ground_rules_are_sound() {
    let mut rng = StdRng::seed_from_u64(11);
    let atoms: Vec<Term> = (0..3).map(atom).collect();
    let vals: Vec<HashMap<Term, bool>> = (0..8u32)
        .map(|b| atoms.iter().enumerate().map(|(i, a)| (a.clone(), b >> i & 1 == 1)).collect())
        .collect();
    let mut checked = 0;
    for _ in 0..500 {
        let c = random_clause(&mut rng);
        let d = random_clause(&mut rng);
        let mut single: Vec<Clause> = Vec::new();
        single.extend(eqfac(&c).iter().flat_map(solve));
        single.extend(bool_ext(&c).into_iter().map(|x| x.clause));
        single.extend(simplified(c.clone()));
        for r in &single {
            for v in &vals {
                assert!(!holds(&c, v) || holds(r, v), "{c:?} ⊬ {r:?}");
            }
            checked += 1;
        }
        let mut binary: Vec<Clause> = para(&c, &d).iter().flat_map(solve).collect();
        if d.is_unit() {
            binary.extend(unit_cut(&c, &d));
        }
        for r in &binary {
            for v in &vals {
                assert!(!(holds(&c, v) && holds(&d, v)) || holds(r, v), "{c:?}, {d:?} ⊬ {r:?}");
            }
            checked += 1;
        }
    }
    assert!(checked > 500);
}
