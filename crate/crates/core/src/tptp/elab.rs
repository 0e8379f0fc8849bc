//! Type checking of parsed statements against a growing signature.

use super::ast::{BinOp, Body, ConnTerm, Expr, Quant, Statement, TypeExpr};
use super::{AnnotatedFormula, InputError, Problem, Role, TypeDecl};
use crate::formula;
use crate::modal::LogicSpec;
use crate::signature::{Signature, Symbol, SymbolKind};
use crate::term::Term;
use crate::types::Type;

pub(super) fn elaborate(stmts: Vec<Statement>, name: &str) -> Result<Problem, InputError> {
    let mut sig = Signature::new();
    let mut type_decls = Vec::new();
    let mut formulas = Vec::new();
    let mut logic = None;
    for s in stmts {
        let type_err = |msg: String| InputError::Type {
            formula: s.name.clone(),
            msg,
        };
        match &s.body {
            Body::TypeDecl(sym, TypeExpr::Kind) => {
                if sym.starts_with('$') {
                    return Err(type_err(format!("cannot declare {sym} as a type")));
                }
                sig.declare_base_type(sym);
                type_decls.push(TypeDecl {
                    name: s.name.clone(),
                    symbol: sym.clone(),
                    ty: None,
                });
            }
            Body::TypeDecl(sym, te) => {
                let ty = elab_type(&sig, te).map_err(type_err)?;
                if sym == "$box" || sym == "$dia" {
                    continue;
                }
                sig.declare(sym, ty.clone(), SymbolKind::User)
                    .map_err(type_err)?;
                type_decls.push(TypeDecl {
                    name: s.name.clone(),
                    symbol: sym.clone(),
                    ty: Some(ty),
                });
            }
            Body::Logic(v) => {
                if logic.is_some() {
                    return Err(InputError::Invalid("more than one logic specification".into()));
                }
                logic = Some(LogicSpec::from_value(v)?);
            }
            Body::Formula(e) => {
                let role = Role::parse(&s.role).ok_or_else(|| InputError::Invalid(format!(
                    "unknown role '{}' of formula {}",
                    s.role, s.name
                )))?;
                let t = Elab { sig: &sig, env: Vec::new() }
                    .term(e)
                    .map_err(type_err)?;
                if !t.ty().is_o() {
                    return Err(type_err(format!("formula has type {}, expected $o", t.ty())));
                }
                formulas.push(AnnotatedFormula {
                    name: s.name.clone(),
                    role,
                    formula: t.normalize(),
                    annotation: s.annotation.clone(),
                });
            }
        }
    }
    Ok(Problem {
        name: name.to_string(),
        signature: sig,
        type_decls,
        formulas,
        logic,
    })
}

pub(super) fn elab_type(sig: &Signature, te: &TypeExpr) -> Result<Type, String> {
    match te {
        TypeExpr::Kind => Err("$tType is not a type of terms".into()),
        TypeExpr::Base(n) => {
            if sig.is_declared_base_type(n) {
                Ok(Type::base(n))
            } else {
                Err(format!("undeclared type {n}"))
            }
        }
        TypeExpr::Fun(a, b) => Ok(Type::fun(elab_type(sig, a)?, elab_type(sig, b)?)),
    }
}

struct Elab<'a> {
    sig: &'a Signature,
    env: Vec<(String, Type)>,
}

fn oo() -> Type {
    Type::fun(Type::o(), Type::o())
}

fn ooo() -> Type {
    Type::curried(&[Type::o(), Type::o()], Type::o())
}

fn expect_o(t: &Term, what: &str) -> Result<(), String> {
    if t.ty().is_o() {
        Ok(())
    } else {
        Err(format!("{what} has type {}, expected $o", t.ty()))
    }
}

fn binary(op: BinOp, l: Term, r: Term) -> Result<Term, String> {
    if matches!(op, BinOp::Eq | BinOp::Neq) {
        if l.ty() != r.ty() {
            return Err(format!(
                "equation between types {} and {}",
                l.ty(),
                r.ty()
            ));
        }
        let e = formula::eq(l, r);
        return Ok(if op == BinOp::Neq { formula::not(e) } else { e });
    }
    expect_o(&l, "left operand")?;
    expect_o(&r, "right operand")?;
    Ok(match op {
        BinOp::Or => formula::or(l, r),
        BinOp::And => formula::and(l, r),
        BinOp::Implies => formula::implies(l, r),
        BinOp::RevImplies => formula::implies(r, l),
        BinOp::Equiv => formula::equiv(l, r),
        BinOp::Xor => formula::not(formula::equiv(l, r)),
        BinOp::Nor => formula::not(formula::or(l, r)),
        BinOp::Nand => formula::not(formula::and(l, r)),
        BinOp::Eq | BinOp::Neq => unreachable!(),
    })
}

/// `λx y. x op y` for a binary connective used as a term.
fn connective_term(op: BinOp) -> Term {
    match op {
        BinOp::Or => Term::constant(Symbol::OR, ooo()),
        BinOp::And => Term::constant(Symbol::AND, ooo()),
        BinOp::Implies => Term::constant(Symbol::IMPLIES, ooo()),
        BinOp::Equiv => Term::constant(Symbol::EQUIV, ooo()),
        _ => {
            let x = Term::bound(1, Type::o());
            let y = Term::bound(0, Type::o());
            let body = binary(op, x, y).expect("boolean operands");
            Term::abs_many(&[Type::o(), Type::o()], body)
        }
    }
}

impl Elab<'_> {
    fn term(&mut self, e: &Expr) -> Result<Term, String> {
        match e {
            Expr::Var(v) => {
                let pos = self
                    .env
                    .iter()
                    .rposition(|(n, _)| n == v)
                    .ok_or_else(|| format!("unbound variable {v}"))?;
                let idx = (self.env.len() - 1 - pos) as u32;
                Ok(Term::bound(idx, self.env[pos].1.clone()))
            }
            Expr::Const(c) => self.constant(c),
            Expr::Connective(c) => match c {
                ConnTerm::Not => Ok(Term::constant(Symbol::NOT, oo())),
                ConnTerm::Bin(op) if !matches!(op, BinOp::Eq | BinOp::Neq) => {
                    Ok(connective_term(*op))
                }
                _ => Err("cannot infer the type of an unapplied polymorphic constant".into()),
            },
            Expr::App(..) => self.application(e),
            Expr::Not(a) => {
                let a = self.term(a)?;
                expect_o(&a, "negated formula")?;
                Ok(formula::not(a))
            }
            Expr::Bin(op, l, r) => {
                let l = self.term(l)?;
                let r = self.term(r)?;
                binary(*op, l, r)
            }
            Expr::Quant(q, vars, body) => {
                let mut tys = Vec::new();
                for (name, te) in vars {
                    let ty = match te {
                        Some(te) => elab_type(self.sig, te)?,
                        None => Type::i(),
                    };
                    self.env.push((name.clone(), ty.clone()));
                    tys.push(ty);
                }
                let body = self.term(body);
                self.env.truncate(self.env.len() - vars.len());
                let mut acc = body?;
                if *q != Quant::Lambda {
                    expect_o(&acc, "quantified formula")?;
                }
                for ty in tys.iter().rev() {
                    acc = match q {
                        Quant::Forall => formula::forall(ty, acc),
                        Quant::Exists => formula::exists(ty, acc),
                        Quant::Lambda => Term::abs(ty.clone(), acc),
                    };
                }
                Ok(acc)
            }
        }
    }

    fn constant(&self, c: &str) -> Result<Term, String> {
        match c {
            "$true" => return Ok(formula::top()),
            "$false" => return Ok(formula::bot()),
            "$box" => return Ok(Term::constant(Symbol::BOX, oo())),
            "$dia" => return Ok(Term::constant(Symbol::DIA, oo())),
            _ => {}
        }
        let sym = self
            .sig
            .lookup(c)
            .filter(|s| !s.is_logical())
            .ok_or_else(|| format!("undeclared symbol {c}"))?;
        let ty = self.sig.type_of(sym).expect("declared symbols are typed");
        Ok(Term::constant(sym, ty.clone()))
    }

    fn application(&mut self, e: &Expr) -> Result<Term, String> {
        let mut args = Vec::new();
        let mut head = e;
        while let Expr::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        let args: Vec<Term> = args
            .into_iter()
            .map(|a| self.term(a))
            .collect::<Result<_, _>>()?;
        let head = match head {
            Expr::Connective(ConnTerm::Bin(op @ (BinOp::Eq | BinOp::Neq))) => {
                let ty = args[0].ty().clone();
                let eq = formula::eq_const(&ty);
                if *op == BinOp::Eq {
                    eq
                } else {
                    let x = Term::bound(1, ty.clone());
                    let y = Term::bound(0, ty.clone());
                    let body = formula::not(Term::try_app_raw(eq, vec![x, y]).expect("typed"));
                    Term::abs_many(&[ty.clone(), ty], body)
                }
            }
            Expr::Connective(q @ (ConnTerm::Pi | ConnTerm::Sigma)) => {
                let ty = args[0].ty();
                let Some((dom, cod)) = ty.as_fun() else {
                    return Err(format!("quantifier applied to non-predicate of type {ty}"));
                };
                if !cod.is_o() {
                    return Err(format!("quantifier applied to non-predicate of type {ty}"));
                }
                let s = if *q == ConnTerm::Pi { Symbol::FORALL } else { Symbol::EXISTS };
                formula::quant_const(s, dom)
            }
            h => self.term(h)?,
        };
        Term::try_app_raw(head, args).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_problem, ParseOptions};
    use super::*;
    use crate::modal::spec::{Consequence, ModalAxiom};

    fn parse(src: &str) -> Result<Problem, InputError> {
        parse_problem(src, "test.p", &ParseOptions::default())
    }

    #[test]
    fn trivial_conjecture() {
        let p = parse("thf(1,conjecture,$true).").unwrap();
        assert_eq!(p.formulas.len(), 1);
        assert!(formula::is_top(&p.formulas[0].formula));
    }

    #[test]
    fn becker_problem() {
        let src = "thf(s5_spec, logic, ($modal := [
              $constants := $rigid, $quantification := $constant,
              $consequence := $global, $modalities := $modal_system_S5 ])).
            thf(becker,conjecture,( ! [P:$i>$o,F:$i>$i, X:$i]: (? [G:$i>$i]:
              (($dia @ ($box @ (P @ (F @ X)))) => ($box @ (P @ (G @ X))))))).";
        let p = parse(src).unwrap();
        let spec = p.logic.as_ref().unwrap();
        assert_eq!(spec.consequence, Consequence::Global);
        assert_eq!(spec.axioms, vec![ModalAxiom::K, ModalAxiom::T, ModalAxiom::Five]);
        assert!(spec.is_s5());
        assert!(p.conjecture().is_some());
        assert!(p.uses_modal_operators());
    }

    #[test]
    fn unsupported_semantics_rejected() {
        let src = "thf(s, logic, $modal := [$constants := $rigid, $quantification := $varying,
                   $modalities := $modal_system_K]).";
        assert!(matches!(parse(src), Err(InputError::Unsupported(_))));
    }

    #[test]
    fn type_errors_name_the_formula() {
        let src = "thf(p_decl, type, p: $i > $o).\nthf(ax, axiom, p @ p).";
        match parse(src) {
            Err(InputError::Type { formula, .. }) => assert_eq!(formula, "ax"),
            r => panic!("{r:?}"),
        }
        assert!(matches!(
            parse("thf(ax, axiom, q)."),
            Err(InputError::Type { .. })
        ));
    }

    #[test]
    fn polymorphic_connectives() {
        let src = "thf(p_decl, type, p: $i > $o).
                   thf(a, axiom, !! @ p).
                   thf(b, axiom, (=) @ p @ p).
                   thf(c, axiom, ((<=) @ $true @ $false)).";
        let p = parse(src).unwrap();
        assert!(p.formulas[0].formula.is_app_of(Symbol::FORALL));
        assert!(p.formulas[1].formula.is_app_of(Symbol::EQ));
        assert!(p.formulas[2].formula.is_app_of(Symbol::IMPLIES));
    }

    #[test]
    fn user_types() {
        let src = "thf(t, type, t: $tType).\nthf(c, type, c: t).\nthf(a, axiom, c = c).";
        let p = parse(src).unwrap();
        assert_eq!(p.type_decls.len(), 2);
        assert!(matches!(
            parse("thf(c, type, c: u)."),
            Err(InputError::Type { .. })
        ));
    }

    #[test]
    fn duplicate_names_and_conjectures() {
        assert!(parse("thf(a, axiom, $true).\nthf(a, axiom, $true).").is_err());
        assert!(parse("thf(a, conjecture, $true).\nthf(b, conjecture, $true).").is_err());
    }

    #[test]
    fn parser_totality_on_garbage() {
        for src in ["", "thf(", "thf(a,axiom,", "))", "thf(a,axiom,$true)", "@@@", "thf(a,foo,$true)."] {
            let _ = parse(src);
        }
        assert!(parse("").unwrap().formulas.is_empty());
    }
}
