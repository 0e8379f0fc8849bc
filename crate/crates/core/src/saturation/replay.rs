//! Independent re-checking of a derivation: every inference step on the
//! path to the goal is recomputed from its parents and compared with the
//! recorded conclusion.

use std::collections::HashMap;
use std::fmt::Write;

use super::PreprocessContext;
use crate::calculus::{self, PsHeads, Simplified};
use crate::clause::{Clause, Literal, Polarity};
use crate::cnf;
use crate::formula;
use crate::proof::{Content, Derivation, NodeId, Origin, Rule};
use crate::signature::{Signature, Symbol, SymbolKind};
use crate::term::{Substitution, Term, TermKind, VarId};

/// Encodes a clause up to renaming of variables and of the symbols
/// selected by `fresh`, both numbered by first occurrence.
struct Encoder<'a> {
    fresh: &'a dyn Fn(Symbol) -> bool,
    vars: HashMap<VarId, usize>,
    syms: HashMap<Symbol, usize>,
    out: String,
}

impl Encoder<'_> {
    fn term(&mut self, t: &Term) {
        match t.kind() {
            TermKind::Const(s) => {
                if (self.fresh)(*s) {
                    let n = self.syms.len();
                    let k = *self.syms.entry(*s).or_insert(n);
                    let _ = write!(self.out, "n{k}:{}", t.ty());
                } else {
                    let _ = write!(self.out, "c{}", s.0);
                }
            }
            TermKind::Var(v) => {
                let n = self.vars.len();
                let k = *self.vars.entry(*v).or_insert(n);
                let _ = write!(self.out, "v{k}:{}", t.ty());
            }
            TermKind::Bound(i) => {
                let _ = write!(self.out, "b{i}");
            }
            TermKind::Abs(ty, b) => {
                let _ = write!(self.out, "(^{ty}.");
                self.term(b);
                self.out.push(')');
            }
            TermKind::App(h, args) => {
                self.out.push('(');
                self.term(h);
                for a in args {
                    self.out.push(' ');
                    self.term(a);
                }
                self.out.push(')');
            }
        }
    }

    fn clause(mut self, c: &Clause) -> String {
        for l in &c.literals {
            self.out.push(if l.is_pos() { '+' } else { '-' });
            self.term(&l.lhs);
            self.out.push('=');
            self.term(&l.rhs);
            self.out.push(';');
        }
        self.out
    }
}

fn encode(c: &Clause, fresh: &dyn Fn(Symbol) -> bool) -> String {
    Encoder {
        fresh,
        vars: HashMap::new(),
        syms: HashMap::new(),
        out: String::new(),
    }
    .clause(c)
}

fn as_clause(c: &Content) -> Clause {
    match c {
        Content::Clause(c) => c.clone(),
        Content::Formula(t) => Clause::unit(Literal::prop(t.clone(), Polarity::Pos)),
    }
}

fn formula_of(c: &Content) -> Result<&Term, String> {
    match c {
        Content::Formula(t) => Ok(t),
        Content::Clause(_) => Err("expected a formula".into()),
    }
}

fn is_introduced(kind: SymbolKind) -> bool {
    matches!(
        kind,
        SymbolKind::Skolem | SymbolKind::Inverse | SymbolKind::Definitional
    )
}

/// Checks every step in the derivation of `goal`, which must be an empty
/// clause.
pub fn check(
    d: &Derivation,
    goal: NodeId,
    sig: &Signature,
    ctx: &PreprocessContext,
    ps_heads: &PsHeads,
) -> Result<(), String> {
    match &d.node(goal).content {
        Content::Clause(c) if c.is_empty_clause() => {}
        _ => return Err("the goal is not an empty clause".into()),
    }
    for id in d.ancestors(goal) {
        let node = d.node(id);
        let Origin::Inference {
            rule,
            parents,
            bindings,
        } = &node.origin
        else {
            continue;
        };
        let parent_content: Vec<&Content> = parents.iter().map(|p| &d.node(*p).content).collect();
        check_step(*rule, &parent_content, bindings, &node.content, sig, ctx, ps_heads)
            .map_err(|e| format!("step {} ({}): {e}", id.0, rule.name()))?;
    }
    Ok(())
}

fn check_step(
    rule: Rule,
    parents: &[&Content],
    bindings: &[(VarId, Term)],
    child: &Content,
    sig: &Signature,
    ctx: &PreprocessContext,
    ps_heads: &PsHeads,
) -> Result<(), String> {
    let first = parents.first().ok_or("no premises")?;
    let expect_formula = |t: Term| -> Result<(), String> {
        if formula_of(child)? == &t {
            Ok(())
        } else {
            Err("conclusion differs from the recomputed formula".into())
        }
    };
    match rule {
        Rule::NegConjecture => return expect_formula(formula::not(formula_of(first)?.clone())),
        Rule::DefExp => return expect_formula(ctx.expand(formula_of(first)?)),
        Rule::Miniscope => return expect_formula(cnf::miniscope(formula_of(first)?)),
        _ => {}
    }
    let child = child.as_clause().ok_or("expected a clause")?;
    let premises: Vec<Clause> = parents.iter().map(|c| as_clause(c)).collect();
    let p0 = &premises[0];

    // Symbols introduced by this very step.
    let mut known: Vec<Symbol> = Vec::new();
    for p in parents {
        p.for_each_const(&mut |s| known.push(s));
    }
    let child_fresh = |s: Symbol| is_introduced(sig.kind(s)) && !known.contains(&s);
    let base = sig.len() as u32;
    let replay_fresh = |s: Symbol| s.0 >= base;
    let target = encode(child, &child_fresh);
    let matches = |c: &Clause| encode(c, &replay_fresh) == target;

    let mut scratch = sig.clone();
    let found = match rule {
        Rule::Cnf => {
            let threshold = ctx.config.definitional_threshold;
            cnf::clausify(p0, &mut scratch, threshold).iter().any(matches)
        }
        Rule::FuncExt => calculus::func_ext(p0, &mut scratch).is_some_and(|c| matches(&c)),
        Rule::Inj => calculus::inj(p0, &mut scratch).is_some_and(|(_, c)| matches(&c)),
        Rule::BoolExt => calculus::bool_ext(p0).iter().any(|c| matches(&c.clause)),
        Rule::EqFactor => calculus::eqfac(p0).iter().any(|c| matches(&c.clause)),
        Rule::Paramod => {
            let p1 = premises.get(1).ok_or("paramodulation needs two premises")?;
            calculus::para(p0, p1).iter().any(|c| matches(&c.clause))
        }
        Rule::PrimSubst => calculus::prim_subst(p0, ps_heads).iter().any(|c| matches(&c.clause)),
        Rule::Instantiate => {
            let types = &ctx.config.exhaustive_inst_types;
            calculus::instantiate(p0, types).iter().any(|c| matches(&c.clause))
        }
        Rule::Simp => match calculus::simplify(p0) {
            Simplified::Changed(c, _) => matches(&c),
            _ => false,
        },
        Rule::Rewrite => {
            let unit = premises.get(1).ok_or("rewriting needs a unit premise")?;
            calculus::unit_cut(p0, unit).is_some_and(|c| matches(&c))
                || calculus::rewrite_rule(unit)
                    .and_then(|r| calculus::rewrite_step(p0, &r))
                    .is_some_and(|c| matches(&c))
        }
        Rule::PreUni | Rule::PatternUni => unification_instance(p0, bindings, child)?,
        Rule::NegConjecture | Rule::DefExp | Rule::Miniscope => unreachable!("handled above"),
    };
    if found {
        Ok(())
    } else {
        Err("conclusion is not among the recomputed conclusions".into())
    }
}

/// The conclusion is the premise instantiated by the recorded bindings,
/// minus solved constraints, plus flex-flex residue.
fn unification_instance(p: &Clause, bindings: &[(VarId, Term)], child: &Clause) -> Result<bool, String> {
    let mut s = Substitution::new();
    for (v, t) in bindings {
        let ty = p
            .free_vars()
            .into_iter()
            .find(|(w, _)| w == v)
            .map(|(_, ty)| ty)
            .ok_or("binding for a variable not in the premise")?;
        s.insert(*v, &ty, t.clone()).map_err(|e| format!("ill-typed binding: {e:?}"))?;
    }
    let inst = p.apply(&s);
    let mut used = vec![false; inst.len()];
    let mut residue = false;
    for l in &child.literals {
        match (0..inst.len()).find(|&i| !used[i] && inst.literals[i] == *l) {
            Some(i) => used[i] = true,
            None if !l.is_pos() && l.is_flex_flex() => residue = true,
            None => return Ok(false),
        }
    }
    // Every dropped literal is a solved constraint.
    Ok(inst
        .literals
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .all(|(l, _)| !l.is_pos() && (l.lhs == l.rhs || residue)))
}
