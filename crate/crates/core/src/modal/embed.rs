//! Shallow semantical embedding: modal formulas become classical formulas
//! over an explicit type of worlds `mworld`. A proposition is lifted to a
//! predicate on worlds, connectives and quantifiers to defined constants
//! that evaluate their arguments world-wise, and validity to truth in all
//! worlds.

use thiserror::Error;

use super::spec::{Consequence, LogicSpec, ModalAxiom};
use crate::cnf::as_definition;
use crate::formula;
use crate::signature::{Signature, Symbol};
use crate::term::{Term, TermKind};
use crate::tptp::{parse_problem, AnnotatedFormula, InputError, ParseOptions, Problem, Role};
use crate::types::{Type, TypeKind};

/// How S5 is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum S5Mode {
    /// An accessibility relation with reflexivity and euclideanness axioms.
    #[default]
    Relational,
    /// Every world sees every world; no relation symbol at all.
    Universal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("modal operators used without a logic specification")]
    MissingSpec,
    #[error("symbol {0} clashes with a name reserved by the modal embedding")]
    ReservedName(String),
    #[error(transparent)]
    Input(#[from] InputError),
}

const WORLD: &str = "mworld";
const REL: &str = "mrel";
const CURRENT_WORLD: &str = "cw";

fn world() -> Type {
    Type::base(WORLD)
}

/// `o` becomes `mworld > o`, everywhere in a type.
pub fn lift_type(ty: &Type) -> Type {
    match ty.kind() {
        TypeKind::Base(_) if ty.is_o() => Type::fun(world(), Type::o()),
        TypeKind::Base(_) => ty.clone(),
        TypeKind::Fun(a, r) => Type::fun(lift_type(a), lift_type(r)),
    }
}

fn mangle_inner(ty: &Type, out: &mut String) {
    match ty.kind() {
        TypeKind::Base(n) => out.push_str(&n.replace('$', "_d_")),
        TypeKind::Fun(a, r) => {
            out.push_str("_o_");
            mangle_inner(a, out);
            out.push_str("_t_");
            mangle_inner(r, out);
            out.push_str("_c_");
        }
    }
}

/// Name of the quantifier constant for (lifted) type `ty`, e.g.
/// `mforall_const__o__d_i_c_` for `$i`.
pub fn quantifier_name(q: Symbol, ty: &Type) -> String {
    let prefix = if q == Symbol::EXISTS { "mexists_const_" } else { "mforall_const_" };
    let mut out = prefix.to_string();
    if ty.is_base() {
        out.push_str("_o_");
        mangle_inner(ty, &mut out);
        out.push_str("_c_");
    } else {
        mangle_inner(ty, &mut out);
    }
    out
}

/// Connectives and their definitions over lifted propositions.
const CONNECTIVES: [(Symbol, &str, &str); 9] = [
    (Symbol::TRUE, "mtrue", "^ [A: mworld] : $true"),
    (Symbol::FALSE, "mfalse", "^ [A: mworld] : $false"),
    (Symbol::NOT, "mnot", "^ [A: mworld > $o,B: mworld] : ~ ( A @ B )"),
    (Symbol::AND, "mand", "^ [A: mworld > $o,B: mworld > $o,C: mworld] : ( ( A @ C ) & ( B @ C ) )"),
    (Symbol::OR, "mor", "^ [A: mworld > $o,B: mworld > $o,C: mworld] : ( ( A @ C ) | ( B @ C ) )"),
    (Symbol::IMPLIES, "mimplies", "^ [A: mworld > $o,B: mworld > $o,C: mworld] : ( ( A @ C ) => ( B @ C ) )"),
    (Symbol::EQUIV, "mequiv", "^ [A: mworld > $o,B: mworld > $o,C: mworld] : ( ( A @ C ) <=> ( B @ C ) )"),
    (Symbol::DIA, "mdia", ""),
    (Symbol::BOX, "mbox", ""),
];

/// Frame conditions: the property name and its definition.
fn frame_property(a: ModalAxiom) -> Option<(&'static str, &'static str)> {
    Some(match a {
        ModalAxiom::K => return None,
        ModalAxiom::D => ("mserial", "! [B: mworld] : ? [C: mworld] : ( A @ B @ C )"),
        ModalAxiom::T => ("mreflexive", "! [B: mworld] : ( A @ B @ B )"),
        ModalAxiom::B => ("msymmetric", "! [B: mworld,C: mworld] : ( ( A @ B @ C ) => ( A @ C @ B ) )"),
        ModalAxiom::Four => (
            "mtransitive",
            "! [B: mworld,C: mworld,D: mworld] : ( ( ( A @ B @ C ) & ( A @ C @ D ) ) => ( A @ B @ D ) )",
        ),
        ModalAxiom::Five => (
            "meuclidean",
            "! [B: mworld,C: mworld,D: mworld] : ( ( ( A @ B @ C ) & ( A @ B @ D ) ) => ( A @ C @ D ) )",
        ),
    })
}

fn frame_definition(body: &str) -> String {
    format!("^ [A: mworld > mworld > $o] : {body}")
}

fn modal_definition(sym: Symbol, universal: bool) -> &'static str {
    match (sym, universal) {
        (Symbol::BOX, false) => "^ [A: mworld > $o,B: mworld] : ! [C: mworld] : ( ( mrel @ B @ C ) => ( A @ C ) )",
        (Symbol::DIA, false) => "^ [A: mworld > $o,B: mworld] : ? [C: mworld] : ( ( mrel @ B @ C ) & ( A @ C ) )",
        (Symbol::BOX, true) => "^ [A: mworld > $o,B: mworld] : ! [C: mworld] : ( A @ C )",
        _ => "^ [A: mworld > $o,B: mworld] : ? [C: mworld] : ( A @ C )",
    }
}

/// Logical constants occurring in the formulas, in first-occurrence order;
/// quantifiers carry their (unlifted) bound type.
fn collect_logical(t: &Term, out: &mut Vec<(Symbol, Option<Type>)>) {
    t.for_each_const(&mut |s, ty| {
        if !s.is_logical() || s == Symbol::EQ {
            return;
        }
        let entry = if s == Symbol::FORALL || s == Symbol::EXISTS {
            let bound = ty.as_fun().and_then(|(a, _)| a.as_fun()).map(|(b, _)| b.clone());
            (s, bound)
        } else {
            (s, None)
        };
        if !out.contains(&entry) {
            out.push(entry);
        }
    });
}

struct Translator<'a> {
    old: &'a Signature,
    new: &'a Signature,
}

impl Translator<'_> {
    fn constant(&self, name: &str) -> Term {
        let s = self.new.lookup(name).expect("declared by the embedding");
        Term::constant(s, self.new.type_of(s).expect("typed").clone())
    }

    fn term(&self, t: &Term) -> Term {
        match t.kind() {
            TermKind::Const(s) => self.symbol(*s, t.ty()),
            TermKind::Var(v) => Term::var(*v, lift_type(t.ty())),
            TermKind::Bound(i) => Term::bound(*i, lift_type(t.ty())),
            TermKind::Abs(ty, b) => Term::abs(lift_type(ty), self.term(b)),
            TermKind::App(h, args) => {
                Term::apply(self.term(h), args.iter().map(|a| self.term(a)).collect())
            }
        }
    }

    fn symbol(&self, s: Symbol, ty: &Type) -> Term {
        if !s.is_logical() {
            return self.constant(self.old.name(s));
        }
        match s {
            Symbol::EQ => {
                // λa b w. a = b
                let arg = lift_type(&ty.split().0[0]);
                let body = formula::eq(Term::bound(2, arg.clone()), Term::bound(1, arg.clone()));
                Term::abs_many(&[arg.clone(), arg, world()], body)
            }
            Symbol::FORALL | Symbol::EXISTS => {
                let bound = ty.split().0[0].split().0[0].clone();
                self.constant(&quantifier_name(s, &lift_type(&bound)))
            }
            _ => {
                let name = CONNECTIVES
                    .iter()
                    .find(|(c, _, _)| *c == s)
                    .map(|(_, n, _)| *n)
                    .expect("every logical symbol has a lifted counterpart");
                self.constant(name)
            }
        }
    }
}

fn is_reserved(name: &str) -> bool {
    name == WORLD
        || name == REL
        || name == CURRENT_WORLD
        || name == "mvalid"
        || name.starts_with("mforall_const_")
        || name.starts_with("mexists_const_")
        || CONNECTIVES.iter().any(|(_, n, _)| *n == name)
        || ["mserial", "mreflexive", "msymmetric", "mtransitive", "meuclidean"].contains(&name)
}

/// Translates a modal problem into a classical one. The generated
/// definitions come first, in the order: frame properties, `mvalid`,
/// connectives, quantifier constants.
pub fn embed(p: &Problem, mode: S5Mode) -> Result<Problem, EmbedError> {
    let spec: &LogicSpec = p.logic.as_ref().ok_or(EmbedError::MissingSpec)?;
    let universal = mode == S5Mode::Universal && spec.is_s5();
    for (_, info) in p.signature.symbols() {
        if is_reserved(&info.name) {
            return Err(EmbedError::ReservedName(info.name.clone()));
        }
    }

    let mut logical = Vec::new();
    for f in &p.formulas {
        collect_logical(&f.formula, &mut logical);
    }
    let uses = |s: Symbol| logical.iter().any(|(c, _)| *c == s);

    let mut text = String::new();
    let mut decl = |name: &str, ty: &str| {
        text.push_str(&format!("thf({}_type,type,{name}: {ty}).\n", name.trim_matches('\'')));
    };
    decl(WORLD, "$tType");
    for d in &p.type_decls {
        if d.ty.is_none() {
            decl(&crate::tptp::printer::quote_name(&d.symbol), "$tType");
        }
    }
    let mut defs: Vec<(String, String, String)> = Vec::new();
    let mut frame_axioms = Vec::new();
    if !universal {
        decl(REL, "mworld > mworld > $o");
        for a in &spec.axioms {
            if let Some((name, body)) = frame_property(*a) {
                defs.push((name.into(), "( mworld > mworld > $o ) > $o".into(), frame_definition(body)));
                frame_axioms.push(name);
            }
        }
    }
    let consequence = spec.consequence;
    defs.push((
        "mvalid".into(),
        "( mworld > $o ) > $o".into(),
        "^ [A: mworld > $o] : ! [B: mworld] : ( A @ B )".into(),
    ));
    for (sym, name, body) in CONNECTIVES {
        if !uses(sym) {
            continue;
        }
        let ty = lift_type(Signature::new().type_of(sym).expect("connective type"));
        let body = if body.is_empty() { modal_definition(sym, universal) } else { body };
        defs.push((name.into(), ty.to_string(), body.into()));
    }
    for q in [Symbol::EXISTS, Symbol::FORALL] {
        for (_, bound) in logical.iter().filter(|(s, _)| *s == q) {
            let bound = lift_type(bound.as_ref().expect("quantifier type"));
            let name = quantifier_name(q, &bound);
            let arg = Type::curried(&[bound.clone(), world()], Type::o());
            let ty = Type::curried(&[arg.clone(), world()], Type::o());
            let binder = if q == Symbol::EXISTS { "?" } else { "!" };
            let body = format!("^ [A: {arg},B: mworld] : {binder} [C: {bound}] : ( A @ C @ B )");
            defs.push((name, ty.to_string(), body));
        }
    }
    for (name, ty, body) in &defs {
        text.push_str(&format!("thf({name}_type,type,{name}: {ty}).\n"));
        text.push_str(&format!("thf({name}_def,definition,( {name} = ( {body} ) )).\n"));
    }
    for d in &p.type_decls {
        if let Some(ty) = &d.ty {
            let name = crate::tptp::printer::quote_name(&d.symbol);
            text.push_str(&format!("thf({},type,{name}: {}).\n", crate::tptp::printer::quote_name(&d.name), lift_type(ty)));
        }
    }
    if consequence == Consequence::Local {
        text.push_str(&format!("thf({CURRENT_WORLD}_type,type,{CURRENT_WORLD}: mworld).\n"));
    }
    for name in &frame_axioms {
        text.push_str(&format!("thf({REL}_{name},axiom,( {name} @ {REL} )).\n"));
    }

    let mut out = parse_problem(&text, &p.name, &ParseOptions::default())?;
    let tr = Translator {
        old: &p.signature,
        new: &out.signature,
    };
    let valid = tr.constant("mvalid");
    let mut formulas = Vec::new();
    for f in &p.formulas {
        let wrapped = match (f.role, as_definition(&f.formula)) {
            (Role::Definition, Some((s, body))) => {
                let head = tr.symbol(s, p.signature.type_of(s).expect("typed"));
                formula::eq(head, tr.term(&body).beta_normalize())
            }
            _ => {
                let lifted = tr.term(&f.formula).beta_normalize();
                match consequence {
                    Consequence::Local => Term::apply(lifted, vec![tr.constant(CURRENT_WORLD)]),
                    Consequence::Global => Term::apply(valid.clone(), vec![lifted]),
                }
            }
        };
        formulas.push(AnnotatedFormula {
            name: f.name.clone(),
            role: f.role,
            formula: wrapped,
            annotation: f.annotation.clone(),
        });
    }
    out.formulas.extend(formulas);
    out.logic = None;
    Ok(out)
}

#[cfg(test)]
#[path = "tests.rs"]
mod tests;
