//! Locally nameless λ-terms in spine notation.
//!
//! Every node is hash-consed in a per-thread table, so two terms are
//! α-equivalent exactly when they are the same pointer. Applications are
//! stored as a head plus its argument spine; in β-normal terms the head is
//! always an atom (constant, bound index or free variable).

mod normalize;
mod position;
mod raw;
mod subst;

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use thiserror::Error;

use crate::signature::Symbol;
use crate::types::Type;

pub use position::{Position, Step};
pub use raw::RawTerm;
pub use subst::Substitution;

/// Identifier of a free variable. Fresh ids are globally unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

static NEXT_VAR: AtomicU32 = AtomicU32::new(1);

impl VarId {
    pub fn fresh() -> VarId {
        VarId(NEXT_VAR.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("cannot apply a term of type {head} to an argument of type {arg}")]
    BadApplication { head: String, arg: String },
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("invalid position {0:?}")]
    InvalidPosition(Vec<Step>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    Const(Symbol),
    /// De Bruijn index; 0 is the innermost binder.
    Bound(u32),
    Var(VarId),
    /// Binder type and body.
    Abs(Type, Term),
    /// Head and non-empty argument spine.
    App(Term, Vec<Term>),
}

pub struct TermData {
    kind: TermKind,
    ty: Type,
    /// One more than the largest loose de Bruijn index, 0 when closed.
    loose: u32,
    has_vars: bool,
    /// Number of atom occurrences.
    size: u32,
}

#[derive(Clone)]
pub struct Term(Rc<TermData>);

thread_local! {
    static TERMS: RefCell<HashMap<(TermKind, Type), Term>> = RefCell::new(HashMap::new());
}

fn intern(kind: TermKind, ty: Type) -> Term {
    TERMS.with(|table| {
        let mut table = table.borrow_mut();
        if let Some(t) = table.get(&(kind.clone(), ty.clone())) {
            return t.clone();
        }
        let (loose, has_vars, size) = match &kind {
            TermKind::Const(_) => (0, false, 1),
            TermKind::Bound(i) => (i + 1, false, 1),
            TermKind::Var(_) => (0, true, 1),
            TermKind::Abs(_, b) => (b.loose().saturating_sub(1), b.has_vars(), b.size()),
            TermKind::App(h, args) => args.iter().fold(
                (h.loose(), h.has_vars(), h.size()),
                |(l, v, s), a| (l.max(a.loose()), v || a.has_vars(), s + a.size()),
            ),
        };
        let t = Term(Rc::new(TermData {
            kind: kind.clone(),
            ty: ty.clone(),
            loose,
            has_vars,
            size,
        }));
        table.insert((kind, ty), t.clone());
        t
    })
}

/// Number of live entries in this thread's term table.
pub fn table_size() -> usize {
    TERMS.with(|t| t.borrow().len())
}

/// Drops table entries that are no longer referenced from outside the
/// table. Canonicity is preserved: a dropped term has no other copy alive.
pub fn collect_garbage() {
    TERMS.with(|table| loop {
        let mut table = table.borrow_mut();
        let before = table.len();
        table.retain(|_, t| Rc::strong_count(&t.0) > 1);
        if table.len() == before {
            break;
        }
    })
}

impl Term {
    pub fn constant(sym: Symbol, ty: Type) -> Term {
        intern(TermKind::Const(sym), ty)
    }

    pub fn bound(index: u32, ty: Type) -> Term {
        intern(TermKind::Bound(index), ty)
    }

    pub fn var(id: VarId, ty: Type) -> Term {
        intern(TermKind::Var(id), ty)
    }

    pub fn fresh_var(ty: Type) -> Term {
        Term::var(VarId::fresh(), ty)
    }

    pub fn abs(binder: Type, body: Term) -> Term {
        let ty = Type::fun(binder.clone(), body.ty().clone());
        intern(TermKind::Abs(binder, body), ty)
    }

    /// `λx1..xn. body` with binder types given outermost first.
    pub fn abs_many(binders: &[Type], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, b| Term::abs(b.clone(), acc))
    }

    /// Builds an application node without reducing. Nested spines are
    /// flattened; an abstraction head yields a β-redex.
    pub fn try_app_raw(head: Term, args: Vec<Term>) -> Result<Term, TypeError> {
        if args.is_empty() {
            return Ok(head);
        }
        let mut ty = head.ty().clone();
        for a in &args {
            ty = match ty.as_fun() {
                Some((p, r)) if p == a.ty() => r.clone(),
                _ => {
                    return Err(TypeError::BadApplication {
                        head: ty.to_string(),
                        arg: a.ty().to_string(),
                    })
                }
            };
        }
        Ok(match head.kind() {
            TermKind::App(h, prev) => {
                let mut spine = prev.clone();
                spine.extend(args);
                intern(TermKind::App(h.clone(), spine), ty)
            }
            _ => intern(TermKind::App(head, args), ty),
        })
    }

    /// Application followed by hereditary β-reduction. For β-normal inputs
    /// the result is β-normal.
    pub fn try_apply(head: Term, args: Vec<Term>) -> Result<Term, TypeError> {
        let mut ty = head.ty().clone();
        for a in &args {
            ty = match ty.as_fun() {
                Some((p, r)) if p == a.ty() => r.clone(),
                _ => {
                    return Err(TypeError::BadApplication {
                        head: ty.to_string(),
                        arg: a.ty().to_string(),
                    })
                }
            };
        }
        Ok(normalize::apply_normal(head, args))
    }

    /// Like [`Term::try_apply`]; panics on ill-typed input.
    pub fn apply(head: Term, args: Vec<Term>) -> Term {
        Term::try_apply(head, args).expect("well-typed application")
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    pub fn loose(&self) -> u32 {
        self.0.loose
    }

    pub fn is_closed(&self) -> bool {
        self.0.loose == 0
    }

    pub fn has_vars(&self) -> bool {
        self.0.has_vars
    }

    pub fn is_ground(&self) -> bool {
        !self.0.has_vars
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn is_var(&self) -> bool {
        matches!(self.kind(), TermKind::Var(_))
    }

    pub fn as_var(&self) -> Option<VarId> {
        match self.kind() {
            TermKind::Var(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<Symbol> {
        match self.kind() {
            TermKind::Const(s) => Some(*s),
            _ => None,
        }
    }

    /// The head atom (the term itself when not an application).
    pub fn head(&self) -> &Term {
        match self.kind() {
            TermKind::App(h, _) => h,
            _ => self,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self.kind() {
            TermKind::App(_, a) => a,
            _ => &[],
        }
    }

    pub fn head_symbol(&self) -> Option<Symbol> {
        self.head().as_const()
    }

    /// Is this `c a1 .. an` for the given constant `c`?
    pub fn is_app_of(&self, sym: Symbol) -> bool {
        self.head_symbol() == Some(sym)
    }

    /// Strips leading abstractions: binder types outermost first and body.
    pub fn strip_abs(&self) -> (Vec<Type>, &Term) {
        let mut binders = Vec::new();
        let mut cur = self;
        while let TermKind::Abs(ty, b) = cur.kind() {
            binders.push(ty.clone());
            cur = b;
        }
        (binders, cur)
    }

    /// Head after stripping abstractions.
    pub fn deep_head(&self) -> &Term {
        self.strip_abs().1.head()
    }

    /// Flexible: the (λ-stripped) head is a free variable.
    pub fn is_flex(&self) -> bool {
        self.deep_head().is_var()
    }

    pub fn is_rigid(&self) -> bool {
        !self.is_flex()
    }

    /// If this term is η-equivalent to a bare free variable, return it.
    /// In η-long form this is `λx1..xn. X x1 .. xn`.
    pub fn as_eta_var(&self) -> Option<VarId> {
        let (binders, body) = self.strip_abs();
        let v = body.head().as_var()?;
        let args = body.args();
        if args.len() != binders.len() {
            return None;
        }
        let n = args.len() as u32;
        for (i, a) in args.iter().enumerate() {
            let expected = n - 1 - i as u32;
            if a.eta_bound_index() != Some(expected) {
                return None;
            }
        }
        Some(v)
    }

    /// If this term is η-equivalent to the bound index `i`, return `i`.
    pub fn eta_bound_index(&self) -> Option<u32> {
        let (binders, body) = self.strip_abs();
        let k = binders.len() as u32;
        let TermKind::Bound(i) = body.head().kind() else {
            return None;
        };
        if *i < k {
            return None;
        }
        let args = body.args();
        if args.len() as u32 != k {
            return None;
        }
        for (j, a) in args.iter().enumerate() {
            if a.eta_bound_index() != Some(k - 1 - j as u32) {
                return None;
            }
        }
        Some(i - k)
    }

    /// Free variables in first-occurrence order (left to right, head first).
    pub fn free_vars(&self) -> Vec<(VarId, Type)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut Vec<(VarId, Type)>) {
        if !self.has_vars() {
            return;
        }
        match self.kind() {
            TermKind::Var(v) => {
                if !out.iter().any(|(w, _)| w == v) {
                    out.push((*v, self.ty().clone()))
                }
            }
            TermKind::Abs(_, b) => b.collect_vars(out),
            TermKind::App(h, args) => {
                h.collect_vars(out);
                for a in args {
                    a.collect_vars(out);
                }
            }
            _ => {}
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        if !self.has_vars() {
            return false;
        }
        match self.kind() {
            TermKind::Var(w) => *w == v,
            TermKind::Abs(_, b) => b.contains_var(v),
            TermKind::App(h, args) => h.contains_var(v) || args.iter().any(|a| a.contains_var(v)),
            _ => false,
        }
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        match self.kind() {
            TermKind::Const(c) => *c == s,
            TermKind::Abs(_, b) => b.contains_symbol(s),
            TermKind::App(h, args) => {
                h.contains_symbol(s) || args.iter().any(|a| a.contains_symbol(s))
            }
            _ => false,
        }
    }

    /// Calls `f` on every constant occurrence.
    pub fn for_each_const(&self, f: &mut impl FnMut(Symbol, &Type)) {
        match self.kind() {
            TermKind::Const(c) => f(*c, self.ty()),
            TermKind::Abs(_, b) => b.for_each_const(f),
            TermKind::App(h, args) => {
                h.for_each_const(f);
                for a in args {
                    a.for_each_const(f);
                }
            }
            _ => {}
        }
    }

    /// Is this term free of β-redexes?
    pub fn is_beta_normal(&self) -> bool {
        match self.kind() {
            TermKind::Abs(_, b) => b.is_beta_normal(),
            TermKind::App(h, args) => {
                !matches!(h.kind(), TermKind::Abs(..) | TermKind::App(..))
                    && args.iter().all(Term::is_beta_normal)
            }
            _ => true,
        }
    }

    /// Is this term in η-long form (assuming β-normal)?
    pub fn is_eta_long(&self) -> bool {
        let (binders, body) = self.strip_abs();
        let _ = binders;
        body.ty().is_base() && body.args().iter().all(Term::is_eta_long)
    }

    /// Deterministic structural total order (independent of allocation).
    pub fn cmp_structural(&self, other: &Term) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        fn tag(k: &TermKind) -> u8 {
            match k {
                TermKind::Const(_) => 0,
                TermKind::Bound(_) => 1,
                TermKind::Var(_) => 2,
                TermKind::Abs(..) => 3,
                TermKind::App(..) => 4,
            }
        }
        let o = tag(self.kind()).cmp(&tag(other.kind()));
        if o != Ordering::Equal {
            return o;
        }
        let o = match (self.kind(), other.kind()) {
            (TermKind::Const(a), TermKind::Const(b)) => a.cmp(b),
            (TermKind::Bound(a), TermKind::Bound(b)) => a.cmp(b),
            (TermKind::Var(a), TermKind::Var(b)) => a.cmp(b),
            (TermKind::Abs(t1, b1), TermKind::Abs(t2, b2)) => {
                t1.cmp_structural(t2).then_with(|| b1.cmp_structural(b2))
            }
            (TermKind::App(h1, a1), TermKind::App(h2, a2)) => {
                h1.cmp_structural(h2)
                    .then_with(|| a1.len().cmp(&a2.len()))
                    .then_with(|| {
                        a1.iter()
                            .zip(a2)
                            .map(|(x, y)| x.cmp_structural(y))
                            .find(|o| *o != Ordering::Equal)
                            .unwrap_or(Ordering::Equal)
                    })
            }
            _ => unreachable!(),
        };
        o.then_with(|| self.ty().cmp_structural(other.ty()))
    }

    pub fn shift(&self, d: u32) -> Term {
        normalize::shift(self, d as i64, 0)
    }

    pub fn beta_normalize(&self) -> Term {
        normalize::beta_normalize(self)
    }

    pub fn eta_long(&self) -> Term {
        normalize::eta_long(self)
    }

    /// β-normal η-long form.
    pub fn normalize(&self) -> Term {
        normalize::eta_long(&normalize::beta_normalize(self))
    }

    /// Replaces the loose bound index 0 by `arg` (β-reducing the result).
    pub fn instantiate(&self, arg: &Term) -> Term {
        normalize::subst_bound(self, 0, std::slice::from_ref(arg))
    }

    /// Body of `λx. body` instantiated with `arg`.
    pub fn open_with(&self, arg: &Term) -> Option<Term> {
        match self.kind() {
            TermKind::Abs(_, b) => Some(b.instantiate(arg)),
            _ => None,
        }
    }

    /// Abstracts free variable `v` into a new outermost binder:
    /// `λv. self`. The result is η-long if `self` is.
    pub fn abstract_var(&self, v: VarId, ty: &Type) -> Term {
        Term::abs(ty.clone(), normalize::abstract_var(&self.shift(1), v, 0))
    }

    /// Does the loose bound index `i` occur?
    pub fn mentions_bound(&self, i: u32) -> bool {
        normalize::mentions_below(self, 1, i)
    }

    /// Lowers all loose indices by `d`; indices below `d` must not occur.
    pub fn unshift(&self, d: u32) -> Term {
        debug_assert!((0..d).all(|i| !self.mentions_bound(i)));
        normalize::shift(self, -(d as i64), 0)
    }

    /// Removes trailing η-redex binders (`λx. f x` becomes `f`).
    pub fn eta_contract_top(&self) -> Option<Term> {
        normalize::eta_contract_top(self)
    }

    /// η-long form of the bare atom `t` (for example a constant of function type).
    pub fn eta_expand_atom(t: Term) -> Term {
        normalize::eta_long(&t)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (Rc::as_ptr(&self.0) as usize).hash(state)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Const(s) => write!(f, "c{}", s.0),
            TermKind::Bound(i) => write!(f, "#{i}"),
            TermKind::Var(v) => write!(f, "X{}", v.0),
            TermKind::Abs(ty, b) => write!(f, "(λ:{ty}. {b:?})"),
            TermKind::App(h, args) => {
                write!(f, "({h:?}")?;
                for a in args {
                    write!(f, " {a:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}
