//! Simple types: base sorts and the function-type constructor.
//!
//! Types are hash-consed per thread, so equality and hashing are pointer
//! operations.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

#[derive(Debug)]
pub enum TypeKind {
    Base(Rc<str>),
    Fun(Type, Type),
}

#[derive(Clone)]
pub struct Type(Rc<TypeKind>);

#[derive(PartialEq, Eq, Hash)]
enum TypeKey {
    Base(Rc<str>),
    Fun(usize, usize),
}

thread_local! {
    static TYPES: RefCell<HashMap<TypeKey, Type>> = RefCell::new(HashMap::new());
}

impl Type {
    pub fn base(name: &str) -> Type {
        let key = TypeKey::Base(Rc::from(name));
        TYPES.with(|t| {
            t.borrow_mut()
                .entry(key)
                .or_insert_with(|| Type(Rc::new(TypeKind::Base(Rc::from(name)))))
                .clone()
        })
    }

    pub fn fun(arg: Type, result: Type) -> Type {
        let key = TypeKey::Fun(arg.addr(), result.addr());
        TYPES.with(|t| {
            t.borrow_mut()
                .entry(key)
                .or_insert_with(|| Type(Rc::new(TypeKind::Fun(arg, result))))
                .clone()
        })
    }

    /// `args[0] > args[1] > ... > result`
    pub fn curried(args: &[Type], result: Type) -> Type {
        args.iter()
            .rev()
            .fold(result, |acc, a| Type::fun(a.clone(), acc))
    }

    /// `$i`
    pub fn i() -> Type {
        Type::base("$i")
    }

    /// `$o`
    pub fn o() -> Type {
        Type::base("$o")
    }

    fn addr(&self) -> usize {
        Rc::as_ptr(&self.0) as usize
    }

    pub fn kind(&self) -> &TypeKind {
        &self.0
    }

    pub fn is_base(&self) -> bool {
        matches!(*self.0, TypeKind::Base(_))
    }

    pub fn is_fun(&self) -> bool {
        !self.is_base()
    }

    pub fn is_o(&self) -> bool {
        matches!(&*self.0, TypeKind::Base(n) if &**n == "$o")
    }

    pub fn base_name(&self) -> Option<&str> {
        match &*self.0 {
            TypeKind::Base(n) => Some(n),
            TypeKind::Fun(..) => None,
        }
    }

    pub fn as_fun(&self) -> Option<(&Type, &Type)> {
        match &*self.0 {
            TypeKind::Fun(a, r) => Some((a, r)),
            TypeKind::Base(_) => None,
        }
    }

    /// Splits `t1 > ... > tn > b` into `([t1..tn], b)` with `b` a base type.
    pub fn split(&self) -> (Vec<Type>, Type) {
        let mut args = Vec::new();
        let mut cur = self.clone();
        while let Some((a, r)) = cur.as_fun().map(|(a, r)| (a.clone(), r.clone())) {
            args.push(a);
            cur = r;
        }
        (args, cur)
    }

    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let TypeKind::Fun(_, r) = &*cur.0 {
            n += 1;
            cur = r;
        }
        n
    }

    /// The base type at the end of the arrow chain.
    pub fn target(&self) -> Type {
        self.split().1
    }

    /// Result of applying a term of this type to `n` arguments.
    pub fn apply_n(&self, n: usize) -> Option<Type> {
        let mut cur = self.clone();
        for _ in 0..n {
            cur = cur.as_fun()?.1.clone();
        }
        Some(cur)
    }

    /// Every base type occurring in this type, in first-occurrence order.
    pub fn base_types(&self, out: &mut Vec<Type>) {
        match &*self.0 {
            TypeKind::Base(_) => {
                if !out.contains(self) {
                    out.push(self.clone())
                }
            }
            TypeKind::Fun(a, r) => {
                a.base_types(out);
                r.base_types(out);
            }
        }
    }

    /// Replaces every occurrence of base type `from` by `to`.
    pub fn replace_base(&self, from: &Type, to: &Type) -> Type {
        if self == from {
            return to.clone();
        }
        match &*self.0 {
            TypeKind::Base(_) => self.clone(),
            TypeKind::Fun(a, r) => Type::fun(a.replace_base(from, to), r.replace_base(from, to)),
        }
    }

    /// Structural order, deterministic across runs.
    pub fn cmp_structural(&self, other: &Type) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        if self == other {
            return Equal;
        }
        match (&*self.0, &*other.0) {
            (TypeKind::Base(a), TypeKind::Base(b)) => a.cmp(b),
            (TypeKind::Base(_), TypeKind::Fun(..)) => Less,
            (TypeKind::Fun(..), TypeKind::Base(_)) => Greater,
            (TypeKind::Fun(a1, r1), TypeKind::Fun(a2, r2)) => {
                a1.cmp_structural(a2).then_with(|| r1.cmp_structural(r2))
            }
        }
    }
}

impl PartialEq for Type {
    fn eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Type {}

impl Hash for Type {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.addr().hash(state)
    }
}

/// TPTP syntax: `$i > ($i > $o) > $o`.
impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            TypeKind::Base(n) => write!(f, "{n}"),
            TypeKind::Fun(a, r) => {
                if a.is_fun() {
                    write!(f, "( {a} ) > {r}")
                } else {
                    write!(f, "{a} > {r}")
                }
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
