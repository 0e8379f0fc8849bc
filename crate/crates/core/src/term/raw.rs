use super::{Term, TypeError, VarId};
use crate::signature::Symbol;
use crate::types::Type;

/// Name-carrying term, the input to [`RawTerm::intern`].
#[derive(Clone, Debug, PartialEq)]
pub enum RawTerm {
    Const(Symbol, Type),
    Free(VarId, Type),
    /// Reference to an enclosing binder by name.
    Bound(String),
    Lam(String, Type, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
}

impl RawTerm {
    pub fn lam(name: &str, ty: Type, body: RawTerm) -> RawTerm {
        RawTerm::Lam(name.to_string(), ty, Box::new(body))
    }

    pub fn app(f: RawTerm, a: RawTerm) -> RawTerm {
        RawTerm::App(Box::new(f), Box::new(a))
    }

    pub fn bound(name: &str) -> RawTerm {
        RawTerm::Bound(name.to_string())
    }

    /// Converts to the canonical nameless representative, type-checking
    /// along the way. No reduction is performed.
    pub fn intern(&self) -> Result<Term, TypeError> {
        let mut env = Vec::new();
        self.intern_in(&mut env)
    }

    fn intern_in(&self, env: &mut Vec<(String, Type)>) -> Result<Term, TypeError> {
        match self {
            RawTerm::Const(s, ty) => Ok(Term::constant(*s, ty.clone())),
            RawTerm::Free(v, ty) => Ok(Term::var(*v, ty.clone())),
            RawTerm::Bound(name) => {
                let pos = env
                    .iter()
                    .rposition(|(n, _)| n == name)
                    .ok_or_else(|| TypeError::Mismatch {
                        expected: "bound variable".into(),
                        found: format!("unbound name {name}"),
                    })?;
                let index = (env.len() - 1 - pos) as u32;
                Ok(Term::bound(index, env[pos].1.clone()))
            }
            RawTerm::Lam(name, ty, body) => {
                env.push((name.clone(), ty.clone()));
                let b = body.intern_in(env);
                env.pop();
                Ok(Term::abs(ty.clone(), b?))
            }
            RawTerm::App(f, a) => {
                let f = f.intern_in(env)?;
                let a = a.intern_in(env)?;
                Term::try_app_raw(f, vec![a])
            }
        }
    }
}
