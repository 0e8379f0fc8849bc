use std::collections::BTreeMap;

use super::normalize::{apply_normal, mk_app};
use super::{Term, TermKind, TypeError, VarId};
use crate::types::Type;

/// Finite map from free variables to closed, β-normal η-long terms.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<VarId, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: VarId, ty: &Type, t: Term) -> Result<Self, TypeError> {
        let mut s = Self::new();
        s.insert(v, ty, t)?;
        Ok(s)
    }

    /// Adds the binding `v ↦ t`; `ty` is the type of `v`.
    pub fn insert(&mut self, v: VarId, ty: &Type, t: Term) -> Result<(), TypeError> {
        if t.ty() != ty {
            return Err(TypeError::Mismatch {
                expected: ty.to_string(),
                found: t.ty().to_string(),
            });
        }
        assert!(t.is_closed(), "binding contains loose bound variables");
        self.map.insert(v, t.normalize());
        Ok(())
    }

    pub fn get(&self, v: VarId) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Term)> {
        self.map.iter().map(|(v, t)| (*v, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = VarId> + '_ {
        self.map.keys().copied()
    }

    /// Capture-free application followed by hereditary β-reduction.
    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() || !t.has_vars() {
            return t.clone();
        }
        match t.kind() {
            TermKind::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            TermKind::Abs(ty, b) => Term::abs(ty.clone(), self.apply(b)),
            TermKind::App(h, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.apply(a)).collect();
                match h.kind() {
                    TermKind::Var(v) if self.map.contains_key(v) => {
                        apply_normal(self.map[v].clone(), args)
                    }
                    _ => mk_app(h.clone(), args),
                }
            }
            _ => t.clone(),
        }
    }

    /// The substitution that first applies `self` and then `after`.
    pub fn then(&self, after: &Substitution) -> Substitution {
        let mut map: BTreeMap<VarId, Term> = self
            .map
            .iter()
            .map(|(v, t)| (*v, after.apply(t)))
            .collect();
        for (v, t) in &after.map {
            map.entry(*v).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }

    /// Drops bindings whose variable is not in `keep`.
    pub fn restrict(&self, keep: &[VarId]) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Debug for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.map.iter().map(|(v, t)| (v.0, t)))
            .finish()
    }
}
