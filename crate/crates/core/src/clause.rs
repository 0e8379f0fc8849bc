//! Literals as signed equations and clauses as literal multisets.

use std::fmt;

use crate::formula::{self, top};
use crate::term::{Substitution, Term, TypeError, VarId};
use crate::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn is_pos(self) -> bool {
        self == Polarity::Pos
    }
}

/// `[lhs ≃ rhs]^pol`. A formula literal `[s]^α` is stored as `[s ≃ $true]^α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub pol: Polarity,
}

impl Literal {
    pub fn try_new(lhs: Term, rhs: Term, pol: Polarity) -> Result<Literal, TypeError> {
        if lhs.ty() != rhs.ty() {
            return Err(TypeError::Mismatch {
                expected: lhs.ty().to_string(),
                found: rhs.ty().to_string(),
            });
        }
        // `$true` always sits on the right.
        let (lhs, rhs) = if formula::is_top(&lhs) && !formula::is_top(&rhs) {
            (rhs, lhs)
        } else {
            (lhs, rhs)
        };
        Ok(Literal { lhs, rhs, pol })
    }

    pub fn new(lhs: Term, rhs: Term, pol: Polarity) -> Literal {
        Literal::try_new(lhs, rhs, pol).expect("equation sides of equal type")
    }

    pub fn eq(lhs: Term, rhs: Term, pol: Polarity) -> Literal {
        Literal::new(lhs, rhs, pol)
    }

    /// `[s]^pol`, shorthand for `[s ≃ $true]^pol`.
    pub fn prop(s: Term, pol: Polarity) -> Literal {
        Literal::new(s, top(), pol)
    }

    pub fn is_pos(&self) -> bool {
        self.pol.is_pos()
    }

    pub fn ty(&self) -> &Type {
        self.lhs.ty()
    }

    /// Formula shorthand: one side is `$true`.
    pub fn is_prop(&self) -> bool {
        formula::is_top(&self.rhs)
    }

    /// Negative literals double as unification constraints.
    pub fn is_unification_constraint(&self) -> bool {
        !self.is_pos()
    }

    pub fn is_flex_flex(&self) -> bool {
        !self.is_pos() && self.lhs.is_flex() && self.rhs.is_flex()
    }

    /// Both sides identical.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Equality modulo symmetry of `≃`.
    pub fn same_as(&self, other: &Literal) -> bool {
        self.pol == other.pol
            && ((self.lhs == other.lhs && self.rhs == other.rhs)
                || (self.lhs == other.rhs && self.rhs == other.lhs))
    }

    pub fn flipped(&self) -> Literal {
        Literal {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            pol: self.pol.flip(),
        }
    }

    pub fn swapped(&self) -> Literal {
        Literal {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            pol: self.pol,
        }
    }

    pub fn weight(&self) -> u64 {
        self.lhs.size() as u64 + self.rhs.size() as u64
    }

    pub fn apply(&self, s: &Substitution) -> Literal {
        Literal::new(s.apply(&self.lhs), s.apply(&self.rhs), self.pol)
    }

    pub fn map_sides(&self, mut f: impl FnMut(&Term) -> Term) -> Literal {
        Literal::new(f(&self.lhs), f(&self.rhs), self.pol)
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_pos() { "tt" } else { "ff" };
        write!(f, "[{:?} ≃ {:?}]^{sign}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub u32);

/// A multiset of literals; free variables are implicitly universal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause { literals }
    }

    pub fn empty() -> Clause {
        Clause::new(Vec::new())
    }

    pub fn unit(l: Literal) -> Clause {
        Clause::new(vec![l])
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// The empty clause: no literals, or only flex-flex constraints.
    pub fn is_empty_clause(&self) -> bool {
        self.literals.iter().all(Literal::is_flex_flex)
    }

    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    pub fn weight(&self) -> u64 {
        self.literals.iter().map(Literal::weight).sum()
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<(VarId, Type)> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.lhs.collect_vars(&mut out);
            l.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn apply(&self, s: &Substitution) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.apply(s)).collect())
    }

    /// Renames the free variables to a fixed sequence in first-occurrence
    /// order, so variants with the same literal order become equal.
    pub fn canonical(&self) -> Clause {
        let mut s = Substitution::new();
        for (k, (v, ty)) in self.free_vars().into_iter().enumerate() {
            let w = VarId(u32::MAX - k as u32);
            s.insert(v, &ty, Term::var(w, ty.clone()).eta_long())
                .expect("same type");
        }
        self.apply(&s)
    }

    /// A variant with every variable replaced by a fresh one.
    pub fn fresh_variant(&self) -> (Clause, Substitution) {
        let mut s = Substitution::new();
        for (v, ty) in self.free_vars() {
            s.insert(v, &ty, Term::fresh_var(ty.clone()).eta_long())
                .expect("same type");
        }
        (self.apply(&s), s)
    }

    pub fn without(&self, indices: &[usize]) -> Vec<Literal> {
        self.literals
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// Contains `[s ≃ s]^tt` or a complementary pair.
    pub fn is_tautology(&self) -> bool {
        for (i, l) in self.literals.iter().enumerate() {
            if l.is_pos() && l.is_trivial() {
                return true;
            }
            if l.is_pos() && l.is_prop() && formula::is_top(&l.lhs) {
                return true;
            }
            if !l.is_pos() && l.is_prop() && formula::is_bot(&l.lhs) {
                return true;
            }
            if self.literals[i + 1..].iter().any(|m| m.same_as(&l.flipped())) {
                return true;
            }
        }
        false
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.literals).finish()
    }
}
