use super::normalize::{apply_normal, mk_app};
use super::{Term, TermKind, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Argument `i` of the spine.
    Arg(usize),
    /// Body of an abstraction.
    Body,
    /// Head atom of an application.
    Head,
}

/// Path from the root of a term to one of its subterms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<Step>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: Step) -> Position {
        let mut steps = self.0.clone();
        steps.push(step);
        Position(steps)
    }
}

impl Term {
    pub fn subterm_at(&self, pos: &Position) -> Result<Term, TypeError> {
        let mut cur = self.clone();
        for step in &pos.0 {
            cur = match (step, cur.kind()) {
                (Step::Arg(i), TermKind::App(_, args)) if *i < args.len() => args[*i].clone(),
                (Step::Head, TermKind::App(h, _)) => h.clone(),
                (Step::Body, TermKind::Abs(_, b)) => b.clone(),
                _ => return Err(TypeError::InvalidPosition(pos.0.clone())),
            };
        }
        Ok(cur)
    }

    /// `self[r]_pos`. Replacing the head re-reduces the spine.
    pub fn replace_at(&self, pos: &Position, r: Term) -> Result<Term, TypeError> {
        let old = self.subterm_at(pos)?;
        if old.ty() != r.ty() {
            return Err(TypeError::Mismatch {
                expected: old.ty().to_string(),
                found: r.ty().to_string(),
            });
        }
        Ok(replace_rec(self, &pos.0, r))
    }

    /// Every position with its subterm, pre-order. Heads are not listed.
    pub fn positions(&self) -> Vec<(Position, Term)> {
        let mut out = Vec::new();
        collect_positions(self, &mut Vec::new(), &mut out);
        out
    }
}

fn replace_rec(t: &Term, steps: &[Step], r: Term) -> Term {
    let Some((first, rest)) = steps.split_first() else {
        return r;
    };
    match (first, t.kind()) {
        (Step::Arg(i), TermKind::App(h, args)) => {
            let mut args = args.clone();
            args[*i] = replace_rec(&args[*i], rest, r);
            mk_app(h.clone(), args)
        }
        (Step::Head, TermKind::App(h, args)) => {
            let h = replace_rec(h, rest, r);
            apply_normal(h, args.clone())
        }
        (Step::Body, TermKind::Abs(ty, b)) => Term::abs(ty.clone(), replace_rec(b, rest, r)),
        _ => unreachable!("position validated by subterm_at"),
    }
}

fn collect_positions(t: &Term, path: &mut Vec<Step>, out: &mut Vec<(Position, Term)>) {
    out.push((Position(path.clone()), t.clone()));
    match t.kind() {
        TermKind::Abs(_, b) => {
            path.push(Step::Body);
            collect_positions(b, path, out);
            path.pop();
        }
        TermKind::App(_, args) => {
            for (i, a) in args.iter().enumerate() {
                path.push(Step::Arg(i));
                collect_positions(a, path, out);
                path.pop();
            }
        }
        _ => {}
    }
}
