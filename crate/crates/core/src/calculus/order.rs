//! A Knuth-Bendix-like comparison of terms. It is only a heuristic: it
//! orients unit equations for rewriting and ranks paramodulation sides.

use std::cmp::Ordering;

use crate::term::{Term, TermKind, VarId};

fn var_counts(t: &Term, out: &mut Vec<(VarId, u32)>) {
    match t.kind() {
        TermKind::Var(v) => match out.iter_mut().find(|(w, _)| w == v) {
            Some((_, n)) => *n += 1,
            None => out.push((*v, 1)),
        },
        TermKind::Abs(_, b) => var_counts(b, out),
        TermKind::App(h, args) => {
            var_counts(h, out);
            for a in args {
                var_counts(a, out);
            }
        }
        _ => {}
    }
}

/// Every variable occurs in `s` at least as often as in `t`.
fn vars_dominate(s: &Term, t: &Term) -> bool {
    let (mut vs, mut vt) = (Vec::new(), Vec::new());
    var_counts(s, &mut vs);
    var_counts(t, &mut vt);
    vt.iter()
        .all(|(v, n)| vs.iter().any(|(w, m)| w == v && m >= n))
}

/// Head precedence used to break weight ties.
fn head_rank(t: &Term) -> Option<(u8, u32)> {
    match t.kind() {
        TermKind::Const(c) => Some((2, c.0)),
        TermKind::Bound(i) => Some((1, *i)),
        TermKind::Abs(..) => Some((0, 0)),
        TermKind::Var(_) => None,
        TermKind::App(h, _) => head_rank(h),
    }
}

fn greater(s: &Term, t: &Term) -> bool {
    if s == t || !vars_dominate(s, t) {
        return false;
    }
    match s.size().cmp(&t.size()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let (Some(hs), Some(ht)) = (head_rank(s), head_rank(t)) else {
                return false;
            };
            match hs.cmp(&ht) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    let (sa, ta) = (spine(s), spine(t));
                    for (a, b) in sa.iter().zip(&ta) {
                        if a != b {
                            return greater(a, b);
                        }
                    }
                    sa.len() > ta.len()
                }
            }
        }
    }
}

fn spine(t: &Term) -> Vec<Term> {
    match t.kind() {
        TermKind::Abs(_, b) => vec![b.clone()],
        _ => t.args().to_vec(),
    }
}

/// `Some(Greater)` when `s ≻ t`, `Some(Less)` when `t ≻ s`, `Some(Equal)`
/// for identical terms and `None` when incomparable.
pub fn compare(s: &Term, t: &Term) -> Option<Ordering> {
    if s == t {
        Some(Ordering::Equal)
    } else if greater(s, t) {
        Some(Ordering::Greater)
    } else if greater(t, s) {
        Some(Ordering::Less)
    } else {
        None
    }
}
