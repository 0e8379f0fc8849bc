use super::{intern, Term, TermKind, VarId};

/// Application node with a precomputed type; the caller guarantees typing.
pub(super) fn mk_app(head: Term, args: Vec<Term>) -> Term {
    if args.is_empty() {
        return head;
    }
    let ty = head
        .ty()
        .apply_n(args.len())
        .expect("application within arity");
    match head.kind() {
        TermKind::App(h, prev) => {
            let mut spine = prev.clone();
            spine.extend(args);
            intern(TermKind::App(h.clone(), spine), ty)
        }
        _ => intern(TermKind::App(head, args), ty),
    }
}

pub(super) fn shift(t: &Term, d: i64, cutoff: u32) -> Term {
    if d == 0 || t.loose() <= cutoff {
        return t.clone();
    }
    match t.kind() {
        TermKind::Bound(i) => Term::bound((*i as i64 + d) as u32, t.ty().clone()),
        TermKind::Abs(ty, b) => Term::abs(ty.clone(), shift(b, d, cutoff + 1)),
        TermKind::App(h, args) => intern(
            TermKind::App(
                shift(h, d, cutoff),
                args.iter().map(|a| shift(a, d, cutoff)).collect(),
            ),
            t.ty().clone(),
        ),
        _ => t.clone(),
    }
}

/// Simultaneously replaces loose indices `depth .. depth+n` by `args`
/// (index `depth` gets the last argument) and lowers higher indices by `n`.
/// Redexes created at replaced heads are reduced hereditarily.
pub(super) fn subst_bound(t: &Term, depth: u32, args: &[Term]) -> Term {
    if t.loose() <= depth {
        return t.clone();
    }
    let n = args.len() as u32;
    match t.kind() {
        TermKind::Bound(i) => {
            let j = i - depth;
            if j < n {
                shift(&args[(n - 1 - j) as usize], depth as i64, 0)
            } else {
                Term::bound(i - n, t.ty().clone())
            }
        }
        TermKind::Abs(ty, b) => Term::abs(ty.clone(), subst_bound(b, depth + 1, args)),
        TermKind::App(h, spine) => {
            let spine: Vec<Term> = spine.iter().map(|a| subst_bound(a, depth, args)).collect();
            match h.kind() {
                TermKind::Bound(i) if *i >= depth && i - depth < n => {
                    let replacement = shift(&args[(n - 1 - (i - depth)) as usize], depth as i64, 0);
                    apply_normal(replacement, spine)
                }
                _ => mk_app(subst_bound(h, depth, args), spine),
            }
        }
        _ => t.clone(),
    }
}

pub(super) fn apply_normal(f: Term, args: Vec<Term>) -> Term {
    if args.is_empty() {
        return f;
    }
    match f.kind() {
        TermKind::Abs(..) => {
            let mut body = &f;
            let mut k = 0;
            while k < args.len() {
                match body.kind() {
                    TermKind::Abs(_, b) => {
                        body = b;
                        k += 1;
                    }
                    _ => break,
                }
            }
            let reduced = subst_bound(body, 0, &args[..k]);
            apply_normal(reduced, args[k..].to_vec())
        }
        _ => mk_app(f, args),
    }
}

pub(super) fn beta_normalize(t: &Term) -> Term {
    match t.kind() {
        TermKind::Abs(ty, b) => {
            let nb = beta_normalize(b);
            if nb == *b {
                t.clone()
            } else {
                Term::abs(ty.clone(), nb)
            }
        }
        TermKind::App(h, args) => {
            let nh = beta_normalize(h);
            let nargs: Vec<Term> = args.iter().map(beta_normalize).collect();
            if nh == *h && nargs == *args && !matches!(nh.kind(), TermKind::Abs(..)) {
                return t.clone();
            }
            apply_normal(nh, nargs)
        }
        _ => t.clone(),
    }
}

pub(super) fn eta_long(t: &Term) -> Term {
    match t.kind() {
        TermKind::Abs(ty, b) => {
            let nb = eta_long(b);
            if nb == *b {
                t.clone()
            } else {
                Term::abs(ty.clone(), nb)
            }
        }
        _ => {
            let head = t.head().clone();
            let args: Vec<Term> = t.args().iter().map(eta_long).collect();
            let (missing, _) = t.ty().split();
            if missing.is_empty() {
                if args.as_slice() == t.args() {
                    return t.clone();
                }
                return mk_app(head, args);
            }
            let m = missing.len() as u32;
            let head = shift(&head, m as i64, 0);
            let mut spine: Vec<Term> = args.iter().map(|a| shift(a, m as i64, 0)).collect();
            for (i, ty) in missing.iter().enumerate() {
                spine.push(eta_long(&Term::bound(m - 1 - i as u32, ty.clone())));
            }
            Term::abs_many(&missing, mk_app(head, spine))
        }
    }
}

pub(super) fn abstract_var(t: &Term, v: VarId, depth: u32) -> Term {
    if !t.contains_var(v) {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var(_) => Term::bound(depth, t.ty().clone()),
        TermKind::Abs(ty, b) => Term::abs(ty.clone(), abstract_var(b, v, depth + 1)),
        TermKind::App(h, args) => mk_app(
            abstract_var(h, v, depth),
            args.iter().map(|a| abstract_var(a, v, depth)).collect(),
        ),
        _ => t.clone(),
    }
}

pub(super) fn mentions_below(t: &Term, k: u32, depth: u32) -> bool {
    if t.loose() <= depth {
        return false;
    }
    match t.kind() {
        TermKind::Bound(i) => *i >= depth && *i < depth + k,
        TermKind::Abs(_, b) => mentions_below(b, k, depth + 1),
        TermKind::App(h, args) => {
            mentions_below(h, k, depth) || args.iter().any(|a| mentions_below(a, k, depth))
        }
        _ => false,
    }
}

/// `λx1..xk. h a1 .. an x1 .. xk` with the `xi` not free elsewhere
/// becomes `h a1 .. an`; `None` if no binder can be removed.
pub(super) fn eta_contract_top(t: &Term) -> Option<Term> {
    let (binders, body) = t.strip_abs();
    let k = binders.len() as u32;
    let args = body.args();
    let n = args.len();
    let mut drop = 0u32;
    // Contract as many trailing binders as possible.
    while drop < k && (drop as usize) < n {
        let a = &args[n - 1 - drop as usize];
        if a.eta_bound_index() != Some(drop) {
            break;
        }
        drop += 1;
    }
    if drop == 0 {
        return None;
    }
    let keep = &args[..n - drop as usize];
    if mentions_below(body.head(), drop, 0) || keep.iter().any(|a| mentions_below(a, drop, 0)) {
        return None;
    }
    let head = shift(body.head(), -(drop as i64), 0);
    let keep: Vec<Term> = keep.iter().map(|a| shift(a, -(drop as i64), 0)).collect();
    let inner = mk_app(head, keep);
    Some(Term::abs_many(&binders[..(k - drop) as usize], inner))
}
