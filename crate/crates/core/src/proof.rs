//! The derivation graph recorded during preprocessing and saturation, and
//! its TSTP rendering.

use std::collections::{BTreeMap, BTreeSet};

use crate::clause::Clause;
use crate::signature::{Signature, Symbol, SymbolKind};
use crate::term::{Term, VarId};
use crate::tptp::printer::{self, clause_var_names, TermPrinter};
use crate::tptp::Role;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    NegConjecture,
    DefExp,
    Miniscope,
    Cnf,
    FuncExt,
    BoolExt,
    Paramod,
    EqFactor,
    PreUni,
    PatternUni,
    Rewrite,
    Simp,
    PrimSubst,
    Inj,
    Instantiate,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::NegConjecture,
        Rule::DefExp,
        Rule::Miniscope,
        Rule::Cnf,
        Rule::FuncExt,
        Rule::BoolExt,
        Rule::Paramod,
        Rule::EqFactor,
        Rule::PreUni,
        Rule::PatternUni,
        Rule::Rewrite,
        Rule::Simp,
        Rule::PrimSubst,
        Rule::Inj,
        Rule::Instantiate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::NegConjecture => "neg_conjecture",
            Rule::DefExp => "defexp_and_simp_and_etaexpand",
            Rule::Miniscope => "miniscope",
            Rule::Cnf => "cnf",
            Rule::FuncExt => "func_ext",
            Rule::BoolExt => "bool_ext",
            Rule::Paramod => "paramod_ordered",
            Rule::EqFactor => "eqfactor_ordered",
            Rule::PreUni => "pre_uni",
            Rule::PatternUni => "pattern_uni",
            Rule::Rewrite => "rewrite",
            Rule::Simp => "simp",
            Rule::PrimSubst => "prim_subst",
            Rule::Inj => "inj",
            Rule::Instantiate => "instantiate",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// SZS status of the conclusion relative to the premises.
    pub fn status(self) -> &'static str {
        match self {
            Rule::NegConjecture => "cth",
            Rule::Cnf | Rule::FuncExt | Rule::Inj => "esa",
            _ => "thm",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Content {
    Formula(Term),
    Clause(Clause),
}

impl Content {
    pub fn as_clause(&self) -> Option<&Clause> {
        match self {
            Content::Clause(c) => Some(c),
            Content::Formula(_) => None,
        }
    }

    pub fn for_each_const(&self, f: &mut impl FnMut(Symbol)) {
        let mut g = |s: Symbol, _: &crate::types::Type| f(s);
        match self {
            Content::Formula(t) => t.for_each_const(&mut g),
            Content::Clause(c) => {
                for l in &c.literals {
                    l.lhs.for_each_const(&mut g);
                    l.rhs.for_each_const(&mut g);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Origin {
    Input {
        name: String,
        role: Role,
    },
    Inference {
        rule: Rule,
        parents: Vec<NodeId>,
        /// Substitution applied to the first parent's variables.
        bindings: Vec<(VarId, Term)>,
    },
}

#[derive(Clone, Debug)]
pub struct Node {
    pub content: Content,
    pub origin: Origin,
    /// Derived (transitively) from the negated conjecture.
    pub conjecture: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Derivation {
    nodes: Vec<Node>,
}

impl Derivation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn input(&mut self, content: Content, name: &str, role: Role) -> NodeId {
        let conjecture = matches!(role, Role::Conjecture | Role::NegatedConjecture);
        self.push(Node {
            content,
            origin: Origin::Input {
                name: name.to_string(),
                role,
            },
            conjecture,
        })
    }

    pub fn infer(&mut self, content: Content, rule: Rule, parents: &[NodeId]) -> NodeId {
        self.infer_with(content, rule, parents, Vec::new())
    }

    pub fn infer_with(
        &mut self,
        content: Content,
        rule: Rule,
        parents: &[NodeId],
        bindings: Vec<(VarId, Term)>,
    ) -> NodeId {
        let conjecture = parents.iter().any(|p| self.node(*p).conjecture);
        self.push(Node {
            content,
            origin: Origin::Inference {
                rule,
                parents: parents.to_vec(),
                bindings,
            },
            conjecture,
        })
    }

    fn push(&mut self, n: Node) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(n);
        id
    }

    pub fn parents(&self, id: NodeId) -> &[NodeId] {
        match &self.node(id).origin {
            Origin::Inference { parents, .. } => parents,
            Origin::Input { .. } => &[],
        }
    }

    /// All ancestors of `goal` (inclusive), in increasing id order. Ids
    /// increase along inferences, so this order is topological.
    pub fn ancestors(&self, goal: NodeId) -> Vec<NodeId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![goal];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend_from_slice(self.parents(n));
            }
        }
        seen.into_iter().collect()
    }
}

/// Input line names keep their original name; every other line is numbered.
fn line_names(d: &Derivation, ids: &[NodeId]) -> BTreeMap<NodeId, String> {
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut names = BTreeMap::new();
    for id in ids {
        if let Origin::Input { name, .. } = &d.node(*id).origin {
            if used.insert(name.clone()) {
                names.insert(*id, name.clone());
            }
        }
    }
    let mut counter = 0u32;
    for id in ids {
        if names.contains_key(id) {
            continue;
        }
        loop {
            counter += 1;
            let n = counter.to_string();
            if used.insert(n.clone()) {
                names.insert(*id, n);
                break;
            }
        }
    }
    names
}

fn content_text(sig: &Signature, c: &Content) -> String {
    match c {
        Content::Formula(t) => printer::formula(sig, t),
        Content::Clause(c) => printer::clause(sig, c),
    }
}

/// Renders the derivation of `goal` as TSTP lines: type declarations of the
/// symbols involved, the definitions used, then the inferences.
pub fn render(
    d: &Derivation,
    goal: NodeId,
    sig: &Signature,
    problem_file: &str,
    definitions: &[(Symbol, Term)],
) -> String {
    let ids = d.ancestors(goal);
    let names = line_names(d, &ids);
    let mut out = String::new();

    let mut syms = BTreeSet::new();
    for id in &ids {
        d.node(*id).content.for_each_const(&mut |s| {
            syms.insert(s);
        });
    }
    // Definitions pull in the symbols of their bodies.
    let mut used_defs = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for (s, body) in definitions {
            if syms.contains(s) && !used_defs.contains(s) {
                used_defs.push(*s);
                body.for_each_const(&mut |c, _| {
                    syms.insert(c);
                });
                changed = true;
            }
        }
    }
    let mut base_types = BTreeSet::new();
    for s in &syms {
        if let Some(ty) = sig.type_of(*s) {
            let mut bs = Vec::new();
            ty.base_types(&mut bs);
            for b in bs {
                if let Some(n) = b.base_name() {
                    if n != "$i" && n != "$o" {
                        base_types.insert(n.to_string());
                    }
                }
            }
        }
    }
    for b in &base_types {
        out.push_str(&format!(
            "thf({}_type,type,\n    {}: $tType ).\n\n",
            b.trim_matches('\''),
            printer::quote_name(b)
        ));
    }
    let def_order: Vec<Symbol> = definitions
        .iter()
        .map(|(s, _)| *s)
        .filter(|s| used_defs.contains(s))
        .collect();
    let mut declared = BTreeSet::new();
    let mut declare = |s: Symbol, out: &mut String| {
        if declared.insert(s) {
            let info = sig.info(s);
            if let Some(ty) = &info.ty {
                out.push_str(&format!(
                    "thf({}_type,type,\n    {}: {ty} ).\n\n",
                    info.name.trim_matches('\''),
                    printer::quote_name(&info.name)
                ));
            }
        }
    };
    // Input symbols come before the definitions, introduced ones after.
    for s in &syms {
        if sig.kind(*s) == SymbolKind::User && !def_order.contains(s) {
            declare(*s, &mut out);
        }
    }
    for (s, body) in definitions {
        if !def_order.contains(s) {
            continue;
        }
        declare(*s, &mut out);
        let eq = crate::formula::eq(
            Term::constant(*s, sig.type_of(*s).expect("typed").clone()),
            body.clone(),
        );
        out.push_str(&format!(
            "thf({}_def,definition,\n    {} ).\n\n",
            sig.name(*s).trim_matches('\''),
            printer::formula(sig, &eq)
        ));
    }
    for s in &syms {
        if !s.is_logical() && sig.kind(*s) != SymbolKind::Logical {
            declare(*s, &mut out);
        }
    }
    for id in &ids {
        let node = d.node(*id);
        let name = printer::quote_name_or_number(&names[id]);
        let body = content_text(sig, &node.content);
        let (role, annotation) = match &node.origin {
            Origin::Input { name: n, role } => (
                role.as_str().to_string(),
                format!("file('{problem_file}',{})", printer::quote_name_or_number(n)),
            ),
            Origin::Inference {
                rule,
                parents,
                bindings,
            } => {
                let role = if *rule == Rule::NegConjecture {
                    "negated_conjecture"
                } else {
                    "plain"
                };
                let mut ps: Vec<String> = parents
                    .iter()
                    .map(|p| printer::quote_name_or_number(&names[p]))
                    .collect();
                if !bindings.is_empty() && !parents.is_empty() {
                    ps[0] = format!("{}:[{}]", ps[0], render_bindings(d, parents[0], bindings, sig));
                }
                (
                    role.to_string(),
                    format!(
                        "inference({},[status({})],[{}])",
                        rule.name(),
                        rule.status(),
                        ps.join(",")
                    ),
                )
            }
        };
        out.push_str(&format!("thf({name},{role},\n    {body},\n    {annotation}).\n\n"));
    }
    out
}

fn render_bindings(d: &Derivation, parent: NodeId, bindings: &[(VarId, Term)], sig: &Signature) -> String {
    let names = match &d.node(parent).content {
        Content::Clause(c) => clause_var_names(c),
        Content::Formula(t) => TermPrinter::for_term(sig, t).free_names(),
    };
    let offset = names.len();
    bindings
        .iter()
        .filter_map(|(v, t)| {
            let vn = names.get(v)?;
            // Variables of the instantiated term that the parent does not
            // know get names after the parent's own.
            let mut all = names.clone();
            for (w, _) in t.free_vars() {
                let k = all.len();
                all.entry(w).or_insert_with(|| printer::var_name(k));
            }
            let k = all.len();
            let mut p = TermPrinter::new(sig, all).with_offset(k.max(offset));
            Some(format!("bind({vn},$thf({}))", p.bare(t)))
        })
        .collect::<Vec<_>>()
        .join(",")
}
