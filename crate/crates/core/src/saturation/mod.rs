//! Preprocessing and the given-clause loop.
//!
//! Input formulas are turned into clauses (negated conjecture, definition
//! expansion, simplification, miniscoping, clausification) and the clauses
//! are saturated with a DISCOUNT-style loop over an unprocessed set `U`
//! and a processed set `P`. Every clause carries a derivation node, so a
//! refutation can be rendered and replayed.

pub mod replay;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use crate::calculus::{self, Conclusion, PsHeads, Simplified};
use crate::clause::{Clause, Literal, Polarity};
use crate::cnf::{self, DefinitionError, Definitions, PreprocessConfig};
use crate::formula;
use crate::proof::{self, Content, Derivation, NodeId, Rule};
use crate::signature::{Signature, Symbol};
use crate::subsumption::subsumes;
use crate::term::Term;
use crate::tptp::{Problem, Role, SzsStatus};
use crate::types::Type;
use crate::unify;

#[derive(Debug, Clone)]
pub struct ProverConfig {
    pub timeout: Duration,
    /// Depth budget of pre-unification.
    pub unif_depth: u32,
    /// Unifiers kept per inference.
    pub unifiers: usize,
    /// Primitive substitutions allowed along one lineage.
    pub ps_limit: u32,
    /// Weight-based picks per age-based pick.
    pub weight_picks: u32,
    /// Enables the injectivity rule.
    pub inj: bool,
    /// Generated clauses heavier than this are dropped.
    pub max_weight: u64,
    /// Replays a refutation before reporting it.
    pub check_proofs: bool,
    pub preprocess: PreprocessConfig,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            timeout: Duration::from_secs(60),
            unif_depth: unify::DEFAULT_DEPTH,
            unifiers: unify::DEFAULT_UNIFIERS,
            ps_limit: 3,
            weight_picks: 5,
            inj: true,
            max_weight: 120,
            check_proofs: true,
            preprocess: PreprocessConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub iterations: u64,
    pub generated: u64,
    pub processed: usize,
}

/// The result of a run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: SzsStatus,
    pub derivation: Derivation,
    /// The empty clause, for refutations.
    pub refutation: Option<NodeId>,
    pub signature: Signature,
    /// Definitions in input form, for proof output.
    pub definitions: Vec<(Symbol, Term)>,
    pub stats: Stats,
    /// Set when a refutation was found but failed replay.
    pub replay_error: Option<String>,
}

impl Outcome {
    /// The TSTP refutation, without the SZS output markers.
    pub fn proof(&self, problem_file: &str) -> Option<String> {
        let goal = self.refutation?;
        if !self.status.is_refutation() {
            return None;
        }
        Some(proof::render(
            &self.derivation,
            goal,
            &self.signature,
            problem_file,
            &self.definitions,
        ))
    }
}

/// What the replay checker needs to recompute preprocessing steps.
#[derive(Debug, Clone)]
pub struct PreprocessContext {
    pub definitions: Definitions,
    pub config: PreprocessConfig,
}

impl PreprocessContext {
    /// The definition-expansion and simplification step.
    pub fn expand(&self, t: &Term) -> Term {
        let t = if self.config.expand_definitions {
            self.definitions.expand(t)
        } else {
            t.clone()
        };
        cnf::simplify(&t, self.config.replace_defined_eq)
    }
}

struct Entry {
    clause: Clause,
    node: NodeId,
    ps: u32,
    /// Removed by backward subsumption.
    dead: bool,
}

enum Stop {
    Refutation(NodeId),
    Timeout,
}

struct State<'a> {
    config: &'a ProverConfig,
    sig: Signature,
    d: Derivation,
    entries: Vec<Entry>,
    by_weight: BinaryHeap<Reverse<(u64, usize)>>,
    by_age: VecDeque<usize>,
    selected: Vec<bool>,
    processed: Vec<usize>,
    /// Processed unit clauses, used for simplification.
    units: Vec<usize>,
    seen: HashSet<Clause>,
    inj_done: Vec<Symbol>,
    ps_heads: PsHeads,
    deadline: Instant,
    picks: u32,
    /// Some inference was cut off or dropped, so saturation proves nothing.
    incomplete: bool,
    stats: Stats,
}

/// Runs preprocessing and saturation on a parsed problem.
pub fn prove(problem: &Problem, config: &ProverConfig) -> Result<Outcome, DefinitionError> {
    let start = Instant::now();
    let mut sig = problem.signature.clone();

    let mut raw_defs = Vec::new();
    let mut others = Vec::new();
    for f in &problem.formulas {
        match (f.role, cnf::as_definition(&f.formula)) {
            (Role::Definition, Some(def)) => raw_defs.push(def),
            _ => others.push(f),
        }
    }
    let names = sig.clone();
    let definitions = Definitions::new(raw_defs.clone(), |s| names.name(s).to_string())?;
    let ctx = PreprocessContext {
        definitions,
        config: config.preprocess.clone(),
    };

    let ps_types = ps_types(problem);
    let mut st = State {
        config,
        sig: Signature::new(),
        d: Derivation::new(),
        entries: Vec::new(),
        by_weight: BinaryHeap::new(),
        by_age: VecDeque::new(),
        selected: Vec::new(),
        processed: Vec::new(),
        units: Vec::new(),
        seen: HashSet::new(),
        inj_done: Vec::new(),
        ps_heads: PsHeads::new(&ps_types),
        deadline: start + config.timeout,
        picks: 0,
        incomplete: false,
        stats: Stats::default(),
    };
    std::mem::swap(&mut st.sig, &mut sig);

    let has_conjecture = problem.formulas.iter().any(|f| {
        matches!(f.role, Role::Conjecture | Role::NegatedConjecture)
    });
    let mut stop = None;
    for f in others {
        let mut node = st.d.input(Content::Formula(f.formula.clone()), &f.name, f.role);
        let mut t = f.formula.clone();
        if f.role == Role::Conjecture {
            t = formula::not(t);
            node = st.d.infer(Content::Formula(t.clone()), Rule::NegConjecture, &[node]);
        }
        let e = ctx.expand(&t);
        if e != t {
            t = e;
            node = st.d.infer(Content::Formula(t.clone()), Rule::DefExp, &[node]);
        }
        if ctx.config.miniscope {
            let m = cnf::miniscope(&t);
            if m != t {
                t = m;
                node = st.d.infer(Content::Formula(t.clone()), Rule::Miniscope, &[node]);
            }
        }
        let unit = Clause::unit(Literal::prop(t, Polarity::Pos));
        for c in cnf::clausify(&unit, &mut st.sig, ctx.config.definitional_threshold) {
            let n = st.d.infer(Content::Clause(c.clone()), Rule::Cnf, &[node]);
            if let Some(e) = st.process(c, n, 0) {
                stop = Some(Stop::Refutation(e));
                break;
            }
        }
        if stop.is_some() {
            break;
        }
    }
    let stop = match stop {
        Some(s) => Some(s),
        None => st.run(),
    };

    let (mut status, refutation) = match stop {
        Some(Stop::Refutation(e)) => {
            let status = if st.d.node(e).conjecture {
                SzsStatus::Theorem
            } else if has_conjecture {
                SzsStatus::ContradictoryAxioms
            } else {
                SzsStatus::Unsatisfiable
            };
            (status, Some(e))
        }
        Some(Stop::Timeout) => (SzsStatus::Timeout, None),
        None => {
            let decided = !st.incomplete && st.processed.iter().all(|i| is_propositional(&st.entries[*i].clause));
            let status = match (decided, has_conjecture) {
                (true, true) => SzsStatus::CounterSatisfiable,
                (true, false) => SzsStatus::Satisfiable,
                (false, _) => SzsStatus::GaveUp,
            };
            (status, None)
        }
    };

    let mut replay_error = None;
    if let (Some(goal), true) = (refutation, config.check_proofs) {
        if let Err(e) = replay::check(&st.d, goal, &st.sig, &ctx, &st.ps_heads) {
            replay_error = Some(e);
            status = SzsStatus::GaveUp;
        }
    }
    st.stats.processed = st.processed.len();
    Ok(Outcome {
        status,
        derivation: st.d,
        refutation,
        signature: st.sig,
        definitions: raw_defs,
        stats: st.stats,
        replay_error,
    })
}

/// Base types of the problem other than `o`, in declaration order.
fn ps_types(problem: &Problem) -> Vec<Type> {
    let mut out = vec![Type::i()];
    for name in problem.signature.base_types() {
        let ty = Type::base(name);
        if !ty.is_o() && !out.contains(&ty) {
            out.push(ty);
        }
    }
    out
}

/// Ground, and every literal relates propositional atoms or truth values.
fn is_propositional(c: &Clause) -> bool {
    let atomic = |t: &Term| {
        calculus::is_propositional_atom(t) || formula::is_top(t) || formula::is_bot(t)
    };
    c.is_ground() && c.literals.iter().all(|l| atomic(&l.lhs) && atomic(&l.rhs))
}

impl State<'_> {
    fn timed_out(&self) -> bool {
        Instant::now() >= self.deadline
    }

    /// Simplifies, renormalizes and inserts a new clause into `U`. Returns
    /// the node of an empty clause if one arises.
    fn process(&mut self, clause: Clause, node: NodeId, ps: u32) -> Option<NodeId> {
        let mut todo = vec![(clause, node)];
        while let Some((mut c, mut node)) = todo.pop() {
            match calculus::simplify(&c) {
                Simplified::Tautology => continue,
                Simplified::Unchanged => {}
                Simplified::Changed(d, b) => {
                    node = self.d.infer_with(Content::Clause(d.clone()), Rule::Simp, &[node], b);
                    c = d;
                }
            }
            if !cnf::is_normal(&c) {
                let threshold = self.config.preprocess.definitional_threshold;
                for d in cnf::clausify(&c, &mut self.sig, threshold).into_iter().rev() {
                    let n = self.d.infer(Content::Clause(d.clone()), Rule::Cnf, &[node]);
                    todo.push((d, n));
                }
                continue;
            }
            if self.config.inj {
                if let Some(f) = calculus::injectivity_symbol(&c) {
                    if !self.inj_done.contains(&f) {
                        self.inj_done.push(f);
                        if let Some((_, d)) = calculus::inj(&c, &mut self.sig) {
                            let n = self.d.infer(Content::Clause(d.clone()), Rule::Inj, &[node]);
                            todo.push((d, n));
                        }
                    }
                }
            }
            if let Some(d) = calculus::func_ext(&c, &mut self.sig) {
                let n = self.d.infer(Content::Clause(d.clone()), Rule::FuncExt, &[node]);
                todo.push((d, n));
                continue;
            }
            if let Some((d, unit)) = self.simplify_by_units(&c) {
                let n = self.d.infer(Content::Clause(d.clone()), Rule::Rewrite, &[node, unit]);
                todo.push((d, n));
                continue;
            }
            if c.is_empty_clause() {
                return Some(node);
            }
            if c.weight() > self.config.max_weight {
                self.incomplete = true;
                continue;
            }
            if !self.seen.insert(c.canonical()) || self.subsumed_by_p(&c) {
                continue;
            }
            let idx = self.entries.len();
            self.by_weight.push(Reverse((c.weight(), idx)));
            self.by_age.push_back(idx);
            self.selected.push(false);
            self.entries.push(Entry {
                clause: c,
                node,
                ps,
                dead: false,
            });
        }
        None
    }

    /// One unit-cutting or rewriting step with a processed unit.
    fn simplify_by_units(&self, c: &Clause) -> Option<(Clause, NodeId)> {
        for &u in &self.units {
            let e = &self.entries[u];
            if e.dead {
                continue;
            }
            if let Some(d) = calculus::unit_cut(c, &e.clause) {
                return Some((d, e.node));
            }
            if let Some(rule) = calculus::rewrite_rule(&e.clause) {
                if let Some(d) = calculus::rewrite_step(c, &rule) {
                    return Some((d, e.node));
                }
            }
        }
        None
    }

    fn subsumed_by_p(&self, c: &Clause) -> bool {
        self.processed.iter().any(|&i| {
            let e = &self.entries[i];
            !e.dead && e.clause.len() <= c.len() && subsumes(&e.clause, c)
        })
    }

    fn select(&mut self) -> Option<usize> {
        loop {
            self.picks += 1;
            let by_age = self.picks.is_multiple_of(self.config.weight_picks + 1);
            let idx = if by_age {
                self.by_age.pop_front()
            } else {
                self.by_weight.pop().map(|Reverse((_, i))| i)
            };
            // One queue can run dry only if the other is also empty.
            let idx = idx?;
            if !self.selected[idx] {
                self.selected[idx] = true;
                return Some(idx);
            }
        }
    }

    fn run(&mut self) -> Option<Stop> {
        loop {
            if self.timed_out() {
                return Some(Stop::Timeout);
            }
            let g = self.select()?;
            self.stats.iterations += 1;
            let (clause, node, ps) = {
                let e = &self.entries[g];
                (e.clause.clone(), e.node, e.ps)
            };
            if self.subsumed_by_p(&clause) {
                continue;
            }
            if let Some((d, unit)) = self.simplify_by_units(&clause) {
                let n = self.d.infer(Content::Clause(d.clone()), Rule::Rewrite, &[node, unit]);
                if let Some(e) = self.process(d, n, ps) {
                    return Some(Stop::Refutation(e));
                }
                continue;
            }
            for &i in &self.processed {
                if subsumes(&clause, &self.entries[i].clause) {
                    self.entries[i].dead = true;
                }
            }
            self.processed.retain(|&i| !self.entries[i].dead);
            self.units.retain(|&i| !self.entries[i].dead);
            self.processed.push(g);
            if clause.is_unit() {
                self.units.push(g);
            }
            if let Err(stop) = self.generate(g) {
                return Some(stop);
            }
        }
    }

    /// All generating inferences between the given clause and `P`.
    fn generate(&mut self, g: usize) -> Result<(), Stop> {
        let (clause, node, ps) = {
            let e = &self.entries[g];
            (e.clause.clone(), e.node, e.ps)
        };
        let partners: Vec<usize> = self.processed.clone();
        for p in partners {
            if self.timed_out() {
                return Err(Stop::Timeout);
            }
            let (other, onode, ops) = {
                let e = &self.entries[p];
                if e.dead {
                    continue;
                }
                (e.clause.clone(), e.node, e.ps)
            };
            let lineage = ps.max(ops);
            for c in calculus::para(&clause, &other) {
                self.conclude(c, Rule::Paramod, &[node, onode], lineage)?;
            }
            if p != g {
                for c in calculus::para(&other, &clause) {
                    self.conclude(c, Rule::Paramod, &[onode, node], lineage)?;
                }
            }
        }
        for c in calculus::eqfac(&clause) {
            self.conclude(c, Rule::EqFactor, &[node], ps)?;
        }
        for c in calculus::bool_ext(&clause) {
            self.conclude(c, Rule::BoolExt, &[node], ps)?;
        }
        let substs = calculus::prim_subst(&clause, &self.ps_heads);
        if ps < self.config.ps_limit {
            for c in substs {
                self.conclude(c, Rule::PrimSubst, &[node], ps + 1)?;
            }
        } else if !substs.is_empty() {
            self.incomplete = true;
        }
        let types = self.config.preprocess.exhaustive_inst_types.clone();
        for c in calculus::instantiate(&clause, &types) {
            self.conclude(c, Rule::Instantiate, &[node], ps)?;
        }
        for i in calculus::unification_candidates(&clause) {
            self.solve(&clause, &[i], node, ps)?;
        }
        Ok(())
    }

    /// Records a conclusion and solves its constraints. `Err` carries a
    /// reason to stop the loop, so `?` propagates it.
    fn conclude(&mut self, c: Conclusion, rule: Rule, parents: &[NodeId], ps: u32) -> Result<(), Stop> {
        self.stats.generated += 1;
        let node = self.d.infer_with(Content::Clause(c.clause.clone()), rule, parents, c.bindings);
        if c.constraints.is_empty() {
            return match self.process(c.clause, node, ps) {
                Some(e) => Err(Stop::Refutation(e)),
                None => Ok(()),
            };
        }
        self.solve(&c.clause, &c.constraints, node, ps)
    }

    fn solve(&mut self, c: &Clause, idx: &[usize], node: NodeId, ps: u32) -> Result<(), Stop> {
        let out = calculus::unify_constraints(c, idx, self.config.unif_depth, self.config.unifiers);
        if out.results.is_empty() && out.incomplete {
            // Keep the clause with its constraints unsolved.
            self.incomplete = true;
            if let Some(e) = self.process(c.clone(), node, ps) {
                return Err(Stop::Refutation(e));
            }
        }
        for u in out.results {
            let rule = if u.pattern { Rule::PatternUni } else { Rule::PreUni };
            let n = self.d.infer_with(Content::Clause(u.clause.clone()), rule, &[node], u.bindings);
            if let Some(e) = self.process(u.clause, n, ps) {
                return Err(Stop::Refutation(e));
            }
        }
        Ok(())
    }
}
