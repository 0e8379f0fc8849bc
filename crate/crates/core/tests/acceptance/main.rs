//! End-to-end acceptance checks. Prints one PASS or FAIL line per
//! criterion and exits with a failure status if any criterion fails.

mod props;
mod unif;

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ep_prover::clause::Clause;
use ep_prover::formula::{self, View};
use ep_prover::modal::{embed, S5Mode};
use ep_prover::proof::{Content, Origin, Rule};
use ep_prover::saturation::{prove, Outcome, ProverConfig};
use ep_prover::tptp::{parse_file, parse_problem, ParseOptions, Problem, SzsStatus};
use ep_prover::{Symbol, Term};
use rand::rngs::StdRng;
use rand::SeedableRng;

const VOCABULARY: [&str; 15] = [
    "neg_conjecture",
    "defexp_and_simp_and_etaexpand",
    "miniscope",
    "cnf",
    "func_ext",
    "bool_ext",
    "paramod_ordered",
    "eqfactor_ordered",
    "pre_uni",
    "pattern_uni",
    "rewrite",
    "simp",
    "prim_subst",
    "inj",
    "instantiate",
];

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/problems")
}

fn config(secs: u64) -> ProverConfig {
    ProverConfig {
        timeout: Duration::from_secs(secs),
        ..ProverConfig::default()
    }
}

/// Embeds modal problems, then saturates.
fn solve(p: &Problem, mode: S5Mode, config: &ProverConfig) -> Result<Outcome, String> {
    let embedded;
    let p = if p.logic.is_some() {
        embedded = embed(p, mode).map_err(|e| e.to_string())?;
        &embedded
    } else {
        p
    };
    prove(p, config).map_err(|e| e.to_string())
}

fn load(name: &str) -> Problem {
    parse_file(&problems_dir().join(name), &ParseOptions::default()).expect("corpus problem parses")
}

/// A timed run of one problem.
struct Run {
    name: String,
    outcome: Outcome,
    elapsed: Duration,
}

impl Run {
    fn new(name: &str, p: &Problem, mode: S5Mode, config: &ProverConfig) -> Result<Run, String> {
        let start = Instant::now();
        let outcome = solve(p, mode, config)?;
        Ok(Run {
            name: name.to_string(),
            outcome,
            elapsed: start.elapsed(),
        })
    }

    fn proof(&self) -> Option<String> {
        self.outcome.proof(&self.name)
    }

    /// Theorem within `limit`, with a proof the checker accepted.
    fn expect(&self, status: SzsStatus, limit: Duration) -> Result<(), String> {
        if self.outcome.status != status {
            return Err(format!("{}: {} instead of {status}", self.name, self.outcome.status));
        }
        if self.elapsed > limit {
            return Err(format!("{}: took {:?}", self.name, self.elapsed));
        }
        if let Some(e) = &self.outcome.replay_error {
            return Err(format!("{}: proof rejected: {e}", self.name));
        }
        if self.outcome.refutation.is_some() && self.proof().is_none() {
            return Err(format!("{}: no proof rendered", self.name));
        }
        Ok(())
    }
}

/// The rule names used by `inference(...)` records.
fn rule_names(proof: &str) -> BTreeSet<String> {
    proof
        .split("inference(")
        .skip(1)
        .filter_map(|s| s.split(',').next())
        .map(str::to_string)
        .collect()
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, n: u32, title: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                self.failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {detail}");
            }
        }
    }
}

fn criterion_1(surj: &Run) -> Result<String, String> {
    surj.expect(SzsStatus::Theorem, Duration::from_secs(30))?;
    let names = rule_names(&surj.proof().unwrap_or_default());
    let unknown: Vec<&String> = names.iter().filter(|n| !VOCABULARY.contains(&n.as_str())).collect();
    if !unknown.is_empty() {
        return Err(format!("rules outside the vocabulary: {unknown:?}"));
    }
    Ok(format!("Theorem in {:?}, proof replayed, rules {names:?}", surj.elapsed))
}

fn criterion_2(inj: &Run) -> Result<String, String> {
    inj.expect(SzsStatus::Theorem, Duration::from_secs(120))?;
    let no_inj = ProverConfig {
        inj: false,
        ..config(10)
    };
    let without = Run::new("ho_cantor_inj.p", &load("ho_cantor_inj.p"), S5Mode::Relational, &no_inj)?;
    if without.outcome.status == SzsStatus::Theorem {
        return Err(format!("Theorem without the injectivity rule in {:?}", without.elapsed));
    }
    Ok(format!(
        "Theorem in {:?}; without the rule {} after {:?}",
        inj.elapsed, without.outcome.status, without.elapsed
    ))
}

/// Tokens of a TPTP text: identifiers and single punctuation characters.
fn tokens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut word = String::new();
    for ch in s.chars() {
        if ch.is_alphanumeric() || ch == '_' || ch == '$' {
            word.push(ch);
            continue;
        }
        if !word.is_empty() {
            out.push(std::mem::take(&mut word));
        }
        if !ch.is_whitespace() {
            out.push(ch.to_string());
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    out
}

/// Annotated formulas by name: the formula tokens with redundant
/// enclosing parentheses removed.
fn entries(text: &str) -> HashMap<String, Vec<String>> {
    let toks = tokens(text);
    let mut out = HashMap::new();
    let mut k = 0;
    while k + 6 < toks.len() {
        if toks[k] != "thf" || toks[k + 1] != "(" {
            k += 1;
            continue;
        }
        let name = toks[k + 2].clone();
        let start = k + 6;
        let mut depth = 1;
        let mut j = start;
        while j < toks.len() {
            match toks[j].as_str() {
                "(" => depth += 1,
                ")" => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                "," if depth == 1 => break,
                _ => {}
            }
            j += 1;
        }
        out.insert(name, strip_parens(&toks[start..j]).to_vec());
        k = j;
    }
    out
}

fn strip_parens(mut t: &[String]) -> &[String] {
    while t.len() >= 2 && t[0] == "(" && t[t.len() - 1] == ")" {
        let mut depth = 0;
        let wraps = t.iter().enumerate().all(|(i, x)| {
            match x.as_str() {
                "(" => depth += 1,
                ")" => depth -= 1,
                _ => {}
            }
            depth > 0 || i == t.len() - 1
        });
        if !wraps {
            break;
        }
        t = &t[1..t.len() - 1];
    }
    t
}

fn criterion_3(becker: &[Run; 2]) -> Result<String, String> {
    for run in becker {
        run.expect(SzsStatus::Theorem, Duration::from_secs(60))?;
    }
    let expected = entries(include_str!("becker_definitions.p"));
    let actual = entries(&becker[0].proof().unwrap_or_default());
    let mut names: Vec<&String> = expected.keys().collect();
    names.sort();
    for name in &names {
        match actual.get(*name) {
            Some(toks) if *toks == expected[*name] => {}
            Some(toks) => return Err(format!("{name}: {} differs from {}", toks.join(" "), expected[*name].join(" "))),
            None => return Err(format!("{name} missing from the proof")),
        }
    }
    let k_text = std::fs::read_to_string(problems_dir().join("modal_becker.p"))
        .map_err(|e| e.to_string())?
        .replace("$modal_system_S5", "$modal_system_K");
    let k = parse_problem(&k_text, "becker_k.p", &ParseOptions::default()).map_err(|e| e.to_string())?;
    let k_run = Run::new("becker_k.p", &k, S5Mode::Relational, &config(30))?;
    if k_run.outcome.status == SzsStatus::Theorem {
        return Err("Theorem under K".into());
    }
    Ok(format!(
        "Theorem in {:?} (relational) and {:?} (universal); {} definition entries match; K: {} after {:?}",
        becker[0].elapsed,
        becker[1].elapsed,
        names.len(),
        k_run.outcome.status,
        k_run.elapsed
    ))
}

fn criterion_4(contra: &Run) -> Result<String, String> {
    contra.expect(SzsStatus::ContradictoryAxioms, Duration::from_secs(5))?;
    Ok(format!("ContradictoryAxioms in {:?}", contra.elapsed))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(5);
    let (failures, solved) = unif::soundness(&mut rng, 1000);
    match failures.first() {
        Some(f) => Err(format!("{} unsound unifiers, first: {f}", failures.len())),
        None => Ok(format!("1000 sets, all unifiers verified, {solved} sets solved within the budget")),
    }
}

fn criterion_6() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(6);
    let (misses, total) = unif::completeness(&mut rng, 200);
    match misses.first() {
        Some(m) => Err(format!("{} of {total} solutions missed, first: {m}", misses.len())),
        None if total == 0 => Err("no brute-force solutions to compare".into()),
        None => Ok(format!("200 problems, {total} brute-force solutions all subsumed")),
    }
}

fn criterion_7() -> Result<String, String> {
    const SAMPLES: usize = 100_000;
    let mut rng = StdRng::seed_from_u64(7);
    let cfg = config(10);
    let mut sat = 0;
    for k in 0..SAMPLES {
        let p = props::Prop::random(&mut rng, 4, 8);
        let text = props::axiom_problem(&p, 4);
        let problem = parse_problem(&text, "prop.p", &ParseOptions::default()).map_err(|e| e.to_string())?;
        let status = prove(&problem, &cfg).map_err(|e| e.to_string())?.status;
        let expected = if p.satisfiable(4) {
            sat += 1;
            SzsStatus::Satisfiable
        } else {
            SzsStatus::Unsatisfiable
        };
        if status != expected {
            return Err(format!("sample {k}: {} gave {status}, expected {expected}", p.thf()));
        }
    }
    Ok(format!("{SAMPLES} sampled formulas agree ({sat} satisfiable)"))
}

/// Truth value of a ground formula, atoms looked up in `val`.
fn eval(t: &Term, val: &HashMap<Term, bool>) -> Option<bool> {
    Some(match formula::view(t) {
        View::True => true,
        View::False => false,
        View::Not(a) => !eval(&a, val)?,
        View::Bin(c, a, b) => {
            let (a, b) = (eval(&a, val)?, eval(&b, val)?);
            match c {
                Symbol::AND => a && b,
                Symbol::OR => a || b,
                Symbol::IMPLIES => !a || b,
                _ => a == b,
            }
        }
        View::Eq(a, b) if a.ty().is_o() => eval(&a, val)? == eval(&b, val)?,
        View::Quant(..) => return None,
        View::Eq(..) | View::Atom => val[t],
    })
}

/// Collects atoms; false if the formula is not ground propositional.
fn atoms(t: &Term, out: &mut Vec<Term>) -> bool {
    if t.has_vars() {
        return false;
    }
    match formula::view(t) {
        View::True | View::False => true,
        View::Not(a) => atoms(&a, out),
        View::Bin(_, a, b) => atoms(&a, out) && atoms(&b, out),
        View::Eq(a, b) if a.ty().is_o() => atoms(&a, out) && atoms(&b, out),
        View::Quant(..) => false,
        View::Eq(..) | View::Atom => {
            if !out.contains(t) {
                out.push(t.clone());
            }
            true
        }
    }
}

fn as_clause(c: &Content) -> Clause {
    match c {
        Content::Clause(c) => c.clone(),
        Content::Formula(t) => Clause::unit(ep_prover::clause::Literal::prop(t.clone(), ep_prover::clause::Polarity::Pos)),
    }
}

fn clause_atoms(c: &Clause, out: &mut Vec<Term>) -> bool {
    c.literals
        .iter()
        .all(|l| l.ty().is_o() && atoms(&l.lhs, out) && atoms(&l.rhs, out))
}

fn holds(c: &Clause, val: &HashMap<Term, bool>) -> bool {
    c.literals
        .iter()
        .any(|l| (eval(&l.lhs, val) == eval(&l.rhs, val)) == l.is_pos())
}

/// Checks every ground propositional step of a refutation by valuation.
fn ground_steps(run: &Run) -> Result<usize, String> {
    let Some(goal) = run.outcome.refutation else {
        return Ok(0);
    };
    let d = &run.outcome.derivation;
    let mut checked = 0;
    for id in d.ancestors(goal) {
        let Origin::Inference { rule, parents, .. } = &d.node(id).origin else {
            continue;
        };
        // The negated conjecture is not a consequence of the conjecture.
        if *rule == Rule::NegConjecture {
            continue;
        }
        let premises: Vec<Clause> = parents.iter().map(|p| as_clause(&d.node(*p).content)).collect();
        let conclusion = as_clause(&d.node(id).content);
        let mut set = Vec::new();
        if !premises.iter().all(|p| clause_atoms(p, &mut set)) || !clause_atoms(&conclusion, &mut set) {
            continue;
        }
        if set.len() > 16 {
            return Err(format!("{}: step {} has too many atoms", run.name, id.0));
        }
        for bits in 0..1u32 << set.len() {
            let val: HashMap<Term, bool> = set.iter().enumerate().map(|(k, a)| (a.clone(), bits >> k & 1 == 1)).collect();
            if premises.iter().all(|p| holds(p, &val)) && !holds(&conclusion, &val) {
                return Err(format!("{}: step {} ({}) is not entailed", run.name, id.0, rule.name()));
            }
        }
        checked += 1;
    }
    Ok(checked)
}

fn criterion_8(runs: &[&Run]) -> Result<String, String> {
    let mut total = 0;
    let mut per = Vec::new();
    for run in runs {
        let n = ground_steps(run)?;
        per.push(format!("{} {n}", run.name));
        total += n;
    }
    if total == 0 {
        return Err("no ground propositional steps found".into());
    }
    Ok(format!("{total} ground propositional steps valid ({})", per.join(", ")))
}

fn criterion_9(runs: &[&Run]) -> Result<String, String> {
    for run in runs {
        let first = run.proof().ok_or(format!("{}: no proof", run.name))?;
        let (p, mode) = problem_of(&run.name);
        for _ in 0..2 {
            let again = Run::new(&run.name, &p, mode, &config(120))?;
            if again.proof().as_deref() != Some(first.as_str()) {
                return Err(format!("{}: proofs differ between runs", run.name));
            }
        }
    }
    Ok(format!("{} proofs identical over three runs", runs.len()))
}

fn criterion_10() -> Result<String, String> {
    let expected = std::fs::read_to_string(problems_dir().join("expected.txt")).map_err(|e| e.to_string())?;
    let mut mismatches = Vec::new();
    let (mut theorems, mut expected_theorems, mut count) = (0, 0, 0);
    for line in expected.lines().filter(|l| !l.trim().is_empty()) {
        let (name, status) = line.split_once(' ').ok_or(format!("bad line {line}"))?;
        let run = Run::new(name, &load(name), S5Mode::Relational, &config(60))?;
        count += 1;
        let got = run.outcome.status.to_string();
        if status == "Theorem" {
            expected_theorems += 1;
            theorems += usize::from(got == "Theorem");
        }
        if got != status || run.outcome.replay_error.is_some() {
            mismatches.push(format!("{name}: {got} (expected {status})"));
        }
    }
    let rate = theorems as f64 / expected_theorems.max(1) as f64;
    if count < 20 || rate < 0.9 || !mismatches.is_empty() {
        return Err(format!(
            "{count} problems, Theorem rate {:.1}%, mismatches {mismatches:?}",
            rate * 100.0
        ));
    }
    Ok(format!(
        "{count} problems match the expected statuses, {theorems}/{expected_theorems} theorems"
    ))
}

fn problem_of(name: &str) -> (Problem, S5Mode) {
    match name.strip_suffix("#universal") {
        Some(base) => (load(base), S5Mode::Universal),
        None => (load(name), S5Mode::Relational),
    }
}

fn headline(name: &str) -> Run {
    let (p, mode) = problem_of(name);
    Run::new(name, &p, mode, &config(120)).expect("problem runs")
}

fn main() {
    let surj = headline("ho_cantor_surj.p");
    let inj = headline("ho_cantor_inj.p");
    let becker = [headline("modal_becker.p"), headline("modal_becker.p#universal")];
    let contra = headline("contradictory_axioms.p");

    let mut report = Report { failed: 0 };
    report.line(1, "surjective Cantor", criterion_1(&surj));
    report.line(2, "injective Cantor", criterion_2(&inj));
    report.line(3, "Becker corollary", criterion_3(&becker));
    report.line(4, "contradictory axioms", criterion_4(&contra));
    report.line(5, "pre-unification soundness", criterion_5());
    report.line(6, "pre-unification bounded completeness", criterion_6());
    report.line(7, "clausification equisatisfiability", criterion_7());
    let runs = [&surj, &inj, &becker[0], &becker[1], &contra];
    report.line(8, "ground soundness of proof steps", criterion_8(&runs));
    report.line(9, "determinism", criterion_9(&runs));
    report.line(10, "mini-corpus", criterion_10());

    if report.failed > 0 {
        println!("{} criteria failed", report.failed);
        std::process::exit(1);
    }
}
