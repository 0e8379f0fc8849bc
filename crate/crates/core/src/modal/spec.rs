//! The semantic parameters of a modal problem, read from a `logic` statement.

use crate::tptp::ast::LogicVal;
use crate::tptp::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consequence {
    Global,
    Local,
}

/// Axiom schemes and their frame conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalAxiom {
    K,
    /// Seriality.
    D,
    /// Reflexivity.
    T,
    /// Symmetry.
    B,
    /// Transitivity.
    Four,
    /// Euclideanness.
    Five,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicSpec {
    pub consequence: Consequence,
    /// Sorted, without duplicates; always contains `K`.
    pub axioms: Vec<ModalAxiom>,
}

impl LogicSpec {
    pub fn system(name: &str) -> Option<Vec<ModalAxiom>> {
        use ModalAxiom::*;
        let axioms = match name {
            "K" => vec![K],
            "D" => vec![K, D],
            "T" => vec![K, T],
            "B" => vec![K, T, B],
            "S4" => vec![K, T, Four],
            "S5" => vec![K, T, Five],
            "K4" => vec![K, Four],
            "K5" => vec![K, Five],
            "KB" => vec![K, B],
            "D4" => vec![K, D, Four],
            "D45" => vec![K, D, Four, Five],
            _ => return None,
        };
        Some(axioms)
    }

    pub fn new(consequence: Consequence, mut axioms: Vec<ModalAxiom>) -> LogicSpec {
        axioms.push(ModalAxiom::K);
        axioms.sort();
        axioms.dedup();
        LogicSpec {
            consequence,
            axioms,
        }
    }

    pub fn has(&self, a: ModalAxiom) -> bool {
        self.axioms.contains(&a)
    }

    /// The accessibility relation is an equivalence relation.
    pub fn is_s5(&self) -> bool {
        use ModalAxiom::*;
        self.has(T) && (self.has(Five) || (self.has(B) && self.has(Four)))
    }

    pub fn from_value(v: &LogicVal) -> Result<LogicSpec, InputError> {
        let invalid = |m: &str| InputError::Invalid(format!("logic specification: {m}"));
        let LogicVal::Assign(logic, params) = v else {
            return Err(invalid("expected '$modal := [...]'"));
        };
        if logic != "$modal" && logic != "$alethic_modal" {
            return Err(InputError::Unsupported(format!("logic {logic}")));
        }
        let LogicVal::List(entries) = params.as_ref() else {
            return Err(invalid("expected a parameter list"));
        };
        let mut consequence = Consequence::Global;
        let mut axioms = None;
        for e in entries {
            let LogicVal::Assign(key, val) = e else {
                return Err(invalid("expected 'key := value'"));
            };
            let word = match val.as_ref() {
                LogicVal::Word(w) => Some(w.as_str()),
                _ => None,
            };
            match key.as_str() {
                "$constants" => {
                    if word != Some("$rigid") {
                        return Err(InputError::Unsupported(
                            "unsupported semantics: non-rigid constants".into(),
                        ));
                    }
                }
                "$quantification" => match word {
                    Some("$constant") => {}
                    Some(w @ ("$cumulative" | "$varying" | "$decreasing")) => {
                        return Err(InputError::Unsupported(format!(
                            "unsupported semantics: {w} quantification"
                        )))
                    }
                    _ => return Err(invalid("unknown quantification semantics")),
                },
                "$consequence" => {
                    consequence = match word {
                        Some("$global") => Consequence::Global,
                        Some("$local") => Consequence::Local,
                        _ => return Err(invalid("unknown consequence relation")),
                    }
                }
                "$modalities" => axioms = Some(parse_modalities(val)?),
                _ => return Err(invalid(&format!("unknown parameter {key}"))),
            }
        }
        let axioms = axioms.ok_or_else(|| invalid("missing $modalities"))?;
        Ok(LogicSpec::new(consequence, axioms))
    }
}

fn parse_modalities(v: &LogicVal) -> Result<Vec<ModalAxiom>, InputError> {
    let unsupported = |w: &str| InputError::Unsupported(format!("unsupported modalities: {w}"));
    match v {
        LogicVal::Word(w) => {
            if let Some(sys) = w.strip_prefix("$modal_system_") {
                return LogicSpec::system(sys).ok_or_else(|| unsupported(w));
            }
            parse_modalities(&LogicVal::List(vec![v.clone()]))
        }
        LogicVal::List(items) => {
            let mut out = Vec::new();
            for it in items {
                let LogicVal::Word(w) = it else {
                    return Err(unsupported("nested modality specification"));
                };
                let a = match w.strip_prefix("$modal_axiom_") {
                    Some("K") => ModalAxiom::K,
                    Some("D") => ModalAxiom::D,
                    Some("T") | Some("M") => ModalAxiom::T,
                    Some("B") => ModalAxiom::B,
                    Some("4") => ModalAxiom::Four,
                    Some("5") => ModalAxiom::Five,
                    _ => return Err(unsupported(w)),
                };
                out.push(a);
            }
            Ok(out)
        }
        LogicVal::Assign(..) => Err(unsupported("per-operator modalities")),
    }
}
