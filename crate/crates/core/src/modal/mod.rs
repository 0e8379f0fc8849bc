//! Embedding of quantified normal modal logics into classical higher-order
//! logic via their Kripke semantics.

pub mod embed;
pub mod spec;

pub use embed::{embed, EmbedError, S5Mode};
pub use spec::{Consequence, LogicSpec, ModalAxiom};

/// The `logic` statement describing `spec`.
pub fn spec_statement(spec: &LogicSpec) -> String {
    let consequence = match spec.consequence {
        Consequence::Global => "$global",
        Consequence::Local => "$local",
    };
    let axioms: Vec<&str> = spec
        .axioms
        .iter()
        .map(|a| match a {
            ModalAxiom::K => "$modal_axiom_K",
            ModalAxiom::D => "$modal_axiom_D",
            ModalAxiom::T => "$modal_axiom_T",
            ModalAxiom::B => "$modal_axiom_B",
            ModalAxiom::Four => "$modal_axiom_4",
            ModalAxiom::Five => "$modal_axiom_5",
        })
        .collect();
    format!(
        "thf(logic_spec,logic,( $modal := [ $constants := $rigid, $quantification := $constant, \
         $consequence := {consequence}, $modalities := [{}] ] )).",
        axioms.join(",")
    )
}
