//! Printing a parsed problem and parsing it again yields the same terms.

use ep_prover::tptp::{parse_problem, printer, ParseOptions};
use proptest::prelude::*;

const HEADER: &str = "thf(p_t, type, p: $o). thf(q_t, type, q: $o). thf(a_t, type, a: $i). \
    thf(f_t, type, f: $i > $i). thf(h_t, type, h: $i > $i > $i). thf(r_t, type, r: $i > $o). \
    thf(g_t, type, g: ($i > $o) > $o). thf(k_t, type, k: ($i > $i) > $i).";

fn individual() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("a".to_string()), (0..3u8).prop_map(|i| format!("X{i}"))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| format!("(f @ {t})")),
            (inner.clone(), inner.clone()).prop_map(|(s, t)| format!("(h @ {s} @ {t})")),
            (0..3u8, inner.clone()).prop_map(|(i, t)| format!("(k @ (^ [X{i}: $i] : {t}))")),
            inner.prop_map(|t| format!("((^ [Y: $i] : (f @ Y)) @ {t})")),
        ]
    })
}

fn formula() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("p".to_string()),
        Just("q".to_string()),
        Just("$true".to_string()),
        Just("$false".to_string()),
        (0..2u8).prop_map(|i| format!("P{i}")),
        individual().prop_map(|t| format!("(r @ {t})")),
        (individual(), individual()).prop_map(|(s, t)| format!("({s} = {t})")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let op = prop_oneof![Just("&"), Just("|"), Just("=>"), Just("<=>"), Just("<~>"), Just("~|"), Just("~&")];
        prop_oneof![
            inner.clone().prop_map(|f| format!("~ ({f})")),
            (inner.clone(), op, inner.clone()).prop_map(|(a, o, b)| format!("({a} {o} {b})")),
            (0..3u8, inner.clone()).prop_map(|(i, f)| format!("(! [X{i}: $i] : {f})")),
            (0..3u8, inner.clone()).prop_map(|(i, f)| format!("(? [X{i}: $i] : {f})")),
            (0..3u8, inner.clone()).prop_map(|(i, f)| format!("(g @ (^ [X{i}: $i] : {f}))")),
            (0..2u8, inner.clone(), inner).prop_map(|(i, f, b)| format!("((^ [P{i}: $o] : {f}) @ {b})")),
        ]
    })
}

fn closed(f: &str) -> String {
    format!("thf(x, axiom, ! [X0: $i, X1: $i, X2: $i, P0: $o, P1: $o] : {f}).")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        let opts = ParseOptions::default();
        let first = parse_problem(&format!("{HEADER} {}", closed(&f)), "r.p", &opts).unwrap();
        let text = printer::problem(&first);
        let second = parse_problem(&text, "r.p", &opts).unwrap();
        prop_assert_eq!(first.formulas.len(), second.formulas.len());
        for (a, b) in first.formulas.iter().zip(&second.formulas) {
            prop_assert_eq!(&a.formula, &b.formula, "{}", text);
        }
        prop_assert_eq!(printer::problem(&second), text);
    }
}
