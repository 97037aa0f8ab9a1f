use confluence_core::formula::{parse, render};
use confluence_core::{Agent, Formula, Literal, SymbolTable};
use proptest::prelude::*;

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        "[a-z][a-z0-9_]{0,3}"
            .prop_filter("reserved", |s| !matches!(s.as_str(), "true" | "false" | "start"))
            .prop_map(Formula::Prop),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        let agent = (1u32..4).prop_map(|a| Agent::new(a).unwrap());
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (agent.clone(), inner.clone()).prop_map(|(a, f)| Formula::boxed(a, f)),
            (agent, inner).prop_map(|(a, f)| Formula::dia(a, f)),
        ]
    })
}

fn depth(f: &Formula) -> usize {
    match f {
        Formula::True | Formula::False | Formula::Start | Formula::Prop(_) => 0,
        Formula::Not(a) | Formula::Box(_, a) | Formula::Dia(_, a) => 1 + depth(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            1 + depth(a).max(depth(b))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(f in formula()) {
        prop_assume!(depth(&f) <= 6);
        let text = render(&f);
        prop_assert_eq!(parse(&text, 3).unwrap(), f, "{}", text);
    }

    #[test]
    fn complement_is_an_involution(name in "[a-z]{1,4}", positive: bool) {
        let mut t = SymbolTable::new();
        let l = Literal::new(t.intern(&name), positive);
        prop_assert_eq!(l.complement().complement(), l);
        prop_assert_eq!(l.complement().symbol(), l.symbol());
        prop_assert_ne!(l.complement(), l);
    }
}
