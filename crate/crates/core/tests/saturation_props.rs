mod common;

use std::collections::BTreeSet;

use confluence_core::semantics::{find_violation, has_model, DefinitionMode};
use confluence_core::snf::{add_required_definitions, to_snf};
use confluence_core::{saturate, ClauseSet, Formula, Justification, Limits, LogicSpec, SymbolTable, Verdict};
use rand::seq::SliceRandom;
use rand::Rng;

const SPECS: [&str; 10] = ["", "1:T", "1:D", "1:F", "1:Ban", "1:B", "1:5", "1:G1", "1:G0111", "1:T,5;2:D"];

/// Two conjoined small formulas; big enough to be refutable fairly often,
/// small enough to saturate quickly under every family.
fn small(rng: &mut impl Rng, agents: u32) -> Formula {
    Formula::and(common::sized(rng, 3, 3, agents, 2), common::sized(rng, 3, 3, agents, 2))
}

fn prepared(f: &Formula, spec: &LogicSpec) -> ClauseSet {
    let mut set = to_snf(f).unwrap();
    add_required_definitions(&mut set, spec);
    set
}

#[test]
fn verdicts_do_not_depend_on_clause_order() {
    let mut rng = common::rng(31);
    for round in 0..150 {
        let spec: LogicSpec = SPECS[round % SPECS.len()].parse().unwrap();
        let set = prepared(&small(&mut rng, 2), &spec);
        let reference = saturate(set.clone(), &spec, &Limits::default()).is_unsatisfiable();
        for _ in 0..3 {
            let mut order: Vec<usize> = (0..set.len()).collect();
            order.shuffle(&mut rng);
            let v = saturate(set.permuted(&order), &spec, &Limits::default());
            assert!(!matches!(v, Verdict::ResourceLimit(_)));
            assert_eq!(v.is_unsatisfiable(), reference);
        }
    }
}

#[test]
fn refutations_have_no_small_models() {
    let mut rng = common::rng(32);
    let mut refuted = 0;
    for round in 0..1000 {
        let spec: LogicSpec = SPECS[round % SPECS.len()].parse().unwrap();
        let set = prepared(&small(&mut rng, 1), &spec);
        if saturate(set.clone(), &spec, &Limits::default()).is_unsatisfiable() {
            refuted += 1;
            assert!(!has_model(&set, &spec, 4).unwrap());
        }
    }
    assert!(refuted >= 80, "corpus too easy to be informative: {refuted}");
}

#[test]
fn saturation_introduces_no_new_symbols() {
    let mut rng = common::rng(33);
    for round in 0..150 {
        let spec: LogicSpec = SPECS[round % SPECS.len()].parse().unwrap();
        let set = prepared(&small(&mut rng, 2), &spec);
        let allowed: BTreeSet<_> = set.occurring_symbols().into_iter().collect();
        if let Verdict::Saturated(done) = saturate(set, &spec, &Limits::default()) {
            for s in done.occurring_symbols() {
                assert!(allowed.contains(&s) || done.symbols.is_definition(s), "{}", done.symbols.name(s));
            }
        }
    }
}

#[test]
fn derived_clauses_follow_from_the_input() {
    let mut rng = common::rng(34);
    for round in 0..120 {
        let spec: LogicSpec = SPECS[round % (SPECS.len() - 1)].parse().unwrap();
        let mut t = SymbolTable::new();
        let lits = common::literals(&mut t, &["p", "q"]);
        let mut set = ClauseSet::new(t);
        for _ in 0..rng.gen_range(2..6) {
            set.push(common::clause(&mut rng, &lits, 1), Justification::Input);
        }
        add_required_definitions(&mut set, &spec);
        let input: Vec<_> = set.clauses().cloned().collect();
        let symbols = set.symbols.clone();
        let worlds = if symbols.len() * 3 <= 24 { 3 } else { 2 };
        let derived: Vec<_> = match saturate(set, &spec, &Limits::default()) {
            Verdict::Saturated(done) => done.clauses().skip(input.len()).cloned().collect(),
            Verdict::Unsatisfiable(proof) => proof.steps.into_iter().map(|s| s.clause).collect(),
            Verdict::ResourceLimit(r) => panic!("{r:?}"),
        };
        for c in derived {
            let m = find_violation(&input, &c, &symbols, &spec, worlds, DefinitionMode::Free);
            assert!(m.is_none(), "spec {spec}: {c:?} not entailed; countermodel\n{}", m.unwrap());
        }
    }
}
