//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use confluence::{run, Answer, Input, Mode, Report, RunConfig};
use confluence_core::calculus::{self, DisjunctionNames};
use confluence_core::formula::render;
use confluence_core::semantics::{find_violation, formula_has_model, has_model, DefinitionMode};
use confluence_core::snf::{add_required_definitions, definition_clauses, to_snf};
use confluence_core::{
    saturate, Agent, Clause, Family, Formula, Limits, Literal, LogicSpec, RuleId, Shape, SymbolTable, Verdict,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("two-agent K refutation golden proof", modal_golden),
        ("confluence refutation golden proof", confluence_golden),
        ("axiom schemata valid in own logic, refuted in K", axiom_schemata),
        ("per-rule soundness on small models", rule_soundness),
        ("normal form is equisatisfiable at each bound", snf_equisatisfiable),
        ("fuzzed refutations have no small model", fuzz_soundness),
        ("fuzzed runs terminate, stay in signature, ignore order", fuzz_termination),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} ({secs:.2}s)", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn agent(n: u32) -> Agent {
    Agent::new(n).unwrap()
}

fn prove(mode: Mode, logic: &str, formula: &str) -> Result<(Report, Duration), String> {
    let logic: LogicSpec = logic.parse().map_err(|e| format!("{e}"))?;
    let config = RunConfig::new(mode, logic, Input::Formula(formula.to_string()));
    let start = Instant::now();
    let report = run(&config, &mut std::io::sink()).map_err(|e| e.to_string())?;
    Ok((report, start.elapsed()))
}

fn check(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn modal_golden() -> Outcome {
    let formula = "[1][2](a & b) -> [1]([2]a & [2]b)";
    let (report, took) = prove(Mode::Valid, "1:K;2:K", formula)?;
    check(report.answer == Answer::Valid, || format!("answer {}", report.answer.text()))?;
    let proof = report.proof.ok_or("no proof")?;
    let inputs = proof.steps.iter().filter(|s| s.justification == confluence_core::Justification::Input).count();
    let mut rules: Vec<String> = proof.rules().map(|r| r.to_string()).collect();
    rules.sort();
    let expected = ["IRES1", "LRES", "LRES", "NEC1", "NEC1", "NEC1"];
    check(inputs == 9, || format!("{inputs} input clauses in proof"))?;
    check(rules == expected, || format!("rules {rules:?}"))?;
    check(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("NEC1 x3, LRES x2, IRES1 x1 in {took:?}"))
}

fn confluence_golden() -> Outcome {
    let (report, took) = prove(Mode::Valid, "1:T,5", "p -> [1]<1>p")?;
    check(report.answer == Answer::Valid, || format!("answer {}", report.answer.text()))?;
    let proof = report.proof.ok_or("no proof")?;
    let a = agent(1);
    let euclid = proof.count(RuleId::Res { agent: a, shape: Shape::EUCLIDEAN });
    let refl = proof.count(RuleId::Res { agent: a, shape: Shape::REFLEXIVE });
    check(euclid == 1 && refl == 1, || format!("RES{{1,0,1,1}} x{euclid}, RES{{0,1,0,0}} x{refl}"))?;
    check(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("RES{{1,0,1,1}} x1, RES{{0,1,0,0}} x1 in {took:?}"))
}

fn axiom_schemata() -> Outcome {
    let start = Instant::now();
    let a = agent(1);
    let mut checks = 0;
    for family in Family::ALL {
        for &shape in family.axiom_shapes() {
            let text = render(&shape.axiom(a, Formula::prop("p")));
            let own = format!("1:{}", family.name());
            let (report, _) = prove(Mode::Valid, &own, &text)?;
            check(report.answer == Answer::Valid, || format!("{text} under {own}: {}", report.answer.text()))?;
            let mut config = RunConfig::new(Mode::Valid, LogicSpec::k(), Input::Formula(text.clone()));
            config.oracle_check = true;
            config.max_worlds = 2;
            let report = run(&config, &mut std::io::sink()).map_err(|e| e.to_string())?;
            check(report.answer == Answer::NotValid, || format!("{text} under K: {}", report.answer.text()))?;
            let worlds = report.model.as_ref().map(|m| m.world_count());
            check(matches!(worlds, Some(1..=2)), || format!("{text} under K: countermodel {worlds:?}"))?;
            checks += 2;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("{checks} checks"))
}

/// One random application of a rule: premises, conclusions, and the
/// symbol table they live in.
struct Instance {
    premises: Vec<Clause>,
    conclusions: Vec<Clause>,
    symbols: SymbolTable,
}

const INSTANCES_PER_RULE: usize = 200;

fn k_rules() -> [RuleId; 7] {
    [RuleId::Ires1, RuleId::Ires2, RuleId::Lres, RuleId::Mres, RuleId::Nec1, RuleId::Nec2, RuleId::Nec3]
}

fn instance(rule: RuleId, rng: &mut impl Rng) -> Result<Instance, String> {
    let a = agent(1);
    let mut t = SymbolTable::new();
    let props = &common::PROPS;
    let lits: Vec<Literal> = props.iter().flat_map(|n| {
        let s = t.intern(n);
        [Literal::pos(s), Literal::neg(s)]
    }).collect();
    let defs = definition_clauses(&lits, &[a], &mut t).map_err(|e| e.to_string())?;
    let lit = |t: &mut SymbolTable, rng: &mut dyn rand::RngCore| common::literal(rng, t, props);
    let disj = |t: &mut SymbolTable, rng: &mut dyn rand::RngCore, pivot: Literal| {
        let extra = rng.gen_range(0..3);
        let mut d: Vec<Literal> = (0..extra).map(|_| common::literal(rng, t, props)).collect();
        d.push(pivot);
        d
    };
    let err = |e: calculus::RuleError| format!("{rule}: {e}");
    let (premises, conclusions) = match rule {
        RuleId::Ires1 | RuleId::Ires2 | RuleId::Lres => {
            let pivot = lit(&mut t, rng);
            let d1 = disj(&mut t, rng, pivot);
            let d2 = disj(&mut t, rng, pivot.complement());
            let c1 = if rule == RuleId::Ires2 { Clause::initial(d1) } else { Clause::literal(d1) };
            let c2 = if rule == RuleId::Lres { Clause::literal(d2) } else { Clause::initial(d2) };
            let c = if rule == RuleId::Lres { calculus::lres(&c1, &c2, pivot) } else { calculus::ires(&c1, &c2, pivot) };
            (vec![c1, c2], vec![c.map_err(err)?])
        }
        RuleId::Mres => {
            let rhs = lit(&mut t, rng);
            let pos = Clause::positive(lit(&mut t, rng), a, rhs);
            let neg = Clause::negative(lit(&mut t, rng), a, rhs);
            let c = calculus::mres(&pos, &neg).map_err(err)?;
            (vec![pos, neg], vec![c])
        }
        RuleId::Nec2 => {
            let l1 = lit(&mut t, rng);
            let p1 = Clause::positive(lit(&mut t, rng), a, l1);
            let p2 = Clause::positive(lit(&mut t, rng), a, l1.complement());
            let n = Clause::negative(lit(&mut t, rng), a, lit(&mut t, rng));
            let c = calculus::nec2(&p1, &p2, &n).map_err(err)?;
            (vec![p1, p2, n], vec![c])
        }
        RuleId::Nec1 | RuleId::Nec3 => {
            let m = if rule == RuleId::Nec1 { rng.gen_range(0..3) } else { rng.gen_range(1..3) };
            let ds = common::distinct_literals(rng, &mut t, props, m + 1);
            let (covered, last) = ds.split_at(m);
            let pos: Vec<Clause> =
                covered.iter().map(|l| Clause::positive(common::literal(rng, &mut t, props), a, l.complement())).collect();
            // NEC3's negative literal stays outside the literal clause.
            let lit_clause = if rule == RuleId::Nec1 { Clause::literal(ds.clone()) } else { Clause::literal(covered.to_vec()) };
            let neg = Clause::negative(common::literal(rng, &mut t, props), a, last[0]);
            let refs: Vec<&Clause> = pos.iter().collect();
            let c = if rule == RuleId::Nec1 { calculus::nec1(&refs, &neg, &lit_clause) } else { calculus::nec3(&refs, &neg, &lit_clause) };
            let mut premises = pos.clone();
            premises.push(neg);
            premises.push(lit_clause);
            (premises, vec![c.map_err(err)?])
        }
        RuleId::Res { shape, .. } if shape.premise_kind() == confluence_core::snf::ClauseKind::Literal => {
            let pivot = lit(&mut t, rng);
            let d = disj(&mut t, rng, pivot);
            let premise = Clause::literal(d);
            let mut names = DisjunctionNames::default();
            let before = t.len();
            let out = calculus::literal_confluence_step(rule, &premise, pivot, &mut t, &mut names).map_err(err)?;
            let mut premises = vec![premise.clone()];
            if t.len() > before {
                // A fresh `u` names `~D`, with D the premise minus the pivot.
                let u = Literal::pos(t.symbols().last().unwrap());
                let rest: Vec<Literal> =
                    premise.disjuncts().unwrap().iter().copied().filter(|&l| l != pivot).collect();
                premises.push(Clause::literal(rest.iter().copied().chain([u])));
                premises.extend(rest.iter().map(|&l| Clause::literal([u.complement(), l.complement()])));
            }
            (premises, out)
        }
        RuleId::Res { shape, .. } => {
            let premise = match shape.premise_kind() {
                confluence_core::snf::ClauseKind::PositiveModal => Clause::positive(lit(&mut t, rng), a, lit(&mut t, rng)),
                _ => Clause::negative(lit(&mut t, rng), a, lit(&mut t, rng)),
            };
            let c = calculus::confluence_step(rule, &premise, &t).map_err(err)?;
            (vec![premise], vec![c])
        }
    };
    let mut premises = premises;
    if let RuleId::Res { shape, .. } = rule {
        if shape.needs_definitions() {
            premises.extend(defs);
        }
    }
    Ok(Instance { premises, conclusions, symbols: t })
}

fn rule_soundness() -> Outcome {
    let a = agent(1);
    let mut rng = common::rng(401);
    let rules: Vec<(RuleId, LogicSpec)> = k_rules()
        .into_iter()
        .map(|r| (r, LogicSpec::k()))
        .chain(Shape::ALL.iter().map(|&s| (RuleId::Res { agent: a, shape: s }, LogicSpec::k().with(a, s.family()))))
        .collect();
    let mut total = 0;
    for (rule, spec) in &rules {
        for _ in 0..INSTANCES_PER_RULE {
            let inst = instance(*rule, &mut rng)?;
            for c in &inst.conclusions {
                let m = find_violation(&inst.premises, c, &inst.symbols, spec, 3, DefinitionMode::Derived);
                if let Some(m) = m {
                    return Err(format!("{rule} unsound: {:?} from {:?}; model\n{m}", c, inst.premises));
                }
            }
            total += 1;
        }
    }
    Ok(format!("{} rules, {total} instances, no violation up to 3 worlds", rules.len()))
}

fn snf_equisatisfiable() -> Outcome {
    let mut rng = common::rng(501);
    let spec = LogicSpec::k();
    for _ in 0..300 {
        let f = common::formula(&mut rng, 3, 5, 2, 3);
        let set = to_snf(&f).map_err(|e| e.to_string())?;
        for k in 1..=3 {
            let direct = formula_has_model(&f, &spec, k).map_err(|e| e.to_string())?;
            let clausal = has_model(&set, &spec, k).map_err(|e| e.to_string())?;
            check(direct == clausal, || format!("bound {k}: {} (formula {direct}, clauses {clausal})", render(&f)))?;
        }
    }
    Ok("300 formulas, bounds 1..3".into())
}

const FUZZ_SPECS: [&str; 9] = ["1:K", "1:T", "1:D", "1:F", "1:Ban", "1:B", "1:5", "1:G1", "1:G0111"];
const FUZZ_PER_SPEC: usize = 300;

/// Conjunctions of two small formulas: one agent, modal depth at most 3,
/// two propositions.
fn fuzz_corpus(seed: u64) -> Vec<Formula> {
    let mut rng = common::rng(seed);
    (0..FUZZ_PER_SPEC)
        .map(|_| Formula::and(common::formula(&mut rng, 3, 3, 1, 2), common::formula(&mut rng, 3, 3, 1, 2)))
        .collect()
}

fn prepared(f: &Formula, spec: &LogicSpec) -> Result<confluence_core::ClauseSet, String> {
    let mut set = to_snf(f).map_err(|e| e.to_string())?;
    add_required_definitions(&mut set, spec);
    Ok(set)
}

fn fuzz_soundness() -> Outcome {
    let (mut unsat, mut review) = (0, Vec::new());
    for (i, text) in FUZZ_SPECS.iter().enumerate() {
        let spec: LogicSpec = text.parse().unwrap();
        for f in fuzz_corpus(600 + i as u64) {
            let verdict = saturate(prepared(&f, &spec)?, &spec, &Limits::default());
            let model = formula_has_model(&f, &spec, 4).map_err(|e| e.to_string())?;
            match verdict {
                Verdict::Unsatisfiable(_) => {
                    unsat += 1;
                    check(!model, || format!("{text}: refuted but has a model: {}", render(&f)))?;
                }
                Verdict::Saturated(_) if !model => review.push(format!("{text}: {}", render(&f))),
                _ => {}
            }
        }
    }
    for r in &review {
        println!("  review (saturated, no model up to 4 worlds): {r}");
    }
    Ok(format!(
        "{} formulas, {unsat} refuted, 0 violations, {} saturated without a model up to 4 worlds",
        FUZZ_SPECS.len() * FUZZ_PER_SPEC,
        review.len()
    ))
}

fn fuzz_termination() -> Outcome {
    let mut rng = common::rng(701);
    for (i, text) in FUZZ_SPECS.iter().enumerate() {
        let spec: LogicSpec = text.parse().unwrap();
        for f in fuzz_corpus(600 + i as u64) {
            let set = prepared(&f, &spec)?;
            let allowed: BTreeSet<_> = set.occurring_symbols().into_iter().collect();
            let reference = match saturate(set.clone(), &spec, &Limits::default()) {
                Verdict::ResourceLimit(r) => return Err(format!("{text}: {r:?} on {}", render(&f))),
                Verdict::Saturated(done) => {
                    if let Some(s) = done
                        .occurring_symbols()
                        .into_iter()
                        .find(|&s| !allowed.contains(&s) && !done.symbols.is_definition(s))
                    {
                        return Err(format!("{text}: new symbol {} on {}", done.symbols.name(s), render(&f)));
                    }
                    false
                }
                Verdict::Unsatisfiable(_) => true,
            };
            for _ in 0..5 {
                let mut order: Vec<usize> = (0..set.len()).collect();
                order.shuffle(&mut rng);
                match saturate(set.permuted(&order), &spec, &Limits::default()) {
                    Verdict::ResourceLimit(r) => return Err(format!("{text}: {r:?} on permuted {}", render(&f))),
                    v => check(v.is_unsatisfiable() == reference, || format!("{text}: order changes verdict on {}", render(&f)))?,
                }
            }
        }
    }
    Ok(format!("{} formulas x 6 orders, no resource limit", FUZZ_SPECS.len() * FUZZ_PER_SPEC))
}
