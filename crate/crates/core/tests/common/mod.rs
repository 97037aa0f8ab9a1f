#![allow(dead_code)]

use confluence_core::{Agent, Clause, Formula, Literal, SymbolTable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PROPS: [&str; 3] = ["p", "q", "r"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random formula of modal depth at most `depth` over `agents` agents
/// and the first `props` propositions.
pub fn formula(rng: &mut impl Rng, depth: usize, agents: u32, props: usize) -> Formula {
    sized(rng, depth, 5, agents, props)
}

/// Like [`formula`] with at most `height` nested connectives.
pub fn sized(rng: &mut impl Rng, depth: usize, height: usize, agents: u32, props: usize) -> Formula {
    gen(rng, depth, height, agents, props)
}

fn gen(rng: &mut impl Rng, depth: usize, size: usize, agents: u32, props: usize) -> Formula {
    if size == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..12) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::prop(PROPS[rng.gen_range(0..props)]),
        };
    }
    let modal = depth > 0 && rng.gen_bool(0.45);
    if modal {
        let a = Agent::new(rng.gen_range(1..=agents)).unwrap();
        let inner = gen(rng, depth - 1, size - 1, agents, props);
        return if rng.gen_bool(0.5) { Formula::boxed(a, inner) } else { Formula::dia(a, inner) };
    }
    let op = rng.gen_range(0..9);
    let mut sub = || gen(rng, depth, size - 1, agents, props);
    match op {
        0 | 1 => Formula::not(sub()),
        2 | 3 => Formula::and(sub(), sub()),
        4 | 5 => Formula::or(sub(), sub()),
        6 | 7 => Formula::implies(sub(), sub()),
        _ => Formula::iff(sub(), sub()),
    }
}

/// A random well-shaped clause over `lits`.
pub fn clause(rng: &mut impl Rng, lits: &[Literal], agents: u32) -> Clause {
    let lit = |rng: &mut dyn rand::RngCore| lits[rng.gen_range(0..lits.len())];
    let agent = Agent::new(rng.gen_range(1..=agents)).unwrap();
    match rng.gen_range(0..6) {
        0 => Clause::initial((0..rng.gen_range(1..3)).map(|_| lit(rng)).collect::<Vec<_>>()),
        1 | 2 => Clause::literal((0..rng.gen_range(1..4)).map(|_| lit(rng)).collect::<Vec<_>>()),
        3 | 4 => Clause::positive(lit(rng), agent, lit(rng)),
        _ => Clause::negative(lit(rng), agent, lit(rng)),
    }
}

/// Both polarities of `names`, interned in `t`.
pub fn literals(t: &mut SymbolTable, names: &[&str]) -> Vec<Literal> {
    names.iter().flat_map(|n| {
        let s = t.intern(n);
        [Literal::pos(s), Literal::neg(s)]
    }).collect()
}

/// A conjunction of `n` random formulas; far more often unsatisfiable
/// than a single one.
pub fn conjunction(rng: &mut impl Rng, n: usize, depth: usize, agents: u32, props: usize) -> Formula {
    (1..n).fold(formula(rng, depth, agents, props), |acc, _| Formula::and(acc, formula(rng, depth, agents, props)))
}
