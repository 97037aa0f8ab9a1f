#![allow(dead_code)]

use confluence_core::{Agent, Formula, Literal, SymbolTable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PROPS: [&str; 3] = ["p", "q", "r"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random formula of modal depth at most `depth` and at most `height`
/// nested connectives.
pub fn formula(rng: &mut impl Rng, depth: usize, height: usize, agents: u32, props: usize) -> Formula {
    if height == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..12) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::prop(PROPS[rng.gen_range(0..props)]),
        };
    }
    if depth > 0 && rng.gen_bool(0.45) {
        let a = Agent::new(rng.gen_range(1..=agents)).unwrap();
        let inner = formula(rng, depth - 1, height - 1, agents, props);
        return if rng.gen_bool(0.5) { Formula::boxed(a, inner) } else { Formula::dia(a, inner) };
    }
    let op = rng.gen_range(0..9);
    let mut sub = || formula(rng, depth, height - 1, agents, props);
    match op {
        0 | 1 => Formula::not(sub()),
        2 | 3 => Formula::and(sub(), sub()),
        4 | 5 => Formula::or(sub(), sub()),
        6 | 7 => Formula::implies(sub(), sub()),
        _ => Formula::iff(sub(), sub()),
    }
}

/// A literal over `names`, interned in `t`.
pub fn literal<R: Rng + ?Sized>(rng: &mut R, t: &mut SymbolTable, names: &[&str]) -> Literal {
    let s = t.intern(names[rng.gen_range(0..names.len())]);
    Literal::new(s, rng.gen_bool(0.5))
}

/// `n` literals over distinct symbols drawn from `names`.
pub fn distinct_literals(rng: &mut impl Rng, t: &mut SymbolTable, names: &[&str], n: usize) -> Vec<Literal> {
    let picked = rand::seq::index::sample(rng, names.len(), n);
    picked.into_iter().map(|i| Literal::new(t.intern(names[i]), rng.gen_bool(0.5))).collect()
}
