//! Shared helpers for integration tests: seeded random generators for
//! rules, programs and formulas over small alphabets.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use lpu_core::formula::Formula;
use lpu_core::syntax::{Alphabet, Dlp, Literal, Program, Rule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ATOMS: [&str; 4] = ["p", "q", "r", "s"];

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new(ATOMS[..n].iter().copied())
}

/// A random literal over the first `n` atoms.
pub fn random_literal(rng: &mut ChaCha8Rng, n: usize) -> Literal {
    let atom = ATOMS[rng.gen_range(0..n)];
    if rng.gen_bool(0.5) {
        Literal::neg(atom)
    } else {
        Literal::pos(atom)
    }
}

/// A random rule with head size in `heads` and body size in `bodies`.
pub fn random_rule(
    rng: &mut ChaCha8Rng,
    n: usize,
    heads: std::ops::RangeInclusive<usize>,
    bodies: std::ops::RangeInclusive<usize>,
) -> Rule {
    let h = rng.gen_range(heads);
    let b = rng.gen_range(bodies);
    let head: Vec<Literal> = (0..h).map(|_| random_literal(rng, n)).collect();
    let body: Vec<Literal> = (0..b).map(|_| random_literal(rng, n)).collect();
    Rule::new(head, body)
}

/// A random non-disjunctive program.
pub fn random_program(rng: &mut ChaCha8Rng, n: usize, max_rules: usize) -> Program {
    let k = rng.gen_range(0..=max_rules);
    Program::new((0..k).map(|_| random_rule(rng, n, 0..=1, 0..=3)))
}

/// A random non-disjunctive program without local cycles (no head atom in
/// its own body) and optionally without constraints.
pub fn random_acyclic_rule_program(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_rules: usize,
    allow_constraints: bool,
) -> Program {
    let k = rng.gen_range(0..=max_rules);
    let mut rules = Vec::new();
    while rules.len() < k {
        let min_head = usize::from(!allow_constraints);
        let r = random_rule(rng, n, min_head..=1, 0..=3);
        if !r.has_local_cycle() {
            rules.push(r);
        }
    }
    Program::new(rules)
}

/// A random sequence of programs.
pub fn random_dlp(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_programs: usize,
    max_rules: usize,
    local_cycles: bool,
) -> Dlp {
    let m = rng.gen_range(1..=max_programs);
    Dlp::new((0..m).map(|_| {
        if local_cycles {
            random_program(rng, n, max_rules)
        } else {
            random_acyclic_rule_program(rng, n, max_rules, true)
        }
    }))
}

/// A random formula of bounded depth.
pub fn random_formula(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(ATOMS[rng.gen_range(0..n)]),
        };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, n, depth - 1)),
        1 => Formula::and([
            random_formula(rng, n, depth - 1),
            random_formula(rng, n, depth - 1),
        ]),
        2 => Formula::or([
            random_formula(rng, n, depth - 1),
            random_formula(rng, n, depth - 1),
        ]),
        3 => Formula::Implies(
            Box::new(random_formula(rng, n, depth - 1)),
            Box::new(random_formula(rng, n, depth - 1)),
        ),
        _ => Formula::Iff(
            Box::new(random_formula(rng, n, depth - 1)),
            Box::new(random_formula(rng, n, depth - 1)),
        ),
    }
}

/// A random knowledge base with up to `max_formulas` formulas.
#[allow(dead_code)]
pub fn random_kb(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_formulas: usize,
) -> lpu_core::formula::KnowledgeBase {
    let k = rng.gen_range(1..=max_formulas);
    lpu_core::formula::KnowledgeBase::new((0..k).map(|_| random_formula(rng, n, 2)))
}

/// A random sequence of consistent fact programs.
#[allow(dead_code)]
pub fn random_fact_dlp(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_programs: usize,
    max_facts: usize,
) -> Dlp {
    let m = rng.gen_range(1..=max_programs);
    Dlp::new((0..m).map(|_| {
        let k = rng.gen_range(0..=max_facts);
        let mut rules = Vec::new();
        let mut used: Vec<String> = Vec::new();
        for _ in 0..k {
            let l = random_literal(rng, n);
            if !used.contains(&l.atom) {
                used.push(l.atom.clone());
                rules.push(lpu_core::syntax::Rule::new([l], []));
            }
        }
        Program::new(rules)
    }))
}

/// Stable models over `alphabet` of a program that may mention the hidden
/// constraint atom: models setting it are dropped, the rest remapped.
#[allow(dead_code)]
pub fn project_models(
    has_bot: bool,
    alphabet: &Alphabet,
    f: impl Fn(&Alphabet) -> Vec<u32>,
) -> std::collections::BTreeSet<u32> {
    use lpu_core::syntax::BOT_ATOM;
    if !has_bot {
        return f(alphabet).into_iter().collect();
    }
    let inner = alphabet.extend([BOT_ATOM]);
    let bot = 1u32 << inner.index_of(BOT_ATOM).unwrap();
    f(&inner)
        .into_iter()
        .filter(|m| m & bot == 0)
        .map(|m| {
            let mut out = 0;
            for (idx, atom) in inner.atoms().iter().enumerate() {
                if m & (1 << idx) != 0 {
                    out |= 1 << alphabet.index_of(atom).unwrap();
                }
            }
            out
        })
        .collect()
}

/// Interpretation mask for the named atoms.
pub fn mask(alphabet: &Alphabet, atoms: &[&str]) -> u32 {
    atoms
        .iter()
        .map(|a| 1u32 << alphabet.index_of(a).expect("atom in alphabet"))
        .fold(0, |acc, b| acc | b)
}
