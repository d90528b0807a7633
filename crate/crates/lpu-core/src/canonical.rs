//! Canonical rule forms, rule induction from pair-model sets, and
//! materialization of arbitrary pair-model sets as programs.

use std::collections::BTreeSet;

use crate::semantics::{for_each_pair, pair_models, Limits, ModelKind, ModelSet};
use crate::syntax::{Alphabet, Literal, Program, Rule};
use crate::Result;

/// Rewrite a rule into the canonical representative of its equivalence
/// class under the given model notion.
///
/// If some atom occurs positively in both head and body, negatively in both
/// head and body, or with both polarities in the body, the rule is
/// tautological and the canonical tautology is returned. Otherwise repeated
/// atoms across head and body are stripped. Under [`ModelKind::Se`] a rule
/// whose remaining positive head is empty canonicalizes to a constraint.
pub fn canonicalize(rule: &Rule, kind: ModelKind) -> Rule {
    let hp = rule.head_pos();
    let hn = rule.head_neg();
    let bp = rule.body_pos();
    let bn = rule.body_neg();
    let overlap = hp.intersection(&bp).next().is_some()
        || hn.intersection(&bn).next().is_some()
        || bp.intersection(&bn).next().is_some();
    if overlap {
        return Rule::tautology();
    }
    let hp2: BTreeSet<&str> = hp.difference(&bn).copied().collect();
    let hn2: BTreeSet<&str> = hn.difference(&bp).copied().collect();
    match kind {
        ModelKind::Re => build_rule(&hp2, &hn2, &bp, &bn),
        ModelKind::Se => {
            if !hp2.is_empty() {
                build_rule(&hp2, &hn2, &bp, &bn)
            } else {
                // Constraint: negative head atoms move into the positive body.
                let bp2: BTreeSet<&str> = bp.union(&hn).copied().collect();
                build_rule(&BTreeSet::new(), &BTreeSet::new(), &bp2, &bn)
            }
        }
    }
}

fn build_rule(
    hp: &BTreeSet<&str>,
    hn: &BTreeSet<&str>,
    bp: &BTreeSet<&str>,
    bn: &BTreeSet<&str>,
) -> Rule {
    Rule::new(
        hp.iter()
            .map(|a| Literal::pos(*a))
            .chain(hn.iter().map(|a| Literal::neg(*a))),
        bp.iter()
            .map(|a| Literal::pos(*a))
            .chain(bn.iter().map(|a| Literal::neg(*a))),
    )
}

/// Whether the program has every pair over the alphabet as a model under
/// the given notion. The two notions agree on tautologihood.
pub fn is_tautological(
    p: &Program,
    kind: ModelKind,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    Ok(pair_models(p, kind, alphabet, limits)?.is_full(alphabet))
}

/// Reconstruct a rule from a set of robust pair models.
///
/// For robust-canonical rules this inverts [`pair_models_rule`]
/// (`crate::semantics::pair_models_rule`) exactly; on arbitrary inputs it
/// returns the weakest rule in the induced syntactic family.
pub fn induce_rule(ms: &ModelSet, alphabet: &Alphabet) -> Rule {
    if ms.is_full(alphabet) {
        return Rule::tautology();
    }
    let atoms = alphabet.atoms();
    let holds_whenever = |pred: &dyn Fn(u32, u32) -> bool| -> BTreeSet<&str> {
        let mut out: BTreeSet<&str> = atoms.iter().map(String::as_str).collect();
        for_each_pair(alphabet, |i, j| {
            out.retain(|a| {
                let bit = 1u32 << alphabet.index_of(a).unwrap();
                // Keep `a` only if every pair selected by `pred` is a model.
                !pred(i & bit, j & bit) || ms.contains(i, j)
            });
        });
        out
    };
    let body_neg = holds_whenever(&|_, jbit| jbit != 0);
    let head_pos: BTreeSet<&str> = holds_whenever(&|ibit, _| ibit != 0)
        .difference(&body_neg)
        .copied()
        .collect();
    let body_pos = holds_whenever(&|ibit, _| ibit == 0);
    let head_neg: BTreeSet<&str> = holds_whenever(&|_, jbit| jbit == 0)
        .difference(&body_pos)
        .copied()
        .collect();
    build_rule(&head_pos, &head_neg, &body_pos, &body_neg)
}

/// Materialize an arbitrary pair-model set as a program whose robust pair
/// models are exactly the given set: one excluding rule per non-model pair.
pub fn materialize_program(ms: &ModelSet, alphabet: &Alphabet) -> Program {
    let mut rules = Vec::new();
    for_each_pair(alphabet, |i, j| {
        if ms.contains(i, j) {
            return;
        }
        let mut head = Vec::new();
        let mut body = Vec::new();
        for (idx, atom) in alphabet.atoms().iter().enumerate() {
            let bit = 1u32 << idx;
            if i & bit == 0 {
                head.push(Literal::pos(atom.clone()));
            } else {
                body.push(Literal::pos(atom.clone()));
            }
            if j & bit != 0 {
                head.push(Literal::neg(atom.clone()));
            } else {
                body.push(Literal::neg(atom.clone()));
            }
        }
        rules.push(Rule::new(head, body));
    });
    Program::new(rules)
}
