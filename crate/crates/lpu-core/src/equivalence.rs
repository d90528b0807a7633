//! Equivalence and entailment relations between rule bases.
//!
//! Eight equivalence notions are supported; entailment exists for all of
//! them except the stable-model notion, which has no meaningful one-way
//! variant here.

use std::collections::BTreeSet;

use crate::semantics::{pair_models, stable_models_rule_base, Limits, ModelKind, ModelSet};
use crate::syntax::{Alphabet, Program, Rule, RuleBase};
use crate::{Error, Result};

/// An equivalence / entailment relation between rule bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// Equal stable models.
    Sm,
    /// Equal strong pair-model sets of the flattened rule bases.
    Se,
    /// Equal robust pair-model sets of the flattened rule bases.
    Re,
    /// Equal minimal families of unit-wise strong pair-model sets.
    Smr,
    /// Equal minimal families of unit-wise robust pair-model sets.
    Rmr,
    /// Equal families of unit-wise strong pair-model sets.
    Sr,
    /// Equal families of unit-wise robust pair-model sets.
    Rr,
    /// Syntactic: the symmetric difference of the rule sets is tautological.
    Su,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::Sm,
        Relation::Se,
        Relation::Re,
        Relation::Smr,
        Relation::Rmr,
        Relation::Sr,
        Relation::Rr,
        Relation::Su,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Sm => "sm",
            Relation::Se => "se",
            Relation::Re => "re",
            Relation::Smr => "smr",
            Relation::Rmr => "rmr",
            Relation::Sr => "sr",
            Relation::Rr => "rr",
            Relation::Su => "su",
        }
    }

    pub fn parse(s: &str) -> Result<Relation> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown relation `{s}`")))
    }
}

/// The rule base extended with a singleton unit for the canonical tautology.
fn with_tau(r: &RuleBase) -> RuleBase {
    let mut out = r.clone();
    out.units.push(Program::new([Rule::tautology()]));
    out
}

/// The family of unit-wise pair-model sets, deduplicated.
pub fn unit_model_family(
    r: &RuleBase,
    kind: ModelKind,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<BTreeSet<ModelSet>> {
    let mut out = BTreeSet::new();
    for unit in &r.units {
        out.insert(pair_models(unit, kind, alphabet, limits)?);
    }
    Ok(out)
}

/// Subset-minimal members of a family of model sets.
pub fn minimal_family(family: &BTreeSet<ModelSet>) -> BTreeSet<ModelSet> {
    family
        .iter()
        .filter(|m| {
            !family
                .iter()
                .any(|n| n.pairs.is_subset(&m.pairs) && n.pairs != m.pairs)
        })
        .cloned()
        .collect()
}

/// Rules of `p` not occurring in `q`, compared by printed form.
fn rule_difference(p: &RuleBase, q: &RuleBase) -> Program {
    let printed_q: BTreeSet<String> = q.all_rules().rules.iter().map(|r| r.to_string()).collect();
    Program::new(
        p.all_rules()
            .rules
            .into_iter()
            .filter(|r| !printed_q.contains(&r.to_string())),
    )
}

/// Do `p` and `q` stand in equivalence relation `rel` over `alphabet`?
pub fn equivalent(
    rel: Relation,
    p: &RuleBase,
    q: &RuleBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    match rel {
        Relation::Sm => Ok(stable_models_rule_base(p, alphabet, limits)?
            == stable_models_rule_base(q, alphabet, limits)?),
        Relation::Se | Relation::Re => {
            let kind = if rel == Relation::Se {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            Ok(pair_models(&p.all_rules(), kind, alphabet, limits)?
                == pair_models(&q.all_rules(), kind, alphabet, limits)?)
        }
        Relation::Sr | Relation::Rr => {
            let kind = if rel == Relation::Sr {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            Ok(unit_model_family(&with_tau(p), kind, alphabet, limits)?
                == unit_model_family(&with_tau(q), kind, alphabet, limits)?)
        }
        Relation::Smr | Relation::Rmr => {
            let kind = if rel == Relation::Smr {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            let fp = unit_model_family(&with_tau(p), kind, alphabet, limits)?;
            let fq = unit_model_family(&with_tau(q), kind, alphabet, limits)?;
            Ok(minimal_family(&fp) == minimal_family(&fq))
        }
        Relation::Su => {
            let mut sym = rule_difference(p, q);
            sym.rules.extend(rule_difference(q, p).rules);
            Ok(pair_models(&sym, ModelKind::Se, alphabet, limits)?.is_full(alphabet))
        }
    }
}

/// Does `p` entail `q` under relation `rel`? The stable-model relation has
/// no entailment variant and is rejected.
pub fn entails(
    rel: Relation,
    p: &RuleBase,
    q: &RuleBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    match rel {
        Relation::Sm => Err(Error::Invalid(
            "the stable-model relation has no entailment variant".into(),
        )),
        Relation::Se | Relation::Re => {
            let kind = if rel == Relation::Se {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            let mp = pair_models(&p.all_rules(), kind, alphabet, limits)?;
            let mq = pair_models(&q.all_rules(), kind, alphabet, limits)?;
            Ok(mp.is_subset(&mq))
        }
        Relation::Smr | Relation::Rmr => {
            let kind = if rel == Relation::Smr {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            let fp = unit_model_family(&with_tau(p), kind, alphabet, limits)?;
            let fq = unit_model_family(&with_tau(q), kind, alphabet, limits)?;
            Ok(fq
                .iter()
                .all(|sigma| fp.iter().any(|pi| pi.pairs.is_subset(&sigma.pairs))))
        }
        Relation::Sr | Relation::Rr => {
            let kind = if rel == Relation::Sr {
                ModelKind::Se
            } else {
                ModelKind::Re
            };
            let fp = unit_model_family(&with_tau(p), kind, alphabet, limits)?;
            let fq = unit_model_family(&with_tau(q), kind, alphabet, limits)?;
            Ok(fq.iter().all(|sigma| fp.contains(sigma)))
        }
        Relation::Su => {
            let diff = rule_difference(q, p);
            Ok(pair_models(&diff, ModelKind::Se, alphabet, limits)?.is_full(alphabet))
        }
    }
}
