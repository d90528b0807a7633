//! Exception-driven updates of rule bases.
//!
//! An update weakens each unit of the original rule base by adding
//! "exception" pairs to its robust pair-model set, then adjoins the update
//! units unchanged. The five [`DeltaVariant`]s differ in which pairs count
//! as exceptions when two model sets force conflicting values for an atom.

use std::collections::BTreeSet;

use crate::canonical::{induce_rule, materialize_program};
use crate::equivalence::{entails, equivalent, Relation};
use crate::semantics::{
    pair_models, pair_models_rule, re_models, stable_models_rule_base, Limits, ModelKind, ModelSet,
};
use crate::syntax::{Alphabet, Program, RuleBase};
use crate::{Error, Result};

/// Replace the truth value of the atom at bit `bit` in interpretation `j`.
pub fn substitute(j: u32, bit: u32, value: bool) -> u32 {
    if value {
        j | bit
    } else {
        j & !bit
    }
}

/// A forced truth value: true, false, or undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Forced {
    True,
    Undef,
    False,
}

/// The truth value for the atom at `bit` forced by `ms` at total
/// interpretation `j`: defined when exactly one of the three truth-value
/// substitutions for that atom yields a member of `ms`.
pub fn forces(ms: &ModelSet, j: u32, bit: u32) -> Option<Forced> {
    let with = substitute(j, bit, true);
    let without = substitute(j, bit, false);
    let in_true = ms.contains(with, with);
    let in_undef = ms.contains(without, with);
    let in_false = ms.contains(without, without);
    match (in_true, in_undef, in_false) {
        (true, false, false) => Some(Forced::True),
        (false, true, false) => Some(Forced::Undef),
        (false, false, true) => Some(Forced::False),
        _ => None,
    }
}

/// Whether `m` and `n` force different values for the atom at `bit` at `j`.
pub fn in_conflict(m: &ModelSet, n: &ModelSet, j: u32, bit: u32) -> bool {
    match (forces(m, j, bit), forces(n, j, bit)) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// Exception-pair selection policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaVariant {
    A,
    B,
    C,
    D,
    E,
}

impl DeltaVariant {
    pub const ALL: [DeltaVariant; 5] = [
        DeltaVariant::A,
        DeltaVariant::B,
        DeltaVariant::C,
        DeltaVariant::D,
        DeltaVariant::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeltaVariant::A => "a",
            DeltaVariant::B => "b",
            DeltaVariant::C => "c",
            DeltaVariant::D => "d",
            DeltaVariant::E => "e",
        }
    }

    pub fn parse(s: &str) -> Result<DeltaVariant> {
        DeltaVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown delta variant `{s}`")))
    }
}

/// All conflict witnesses `(j, bit)` between `m` and `n` over the alphabet.
fn conflicts(m: &ModelSet, n: &ModelSet, alphabet: &Alphabet) -> Vec<(u32, u32)> {
    let full = alphabet.full_mask();
    let mut out = Vec::new();
    for j in 0..=full {
        for idx in 0..alphabet.len() {
            let bit = 1u32 << idx;
            if in_conflict(m, n, j, bit) {
                out.push((j, bit));
            }
        }
    }
    out
}

/// Exception pairs contributed by update model set `n` against original `m`.
pub fn delta(variant: DeltaVariant, m: &ModelSet, n: &ModelSet, alphabet: &Alphabet) -> ModelSet {
    match variant {
        DeltaVariant::D => {
            if m == n {
                return ModelSet::full(alphabet);
            }
            delta(DeltaVariant::B, m, n, alphabet)
        }
        DeltaVariant::E => {
            if m == n {
                return ModelSet::full(alphabet);
            }
            delta(DeltaVariant::C, m, n, alphabet)
        }
        DeltaVariant::A => {
            let mut pairs = BTreeSet::new();
            for (j, _) in conflicts(m, n, alphabet) {
                let mut i = j;
                loop {
                    pairs.insert((i, j));
                    if i == 0 {
                        break;
                    }
                    i = (i - 1) & j;
                }
            }
            ModelSet { pairs }
        }
        DeltaVariant::B | DeltaVariant::C => {
            let full = alphabet.full_mask();
            let mut pairs = BTreeSet::new();
            for (j, bit) in conflicts(m, n, alphabet) {
                // Enumerate i ⊆ j and k ⊇ j.
                let free = full & !j;
                let mut extra = 0u32;
                loop {
                    let k = j | extra;
                    let mut i = j;
                    loop {
                        let changes = k & bit != 0 && i & bit == 0;
                        let admissible = if !changes {
                            true
                        } else {
                            k == j && (variant == DeltaVariant::B || !m.contains(j, j))
                        };
                        if admissible {
                            pairs.insert((i, k));
                        }
                        if i == 0 {
                            break;
                        }
                        i = (i - 1) & j;
                    }
                    if extra == free {
                        break;
                    }
                    extra = (extra.wrapping_sub(free)) & free;
                }
            }
            ModelSet { pairs }
        }
    }
}

/// Union of per-update-unit exception pairs.
pub fn epsilon(
    variant: DeltaVariant,
    m: &ModelSet,
    updates: &[ModelSet],
    alphabet: &Alphabet,
) -> ModelSet {
    let mut out = ModelSet::empty();
    for n in updates {
        out = out.union(&delta(variant, m, n, alphabet));
    }
    out
}

/// Materialize a pair-model set as a unit: prefer a single induced rule
/// when it reproduces the set exactly, otherwise use the excluding-rule
/// program construction.
fn materialize_unit(
    ms: &ModelSet,
    alphabet: &Alphabet,
    limits: &Limits,
    try_single_rule: bool,
) -> Result<Program> {
    if try_single_rule {
        let rule = induce_rule(ms, alphabet);
        if pair_models_rule(&rule, ModelKind::Re, alphabet, limits)? == *ms {
            return Ok(Program::new([rule]));
        }
    }
    Ok(materialize_program(ms, alphabet))
}

/// Update rule base `r` by rule base `u`: weaken every unit of `r` with the
/// exception pairs selected by `variant`, then adjoin the units of `u`
/// unchanged (rule ids preserved).
pub fn update(
    variant: DeltaVariant,
    r: &RuleBase,
    u: &RuleBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<RuleBase> {
    let update_sets: Vec<ModelSet> = {
        let mut seen = BTreeSet::new();
        for unit in &u.units {
            seen.insert(re_models(unit, alphabet, limits)?);
        }
        seen.into_iter().collect()
    };
    let mut units: Vec<Program> = Vec::new();
    let push_unique = |units: &mut Vec<Program>, p: Program| {
        if !units.iter().any(|q| crate::syntax::programs_equal(q, &p)) {
            units.push(p);
        }
    };
    for unit in &r.units {
        let m = re_models(unit, alphabet, limits)?;
        let aug = m.union(&epsilon(variant, &m, &update_sets, alphabet));
        let single = unit.rules.len() == 1;
        push_unique(
            &mut units,
            materialize_unit(&aug, alphabet, limits, single)?,
        );
    }
    for unit in &u.units {
        push_unique(&mut units, unit.clone());
    }
    Ok(RuleBase { units })
}

/// Left fold of [`update`] over a sequence of programs, starting from the
/// empty rule base; each program enters as one singleton unit per rule.
pub fn update_sequence(
    variant: DeltaVariant,
    programs: &[Program],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<RuleBase> {
    let mut acc = RuleBase::default();
    for p in programs {
        let u = RuleBase::from_rules(p);
        acc = update(variant, &acc, &u, alphabet, limits)?;
    }
    Ok(acc)
}

/// A named update postulate checked on concrete inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateProperty {
    Initialisation,
    Disjointness,
    P1,
    P2Top,
    NonInterference,
    Tautology,
    Immunity,
    Idempotence,
    Absorption,
    Augmentation,
    Associativity,
    B21,
    B22,
    B3,
    B4,
    B5,
    B6,
}

impl UpdateProperty {
    pub fn parse(s: &str) -> Result<UpdateProperty> {
        use UpdateProperty::*;
        Ok(match s {
            "initialisation" => Initialisation,
            "disjointness" => Disjointness,
            "p1" => P1,
            "p2-top" => P2Top,
            "non-interference" => NonInterference,
            "tautology" => Tautology,
            "immunity" => Immunity,
            "idempotence" => Idempotence,
            "absorption" => Absorption,
            "augmentation" => Augmentation,
            "associativity" => Associativity,
            "b2.1" => B21,
            "b2.2" => B22,
            "b3" => B3,
            "b4" => B4,
            "b5" => B5,
            "b6" => B6,
            _ => return Err(Error::Invalid(format!("unknown update property `{s}`"))),
        })
    }
}

/// Inputs for [`check_update_property`]; properties use the subset of
/// fields they mention.
#[derive(Clone, Debug, Default)]
pub struct UpdateInstance {
    pub r: RuleBase,
    pub s: RuleBase,
    pub u: RuleBase,
    pub v: RuleBase,
}

fn is_tautological_base(b: &RuleBase, alphabet: &Alphabet, limits: &Limits) -> Result<bool> {
    for unit in &b.units {
        if !re_models(unit, alphabet, limits)?.is_full(alphabet) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn disjoint_atoms(a: &RuleBase, b: &RuleBase) -> bool {
    a.atoms().intersection(&b.atoms()).next().is_none()
}

/// Rule-wise inclusion by printed form.
fn base_subset(a: &RuleBase, b: &RuleBase) -> bool {
    let printed: BTreeSet<String> = b.all_rules().rules.iter().map(|r| r.to_string()).collect();
    a.all_rules()
        .rules
        .iter()
        .all(|r| printed.contains(&r.to_string()))
}

/// Check a single update postulate instance under equivalence relation
/// `rel`. Conditional postulates are vacuously true when their premise
/// fails on the instance.
pub fn check_update_property(
    prop: UpdateProperty,
    variant: DeltaVariant,
    rel: Relation,
    inst: &UpdateInstance,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    use UpdateProperty::*;
    let upd = |r: &RuleBase, u: &RuleBase| update(variant, r, u, alphabet, limits);
    let eqv = |a: &RuleBase, b: &RuleBase| equivalent(rel, a, b, alphabet, limits);
    let ent = |a: &RuleBase, b: &RuleBase| entails(rel, a, b, alphabet, limits);
    let (r, s, u, v) = (&inst.r, &inst.s, &inst.u, &inst.v);
    match prop {
        Initialisation => eqv(&upd(&RuleBase::default(), u)?, u),
        Disjointness => {
            if !disjoint_atoms(r, s) {
                return Ok(true);
            }
            eqv(&upd(&r.union(s), u)?, &upd(r, u)?.union(&upd(s, u)?))
        }
        P1 => ent(&upd(r, u)?, u),
        P2Top => eqv(&upd(r, &RuleBase::default())?, r),
        NonInterference => {
            if !disjoint_atoms(u, v) {
                return Ok(true);
            }
            eqv(&upd(&upd(r, u)?, v)?, &upd(&upd(r, v)?, u)?)
        }
        Tautology => {
            if !is_tautological_base(u, alphabet, limits)? {
                return Ok(true);
            }
            eqv(&upd(r, u)?, r)
        }
        Immunity => {
            if !is_tautological_base(s, alphabet, limits)?
                || !is_tautological_base(v, alphabet, limits)?
            {
                return Ok(true);
            }
            eqv(&upd(&r.union(s), &u.union(v))?, &upd(r, u)?)
        }
        Idempotence => eqv(&upd(r, r)?, r),
        Absorption => eqv(&upd(&upd(r, u)?, u)?, &upd(r, u)?),
        Augmentation => {
            if !base_subset(u, v) {
                return Ok(true);
            }
            eqv(&upd(&upd(r, u)?, v)?, &upd(r, v)?)
        }
        Associativity => eqv(&upd(&upd(r, u)?, v)?, &upd(r, &upd(u, v)?)?),
        B21 => ent(&r.union(u), &upd(r, u)?),
        B22 => ent(&upd(&r.union(u), u)?, r),
        B3 => {
            let consistent = |b: &RuleBase| -> Result<bool> {
                match rel {
                    Relation::Sm => Ok(!stable_models_rule_base(b, alphabet, limits)?.is_empty()),
                    Relation::Se | Relation::Re => {
                        let kind = if rel == Relation::Se {
                            ModelKind::Se
                        } else {
                            ModelKind::Re
                        };
                        Ok(!pair_models(&b.all_rules(), kind, alphabet, limits)?
                            .pairs
                            .is_empty())
                    }
                    _ => Err(Error::Invalid(
                        "consistency is not defined for this relation".into(),
                    )),
                }
            };
            if !consistent(r)? || !consistent(u)? {
                return Ok(true);
            }
            consistent(&upd(r, u)?)
        }
        B4 => {
            if !eqv(r, s)? || !eqv(u, v)? {
                return Ok(true);
            }
            eqv(&upd(r, u)?, &upd(s, v)?)
        }
        B5 => ent(&upd(r, u)?.union(v), &upd(r, &u.union(v))?),
        B6 => {
            if !ent(&upd(r, u)?, v)? || !ent(&upd(r, v)?, u)? {
                return Ok(true);
            }
            eqv(&upd(r, u)?, &upd(r, v)?)
        }
    }
}
