//! Brute-force model semantics over bitmask interpretations.
//!
//! An interpretation is a `u32` whose bits select atoms of an [`Alphabet`]
//! (at most 32 atoms; practical limits are far lower and guarded by
//! [`Limits`]). Literal satisfaction is membership-based: an atom outside
//! the alphabet is false in every interpretation, which is what makes the
//! reserved-atom tautology `_tau :- _tau.` tautological over any alphabet.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Alphabet, Literal, Program, Rule, RuleBase};
use crate::{Error, Result};

/// Enumeration caps. Two-valued enumeration visits `2^n` interpretations,
/// three-valued enumeration visits `3^n` ordered pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub two_valued: usize,
    pub three_valued: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            two_valued: 12,
            three_valued: 9,
        }
    }
}

impl Limits {
    /// A single cap applied to both enumeration styles.
    pub fn uniform(cap: usize) -> Self {
        Limits {
            two_valued: cap,
            three_valued: cap,
        }
    }

    pub fn check_two_valued(&self, alphabet: &Alphabet) -> Result<()> {
        if alphabet.len() > self.two_valued {
            Err(Error::CapExceeded {
                atoms: alphabet.len(),
                cap: self.two_valued,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_three_valued(&self, alphabet: &Alphabet) -> Result<()> {
        if alphabet.len() > self.three_valued {
            Err(Error::CapExceeded {
                atoms: alphabet.len(),
                cap: self.three_valued,
            })
        } else {
            Ok(())
        }
    }
}

/// Which three-valued model notion a pair set uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Strong: pair models requiring the total part to be a classical model.
    Se,
    /// Robust: pair models constrained by the reduct only.
    Re,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Se => "se",
            ModelKind::Re => "re",
        })
    }
}

/// Satisfaction of a literal in interpretation `j`.
pub fn literal_sat(lit: &Literal, alphabet: &Alphabet, j: u32) -> bool {
    let member = alphabet
        .index_of(&lit.atom)
        .is_some_and(|i| j & (1 << i) != 0);
    member != lit.negated
}

/// Classical satisfaction of a rule: if the body holds, some head literal
/// holds.
pub fn rule_sat(rule: &Rule, alphabet: &Alphabet, j: u32) -> bool {
    !rule.body.iter().all(|l| literal_sat(l, alphabet, j))
        || rule.head.iter().any(|l| literal_sat(l, alphabet, j))
}

pub fn program_sat(p: &Program, alphabet: &Alphabet, j: u32) -> bool {
    p.rules.iter().all(|r| rule_sat(r, alphabet, j))
}

/// The reduct of a rule with respect to total interpretation `j`: if no
/// negative body atom is in `j` and every negative head atom is, the rule
/// contributes its positive part; otherwise it degenerates to the canonical
/// tautology.
pub fn reduct_rule(rule: &Rule, alphabet: &Alphabet, j: u32) -> Rule {
    let in_j = |atom: &str| alphabet.index_of(atom).is_some_and(|i| j & (1 << i) != 0);
    let body_neg_clear = rule
        .body
        .iter()
        .filter(|l| l.negated)
        .all(|l| !in_j(&l.atom));
    let head_neg_in = rule
        .head
        .iter()
        .filter(|l| l.negated)
        .all(|l| in_j(&l.atom));
    if body_neg_clear && head_neg_in {
        Rule::new(
            rule.head.iter().filter(|l| !l.negated).cloned(),
            rule.body.iter().filter(|l| !l.negated).cloned(),
        )
    } else {
        Rule::tautology()
    }
}

pub fn reduct_program(p: &Program, alphabet: &Alphabet, j: u32) -> Program {
    Program::new(p.rules.iter().map(|r| reduct_rule(r, alphabet, j)))
}

/// All classical models of a program, sorted.
pub fn classical_models(p: &Program, alphabet: &Alphabet, limits: &Limits) -> Result<Vec<u32>> {
    limits.check_two_valued(alphabet)?;
    let full = alphabet.full_mask();
    Ok((0..=full)
        .filter(|&j| program_sat(p, alphabet, j))
        .collect())
}

/// Whether `j` is a stable model: a model of the reduct with no proper
/// subset also modelling the reduct.
pub fn is_stable_model(p: &Program, alphabet: &Alphabet, j: u32) -> bool {
    let red = reduct_program(p, alphabet, j);
    if !program_sat(&red, alphabet, j) {
        return false;
    }
    // No proper subset of j may satisfy the reduct.
    let mut i = (j.wrapping_sub(1)) & j;
    while i != j {
        if program_sat(&red, alphabet, i) {
            return false;
        }
        if i == 0 {
            break;
        }
        i = (i - 1) & j;
    }
    true
}

/// Stable models of a program: subset-minimal models of its own reduct.
pub fn stable_models(p: &Program, alphabet: &Alphabet, limits: &Limits) -> Result<Vec<u32>> {
    limits.check_two_valued(alphabet)?;
    let full = alphabet.full_mask();
    Ok((0..=full)
        .filter(|&j| is_stable_model(p, alphabet, j))
        .collect())
}

/// Stable models of a rule base: subset-minimal models of the unit-wise
/// reduct (a model must satisfy the reduct of every unit).
pub fn stable_models_rule_base(
    r: &RuleBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<u32>> {
    stable_models(&r.all_rules(), alphabet, limits)
}

/// A set of ordered pairs `(i, j)` of interpretations with `i ⊆ j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelSet {
    pub pairs: BTreeSet<(u32, u32)>,
}

impl ModelSet {
    pub fn empty() -> ModelSet {
        ModelSet {
            pairs: BTreeSet::new(),
        }
    }

    /// The set of all pairs over the alphabet.
    pub fn full(alphabet: &Alphabet) -> ModelSet {
        let mut pairs = BTreeSet::new();
        for_each_pair(alphabet, |i, j| {
            pairs.insert((i, j));
        });
        ModelSet { pairs }
    }

    pub fn is_full(&self, alphabet: &Alphabet) -> bool {
        self.pairs.len() == pair_count(alphabet.len())
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        ModelSet {
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        }
    }

    pub fn intersect(&self, other: &ModelSet) -> ModelSet {
        ModelSet {
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        ModelSet {
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// Render as `{<{..},{..}>, ...}` over the given alphabet.
    pub fn show(&self, alphabet: &Alphabet) -> String {
        let items: Vec<String> = self
            .pairs
            .iter()
            .map(|&(i, j)| format!("<{}, {}>", alphabet.show_mask(i), alphabet.show_mask(j)))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// Number of pairs `i ⊆ j` over `n` atoms: `3^n`.
pub fn pair_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Visit every pair `(i, j)` with `i ⊆ j` over the alphabet.
pub fn for_each_pair(alphabet: &Alphabet, mut f: impl FnMut(u32, u32)) {
    let full = alphabet.full_mask();
    for j in 0..=full {
        let mut i = j;
        loop {
            f(i, j);
            if i == 0 {
                break;
            }
            i = (i - 1) & j;
        }
    }
}

/// Pair models of a single rule under the given notion.
pub fn pair_models_rule(
    rule: &Rule,
    kind: ModelKind,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<ModelSet> {
    limits.check_three_valued(alphabet)?;
    let mut pairs = BTreeSet::new();
    for_each_pair(alphabet, |i, j| {
        let red = reduct_rule(rule, alphabet, j);
        let robust = rule_sat(&red, alphabet, i);
        let ok = match kind {
            ModelKind::Re => robust,
            ModelKind::Se => robust && rule_sat(rule, alphabet, j),
        };
        if ok {
            pairs.insert((i, j));
        }
    });
    Ok(ModelSet { pairs })
}

/// Pair models of a program: intersection over its rules.
pub fn pair_models(
    p: &Program,
    kind: ModelKind,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<ModelSet> {
    limits.check_three_valued(alphabet)?;
    let mut pairs = BTreeSet::new();
    for_each_pair(alphabet, |i, j| {
        let red = reduct_program(p, alphabet, j);
        let robust = program_sat(&red, alphabet, i);
        let ok = match kind {
            ModelKind::Re => robust,
            ModelKind::Se => robust && program_sat(p, alphabet, j),
        };
        if ok {
            pairs.insert((i, j));
        }
    });
    Ok(ModelSet { pairs })
}

/// Strong pair models.
pub fn se_models(p: &Program, alphabet: &Alphabet, limits: &Limits) -> Result<ModelSet> {
    pair_models(p, ModelKind::Se, alphabet, limits)
}

/// Robust pair models.
pub fn re_models(p: &Program, alphabet: &Alphabet, limits: &Limits) -> Result<ModelSet> {
    pair_models(p, ModelKind::Re, alphabet, limits)
}

/// Pair models of every unit of a rule base, deduplicated and sorted.
pub fn pair_models_rule_base(
    r: &RuleBase,
    kind: ModelKind,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<ModelSet>> {
    let mut out = BTreeSet::new();
    for unit in &r.units {
        out.insert(pair_models(unit, kind, alphabet, limits)?);
    }
    Ok(out.into_iter().collect())
}

/// Stable models read off the robust pair models: `j` is stable iff
/// `(j, j)` is a pair model and no proper subset `i` of `j` yields one.
pub fn stable_models_via_pairs(
    p: &Program,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<u32>> {
    let re = re_models(p, alphabet, limits)?;
    let full = alphabet.full_mask();
    let mut out = Vec::new();
    for j in 0..=full {
        if !re.contains(j, j) {
            continue;
        }
        let mut minimal = true;
        let mut i = (j.wrapping_sub(1)) & j;
        while i != j {
            if re.contains(i, j) {
                minimal = false;
                break;
            }
            if i == 0 {
                break;
            }
            i = (i - 1) & j;
        }
        if minimal {
            out.push(j);
        }
    }
    Ok(out)
}
