//! Classical belief update on formula knowledge bases, and the encoding of
//! those operators as exception functions over model sets.

use std::collections::BTreeSet;

use crate::formula::{Formula, KnowledgeBase};
use crate::semantics::Limits;
use crate::syntax::Alphabet;
use crate::{Error, Result};

/// A set of two-valued interpretations (bitmasks).
pub type InterpSet = BTreeSet<u32>;

/// Models of a single formula over the alphabet.
pub fn formula_models(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<InterpSet> {
    limits.check_two_valued(alphabet)?;
    let full = alphabet.full_mask();
    Ok((0..=full).filter(|&j| f.eval(alphabet, j)).collect())
}

/// Models of a knowledge base: intersection over its formulas.
pub fn kb_models(kb: &KnowledgeBase, alphabet: &Alphabet, limits: &Limits) -> Result<InterpSet> {
    limits.check_two_valued(alphabet)?;
    let full = alphabet.full_mask();
    Ok((0..=full)
        .filter(|&j| kb.formulas.iter().all(|f| f.eval(alphabet, j)))
        .collect())
}

/// The family of per-formula model sets of a knowledge base.
pub fn kb_model_family(
    kb: &KnowledgeBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<BTreeSet<InterpSet>> {
    let mut out = BTreeSet::new();
    for f in &kb.formulas {
        out.insert(formula_models(f, alphabet, limits)?);
    }
    Ok(out)
}

/// All interpretations over the alphabet.
pub fn all_interps(alphabet: &Alphabet) -> InterpSet {
    (0..=alphabet.full_mask()).collect()
}

/// Members of `candidates` whose symmetric difference with `origin` is
/// subset-minimal.
pub fn incorporate(candidates: &InterpSet, origin: u32) -> InterpSet {
    candidates
        .iter()
        .copied()
        .filter(|&j| {
            let d = j ^ origin;
            !candidates.iter().any(|&k| {
                let e = k ^ origin;
                e & !d == 0 && e != d
            })
        })
        .collect()
}

/// Model-based update: for every original model, keep the update models
/// that change a minimal set of atoms.
pub fn winslett_models(b_models: &InterpSet, u_models: &InterpSet) -> InterpSet {
    let mut out = InterpSet::new();
    for &i in b_models {
        out.extend(incorporate(u_models, i));
    }
    out
}

/// Model-level left fold of the model-based update over a sequence of
/// knowledge bases, starting from the empty (tautologous) base.
pub fn winslett_sequence(
    kbs: &[KnowledgeBase],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<InterpSet> {
    let mut state = all_interps(alphabet);
    for kb in kbs {
        let u = kb_models(kb, alphabet, limits)?;
        state = winslett_models(&state, &u);
    }
    Ok(state)
}

/// Maximal subsets of `b` consistent with `u`, in subset-bitmask order.
pub fn remainders(
    b: &KnowledgeBase,
    u: &KnowledgeBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<KnowledgeBase>> {
    let n = b.formulas.len();
    if n > 20 {
        return Err(Error::Invalid(format!(
            "knowledge base has {n} formulas; remainder enumeration caps at 20"
        )));
    }
    let u_models = kb_models(u, alphabet, limits)?;
    let mut consistent_subsets: Vec<u32> = Vec::new();
    for mask in 0..(1u32 << n) {
        let ok = u_models.iter().any(|&j| {
            b.formulas
                .iter()
                .enumerate()
                .all(|(i, f)| mask & (1 << i) == 0 || f.eval(alphabet, j))
        });
        if ok {
            consistent_subsets.push(mask);
        }
    }
    let maximal: Vec<u32> = consistent_subsets
        .iter()
        .copied()
        .filter(|&m| !consistent_subsets.iter().any(|&o| o != m && o & m == m))
        .collect();
    Ok(maximal
        .into_iter()
        .map(|m| {
            KnowledgeBase::new(
                b.formulas
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m & (1 << i) != 0)
                    .map(|(_, f)| f.clone()),
            )
        })
        .collect())
}

/// Formula-based update operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaOp {
    /// Keep only formulas common to all remainders.
    Widtio,
    /// Keep the disjunction of the conjunctions of all remainders.
    Cp,
    /// Keep one remainder chosen by the regular selector.
    Bold,
}

impl FormulaOp {
    pub fn parse(s: &str) -> Result<FormulaOp> {
        match s {
            "widtio" => Ok(FormulaOp::Widtio),
            "cp" => Ok(FormulaOp::Cp),
            "bold" => Ok(FormulaOp::Bold),
            _ => Err(Error::Invalid(format!("unknown operator `{s}`"))),
        }
    }
}

/// Pick the remainder whose canonical semantic key — the sorted list of its
/// formulas' model sets with the full interpretation set adjoined — is
/// lexicographically least. The choice therefore only depends on the
/// remainder's semantics.
pub fn regular_selector(
    rems: &[KnowledgeBase],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<usize> {
    if rems.is_empty() {
        return Err(Error::Invalid("no remainder to select from".into()));
    }
    let mut best: Option<(Vec<InterpSet>, usize)> = None;
    for (idx, r) in rems.iter().enumerate() {
        let mut key: Vec<InterpSet> = kb_model_family(r, alphabet, limits)?.into_iter().collect();
        key.push(all_interps(alphabet));
        key.sort();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, idx));
        }
    }
    Ok(best.unwrap().1)
}

/// Apply a formula-based update operator.
pub fn formula_update(
    op: FormulaOp,
    b: &KnowledgeBase,
    u: &KnowledgeBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<KnowledgeBase> {
    let rems = remainders(b, u, alphabet, limits)?;
    let kept: Vec<Formula> = match op {
        FormulaOp::Widtio => {
            let mut common: Vec<Formula> = match rems.first() {
                Some(r) => r.formulas.clone(),
                None => Vec::new(),
            };
            for r in &rems[1.min(rems.len())..] {
                common.retain(|f| r.formulas.contains(f));
            }
            common
        }
        FormulaOp::Cp => {
            vec![Formula::or(
                rems.iter()
                    .map(|r| Formula::and(r.formulas.iter().cloned())),
            )]
        }
        FormulaOp::Bold => {
            // An inconsistent update leaves no remainder; keep nothing.
            if rems.is_empty() {
                Vec::new()
            } else {
                let idx = regular_selector(&rems, alphabet, limits)?;
                rems[idx].formulas.clone()
            }
        }
    };
    Ok(u.union(&KnowledgeBase::new(kept)))
}

/// Left fold of [`formula_update`] over a sequence of knowledge bases,
/// starting from the empty base.
pub fn formula_update_sequence(
    op: FormulaOp,
    kbs: &[KnowledgeBase],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<KnowledgeBase> {
    let mut acc = KnowledgeBase::default();
    for kb in kbs {
        acc = formula_update(op, &acc, kb, alphabet, limits)?;
    }
    Ok(acc)
}

/// Full-DNF formula with exactly the given models: one conjunction of
/// signed atoms per model, in alphabet order.
pub fn dnf_formula(models: &InterpSet, alphabet: &Alphabet) -> Formula {
    Formula::or(models.iter().map(|&j| {
        Formula::and(alphabet.atoms().iter().enumerate().map(|(i, a)| {
            if j & (1 << i) != 0 {
                Formula::atom(a.clone())
            } else {
                Formula::not(Formula::atom(a.clone()))
            }
        }))
    }))
}

/// How a belief operator is turned into an exception function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodingStyle {
    /// For model-based operators: the exception set is the updated model
    /// set of representatives of the intersections.
    ModelBased,
    /// For formula-based operators: membership of the original model set in
    /// the updated family decides between no exceptions and all of them
    /// (for the one-remainder operators), or the updated base's models (for
    /// the disjunctive operator, single steps only).
    FormulaBased,
}

impl EncodingStyle {
    pub fn parse(s: &str) -> Result<EncodingStyle> {
        match s {
            "model-based" => Ok(EncodingStyle::ModelBased),
            "formula-based" => Ok(EncodingStyle::FormulaBased),
            _ => Err(Error::Invalid(format!("unknown encoding style `{s}`"))),
        }
    }
}

fn intersect_family(family: &[InterpSet], alphabet: &Alphabet) -> InterpSet {
    let mut out = all_interps(alphabet);
    for m in family {
        out = out.intersection(m).copied().collect();
    }
    out
}

/// Representative knowledge base whose per-formula model sets are `family`.
fn representative(family: &[InterpSet], alphabet: &Alphabet) -> KnowledgeBase {
    KnowledgeBase::new(family.iter().map(|m| dnf_formula(m, alphabet)))
}

/// The exception function encoding a belief operator. `m` is the model set
/// of one unit of the original base; `s` and `t` are the families of unit
/// model sets of the original base and the update.
pub fn encode_exception(
    style: EncodingStyle,
    op: Option<FormulaOp>,
    m: &InterpSet,
    s: &[InterpSet],
    t: &[InterpSet],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<InterpSet> {
    match (style, op) {
        (EncodingStyle::ModelBased, None) => {
            let b = intersect_family(s, alphabet);
            let u = intersect_family(t, alphabet);
            Ok(winslett_models(&b, &u))
        }
        (EncodingStyle::ModelBased, Some(_)) => Err(Error::Invalid(
            "the model-based encoding takes no formula operator".into(),
        )),
        (EncodingStyle::FormulaBased, Some(op)) => {
            let b = representative(s, alphabet);
            let u = representative(t, alphabet);
            let updated = formula_update(op, &b, &u, alphabet, limits)?;
            match op {
                FormulaOp::Widtio | FormulaOp::Bold => {
                    let mut family = kb_model_family(&updated, alphabet, limits)?;
                    family.insert(all_interps(alphabet));
                    if family.contains(m) {
                        Ok(InterpSet::new())
                    } else {
                        Ok(all_interps(alphabet))
                    }
                }
                FormulaOp::Cp => kb_models(&updated, alphabet, limits),
            }
        }
        (EncodingStyle::FormulaBased, None) => Err(Error::Invalid(
            "the formula-based encoding requires a formula operator".into(),
        )),
    }
}

/// Exception-driven update of a knowledge base: each formula is weakened by
/// the exceptions the encoder assigns to its model set, then the update's
/// formulas are adjoined unchanged. Weakened formulas are materialized in
/// full disjunctive normal form.
pub fn abstract_update(
    style: EncodingStyle,
    op: Option<FormulaOp>,
    k: &KnowledgeBase,
    u: &KnowledgeBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<KnowledgeBase> {
    let s: Vec<InterpSet> = kb_model_family(k, alphabet, limits)?.into_iter().collect();
    let t: Vec<InterpSet> = kb_model_family(u, alphabet, limits)?.into_iter().collect();
    let mut out = Vec::new();
    for m in &s {
        let eps = encode_exception(style, op, m, &s, &t, alphabet, limits)?;
        let aug: InterpSet = m.union(&eps).copied().collect();
        let f = dnf_formula(&aug, alphabet);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(KnowledgeBase::new(out).union(u))
}

/// Left fold of [`abstract_update`] from the empty knowledge base.
pub fn abstract_update_sequence(
    style: EncodingStyle,
    op: Option<FormulaOp>,
    kbs: &[KnowledgeBase],
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<KnowledgeBase> {
    let mut acc = KnowledgeBase::default();
    for kb in kbs {
        acc = abstract_update(style, op, &acc, kb, alphabet, limits)?;
    }
    Ok(acc)
}

/// A checkable postulate of a belief update operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Postulate {
    B1,
    B2,
    B2Top,
    B21,
    B22,
    B3,
    B4,
    B5,
    B6,
    Fu1,
    Fu21,
    Fu4,
}

impl Postulate {
    pub fn parse(s: &str) -> Result<Postulate> {
        use Postulate::*;
        Ok(match s {
            "b1" => B1,
            "b2" => B2,
            "b2-top" => B2Top,
            "b2.1" => B21,
            "b2.2" => B22,
            "b3" => B3,
            "b4" => B4,
            "b5" => B5,
            "b6" => B6,
            "fu1" => Fu1,
            "fu2.1" => Fu21,
            "fu4" => Fu4,
            _ => return Err(Error::Invalid(format!("unknown postulate `{s}`"))),
        })
    }
}

/// Inputs for [`check_postulate`]; postulates use the fields they mention.
#[derive(Clone, Debug, Default)]
pub struct BeliefInstance {
    pub b: KnowledgeBase,
    pub c: KnowledgeBase,
    pub u: KnowledgeBase,
    pub v: KnowledgeBase,
}

/// Family of per-formula model sets with the full set adjoined.
fn family_adjoined(
    kb: &KnowledgeBase,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<BTreeSet<InterpSet>> {
    let mut f = kb_model_family(kb, alphabet, limits)?;
    f.insert(all_interps(alphabet));
    Ok(f)
}

/// A belief update operator: the model-based one or a formula-based one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeliefOp {
    Winslett,
    Formula(FormulaOp),
}

impl BeliefOp {
    pub fn parse(s: &str) -> Result<BeliefOp> {
        if s == "winslett" {
            Ok(BeliefOp::Winslett)
        } else {
            Ok(BeliefOp::Formula(FormulaOp::parse(s)?))
        }
    }
}

/// Check one postulate instance. Conditional postulates hold vacuously when
/// their premise fails on the instance. The family-level postulates only
/// apply to formula-based operators.
pub fn check_postulate(
    post: Postulate,
    op: BeliefOp,
    inst: &BeliefInstance,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    use Postulate::*;
    let models = |kb: &KnowledgeBase| kb_models(kb, alphabet, limits);
    // Models of the updated base, for either operator style.
    let upd_models = |b: &KnowledgeBase, u: &KnowledgeBase| -> Result<InterpSet> {
        match op {
            BeliefOp::Winslett => Ok(winslett_models(&models(b)?, &models(u)?)),
            BeliefOp::Formula(f) => kb_models(
                &formula_update(f, b, u, alphabet, limits)?,
                alphabet,
                limits,
            ),
        }
    };
    // Models of the updated base conjoined with a further base.
    let upd_models_with =
        |b: &KnowledgeBase, u: &KnowledgeBase, extra: &KnowledgeBase| -> Result<InterpSet> {
            match op {
                BeliefOp::Winslett => Ok(upd_models(b, u)?
                    .intersection(&models(extra)?)
                    .copied()
                    .collect()),
                BeliefOp::Formula(f) => kb_models(
                    &formula_update(f, b, u, alphabet, limits)?.union(extra),
                    alphabet,
                    limits,
                ),
            }
        };
    let formula_op = || match op {
        BeliefOp::Formula(f) => Ok(f),
        BeliefOp::Winslett => Err(Error::Invalid(
            "this postulate only applies to formula-based operators".into(),
        )),
    };
    let (b, c, u, v) = (&inst.b, &inst.c, &inst.u, &inst.v);
    match post {
        B1 => Ok(upd_models(b, u)?.is_subset(&models(u)?)),
        B2 => {
            if !models(b)?.is_subset(&models(u)?) {
                return Ok(true);
            }
            Ok(upd_models(b, u)? == models(b)?)
        }
        B2Top => Ok(upd_models(b, &KnowledgeBase::default())? == models(b)?),
        B21 => Ok(models(&b.union(u))?.is_subset(&upd_models(b, u)?)),
        B22 => Ok(upd_models(&b.union(u), u)?.is_subset(&models(b)?)),
        B3 => {
            if models(b)?.is_empty() || models(u)?.is_empty() {
                return Ok(true);
            }
            Ok(!upd_models(b, u)?.is_empty())
        }
        B4 => {
            if models(b)? != models(c)? || models(u)? != models(v)? {
                return Ok(true);
            }
            Ok(upd_models(b, u)? == upd_models(c, v)?)
        }
        B5 => Ok(upd_models_with(b, u, v)?.is_subset(&upd_models(b, &u.union(v))?)),
        B6 => {
            if !upd_models(b, u)?.is_subset(&models(v)?)
                || !upd_models(b, v)?.is_subset(&models(u)?)
            {
                return Ok(true);
            }
            Ok(upd_models(b, u)? == upd_models(b, v)?)
        }
        Fu1 => {
            let f = formula_op()?;
            let fam = kb_model_family(
                &formula_update(f, b, u, alphabet, limits)?,
                alphabet,
                limits,
            )?;
            Ok(kb_model_family(u, alphabet, limits)?.is_subset(&fam))
        }
        Fu21 => {
            let f = formula_op()?;
            let fam = kb_model_family(&b.union(u), alphabet, limits)?;
            Ok(kb_model_family(
                &formula_update(f, b, u, alphabet, limits)?,
                alphabet,
                limits,
            )?
            .is_subset(&fam))
        }
        Fu4 => {
            let f = formula_op()?;
            if family_adjoined(b, alphabet, limits)? != family_adjoined(c, alphabet, limits)?
                || family_adjoined(u, alphabet, limits)? != family_adjoined(v, alphabet, limits)?
            {
                return Ok(true);
            }
            Ok(family_adjoined(
                &formula_update(f, b, u, alphabet, limits)?,
                alphabet,
                limits,
            )? == family_adjoined(
                &formula_update(f, c, v, alphabet, limits)?,
                alphabet,
                limits,
            )?)
        }
    }
}
