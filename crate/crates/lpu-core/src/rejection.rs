//! Rejection-based semantics for sequences of programs, and property
//! checks shared with the exception-based operators.

use std::collections::BTreeSet;

use crate::exceptions::{update_sequence, DeltaVariant};
use crate::semantics::{
    is_stable_model, literal_sat, program_sat, rule_sat, stable_models_rule_base, Limits,
};
use crate::syntax::{Alphabet, Dlp, Literal, Program, Rule, BOT_ATOM};
use crate::{Error, Result};

/// Which semantics to use for a program sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlpSemantics {
    /// Rejection by any later rule with complementary head and true body.
    Ju,
    /// Rejection only by later rules that are themselves unrejected.
    As,
    /// Exception-based update sequence with the given pair-selection policy.
    Delta(DeltaVariant),
}

impl DlpSemantics {
    pub fn parse(s: &str) -> Result<DlpSemantics> {
        match s {
            "ju" => Ok(DlpSemantics::Ju),
            "as" => Ok(DlpSemantics::As),
            _ => {
                if let Some(v) = s.strip_prefix("delta-") {
                    Ok(DlpSemantics::Delta(DeltaVariant::parse(v)?))
                } else {
                    Err(Error::Invalid(format!("unknown semantics `{s}`")))
                }
            }
        }
    }
}

/// Rewrite constraints `:- B.` as `_bot :- ~_bot, B.`; other rules pass
/// through unchanged.
pub fn encode_constraints(p: &Program) -> Program {
    Program::new(p.rules.iter().map(|r| {
        if r.head.is_empty() {
            Rule::new(
                [Literal::pos(BOT_ATOM)],
                r.body.iter().cloned().chain([Literal::neg(BOT_ATOM)]),
            )
        } else {
            r.clone()
        }
    }))
}

fn encode_dlp(dlp: &Dlp) -> Dlp {
    Dlp::new(dlp.programs.iter().map(encode_constraints))
}

/// Single head literal of a non-disjunctive rule, if any.
fn head_literal(r: &Rule) -> Option<&Literal> {
    if r.head.len() == 1 {
        r.head.iter().next()
    } else {
        None
    }
}

fn body_true(r: &Rule, alphabet: &Alphabet, j: u32) -> bool {
    r.body.iter().all(|l| literal_sat(l, alphabet, j))
}

/// Rule ids rejected at interpretation `j`. Under [`DlpSemantics::Ju`] a
/// rule is rejected by any later rule with the complementary head and a
/// body true in `j`; under [`DlpSemantics::As`] the rejecting rule must
/// itself be unrejected, computed backwards from the last program.
pub fn rejected(
    sem: DlpSemantics,
    dlp: &Dlp,
    alphabet: &Alphabet,
    j: u32,
) -> Result<BTreeSet<u64>> {
    if !dlp.is_non_disjunctive() {
        return Err(Error::Invalid(
            "rejection semantics require non-disjunctive programs".into(),
        ));
    }
    let n = dlp.programs.len();
    match sem {
        DlpSemantics::Ju => {
            let mut out = BTreeSet::new();
            for (i, p) in dlp.programs.iter().enumerate() {
                for pi in &p.rules {
                    let Some(h) = head_literal(pi) else { continue };
                    let comp = h.complement();
                    let rejects = (i + 1..n).any(|k| {
                        dlp.programs[k].rules.iter().any(|sigma| {
                            head_literal(sigma) == Some(&comp) && body_true(sigma, alphabet, j)
                        })
                    });
                    if rejects {
                        out.insert(pi.id);
                    }
                }
            }
            Ok(out)
        }
        DlpSemantics::As => {
            let mut out = BTreeSet::new();
            // The last program is never rejected; walk earlier programs
            // backwards so rejectors are already resolved.
            for i in (0..n.saturating_sub(1)).rev() {
                for pi in &dlp.programs[i].rules {
                    let Some(h) = head_literal(pi) else { continue };
                    let comp = h.complement();
                    let rejects = (i + 1..n).any(|k| {
                        dlp.programs[k].rules.iter().any(|sigma| {
                            !out.contains(&sigma.id)
                                && head_literal(sigma) == Some(&comp)
                                && body_true(sigma, alphabet, j)
                        })
                    });
                    if rejects {
                        out.insert(pi.id);
                    }
                }
            }
            Ok(out)
        }
        DlpSemantics::Delta(_) => Err(Error::Invalid(
            "rejection sets are only defined for the ju and as semantics".into(),
        )),
    }
}

/// Remap interpretation bitmasks between alphabets sharing atom names.
fn remap_mask(mask: u32, from: &Alphabet, to: &Alphabet) -> u32 {
    let mut out = 0;
    for (idx, atom) in from.atoms().iter().enumerate() {
        if mask & (1 << idx) != 0 {
            if let Some(t) = to.index_of(atom) {
                out |= 1 << t;
            }
        }
    }
    out
}

/// Models of a program sequence under the chosen semantics, as bitmasks
/// over `alphabet` (which must not contain the reserved `_bot` atom).
pub fn dlp_models(
    sem: DlpSemantics,
    dlp: &Dlp,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<u32>> {
    if alphabet.contains(BOT_ATOM) {
        return Err(Error::Invalid(format!(
            "alphabet must not contain the reserved atom `{BOT_ATOM}`"
        )));
    }
    let encoded = encode_dlp(dlp);
    let has_bot = encoded.atoms().contains(BOT_ATOM);
    let inner = if has_bot {
        alphabet.extend([BOT_ATOM])
    } else {
        alphabet.clone()
    };
    let mut out: Vec<u32> = match sem {
        DlpSemantics::Delta(v) => {
            let base = update_sequence(v, &encoded.programs, &inner, limits)?;
            stable_models_rule_base(&base, &inner, limits)?
        }
        DlpSemantics::Ju | DlpSemantics::As => {
            limits.check_two_valued(&inner)?;
            let full = inner.full_mask();
            let all = encoded.all();
            let mut models = Vec::new();
            for j in 0..=full {
                // Constraints have no head literal, so they are never
                // rejected; rejection can be computed on the raw sequence.
                let rej = rejected(sem, dlp, &inner, j)?;
                let remainder =
                    Program::new(all.rules.iter().filter(|r| !rej.contains(&r.id)).cloned());
                if is_stable_model(&remainder, &inner, j) {
                    models.push(j);
                }
            }
            models
        }
    };
    if has_bot {
        let bot_bit = 1u32 << inner.index_of(BOT_ATOM).unwrap();
        out.retain(|m| m & bot_bit == 0);
        out = out
            .into_iter()
            .map(|m| remap_mask(m, &inner, alphabet))
            .collect();
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A checkable property of a semantics on a concrete program sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlpProperty {
    /// Every atom in every model has a rule with true body deriving it.
    Support,
    /// Sequences of consistent fact programs have the expected unique model.
    FactUpdate,
    /// Every model violates a rule only if a later rule overrides it.
    CausalRejection,
    /// On acyclic sequences, models coincide with the ju-models.
    AcyclicJustifiedUpdate,
}

impl DlpProperty {
    pub fn parse(s: &str) -> Result<DlpProperty> {
        match s {
            "support" => Ok(DlpProperty::Support),
            "fact-update" => Ok(DlpProperty::FactUpdate),
            "causal-rejection" => Ok(DlpProperty::CausalRejection),
            "acyclic-justified-update" => Ok(DlpProperty::AcyclicJustifiedUpdate),
            _ => Err(Error::Invalid(format!("unknown property `{s}`"))),
        }
    }
}

/// Check a property of `sem` on the given program sequence. Properties
/// with a structural premise (fact sequences, acyclicity) hold vacuously
/// when the premise fails.
pub fn check_property(
    prop: DlpProperty,
    sem: DlpSemantics,
    dlp: &Dlp,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<bool> {
    match prop {
        DlpProperty::Support => {
            let models = dlp_models(sem, dlp, alphabet, limits)?;
            let all = encode_dlp(dlp).all();
            for j in models {
                for idx in 0..alphabet.len() {
                    if j & (1 << idx) == 0 {
                        continue;
                    }
                    let atom = &alphabet.atoms()[idx];
                    let supported = all.rules.iter().any(|r| {
                        r.head.contains(&Literal::pos(atom.clone())) && body_true(r, alphabet, j)
                    });
                    if !supported {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        DlpProperty::FactUpdate => {
            let fact_seq = dlp.programs.iter().all(|p| {
                p.rules.iter().all(Rule::is_fact) && {
                    let heads: BTreeSet<&Literal> =
                        p.rules.iter().filter_map(head_literal).collect();
                    heads.iter().all(|l| !heads.contains(&l.complement()))
                }
            });
            if !fact_seq {
                return Ok(true);
            }
            let mut expected = 0u32;
            for (idx, atom) in alphabet.atoms().iter().enumerate() {
                let pos = Literal::pos(atom.clone());
                let neg = Literal::neg(atom.clone());
                let holds = (0..dlp.programs.len()).any(|i| {
                    dlp.programs[i]
                        .rules
                        .iter()
                        .any(|r| head_literal(r) == Some(&pos))
                        && dlp.programs[i + 1..]
                            .iter()
                            .all(|p| p.rules.iter().all(|r| head_literal(r) != Some(&neg)))
                });
                if holds {
                    expected |= 1 << idx;
                }
            }
            Ok(dlp_models(sem, dlp, alphabet, limits)? == vec![expected])
        }
        DlpProperty::CausalRejection => {
            let models = dlp_models(sem, dlp, alphabet, limits)?;
            let encoded = encode_dlp(dlp);
            for j in models {
                for (i, p) in encoded.programs.iter().enumerate() {
                    for pi in &p.rules {
                        if rule_sat(pi, alphabet, j) {
                            continue;
                        }
                        let Some(h) = head_literal(pi) else {
                            return Ok(false);
                        };
                        let comp = h.complement();
                        let overridden = encoded.programs[i + 1..].iter().any(|q| {
                            q.rules.iter().any(|sigma| {
                                head_literal(sigma) == Some(&comp) && body_true(sigma, alphabet, j)
                            })
                        });
                        if !overridden {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        DlpProperty::AcyclicJustifiedUpdate => {
            if !encode_dlp(dlp).is_acyclic() {
                return Ok(true);
            }
            Ok(dlp_models(sem, dlp, alphabet, limits)?
                == dlp_models(DlpSemantics::Ju, dlp, alphabet, limits)?)
        }
    }
}

/// Satisfaction check re-exported for property tests.
pub fn model_of_all(dlp: &Dlp, alphabet: &Alphabet, j: u32) -> bool {
    program_sat(&encode_dlp(dlp).all(), alphabet, j)
}
