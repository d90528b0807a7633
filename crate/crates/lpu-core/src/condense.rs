//! Condensing a sequence of programs into a single nested or disjunctive
//! program whose stable models are the sequence's models.
//!
//! The nested operators guard each earlier rule with the negated activation
//! formula of rules that could override its head; the disjunctive operators
//! replace those guards by blocking sets, one complemented literal per
//! activating rule body.

use std::collections::BTreeSet;

use crate::nested::{to_nested, NestedExpr, NestedProgram, NestedRule};
use crate::rejection::encode_constraints;
use crate::syntax::{Dlp, Literal, Program, Rule};
use crate::{Error, Result};

/// Which rejection discipline the condensed program should emulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondenseSemantics {
    Ju,
    As,
}

impl CondenseSemantics {
    pub fn parse(s: &str) -> Result<CondenseSemantics> {
        match s {
            "ju" => Ok(CondenseSemantics::Ju),
            "as" => Ok(CondenseSemantics::As),
            _ => Err(Error::Invalid(format!("unknown semantics `{s}`"))),
        }
    }
}

/// Disjunction of the bodies of the rules of `u` whose head is exactly the
/// literal `lit`; `false` when there is no such rule.
pub fn activation_formula(u: &NestedProgram, lit: &Literal) -> NestedExpr {
    let head = NestedExpr::lit(lit);
    NestedExpr::disj(
        u.rules
            .iter()
            .filter(|r| r.head == head)
            .map(|r| r.body.clone()),
    )
}

/// Append a conjunct to a (possibly already conjunctive) body.
fn and_append(body: &NestedExpr, extra: NestedExpr) -> NestedExpr {
    match body {
        NestedExpr::And(v) => {
            let mut v = v.clone();
            v.push(extra);
            NestedExpr::And(v)
        }
        other => NestedExpr::And(vec![other.clone(), extra]),
    }
}

fn choice_head(atom: &str) -> NestedExpr {
    NestedExpr::Or(vec![
        NestedExpr::atom(atom),
        NestedExpr::not(NestedExpr::atom(atom)),
    ])
}

fn is_choice_head(e: &NestedExpr) -> bool {
    match e {
        NestedExpr::Or(v) if v.len() == 2 => match (&v[0], v[1].as_literal()) {
            (NestedExpr::Atom(a), Some(l)) => l.negated && l.atom == *a,
            _ => false,
        },
        _ => false,
    }
}

/// One step of the nested condensing operator: guard every literal-headed
/// rule of `p` with the negated activation formula of its complementary
/// head in `u`, then adjoin `u`. Under [`CondenseSemantics::As`], choice
/// heads in `p` are kept verbatim and every atom-headed rule of `u`
/// additionally yields a choice rule.
pub fn condense_step(
    sem: CondenseSemantics,
    p: &NestedProgram,
    u: &NestedProgram,
) -> Result<NestedProgram> {
    let mut rules = Vec::new();
    for pi in &p.rules {
        if sem == CondenseSemantics::As && is_choice_head(&pi.head) {
            rules.push(pi.clone());
            continue;
        }
        let lit = pi.head.as_literal().ok_or_else(|| {
            Error::Invalid(format!(
                "rule head `{}` is neither a literal nor a choice",
                pi.head
            ))
        })?;
        let guard = NestedExpr::not(activation_formula(u, &lit.complement()));
        rules.push(NestedRule::new(
            pi.head.clone(),
            and_append(&pi.body, guard),
        ));
    }
    if sem == CondenseSemantics::As {
        for sigma in &u.rules {
            if let NestedExpr::Atom(a) = &sigma.head {
                rules.push(NestedRule::new(choice_head(a), sigma.body.clone()));
            }
        }
    }
    rules.extend(u.rules.iter().cloned());
    Ok(NestedProgram::new(rules))
}

/// Condense a program sequence into one nested program by folding
/// [`condense_step`] from the empty program; constraints are encoded with
/// the reserved `_bot` atom first.
pub fn condense(sem: CondenseSemantics, dlp: &Dlp, simplify: bool) -> Result<NestedProgram> {
    if !dlp.is_non_disjunctive() {
        return Err(Error::Invalid(
            "condensing requires non-disjunctive programs".into(),
        ));
    }
    let mut acc = NestedProgram::default();
    for p in &dlp.programs {
        let u = to_nested(&encode_constraints(p));
        acc = condense_step(sem, &acc, &u)?;
    }
    Ok(if simplify { simplify_nested(&acc) } else { acc })
}

/// All blocking sets for `lit` in `u`: one complemented body literal per
/// rule of `u` whose head is exactly `lit`. A rule with an empty body
/// yields no blocking set at all; no matching rule yields the single empty
/// blocking set.
pub fn blocking_sets(u: &Program, lit: &Literal) -> Vec<BTreeSet<Literal>> {
    let mut sets: BTreeSet<BTreeSet<Literal>> = BTreeSet::from([BTreeSet::new()]);
    for sigma in &u.rules {
        if sigma.head.len() != 1 || sigma.head.iter().next() != Some(lit) {
            continue;
        }
        let mut next = BTreeSet::new();
        for s in &sets {
            for l in &sigma.body {
                let mut s2 = s.clone();
                s2.insert(l.complement());
                next.insert(s2);
            }
        }
        sets = next;
        if sets.is_empty() {
            break;
        }
    }
    sets.into_iter().collect()
}

/// The unique "original head" literal of a disjunctive rule produced by
/// the fold: either the single positive head literal, or the single
/// (negated) head literal.
fn original_head(rule: &Rule) -> Result<Literal> {
    let positives: Vec<&Literal> = rule.head.iter().filter(|l| !l.negated).collect();
    match positives.as_slice() {
        [l] => Ok((*l).clone()),
        [] if rule.head.len() == 1 => Ok(rule.head.iter().next().unwrap().clone()),
        _ => Err(Error::Invalid(format!(
            "rule `{rule}` has no unique original head"
        ))),
    }
}

/// One step of the disjunctive condensing operator.
pub fn condense_disjunctive_step(
    sem: CondenseSemantics,
    p: &Program,
    u: &Program,
) -> Result<Program> {
    let mut rules = Vec::new();
    let is_choice = |r: &Rule| -> bool {
        r.head.len() == 2 && {
            let mut it = r.head.iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            a.atom == b.atom && a.negated != b.negated
        }
    };
    for pi in &p.rules {
        match sem {
            CondenseSemantics::Ju => {
                let orig = original_head(pi)?;
                for s in blocking_sets(u, &orig.complement()) {
                    let mut head = pi.head.clone();
                    let mut body = pi.body.clone();
                    for l in s {
                        if orig.negated {
                            // Default-literal heads take the whole blocking
                            // set into the body.
                            body.insert(l);
                        } else if l.negated {
                            body.insert(l);
                        } else {
                            head.insert(l.complement());
                        }
                    }
                    rules.push(Rule::new(head, body));
                }
            }
            CondenseSemantics::As => {
                if is_choice(pi) {
                    rules.push(pi.clone());
                    continue;
                }
                if pi.head.len() != 1 {
                    return Err(Error::Invalid(format!(
                        "rule `{pi}` has no single head literal"
                    )));
                }
                let lit = pi.head.iter().next().unwrap().clone();
                for s in blocking_sets(u, &lit.complement()) {
                    let mut body = pi.body.clone();
                    body.extend(s);
                    rules.push(Rule::new(pi.head.iter().cloned(), body));
                }
            }
        }
    }
    if sem == CondenseSemantics::As {
        for sigma in &u.rules {
            if sigma.head.len() == 1 {
                let l = sigma.head.iter().next().unwrap();
                if !l.negated {
                    rules.push(Rule::new(
                        [l.clone(), l.complement()],
                        sigma.body.iter().cloned(),
                    ));
                }
            }
        }
    }
    rules.extend(u.rules.iter().cloned());
    Ok(Program::new(rules))
}

/// Condense a program sequence into one disjunctive program.
pub fn condense_disjunctive(sem: CondenseSemantics, dlp: &Dlp, simplify: bool) -> Result<Program> {
    if !dlp.is_non_disjunctive() {
        return Err(Error::Invalid(
            "condensing requires non-disjunctive programs".into(),
        ));
    }
    let mut acc = Program::default();
    for p in &dlp.programs {
        let u = encode_constraints(p);
        acc = condense_disjunctive_step(sem, &acc, &u)?;
    }
    Ok(if simplify {
        simplify_disjunctive(&acc)
    } else {
        acc
    })
}

/// Normalize an expression: propagate `true`/`false` through negation,
/// conjunction and disjunction, flatten nested conjunctions and
/// disjunctions, and drop duplicate operands. Default negation over
/// non-constant expressions is left untouched.
pub fn normalize_expr(e: &NestedExpr) -> NestedExpr {
    match e {
        NestedExpr::Not(inner) => match normalize_expr(inner) {
            NestedExpr::Top => NestedExpr::Bot,
            NestedExpr::Bot => NestedExpr::Top,
            other => NestedExpr::not(other),
        },
        NestedExpr::And(es) => {
            let mut out: Vec<NestedExpr> = Vec::new();
            for part in es.iter().map(normalize_expr) {
                match part {
                    NestedExpr::Top => {}
                    NestedExpr::Bot => return NestedExpr::Bot,
                    NestedExpr::And(inner) => {
                        for x in inner {
                            if !out.contains(&x) {
                                out.push(x);
                            }
                        }
                    }
                    other => {
                        if !out.contains(&other) {
                            out.push(other);
                        }
                    }
                }
            }
            NestedExpr::conj(out)
        }
        NestedExpr::Or(es) => {
            let mut out: Vec<NestedExpr> = Vec::new();
            for part in es.iter().map(normalize_expr) {
                match part {
                    NestedExpr::Bot => {}
                    NestedExpr::Top => return NestedExpr::Top,
                    NestedExpr::Or(inner) => {
                        for x in inner {
                            if !out.contains(&x) {
                                out.push(x);
                            }
                        }
                    }
                    other => {
                        if !out.contains(&other) {
                            out.push(other);
                        }
                    }
                }
            }
            NestedExpr::disj(out)
        }
        other => other.clone(),
    }
}

fn conjuncts(body: &NestedExpr) -> Vec<NestedExpr> {
    match body {
        NestedExpr::Top => Vec::new(),
        NestedExpr::And(v) => v.clone(),
        other => vec![other.clone()],
    }
}

fn disjuncts(head: &NestedExpr) -> Vec<NestedExpr> {
    match head {
        NestedExpr::Bot => Vec::new(),
        NestedExpr::Or(v) => v.clone(),
        other => vec![other.clone()],
    }
}

/// Drop rules that can never fire or are trivially satisfied, and rules
/// subsumed by another rule with the same head and a subset of the body
/// conjuncts; normalize all expressions first.
pub fn simplify_nested(p: &NestedProgram) -> NestedProgram {
    let mut kept: Vec<NestedRule> = Vec::new();
    'rule: for r in &p.rules {
        let head = normalize_expr(&r.head);
        let body = normalize_expr(&r.body);
        if body == NestedExpr::Bot {
            continue;
        }
        let bc = conjuncts(&body);
        // Complementary literal conjuncts never fire.
        for c in &bc {
            if let Some(comp) = c.complement() {
                if bc.contains(&comp) {
                    continue 'rule;
                }
            }
        }
        // A head disjunct repeated in the body makes the rule trivial.
        for d in disjuncts(&head) {
            if bc.contains(&d) {
                continue 'rule;
            }
        }
        kept.push(NestedRule::new(head, body));
    }
    let subsumed = |r: &NestedRule, others: &[NestedRule]| -> bool {
        let rc = conjuncts(&r.body);
        others.iter().any(|o| {
            o != r && o.head == r.head && {
                let oc = conjuncts(&o.body);
                oc.iter().all(|c| rc.contains(c)) && oc.len() < rc.len()
            }
        })
    };
    let mut out: Vec<NestedRule> = Vec::new();
    for r in &kept {
        if !subsumed(r, &kept) && !out.contains(r) {
            out.push(r.clone());
        }
    }
    NestedProgram::new(out)
}

/// The disjunctive analogue of [`simplify_nested`].
pub fn simplify_disjunctive(p: &Program) -> Program {
    let mut kept: Vec<Rule> = Vec::new();
    for r in &p.rules {
        let contradictory = r
            .body
            .iter()
            .any(|l| !l.negated && r.body.contains(&l.complement()));
        let trivial = r.head.iter().any(|l| r.body.contains(l));
        if !contradictory && !trivial && !kept.contains(r) {
            kept.push(r.clone());
        }
    }
    let out: Vec<Rule> = kept
        .iter()
        .filter(|r| {
            !kept.iter().any(|o| {
                o.head == r.head && o.body.is_subset(&r.body) && o.body.len() < r.body.len()
            })
        })
        .cloned()
        .collect();
    Program::new(out)
}
