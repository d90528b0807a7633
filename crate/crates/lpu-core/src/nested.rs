//! Programs with nested expressions in rule heads and bodies.
//!
//! Expressions are built from atoms, `true`, `false`, default negation
//! `~`, conjunction and disjunction. The reduct of an expression with
//! respect to a total interpretation replaces every maximal negated
//! subexpression by `true` or `false`; stable models are subset-minimal
//! models of the reduct.

use std::collections::BTreeSet;
use std::fmt;

use crate::semantics::Limits;
use crate::syntax::{Alphabet, Literal, Program, Rule};
use crate::Result;

/// A nested expression.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NestedExpr {
    Bot,
    Top,
    Atom(String),
    Not(Box<NestedExpr>),
    And(Vec<NestedExpr>),
    Or(Vec<NestedExpr>),
}

impl NestedExpr {
    pub fn atom(name: impl Into<String>) -> NestedExpr {
        NestedExpr::Atom(name.into())
    }

    pub fn not(e: NestedExpr) -> NestedExpr {
        NestedExpr::Not(Box::new(e))
    }

    pub fn lit(l: &Literal) -> NestedExpr {
        if l.negated {
            NestedExpr::not(NestedExpr::atom(l.atom.clone()))
        } else {
            NestedExpr::atom(l.atom.clone())
        }
    }

    /// Conjunction of literal expressions; empty input is `true`.
    pub fn conj(es: impl IntoIterator<Item = NestedExpr>) -> NestedExpr {
        let v: Vec<NestedExpr> = es.into_iter().collect();
        match v.len() {
            0 => NestedExpr::Top,
            1 => v.into_iter().next().unwrap(),
            _ => NestedExpr::And(v),
        }
    }

    /// Disjunction of literal expressions; empty input is `false`.
    pub fn disj(es: impl IntoIterator<Item = NestedExpr>) -> NestedExpr {
        let v: Vec<NestedExpr> = es.into_iter().collect();
        match v.len() {
            0 => NestedExpr::Bot,
            1 => v.into_iter().next().unwrap(),
            _ => NestedExpr::Or(v),
        }
    }

    /// If the expression is a plain literal, return it.
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            NestedExpr::Atom(a) => Some(Literal::pos(a.clone())),
            NestedExpr::Not(inner) => match inner.as_ref() {
                NestedExpr::Atom(a) => Some(Literal::neg(a.clone())),
                _ => None,
            },
            _ => None,
        }
    }

    /// The complementary literal expression, for literal expressions.
    pub fn complement(&self) -> Option<NestedExpr> {
        self.as_literal().map(|l| NestedExpr::lit(&l.complement()))
    }

    pub fn atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            NestedExpr::Top | NestedExpr::Bot => {}
            NestedExpr::Atom(a) => {
                out.insert(a);
            }
            NestedExpr::Not(e) => e.atoms(out),
            NestedExpr::And(es) | NestedExpr::Or(es) => {
                for e in es {
                    e.atoms(out);
                }
            }
        }
    }

    pub fn eval(&self, alphabet: &Alphabet, j: u32) -> bool {
        match self {
            NestedExpr::Top => true,
            NestedExpr::Bot => false,
            NestedExpr::Atom(a) => alphabet.index_of(a).is_some_and(|i| j & (1 << i) != 0),
            NestedExpr::Not(e) => !e.eval(alphabet, j),
            NestedExpr::And(es) => es.iter().all(|e| e.eval(alphabet, j)),
            NestedExpr::Or(es) => es.iter().any(|e| e.eval(alphabet, j)),
        }
    }

    /// Replace every maximal negated subexpression by its truth value in
    /// `j`.
    pub fn reduct(&self, alphabet: &Alphabet, j: u32) -> NestedExpr {
        match self {
            NestedExpr::Not(e) => {
                if e.eval(alphabet, j) {
                    NestedExpr::Bot
                } else {
                    NestedExpr::Top
                }
            }
            NestedExpr::And(es) => {
                NestedExpr::And(es.iter().map(|e| e.reduct(alphabet, j)).collect())
            }
            NestedExpr::Or(es) => {
                NestedExpr::Or(es.iter().map(|e| e.reduct(alphabet, j)).collect())
            }
            other => other.clone(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            NestedExpr::Top | NestedExpr::Bot | NestedExpr::Atom(_) => 4,
            NestedExpr::Not(_) => 3,
            NestedExpr::And(_) => 2,
            NestedExpr::Or(_) => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            NestedExpr::Top => f.write_str("true")?,
            NestedExpr::Bot => f.write_str("false")?,
            NestedExpr::Atom(a) => f.write_str(a)?,
            NestedExpr::Not(e) => {
                f.write_str("~")?;
                e.fmt_prec(f, 4)?;
            }
            NestedExpr::And(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    e.fmt_prec(f, 3)?;
                }
            }
            NestedExpr::Or(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    e.fmt_prec(f, 2)?;
                }
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for NestedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A rule with nested head and body expressions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedRule {
    pub head: NestedExpr,
    pub body: NestedExpr,
}

impl NestedRule {
    pub fn new(head: NestedExpr, body: NestedExpr) -> Self {
        NestedRule { head, body }
    }
}

impl fmt::Display for NestedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :- {}.", self.head, self.body)
    }
}

/// A finite set of nested rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NestedProgram {
    pub rules: Vec<NestedRule>,
}

impl NestedProgram {
    pub fn new(rules: impl IntoIterator<Item = NestedRule>) -> Self {
        NestedProgram {
            rules: rules.into_iter().collect(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.head.atoms(&mut out);
            r.body.atoms(&mut out);
        }
        out
    }

    pub fn sat(&self, alphabet: &Alphabet, j: u32) -> bool {
        self.rules
            .iter()
            .all(|r| !r.body.eval(alphabet, j) || r.head.eval(alphabet, j))
    }

    pub fn reduct(&self, alphabet: &Alphabet, j: u32) -> NestedProgram {
        NestedProgram::new(
            self.rules
                .iter()
                .map(|r| NestedRule::new(r.head.reduct(alphabet, j), r.body.reduct(alphabet, j))),
        )
    }
}

impl fmt::Display for NestedProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rules: Vec<&NestedRule> = self.rules.iter().collect();
        rules.sort();
        for r in rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Turn each rule into a nested rule: disjunction of head literals
/// (`false` when empty) and conjunction of body literals (`true` when
/// empty).
pub fn to_nested(p: &Program) -> NestedProgram {
    NestedProgram::new(p.rules.iter().map(to_nested_rule))
}

pub fn to_nested_rule(r: &Rule) -> NestedRule {
    NestedRule::new(
        NestedExpr::disj(r.head.iter().map(NestedExpr::lit)),
        NestedExpr::conj(r.body.iter().map(NestedExpr::lit)),
    )
}

/// Stable models of a nested program: subset-minimal models of its own
/// reduct.
pub fn nested_stable_models(
    p: &NestedProgram,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Vec<u32>> {
    limits.check_two_valued(alphabet)?;
    let full = alphabet.full_mask();
    let mut out = Vec::new();
    for j in 0..=full {
        let red = p.reduct(alphabet, j);
        if !red.sat(alphabet, j) {
            continue;
        }
        let mut minimal = true;
        let mut i = (j.wrapping_sub(1)) & j;
        while i != j {
            if red.sat(alphabet, i) {
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
