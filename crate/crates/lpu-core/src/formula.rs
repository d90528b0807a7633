//! Classical propositional formulas and knowledge bases.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::Alphabet;

/// A propositional formula over atoms, with the usual connectives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    False,
    True,
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; empty input yields `true`, singletons are unwrapped.
    pub fn and(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = fs.into_iter().collect();
        match v.len() {
            0 => Formula::True,
            1 => v.pop().unwrap(),
            _ => Formula::And(v),
        }
    }

    /// Disjunction; empty input yields `false`, singletons are unwrapped.
    pub fn or(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut v: Vec<Formula> = fs.into_iter().collect();
        match v.len() {
            0 => Formula::False,
            1 => v.pop().unwrap(),
            _ => Formula::Or(v),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.as_str());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_atoms(out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Evaluate under a bitmask interpretation; atoms outside the alphabet
    /// are false.
    pub fn eval(&self, alphabet: &Alphabet, mask: u32) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => alphabet.index_of(a).is_some_and(|i| mask & (1 << i) != 0),
            Formula::Not(f) => !f.eval(alphabet, mask),
            Formula::And(fs) => fs.iter().all(|f| f.eval(alphabet, mask)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(alphabet, mask)),
            Formula::Implies(a, b) => !a.eval(alphabet, mask) || b.eval(alphabet, mask),
            Formula::Iff(a, b) => a.eval(alphabet, mask) == b.eval(alphabet, mask),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 5,
            Formula::Not(_) => 4,
            Formula::And(_) => 3,
            Formula::Or(_) => 2,
            Formula::Implies(_, _) => 1,
            Formula::Iff(_, _) => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let paren = prec < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Atom(a) => f.write_str(a)?,
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.fmt_prec(f, 4)?;
            }
            Formula::And(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    g.fmt_prec(f, 4)?;
                }
            }
            Formula::Or(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    g.fmt_prec(f, 3)?;
                }
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, 2)?;
            }
            Formula::Iff(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" <-> ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A finite set of formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub formulas: Vec<Formula>,
}

impl KnowledgeBase {
    pub fn new(formulas: impl IntoIterator<Item = Formula>) -> Self {
        KnowledgeBase {
            formulas: formulas.into_iter().collect(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.formulas.iter().flat_map(Formula::atoms).collect()
    }

    /// Set union keyed by structural formula equality.
    pub fn union(&self, other: &KnowledgeBase) -> KnowledgeBase {
        let mut out = self.formulas.clone();
        for f in &other.formulas {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        KnowledgeBase { formulas: out }
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<&Formula> = self.formulas.iter().collect();
        sorted.sort();
        for g in sorted {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
