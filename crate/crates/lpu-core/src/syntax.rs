//! Rule, program and rule-base syntax.
//!
//! A [`Literal`] is an atom or its default negation `~atom`. A [`Rule`] has a
//! set of head literals and a set of body literals; both sets are kept in a
//! canonical order (positive literals first, each group sorted by atom), so
//! the printed form of a rule is deterministic. Rules carry a unique `id`
//! used to key set operations on rule bases; structural equality, ordering
//! and hashing ignore the id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Reserved atom used to spell the canonical tautology `_tau :- _tau.`.
pub const TAU_ATOM: &str = "_tau";
/// Reserved atom used to encode constraints as `_bot :- ~_bot, body.`.
pub const BOT_ATOM: &str = "_bot";

static NEXT_RULE_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_rule_id() -> u64 {
    NEXT_RULE_ID.fetch_add(1, Ordering::Relaxed)
}

/// An atom or a default-negated atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: String,
}

impl Literal {
    pub fn pos(atom: impl Into<String>) -> Self {
        Literal {
            negated: false,
            atom: atom.into(),
        }
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Literal {
            negated: true,
            atom: atom.into(),
        }
    }

    /// The complementary literal: `p` <-> `~p`.
    pub fn complement(&self) -> Literal {
        Literal {
            negated: !self.negated,
            atom: self.atom.clone(),
        }
    }
}

// Positive literals sort before negated ones so canonical rule printing
// lists `p, q, ~r, ~s` groups in order.
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.negated, &self.atom).cmp(&(other.negated, &other.atom))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~{}", self.atom)
        } else {
            f.write_str(&self.atom)
        }
    }
}

/// A rule `h1; ...; hm :- b1, ..., bn.` with literal sets for head and body.
#[derive(Clone, Debug)]
pub struct Rule {
    /// Unique identity of this rule occurrence; ignored by `Eq`/`Ord`/`Hash`.
    pub id: u64,
    pub head: BTreeSet<Literal>,
    pub body: BTreeSet<Literal>,
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = Literal>,
        body: impl IntoIterator<Item = Literal>,
    ) -> Self {
        Rule {
            id: fresh_rule_id(),
            head: head.into_iter().collect(),
            body: body.into_iter().collect(),
        }
    }

    /// A structural copy with a fresh id.
    pub fn duplicate(&self) -> Rule {
        Rule {
            id: fresh_rule_id(),
            head: self.head.clone(),
            body: self.body.clone(),
        }
    }

    /// The canonical tautology `_tau :- _tau.`.
    pub fn tautology() -> Rule {
        Rule::new([Literal::pos(TAU_ATOM)], [Literal::pos(TAU_ATOM)])
    }

    /// A fact `l.` for a single head literal.
    pub fn fact(lit: Literal) -> Rule {
        Rule::new([lit], [])
    }

    pub fn head_pos(&self) -> BTreeSet<&str> {
        self.head
            .iter()
            .filter(|l| !l.negated)
            .map(|l| l.atom.as_str())
            .collect()
    }

    pub fn head_neg(&self) -> BTreeSet<&str> {
        self.head
            .iter()
            .filter(|l| l.negated)
            .map(|l| l.atom.as_str())
            .collect()
    }

    pub fn body_pos(&self) -> BTreeSet<&str> {
        self.body
            .iter()
            .filter(|l| !l.negated)
            .map(|l| l.atom.as_str())
            .collect()
    }

    pub fn body_neg(&self) -> BTreeSet<&str> {
        self.body
            .iter()
            .filter(|l| l.negated)
            .map(|l| l.atom.as_str())
            .collect()
    }

    /// All atom names occurring in the rule.
    pub fn atoms(&self) -> BTreeSet<&str> {
        self.head
            .iter()
            .chain(self.body.iter())
            .map(|l| l.atom.as_str())
            .collect()
    }

    pub fn is_non_disjunctive(&self) -> bool {
        self.head.len() <= 1
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.body.is_empty()
    }

    /// Empty head and no atom occurring both positively and negatively in
    /// the body.
    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
            && self
                .body_pos()
                .intersection(&self.body_neg())
                .next()
                .is_none()
    }

    /// Non-empty purely negative head, with head, positive body and negative
    /// body atoms pairwise disjoint.
    pub fn is_abolishing(&self) -> bool {
        let hn = self.head_neg();
        let bp = self.body_pos();
        let bn = self.body_neg();
        self.head_pos().is_empty()
            && !hn.is_empty()
            && hn.intersection(&bp).next().is_none()
            && hn.intersection(&bn).next().is_none()
            && bp.intersection(&bn).next().is_none()
    }

    /// Some atom occurs in both the head and the body (either polarity).
    pub fn has_local_cycle(&self) -> bool {
        let head_atoms: BTreeSet<&str> = self.head.iter().map(|l| l.atom.as_str()).collect();
        self.body
            .iter()
            .any(|l| head_atoms.contains(l.atom.as_str()))
    }

    pub fn classify(&self) -> RuleClass {
        RuleClass {
            non_disjunctive: self.is_non_disjunctive(),
            fact: self.is_fact(),
            constraint: self.is_constraint(),
            abolishing: self.is_abolishing(),
            local_cycle: self.has_local_cycle(),
        }
    }
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.body == other.body
    }
}

impl Eq for Rule {}

impl std::hash::Hash for Rule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.head.hash(state);
        self.body.hash(state);
    }
}

impl Ord for Rule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.head, &self.body).cmp(&(&other.head, &other.body))
    }
}

impl PartialOrd for Rule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for lit in &self.head {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{lit}")?;
            first = false;
        }
        if !self.body.is_empty() || self.head.is_empty() {
            if !self.head.is_empty() {
                f.write_str(" ")?;
            }
            f.write_str(":-")?;
            let mut first = true;
            for lit in &self.body {
                if first {
                    f.write_str(" ")?;
                } else {
                    f.write_str(", ")?;
                }
                write!(f, "{lit}")?;
                first = false;
            }
        }
        f.write_str(".")
    }
}

/// Structural classification of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleClass {
    pub non_disjunctive: bool,
    pub fact: bool,
    pub constraint: bool,
    pub abolishing: bool,
    pub local_cycle: bool,
}

/// A finite set of rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Program {
            rules: rules.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Program { rules: Vec::new() }
    }

    pub fn is_non_disjunctive(&self) -> bool {
        self.rules.iter().all(Rule::is_non_disjunctive)
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.rules.iter().flat_map(Rule::atoms).collect()
    }

    /// Structural copy with fresh rule ids.
    pub fn duplicate(&self) -> Program {
        Program::new(self.rules.iter().map(Rule::duplicate))
    }

    /// The program extended with the canonical tautology.
    pub fn with_tautology(&self) -> Program {
        let mut p = self.clone();
        p.rules.push(Rule::tautology());
        p
    }

    /// Whether the atom dependency graph (head atoms -> body atoms, both
    /// polarities) has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut edges: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for rule in &self.rules {
            for h in rule.head.iter().map(|l| l.atom.as_str()) {
                let targets = edges.entry(h).or_default();
                targets.extend(rule.body.iter().map(|l| l.atom.as_str()));
            }
        }
        // Iterative DFS with tricolor marking.
        let mut state: BTreeMap<&str, u8> = BTreeMap::new(); // 1 = open, 2 = done
        let nodes: Vec<&str> = edges.keys().copied().collect();
        for start in nodes {
            if state.contains_key(start) {
                continue;
            }
            let mut stack = vec![(start, false)];
            while let Some((node, expanded)) = stack.pop() {
                if expanded {
                    state.insert(node, 2);
                    continue;
                }
                match state.get(node) {
                    Some(1) => return false,
                    Some(2) => continue,
                    _ => {}
                }
                state.insert(node, 1);
                stack.push((node, true));
                if let Some(targets) = edges.get(node) {
                    for &t in targets {
                        match state.get(t) {
                            Some(1) => return false,
                            Some(2) => {}
                            _ => stack.push((t, false)),
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rules: Vec<&Rule> = self.rules.iter().collect();
        rules.sort();
        for rule in rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// A finite sequence of non-disjunctive programs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dlp {
    pub programs: Vec<Program>,
}

impl Dlp {
    pub fn new(programs: impl IntoIterator<Item = Program>) -> Self {
        Dlp {
            programs: programs.into_iter().collect(),
        }
    }

    /// Union of all member programs (rule occurrences kept).
    pub fn all(&self) -> Program {
        Program::new(self.programs.iter().flat_map(|p| p.rules.iter().cloned()))
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.programs.iter().flat_map(Program::atoms).collect()
    }

    pub fn is_non_disjunctive(&self) -> bool {
        self.programs.iter().all(Program::is_non_disjunctive)
    }

    /// Whether the union of all member programs is acyclic.
    pub fn is_acyclic(&self) -> bool {
        self.all().is_acyclic()
    }
}

impl fmt::Display for Dlp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.programs.iter().enumerate() {
            if i > 0 {
                writeln!(f, "%%")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A set of update units, each a program (a single rule being a singleton
/// program).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleBase {
    pub units: Vec<Program>,
}

impl RuleBase {
    pub fn new(units: impl IntoIterator<Item = Program>) -> Self {
        RuleBase {
            units: units.into_iter().collect(),
        }
    }

    /// A rule base consisting of single-rule units, one per rule of `p`.
    pub fn from_rules(p: &Program) -> Self {
        RuleBase {
            units: p.rules.iter().map(|r| Program::new([r.clone()])).collect(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.units.iter().flat_map(Program::atoms).collect()
    }

    /// Set union of units, keyed by structural equality of programs.
    pub fn union(&self, other: &RuleBase) -> RuleBase {
        let mut units = self.units.clone();
        for u in &other.units {
            if !units.iter().any(|v| programs_equal(v, u)) {
                units.push(u.clone());
            }
        }
        RuleBase { units }
    }

    /// All rules of all units (occurrences kept).
    pub fn all_rules(&self) -> Program {
        Program::new(self.units.iter().flat_map(|p| p.rules.iter().cloned()))
    }
}

/// Structural program equality as rule sets (ignores order and ids).
pub fn programs_equal(a: &Program, b: &Program) -> bool {
    let sa: BTreeSet<&Rule> = a.rules.iter().collect();
    let sb: BTreeSet<&Rule> = b.rules.iter().collect();
    sa == sb
}

impl fmt::Display for RuleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.units.iter().enumerate() {
            if i > 0 {
                writeln!(f, "%%")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A fixed, sorted atom vocabulary with bit positions for interpretations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    atoms: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Alphabet {
    /// Build an alphabet from atom names; sorted, deduplicated, reserved
    /// atoms (`_tau`) excluded.
    pub fn new<I, S>(atoms: I) -> Alphabet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = atoms
            .into_iter()
            .map(Into::into)
            .filter(|a| a != TAU_ATOM)
            .collect();
        names.sort();
        names.dedup();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Alphabet {
            atoms: names,
            index,
        }
    }

    pub fn from_program(p: &Program) -> Alphabet {
        Alphabet::new(p.atoms())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.index.contains_key(atom)
    }

    /// Bitmask with every atom set.
    pub fn full_mask(&self) -> u32 {
        if self.atoms.is_empty() {
            0
        } else {
            (1u32 << self.atoms.len()) - 1
        }
    }

    /// Extend with further atom names, returning a new alphabet.
    pub fn extend<I, S>(&self, atoms: I) -> Alphabet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet::new(
            self.atoms
                .iter()
                .cloned()
                .chain(atoms.into_iter().map(Into::into)),
        )
    }

    /// Render a bitmask interpretation as `{a, b}`.
    pub fn show_mask(&self, mask: u32) -> String {
        let names: Vec<&str> = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.as_str())
            .collect();
        format!("{{{}}}", names.join(", "))
    }
}
