//! Equivalence and entailment relation tests: fixture pairs with known
//! full relation patterns, the strength lattice on random pairs, and the
//! correspondence between equivalence and two-way entailment.

mod common;

use lpu_core::equivalence::{entails, equivalent, Relation};
use lpu_core::parse::parse_program;
use lpu_core::semantics::Limits;
use lpu_core::syntax::RuleBase;

use common::alphabet;

const LIM: Limits = Limits {
    two_valued: 12,
    three_valued: 9,
};

fn base(src: &str) -> RuleBase {
    RuleBase::from_rules(&parse_program(src).unwrap())
}

/// Expected (sm, se, re, smr, rmr, sr, rr, su) per fixture pair.
#[test]
fn fixture_pairs_have_known_relation_patterns() {
    let ab = alphabet(2);
    let cases: [(&str, &str, [bool; 8]); 5] = [
        // Strong-equivalent but not robust-equivalent.
        (
            "~p.",
            ":- p.",
            [true, true, false, true, false, true, false, false],
        ),
        // Robust-equivalent but the unit families differ minimally.
        (
            "p. q.",
            "p. q :- p.",
            [true, true, true, false, false, false, false, false],
        ),
        // Minimal unit families agree, full families do not.
        (
            "p.",
            "p. p :- q.",
            [true, true, true, true, true, false, false, false],
        ),
        // Same stable models only.
        (
            "",
            "p :- q.",
            [true, false, false, false, false, false, false, false],
        ),
        // Differ by a tautological rule: even syntactically equivalent.
        (
            "p. p :- p.",
            "p.",
            [true, true, true, true, true, true, true, true],
        ),
    ];
    for (left, right, expected) in cases {
        let p = base(left);
        let q = base(right);
        for (rel, want) in Relation::ALL.into_iter().zip(expected) {
            let got = equivalent(rel, &p, &q, &ab, &LIM).unwrap();
            assert_eq!(
                got,
                want,
                "relation {} on {left:?} vs {right:?}",
                rel.name()
            );
        }
    }
}

/// Stronger relations imply weaker ones on random rule bases.
#[test]
fn strength_lattice_holds_on_random_pairs() {
    use Relation::*;
    let edges = [
        (Su, Rr),
        (Rr, Rmr),
        (Rmr, Re),
        (Re, Se),
        (Se, Sm),
        (Rr, Sr),
        (Sr, Smr),
        (Smr, Se),
        (Rmr, Smr),
    ];
    let ab = alphabet(3);
    let mut rng = common::rng(47);
    let mut implications_fired = 0;
    for _ in 0..400 {
        let p = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        let q = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        for (strong, weak) in edges {
            if equivalent(strong, &p, &q, &ab, &LIM).unwrap() {
                implications_fired += 1;
                assert!(
                    equivalent(weak, &p, &q, &ab, &LIM).unwrap(),
                    "{} held but {} failed on:\n{p}\nvs\n{q}",
                    strong.name(),
                    weak.name()
                );
            }
        }
    }
    assert!(implications_fired > 50, "lattice premises rarely fired");
}

/// Equivalence coincides with entailment in both directions.
#[test]
fn equivalence_is_two_way_entailment() {
    let ab = alphabet(3);
    let mut rng = common::rng(53);
    for _ in 0..300 {
        let p = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        let q = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        for rel in Relation::ALL {
            if rel == Relation::Sm {
                continue;
            }
            let eqv = equivalent(rel, &p, &q, &ab, &LIM).unwrap();
            let both = entails(rel, &p, &q, &ab, &LIM).unwrap()
                && entails(rel, &q, &p, &ab, &LIM).unwrap();
            assert_eq!(eqv, both, "relation {} on:\n{p}\nvs\n{q}", rel.name());
        }
    }
}

#[test]
fn entailment_has_no_stable_model_variant() {
    let ab = alphabet(1);
    let p = base("p.");
    assert!(entails(Relation::Sm, &p, &p, &ab, &LIM).is_err());
}

#[test]
fn entailment_examples() {
    let ab = alphabet(2);
    // A fact entails the rule it fires.
    let facts = base("p. q.");
    let derived = base("q :- p.");
    assert!(entails(Relation::Se, &facts, &derived, &ab, &LIM).unwrap());
    assert!(entails(Relation::Re, &facts, &derived, &ab, &LIM).unwrap());
    assert!(!entails(Relation::Se, &derived, &facts, &ab, &LIM).unwrap());
    // Syntactic entailment is rule containment modulo tautologies.
    let bigger = base("p. q. p :- p.");
    assert!(entails(Relation::Su, &bigger, &facts, &ab, &LIM).unwrap());
    assert!(entails(Relation::Su, &facts, &bigger, &ab, &LIM).unwrap());
    assert!(!entails(Relation::Su, &derived, &facts, &ab, &LIM).unwrap());
}
