//! Parser, printer and structural-classification tests.

mod common;

use lpu_core::parse::{
    parse_dlp, parse_formula, parse_kb, parse_program, parse_rule, parse_rule_with, ParseOptions,
};
use lpu_core::syntax::{Alphabet, Literal, Program, Rule};
use lpu_core::Error;

#[test]
fn parses_and_prints_basic_rules() {
    let cases = [
        ("p.", "p."),
        ("p :- q.", "p :- q."),
        ("p; ~q :- r, ~s.", "p; ~q :- r, ~s."),
        (":- p, ~q.", ":- p, ~q."),
        ("p :- not q.", "p :- ~q."),
        ("p;q;r.", "p; q; r."),
        (":-.", ":-."),
        ("p  :-   q ,  r .", "p :- q, r."),
    ];
    for (input, printed) in cases {
        let rule = parse_rule(input).unwrap_or_else(|e| panic!("{input}: {e}"));
        assert_eq!(rule.to_string(), printed, "input {input:?}");
    }
}

#[test]
fn printing_is_canonical_and_reparses() {
    let mut rng = common::rng(11);
    for _ in 0..500 {
        let rule = common::random_rule(&mut rng, 4, 0..=3, 0..=4);
        let printed = rule.to_string();
        let reparsed = parse_rule(&printed).expect("printed rule parses");
        assert_eq!(reparsed, rule, "round trip of {printed}");
        assert_eq!(reparsed.to_string(), printed);
    }
}

#[test]
fn parse_errors_carry_position() {
    let err = parse_program("p :- q.\nr :- @.\n").unwrap_err();
    match err {
        Error::Parse { line, col, .. } => {
            assert_eq!(line, 2);
            assert_eq!(col, 6);
        }
        other => panic!("unexpected error: {other}"),
    }
    assert!(parse_rule("p :- q").is_err(), "missing dot must fail");
    assert!(parse_formula("p & ").is_err());
}

#[test]
fn reserved_atoms_need_the_permissive_flag() {
    assert!(parse_rule("_x :- p.").is_err());
    let rule = parse_rule_with(
        "_x :- p.",
        ParseOptions {
            allow_reserved: true,
        },
    )
    .unwrap();
    assert_eq!(rule.to_string(), "_x :- p.");
}

#[test]
fn comments_and_dlp_separators() {
    let dlp = parse_dlp("p. % a fact\nq :- p.\n%%\n~p.\n%%\np :- p.\n").unwrap();
    assert_eq!(dlp.programs.len(), 3);
    assert_eq!(dlp.programs[0].rules.len(), 2);
    assert_eq!(dlp.programs[1].rules[0].to_string(), "~p.");
    assert_eq!(dlp.programs[2].rules[0].to_string(), "p :- p.");
}

#[test]
fn formula_grammar_and_precedence() {
    let f = parse_formula("p & q | r -> !s <-> true").unwrap();
    assert_eq!(f.to_string(), "p & q | r -> !s <-> true");
    let g = parse_formula("-(p | q) & r").unwrap();
    assert_eq!(g.to_string(), "!(p | q) & r");
    let kb = parse_kb("p -> q % implication\n\nq | r\n").unwrap();
    assert_eq!(kb.formulas.len(), 2);
}

#[test]
fn rule_classification() {
    let fact = parse_rule("p.").unwrap();
    assert!(fact.classify().fact);
    assert!(fact.is_non_disjunctive());

    let constraint = parse_rule(":- p, ~q.").unwrap();
    assert!(constraint.is_constraint());
    let not_constraint = parse_rule(":- p, ~p.").unwrap();
    assert!(!not_constraint.is_constraint());

    let abolishing = parse_rule("~p :- q, ~r.").unwrap();
    assert!(abolishing.is_abolishing());
    let not_abolishing = parse_rule("~p :- p.").unwrap();
    assert!(!not_abolishing.is_abolishing());

    assert!(parse_rule("p :- p.").unwrap().has_local_cycle());
    assert!(parse_rule("~p :- ~q, p.").unwrap().has_local_cycle());
    assert!(!parse_rule("p :- q.").unwrap().has_local_cycle());

    assert!(!parse_rule("p; q.").unwrap().is_non_disjunctive());
}

#[test]
fn dependency_acyclicity() {
    assert!(parse_program("p :- q. q :- r.").unwrap().is_acyclic());
    assert!(!parse_program("p :- q. q :- ~p.").unwrap().is_acyclic());
    assert!(!parse_program("p :- p.").unwrap().is_acyclic());
    assert!(Program::empty().is_acyclic());
}

#[test]
fn alphabet_is_sorted_and_excludes_the_tautology_atom() {
    let a = Alphabet::new(["q", "p", "q"]);
    assert_eq!(a.atoms(), ["p", "q"]);
    let from_tau = Alphabet::from_program(&Program::new([Rule::tautology()]));
    assert!(from_tau.is_empty());
    assert_eq!(a.full_mask(), 0b11);
    assert_eq!(a.show_mask(0b10), "{q}");
}

#[test]
fn literal_ordering_puts_positives_first() {
    let rule = Rule::new(
        [Literal::neg("a"), Literal::pos("z")],
        [Literal::neg("b"), Literal::pos("y")],
    );
    assert_eq!(rule.to_string(), "z; ~a :- y, ~b.");
}
