//! End-to-end acceptance suite. Each test is one acceptance criterion and
//! produces exactly one pass/fail line in the harness output; every test
//! also enforces its wall-clock budget.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use lpu_core::belief::{
    abstract_update_sequence, check_postulate, formula_update, formula_update_sequence, kb_models,
    winslett_sequence, BeliefInstance, BeliefOp, EncodingStyle, FormulaOp, Postulate,
};
use lpu_core::canonical::{canonicalize, induce_rule, materialize_program};
use lpu_core::condense::{condense, condense_disjunctive, CondenseSemantics};
use lpu_core::equivalence::{entails, equivalent, Relation};
use lpu_core::exceptions::{
    check_update_property, forces, in_conflict, update, update_sequence, DeltaVariant, Forced,
    UpdateInstance, UpdateProperty,
};
use lpu_core::nested::nested_stable_models;
use lpu_core::parse::{parse_dlp, parse_kb, parse_program, parse_rule};
use lpu_core::rejection::{check_property, dlp_models, DlpProperty, DlpSemantics};
use lpu_core::semantics::{
    is_stable_model, pair_models_rule, re_models, stable_models, stable_models_rule_base,
    stable_models_via_pairs, Limits, ModelKind, ModelSet,
};
use lpu_core::syntax::{Alphabet, Dlp, Literal, Program, Rule, RuleBase, BOT_ATOM};

use common::{alphabet, mask, project_models};

const LIM: Limits = Limits {
    two_valued: 12,
    three_valued: 9,
};

fn budget(start: Instant, limit_secs: u64, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "{what} exceeded its {limit_secs}s budget: {elapsed:?}"
    );
}

fn base(src: &str) -> RuleBase {
    RuleBase::from_rules(&parse_program(src).unwrap())
}

/// Robust pair models of the two conflicting single-rule programs match
/// the worked fixtures exactly, as do the three forcing/conflict verdicts.
#[test]
fn criterion_01_pair_model_fixtures_and_conflicts() {
    let start = Instant::now();
    let ab = alphabet(2);
    let p = mask(&ab, &["p"]);
    let q = mask(&ab, &["q"]);
    let pq = p | q;

    let m = re_models(&parse_program("p.").unwrap(), &ab, &LIM).unwrap();
    assert_eq!(m.pairs, BTreeSet::from([(p, p), (p, pq), (pq, pq)]));

    let n = re_models(&parse_program("~p :- ~q.").unwrap(), &ab, &LIM).unwrap();
    assert_eq!(
        n.pairs,
        BTreeSet::from([(0, 0), (0, q), (q, q), (0, pq), (p, pq), (q, pq), (pq, pq)])
    );

    assert_eq!(forces(&m, 0, p), Some(Forced::True));
    assert_eq!(forces(&n, 0, p), Some(Forced::False));
    assert!(in_conflict(&m, &n, 0, p));
    assert!(in_conflict(&m, &n, p, p));
    assert_eq!(forces(&n, pq, p), None);
    assert!(!in_conflict(&m, &n, pq, p));
    budget(start, 1, "criterion 1");
}

/// The three-step sequence with a self-supporting re-assertion separates
/// the cautious and credulous rejection semantics.
#[test]
fn criterion_02_rejection_semantics_fixture() {
    let start = Instant::now();
    let ab = alphabet(1);
    let d = parse_dlp("p.\n%%\n~p.\n%%\np :- p.").unwrap();
    assert_eq!(
        dlp_models(DlpSemantics::Ju, &d, &ab, &LIM).unwrap(),
        vec![0]
    );
    assert_eq!(
        dlp_models(DlpSemantics::As, &d, &ab, &LIM).unwrap(),
        vec![0, mask(&ab, &["p"])]
    );
    budget(start, 1, "criterion 2");
}

fn worked_sequence() -> Dlp {
    parse_dlp("p. q :- p. r.\n%%\n~p :- ~q, ~r. ~p :- s. ~r.\n%%\np :- s. r :- r. s.").unwrap()
}

fn condensed_models(
    sem: CondenseSemantics,
    d: &Dlp,
    ab: &Alphabet,
    simplify: bool,
    disjunctive: bool,
) -> BTreeSet<u32> {
    if disjunctive {
        let p = condense_disjunctive(sem, d, simplify).unwrap();
        project_models(p.atoms().contains(BOT_ATOM), ab, |a| {
            stable_models(&p, a, &LIM).unwrap()
        })
    } else {
        let p = condense(sem, d, simplify).unwrap();
        project_models(p.atoms().contains(BOT_ATOM), ab, |a| {
            nested_stable_models(&p, a, &LIM).unwrap()
        })
    }
}

/// Condensing the worked sequence yields the expected models and, after
/// simplification, exactly the expected nested and disjunctive programs.
#[test]
fn criterion_03_condensing_fixtures() {
    let start = Instant::now();
    let ab = alphabet(4);
    let three = worked_sequence();
    let two = Dlp::new(three.programs[..2].iter().cloned());
    let pq = mask(&ab, &["p", "q"]);
    let pqs = mask(&ab, &["p", "q", "s"]);
    let pqrs = mask(&ab, &["p", "q", "r", "s"]);
    let cases = [
        (CondenseSemantics::Ju, &two, BTreeSet::from([0, pq])),
        (CondenseSemantics::As, &two, BTreeSet::from([0, pq])),
        (CondenseSemantics::Ju, &three, BTreeSet::from([pqs])),
        (CondenseSemantics::As, &three, BTreeSet::from([pqs, pqrs])),
    ];
    for (sem, d, expected) in &cases {
        for simplify in [false, true] {
            for disjunctive in [false, true] {
                assert_eq!(
                    condensed_models(*sem, d, &ab, simplify, disjunctive),
                    *expected,
                    "{sem:?} simplify={simplify} disjunctive={disjunctive}"
                );
            }
        }
    }

    let sorted_lines = |s: String| -> BTreeSet<String> { s.lines().map(str::to_owned).collect() };
    let ju_nested = condense(CondenseSemantics::Ju, &three, true).unwrap();
    assert_eq!(
        sorted_lines(ju_nested.to_string()),
        sorted_lines(
            "p :- s.\np :- ~(~q & ~r | s).\nq :- p.\ns :- true.\n\
             ~p :- ~q & ~r & ~s.\n"
                .to_owned()
        )
    );
    let as_nested = condense(CondenseSemantics::As, &three, true).unwrap();
    assert_eq!(
        sorted_lines(as_nested.to_string()),
        sorted_lines(
            "p :- s.\np :- ~(~q & ~r | s).\np | ~p :- true.\nq :- p.\n\
             q | ~q :- p.\nr | ~r :- true.\ns :- true.\ns | ~s :- true.\n\
             ~p :- ~q & ~r & ~s.\n"
                .to_owned()
        )
    );
    let ju_disj = condense_disjunctive(CondenseSemantics::Ju, &three, true).unwrap();
    let expected_ju =
        parse_program("p ; ~q :- ~s. p ; ~r :- ~s. q :- p. ~p :- ~q, ~r, ~s. p :- s. s.").unwrap();
    assert_eq!(ju_disj.to_string(), expected_ju.to_string());
    let as_disj = condense_disjunctive(CondenseSemantics::As, &three, true).unwrap();
    let expected_as = parse_program(
        "p :- q, ~s. p :- r, ~s. q :- p. ~p :- ~q, ~r, ~s. p :- s. s. \
         p ; ~p. q ; ~q :- p. r ; ~r. s ; ~s.",
    )
    .unwrap();
    assert_eq!(as_disj.to_string(), expected_as.to_string());
    budget(start, 1, "criterion 3");
}

/// Condensed programs (both targets, both semantics, simplified or not)
/// have exactly the models of the original sequence on 500 random inputs.
#[test]
fn criterion_04_condensing_matches_sequence_models() {
    let start = Instant::now();
    let ab = alphabet(4);
    let mut rng = common::rng(211);
    for i in 0..500 {
        let d = common::random_dlp(&mut rng, 4, 3, 4, true);
        for (sem, dsem) in [
            (CondenseSemantics::Ju, DlpSemantics::Ju),
            (CondenseSemantics::As, DlpSemantics::As),
        ] {
            let expected: BTreeSet<u32> = dlp_models(dsem, &d, &ab, &LIM)
                .unwrap()
                .into_iter()
                .collect();
            for simplify in [false, true] {
                for disjunctive in [false, true] {
                    assert_eq!(
                        condensed_models(sem, &d, &ab, simplify, disjunctive),
                        expected,
                        "case {i}, {sem:?} simplify={simplify} \
                         disjunctive={disjunctive} on:\n{d}"
                    );
                }
            }
        }
    }
    budget(start, 60, "criterion 4");
}

/// Exception-based update sequences coincide with the rejection semantics
/// on sequences without local cycles and stay sound with them.
#[test]
fn criterion_05_update_sequences_match_rejection_semantics() {
    let start = Instant::now();
    let ab = alphabet(4);
    let mut rng = common::rng(223);
    let pairs = [
        (DeltaVariant::B, DlpSemantics::Ju),
        (DeltaVariant::D, DlpSemantics::Ju),
        (DeltaVariant::C, DlpSemantics::As),
        (DeltaVariant::E, DlpSemantics::As),
    ];
    for i in 0..300 {
        let d = Dlp::new(
            (0..(i % 3) + 1).map(|_| common::random_acyclic_rule_program(&mut rng, 4, 4, false)),
        );
        for (v, dsem) in pairs {
            let got = dlp_models(DlpSemantics::Delta(v), &d, &ab, &LIM).unwrap();
            let want = dlp_models(dsem, &d, &ab, &LIM).unwrap();
            assert_eq!(got, want, "case {i}, variant {} on:\n{d}", v.name());
        }
    }
    // With local cycles the update-sequence models are still included.
    for i in 0..150 {
        let d = common::random_dlp(&mut rng, 4, 3, 3, true);
        for (v, dsem) in pairs {
            let got = dlp_models(DlpSemantics::Delta(v), &d, &ab, &LIM).unwrap();
            let want: BTreeSet<u32> = dlp_models(dsem, &d, &ab, &LIM)
                .unwrap()
                .into_iter()
                .collect();
            assert!(
                got.iter().all(|m| want.contains(m)),
                "case {i}, variant {}: {got:?} not within {want:?} on:\n{d}",
                v.name()
            );
        }
    }
    budget(start, 120, "criterion 5");
}

/// Pair-model machinery round-trips: stable models via pair models, model
/// sets via their materialization program, canonical rules via induction.
#[test]
fn criterion_06_pair_model_round_trips() {
    let start = Instant::now();
    let ab = alphabet(4);
    let mut rng = common::rng(227);
    for _ in 0..1000 {
        let p = common::random_program(&mut rng, 4, 4);
        assert_eq!(
            stable_models_via_pairs(&p, &ab, &LIM).unwrap(),
            stable_models(&p, &ab, &LIM).unwrap(),
            "program:\n{p}"
        );
    }

    let ab3 = alphabet(3);
    let universe: Vec<(u32, u32)> = {
        let mut v = Vec::new();
        lpu_core::semantics::for_each_pair(&ab3, |i, j| v.push((i, j)));
        v
    };
    use rand::Rng;
    for _ in 0..500 {
        let pairs: BTreeSet<(u32, u32)> = universe
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let ms = ModelSet { pairs };
        let program = materialize_program(&ms, &ab3);
        assert_eq!(re_models(&program, &ab3, &LIM).unwrap(), ms);
    }

    // Exhaustive induction round-trip over the two-atom canonical rules.
    let ab2 = alphabet(2);
    let mut checked = 0;
    for a_slot in 0..5 {
        for b_slot in 0..5 {
            let rule = slotted_rule(["p", "q"], [a_slot, b_slot]);
            let canon = canonicalize(&rule, ModelKind::Re);
            if canon != rule {
                continue;
            }
            let ms = pair_models_rule(&rule, ModelKind::Re, &ab2, &LIM).unwrap();
            assert_eq!(induce_rule(&ms, &ab2), rule, "rule {rule}");
            checked += 1;
        }
    }
    assert!(checked > 10);
    budget(start, 60, "criterion 6");
}

fn slotted_rule(atoms: [&str; 2], slots: [usize; 2]) -> Rule {
    let mut head = Vec::new();
    let mut body = Vec::new();
    for (atom, slot) in atoms.iter().zip(slots) {
        match slot {
            0 => head.push(Literal::pos(*atom)),
            1 => head.push(Literal::neg(*atom)),
            2 => body.push(Literal::pos(*atom)),
            3 => body.push(Literal::neg(*atom)),
            _ => {}
        }
    }
    Rule::new(head, body)
}

/// The strength lattice between the eight equivalence relations (and the
/// seven entailment relations) holds on 1000 random pairs, and the fixture
/// pairs reproduce their exact relation patterns.
#[test]
fn criterion_07_equivalence_lattice_and_patterns() {
    let start = Instant::now();
    use Relation::*;
    let eq_edges = [
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
    let ent_edges = [
        (Su, Rr),
        (Rr, Rmr),
        (Rmr, Re),
        (Re, Se),
        (Rr, Sr),
        (Sr, Smr),
        (Smr, Se),
        (Rmr, Smr),
    ];
    let ab = alphabet(3);
    let mut rng = common::rng(229);
    for _ in 0..1000 {
        let p = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        let q = RuleBase::from_rules(&common::random_program(&mut rng, 3, 3));
        for (strong, weak) in eq_edges {
            if equivalent(strong, &p, &q, &ab, &LIM).unwrap() {
                assert!(
                    equivalent(weak, &p, &q, &ab, &LIM).unwrap(),
                    "{} = held, {} failed on:\n{p}\nvs\n{q}",
                    strong.name(),
                    weak.name()
                );
            }
        }
        for (strong, weak) in ent_edges {
            if entails(strong, &p, &q, &ab, &LIM).unwrap() {
                assert!(
                    entails(weak, &p, &q, &ab, &LIM).unwrap(),
                    "{} |= held, {} failed on:\n{p}\nvs\n{q}",
                    strong.name(),
                    weak.name()
                );
            }
        }
    }

    let ab2 = alphabet(2);
    let patterns: [(&str, &str, [bool; 8]); 5] = [
        (
            "~p.",
            ":- p.",
            [true, true, false, true, false, true, false, false],
        ),
        (
            "p. q.",
            "p. q :- p.",
            [true, true, true, false, false, false, false, false],
        ),
        (
            "p.",
            "p. p :- q.",
            [true, true, true, true, true, false, false, false],
        ),
        (
            "",
            "p :- q.",
            [true, false, false, false, false, false, false, false],
        ),
        (
            "p. p :- p.",
            "p.",
            [true, true, true, true, true, true, true, true],
        ),
    ];
    for (left, right, expected) in patterns {
        let p = base(left);
        let q = base(right);
        for (rel, want) in Relation::ALL.into_iter().zip(expected) {
            assert_eq!(
                equivalent(rel, &p, &q, &ab2, &LIM).unwrap(),
                want,
                "relation {} on {left:?} vs {right:?}",
                rel.name()
            );
        }
    }
    budget(start, 60, "criterion 7");
}

/// The update-postulate table: the universally satisfied postulates hold
/// on random inputs, the lazy variants are idempotent/absorbing, and the
/// known counterexamples fail exactly where expected.
#[test]
fn criterion_08_update_postulate_suite() {
    let start = Instant::now();
    let ab = alphabet(3);
    let mut rng = common::rng(233);
    let taut = base("p :- p.");
    let s_choices = ["", "r.", "~r.", "r :- r."];
    for i in 0..200 {
        let inst = UpdateInstance {
            r: RuleBase::from_rules(&common::random_program(&mut rng, 2, 2)),
            s: base(s_choices[i % s_choices.len()]),
            u: RuleBase::from_rules(&common::random_program(&mut rng, 2, 2)),
            v: if i % 2 == 0 {
                taut.clone()
            } else {
                RuleBase::default()
            },
        };
        // For Immunity both extra bases must be tautological.
        let immunity_inst = UpdateInstance {
            s: taut.clone(),
            v: taut.clone(),
            ..inst.clone()
        };
        for variant in DeltaVariant::ALL {
            for prop in [
                UpdateProperty::Initialisation,
                UpdateProperty::Disjointness,
                UpdateProperty::Tautology,
                UpdateProperty::P1,
                UpdateProperty::P2Top,
            ] {
                assert!(
                    check_update_property(prop, variant, Relation::Rr, &inst, &ab, &LIM).unwrap(),
                    "case {i}: {prop:?} failed for {} on:\n{}\nby\n{}",
                    variant.name(),
                    inst.r,
                    inst.u
                );
            }
            assert!(
                check_update_property(
                    UpdateProperty::Immunity,
                    variant,
                    Relation::Rr,
                    &immunity_inst,
                    &ab,
                    &LIM
                )
                .unwrap(),
                "case {i}: immunity failed for {}",
                variant.name()
            );
        }
        // The lazy variants are idempotent and absorbing under the
        // strongest semantic relation.
        let self_inst = UpdateInstance {
            u: inst.r.clone(),
            v: inst.r.clone(),
            ..inst.clone()
        };
        for variant in [DeltaVariant::D, DeltaVariant::E] {
            for prop in [UpdateProperty::Idempotence, UpdateProperty::Absorption] {
                assert!(
                    check_update_property(prop, variant, Relation::Rr, &self_inst, &ab, &LIM)
                        .unwrap(),
                    "case {i}: {prop:?} failed for {} on:\n{}",
                    variant.name(),
                    self_inst.r
                );
            }
        }
    }

    // Idempotence counterexample for the eager variants.
    let idem = UpdateInstance {
        r: base("p :- ~q. ~p :- r."),
        u: base("p :- ~q. ~p :- r."),
        ..Default::default()
    };
    for variant in [DeltaVariant::A, DeltaVariant::B, DeltaVariant::C] {
        assert!(!check_update_property(
            UpdateProperty::Idempotence,
            variant,
            Relation::Rr,
            &idem,
            &ab,
            &LIM
        )
        .unwrap());
    }
    // Absorption/Augmentation counterexample for the first variant.
    let absorb = UpdateInstance {
        r: base("p."),
        u: base("~p :- ~q. q."),
        v: base("~p :- ~q. q."),
        ..Default::default()
    };
    for prop in [UpdateProperty::Absorption, UpdateProperty::Augmentation] {
        for rel in [Relation::Rr, Relation::Rmr] {
            assert!(
                !check_update_property(prop, DeltaVariant::A, rel, &absorb, &ab, &LIM).unwrap()
            );
        }
    }
    // Associativity counterexample: regrouping gains the model {p, q}.
    let ab2 = alphabet(2);
    let (r, u, v) = (base("p."), base("~p."), base("p :- q. q :- p."));
    let pq = mask(&ab2, &["p", "q"]);
    let variant = DeltaVariant::B;
    let left = update(
        variant,
        &update(variant, &r, &u, &ab2, &LIM).unwrap(),
        &v,
        &ab2,
        &LIM,
    )
    .unwrap();
    let right = update(
        variant,
        &r,
        &update(variant, &u, &v, &ab2, &LIM).unwrap(),
        &ab2,
        &LIM,
    )
    .unwrap();
    let sm_left = stable_models_rule_base(&left, &ab2, &LIM).unwrap();
    let sm_right = stable_models_rule_base(&right, &ab2, &LIM).unwrap();
    assert!(!sm_left.contains(&pq));
    assert!(sm_right.contains(&pq), "right-hand models: {sm_right:?}");
    budget(start, 120, "criterion 8");
}

/// Belief operators and their exception encodings produce the same models
/// on random update sequences; the strong-inclusion witness for the
/// disjunctive operator reproduces exactly.
#[test]
fn criterion_09_belief_encoding_suite() {
    let start = Instant::now();
    let ab = alphabet(3);
    let mut rng = common::rng(239);
    use rand::Rng;
    let mut kbs_used = 0;
    while kbs_used < 200 {
        let len = rng.gen_range(1..=3);
        let seq: Vec<_> = (0..len)
            .map(|_| common::random_kb(&mut rng, 3, 2))
            .collect();
        kbs_used += len;
        let winslett = winslett_sequence(&seq, &ab, &LIM).unwrap();
        let encoded =
            abstract_update_sequence(EncodingStyle::ModelBased, None, &seq, &ab, &LIM).unwrap();
        assert_eq!(kb_models(&encoded, &ab, &LIM).unwrap(), winslett);
        for op in [FormulaOp::Widtio, FormulaOp::Bold] {
            let direct = formula_update_sequence(op, &seq, &ab, &LIM).unwrap();
            let encoded =
                abstract_update_sequence(EncodingStyle::FormulaBased, Some(op), &seq, &ab, &LIM)
                    .unwrap();
            assert_eq!(
                kb_models(&encoded, &ab, &LIM).unwrap(),
                kb_models(&direct, &ab, &LIM).unwrap(),
                "{op:?} on {seq:?}"
            );
        }
        let single = &seq[..1];
        let direct = formula_update_sequence(FormulaOp::Cp, single, &ab, &LIM).unwrap();
        let encoded = abstract_update_sequence(
            EncodingStyle::FormulaBased,
            Some(FormulaOp::Cp),
            single,
            &ab,
            &LIM,
        )
        .unwrap();
        assert_eq!(
            kb_models(&encoded, &ab, &LIM).unwrap(),
            kb_models(&direct, &ab, &LIM).unwrap()
        );
    }

    // The disjunctive operator on the conflicting pair: exact output and
    // failure of the strong inclusion postulate.
    let ab2 = alphabet(2);
    let b = parse_kb("p\nq").unwrap();
    let u = parse_kb("!p | !q").unwrap();
    let cp = formula_update(FormulaOp::Cp, &b, &u, &ab2, &LIM).unwrap();
    let expected = parse_kb("p | q\n!p | !q").unwrap();
    assert_eq!(cp.to_string(), expected.to_string());
    let inst = BeliefInstance {
        b,
        u,
        ..Default::default()
    };
    assert!(!check_postulate(
        Postulate::Fu21,
        BeliefOp::Formula(FormulaOp::Cp),
        &inst,
        &ab2,
        &LIM
    )
    .unwrap());
    budget(start, 60, "criterion 9");
}

/// Fact update and support hold for every exception variant and both
/// rejection semantics on random instances.
#[test]
fn criterion_10_fact_update_and_support() {
    let start = Instant::now();
    let ab = alphabet(3);
    let mut rng = common::rng(241);
    let mut sems = vec![DlpSemantics::Ju, DlpSemantics::As];
    sems.extend(DeltaVariant::ALL.map(DlpSemantics::Delta));
    for i in 0..200 {
        let d = if i % 2 == 0 {
            common::random_fact_dlp(&mut rng, 3, 3, 3)
        } else {
            common::random_dlp(&mut rng, 3, 3, 3, true)
        };
        for &sem in &sems {
            for prop in [DlpProperty::FactUpdate, DlpProperty::Support] {
                assert!(
                    check_property(prop, sem, &d, &ab, &LIM).unwrap(),
                    "case {i}: {prop:?} failed for {sem:?} on:\n{d}"
                );
            }
        }
    }
    budget(start, 30, "criterion 10");
}

// Keep a handful of otherwise-unused imports honest.
#[test]
fn acceptance_helpers_are_consistent() {
    let ab = alphabet(2);
    let rule = parse_rule("p :- ~q.").unwrap();
    let ms = pair_models_rule(&rule, ModelKind::Re, &ab, &LIM).unwrap();
    assert!(!ms.pairs.is_empty());
    assert!(is_stable_model(
        &parse_program("p.").unwrap(),
        &ab,
        mask(&ab, &["p"])
    ));
    let seq = update_sequence(DeltaVariant::A, &[parse_program("p.").unwrap()], &ab, &LIM).unwrap();
    assert_eq!(
        stable_models_rule_base(&seq, &ab, &LIM).unwrap(),
        vec![mask(&ab, &["p"])]
    );
    let _ = Program::default();
}
