//! `lpu` — command-line front end for the logic-program-update toolkit.
//!
//! Exit codes: 0 success / relation holds, 1 relation or property does not
//! hold, 2 usage or parse error, 3 enumeration cap exceeded.

use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lpu_core::belief::{
    check_postulate, formula_update, kb_models, winslett_sequence, BeliefInstance, BeliefOp,
    FormulaOp, Postulate,
};
use lpu_core::condense::{condense, condense_disjunctive, CondenseSemantics};
use lpu_core::equivalence::{entails, equivalent, Relation};
use lpu_core::exceptions::{
    check_update_property, update_sequence, DeltaVariant, UpdateInstance, UpdateProperty,
};
use lpu_core::parse::{parse_dlp, parse_kb, parse_program};
use lpu_core::rejection::{check_property, dlp_models, DlpProperty, DlpSemantics};
use lpu_core::semantics::{
    classical_models, re_models, se_models, stable_models, Limits, ModelSet,
};
use lpu_core::syntax::{Alphabet, Program, RuleBase, BOT_ATOM, TAU_ATOM};
use lpu_core::Error;

/// Version tag of the structured (JSON) output schema; see
/// docs/structured-output.md.
const SCHEMA: &str = "lpu.v1";

#[derive(Parser)]
#[command(
    name = "lpu",
    about = "Logic program updates: models, update operators, condensing, \
             equivalence checks, and belief update.",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Extra atoms to adjoin to the alphabet (comma-separated, e.g. `p,q,r`);
    /// the default alphabet is the union of atoms in the inputs.
    #[arg(long, global = true, value_name = "ATOMS")]
    alphabet: Option<String>,
    /// Enumeration cap: maximum number of atoms any enumeration may range
    /// over (default 12 for two-valued, 9 for three-valued enumerations).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "structured"])]
    output: String,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the models of a single program (reads a program file or `-`).
    Models {
        /// Model operator to apply.
        #[arg(long, default_value = "stable", value_parser = ["classical", "stable", "se", "re"])]
        kind: String,
        /// Program file (`-` for stdin).
        file: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Print the models of a program sequence (`%%`-separated programs).
    DlpModels {
        /// Sequence semantics: `ju`, `as`, or `delta-<a..e>`.
        #[arg(long)]
        semantics: String,
        /// Sequence file (`-` for stdin).
        file: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Fold a program sequence with an exception-driven update operator and
    /// print the resulting rule base.
    Update {
        /// Exception-selection variant.
        #[arg(long, value_parser = ["a", "b", "c", "d", "e"])]
        delta: String,
        /// Sequence file (`-` for stdin).
        file: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Condense a program sequence into one program and print it.
    Condense {
        /// Sequence semantics to preserve.
        #[arg(long, value_parser = ["ju", "as"])]
        semantics: String,
        /// Output program form.
        #[arg(long, default_value = "nested", value_parser = ["nested", "disjunctive"])]
        target: String,
        /// Apply the rule-level simplifications to the result.
        #[arg(long)]
        simplify: bool,
        /// Sequence file (`-` for stdin).
        file: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Test whether two programs are equivalent under a relation
    /// (exit 0 if they are, 1 if not).
    Equiv {
        /// One of: sm, se, re, smr, rmr, sr, rr, su.
        #[arg(long)]
        relation: String,
        left: String,
        right: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Test whether the left program entails the right one under a relation
    /// (exit 0 if it does, 1 if not).
    Entails {
        /// One of: se, re, smr, rmr, sr, rr, su.
        #[arg(long)]
        relation: String,
        left: String,
        right: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Apply a belief update operator to a sequence of knowledge bases
    /// (first file is the initial base, the rest are successive updates).
    Belief {
        /// Operator: `winslett`, `widtio`, `cp`, or `bold`.
        #[arg(long, value_parser = ["winslett", "widtio", "cp", "bold"])]
        op: String,
        /// Print the models of the result instead of its formulas
        /// (`winslett` always prints models).
        #[arg(long)]
        models: bool,
        /// Knowledge base files, one formula per line (`-` for stdin).
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Check a belief-update postulate on concrete knowledge bases
    /// (exit 0 if it holds, 1 if not).
    CheckPostulate {
        /// Postulate name, e.g. `b1`, `b2.1`, `fu1`, `fu2.1`, `fu4`.
        #[arg(long)]
        name: String,
        /// Operator: `winslett`, `widtio`, `cp`, or `bold`.
        #[arg(long)]
        op: String,
        /// Knowledge base files in the order B U [C] [V]; postulates use the
        /// subset of inputs they mention.
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Check a property of an update operator or a sequence semantics
    /// (exit 0 if it holds, 1 if not).
    CheckProperty {
        /// Property name. With `--delta`: e.g. `initialisation`,
        /// `tautology`, `idempotence`, `absorption`. With `--semantics`:
        /// `support`, `fact-update`, `causal-rejection`,
        /// `acyclic-justified-update`.
        #[arg(long)]
        name: String,
        /// Check an exception-driven update property with this variant;
        /// inputs are program files in the order R U [S] [V].
        #[arg(long, value_parser = ["a", "b", "c", "d", "e"])]
        delta: Option<String>,
        /// Equivalence relation the update property is judged under
        /// (with `--delta` only).
        #[arg(long, default_value = "rr")]
        relation: String,
        /// Check a sequence-semantics property; the single input is a
        /// `%%`-separated sequence file.
        #[arg(long)]
        semantics: Option<String>,
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_input(path: &str) -> lpu_core::Result<String> {
    let res = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|e| Error::Invalid(format!("cannot read `{path}`: {e}")))
}

/// Alphabet for an operation: atoms occurring in the inputs, minus the
/// reserved ones, plus any explicitly requested atoms.
fn make_alphabet(input_atoms: BTreeSet<&str>, common: &CommonFlags) -> Alphabet {
    let mut atoms: BTreeSet<String> = input_atoms
        .into_iter()
        .filter(|a| *a != TAU_ATOM && *a != BOT_ATOM)
        .map(str::to_owned)
        .collect();
    if let Some(extra) = &common.alphabet {
        for a in extra.split(',') {
            let a = a.trim();
            if !a.is_empty() {
                atoms.insert(a.to_owned());
            }
        }
    }
    Alphabet::new(atoms)
}

fn make_limits(common: &CommonFlags) -> Limits {
    match common.cap {
        Some(n) => Limits::uniform(n),
        None => Limits {
            two_valued: 12,
            three_valued: 9,
        },
    }
}

fn show_set(alphabet: &Alphabet, mask: u32) -> String {
    if mask == 0 {
        "∅".to_owned()
    } else {
        alphabet.show_mask(mask)
    }
}

fn mask_atoms(alphabet: &Alphabet, mask: u32) -> Value {
    let names: Vec<&str> = alphabet
        .atoms()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, a)| a.as_str())
        .collect();
    json!(names)
}

fn emit_two_valued(
    verb: &str,
    detail: Value,
    models: &[u32],
    alphabet: &Alphabet,
    common: &CommonFlags,
) {
    if common.output == "structured" {
        let out: Vec<Value> = models.iter().map(|&m| mask_atoms(alphabet, m)).collect();
        print_json(json!({
            "schema": SCHEMA, "verb": verb, "detail": detail, "models": out
        }));
    } else {
        for &m in models {
            println!("{}", show_set(alphabet, m));
        }
    }
}

fn emit_pairs(kind: &str, ms: &ModelSet, alphabet: &Alphabet, common: &CommonFlags) {
    if common.output == "structured" {
        let out: Vec<Value> = ms
            .pairs
            .iter()
            .map(|&(i, j)| json!([mask_atoms(alphabet, i), mask_atoms(alphabet, j)]))
            .collect();
        print_json(json!({
            "schema": SCHEMA, "verb": "models", "detail": {"kind": kind},
            "pairs": out
        }));
    } else {
        for &(i, j) in &ms.pairs {
            println!("<{}, {}>", show_set(alphabet, i), show_set(alphabet, j));
        }
    }
}

fn emit_verdict(verb: &str, detail: Value, holds: bool, common: &CommonFlags) -> ExitCode {
    if common.output == "structured" {
        print_json(json!({
            "schema": SCHEMA, "verb": verb, "detail": detail, "holds": holds
        }));
    } else {
        println!("{}", if holds { "holds" } else { "does not hold" });
    }
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(v: Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&v).expect("serializable")
    );
}

fn program_json(p: &Program) -> Value {
    json!(p.rules.iter().map(|r| r.to_string()).collect::<Vec<_>>())
}

fn run(verb: Verb) -> lpu_core::Result<ExitCode> {
    match verb {
        Verb::Models { kind, file, common } => {
            let p = parse_program(&read_input(&file)?)?;
            let ab = make_alphabet(p.atoms(), &common);
            let lim = make_limits(&common);
            match kind.as_str() {
                "classical" | "stable" => {
                    let models = if kind == "classical" {
                        classical_models(&p, &ab, &lim)?
                    } else {
                        stable_models(&p, &ab, &lim)?
                    };
                    emit_two_valued("models", json!({"kind": kind}), &models, &ab, &common);
                }
                "se" | "re" => {
                    let ms = if kind == "se" {
                        se_models(&p, &ab, &lim)?
                    } else {
                        re_models(&p, &ab, &lim)?
                    };
                    emit_pairs(&kind, &ms, &ab, &common);
                }
                _ => unreachable!(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Verb::DlpModels {
            semantics,
            file,
            common,
        } => {
            let sem = DlpSemantics::parse(&semantics)?;
            let d = parse_dlp(&read_input(&file)?)?;
            let ab = make_alphabet(d.atoms(), &common);
            let lim = make_limits(&common);
            let models = dlp_models(sem, &d, &ab, &lim)?;
            emit_two_valued(
                "dlp-models",
                json!({"semantics": semantics}),
                &models,
                &ab,
                &common,
            );
            Ok(ExitCode::SUCCESS)
        }
        Verb::Update {
            delta,
            file,
            common,
        } => {
            let variant = DeltaVariant::parse(&delta)?;
            let d = parse_dlp(&read_input(&file)?)?;
            let ab = make_alphabet(d.atoms(), &common);
            let lim = make_limits(&common);
            let result = update_sequence(variant, &d.programs, &ab, &lim)?;
            if common.output == "structured" {
                let units: Vec<Value> = result.units.iter().map(program_json).collect();
                print_json(json!({
                    "schema": SCHEMA, "verb": "update",
                    "detail": {"delta": delta}, "units": units
                }));
            } else {
                print!("{result}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Verb::Condense {
            semantics,
            target,
            simplify,
            file,
            common,
        } => {
            let sem = CondenseSemantics::parse(&semantics)?;
            let d = parse_dlp(&read_input(&file)?)?;
            if common.output == "structured" {
                let rules: Value = if target == "nested" {
                    let p = condense(sem, &d, simplify)?;
                    json!(p.rules.iter().map(|r| r.to_string()).collect::<Vec<_>>())
                } else {
                    let p = condense_disjunctive(sem, &d, simplify)?;
                    program_json(&p)
                };
                print_json(json!({
                    "schema": SCHEMA, "verb": "condense",
                    "detail": {"semantics": semantics, "target": target,
                               "simplify": simplify},
                    "rules": rules
                }));
            } else if target == "nested" {
                print!("{}", condense(sem, &d, simplify)?);
            } else {
                print!("{}", condense_disjunctive(sem, &d, simplify)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Verb::Equiv {
            relation,
            left,
            right,
            common,
        } => {
            let rel = Relation::parse(&relation)?;
            let p = RuleBase::from_rules(&parse_program(&read_input(&left)?)?);
            let q = RuleBase::from_rules(&parse_program(&read_input(&right)?)?);
            let ab = make_alphabet(p.atoms().union(&q.atoms()).copied().collect(), &common);
            let lim = make_limits(&common);
            let holds = equivalent(rel, &p, &q, &ab, &lim)?;
            Ok(emit_verdict(
                "equiv",
                json!({"relation": relation}),
                holds,
                &common,
            ))
        }
        Verb::Entails {
            relation,
            left,
            right,
            common,
        } => {
            let rel = Relation::parse(&relation)?;
            if rel == Relation::Sm {
                return Err(Error::Invalid(
                    "entailment is not defined for relation `sm`".to_owned(),
                ));
            }
            let p = RuleBase::from_rules(&parse_program(&read_input(&left)?)?);
            let q = RuleBase::from_rules(&parse_program(&read_input(&right)?)?);
            let ab = make_alphabet(p.atoms().union(&q.atoms()).copied().collect(), &common);
            let lim = make_limits(&common);
            let holds = entails(rel, &p, &q, &ab, &lim)?;
            Ok(emit_verdict(
                "entails",
                json!({"relation": relation}),
                holds,
                &common,
            ))
        }
        Verb::Belief {
            op,
            models,
            files,
            common,
        } => {
            let kbs = files
                .iter()
                .map(|f| parse_kb(&read_input(f)?))
                .collect::<lpu_core::Result<Vec<_>>>()?;
            let mut atoms = BTreeSet::new();
            for kb in &kbs {
                atoms.extend(kb.atoms());
            }
            let ab = make_alphabet(atoms, &common);
            let lim = make_limits(&common);
            if op == "winslett" {
                let result = winslett_sequence(&kbs, &ab, &lim)?;
                let result: Vec<u32> = result.into_iter().collect();
                emit_two_valued("belief", json!({"op": op}), &result, &ab, &common);
            } else {
                let fop = FormulaOp::parse(&op)?;
                // The first file is the initial base; the rest are updates.
                let mut kb = kbs[0].clone();
                for u in &kbs[1..] {
                    kb = formula_update(fop, &kb, u, &ab, &lim)?;
                }
                if models {
                    let result: Vec<u32> = kb_models(&kb, &ab, &lim)?.into_iter().collect();
                    emit_two_valued("belief", json!({"op": op}), &result, &ab, &common);
                } else if common.output == "structured" {
                    let formulas: Vec<String> = kb.formulas.iter().map(|f| f.to_string()).collect();
                    print_json(json!({
                        "schema": SCHEMA, "verb": "belief",
                        "detail": {"op": op}, "formulas": formulas
                    }));
                } else {
                    print!("{kb}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Verb::CheckPostulate {
            name,
            op,
            files,
            common,
        } => {
            let post = Postulate::parse(&name)?;
            let bop = BeliefOp::parse(&op)?;
            let kbs = files
                .iter()
                .map(|f| parse_kb(&read_input(f)?))
                .collect::<lpu_core::Result<Vec<_>>>()?;
            let mut atoms = BTreeSet::new();
            for kb in &kbs {
                atoms.extend(kb.atoms());
            }
            let ab = make_alphabet(atoms, &common);
            let lim = make_limits(&common);
            let mut it = kbs.into_iter();
            let inst = BeliefInstance {
                b: it.next().unwrap_or_default(),
                u: it.next().unwrap_or_default(),
                c: it.next().unwrap_or_default(),
                v: it.next().unwrap_or_default(),
            };
            let holds = check_postulate(post, bop, &inst, &ab, &lim)?;
            Ok(emit_verdict(
                "check-postulate",
                json!({"name": name, "op": op}),
                holds,
                &common,
            ))
        }
        Verb::CheckProperty {
            name,
            delta,
            relation,
            semantics,
            files,
            common,
        } => match (delta, semantics) {
            (Some(delta), None) => {
                let prop = UpdateProperty::parse(&name)?;
                let variant = DeltaVariant::parse(&delta)?;
                let rel = Relation::parse(&relation)?;
                let bases = files
                    .iter()
                    .map(|f| Ok(RuleBase::from_rules(&parse_program(&read_input(f)?)?)))
                    .collect::<lpu_core::Result<Vec<_>>>()?;
                let mut atoms = BTreeSet::new();
                for b in &bases {
                    atoms.extend(b.atoms());
                }
                let ab = make_alphabet(atoms, &common);
                let lim = make_limits(&common);
                let mut it = bases.into_iter();
                let inst = UpdateInstance {
                    r: it.next().unwrap_or_default(),
                    u: it.next().unwrap_or_default(),
                    s: it.next().unwrap_or_default(),
                    v: it.next().unwrap_or_default(),
                };
                let holds = check_update_property(prop, variant, rel, &inst, &ab, &lim)?;
                Ok(emit_verdict(
                    "check-property",
                    json!({"name": name, "delta": delta,
                               "relation": relation}),
                    holds,
                    &common,
                ))
            }
            (None, Some(semantics)) => {
                let prop = DlpProperty::parse(&name)?;
                let sem = DlpSemantics::parse(&semantics)?;
                if files.len() != 1 {
                    return Err(Error::Invalid(
                        "`--semantics` takes exactly one sequence file".to_owned(),
                    ));
                }
                let d = parse_dlp(&read_input(&files[0])?)?;
                let ab = make_alphabet(d.atoms(), &common);
                let lim = make_limits(&common);
                let holds = check_property(prop, sem, &d, &ab, &lim)?;
                Ok(emit_verdict(
                    "check-property",
                    json!({"name": name, "semantics": semantics}),
                    holds,
                    &common,
                ))
            }
            _ => Err(Error::Invalid(
                "pass exactly one of `--delta` or `--semantics`".to_owned(),
            )),
        },
    }
}
