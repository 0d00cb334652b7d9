//! The `linaut` command line.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false verdicts, 2 for
//! usage, parse and precondition errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::automaton::{
    complement, complete_with_sink, reachable_states, validate_complete, validate_deterministic,
    LinearAutomaton, ValidationReport,
};
use crate::border::{check_bc, enumerate_pseudo_bc, index_of, merge_classes, PseudoBC};
use crate::error::{Error, Result};
use crate::io::{serialize_automaton, Document, DocumentKind, Payload};
use crate::oracle::{equiv_bounded, probe_partition, Budget, Builtin, BuiltinKind};
use crate::runner::{check_prefix_stability, run, TraceRecord};
use crate::schedule::{check_conformance, Rate};
use crate::synth::{build_automaton, derive_bc_spec, roundtrip_check, validate_bc_spec};
use crate::word::{Alphabet, Presu, ShowWord};

#[derive(Parser)]
#[command(
    name = "linaut",
    version,
    about = "Deterministic linear (two-head) automata"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of membership tests per oracle call.
    #[arg(long, global = true, default_value_t = Budget::default().0)]
    budget: u64,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the resulting automaton here instead of stdout.
    #[arg(short, long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate determinism and completeness.
    Check { automaton: String },
    /// Run an automaton on a word.
    Run { automaton: String, word: String },
    /// Add a sink state where transitions are missing.
    Complete {
        automaton: String,
        #[command(flatten)]
        out: Output,
    },
    /// Complement a complete deterministic automaton.
    Complement {
        automaton: String,
        #[command(flatten)]
        out: Output,
    },
    /// List presu classes up to a total length.
    Classes {
        automaton: String,
        #[arg(long)]
        bound: usize,
        /// Join classes of equivalent states.
        #[arg(long)]
        merge: bool,
        #[arg(long, default_value_t = 6)]
        mid_bound: usize,
    },
    /// Check a presu set for completeness and crossing pairs.
    BcCheck {
        presus: String,
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        bound: usize,
    },
    /// Build an automaton from a BC spec.
    Build {
        spec: String,
        #[command(flatten)]
        out: Output,
    },
    /// Derive a BC spec from an automaton, rebuild and compare.
    Roundtrip {
        automaton: String,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        mid_bound: usize,
    },
    /// Compare runs against a fixed-rate head schedule.
    Schedule {
        automaton: String,
        #[arg(long)]
        rate: Rate,
        /// A file with one word per line (`λ` or an empty line for the empty
        /// word), or `gen:N` for all words up to length N.
        #[arg(long)]
        words_from: String,
    },
    /// Bounded language equality of two automata.
    Equiv {
        a: String,
        b: String,
        #[arg(long)]
        maxlen: usize,
    },
    /// Count classes among presus (xᵐ, yᵏ) of a builtin language.
    Probe {
        #[arg(long)]
        lang: BuiltinKind,
        #[arg(long, num_args = 2, value_names = ["PREFIX", "SUFFIX"])]
        stubs: Vec<String>,
        #[arg(long = "B")]
        max_power: usize,
        #[arg(long)]
        mid_bound: usize,
        #[arg(long)]
        alphabet: Option<String>,
    },
}

struct Ctx<'a> {
    json: bool,
    budget: Budget,
    seed: u64,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &impl Serialize, text: &str) -> Result<()> {
        let written = if self.json {
            let line = serde_json::to_string(value)?;
            writeln!(self.out, "{line}")
        } else {
            write!(self.out, "{text}")
        };
        written.map_err(|e| Error::Json(e.to_string()))
    }
}

fn load_automaton(path: &str) -> Result<LinearAutomaton> {
    match Document::read(DocumentKind::Automaton, path)?.payload {
        Payload::Automaton(a) => Ok(a),
        _ => unreachable!(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn write_automaton(ctx: &mut Ctx, a: &LinearAutomaton, out: &Output) -> Result<()> {
    let text = serialize_automaton(a);
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse {
            field: path.clone(),
            message: e.to_string(),
        }),
        None => ctx
            .out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Json(e.to_string())),
    }
}

fn report_lines(report: &ValidationReport) -> String {
    report
        .violations()
        .iter()
        .map(|v| format!("  {}: {}\n", v.state, v.description))
        .collect()
}

fn cmd_check(ctx: &mut Ctx, path: &str) -> Result<i32> {
    let a = load_automaton(path)?;
    let det = validate_deterministic(&a);
    let reachable = reachable_states(&a);
    let mut text = String::new();
    if !det.ok() {
        text.push_str("deterministic: no, complete: n/a\n");
        text.push_str(&report_lines(&det));
        let value =
            json!({"deterministic": det, "reachable": reachable.len(), "states": a.num_states()});
        ctx.emit(&value, &text)?;
        return Ok(1);
    }
    let strict = validate_complete(&a, false)?;
    let on_reachable = validate_complete(&a, true)?;
    text.push_str(&format!(
        "deterministic: yes, complete: {}\n",
        yes(strict.ok())
    ));
    text.push_str(&report_lines(&strict));
    text.push_str(&format!(
        "reachable: {} of {} states, complete on reachable states: {}\n",
        reachable.len(),
        a.num_states(),
        yes(on_reachable.ok())
    ));
    let mut stability = None;
    if on_reachable.ok() {
        // spot check of prefix stability on sampled words and middles
        let mut rng = StdRng::seed_from_u64(ctx.seed);
        let letters = a.alphabet().letters();
        let mut sample = |max: usize| -> String {
            let len = rng.gen_range(0..=max);
            (0..len)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect()
        };
        let mut violations = Vec::new();
        for _ in 0..32 {
            let w = sample(6);
            let middles: Vec<String> = (0..8).map(|_| sample(3)).collect();
            violations.extend(
                check_prefix_stability(&a, &w, &middles)?
                    .violations()
                    .iter()
                    .cloned(),
            );
        }
        let report = ValidationReport::from_violations(violations);
        text.push_str(&format!(
            "prefix stability (32 sampled words, seed {}): {}\n",
            ctx.seed,
            if report.ok() { "ok" } else { "FAILED" }
        ));
        text.push_str(&report_lines(&report));
        stability = Some(report);
    }
    let ok = on_reachable.ok() && stability.as_ref().is_some_and(|r| r.ok());
    let value = json!({
        "deterministic": det,
        "complete": strict,
        "complete_reachable": on_reachable,
        "reachable": reachable.len(),
        "states": a.num_states(),
        "prefix_stability": stability,
    });
    ctx.emit(&value, &text)?;
    Ok(verdict(ok))
}

fn cmd_run(ctx: &mut Ctx, path: &str, word: &str) -> Result<i32> {
    let a = load_automaton(path)?;
    let word = if word == "λ" { "" } else { word };
    let t = run(&a, word)?;
    ctx.emit(&TraceRecord::new(&a, &t), &t.display(&a).to_string())?;
    Ok(verdict(t.accepted))
}

#[derive(Serialize)]
struct ClassesRecord<'a> {
    bound: usize,
    mid_bound: Option<usize>,
    index: usize,
    classes: &'a [crate::border::PresuClass],
}

fn classes_text(bc: &PseudoBC) -> String {
    let mut text = String::new();
    for c in &bc.classes {
        let presus: Vec<String> = c.presus.iter().map(Presu::to_string).collect();
        text.push_str(&format!("C({}): {}\n", c.id, presus.join(" ")));
    }
    text.push_str(&format!("index: {}\n", index_of(bc)));
    text
}

fn cmd_classes(
    ctx: &mut Ctx,
    path: &str,
    bound: usize,
    merge: bool,
    mid_bound: usize,
) -> Result<i32> {
    let a = load_automaton(path)?;
    let mut bc = enumerate_pseudo_bc(&a, bound)?;
    if merge {
        bc = merge_classes(&bc, &a, mid_bound, ctx.budget)?;
    }
    let record = ClassesRecord {
        bound,
        mid_bound: bc.mid_bound,
        index: index_of(&bc),
        classes: &bc.classes,
    };
    ctx.emit(&record, &classes_text(&bc))?;
    Ok(0)
}

fn cmd_bc_check(ctx: &mut Ctx, path: &str, alphabet: &str, bound: usize) -> Result<i32> {
    let presus = match Document::read(DocumentKind::Presus, path)?.payload {
        Payload::Presus(p) => p,
        _ => unreachable!(),
    };
    let alphabet = Alphabet::parse(alphabet)?;
    for p in &presus {
        alphabet.check_word(&p.word())?;
    }
    let set: BTreeSet<Presu> = presus.into_iter().collect();
    let report = check_bc(&set, &alphabet, bound);
    let mut text = format!("complete up to {bound}: {}\n", yes(report.complete_up_to));
    for (w, matches) in &report.missing_or_duplicated {
        let list: Vec<String> = matches.iter().map(Presu::to_string).collect();
        text.push_str(&format!(
            "  {}: {} presus {}\n",
            ShowWord(w),
            matches.len(),
            list.join(" ")
        ));
    }
    text.push_str(&format!(
        "crossing pairs: {}\n",
        report.crossing_pairs.len()
    ));
    for (p, q) in &report.crossing_pairs {
        text.push_str(&format!("  {p} {q}\n"));
    }
    ctx.emit(&report, &text)?;
    Ok(verdict(report.ok()))
}

fn cmd_build(ctx: &mut Ctx, path: &str, out: &Output) -> Result<i32> {
    let spec = match Document::read(DocumentKind::BcSpec, path)?.payload {
        Payload::BcSpec(s) => s,
        _ => unreachable!(),
    };
    let report = validate_bc_spec(&spec);
    if !report.ok() {
        return Err(Error::InvalidSpec(format!(
            "\n{}",
            report_lines(&report).trim_end()
        )));
    }
    let built = build_automaton(&spec)?;
    write_automaton(ctx, &built.automaton, out)?;
    Ok(0)
}

fn cmd_roundtrip(ctx: &mut Ctx, path: &str, bound: usize, mid_bound: usize) -> Result<i32> {
    let a = load_automaton(path)?;
    let spec = derive_bc_spec(&a, mid_bound, ctx.budget)?;
    let report = roundtrip_check(&a, bound, mid_bound, ctx.budget)?;
    let text = format!(
        "classes: {}, rebuilt states: {}\nroundtrip up to {bound}: {}\n{}",
        spec.classes.len(),
        build_automaton(&spec)?.automaton.num_states(),
        if report.ok() { "ok" } else { "FAILED" },
        report_lines(&report)
    );
    ctx.emit(&report, &text)?;
    Ok(verdict(report.ok()))
}

fn load_words(source: &str, alphabet: &Alphabet, budget: Budget) -> Result<Vec<String>> {
    if let Some(n) = source.strip_prefix("gen:") {
        let n: usize = n.parse().map_err(|_| Error::Parse {
            field: "words-from".into(),
            message: format!("\"{n}\" is not a length"),
        })?;
        return crate::oracle::enumerate_words(alphabet, n, budget);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Parse {
        field: source.to_string(),
        message: e.to_string(),
    })?;
    Ok(text
        .lines()
        .map(|l| {
            if l.trim() == "λ" {
                String::new()
            } else {
                l.trim().to_string()
            }
        })
        .collect())
}

fn cmd_schedule(ctx: &mut Ctx, path: &str, rate: Rate, source: &str) -> Result<i32> {
    let a = load_automaton(path)?;
    let words = load_words(source, a.alphabet(), ctx.budget)?;
    let violations = check_conformance(&a, rate, &words)?;
    let mut text = format!(
        "rate {rate}: {} of {} words deviate\n",
        violations.len(),
        words.len()
    );
    for v in &violations {
        text.push_str(&format!(
            "  {}: step {} expected {} got {}\n",
            ShowWord(&v.word),
            v.step,
            v.expected,
            v.actual
        ));
    }
    ctx.emit(&violations, &text)?;
    Ok(verdict(violations.is_empty()))
}

fn cmd_equiv(ctx: &mut Ctx, a: &str, b: &str, maxlen: usize) -> Result<i32> {
    let a = load_automaton(a)?;
    let b = load_automaton(b)?;
    let v = equiv_bounded(&a, &b, maxlen, ctx.budget)?;
    let text = match &v.witness {
        None => format!("equivalent up to length {maxlen}\n"),
        Some(w) => format!("differ on {}\n", ShowWord(w)),
    };
    ctx.emit(&v, &text)?;
    Ok(verdict(v.equivalent_up_to))
}

fn cmd_probe(
    ctx: &mut Ctx,
    kind: BuiltinKind,
    stubs: &[String],
    max_power: usize,
    mid_bound: usize,
    alphabet: Option<&str>,
) -> Result<i32> {
    let lang = match alphabet {
        Some(text) => Builtin::with_alphabet(kind, Alphabet::parse(text)?)?,
        None => Builtin::new(kind),
    };
    let cells = probe_partition(
        &lang, &stubs[0], &stubs[1], max_power, mid_bound, ctx.budget,
    )?;
    let mut text = format!("cells: {}\n", cells.len());
    for cell in &cells {
        let list: Vec<String> = cell.iter().map(Presu::to_string).collect();
        text.push_str(&format!("  {}\n", list.join(" ")));
    }
    let value = json!({"lang": kind.name(), "B": max_power, "mid_bound": mid_bound, "cells": cells.len(), "partition": cells});
    ctx.emit(&value, &text)?;
    Ok(0)
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32> {
    match command {
        Command::Check { automaton } => cmd_check(ctx, &automaton),
        Command::Run { automaton, word } => cmd_run(ctx, &automaton, &word),
        Command::Complete { automaton, out } => {
            let a = complete_with_sink(&load_automaton(&automaton)?)?;
            write_automaton(ctx, &a, &out)?;
            Ok(0)
        }
        Command::Complement { automaton, out } => {
            let a = complement(&load_automaton(&automaton)?)?;
            write_automaton(ctx, &a, &out)?;
            Ok(0)
        }
        Command::Classes {
            automaton,
            bound,
            merge,
            mid_bound,
        } => cmd_classes(ctx, &automaton, bound, merge, mid_bound),
        Command::BcCheck {
            presus,
            alphabet,
            bound,
        } => cmd_bc_check(ctx, &presus, &alphabet, bound),
        Command::Build { spec, out } => cmd_build(ctx, &spec, &out),
        Command::Roundtrip {
            automaton,
            bound,
            mid_bound,
        } => cmd_roundtrip(ctx, &automaton, bound, mid_bound),
        Command::Schedule {
            automaton,
            rate,
            words_from,
        } => cmd_schedule(ctx, &automaton, rate, &words_from),
        Command::Equiv { a, b, maxlen } => cmd_equiv(ctx, &a, &b, maxlen),
        Command::Probe {
            lang,
            stubs,
            max_power,
            mid_bound,
            alphabet,
        } => cmd_probe(ctx, lang, &stubs, max_power, mid_bound, alphabet.as_deref()),
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        budget: Budget(cli.budget),
        seed: cli.seed,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
