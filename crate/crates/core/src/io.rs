//! JSON documents: automata, presu lists and BC specs.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::automaton::{Head, LinearAutomaton, Transition};
use crate::error::{Error, Result};
use crate::synth::{BCSpec, SideRef};
use crate::word::{Alphabet, Presu};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<RawTransition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    from: String,
    head: String,
    letter: String,
    to: String,
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn single_letter(field: &str, s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(field_err(field, format!("\"{s}\" is not a single letter"))),
    }
}

pub fn parse_automaton(text: &str) -> Result<LinearAutomaton> {
    let raw: RawAutomaton = serde_json::from_str(text)?;
    let mut letters = Vec::with_capacity(raw.alphabet.len());
    for (i, s) in raw.alphabet.iter().enumerate() {
        letters.push(single_letter(&format!("alphabet[{i}]"), s)?);
    }
    let alphabet = Alphabet::new(letters).map_err(|e| field_err("alphabet", e.to_string()))?;
    for (i, s) in raw.states.iter().enumerate() {
        if raw.states[..i].contains(s) {
            return Err(field_err(
                format!("states[{i}]"),
                format!("duplicate state \"{s}\""),
            ));
        }
    }
    let known = |field: String, s: &str| -> Result<()> {
        if raw.states.iter().any(|x| x == s) {
            Ok(())
        } else {
            Err(field_err(field, format!("unknown state \"{s}\"")))
        }
    };
    known("initial".into(), &raw.initial)?;
    for (i, s) in raw.accepting.iter().enumerate() {
        known(format!("accepting[{i}]"), s)?;
    }
    let mut transitions = Vec::with_capacity(raw.transitions.len());
    for (i, t) in raw.transitions.iter().enumerate() {
        known(format!("transitions[{i}].from"), &t.from)?;
        known(format!("transitions[{i}].to"), &t.to)?;
        let head = Head::from_tag(&t.head).ok_or_else(|| {
            field_err(
                format!("transitions[{i}].head"),
                format!("expected \"L\" or \"R\", got \"{}\"", t.head),
            )
        })?;
        let field = format!("transitions[{i}].letter");
        let letter = single_letter(&field, &t.letter)?;
        if !alphabet.contains(letter) {
            return Err(field_err(
                field,
                format!("letter '{letter}' is not in the alphabet"),
            ));
        }
        let tr = Transition::new(&t.from, head, letter, &t.to);
        if transitions.contains(&tr) {
            return Err(field_err(
                format!("transitions[{i}]"),
                "duplicate transition",
            ));
        }
        transitions.push(tr);
    }
    LinearAutomaton::new(
        alphabet,
        raw.states,
        &raw.initial,
        &raw.accepting,
        &transitions,
    )
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn list(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().map(|s| quoted(&s)).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical text: states in declaration order, transitions sorted by
/// (from, head, letter), one transition per line.
pub fn serialize_automaton(a: &LinearAutomaton) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"alphabet\": {},",
        list(a.alphabet().letters().iter().map(|c| c.to_string()))
    );
    let _ = writeln!(
        out,
        "  \"states\": {},",
        list(a.state_names().iter().cloned())
    );
    let _ = writeln!(out, "  \"initial\": {},", quoted(a.name(a.initial())));
    let _ = writeln!(out, "  \"accepting\": {},", list(a.accepting_names()));
    let transitions = a.transitions();
    if transitions.is_empty() {
        out.push_str("  \"transitions\": []\n");
    } else {
        out.push_str("  \"transitions\": [\n");
        let lines: Vec<String> = transitions
            .iter()
            .map(|t| {
                format!(
                    "    {{\"from\": {}, \"head\": \"{}\", \"letter\": {}, \"to\": {}}}",
                    quoted(&t.from),
                    t.head,
                    quoted(&t.letter.to_string()),
                    quoted(&t.to)
                )
            })
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ]\n");
    }
    out.push_str("}\n");
    out
}

pub fn parse_presus(text: &str) -> Result<Vec<Presu>> {
    Ok(serde_json::from_str(text)?)
}

pub fn serialize_presus(presus: &[Presu]) -> String {
    let lines: Vec<String> = presus
        .iter()
        .map(|p| {
            format!(
                "  {{\"prefix\": {}, \"suffix\": {}}}",
                quoted(&p.prefix),
                quoted(&p.suffix)
            )
        })
        .collect();
    if lines.is_empty() {
        "[]\n".to_string()
    } else {
        format!("[\n{}\n]\n", lines.join(",\n"))
    }
}

pub fn parse_bc_spec(text: &str) -> Result<BCSpec> {
    Ok(serde_json::from_str(text)?)
}

fn side_ref(r: &SideRef) -> String {
    format!("[{}, \"{}\"]", quoted(&r.0), r.1)
}

/// Canonical text with one class per line.
pub fn serialize_bc_spec(s: &BCSpec) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"alphabet\": {},",
        list(s.alphabet.letters().iter().map(|c| c.to_string()))
    );
    let _ = writeln!(out, "  \"initial\": {},", side_ref(&s.initial));
    let classes: Vec<String> = s
        .classes
        .iter()
        .map(|c| {
            let mut line = format!(
                "    {{\"id\": {}, \"accepting\": {}",
                quoted(&c.id),
                c.accepting
            );
            for (name, side) in [("left", &c.left), ("right", &c.right)] {
                if let Some(map) = side {
                    let entries: Vec<String> = s
                        .alphabet
                        .letters()
                        .iter()
                        .filter_map(|l| map.get(l).map(|r| (l, r)))
                        .chain(map.iter().filter(|(l, _)| !s.alphabet.contains(**l)))
                        .map(|(l, r)| format!("{}: {}", quoted(&l.to_string()), side_ref(r)))
                        .collect();
                    let _ = write!(line, ", \"{name}\": {{{}}}", entries.join(", "));
                }
            }
            line.push('}');
            line
        })
        .collect();
    if classes.is_empty() {
        out.push_str("  \"classes\": []\n");
    } else {
        let _ = write!(out, "  \"classes\": [\n{}\n  ]\n", classes.join(",\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Automaton,
    Presus,
    BcSpec,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Automaton(LinearAutomaton),
    Presus(Vec<Presu>),
    BcSpec(BCSpec),
}

/// A parsed input file. `source` is the path, or `-` for stdin.
#[derive(Clone, Debug)]
pub struct Document {
    pub kind: DocumentKind,
    pub payload: Payload,
    pub source: String,
}

impl Document {
    pub fn parse(kind: DocumentKind, text: &str, source: &str) -> Result<Self> {
        let payload = match kind {
            DocumentKind::Automaton => Payload::Automaton(parse_automaton(text)?),
            DocumentKind::Presus => Payload::Presus(parse_presus(text)?),
            DocumentKind::BcSpec => Payload::BcSpec(parse_bc_spec(text)?),
        };
        Ok(Document {
            kind,
            payload,
            source: source.to_string(),
        })
    }

    pub fn read(kind: DocumentKind, path: &str) -> Result<Self> {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(Path::new(path))
        }
        .map_err(|e| field_err(path, e.to_string()))?;
        Self::parse(kind, &text, path).map_err(|e| field_err(path, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::validate_deterministic;
    use crate::fixtures;

    const TINY: &str = r#"{"alphabet": ["a","b"], "states": ["q0","q1"], "initial": "q0",
        "accepting": ["q0"], "transitions": [{"from": "q0", "head": "L", "letter": "a", "to": "q1"}]}"#;

    #[test]
    fn parses_pal3_fixture() {
        let a = parse_automaton(fixtures::PAL3_JSON).unwrap();
        assert_eq!(a.num_states(), 5);
        assert!(validate_deterministic(&a).ok());
    }

    #[test]
    fn bad_head_names_the_transition() {
        let text = TINY.replace("\"L\"", "\"X\"");
        let err = parse_automaton(&text).unwrap_err();
        assert_eq!(
            err.to_string(),
            "transitions[0].head: expected \"L\" or \"R\", got \"X\""
        );
    }

    #[test]
    fn undeclared_target_state() {
        let text = TINY.replace("\"to\": \"q1\"", "\"to\": \"q9\"");
        let err = parse_automaton(&text).unwrap_err();
        assert_eq!(err.to_string(), "transitions[0].to: unknown state \"q9\"");
    }

    #[test]
    fn other_diagnostics() {
        let err =
            parse_automaton(&TINY.replace("\"letter\": \"a\"", "\"letter\": \"z\"")).unwrap_err();
        assert!(err.to_string().starts_with("transitions[0].letter"));
        let err = parse_automaton(&TINY.replace("[\"q0\",\"q1\"]", "[\"q0\",\"q0\"]")).unwrap_err();
        assert!(err.to_string().starts_with("states[1]: duplicate state"));
        let err = parse_automaton(&TINY.replace("\"initial\"", "\"start\"")).unwrap_err();
        assert!(matches!(err, Error::Json(m) if m.contains("unknown field `start`")));
        let dup = TINY.replace(
            "\"to\": \"q1\"}]",
            "\"to\": \"q1\"}, {\"from\": \"q0\", \"head\": \"L\", \"letter\": \"a\", \"to\": \"q1\"}]",
        );
        assert_eq!(
            parse_automaton(&dup).unwrap_err().to_string(),
            "transitions[1]: duplicate transition"
        );
        let err = parse_automaton("{").unwrap_err();
        assert!(matches!(err, Error::Json(m) if m.contains("line 1")));
    }

    #[test]
    fn canonical_fixtures_roundtrip() {
        for text in [
            fixtures::PAL3_JSON,
            fixtures::THREE_RATE_JSON,
            fixtures::EVENPAL_JSON,
        ] {
            assert_eq!(serialize_automaton(&parse_automaton(text).unwrap()), text);
        }
    }

    #[test]
    fn transitions_are_sorted_on_output() {
        let text = r#"{"alphabet": ["b","a"], "states": ["x","y"], "initial": "x", "accepting": [],
            "transitions": [{"from": "y", "head": "R", "letter": "a", "to": "x"},
                            {"from": "x", "head": "L", "letter": "a", "to": "y"},
                            {"from": "x", "head": "L", "letter": "b", "to": "x"}]}"#;
        let out = serialize_automaton(&parse_automaton(text).unwrap());
        assert_eq!(
            out,
            "{\n  \"alphabet\": [\"b\", \"a\"],\n  \"states\": [\"x\", \"y\"],\n  \"initial\": \"x\",\n  \"accepting\": [],\n  \"transitions\": [\n    {\"from\": \"x\", \"head\": \"L\", \"letter\": \"b\", \"to\": \"x\"},\n    {\"from\": \"x\", \"head\": \"L\", \"letter\": \"a\", \"to\": \"y\"},\n    {\"from\": \"y\", \"head\": \"R\", \"letter\": \"a\", \"to\": \"x\"}\n  ]\n}\n"
        );
    }

    #[test]
    fn presus_documents() {
        let ps = parse_presus(r#"[{"prefix": "a", "suffix": ""}, {"prefix": "", "suffix": "ba"}]"#)
            .unwrap();
        assert_eq!(ps, [Presu::new("a", ""), Presu::new("", "ba")]);
        assert_eq!(parse_presus(&serialize_presus(&ps)).unwrap(), ps);
        assert!(parse_presus(r#"[{"prefix": "a"}]"#).is_err());
    }

    #[test]
    fn document_kinds() {
        let d = Document::parse(DocumentKind::BcSpec, fixtures::EVENPAL_SPEC_JSON, "mem").unwrap();
        assert!(matches!(d.payload, Payload::BcSpec(_)));
        assert_eq!(
            serialize_bc_spec(&parse_bc_spec(fixtures::EVENPAL_SPEC_JSON).unwrap()),
            fixtures::EVENPAL_SPEC_JSON
        );
    }
}
