//! Text formats for automata and intersection instances.
//!
//! Automaton file:
//!
//! ```text
//! # comment
//! states: 2
//! alphabet: a b
//! initial: 0          (optional)
//! accepting: 1        (optional, needs initial)
//! trans: 0 a 1
//! trans: 1 a 1
//! ```
//!
//! Instance file: an `alphabet:` line, then one `machine:` block per
//! acceptor, each holding `states`, `initial`, `accepting` and `trans`
//! lines. Every machine must be complete.
//!
//! Comments run from a `#` at the start of a whitespace-separated token to
//! the end of the line. Serialization is canonical: header lines in the
//! order above, then transitions sorted by source state and letter index.

use std::collections::HashSet;
use std::fmt::Write;

use pdfa_core::reductions::IntersectionInstance;
use pdfa_core::{Acceptor, PartialDfa, State, StateSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
    #[error(transparent)]
    Automaton(#[from] pdfa_core::Error),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax {
        line,
        message: message.into(),
    })
}

/// Contents of an automaton file: a partial automaton, optionally with an
/// initial state and accepting set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonFile {
    pub dfa: PartialDfa,
    pub initial: Option<State>,
    pub accepting: Option<StateSet>,
}

impl AutomatonFile {
    pub fn plain(dfa: PartialDfa) -> Self {
        AutomatonFile {
            dfa,
            initial: None,
            accepting: None,
        }
    }

    pub fn from_acceptor(acc: &Acceptor) -> Self {
        AutomatonFile {
            dfa: acc.dfa().clone(),
            initial: acc.initial(),
            accepting: Some(acc.accepting().clone()),
        }
    }

    /// The acceptor, if the file declares an initial state.
    pub fn acceptor(&self) -> Option<Acceptor> {
        let initial = self.initial?;
        let accepting = self
            .accepting
            .clone()
            .unwrap_or_else(|| StateSet::empty(self.dfa.state_count()));
        Acceptor::new(self.dfa.clone(), initial, accepting).ok()
    }
}

/// One meaningful line: 1-based line number, key, value tokens.
struct Line<'a> {
    number: usize,
    key: &'a str,
    values: Vec<&'a str>,
}

fn lines(text: &str) -> Result<Vec<Line<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        let Some((&first, rest)) = tokens.split_first() else {
            continue;
        };
        let (key, values) = match first.split_once(':') {
            Some((key, "")) => (key, rest.to_vec()),
            Some((key, glued)) => (key, std::iter::once(glued).chain(rest.iter().copied()).collect()),
            None => return syntax(number, format!("expected `key: value`, found `{raw}`")),
        };
        out.push(Line { number, key, values });
    }
    Ok(out)
}

fn parse_index(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .or_else(|_| syntax(line, format!("`{token}` is not a state index")))
}

fn parse_indices(line: &Line) -> Result<Vec<usize>, FormatError> {
    line.values.iter().map(|t| parse_index(line.number, t)).collect()
}

fn single_index(line: &Line) -> Result<usize, FormatError> {
    match line.values.as_slice() {
        [one] => parse_index(line.number, one),
        _ => syntax(line.number, format!("`{}:` takes exactly one value", line.key)),
    }
}

/// Builder for one automaton body (shared by both file kinds).
#[derive(Default)]
struct Body {
    states: Option<usize>,
    alphabet: Option<Vec<String>>,
    initial: Option<(usize, State)>,
    accepting: Option<(usize, Vec<State>)>,
    transitions: Vec<(usize, State, String, State)>,
}

impl Body {
    fn take(&mut self, line: &Line, allow_alphabet: bool) -> Result<(), FormatError> {
        let duplicate = |line: &Line| syntax(line.number, format!("duplicate `{}:` line", line.key));
        match line.key {
            "states" => {
                if self.states.is_some() {
                    return duplicate(line);
                }
                self.states = Some(single_index(line)?);
            }
            "alphabet" if allow_alphabet => {
                if self.alphabet.is_some() {
                    return duplicate(line);
                }
                self.alphabet = Some(line.values.iter().map(|s| s.to_string()).collect());
            }
            "initial" => {
                if self.initial.is_some() {
                    return duplicate(line);
                }
                self.initial = Some((line.number, single_index(line)?));
            }
            "accepting" => {
                if self.accepting.is_some() {
                    return duplicate(line);
                }
                self.accepting = Some((line.number, parse_indices(line)?));
            }
            "trans" => match line.values.as_slice() {
                [src, letter, dst] => self.transitions.push((
                    line.number,
                    parse_index(line.number, src)?,
                    letter.to_string(),
                    parse_index(line.number, dst)?,
                )),
                _ => return syntax(line.number, "expected `trans: <src> <letter> <dst>`"),
            },
            other => return syntax(line.number, format!("unknown key `{other}`")),
        }
        Ok(())
    }

    fn finish(self, shared_alphabet: Option<&[String]>, what: &str) -> Result<AutomatonFile, FormatError> {
        let n = self
            .states
            .ok_or_else(|| FormatError::Missing(format!("{what}: missing `states:` line")))?;
        let alphabet = match (self.alphabet, shared_alphabet) {
            (Some(a), _) => a,
            (None, Some(a)) => a.to_vec(),
            (None, None) => {
                return Err(FormatError::Missing(format!("{what}: missing `alphabet:` line")))
            }
        };
        let k = alphabet.len();
        let mut table = vec![None; n * k];
        let mut seen = HashSet::new();
        for (line, src, letter, dst) in self.transitions {
            let Some(a) = alphabet.iter().position(|x| *x == letter) else {
                return syntax(line, format!("unknown letter `{letter}`"));
            };
            if src >= n || dst >= n {
                return syntax(line, format!("state index out of range (states: {n})"));
            }
            if !seen.insert((src, a)) {
                return syntax(line, format!("duplicate transition from {src} on `{letter}`"));
            }
            table[src * k + a] = Some(dst);
        }
        let dfa = PartialDfa::from_table(n, alphabet, table)?;
        let initial = match self.initial {
            Some((line, s)) if s >= n => return syntax(line, format!("initial state {s} out of range")),
            Some((_, s)) => Some(s),
            None => None,
        };
        let accepting = match self.accepting {
            Some((line, _)) if initial.is_none() => {
                return syntax(line, "`accepting:` requires an `initial:` line")
            }
            Some((line, states)) => match StateSet::from_states(n, states) {
                Ok(set) => Some(set),
                Err(e) => return syntax(line, e.to_string()),
            },
            None => None,
        };
        Ok(AutomatonFile {
            dfa,
            initial,
            accepting,
        })
    }
}

pub fn parse_automaton(text: &str) -> Result<AutomatonFile, FormatError> {
    let mut body = Body::default();
    for line in lines(text)? {
        body.take(&line, true)?;
    }
    body.finish(None, "automaton")
}

pub fn serialize_automaton(file: &AutomatonFile) -> String {
    let mut out = String::new();
    write_body(&mut out, file, true);
    out
}

fn write_body(out: &mut String, file: &AutomatonFile, with_alphabet: bool) {
    let dfa = &file.dfa;
    writeln!(out, "states: {}", dfa.state_count()).unwrap();
    if with_alphabet {
        writeln!(out, "alphabet: {}", dfa.alphabet().join(" ")).unwrap();
    }
    if let Some(initial) = file.initial {
        writeln!(out, "initial: {initial}").unwrap();
    }
    if let Some(accepting) = &file.accepting {
        let list: Vec<String> = accepting.iter().map(|s| s.to_string()).collect();
        if list.is_empty() {
            writeln!(out, "accepting:").unwrap();
        } else {
            writeln!(out, "accepting: {}", list.join(" ")).unwrap();
        }
    }
    for (s, a, t) in dfa.transitions() {
        writeln!(out, "trans: {s} {} {t}", dfa.letter_name(a)).unwrap();
    }
}

pub fn parse_instance(text: &str) -> Result<IntersectionInstance, FormatError> {
    let all = lines(text)?;
    let mut iter = all.into_iter();
    let alphabet: Vec<String> = match iter.next() {
        Some(line) if line.key == "alphabet" => line.values.iter().map(|s| s.to_string()).collect(),
        Some(line) => return syntax(line.number, "instance files start with `alphabet:`"),
        None => return Err(FormatError::Missing("empty instance file".into())),
    };
    let mut bodies: Vec<Body> = Vec::new();
    for line in iter {
        if line.key == "machine" {
            if !line.values.is_empty() {
                return syntax(line.number, "`machine:` takes no value");
            }
            bodies.push(Body::default());
            continue;
        }
        let Some(body) = bodies.last_mut() else {
            return syntax(line.number, "expected `machine:` before machine contents");
        };
        body.take(&line, false)?;
    }
    let mut machines = Vec::new();
    for (i, body) in bodies.into_iter().enumerate() {
        let what = format!("machine {i}");
        let file = body.finish(Some(&alphabet), &what)?;
        let acc = file
            .acceptor()
            .ok_or_else(|| FormatError::Missing(format!("{what}: missing `initial:` line")))?;
        machines.push(acc);
    }
    Ok(IntersectionInstance::new(machines)?)
}

pub fn serialize_instance(inst: &IntersectionInstance) -> String {
    let mut out = String::new();
    writeln!(out, "alphabet: {}", inst.alphabet().join(" ")).unwrap();
    for m in inst.machines() {
        writeln!(out, "machine:").unwrap();
        write_body(&mut out, &AutomatonFile::from_acceptor(m), false);
    }
    out
}

/// Whether `text` looks like an instance file (has a `machine:` line).
pub fn is_instance_text(text: &str) -> bool {
    text.lines()
        .map(str::trim_start)
        .any(|l| l.starts_with("machine:"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const M2: &str = "# M2\nstates: 2\nalphabet: a\ninitial: 0\naccepting: 1\ntrans: 0 a 1\ntrans: 1 a 1 # loop\n";

    #[test]
    fn parses_and_serializes_canonically() {
        let file = parse_automaton(M2).unwrap();
        assert_eq!(file.dfa.state_count(), 2);
        assert_eq!(file.initial, Some(0));
        let text = serialize_automaton(&file);
        assert_eq!(
            text,
            "states: 2\nalphabet: a\ninitial: 0\naccepting: 1\ntrans: 0 a 1\ntrans: 1 a 1\n"
        );
        assert_eq!(parse_automaton(&text).unwrap(), file);
    }

    #[test]
    fn plain_and_empty_accepting() {
        let file = parse_automaton("states: 1\nalphabet: a b\n").unwrap();
        assert_eq!(file.initial, None);
        assert!(file.acceptor().is_none());
        let file = parse_automaton("states: 1\nalphabet: a\ninitial: 0\naccepting:\n").unwrap();
        assert_eq!(file.accepting, Some(StateSet::empty(1)));
        assert!(serialize_automaton(&file).contains("accepting:\n"));
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("states: 2\nalphabet: a\nfoo: 1\n", "unknown key"),
            ("states: 2\nalphabet: a\ntrans: 0 a 1\ntrans: 0 a 0\n", "duplicate transition"),
            ("states: 2\nalphabet: a\ntrans: 0 b 1\n", "unknown letter"),
            ("states: 2\nalphabet: a\ntrans: 0 a 2\n", "out of range"),
            ("states: 2\nalphabet: a\naccepting: 1\n", "requires an `initial:`"),
            ("states: 2\nstates: 2\nalphabet: a\n", "duplicate `states:`"),
            ("alphabet: a\n", "missing `states:`"),
            ("states: x\nalphabet: a\n", "not a state index"),
            ("states 2\n", "expected `key: value`"),
            ("states: 2\nalphabet: a a\n", "duplicate letter"),
        ];
        for (text, needle) in cases {
            let err = parse_automaton(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn instance_roundtrip_and_validation() {
        let text = "alphabet: a b\nmachine:\nstates: 1\ninitial: 0\naccepting: 0\ntrans: 0 a 0\ntrans: 0 b 0\n\
                    machine:\nstates: 2\ninitial: 0\naccepting: 1\ntrans: 0 a 1\ntrans: 0 b 0\ntrans: 1 a 1\ntrans: 1 b 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.machines().len(), 2);
        assert_eq!(serialize_instance(&inst), text);
        assert!(is_instance_text(text));

        let incomplete = "alphabet: a b\nmachine:\nstates: 1\ninitial: 0\ntrans: 0 a 0\n";
        assert!(parse_instance(incomplete).unwrap_err().to_string().contains("not complete"));
        let stray = "alphabet: a\nstates: 1\n";
        assert!(parse_instance(stray).is_err());
        let no_initial = "alphabet: a\nmachine:\nstates: 1\ntrans: 0 a 0\n";
        assert!(parse_instance(no_initial).unwrap_err().to_string().contains("initial"));
    }
}
