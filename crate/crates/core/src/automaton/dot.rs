//! Graphviz export, plus a reader for the same subset.
//!
//! Edges are labelled `a, guard, r` where `r` is `0` for a reset and `1` otherwise. The
//! alphabet and constant are kept in leading `//` comments so that a file written by
//! [`to_dot`] reads back into the same automaton.

use std::fmt::Write;

use super::{OneClockTA, State, Transition};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn unquote(s: &str) -> Result<String> {
    let inner = s
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .ok_or_else(|| Error::Parse(format!("expected a quoted string, got `{s}`")))?;
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            out.extend(chars.next());
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn to_dot(a: &OneClockTA) -> String {
    let mut out = String::new();
    let symbols: Vec<&str> = a.alphabet().iter().map(Symbol::as_str).collect();
    writeln!(out, "// alphabet: {}", symbols.join(" ")).unwrap();
    if let Some(k) = a.k() {
        writeln!(out, "// k: {k}").unwrap();
    }
    out.push_str("digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n");
    for (q, s) in a.states().iter().enumerate() {
        let shape = if s.accepting { "doublecircle" } else { "circle" };
        writeln!(out, "  s{q} [label={}, shape={shape}];", quote(&s.name)).unwrap();
    }
    writeln!(out, "  start -> s{};", a.initial()).unwrap();
    for t in a.transitions() {
        let label = format!("{}, {}, {}", t.symbol, t.guard, if t.reset { 0 } else { 1 });
        writeln!(out, "  s{} -> s{} [label={}];", t.source, t.target, quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn node_id(s: &str) -> Result<usize> {
    s.trim()
        .strip_prefix('s')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Parse(format!("unknown node `{}`", s.trim())))
}

fn is_node(line: &str) -> bool {
    line.strip_prefix('s').is_some_and(|r| r.starts_with(|c: char| c.is_ascii_digit()))
}

fn attr<'a>(attrs: &'a str, key: &str) -> Option<&'a str> {
    let start = attrs.find(&format!("{key}="))? + key.len() + 1;
    let rest = &attrs[start..];
    if rest.starts_with('"') {
        let mut escaped = false;
        for (i, c) in rest.char_indices().skip(1) {
            match c {
                '\\' if !escaped => escaped = true,
                '"' if !escaped => return Some(&rest[..=i]),
                _ => escaped = false,
            }
        }
        None
    } else {
        rest.split([',', ']']).next()
    }
}

/// Reads a file produced by [`to_dot`].
pub fn from_dot(text: &str) -> Result<OneClockTA> {
    let mut alphabet = None;
    let mut k = None;
    let mut states: Vec<(usize, State)> = Vec::new();
    let mut initial = None;
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix("// alphabet:") {
            alphabet = Some(Alphabet::new(rest.split_whitespace().map(Symbol::new)));
        } else if let Some(rest) = line.strip_prefix("// k:") {
            k = Some(rest.trim().parse().map_err(|_| Error::Parse(format!("invalid constant `{}`", rest.trim())))?);
        } else if let Some(rest) = line.strip_prefix("start ->") {
            initial = Some(node_id(rest.trim_end_matches(';'))?);
        } else if is_node(line) && line.contains("->") {
            let (head, attrs) =
                line.split_once('[').ok_or_else(|| Error::Parse(format!("edge without label: `{line}`")))?;
            let (from, to) = head.split_once("->").expect("checked above");
            let label =
                unquote(attr(attrs, "label").ok_or_else(|| Error::Parse(format!("edge without label: `{line}`")))?)?;
            edges.push((node_id(from)?, node_id(to)?, label));
        } else if is_node(line) && line.contains('[') {
            let (head, attrs) = line.split_once('[').expect("checked above");
            let name =
                unquote(attr(attrs, "label").ok_or_else(|| Error::Parse(format!("node without label: `{line}`")))?)?;
            let accepting = attr(attrs, "shape") == Some("doublecircle");
            states.push((node_id(head)?, State::new(name, accepting)));
        }
    }
    states.sort_by_key(|(id, _)| *id);
    if states.iter().enumerate().any(|(i, (id, _))| i != *id) {
        return Err(Error::Parse("node ids must be s0, s1, ... without gaps".into()));
    }
    let mut transitions = Vec::with_capacity(edges.len());
    for (from, to, label) in edges {
        let parts: Vec<&str> = label.splitn(2, ", ").collect();
        let (symbol, rest) = match parts.as_slice() {
            [s, rest] => (*s, *rest),
            _ => return Err(Error::Parse(format!("invalid edge label `{label}`"))),
        };
        let (guard, reset) =
            rest.rsplit_once(", ").ok_or_else(|| Error::Parse(format!("invalid edge label `{label}`")))?;
        let reset = match reset.trim() {
            "0" => true,
            "1" => false,
            other => return Err(Error::Parse(format!("reset bit must be 0 or 1, got `{other}`"))),
        };
        transitions.push(Transition::new(from, to, symbol, guard.parse()?, reset));
    }
    let alphabet = alphabet.unwrap_or_else(|| Alphabet::new(transitions.iter().map(|t| t.symbol.clone())));
    let initial = initial.ok_or_else(|| Error::Parse("missing `start ->` edge".into()))?;
    Ok(OneClockTA::new(alphabet, states.into_iter().map(|(_, s)| s).collect(), initial, transitions)?.with_k(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Atom, Guard};

    #[test]
    fn round_trip() {
        let a = OneClockTA::new(
            Alphabet::new(["a", "b"]),
            vec![State::new("q\"I", false), State::new("q, 1", true)],
            0,
            vec![
                Transition::new(0, 1, "a", Guard::Eq(1), true),
                Transition::new(0, 0, "a", Guard::Conj(vec![Atom::Lt(1), Atom::Gt(0)]), false),
                Transition::new(1, 1, "b", Guard::Above(1), false),
                Transition::new(1, 0, "b", Guard::Open(0), false),
            ],
        )
        .unwrap()
        .with_k(Some(1));
        let dot = to_dot(&a);
        assert!(dot.contains("label=\"a, x=1, 0\""));
        assert_eq!(from_dot(&dot).unwrap(), a);
    }
}
