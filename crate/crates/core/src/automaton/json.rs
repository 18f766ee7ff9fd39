//! The JSON automaton format.
//!
//! ```json
//! {"alphabet": ["a"],
//!  "states": [{"id": 0, "name": "qI", "accepting": false}],
//!  "initial": 0,
//!  "transitions": [{"from": 0, "to": 0, "symbol": "a", "guard": {"kind": "eq", "m": 0}, "reset": 0}],
//!  "k": 1}
//! ```
//!
//! `reset` is `0` when the clock is reset and `1` when it is kept. Guard kinds are `eq`,
//! `open` (`m<x<m+1`), `aboveK` (`m<x`, where `m` defaults to `k`) and `conj` with a list
//! of `atoms` `{"rel": "lt"|"gt"|"eq", "m": n}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Atom, Guard, OneClockTA, State, Transition};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol};

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    alphabet: Vec<String>,
    states: Vec<StateJson>,
    initial: usize,
    transitions: Vec<TransitionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    id: usize,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
struct TransitionJson {
    from: usize,
    to: usize,
    symbol: String,
    guard: GuardJson,
    reset: u8,
}

#[derive(Serialize, Deserialize)]
struct GuardJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atoms: Option<Vec<AtomJson>>,
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    rel: String,
    m: u32,
}

impl GuardJson {
    fn from_guard(g: &Guard) -> Self {
        let simple = |kind: &str, m: u32| GuardJson { kind: kind.into(), m: Some(m), atoms: None };
        match g {
            Guard::Eq(m) => simple("eq", *m),
            Guard::Open(m) => simple("open", *m),
            Guard::Above(m) => simple("aboveK", *m),
            Guard::Conj(atoms) => GuardJson {
                kind: "conj".into(),
                m: None,
                atoms: Some(
                    atoms
                        .iter()
                        .map(|a| {
                            let (rel, m) = match a {
                                Atom::Lt(m) => ("lt", *m),
                                Atom::Gt(m) => ("gt", *m),
                                Atom::Eq(m) => ("eq", *m),
                            };
                            AtomJson { rel: rel.into(), m }
                        })
                        .collect(),
                ),
            },
        }
    }

    fn to_guard(&self, k: Option<u32>) -> Result<Guard> {
        let need_m = || self.m.ok_or_else(|| Error::Parse(format!("guard `{}` needs `m`", self.kind)));
        match self.kind.as_str() {
            "eq" => Ok(Guard::Eq(need_m()?)),
            "open" => Ok(Guard::Open(need_m()?)),
            "aboveK" => self
                .m
                .or(k)
                .map(Guard::Above)
                .ok_or_else(|| Error::Parse("guard `aboveK` needs `m` or a top-level `k`".into())),
            "conj" => self
                .atoms
                .as_deref()
                .unwrap_or_default()
                .iter()
                .map(|a| match a.rel.as_str() {
                    "lt" => Ok(Atom::Lt(a.m)),
                    "gt" => Ok(Atom::Gt(a.m)),
                    "eq" => Ok(Atom::Eq(a.m)),
                    other => Err(Error::Parse(format!("unknown atom relation `{other}`"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(Guard::Conj),
            other => Err(Error::Parse(format!("unknown guard kind `{other}`"))),
        }
    }
}

pub fn from_json(text: &str) -> Result<OneClockTA> {
    let raw: AutomatonJson = serde_json::from_str(text)?;
    let mut ids = HashMap::new();
    let mut states = Vec::with_capacity(raw.states.len());
    for (i, s) in raw.states.iter().enumerate() {
        if ids.insert(s.id, i).is_some() {
            return Err(Error::Parse(format!("duplicate state id {}", s.id)));
        }
        states.push(State::new(s.name.clone().unwrap_or_else(|| s.id.to_string()), s.accepting));
    }
    let lookup =
        |id: usize, transition: usize| ids.get(&id).copied().ok_or(Error::DanglingState { transition, state: id });
    let initial = ids.get(&raw.initial).copied().ok_or(Error::BadInitial(raw.initial))?;
    let mut transitions = Vec::with_capacity(raw.transitions.len());
    for (i, t) in raw.transitions.iter().enumerate() {
        let reset = match t.reset {
            0 => true,
            1 => false,
            other => return Err(Error::Parse(format!("reset bit must be 0 or 1, got {other}"))),
        };
        transitions.push(Transition {
            source: lookup(t.from, i)?,
            target: lookup(t.to, i)?,
            symbol: Symbol::new(&t.symbol),
            guard: t.guard.to_guard(raw.k)?,
            reset,
        });
    }
    let alphabet = Alphabet::new(raw.alphabet.iter().map(|s| Symbol::new(s)));
    Ok(OneClockTA::new(alphabet, states, initial, transitions)?.with_k(raw.k))
}

pub fn to_json_value(a: &OneClockTA) -> serde_json::Value {
    let raw = AutomatonJson {
        alphabet: a.alphabet().iter().map(|s| s.to_string()).collect(),
        states: a
            .states()
            .iter()
            .enumerate()
            .map(|(id, s)| StateJson { id, name: Some(s.name.clone()), accepting: s.accepting })
            .collect(),
        initial: a.initial(),
        transitions: a
            .transitions()
            .iter()
            .map(|t| TransitionJson {
                from: t.source,
                to: t.target,
                symbol: t.symbol.to_string(),
                guard: GuardJson::from_guard(&t.guard),
                reset: if t.reset { 0 } else { 1 },
            })
            .collect(),
        k: a.k(),
    };
    serde_json::to_value(raw).expect("plain data serializes")
}

pub fn to_json(a: &OneClockTA) -> String {
    serde_json::to_string_pretty(&to_json_value(a)).expect("plain data serializes")
}
