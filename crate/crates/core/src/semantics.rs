//! Transfer-mode firing semantics, firing sequences and bounded state-space
//! construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{self, Compiled};
use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, ObjectType, OcNet};

/// `α`: how many tokens each variable-arc type transfers in one firing.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransferMode(BTreeMap<ObjectType, u64>);

impl TransferMode {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ObjectType, u64)>) -> Self {
        TransferMode(pairs.into_iter().collect())
    }

    pub fn get(&self, ty: &ObjectType) -> Option<u64> {
        self.0.get(ty).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObjectType, u64)> {
        self.0.iter().map(|(t, n)| (t, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<ObjectType> {
        self.0.keys().cloned().collect()
    }
}

/// One step of a firing sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiringEvent {
    pub transition: String,
    #[serde(default, skip_serializing_if = "TransferMode::is_empty")]
    pub mode: TransferMode,
}

impl FiringEvent {
    pub fn plain(t: impl Into<String>) -> Self {
        FiringEvent {
            transition: t.into(),
            mode: TransferMode::empty(),
        }
    }

    pub fn with_mode(t: impl Into<String>, mode: impl IntoIterator<Item = (&'static str, u64)>) -> Self {
        FiringEvent {
            transition: t.into(),
            mode: TransferMode::from_pairs(mode.into_iter().map(|(d, n)| (ObjectType::new(d), n))),
        }
    }
}

/// Script syntax: `t1` or `t1[α:d=2]`; several types separated by commas,
/// `alpha:` accepted for `α:`.
impl fmt::Display for FiringEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.transition)?;
        if !self.mode.is_empty() {
            f.write_str("[α:")?;
            for (i, (d, n)) in self.mode.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{d}={n}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl FromStr for FiringEvent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Precondition(format!("malformed firing event `{s}`"));
        let Some(open) = s.find('[') else {
            if s.is_empty() || s.contains(']') {
                return Err(bad());
            }
            return Ok(FiringEvent::plain(s));
        };
        let body = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let body = body
            .strip_prefix("α:")
            .or_else(|| body.strip_prefix("alpha:"))
            .ok_or_else(bad)?;
        let mut mode = BTreeMap::new();
        for part in body.split(',') {
            let (d, n) = part.split_once('=').ok_or_else(bad)?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            mode.insert(ObjectType::new(d.trim()), n);
        }
        let t = s[..open].trim();
        if t.is_empty() {
            return Err(bad());
        }
        Ok(FiringEvent {
            transition: t.to_owned(),
            mode: TransferMode(mode),
        })
    }
}

/// Parses a whitespace- or comma-separated event script. Commas inside
/// brackets belong to the mode.
pub fn parse_script(text: &str) -> Result<Vec<FiringEvent>> {
    let mut events = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if depth == 0 && (c.is_whitespace() || c == ',' || c == ';') => {
                if !cur.is_empty() {
                    events.push(cur.parse()?);
                    cur.clear();
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        events.push(cur.parse()?);
    }
    Ok(events)
}

/// Limits that keep a state-space exploration finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationBounds {
    pub max_states: usize,
    /// Successors with more tokens than this in any place are cut.
    pub place_cap: u64,
    /// Largest transfer amount enumerated per type.
    pub max_mode: u64,
}

impl Default for ExplorationBounds {
    fn default() -> Self {
        ExplorationBounds {
            max_states: 100_000,
            place_cap: 16,
            max_mode: 4,
        }
    }
}

impl ExplorationBounds {
    pub fn new(max_states: usize, place_cap: u64, max_mode: u64) -> Result<Self> {
        if max_states == 0 || place_cap == 0 || max_mode == 0 {
            return Err(Error::Precondition("exploration bounds must be positive".into()));
        }
        Ok(ExplorationBounds {
            max_states,
            place_cap,
            max_mode,
        })
    }
}

/// A finite labelled transition system induced by a marked net, possibly
/// cut short by exploration bounds. States are kept in lexicographic order
/// of their markings; edges are sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lts {
    pub states: Vec<Marking>,
    pub initial: usize,
    pub edges: Vec<(usize, ActivityLabel, usize)>,
    pub truncated: bool,
}

impl Lts {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.states[self.initial]
    }

    /// Builds an LTS directly from state count and edges (markings left empty).
    pub fn from_edges(num_states: usize, initial: usize, edges: impl IntoIterator<Item = (usize, ActivityLabel, usize)>) -> Lts {
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort();
        edges.dedup();
        Lts {
            states: vec![Marking::new(); num_states],
            initial,
            edges,
            truncated: false,
        }
    }
}

/// All transfer modes under which `t` is enabled at `m`, each type's amount
/// ranging over `1..=min(available, max_mode)`.
pub fn enabled_modes(net: &OcNet, m: &Marking, t: &str, bounds: &ExplorationBounds) -> Result<Vec<TransferMode>> {
    if net.transition(t).is_none() {
        return Err(Error::not_found("transition", t));
    }
    let nat_ok = net.inputs_of(t).all(|(p, w)| match w {
        ArcWeight::Nat(k) => u64::from(k.get()) <= m.get(p),
        ArcWeight::Var => true,
    });
    if !nat_ok {
        return Ok(vec![]);
    }
    let mut modes = vec![TransferMode::empty()];
    for ty in net.variable_types(t) {
        let Some((input, _)) = net.variable_pair(t, &ty) else {
            return Err(Error::Precondition(format!("unpaired variable arcs on `{t}`")));
        };
        let hi = m.get(input).min(bounds.max_mode);
        let mut next = Vec::new();
        for mode in &modes {
            for a in 1..=hi {
                let mut m2 = mode.clone();
                m2.0.insert(ty.clone(), a);
                next.push(m2);
            }
        }
        modes = next;
    }
    Ok(modes)
}

/// Whether `ev` may fire at `m`: every ordinary input arc is covered, the
/// mode's domain is exactly the transition's variable types, and each
/// variable input holds at least `α(d) ≥ 1` tokens.
pub fn is_enabled(net: &OcNet, m: &Marking, ev: &FiringEvent) -> Result<bool> {
    let t = ev.transition.as_str();
    if net.transition(t).is_none() {
        return Err(Error::not_found("transition", t));
    }
    if ev.mode.domain() != net.variable_types(t) {
        return Ok(false);
    }
    for (p, w) in net.inputs_of(t) {
        let need = match w {
            ArcWeight::Nat(k) => u64::from(k.get()),
            ArcWeight::Var => {
                let a = ev.mode.get(&net.place(p).expect("arc endpoint").ty).unwrap_or(0);
                if a == 0 {
                    return Ok(false);
                }
                a
            }
        };
        if m.get(p) < need {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fires one event.
pub fn fire(net: &OcNet, m: &Marking, ev: &FiringEvent) -> Result<Marking> {
    if !is_enabled(net, m, ev)? {
        return Err(Error::NotEnabled {
            transition: ev.transition.clone(),
            step: None,
        });
    }
    let t = ev.transition.as_str();
    let amount = |p: &str, w: ArcWeight| match w {
        ArcWeight::Nat(k) => u64::from(k.get()),
        ArcWeight::Var => ev.mode.get(&net.place(p).expect("arc endpoint").ty).unwrap_or(0),
    };
    let mut out = m.clone();
    for (p, w) in net.inputs_of(t) {
        let cur = out.get(p);
        out.set(p, cur - amount(p, w));
    }
    for (p, w) in net.outputs_of(t) {
        out.add(p, amount(p, w));
    }
    Ok(out)
}

/// Fires a sequence, reporting the index of the first event that is not enabled.
pub fn run(net: &OcNet, m0: &Marking, script: &[FiringEvent]) -> Result<Marking> {
    let mut m = m0.clone();
    for (i, ev) in script.iter().enumerate() {
        m = match fire(net, &m, ev) {
            Ok(next) => next,
            Err(Error::NotEnabled { transition, .. }) => {
                return Err(Error::NotEnabled {
                    transition,
                    step: Some(i),
                })
            }
            Err(e) => return Err(e),
        };
    }
    Ok(m)
}

/// Breadth-first exploration of the reachable markings within `bounds`.
pub fn explore(net: &OcNet, m0: &Marking, bounds: &ExplorationBounds) -> Result<Lts> {
    let violations = net.validate();
    if !violations.is_empty() {
        return Err(Error::Precondition(format!("invalid OC-net: {}", violations[0])));
    }
    for p in m0.support() {
        if net.place(p).is_none() {
            return Err(Error::not_found("place", p));
        }
    }
    let c = Compiled::new(net);
    let g = engine::explore(
        &c,
        &[c.state(m0)],
        bounds,
        &engine::Options {
            keep_edges: true,
            ..Default::default()
        },
    );
    Ok(graph_to_lts(&c, &g))
}

pub(crate) fn graph_to_lts(c: &Compiled, g: &engine::Graph) -> Lts {
    let markings: Vec<Marking> = g.states.iter().map(|s| c.marking(s)).collect();
    let mut order: Vec<usize> = (0..g.states.len()).collect();
    order.sort_by(|a, b| markings[*a].cmp(&markings[*b]));
    let mut rank = vec![0usize; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let states = order.iter().map(|&i| markings[i].clone()).collect();
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .map(|e| (rank[e.from], c.trans[e.trans].label.clone(), rank[e.to]))
        .collect();
    edges.sort();
    edges.dedup();
    Lts {
        states,
        initial: g.root.first().map(|&r| rank[r]).unwrap_or(0),
        edges,
        truncated: g.truncated,
    }
}
