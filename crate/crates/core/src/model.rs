//! Static net structure: object types, places, transitions, flow, and the
//! structural checks for OC-nets, P/T nets and workflow nets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::num::NonZeroU32;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the empty object type introduced by variable-arc elimination.
pub const EMPTY_TYPE: &str = "ε";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectType(String);

impl ObjectType {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectType(name.into())
    }

    pub fn empty() -> Self {
        ObjectType(EMPTY_TYPE.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty_type(&self) -> bool {
        self.0 == EMPTY_TYPE
    }
}

impl fmt::Display for ObjectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectType {
    fn from(s: &str) -> Self {
        ObjectType::new(s)
    }
}

/// `ℓ(t)`: either a visible activity or τ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivityLabel {
    Visible(String),
    Silent,
}

impl ActivityLabel {
    pub fn visible(name: impl Into<String>) -> Self {
        ActivityLabel::Visible(name.into())
    }

    pub fn is_silent(&self) -> bool {
        matches!(self, ActivityLabel::Silent)
    }
}

impl fmt::Display for ActivityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActivityLabel::Visible(a) => f.write_str(a),
            ActivityLabel::Silent => f.write_str("τ"),
        }
    }
}

/// Arc multiplicity. A missing arc is the absence of a flow entry, never a
/// zero weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArcWeight {
    Nat(NonZeroU32),
    Var,
}

impl ArcWeight {
    pub const ONE: ArcWeight = ArcWeight::Nat(NonZeroU32::MIN);

    pub fn nat(k: u32) -> Option<ArcWeight> {
        NonZeroU32::new(k).map(ArcWeight::Nat)
    }

    pub fn is_var(self) -> bool {
        matches!(self, ArcWeight::Var)
    }

    /// The numeric weight of a `Nat` arc.
    pub fn as_nat(self) -> Option<u32> {
        match self {
            ArcWeight::Nat(k) => Some(k.get()),
            ArcWeight::Var => None,
        }
    }
}

impl fmt::Display for ArcWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcWeight::Nat(k) => write!(f, "{k}"),
            ArcWeight::Var => f.write_str("var"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Place {
    pub id: String,
    pub ty: ObjectType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub id: String,
    pub label: ActivityLabel,
}

/// An object-centric net. Ids of places and transitions share one namespace;
/// arcs always connect a place and a transition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OcNet {
    name: String,
    types: BTreeSet<ObjectType>,
    places: BTreeMap<String, Place>,
    transitions: BTreeMap<String, Transition>,
    /// (place, transition) → weight
    inputs: BTreeMap<(String, String), ArcWeight>,
    /// (transition, place) → weight
    outputs: BTreeMap<(String, String), ArcWeight>,
}

/// A structural violation of the OC-net constraints on variable arcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `F(t,p) = μ` without a same-typed variable input arc on `t`.
    UnpairedVariableOutput { transition: String, place: String },
    /// `F(p,t) = μ` without a same-typed variable output arc on `t`.
    UnpairedVariableInput { transition: String, place: String },
    /// More than one variable input or output arc of one type on `t`.
    AmbiguousVariablePair { transition: String, ty: ObjectType },
    /// A non-variable arc between `t` and a place whose type `t` transfers.
    MixedTypeAdjacency { transition: String, place: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnpairedVariableOutput { transition, place } => write!(
                f,
                "variable arc {transition} -> {place} has no same-typed variable input"
            ),
            Violation::UnpairedVariableInput { transition, place } => write!(
                f,
                "variable arc {place} -> {transition} has no same-typed variable output"
            ),
            Violation::AmbiguousVariablePair { transition, ty } => write!(
                f,
                "transition {transition} has several variable arcs of type {ty} in one direction"
            ),
            Violation::MixedTypeAdjacency { transition, place } => write!(
                f,
                "transition {transition} mixes variable and ordinary arcs of the type of {place}"
            ),
        }
    }
}

/// A violation of the object-centric workflow-net conditions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WfViolation {
    NoSource { ty: ObjectType },
    MultipleSources { ty: ObjectType, places: Vec<String> },
    NoSink { ty: ObjectType },
    MultipleSinks { ty: ObjectType, places: Vec<String> },
    SourceIsSink { ty: ObjectType, place: String },
    OffPath { ty: ObjectType, node: String },
    IsolatedTransition { transition: String },
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WfViolation::NoSource { ty } => write!(f, "type {ty}: no source place"),
            WfViolation::MultipleSources { ty, places } => {
                write!(f, "type {ty}: several source places {}", places.join(", "))
            }
            WfViolation::NoSink { ty } => write!(f, "type {ty}: no sink place"),
            WfViolation::MultipleSinks { ty, places } => {
                write!(f, "type {ty}: several sink places {}", places.join(", "))
            }
            WfViolation::SourceIsSink { ty, place } => {
                write!(f, "type {ty}: place {place} is both source and sink")
            }
            WfViolation::OffPath { ty, node } => {
                write!(f, "type {ty}: {node} is not on a path from source to sink")
            }
            WfViolation::IsolatedTransition { transition } => {
                write!(f, "transition {transition} has no arcs")
            }
        }
    }
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::Precondition("identifiers must be nonempty".into()));
    }
    Ok(())
}

impl OcNet {
    pub fn new(name: impl Into<String>) -> Self {
        OcNet {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Declares a user type. The empty type `ε` is rejected.
    pub fn add_type(&mut self, ty: impl Into<ObjectType>) -> Result<()> {
        let ty = ty.into();
        if ty.is_empty_type() {
            return Err(Error::ReservedType(ty.0));
        }
        self.insert_type(ty)
    }

    pub(crate) fn insert_type(&mut self, ty: ObjectType) -> Result<()> {
        check_id(ty.as_str())?;
        if !self.types.insert(ty.clone()) {
            return Err(Error::Conflict(ty.0));
        }
        Ok(())
    }

    pub(crate) fn ensure_type(&mut self, ty: ObjectType) {
        self.types.insert(ty);
    }

    pub fn add_place(&mut self, id: impl Into<String>, ty: impl Into<ObjectType>) -> Result<()> {
        let id = id.into();
        let ty = ty.into();
        check_id(&id)?;
        if !self.types.contains(&ty) {
            return Err(Error::not_found("type", ty.0));
        }
        if self.contains_node(&id) {
            return Err(Error::Conflict(id));
        }
        self.places.insert(id.clone(), Place { id, ty });
        Ok(())
    }

    pub fn add_transition(&mut self, id: impl Into<String>, label: ActivityLabel) -> Result<()> {
        let id = id.into();
        check_id(&id)?;
        if let ActivityLabel::Visible(a) = &label {
            if a.is_empty() {
                return Err(Error::Precondition("activity labels must be nonempty".into()));
            }
        }
        if self.contains_node(&id) {
            return Err(Error::Conflict(id));
        }
        self.transitions.insert(id.clone(), Transition { id, label });
        Ok(())
    }

    /// Adds an arc between a place and a transition, in either direction.
    pub fn add_arc(&mut self, from: &str, to: &str, weight: ArcWeight) -> Result<()> {
        let key = (from.to_owned(), to.to_owned());
        let map = match (self.places.contains_key(from), self.transitions.contains_key(to)) {
            (true, true) => &mut self.inputs,
            _ => match (self.transitions.contains_key(from), self.places.contains_key(to)) {
                (true, true) => &mut self.outputs,
                _ => {
                    let missing = if self.contains_node(from) { to } else { from };
                    if !self.contains_node(missing) {
                        return Err(Error::not_found("node", missing));
                    }
                    return Err(Error::Precondition(format!(
                        "arc {from} -> {to} must connect a place and a transition"
                    )));
                }
            },
        };
        if map.contains_key(&key) {
            return Err(Error::Conflict(format!("{from} -> {to}")));
        }
        map.insert(key, weight);
        Ok(())
    }

    /// Adds or overwrites an arc; `None` removes it. Endpoints must exist.
    pub(crate) fn put_arc(&mut self, from: &str, to: &str, weight: Option<ArcWeight>) {
        let key = (from.to_owned(), to.to_owned());
        let map = if self.places.contains_key(from) {
            debug_assert!(self.transitions.contains_key(to));
            &mut self.inputs
        } else {
            debug_assert!(self.transitions.contains_key(from) && self.places.contains_key(to));
            &mut self.outputs
        };
        match weight {
            Some(w) => {
                map.insert(key, w);
            }
            None => {
                map.remove(&key);
            }
        }
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.places.contains_key(id) || self.transitions.contains_key(id)
    }

    pub fn types(&self) -> impl Iterator<Item = &ObjectType> {
        self.types.iter()
    }

    pub fn has_type(&self, ty: &ObjectType) -> bool {
        self.types.contains(ty)
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.places.values()
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.transitions.values()
    }

    pub fn place(&self, id: &str) -> Option<&Place> {
        self.places.get(id)
    }

    pub fn transition(&self, id: &str) -> Option<&Transition> {
        self.transitions.get(id)
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn type_of(&self, place: &str) -> Option<&ObjectType> {
        self.places.get(place).map(|p| &p.ty)
    }

    pub fn places_of_type<'a>(&'a self, ty: &'a ObjectType) -> impl Iterator<Item = &'a Place> + 'a {
        self.places.values().filter(move |p| &p.ty == ty)
    }

    /// `F(x, y)` for any pair of nodes.
    pub fn arc(&self, from: &str, to: &str) -> Option<ArcWeight> {
        let key = (from.to_owned(), to.to_owned());
        self.inputs.get(&key).or_else(|| self.outputs.get(&key)).copied()
    }

    /// All arcs `(from, to, weight)`, place→transition arcs first.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str, ArcWeight)> {
        self.inputs
            .iter()
            .chain(self.outputs.iter())
            .map(|((a, b), w)| (a.as_str(), b.as_str(), *w))
    }

    /// Input arcs `(place, weight)` of transition `t`.
    pub fn inputs_of<'a>(&'a self, t: &'a str) -> impl Iterator<Item = (&'a str, ArcWeight)> + 'a {
        self.inputs
            .iter()
            .filter(move |((_, tt), _)| tt == t)
            .map(|((p, _), w)| (p.as_str(), *w))
    }

    /// Output arcs `(place, weight)` of transition `t`.
    pub fn outputs_of<'a>(&'a self, t: &'a str) -> impl Iterator<Item = (&'a str, ArcWeight)> + 'a {
        self.outputs
            .iter()
            .filter(move |((tt, _), _)| tt == t)
            .map(|((_, p), w)| (p.as_str(), *w))
    }

    /// `•x`: every node with an arc into `x`.
    pub fn preset(&self, node: &str) -> Result<BTreeSet<String>> {
        if self.transitions.contains_key(node) {
            Ok(self.inputs_of(node).map(|(p, _)| p.to_owned()).collect())
        } else if self.places.contains_key(node) {
            Ok(self
                .outputs
                .keys()
                .filter(|(_, p)| p == node)
                .map(|(t, _)| t.clone())
                .collect())
        } else {
            Err(Error::not_found("node", node))
        }
    }

    /// `x•`: every node with an arc from `x`.
    pub fn postset(&self, node: &str) -> Result<BTreeSet<String>> {
        if self.transitions.contains_key(node) {
            Ok(self.outputs_of(node).map(|(p, _)| p.to_owned()).collect())
        } else if self.places.contains_key(node) {
            Ok(self
                .inputs
                .keys()
                .filter(|(p, _)| p == node)
                .map(|(_, t)| t.clone())
                .collect())
        } else {
            Err(Error::not_found("node", node))
        }
    }

    pub fn has_variable_arcs(&self) -> bool {
        self.arcs().any(|(_, _, w)| w.is_var())
    }

    /// Types for which `t` carries variable arcs (the domain of its transfer mode).
    pub fn variable_types(&self, t: &str) -> BTreeSet<ObjectType> {
        self.inputs_of(t)
            .chain(self.outputs_of(t))
            .filter(|(_, w)| w.is_var())
            .filter_map(|(p, _)| self.type_of(p).cloned())
            .collect()
    }

    /// The `(input, output)` variable-arc pair of `t` for type `ty`, if the
    /// net is valid and `t` transfers `ty`.
    pub fn variable_pair(&self, t: &str, ty: &ObjectType) -> Option<(&str, &str)> {
        let typed_var = |p: &str, w: &ArcWeight| w.is_var() && self.type_of(p) == Some(ty);
        let input = self
            .inputs
            .iter()
            .find(|((p, tt), w)| tt == t && typed_var(p, w))
            .map(|((p, _), _)| p.as_str())?;
        let output = self
            .outputs
            .iter()
            .find(|((tt, p), w)| tt == t && typed_var(p, w))
            .map(|((_, p), _)| p.as_str())?;
        Some((input, output))
    }

    /// `T_μ`: transitions with at least one variable arc.
    pub fn variable_transitions(&self) -> BTreeSet<String> {
        self.arcs()
            .filter(|(_, _, w)| w.is_var())
            .map(|(a, b, _)| if self.transitions.contains_key(a) { a } else { b }.to_owned())
            .collect()
    }

    /// Every violated variable-arc constraint; empty means the net is a valid OC-net.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = BTreeSet::new();
        for t in self.transitions.keys() {
            // per type: (var inputs, var outputs, ordinary neighbours)
            let mut by_type: BTreeMap<&ObjectType, (Vec<&str>, Vec<&str>, Vec<&str>)> = BTreeMap::new();
            for (p, w) in self.inputs_of(t) {
                let e = by_type.entry(&self.places[p].ty).or_default();
                if w.is_var() {
                    e.0.push(p);
                } else {
                    e.2.push(p);
                }
            }
            for (p, w) in self.outputs_of(t) {
                let e = by_type.entry(&self.places[p].ty).or_default();
                if w.is_var() {
                    e.1.push(p);
                } else {
                    e.2.push(p);
                }
            }
            for (ty, (vin, vout, plain)) in by_type {
                if vin.is_empty() && vout.is_empty() {
                    continue;
                }
                if vin.len() > 1 || vout.len() > 1 {
                    out.insert(Violation::AmbiguousVariablePair {
                        transition: t.clone(),
                        ty: ty.clone(),
                    });
                }
                if vin.is_empty() {
                    for p in &vout {
                        out.insert(Violation::UnpairedVariableOutput {
                            transition: t.clone(),
                            place: (*p).to_owned(),
                        });
                    }
                }
                if vout.is_empty() {
                    for p in &vin {
                        out.insert(Violation::UnpairedVariableInput {
                            transition: t.clone(),
                            place: (*p).to_owned(),
                        });
                    }
                }
                for p in plain {
                    out.insert(Violation::MixedTypeAdjacency {
                        transition: t.clone(),
                        place: p.to_owned(),
                    });
                }
            }
        }
        out.into_iter().collect()
    }

    /// Checks the object-centric workflow-net conditions: per type, a unique
    /// source and sink and every node of the type's projection on a
    /// source-to-sink path; and no isolated transitions.
    ///
    /// A transition of the projection that only produces type-`d` tokens (it
    /// creates `d` objects together with other types) need not be reachable
    /// from the source; one that only consumes them need not reach the sink.
    pub fn is_oc_wf_net(&self) -> Result<Vec<WfViolation>> {
        let invalid = self.validate();
        if !invalid.is_empty() {
            return Err(Error::Precondition(format!(
                "not a valid OC-net: {}",
                invalid.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
            )));
        }
        let mut out = Vec::new();
        for ty in &self.types {
            out.extend(self.type_workflow_violations(ty, true).err().unwrap_or_default());
        }
        for t in self.transitions.keys() {
            if self.inputs_of(t).next().is_none() && self.outputs_of(t).next().is_none() {
                out.push(WfViolation::IsolatedTransition {
                    transition: t.clone(),
                });
            }
        }
        out.sort();
        Ok(out)
    }

    /// The `(in_d, out_d)` pair of type `ty`, when the type has exactly one
    /// source and one sink place.
    pub fn source_sink(&self, ty: &ObjectType) -> Option<(String, String)> {
        let sources = self.sources_of(ty);
        let sinks = self.sinks_of(ty);
        match (sources.as_slice(), sinks.as_slice()) {
            ([i], [o]) if i != o => Some((i.clone(), o.clone())),
            _ => None,
        }
    }

    /// Places of `ty` with an empty preset.
    pub fn sources_of(&self, ty: &ObjectType) -> Vec<String> {
        self.places_of_type(ty)
            .filter(|p| !self.outputs.keys().any(|(_, q)| *q == p.id))
            .map(|p| p.id.clone())
            .collect()
    }

    /// Places of `ty` with an empty postset.
    pub fn sinks_of(&self, ty: &ObjectType) -> Vec<String> {
        self.places_of_type(ty)
            .filter(|p| !self.inputs.keys().any(|(q, _)| *q == p.id))
            .map(|p| p.id.clone())
            .collect()
    }

    /// Workflow conditions on the `ty`-typed projection. With `relaxed`,
    /// object-creating and object-consuming transitions are exempt from one
    /// direction of the path condition (see [`OcNet::is_oc_wf_net`]).
    pub(crate) fn type_workflow_violations(
        &self,
        ty: &ObjectType,
        relaxed: bool,
    ) -> Result<(String, String), Vec<WfViolation>> {
        let mut out = Vec::new();
        let sources = self.sources_of(ty);
        let sinks = self.sinks_of(ty);
        match sources.len() {
            0 => out.push(WfViolation::NoSource { ty: ty.clone() }),
            1 => {}
            _ => out.push(WfViolation::MultipleSources {
                ty: ty.clone(),
                places: sources.clone(),
            }),
        }
        match sinks.len() {
            0 => out.push(WfViolation::NoSink { ty: ty.clone() }),
            1 => {}
            _ => out.push(WfViolation::MultipleSinks {
                ty: ty.clone(),
                places: sinks.clone(),
            }),
        }
        if !out.is_empty() {
            return Err(out);
        }
        let (src, snk) = (sources[0].clone(), sinks[0].clone());
        if src == snk {
            return Err(vec![WfViolation::SourceIsSink {
                ty: ty.clone(),
                place: src,
            }]);
        }

        // adjacency of the projection: type-`ty` places and their transitions
        let in_proj = |p: &str| self.places.get(p).is_some_and(|pl| &pl.ty == ty);
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        let mut pred: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        let mut proj_transitions: BTreeSet<&str> = BTreeSet::new();
        for (p, t) in self.inputs.keys() {
            if in_proj(p) {
                succ.entry(p).or_default().push(t);
                pred.entry(t).or_default().push(p);
                proj_transitions.insert(t);
            }
        }
        for (t, p) in self.outputs.keys() {
            if in_proj(p) {
                succ.entry(t).or_default().push(p);
                pred.entry(p).or_default().push(t);
                proj_transitions.insert(t);
            }
        }
        let reach = |start: &str, adj: &BTreeMap<&str, Vec<&str>>| -> BTreeSet<String> {
            let mut seen = BTreeSet::from([start.to_owned()]);
            let mut queue = VecDeque::from([start.to_owned()]);
            while let Some(x) = queue.pop_front() {
                for y in adj.get(x.as_str()).into_iter().flatten() {
                    if seen.insert((*y).to_owned()) {
                        queue.push_back((*y).to_owned());
                    }
                }
            }
            seen
        };
        let fwd = reach(&src, &succ);
        let bwd = reach(&snk, &pred);
        let mut nodes: Vec<&str> = self.places_of_type(ty).map(|p| p.id.as_str()).collect();
        nodes.extend(proj_transitions.iter().copied());
        for n in nodes {
            let is_trans = self.transitions.contains_key(n);
            let creates = is_trans && !pred.contains_key(n);
            let consumes = is_trans && !succ.contains_key(n);
            let ok_fwd = fwd.contains(n) || (relaxed && creates);
            let ok_bwd = bwd.contains(n) || (relaxed && consumes);
            if !(ok_fwd && ok_bwd) {
                out.push(WfViolation::OffPath {
                    ty: ty.clone(),
                    node: n.to_owned(),
                });
            }
        }
        if out.is_empty() {
            Ok((src, snk))
        } else {
            Err(out)
        }
    }

    /// Every node id, places first.
    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.places.keys().chain(self.transitions.keys()).map(String::as_str)
    }

    /// A fresh id starting with `base` that is unused in this net and not in `taken`.
    pub(crate) fn fresh_id(&self, base: &str, taken: &BTreeSet<String>) -> String {
        let mut id = base.to_owned();
        while self.contains_node(&id) || taken.contains(&id) {
            id.push('_');
        }
        id
    }
}

/// A P/T net: an OC-net with at most one object type and no variable arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtNet(OcNet);

impl PtNet {
    pub fn into_inner(self) -> OcNet {
        self.0
    }
}

impl TryFrom<OcNet> for PtNet {
    type Error = Error;

    fn try_from(net: OcNet) -> Result<Self> {
        if net.types.len() > 1 {
            return Err(Error::Precondition(format!(
                "a P/T net has one object type, `{}` has {}",
                net.name,
                net.types.len()
            )));
        }
        if net.has_variable_arcs() {
            return Err(Error::Precondition(format!(
                "a P/T net has no variable arcs, `{}` does",
                net.name
            )));
        }
        Ok(PtNet(net))
    }
}

impl Deref for PtNet {
    type Target = OcNet;

    fn deref(&self) -> &OcNet {
        &self.0
    }
}

/// A P/T net together with its verified source and sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfNetView<'a> {
    pub net: &'a PtNet,
    pub source: String,
    pub sink: String,
}

/// Checks the classical workflow-net conditions.
pub fn as_wf_net(net: &PtNet) -> Result<WfNetView<'_>> {
    let ty = match net.types.iter().next() {
        Some(ty) => ty.clone(),
        None => return Err(Error::NotWorkflow("net has no places".into())),
    };
    match net.type_workflow_violations(&ty, false) {
        Ok((source, sink)) => Ok(WfNetView { net, source, sink }),
        Err(v) => Err(Error::NotWorkflow(
            v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        )),
    }
}
