//! Net constructions: projections, type renaming, replication, synchronous
//! composition, variable-arc elimination and tracking extensions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, ObjectType, OcNet, PtNet};

mod elimination;
mod tracking;

pub use elimination::{eliminate_variable_arcs, Elimination};
pub use tracking::{normalize_tracking_ids, tracking_extension, tracking_extension_with, Tracking, TrackingNames};

/// A bijection between the node ids of two nets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub node_map: BTreeMap<String, String>,
}

impl Isomorphism {
    pub fn identity<'a>(ids: impl IntoIterator<Item = &'a str>) -> Self {
        Isomorphism {
            node_map: ids.into_iter().map(|x| (x.to_owned(), x.to_owned())).collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&str> {
        self.node_map.get(id).map(String::as_str)
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            node_map: self.node_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Isomorphism) -> Isomorphism {
        Isomorphism {
            node_map: self
                .node_map
                .iter()
                .filter_map(|(a, b)| other.get(b).map(|c| (a.clone(), c.to_owned())))
                .collect(),
        }
    }

    /// Maps a marking's places; places outside the domain are dropped.
    pub fn apply_marking(&self, m: &Marking) -> Marking {
        m.iter()
            .filter_map(|(p, n)| self.get(p).map(|q| (q.to_owned(), n)))
            .collect()
    }
}

/// Copies `net` with every node id replaced through `f` and every type
/// through `g`. `f` must be injective.
pub fn rename_nodes(net: &OcNet, f: impl Fn(&str) -> String, g: impl Fn(&ObjectType) -> ObjectType) -> Result<OcNet> {
    let mut out = OcNet::new(net.name());
    for ty in net.types() {
        out.insert_type(g(ty))?;
    }
    for p in net.places() {
        out.add_place(f(&p.id), g(&p.ty))?;
    }
    for t in net.transitions() {
        out.add_transition(f(&t.id), t.label.clone())?;
    }
    for (a, b, w) in net.arcs() {
        out.add_arc(&f(a), &f(b), w)?;
    }
    Ok(out)
}

fn require_type(net: &OcNet, d: &ObjectType) -> Result<()> {
    if net.has_type(d) {
        Ok(())
    } else {
        Err(Error::not_found("type", d.as_str()))
    }
}

/// Transitions adjacent to a `d`-typed place (`T|d`).
pub(crate) fn typed_transitions(net: &OcNet, d: &ObjectType) -> BTreeSet<String> {
    net.arcs()
        .filter_map(|(a, b, _)| {
            if net.type_of(a) == Some(d) {
                Some(b.to_owned())
            } else if net.type_of(b) == Some(d) {
                Some(a.to_owned())
            } else {
                None
            }
        })
        .collect()
}

/// The `d`-typed projection: `d` places, their adjacent transitions and the
/// arcs between them. Variable arcs are kept as they are.
pub fn project(net: &OcNet, d: &ObjectType) -> Result<OcNet> {
    require_type(net, d)?;
    let mut out = OcNet::new(net.name());
    out.insert_type(d.clone())?;
    for p in net.places_of_type(d) {
        out.add_place(p.id.clone(), d.clone())?;
    }
    for t in typed_transitions(net, d) {
        out.add_transition(t.clone(), net.transition(&t).expect("arc endpoint").label.clone())?;
    }
    for (a, b, w) in net.arcs() {
        if net.type_of(a) == Some(d) || net.type_of(b) == Some(d) {
            out.add_arc(a, b, w)?;
        }
    }
    Ok(out)
}

/// The 1-safe `d`-typed projection: [`project`] with every arc weight set to 1.
pub fn project_one_safe(net: &OcNet, d: &ObjectType) -> Result<PtNet> {
    let proj = project(net, d)?;
    let mut out = OcNet::new(proj.name());
    out.insert_type(d.clone())?;
    for p in proj.places() {
        out.add_place(p.id.clone(), d.clone())?;
    }
    for t in proj.transitions() {
        out.add_transition(t.id.clone(), t.label.clone())?;
    }
    for (a, b, _) in proj.arcs() {
        out.add_arc(a, b, ArcWeight::ONE)?;
    }
    PtNet::try_from(out)
}

/// `ON[d/d']`: a copy with fresh node ids (`suffix` appended) in which type
/// `d` is replaced by `d_fresh`.
pub fn rename_type_with(net: &OcNet, d: &ObjectType, d_fresh: &ObjectType, suffix: &str) -> Result<(OcNet, Isomorphism)> {
    require_type(net, d)?;
    if net.has_type(d_fresh) {
        return Err(Error::Conflict(d_fresh.to_string()));
    }
    let copy = rename_nodes(
        net,
        |x| format!("{x}{suffix}"),
        |ty| if ty == d { d_fresh.clone() } else { ty.clone() },
    )?;
    let iso = Isomorphism {
        node_map: net.node_ids().map(|x| (x.to_owned(), format!("{x}{suffix}"))).collect(),
    };
    Ok((copy, iso))
}

/// [`rename_type_with`] using the prime suffix `'`.
pub fn rename_type(net: &OcNet, d: &ObjectType, d_fresh: &ObjectType) -> Result<(OcNet, Isomorphism)> {
    rename_type_with(net, d, d_fresh, "'")
}

/// Multiplies every ordinary arc weight by `k`, as when `k` identical copies
/// of a participant synchronise on all of their activities.
pub fn replicate(net: &OcNet, k: u32) -> Result<OcNet> {
    if k == 0 {
        return Err(Error::Precondition("replication factor must be positive".into()));
    }
    let mut out = net.clone();
    for (a, b, w) in net.arcs() {
        if let ArcWeight::Nat(n) = w {
            let scaled = n
                .get()
                .checked_mul(k)
                .and_then(ArcWeight::nat)
                .ok_or_else(|| Error::Precondition("arc weight overflow".into()))?;
            out.put_arc(a, b, Some(scaled));
        }
    }
    Ok(out)
}

fn label_index(net: &OcNet) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for t in net.transitions() {
        if let ActivityLabel::Visible(a) = &t.label {
            if out.insert(a.clone(), t.id.clone()).is_some() {
                return Err(Error::Ambiguous(a.clone()));
            }
        }
    }
    Ok(out)
}

/// Synchronous composition: transitions of `n1` and `n2` carrying the same
/// visible label are fused into one transition holding the arcs of both.
/// A fused transition keeps the id it has in `n1`.
pub fn sync_compose(n1: &OcNet, n2: &OcNet) -> Result<OcNet> {
    if let Some(shared) = n1.types().find(|ty| n2.has_type(ty)) {
        return Err(Error::Precondition(format!(
            "composed nets must have disjoint types, both declare `{shared}`"
        )));
    }
    let labels1 = label_index(n1)?;
    let labels2 = label_index(n2)?;
    // n2 transition id -> id in the result
    let mut rename2: BTreeMap<String, String> = BTreeMap::new();
    for (a, t2) in &labels2 {
        if let Some(t1) = labels1.get(a) {
            rename2.insert(t2.clone(), t1.clone());
        }
    }
    let mut out = OcNet::new(format!("{}_{}", n1.name(), n2.name()));
    for ty in n1.types().chain(n2.types()) {
        out.insert_type(ty.clone())?;
    }
    for p in n1.places().chain(n2.places()) {
        out.add_place(p.id.clone(), p.ty.clone())?;
    }
    for t in n1.transitions() {
        out.add_transition(t.id.clone(), t.label.clone())?;
    }
    for t in n2.transitions() {
        if !rename2.contains_key(&t.id) {
            out.add_transition(t.id.clone(), t.label.clone())?;
        }
    }
    for (a, b, w) in n1.arcs() {
        out.add_arc(a, b, w)?;
    }
    let map2 = |x: &str| rename2.get(x).cloned().unwrap_or_else(|| x.to_owned());
    for (a, b, w) in n2.arcs() {
        out.add_arc(&map2(a), &map2(b), w)?;
    }
    Ok(out)
}
