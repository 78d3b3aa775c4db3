use std::collections::{BTreeMap, BTreeSet};

use super::{project_one_safe, rename_nodes, typed_transitions, Isomorphism};
use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::model::{ArcWeight, ObjectType, OcNet};

/// Naming scheme for a tracking extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackingNames {
    /// Type of the tracked copy; defaults to the tracked type with primes
    /// appended until unused.
    pub fresh: Option<ObjectType>,
    /// Appended to the ids of tracking copies.
    pub copy_suffix: String,
    /// Appended to the ids of the joint-move duplicates of transfer transitions.
    pub dup_suffix: String,
}

impl Default for TrackingNames {
    fn default() -> Self {
        TrackingNames {
            fresh: None,
            copy_suffix: "'".into(),
            dup_suffix: "''".into(),
        }
    }
}

impl TrackingNames {
    pub fn with_suffixes(copy: &str, dup: &str) -> Self {
        TrackingNames {
            fresh: None,
            copy_suffix: copy.into(),
            dup_suffix: dup.into(),
        }
    }
}

/// A tracking extension: the net with one object of type `tracked` singled
/// out as a token of type `fresh` running through a copy of its 1-safe
/// projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracking {
    pub net: OcNet,
    pub tracked: ObjectType,
    pub fresh: ObjectType,
    /// Tracking transitions that duplicate a behaviour the ground net can
    /// also perform: copies of object-creating transitions and both copies
    /// of transitions that transfer `tracked` objects.
    pub duplicates: BTreeSet<String>,
    /// Tracked place or transition → its tracking copy.
    pub copies: Isomorphism,
}

impl Tracking {
    /// `(in', out')`: source and sink of the tracking copy.
    pub fn tracking_source_sink(&self) -> Option<(String, String)> {
        self.net.source_sink(&self.fresh)
    }

    /// `m` plus the tracked token on the copy of place `p`.
    pub fn with_tracked(&self, m: &Marking, p: &str) -> Result<Marking> {
        let q = self.copies.get(p).ok_or_else(|| Error::not_found("place", p))?;
        let mut out = m.clone();
        out.add(q.to_owned(), 1);
        Ok(out)
    }
}

fn fresh_type(net: &OcNet, d: &ObjectType) -> ObjectType {
    let mut name = format!("{d}'");
    while net.has_type(&ObjectType::new(name.as_str())) {
        name.push('\'');
    }
    ObjectType::new(name)
}

/// [`tracking_extension_with`] using primes for fresh names.
pub fn tracking_extension(net: &OcNet, d: &ObjectType) -> Result<Tracking> {
    tracking_extension_with(net, d, &TrackingNames::default())
}

/// Builds the tracking extension of `net` for type `d`.
///
/// The ground net is kept unchanged. Every transition `t` adjacent to a
/// `d`-place gets a copy `t'` that moves the tracked token along the 1-safe
/// projection and takes one fewer `d` token on each ordinary `d`-arc; when
/// `t` transfers `d` objects over variable arcs, `t'` moves the tracked
/// object alone and a second copy `t''` moves it together with the transfer.
pub fn tracking_extension_with(net: &OcNet, d: &ObjectType, names: &TrackingNames) -> Result<Tracking> {
    if !net.has_type(d) {
        return Err(Error::not_found("type", d.as_str()));
    }
    let violations = net.is_oc_wf_net()?;
    if !violations.is_empty() {
        return Err(Error::NotWorkflow(
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    let fresh = match &names.fresh {
        Some(f) => f.clone(),
        None => fresh_type(net, d),
    };
    if net.has_type(&fresh) || fresh.is_empty_type() {
        return Err(Error::Conflict(fresh.to_string()));
    }
    if names.copy_suffix.is_empty() || names.dup_suffix.is_empty() || names.copy_suffix == names.dup_suffix {
        return Err(Error::Precondition("tracking suffixes must be distinct and nonempty".into()));
    }
    let copy = |x: &str| format!("{x}{}", names.copy_suffix);
    let dup = |x: &str| format!("{x}{}", names.dup_suffix);

    let proj = project_one_safe(net, d)?;
    let tracked_trans = typed_transitions(net, d);
    let mut out = net.clone();
    out.insert_type(fresh.clone())?;
    let mut copies = BTreeMap::new();
    for p in net.places_of_type(d) {
        out.add_place(copy(&p.id), fresh.clone())?;
        copies.insert(p.id.clone(), copy(&p.id));
    }

    let is_d = |p: &str| net.type_of(p) == Some(d);
    let mut duplicates = BTreeSet::new();
    for t in &tracked_trans {
        let label = net.transition(t).expect("adjacent transition").label.clone();
        let tc = copy(t);
        out.add_transition(tc.clone(), label.clone())?;
        copies.insert(t.clone(), tc.clone());
        let tracking_in: Vec<&str> = proj.inputs_of(t).map(|(p, _)| p).collect();
        let tracking_out: Vec<&str> = proj.outputs_of(t).map(|(p, _)| p).collect();
        let add_tracking = |out: &mut OcNet, id: &str| -> Result<()> {
            for p in &tracking_in {
                out.add_arc(&copy(p), id, ArcWeight::ONE)?;
            }
            for p in &tracking_out {
                out.add_arc(id, &copy(p), ArcWeight::ONE)?;
            }
            Ok(())
        };
        add_tracking(&mut out, &tc)?;
        let reduce = |p: &str, w: ArcWeight| -> Option<ArcWeight> {
            if !is_d(p) {
                return Some(w);
            }
            w.as_nat().and_then(|k| ArcWeight::nat(k - 1))
        };
        for (p, w) in net.inputs_of(t) {
            if let Some(w) = reduce(p, w) {
                out.add_arc(p, &tc, w)?;
            }
        }
        for (p, w) in net.outputs_of(t) {
            if let Some(w) = reduce(p, w) {
                out.add_arc(&tc, p, w)?;
            }
        }

        if net.variable_types(t).contains(d) {
            let td = dup(t);
            out.add_transition(td.clone(), label)?;
            add_tracking(&mut out, &td)?;
            for (p, w) in net.inputs_of(t) {
                out.add_arc(p, &td, w)?;
            }
            for (p, w) in net.outputs_of(t) {
                out.add_arc(&td, p, w)?;
            }
            duplicates.insert(tc);
            duplicates.insert(td);
        } else if tracking_in.is_empty() {
            duplicates.insert(tc);
        }
    }
    Ok(Tracking {
        net: out,
        tracked: d.clone(),
        fresh,
        duplicates,
        copies: Isomorphism { node_map: copies },
    })
}

/// Renames every node by stripping trailing occurrences of `suffixes`
/// (longest match first) and re-appending the stripped suffixes in sorted
/// order. Tracking extensions built in different type orders coincide after
/// this normalisation when each type uses its own suffixes.
pub fn normalize_tracking_ids(net: &OcNet, suffixes: &[&str]) -> Result<OcNet> {
    let mut sorted: Vec<&str> = suffixes.iter().copied().filter(|s| !s.is_empty()).collect();
    sorted.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let norm = |id: &str| -> String {
        let mut base = id;
        let mut found = Vec::new();
        'strip: loop {
            for s in &sorted {
                if base.len() > s.len() && base.ends_with(s) {
                    base = &base[..base.len() - s.len()];
                    found.push(*s);
                    continue 'strip;
                }
            }
            break;
        }
        found.sort_unstable();
        let mut out = base.to_owned();
        for s in found {
            out.push_str(s);
        }
        out
    };
    rename_nodes(net, norm, |t| t.clone())
}
