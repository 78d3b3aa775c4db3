use std::collections::BTreeSet;

use serde::Serialize;

use super::Isomorphism;
use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, ObjectType, OcNet};

/// Result of [`eliminate_variable_arcs`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    #[serde(skip)]
    pub net: OcNet,
    /// The global lock place, marked once in every lifted marking.
    pub lock: String,
    /// Original node id → id in the eliminated net.
    pub iso: Isomorphism,
}

impl Elimination {
    /// The marking of the eliminated net corresponding to `m`.
    pub fn lift(&self, m: &Marking) -> Marking {
        let mut out = self.iso.apply_marking(m);
        out.add(self.lock.clone(), 1);
        out
    }
}

/// Replaces every variable-arc transition `t` by a silent gadget under a
/// global lock: `start_t` takes the lock (and checks that every variable input
/// place is nonempty), each `add_t` moves one token from a variable input to
/// the matching output, and `t` itself, now reading its variable outputs,
/// returns the lock. Ordinary transitions read the lock. The result has no
/// variable arcs; the lock places have the empty type `ε`.
pub fn eliminate_variable_arcs(net: &OcNet) -> Result<Elimination> {
    let invalid = net.validate();
    if !invalid.is_empty() {
        return Err(Error::Precondition(format!("not a valid OC-net: {}", invalid[0])));
    }
    let eps = ObjectType::empty();
    let mut out = net.clone();
    out.ensure_type(eps.clone());
    let iso = Isomorphism::identity(net.node_ids());
    let taken = BTreeSet::new();
    let lock = out.fresh_id("lock", &taken);
    out.add_place(lock.clone(), eps.clone())?;

    let var_trans = net.variable_transitions();
    for t in net.transitions() {
        if !var_trans.contains(&t.id) {
            out.add_arc(&lock, &t.id, ArcWeight::ONE)?;
            out.add_arc(&t.id, &lock, ArcWeight::ONE)?;
        }
    }
    let one = ArcWeight::ONE;
    for t in &var_trans {
        let types = net.variable_types(t);
        let pairs: Vec<(ObjectType, String, String)> = types
            .iter()
            .map(|ty| {
                let (i, o) = net.variable_pair(t, ty).expect("validated pair");
                (ty.clone(), i.to_owned(), o.to_owned())
            })
            .collect();

        let lock_t = out.fresh_id(&format!("lock_{t}"), &taken);
        out.add_place(lock_t.clone(), eps.clone())?;

        let start = out.fresh_id(&format!("start_{t}"), &taken);
        out.add_transition(start.clone(), ActivityLabel::Silent)?;
        out.add_arc(&lock, &start, one)?;
        out.add_arc(&start, &lock_t, one)?;
        for (_, p, _) in &pairs {
            out.add_arc(p, &start, one)?;
            out.add_arc(&start, p, one)?;
        }

        for (ty, p, q) in &pairs {
            let base = if pairs.len() == 1 {
                format!("add_{t}")
            } else {
                format!("add_{t}_{ty}")
            };
            let add = out.fresh_id(&base, &taken);
            out.add_transition(add.clone(), ActivityLabel::Silent)?;
            out.add_arc(&lock_t, &add, one)?;
            out.add_arc(&add, &lock_t, one)?;
            out.add_arc(p, &add, one)?;
            out.add_arc(&add, q, one)?;
        }

        for (_, p, q) in &pairs {
            out.put_arc(p, t, None);
            out.put_arc(t, q, Some(one));
            out.put_arc(q, t, Some(one));
        }
        out.add_arc(&lock_t, t, one)?;
        out.add_arc(t, &lock, one)?;
    }
    Ok(Elimination { net: out, lock, iso })
}
