//! Brute-force reference implementations shared by the integration tests.
//! They work on plain vectors and never call the library's semantics.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ocwf::{as_wf_net, ActivityLabel, ArcWeight, Marking, OcNet, PtNet};

/// Token-arithmetic view of a P/T net.
pub struct PtOracle {
    pub places: Vec<String>,
    pub trans: Vec<(String, ActivityLabel, Vec<u64>, Vec<u64>)>,
}

pub type Vector = Vec<u64>;

pub struct Reach {
    pub states: BTreeSet<Vector>,
    pub edges: BTreeSet<(Vector, ActivityLabel, Vector)>,
    pub truncated: bool,
}

impl PtOracle {
    pub fn new(net: &OcNet) -> Self {
        let places: Vec<String> = net.places().map(|p| p.id.clone()).collect();
        let index: BTreeMap<&str, usize> = places.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let trans = net
            .transitions()
            .map(|t| {
                let mut pre = vec![0; places.len()];
                let mut post = vec![0; places.len()];
                for (a, b, w) in net.arcs() {
                    let k = match w {
                        ArcWeight::Nat(k) => u64::from(k.get()),
                        ArcWeight::Var => panic!("oracle handles P/T nets only"),
                    };
                    if b == t.id {
                        pre[index[a]] += k;
                    }
                    if a == t.id {
                        post[index[b]] += k;
                    }
                }
                (t.id.clone(), t.label.clone(), pre, post)
            })
            .collect();
        PtOracle { places, trans }
    }

    pub fn vector(&self, m: &Marking) -> Vector {
        self.places.iter().map(|p| m.get(p)).collect()
    }

    pub fn marking(&self, v: &[u64]) -> Marking {
        self.places.iter().zip(v).map(|(p, n)| (p.clone(), *n)).collect()
    }

    /// Removes the input tokens one at a time, then adds the outputs one at
    /// a time; `None` when some place runs dry.
    pub fn fire(&self, v: &[u64], t: usize) -> Option<Vector> {
        let (_, _, pre, post) = &self.trans[t];
        let mut out = v.to_vec();
        for (i, k) in pre.iter().enumerate() {
            for _ in 0..*k {
                if out[i] == 0 {
                    return None;
                }
                out[i] -= 1;
            }
        }
        for (i, k) in post.iter().enumerate() {
            for _ in 0..*k {
                out[i] += 1;
            }
        }
        Some(out)
    }

    /// Reachable vectors with successors above `cap` in some place cut;
    /// `None` when more than `limit` vectors are found.
    pub fn reach(&self, v0: Vector, cap: u64, limit: usize) -> Option<Reach> {
        let mut states = BTreeSet::from([v0.clone()]);
        let mut edges = BTreeSet::new();
        let mut truncated = false;
        let mut queue = VecDeque::from([v0]);
        while let Some(v) = queue.pop_front() {
            for t in 0..self.trans.len() {
                let Some(w) = self.fire(&v, t) else { continue };
                if w.iter().any(|n| *n > cap) {
                    truncated = true;
                    continue;
                }
                edges.insert((v.clone(), self.trans[t].1.clone(), w.clone()));
                if states.insert(w.clone()) {
                    if states.len() > limit {
                        return None;
                    }
                    queue.push_back(w);
                }
            }
        }
        Some(Reach {
            states,
            edges,
            truncated,
        })
    }
}

/// Classical soundness straight from the definition, for nets with at most
/// `limit` reachable markings from `[in]`; `None` for larger or unbounded nets.
pub fn classical_soundness_oracle(net: &PtNet, limit: usize) -> Option<bool> {
    let wf = as_wf_net(net).ok()?;
    let o = PtOracle::new(net);
    let init = o.vector(&Marking::singleton(wf.source.as_str()));
    let fin = o.vector(&Marking::singleton(wf.sink.as_str()));
    let r = o.reach(init, u64::MAX, limit)?;
    let sink = o.places.iter().position(|p| *p == wf.sink).unwrap();
    let can_finish = |v: &Vector| {
        let sub = o.reach(v.clone(), u64::MAX, usize::MAX).expect("finite");
        sub.states.contains(&fin)
    };
    let option_to_complete = r.states.iter().all(can_finish);
    let proper = r.states.iter().all(|v| v[sink] == 0 || *v == fin);
    let no_dead = (0..o.trans.len()).all(|t| r.states.iter().any(|v| o.fire(v, t).is_some()));
    Some(option_to_complete && proper && no_dead)
}
