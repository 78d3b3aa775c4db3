//! Strong and weak bisimulation between labelled transition systems.
//!
//! Both checks run signature-based partition refinement on the disjoint
//! union of the two systems. Weak bisimulation is strong bisimulation of the
//! saturated systems, where `s =a=> s'` stands for `τ* a τ*` and `s =τ=> s'`
//! for `τ*` (including the empty run).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::model::ActivityLabel;
use crate::par;
use crate::semantics::Lts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strong,
    Weak,
}

/// Why two initial states are not bisimilar: after `trace` (a run both sides
/// can perform, in the saturated system for weak mode) the reached states
/// offer different sets of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinction {
    pub trace: Vec<ActivityLabel>,
    pub left_state: usize,
    pub right_state: usize,
    pub left_labels: BTreeSet<ActivityLabel>,
    pub right_labels: BTreeSet<ActivityLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisimResult {
    pub related: bool,
    pub mode: Mode,
    /// Final block of every left state, then every right state.
    #[serde(skip)]
    pub blocks: Vec<usize>,
    #[serde(skip)]
    pub left_states: usize,
    pub distinction: Option<Distinction>,
    /// Set when a system was cut by exploration bounds: the verdict then
    /// concerns the explored fragments only.
    pub advisory: Option<String>,
}

impl BisimResult {
    /// The largest bisimulation between the two systems.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let (l, r) = self.blocks.split_at(self.left_states);
        let mut by_block: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for (j, b) in r.iter().enumerate() {
            by_block.entry(*b).or_default().push(j);
        }
        let mut out = Vec::new();
        for (i, b) in l.iter().enumerate() {
            for &j in by_block.get(b).map(Vec::as_slice).unwrap_or(&[]) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn num_classes(&self) -> usize {
        self.blocks.iter().collect::<BTreeSet<_>>().len()
    }
}

fn tau_closure(n: usize, edges: &[(usize, ActivityLabel, usize)]) -> Vec<Vec<usize>> {
    let mut tau: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, a, t) in edges {
        if a.is_silent() {
            tau[*s].push(*t);
        }
    }
    let states: Vec<usize> = (0..n).collect();
    par::map(&states, |&s| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut out = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &tau[x] {
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    })
}

/// The saturated system: `s =a=> s'` for every visible `a`, and `s =τ=> s'`
/// whenever `s'` is τ-reachable from `s` (every state has a τ self-loop).
pub fn weak_closure(lts: &Lts) -> Lts {
    let n = lts.num_states();
    let clos = tau_closure(n, &lts.edges);
    let mut visible: Vec<Vec<(&ActivityLabel, usize)>> = vec![Vec::new(); n];
    for (s, a, t) in &lts.edges {
        if !a.is_silent() {
            visible[*s].push((a, *t));
        }
    }
    let states: Vec<usize> = (0..n).collect();
    let per_state = par::map(&states, |&s| {
        let mut out: BTreeSet<(ActivityLabel, usize)> = BTreeSet::new();
        for &u in &clos[s] {
            out.insert((ActivityLabel::Silent, u));
            for (a, v) in &visible[u] {
                for &w in &clos[*v] {
                    out.insert(((*a).clone(), w));
                }
            }
        }
        out
    });
    let edges = per_state
        .into_iter()
        .enumerate()
        .flat_map(|(s, set)| set.into_iter().map(move |(a, t)| (s, a, t)))
        .collect::<Vec<_>>();
    let mut out = Lts::from_edges(n, lts.initial, edges);
    out.states = lts.states.clone();
    out.truncated = lts.truncated;
    out
}

/// Union of two systems with interned labels: `succ[s]` lists `(label, t)`.
struct Union {
    succ: Vec<Vec<(usize, usize)>>,
    labels: Vec<ActivityLabel>,
}

impl Union {
    fn new(l1: &Lts, l2: &Lts) -> Union {
        let n1 = l1.num_states();
        let mut label_ids: BTreeMap<ActivityLabel, usize> = BTreeMap::new();
        for (_, a, _) in l1.edges.iter().chain(&l2.edges) {
            let k = label_ids.len();
            label_ids.entry(a.clone()).or_insert(k);
        }
        let mut succ = vec![Vec::new(); n1 + l2.num_states()];
        for (s, a, t) in &l1.edges {
            succ[*s].push((label_ids[a], *t));
        }
        for (s, a, t) in &l2.edges {
            succ[n1 + s].push((label_ids[a], n1 + t));
        }
        let mut labels = vec![ActivityLabel::Silent; label_ids.len()];
        for (a, k) in label_ids {
            labels[k] = a;
        }
        Union { succ, labels }
    }

    /// Partition after every refinement round; `history[0]` is the trivial
    /// partition and the last entry is stable.
    fn refine(&self) -> Vec<Vec<usize>> {
        let n = self.succ.len();
        let mut history = vec![vec![0usize; n]];
        let mut count = usize::from(n > 0);
        loop {
            let cur = history.last().expect("nonempty history");
            let states: Vec<usize> = (0..n).collect();
            let sigs = par::map(&states, |&s| {
                let mut moves: Vec<(usize, usize)> = self.succ[s].iter().map(|&(a, t)| (a, cur[t])).collect();
                moves.sort_unstable();
                moves.dedup();
                (cur[s], moves)
            });
            let mut ids: FxHashMap<&(usize, Vec<(usize, usize)>), usize> = FxHashMap::default();
            let mut next = Vec::with_capacity(n);
            for sig in &sigs {
                let k = ids.len();
                next.push(*ids.entry(sig).or_insert(k));
            }
            let new_count = ids.len();
            history.push(next);
            if new_count == count {
                return history;
            }
            count = new_count;
        }
    }

    fn labels_of(&self, s: usize) -> BTreeSet<ActivityLabel> {
        self.succ[s].iter().map(|&(a, _)| self.labels[a].clone()).collect()
    }

    /// First level at which `s` and `t` fall into different blocks.
    fn split_level(history: &[Vec<usize>], s: usize, t: usize) -> Option<usize> {
        history.iter().position(|p| p[s] != p[t])
    }

    fn distinction(&self, history: &[Vec<usize>], mut s: usize, mut t: usize, n1: usize) -> Distinction {
        let mut trace = Vec::new();
        loop {
            let k = Self::split_level(history, s, t).expect("separated states");
            let prev = &history[k - 1];
            // a move of one side whose target block the other side cannot reach
            let missing = |x: usize, y: usize| {
                self.succ[x].iter().find_map(|&(a, x2)| {
                    let answered = self.succ[y].iter().any(|&(b, y2)| b == a && prev[y2] == prev[x2]);
                    (!answered).then_some((a, x2))
                })
            };
            let (a, x2, other, swapped) = match missing(s, t) {
                Some((a, x2)) => (a, x2, t, false),
                None => {
                    let (a, y2) = missing(t, s).expect("signatures differ");
                    (a, y2, s, true)
                }
            };
            // the other side's answer separated latest, if any
            let answer = self.succ[other]
                .iter()
                .filter(|&&(b, _)| b == a)
                .map(|&(_, y2)| y2)
                .max_by_key(|&y2| (Self::split_level(history, x2, y2), std::cmp::Reverse(y2)));
            match answer {
                Some(y2) if k > 1 => {
                    trace.push(self.labels[a].clone());
                    if swapped {
                        s = y2;
                        t = x2;
                    } else {
                        s = x2;
                        t = y2;
                    }
                }
                _ => {
                    return Distinction {
                        trace,
                        left_state: s,
                        right_state: t - n1,
                        left_labels: self.labels_of(s),
                        right_labels: self.labels_of(t),
                    };
                }
            }
        }
    }
}

fn saturate(l1: &Lts, l2: &Lts, mode: Mode) -> (Lts, Lts) {
    match mode {
        Mode::Strong => (l1.clone(), l2.clone()),
        Mode::Weak => (weak_closure(l1), weak_closure(l2)),
    }
}

/// Decides whether the initial states of `l1` and `l2` are bisimilar.
pub fn check_bisim(l1: &Lts, l2: &Lts, mode: Mode) -> BisimResult {
    let (a, b) = saturate(l1, l2, mode);
    let n1 = a.num_states();
    let u = Union::new(&a, &b);
    let history = u.refine();
    let blocks = history.last().expect("nonempty").clone();
    let (s, t) = (a.initial, n1 + b.initial);
    let related = blocks[s] == blocks[t];
    let distinction = (!related).then(|| u.distinction(&history, s, t, n1));
    let advisory = (l1.truncated || l2.truncated)
        .then(|| "a state space was truncated by exploration bounds; the verdict covers the explored part only".to_owned());
    BisimResult {
        related,
        mode,
        blocks,
        left_states: n1,
        distinction,
        advisory,
    }
}

/// Checks the transfer conditions of a (strong or weak) bisimulation
/// directly on `rel` by enumerating moves.
pub fn is_bisimulation(l1: &Lts, l2: &Lts, rel: &[(usize, usize)], mode: Mode) -> bool {
    let (a, b) = saturate(l1, l2, mode);
    let set: BTreeSet<(usize, usize)> = rel.iter().copied().collect();
    let moves = |l: &Lts, s: usize| -> Vec<(ActivityLabel, usize)> {
        l.edges
            .iter()
            .filter(|(x, _, _)| *x == s)
            .map(|(_, a, y)| (a.clone(), *y))
            .collect()
    };
    set.iter().all(|&(s, t)| {
        let ms = moves(&a, s);
        let mt = moves(&b, t);
        ms.iter()
            .all(|(x, s2)| mt.iter().any(|(y, t2)| x == y && set.contains(&(*s2, *t2))))
            && mt
                .iter()
                .all(|(y, t2)| ms.iter().any(|(x, s2)| x == y && set.contains(&(*s2, *t2))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: &str) -> ActivityLabel {
        ActivityLabel::visible(a)
    }

    fn lts(n: usize, edges: &[(usize, &str, usize)]) -> Lts {
        Lts::from_edges(
            n,
            0,
            edges.iter().map(|&(s, a, t)| {
                let l = if a == "τ" { ActivityLabel::Silent } else { v(a) };
                (s, l, t)
            }),
        )
    }

    #[test]
    fn classic_branching_difference() {
        // a.(b + c) versus a.b + a.c
        let l1 = lts(4, &[(0, "a", 1), (1, "b", 2), (1, "c", 3)]);
        let l2 = lts(5, &[(0, "a", 1), (0, "a", 2), (1, "b", 3), (2, "c", 4)]);
        let r = check_bisim(&l1, &l2, Mode::Strong);
        assert!(!r.related);
        let d = r.distinction.unwrap();
        assert_eq!(d.trace, vec![v("a")]);
        assert_ne!(d.left_labels, d.right_labels);
        assert_eq!(d.left_labels, BTreeSet::from([v("b"), v("c")]));
    }

    #[test]
    fn bisimilar_unfoldings() {
        let l1 = lts(1, &[(0, "a", 0)]);
        let l2 = lts(2, &[(0, "a", 1), (1, "a", 0)]);
        let r = check_bisim(&l1, &l2, Mode::Strong);
        assert!(r.related && r.distinction.is_none());
        let rel = r.relation();
        assert_eq!(rel, vec![(0, 0), (0, 1)]);
        assert!(is_bisimulation(&l1, &l2, &rel, Mode::Strong));
    }

    #[test]
    fn weak_ignores_internal_steps() {
        let l1 = lts(2, &[(0, "a", 1)]);
        let l2 = lts(4, &[(0, "τ", 1), (1, "a", 2), (2, "τ", 3)]);
        assert!(!check_bisim(&l1, &l2, Mode::Strong).related);
        let r = check_bisim(&l1, &l2, Mode::Weak);
        assert!(r.related);
        assert!(is_bisimulation(&l1, &l2, &r.relation(), Mode::Weak));
    }

    #[test]
    fn weak_detects_internal_choice() {
        // a + b versus τ.a + τ.b
        let l1 = lts(3, &[(0, "a", 1), (0, "b", 2)]);
        let l2 = lts(5, &[(0, "τ", 1), (0, "τ", 2), (1, "a", 3), (2, "b", 4)]);
        let r = check_bisim(&l1, &l2, Mode::Weak);
        assert!(!r.related);
        let d = r.distinction.unwrap();
        assert_ne!(d.left_labels, d.right_labels);
    }

    #[test]
    fn deadlock_after_trace() {
        let l1 = lts(3, &[(0, "a", 1), (1, "b", 2)]);
        let l2 = lts(4, &[(0, "a", 1), (1, "b", 2), (0, "a", 3)]);
        let d = check_bisim(&l1, &l2, Mode::Strong).distinction.unwrap();
        assert_eq!(d.trace, vec![v("a")]);
        assert!(d.right_labels.is_empty() || d.left_labels.is_empty());
    }

    #[test]
    fn closure_has_reflexive_tau() {
        let c = weak_closure(&lts(2, &[(0, "a", 1)]));
        assert!(c.edges.contains(&(0, ActivityLabel::Silent, 0)));
        assert!(c.edges.contains(&(1, ActivityLabel::Silent, 1)));
        assert!(c.edges.contains(&(0, v("a"), 1)));
    }

    #[test]
    fn identity_is_bisimulation() {
        let l = lts(3, &[(0, "a", 1), (1, "τ", 2), (2, "b", 0)]);
        for mode in [Mode::Strong, Mode::Weak] {
            let r = check_bisim(&l, &l, mode);
            assert!(r.related);
            let rel = r.relation();
            assert!(rel.contains(&(0, 0)) && rel.contains(&(1, 1)) && rel.contains(&(2, 2)));
            assert!(is_bisimulation(&l, &l, &rel, mode));
            assert!(!is_bisimulation(&l, &l, &[(0, 1)], mode));
        }
    }
}
