//! Dense, index-based view of a net and the breadth-first state-space engine
//! shared by exploration, soundness and equivalence checking.

use rustc_hash::FxHashMap;

use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, ObjectType, OcNet};
use crate::par;
use crate::semantics::{ExplorationBounds, FiringEvent, TransferMode};

pub(crate) type State = Box<[u32]>;

#[derive(Debug, Clone)]
pub(crate) struct VarPair {
    pub ty: usize,
    pub input: usize,
    pub output: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct CTrans {
    pub id: String,
    pub label: ActivityLabel,
    pub nat_in: Vec<(usize, u32)>,
    pub nat_out: Vec<(usize, u32)>,
    /// sorted by type
    pub vars: Vec<VarPair>,
}

/// A net compiled to place indices. Place and transition order follow the
/// net's (sorted) id order.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub places: Vec<String>,
    pub index: FxHashMap<String, usize>,
    pub types: Vec<ObjectType>,
    pub trans: Vec<CTrans>,
}

impl Compiled {
    /// Compiles a valid OC-net (variable arcs must be paired).
    pub fn new(net: &OcNet) -> Compiled {
        let places: Vec<String> = net.places().map(|p| p.id.clone()).collect();
        let index: FxHashMap<String, usize> =
            places.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let types: Vec<ObjectType> = net.types().cloned().collect();
        let mut trans = Vec::new();
        for t in net.transitions() {
            let mut nat_in = Vec::new();
            let mut nat_out = Vec::new();
            for (p, w) in net.inputs_of(&t.id) {
                if let ArcWeight::Nat(k) = w {
                    nat_in.push((index[p], k.get()));
                }
            }
            for (p, w) in net.outputs_of(&t.id) {
                if let ArcWeight::Nat(k) = w {
                    nat_out.push((index[p], k.get()));
                }
            }
            let vars = net
                .variable_types(&t.id)
                .into_iter()
                .filter_map(|ty| {
                    let (i, o) = net.variable_pair(&t.id, &ty)?;
                    Some(VarPair {
                        ty: types.iter().position(|x| *x == ty).expect("declared type"),
                        input: index[i],
                        output: index[o],
                    })
                })
                .collect();
            trans.push(CTrans {
                id: t.id.clone(),
                label: t.label.clone(),
                nat_in,
                nat_out,
                vars,
            });
        }
        Compiled {
            places,
            index,
            types,
            trans,
        }
    }

    pub fn state(&self, m: &Marking) -> State {
        let mut s = vec![0u32; self.places.len()];
        for (p, n) in m.iter() {
            if let Some(&i) = self.index.get(p) {
                s[i] = u32::try_from(n).unwrap_or(u32::MAX);
            }
        }
        s.into_boxed_slice()
    }

    pub fn marking(&self, s: &[u32]) -> Marking {
        Marking::from_pairs(
            s.iter()
                .enumerate()
                .filter(|(_, n)| **n > 0)
                .map(|(i, n)| (self.places[i].clone(), u64::from(*n))),
        )
    }

    pub fn event(&self, t: usize, mode: &[u32]) -> FiringEvent {
        let tr = &self.trans[t];
        FiringEvent {
            transition: tr.id.clone(),
            mode: TransferMode::from_pairs(
                tr.vars
                    .iter()
                    .zip(mode)
                    .map(|(v, a)| (self.types[v.ty].clone(), u64::from(*a))),
            ),
        }
    }

    /// Every successor of `s` (transition order, then modes in lexicographic
    /// order). `omega` marks places holding unboundedly many tokens: they are
    /// never decremented nor incremented. The flag reports whether any
    /// bound cut a successor or mode.
    pub fn successors(&self, s: &[u32], bounds: &ExplorationBounds, omega: Option<&[bool]>) -> (Vec<Succ>, bool) {
        let is_omega = |p: usize| omega.is_some_and(|o| o[p]);
        let mut out = Vec::new();
        let mut cut = false;
        let max_mode = u32::try_from(bounds.max_mode).unwrap_or(u32::MAX);
        let cap = u32::try_from(bounds.place_cap).unwrap_or(u32::MAX);
        'trans: for (ti, t) in self.trans.iter().enumerate() {
            for &(p, k) in &t.nat_in {
                if !is_omega(p) && s[p] < k {
                    continue 'trans;
                }
            }
            let mut limits = Vec::with_capacity(t.vars.len());
            for v in &t.vars {
                let avail = if is_omega(v.input) { u32::MAX } else { s[v.input] };
                if avail == 0 {
                    continue 'trans;
                }
                if avail > max_mode {
                    cut = true;
                }
                limits.push(avail.min(max_mode));
            }
            let mut mode = vec![1u32; limits.len()];
            loop {
                let mut next: Vec<u32> = s.to_vec();
                let mut over = false;
                for &(p, k) in &t.nat_in {
                    if !is_omega(p) {
                        next[p] -= k;
                    }
                }
                for (v, &a) in t.vars.iter().zip(&mode) {
                    if !is_omega(v.input) {
                        next[v.input] -= a;
                    }
                }
                for &(p, k) in &t.nat_out {
                    if !is_omega(p) {
                        next[p] = next[p].saturating_add(k);
                        over |= next[p] > cap;
                    }
                }
                for (v, &a) in t.vars.iter().zip(&mode) {
                    if !is_omega(v.output) {
                        next[v.output] = next[v.output].saturating_add(a);
                        over |= next[v.output] > cap;
                    }
                }
                if over {
                    cut = true;
                } else {
                    out.push(Succ {
                        trans: ti,
                        mode: mode.clone().into_boxed_slice(),
                        next: next.into_boxed_slice(),
                    });
                }
                // odometer over modes, last type fastest
                let mut i = mode.len();
                loop {
                    if i == 0 {
                        continue 'trans;
                    }
                    i -= 1;
                    if mode[i] < limits[i] {
                        mode[i] += 1;
                        for m in &mut mode[i + 1..] {
                            *m = 1;
                        }
                        break;
                    }
                }
            }
        }
        (out, cut)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Succ {
    pub trans: usize,
    pub mode: Box<[u32]>,
    pub next: State,
}

#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub from: usize,
    pub trans: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Options<'a> {
    pub keep_edges: bool,
    /// Stop at the first state strictly covering one of its tree ancestors.
    pub detect_cover: bool,
    pub omega: Option<&'a [bool]>,
}

/// Breadth-first state graph with parent pointers.
#[derive(Debug, Clone, Default)]
pub(crate) struct Graph {
    pub states: Vec<State>,
    pub index: FxHashMap<State, usize>,
    /// (parent state, transition, mode) on a shortest path from a root
    pub parent: Vec<Option<(usize, usize, Box<[u32]>)>>,
    pub root: Vec<usize>,
    pub edges: Vec<Edge>,
    pub truncated: bool,
    /// (ancestor, descendant) with ancestor ⊊ descendant
    pub cover: Option<(usize, usize)>,
}

impl Graph {
    /// Shortest firing sequence from the state's root to `s`.
    pub fn trace(&self, s: usize) -> Vec<(usize, Box<[u32]>)> {
        let mut out = Vec::new();
        let mut cur = s;
        while let Some((p, t, m)) = &self.parent[cur] {
            out.push((*t, m.clone()));
            cur = *p;
        }
        out.reverse();
        out
    }

    fn strictly_covers_ancestor(&self, parent: usize, s: &[u32]) -> Option<usize> {
        let mut cur = Some(parent);
        while let Some(a) = cur {
            let anc = &self.states[a];
            if anc.iter().zip(s.iter()).all(|(x, y)| x <= y) && anc.as_ref() != s {
                return Some(a);
            }
            cur = self.parent[a].as_ref().map(|(p, _, _)| *p);
        }
        None
    }
}

/// Explores from `roots` breadth-first. Successor computation per frontier
/// level runs through [`par::map`]; merging is sequential in frontier order,
/// so the result does not depend on parallelism.
pub(crate) fn explore(c: &Compiled, roots: &[State], bounds: &ExplorationBounds, opts: &Options<'_>) -> Graph {
    let mut g = Graph::default();
    let mut frontier = Vec::new();
    for r in roots {
        if g.index.contains_key(r) {
            continue;
        }
        if g.states.len() >= bounds.max_states {
            g.truncated = true;
            break;
        }
        let i = g.states.len();
        g.states.push(r.clone());
        g.index.insert(r.clone(), i);
        g.parent.push(None);
        g.root.push(i);
        frontier.push(i);
    }
    while !frontier.is_empty() {
        let states: Vec<&State> = frontier.iter().map(|&i| &g.states[i]).collect();
        let succs = par::map(&states, |s| c.successors(s, bounds, opts.omega));
        let mut next_frontier = Vec::new();
        for (&from, (list, cut)) in frontier.iter().zip(succs) {
            g.truncated |= cut;
            for s in list {
                let to = match g.index.get(&s.next) {
                    Some(&j) => j,
                    None => {
                        if g.states.len() >= bounds.max_states {
                            g.truncated = true;
                            continue;
                        }
                        if opts.detect_cover {
                            if let Some(a) = g.strictly_covers_ancestor(from, &s.next) {
                                let j = g.states.len();
                                g.states.push(s.next.clone());
                                g.index.insert(s.next, j);
                                g.parent.push(Some((from, s.trans, s.mode)));
                                g.root.push(g.root[from]);
                                g.cover = Some((a, j));
                                return g;
                            }
                        }
                        let j = g.states.len();
                        g.states.push(s.next.clone());
                        g.index.insert(s.next.clone(), j);
                        g.parent.push(Some((from, s.trans, s.mode.clone())));
                        g.root.push(g.root[from]);
                        next_frontier.push(j);
                        j
                    }
                };
                if opts.keep_edges {
                    g.edges.push(Edge {
                        from,
                        trans: s.trans,
                        to,
                    });
                }
            }
        }
        frontier = next_frontier;
    }
    g
}

/// Outcome of a goal-directed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Search {
    Found,
    Exhausted,
    Truncated,
}

/// Breadth-first search for a state satisfying `goal`, stopping early.
/// States satisfying `hopeless` are known not to lead to a goal and are not
/// expanded.
pub(crate) fn search(
    c: &Compiled,
    start: State,
    bounds: &ExplorationBounds,
    omega: Option<&[bool]>,
    goal: impl Fn(&[u32]) -> bool,
    hopeless: impl Fn(&[u32]) -> bool,
) -> Search {
    if goal(&start) {
        return Search::Found;
    }
    if hopeless(&start) {
        return Search::Exhausted;
    }
    let mut seen: rustc_hash::FxHashSet<State> = Default::default();
    seen.insert(start.clone());
    let mut queue = std::collections::VecDeque::from([start]);
    let mut truncated = false;
    while let Some(s) = queue.pop_front() {
        let (list, cut) = c.successors(&s, bounds, omega);
        truncated |= cut;
        for succ in list {
            if seen.contains(&succ.next) {
                continue;
            }
            if goal(&succ.next) {
                return Search::Found;
            }
            if hopeless(&succ.next) {
                continue;
            }
            if seen.len() >= bounds.max_states {
                truncated = true;
                continue;
            }
            seen.insert(succ.next.clone());
            queue.push_back(succ.next);
        }
    }
    if truncated {
        Search::Truncated
    } else {
        Search::Exhausted
    }
}
