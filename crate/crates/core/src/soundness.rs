//! Classical workflow-net soundness (exact) and object-centric soundness
//! (bounded, three-valued).
//!
//! Classical soundness explores the reachability graph from `[in]` and stops
//! at the first marking that strictly covers one of its ancestors: such a
//! marking proves unboundedness, and without one the graph is finite. Object
//! soundness for a type `d` works on the tracking extension for `d`: from
//! every initial marking up to `init_bound` tokens per source place, every
//! reachable marking must be able to bring the tracked token to its sink,
//! possibly after adding tokens to the source places.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::engine::{self, Compiled, Search, State};
use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::model::{as_wf_net, ObjectType, OcNet, PtNet};
use crate::par;
use crate::semantics::{run, ExplorationBounds, FiringEvent};
use crate::transforms::{project_one_safe, tracking_extension, Tracking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Sound,
    Unsound,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sound => "sound",
            Status::Unsound => "unsound",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// A reachable marking strictly covers an earlier marking on its path.
    Unbounded,
    /// `[out]` is not reachable from the witness marking.
    NoOptionToComplete,
    /// The witness marking marks the sink together with other places.
    ImproperCompletion,
    /// A transition is never enabled.
    DeadTransition,
    /// The tracked object cannot reach its sink, whatever is injected.
    NoCompletion,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::Unbounded => "unbounded",
            Reason::NoOptionToComplete => "no option to complete",
            Reason::ImproperCompletion => "improper completion",
            Reason::DeadTransition => "dead transition",
            Reason::NoCompletion => "no completion",
        })
    }
}

/// The net a witness trace runs in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    /// The checked net itself.
    Net,
    /// The 1-safe projection on a type.
    Projection { ty: ObjectType },
    /// The tracking extension for `ty` with tracked type `fresh`.
    Tracking { ty: ObjectType, fresh: ObjectType },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub reason: Reason,
    pub subject: Subject,
    pub initial: Marking,
    pub trace: Vec<FiringEvent>,
    pub marking: Marking,
    /// The dead transition, for [`Reason::DeadTransition`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transition: Option<String>,
}

impl Witness {
    /// Re-executes the trace in the subject net built from `net`; returns
    /// the reached marking, which equals [`Witness::marking`] for every
    /// witness produced by this module.
    pub fn replay(&self, net: &OcNet) -> Result<Marking> {
        let subject = match &self.subject {
            Subject::Net => net.clone(),
            Subject::Projection { ty } => project_one_safe(net, ty)?.into_inner(),
            Subject::Tracking { ty, .. } => tracking_extension(net, ty)?.net,
        };
        run(&subject, &self.initial, &self.trace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Markings explored by the main exploration.
    pub states: usize,
    /// Whether a bound cut some exploration or search.
    pub truncated: bool,
    /// Why the verdict is `Unknown`, or the scope of a bounded `Sound`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn sound(states: usize, detail: Option<String>) -> Verdict {
        Verdict {
            status: Status::Sound,
            witness: None,
            states,
            truncated: false,
            detail,
        }
    }

    fn unsound(w: Witness, states: usize, truncated: bool) -> Verdict {
        Verdict {
            status: Status::Unsound,
            witness: Some(w),
            states,
            truncated,
            detail: None,
        }
    }

    fn unknown(states: usize, detail: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Unknown,
            witness: None,
            states,
            truncated: true,
            detail: Some(detail.into()),
        }
    }
}

/// Bounds of the object-soundness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OcBounds {
    /// Maximum initial tokens per source place besides the tracked one.
    pub init_bound: u64,
    /// Maximum tokens added per source place when searching for completion.
    pub inject_bound: u64,
    pub explore: ExplorationBounds,
}

impl Default for OcBounds {
    fn default() -> Self {
        OcBounds {
            init_bound: 2,
            inject_bound: 2,
            explore: ExplorationBounds::default(),
        }
    }
}

impl OcBounds {
    pub fn new(init_bound: u64, inject_bound: u64, explore: ExplorationBounds) -> Result<Self> {
        if init_bound == 0 || inject_bound == 0 {
            return Err(Error::Precondition("soundness bounds must be positive".into()));
        }
        Ok(OcBounds {
            init_bound,
            inject_bound,
            explore,
        })
    }
}

fn trace_events(c: &Compiled, g: &engine::Graph, s: usize) -> Vec<FiringEvent> {
    g.trace(s).into_iter().map(|(t, m)| c.event(t, &m)).collect()
}

/// Bounds used by [`check_wf_soundness`]: place capacity is effectively
/// unlimited since strict-cover detection keeps the exploration finite.
pub fn classical_bounds() -> ExplorationBounds {
    ExplorationBounds {
        place_cap: u64::from(u32::MAX),
        ..ExplorationBounds::default()
    }
}

/// Exact classical soundness of a WF-net.
pub fn check_wf_soundness(net: &PtNet) -> Result<Verdict> {
    check_wf_soundness_with(net, &classical_bounds())
}

/// [`check_wf_soundness`] with explicit exploration bounds; hitting a bound
/// yields `Unknown`.
pub fn check_wf_soundness_with(net: &PtNet, bounds: &ExplorationBounds) -> Result<Verdict> {
    let view = as_wf_net(net)?;
    Ok(wf_core(net, &view.source, &view.sink, bounds, Subject::Net))
}

fn wf_core(net: &OcNet, source: &str, sink: &str, bounds: &ExplorationBounds, subject: Subject) -> Verdict {
    let c = Compiled::new(net);
    let initial = Marking::singleton(source);
    let root = c.state(&initial);
    let g = engine::explore(
        &c,
        &[root],
        bounds,
        &engine::Options {
            keep_edges: true,
            detect_cover: true,
            omega: None,
        },
    );
    let n = g.states.len();
    let witness = |reason, s: usize, transition| Witness {
        reason,
        subject: subject.clone(),
        initial: initial.clone(),
        trace: trace_events(&c, &g, s),
        marking: c.marking(&g.states[s]),
        transition,
    };
    if let Some((_, desc)) = g.cover {
        return Verdict::unsound(witness(Reason::Unbounded, desc, None), n, g.truncated);
    }
    if g.truncated {
        return Verdict::unknown(n, format!("exploration stopped at {n} markings"));
    }

    let out = c.index[sink];
    let final_state = c.state(&Marking::singleton(sink));
    let can_complete = match g.index.get(&final_state) {
        Some(&f) => backward_reach(n, &g.edges, [f]),
        None => vec![false; n],
    };
    for s in 0..n {
        if !can_complete[s] {
            return Verdict::unsound(witness(Reason::NoOptionToComplete, s, None), n, false);
        }
        if g.states[s][out] > 0 && g.states[s] != final_state {
            return Verdict::unsound(witness(Reason::ImproperCompletion, s, None), n, false);
        }
    }
    let mut fired = vec![false; c.trans.len()];
    for e in &g.edges {
        fired[e.trans] = true;
    }
    if let Some(t) = fired.iter().position(|f| !f) {
        return Verdict::unsound(
            witness(Reason::DeadTransition, g.root[0], Some(c.trans[t].id.clone())),
            n,
            false,
        );
    }
    Verdict::sound(n, None)
}

/// States from which one of `targets` is reachable along `edges`.
fn backward_reach(n: usize, edges: &[engine::Edge], targets: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        pred[e.to].push(e.from);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for t in targets {
        if !seen[t] {
            seen[t] = true;
            queue.push_back(t);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &pred[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn require_oc_wf(net: &OcNet) -> Result<()> {
    let violations = net.is_oc_wf_net()?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::NotWorkflow(
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// Classical soundness of every 1-safe projection. Source and sink are the
/// type's source and sink places; object-creating transitions of a
/// projection stay in it and make it unbounded.
pub fn check_projection_soundness(net: &OcNet) -> Result<BTreeMap<ObjectType, Verdict>> {
    require_oc_wf(net)?;
    let types: Vec<ObjectType> = net.types().cloned().collect();
    let verdicts = par::map_coarse(&types, |ty| -> Result<Verdict> {
        let proj = project_one_safe(net, ty)?;
        let (src, snk) = net.source_sink(ty).expect("workflow types have a source and sink");
        Ok(wf_core(
            &proj,
            &src,
            &snk,
            &classical_bounds(),
            Subject::Projection { ty: ty.clone() },
        ))
    });
    types.into_iter().zip(verdicts).map(|(t, v)| Ok((t, v?))).collect()
}

/// No dead transitions in the 1-safe projection from `[in_d]`.
fn dead_transition_check(net: &OcNet, d: &ObjectType, bounds: &ExplorationBounds) -> Result<Option<Verdict>> {
    let proj = project_one_safe(net, d)?;
    let (src, _) = net.source_sink(d).expect("workflow type");
    let c = Compiled::new(&proj);
    let initial = Marking::singleton(src);
    let g = engine::explore(
        &c,
        &[c.state(&initial)],
        bounds,
        &engine::Options {
            keep_edges: true,
            ..Default::default()
        },
    );
    let mut fired = vec![false; c.trans.len()];
    for e in &g.edges {
        fired[e.trans] = true;
    }
    let Some(t) = fired.iter().position(|f| !f) else {
        return Ok(None);
    };
    let n = g.states.len();
    if g.truncated {
        return Ok(Some(Verdict::unknown(
            n,
            format!(
                "projection exploration was cut before `{}` could be shown live",
                c.trans[t].id
            ),
        )));
    }
    Ok(Some(Verdict::unsound(
        Witness {
            reason: Reason::DeadTransition,
            subject: Subject::Projection { ty: d.clone() },
            trace: vec![],
            marking: initial.clone(),
            initial,
            transition: Some(c.trans[t].id.clone()),
        },
        n,
        false,
    )))
}

enum Branch {
    Completes,
    Stuck,
    Undecided(&'static str),
}

/// Bounded object soundness for type `d`.
pub fn check_object_soundness(net: &OcNet, d: &ObjectType, bounds: &OcBounds) -> Result<Verdict> {
    if !net.has_type(d) {
        return Err(Error::not_found("type", d.as_str()));
    }
    require_oc_wf(net)?;
    if bounds.init_bound == 0 || bounds.inject_bound == 0 {
        return Err(Error::Precondition("soundness bounds must be positive".into()));
    }
    let dead = dead_transition_check(net, d, &bounds.explore)?;
    if let Some(v) = &dead {
        if v.status == Status::Unsound {
            return Ok(dead.expect("checked"));
        }
    }

    let tr = tracking_extension(net, d)?;
    let (main, n) = tracking_search(net, &tr, bounds);
    Ok(match (main, dead) {
        (v, _) if v.status == Status::Unsound => v,
        (v, _) if v.status == Status::Unknown => v,
        (_, Some(dead_unknown)) => dead_unknown,
        (_, None) => Verdict::sound(
            n,
            Some(format!(
                "up to init bound {}, inject bound {}, {} markings",
                bounds.init_bound, bounds.inject_bound, bounds.explore.max_states
            )),
        ),
    })
}

fn tracking_search(net: &OcNet, tr: &Tracking, bounds: &OcBounds) -> (Verdict, usize) {
    let ext = &tr.net;
    let c = Compiled::new(ext);
    let (in_t, out_t) = tr.tracking_source_sink().expect("tracking component is a workflow");
    let (in_t, out_t) = (c.index[&in_t], c.index[&out_t]);
    let tracking_places: Vec<usize> = ext
        .places_of_type(&tr.fresh)
        .map(|p| c.index[&p.id])
        .filter(|&i| i != in_t && i != out_t)
        .collect();
    let target = |s: &[u32]| s[out_t] == 1 && tracking_places.iter().all(|&i| s[i] == 0);
    // Tracked tokens outside the tracking source. When no transition can
    // lower their number (the tracked object is duplicated or created by
    // some transitions), more than one of them can never complete.
    let mut counted = vec![false; c.places.len()];
    for &i in tracking_places.iter().chain([&out_t]) {
        counted[i] = true;
    }
    let effect = |t: &engine::CTrans| -> i64 {
        let ins: i64 = t.nat_in.iter().filter(|(p, _)| counted[*p]).map(|(_, k)| i64::from(*k)).sum();
        let outs: i64 = t.nat_out.iter().filter(|(p, _)| counted[*p]).map(|(_, k)| i64::from(*k)).sum();
        outs - ins
    };
    let monotone = c.trans.iter().all(|t| effect(t) >= 0 && t.vars.iter().all(|v| counted[v.input] == counted[v.output]));
    let hopeless = |s: &[u32]| {
        monotone && s.iter().zip(&counted).filter(|(_, c)| **c).map(|(n, _)| u64::from(*n)).sum::<u64>() > 1
    };
    let sources: Vec<usize> = net
        .types()
        .map(|ty| c.index[&net.source_sink(ty).expect("workflow type").0])
        .collect();

    // every combination of 0..=init_bound tokens per source, plus the tracked token
    let init = u32::try_from(bounds.init_bound).unwrap_or(u32::MAX);
    let mut roots: Vec<State> = Vec::new();
    let mut counts = vec![0u32; sources.len()];
    loop {
        let mut s = vec![0u32; c.places.len()];
        s[in_t] = 1;
        for (&p, &k) in sources.iter().zip(&counts) {
            s[p] = k;
        }
        roots.push(s.into_boxed_slice());
        match counts.iter().rposition(|&x| x < init) {
            Some(i) => {
                counts[i] += 1;
                counts[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
            None => break,
        }
    }

    let g = engine::explore(
        &c,
        &roots,
        &bounds.explore,
        &engine::Options {
            keep_edges: true,
            ..Default::default()
        },
    );
    let n = g.states.len();
    let targets: Vec<usize> = (0..n).filter(|&s| target(&g.states[s])).collect();
    let good = backward_reach(n, &g.edges, targets);
    let pending: Vec<usize> = (0..n).filter(|&s| !good[s]).collect();

    let inject = u32::try_from(bounds.inject_bound).unwrap_or(u32::MAX);
    let mut omega = vec![false; c.places.len()];
    for &p in &sources {
        omega[p] = true;
    }
    let outcomes = par::map(&pending, |&s| {
        let mut start = g.states[s].to_vec();
        for &p in &sources {
            start[p] = start[p].saturating_add(inject);
        }
        if hopeless(&g.states[s]) {
            return Branch::Stuck;
        }
        let injected = engine::search(
            &c,
            start.into_boxed_slice(),
            &bounds.explore,
            None,
            |x| target(x) || g.index.get(x).is_some_and(|&i| good[i]),
            hopeless,
        );
        if injected == Search::Found {
            return Branch::Completes;
        }
        let mut abstract_start = g.states[s].to_vec();
        for &p in &sources {
            abstract_start[p] = 0;
        }
        match engine::search(
            &c,
            abstract_start.into_boxed_slice(),
            &bounds.explore,
            Some(&omega),
            target,
            hopeless,
        ) {
            Search::Exhausted => Branch::Stuck,
            Search::Found => Branch::Undecided("completion needs more injected tokens than the inject bound"),
            Search::Truncated => Branch::Undecided("completion search was cut by exploration bounds"),
        }
    });

    let mut stuck: Option<(Vec<FiringEvent>, usize)> = None;
    let mut undecided: Option<&'static str> = None;
    for (&s, o) in pending.iter().zip(&outcomes) {
        match o {
            Branch::Completes => {}
            Branch::Stuck => {
                let trace = trace_events(&c, &g, s);
                let better = match &stuck {
                    None => true,
                    Some((best, _)) => {
                        let key = |t: &[FiringEvent]| (t.len(), t.iter().map(|e| e.transition.clone()).collect::<Vec<_>>());
                        key(&trace) < key(best)
                    }
                };
                if better {
                    stuck = Some((trace, s));
                }
            }
            Branch::Undecided(why) => {
                undecided.get_or_insert(why);
            }
        }
    }
    let verdict = if let Some((trace, s)) = stuck {
        Verdict::unsound(
            Witness {
                reason: Reason::NoCompletion,
                subject: Subject::Tracking {
                    ty: tr.tracked.clone(),
                    fresh: tr.fresh.clone(),
                },
                initial: c.marking(&g.states[g.root[s]]),
                trace,
                marking: c.marking(&g.states[s]),
                transition: None,
            },
            n,
            g.truncated || undecided.is_some(),
        )
    } else if let Some(why) = undecided {
        Verdict::unknown(n, why)
    } else if g.truncated {
        Verdict::unknown(n, format!("exploration of the tracking extension stopped at {n} markings"))
    } else {
        Verdict::sound(n, None)
    };
    (verdict, n)
}

/// Per-type verdicts and their aggregate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OcReport {
    pub aggregate: Status,
    pub types: BTreeMap<ObjectType, Verdict>,
}

/// Aggregate: `Unsound` if any type is, else `Unknown` if any type is, else `Sound`.
pub fn aggregate<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Status {
    verdicts
        .into_iter()
        .map(|v| match v.status {
            Status::Sound => 0,
            Status::Unknown => 1,
            Status::Unsound => 2,
        })
        .max()
        .map_or(Status::Sound, |k| [Status::Sound, Status::Unknown, Status::Unsound][k])
}

/// Bounded OC-soundness: object soundness for every type, checked in parallel.
pub fn check_oc_soundness(net: &OcNet, bounds: &OcBounds) -> Result<OcReport> {
    require_oc_wf(net)?;
    let types: Vec<ObjectType> = net.types().cloned().collect();
    let verdicts = par::map_coarse(&types, |ty| check_object_soundness(net, ty, bounds));
    let types: BTreeMap<ObjectType, Verdict> = types
        .into_iter()
        .zip(verdicts)
        .map(|(t, v)| Ok((t, v?)))
        .collect::<Result<_>>()?;
    Ok(OcReport {
        aggregate: aggregate(types.values()),
        types,
    })
}
