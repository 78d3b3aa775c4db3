//! Seeded random nets for property tests, benchmarks and the acceptance suite.
//!
//! OC WF-nets are built per type from random block-structured processes
//! (sequence, exclusive choice, parallel split, loop) over a shared pool of
//! activity labels, then fused by synchronous composition. Some transfer
//! transitions get variable arcs and some types are replicated.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::marking::Marking;
use crate::model::{as_wf_net, ActivityLabel, ArcWeight, ObjectType, OcNet, PtNet};
use crate::transforms::{replicate, sync_compose};

/// Shape limits of generated OC WF-nets.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_types: usize,
    pub max_places_per_type: usize,
    /// Size of the activity pool shared by all types.
    pub labels: usize,
    /// Probability that an eligible transition gets variable arcs.
    pub var_prob: f64,
    /// Probability that a type's arc weights are doubled.
    pub replicate_prob: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_types: 3,
            max_places_per_type: 8,
            labels: 6,
            var_prob: 0.25,
            replicate_prob: 0.15,
        }
    }
}

#[derive(Debug, Clone)]
enum Block {
    Act(String),
    Tau,
    Seq(Box<Block>, Box<Block>),
    Xor(Box<Block>, Box<Block>),
    And(Box<Block>, Box<Block>),
    Loop(Box<Block>, Box<Block>),
}

impl Block {
    /// Places added beyond source and sink.
    fn inner_places(&self) -> usize {
        match self {
            Block::Act(_) | Block::Tau => 0,
            Block::Seq(a, b) => 1 + a.inner_places() + b.inner_places(),
            Block::Xor(a, b) => a.inner_places() + b.inner_places(),
            Block::And(a, b) => 4 + a.inner_places() + b.inner_places(),
            Block::Loop(a, b) => 2 + a.inner_places() + b.inner_places(),
        }
    }
}

fn random_block(rng: &mut StdRng, labels: &mut Vec<String>, depth: u32) -> Block {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        return match labels.pop() {
            Some(a) if rng.gen_bool(0.9) => Block::Act(a),
            Some(a) => {
                labels.push(a);
                Block::Tau
            }
            None => Block::Tau,
        };
    }
    let mut sub = |rng: &mut StdRng| Box::new(random_block(rng, labels, depth - 1));
    let a = sub(rng);
    let b = sub(rng);
    match rng.gen_range(0..4) {
        0 => Block::Seq(a, b),
        1 => Block::Xor(a, b),
        2 => Block::And(a, b),
        _ => Block::Loop(a, b),
    }
}

struct Builder {
    net: OcNet,
    ty: ObjectType,
    next: usize,
}

impl Builder {
    fn place(&mut self) -> String {
        let id = format!("{}_{}", self.ty, self.next);
        self.next += 1;
        self.net.add_place(id.clone(), self.ty.clone()).expect("fresh place");
        id
    }

    fn trans(&mut self, label: Option<&str>, from: &[&str], to: &[&str]) {
        let (id, label) = match label {
            Some(a) => (a.to_owned(), ActivityLabel::visible(a)),
            None => {
                self.next += 1;
                (format!("{}_tau{}", self.ty, self.next), ActivityLabel::Silent)
            }
        };
        self.net.add_transition(id.clone(), label).expect("fresh transition");
        for p in from {
            self.net.add_arc(p, &id, ArcWeight::ONE).expect("arc");
        }
        for p in to {
            self.net.add_arc(&id, p, ArcWeight::ONE).expect("arc");
        }
    }

    fn build(&mut self, b: &Block, from: &str, to: &str) {
        match b {
            Block::Act(a) => self.trans(Some(a), &[from], &[to]),
            Block::Tau => self.trans(None, &[from], &[to]),
            Block::Seq(x, y) => {
                let m = self.place();
                self.build(x, from, &m);
                self.build(y, &m, to);
            }
            Block::Xor(x, y) => {
                self.build(x, from, to);
                self.build(y, from, to);
            }
            Block::And(x, y) => {
                let (p1, p2, q1, q2) = (self.place(), self.place(), self.place(), self.place());
                self.trans(None, &[from], &[&p1, &p2]);
                self.trans(None, &[&q1, &q2], &[to]);
                self.build(x, &p1, &q1);
                self.build(y, &p2, &q2);
            }
            Block::Loop(x, y) => {
                let (a, b) = (self.place(), self.place());
                self.trans(None, &[from], &[&a]);
                self.build(x, &a, &b);
                self.trans(None, &[&b], &[to]);
                self.build(y, &b, &a);
            }
        }
    }
}

/// A single-type WF-net for `ty` from a random block structure; its visible
/// transitions are named after their labels.
fn type_net(rng: &mut StdRng, ty: &str, pool: &[String], max_places: usize) -> OcNet {
    loop {
        let mut labels: Vec<String> = pool.to_vec();
        labels.shuffle(rng);
        let block = random_block(rng, &mut labels, 3);
        if block.inner_places() + 2 > max_places {
            continue;
        }
        let mut b = Builder {
            net: OcNet::new(ty),
            ty: ObjectType::new(ty),
            next: 0,
        };
        b.net.add_type(ty).expect("type");
        let (src, snk) = (format!("{ty}_in"), format!("{ty}_out"));
        b.net.add_place(src.clone(), ty).expect("source");
        b.net.add_place(snk.clone(), ty).expect("sink");
        b.build(&block, &src, &snk);
        return b.net;
    }
}

/// A valid OC WF-net drawn from `seed`.
pub fn random_oc_wf_net(seed: u64, cfg: &GenConfig) -> OcNet {
    let mut rng = StdRng::seed_from_u64(seed);
    let pool: Vec<String> = (0..cfg.labels).map(|i| format!("a{i}")).collect();
    let k = rng.gen_range(1..=cfg.max_types.max(1));
    let mut net: Option<OcNet> = None;
    for i in 0..k {
        let ty = format!("d{}", i + 1);
        let mut part = type_net(&mut rng, &ty, &pool, cfg.max_places_per_type.max(2));
        if rng.gen_bool(cfg.replicate_prob) {
            part = replicate(&part, 2).expect("positive factor");
        }
        net = Some(match net {
            None => part,
            Some(n) => sync_compose(&n, &part).expect("disjoint types, unique labels"),
        });
    }
    let mut net = net.expect("at least one type");
    net.set_name(format!("gen{seed}"));

    let candidates: Vec<(String, String, String)> = net
        .transitions()
        .filter(|t| !t.label.is_silent())
        .flat_map(|t| {
            net.types()
                .filter_map(|ty| {
                    let ins: Vec<_> = net.inputs_of(&t.id).filter(|(p, _)| net.type_of(p) == Some(ty)).collect();
                    let outs: Vec<_> = net.outputs_of(&t.id).filter(|(p, _)| net.type_of(p) == Some(ty)).collect();
                    match (ins.as_slice(), outs.as_slice()) {
                        ([(p, ArcWeight::Nat(a))], [(q, ArcWeight::Nat(b))]) if a.get() == 1 && b.get() == 1 => {
                            Some((t.id.clone(), (*p).to_owned(), (*q).to_owned()))
                        }
                        _ => None,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    for (t, p, q) in candidates {
        if rng.gen_bool(cfg.var_prob) {
            net.put_arc(&p, &t, Some(ArcWeight::Var));
            net.put_arc(&t, &q, Some(ArcWeight::Var));
        }
    }
    debug_assert!(net.validate().is_empty());
    net
}

/// One token in every source place.
pub fn source_marking(net: &OcNet) -> Marking {
    net.types()
        .filter_map(|ty| net.source_sink(ty))
        .map(|(src, _)| (src, 1))
        .collect()
}

/// An arbitrary single-type P/T net with up to the given numbers of places
/// and transitions and weights in `1..=max_weight`.
pub fn random_pt_net(seed: u64, max_places: usize, max_transitions: usize, max_weight: u32) -> PtNet {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut net = OcNet::new(format!("pt{seed}"));
    net.add_type("d").expect("type");
    let np = rng.gen_range(1..=max_places.max(1));
    let nt = rng.gen_range(1..=max_transitions.max(1));
    for i in 0..np {
        net.add_place(format!("p{i}"), "d").expect("place");
    }
    for j in 0..nt {
        let t = format!("t{j}");
        let label = if rng.gen_bool(0.2) {
            ActivityLabel::Silent
        } else {
            ActivityLabel::visible(format!("a{}", rng.gen_range(0..3)))
        };
        net.add_transition(t.clone(), label).expect("transition");
        for i in 0..np {
            let p = format!("p{i}");
            if rng.gen_bool(0.35) {
                let w = ArcWeight::nat(rng.gen_range(1..=max_weight.max(1))).expect("positive");
                net.add_arc(&p, &t, w).expect("arc");
            }
            if rng.gen_bool(0.35) {
                let w = ArcWeight::nat(rng.gen_range(1..=max_weight.max(1))).expect("positive");
                net.add_arc(&t, &p, w).expect("arc");
            }
        }
    }
    PtNet::try_from(net).expect("single type, no variable arcs")
}

/// A single-type WF-net with at most `max_places` places: a random block
/// structure with up to `extra_arcs` additional arcs of weight one or two,
/// which often makes it unsound.
pub fn random_wf_net(seed: u64, max_places: usize, extra_arcs: usize) -> PtNet {
    let mut rng = StdRng::seed_from_u64(seed);
    let pool: Vec<String> = (0..4).map(|i| format!("a{i}")).collect();
    loop {
        let mut net = type_net(&mut rng, "d", &pool, max_places.max(2));
        net.set_name(format!("wf{seed}"));
        let places: Vec<String> = net.places().map(|p| p.id.clone()).collect();
        let transitions: Vec<String> = net.transitions().map(|t| t.id.clone()).collect();
        for _ in 0..rng.gen_range(0..=extra_arcs) {
            let p = places.choose(&mut rng).expect("places");
            let t = transitions.choose(&mut rng).expect("transitions");
            let w = ArcWeight::nat(rng.gen_range(1..=2)).expect("positive");
            let _ = if rng.gen_bool(0.5) {
                net.add_arc(p, t, w)
            } else {
                net.add_arc(t, p, w)
            };
        }
        let pt = PtNet::try_from(net).expect("single type, no variable arcs");
        if as_wf_net(&pt).is_ok() {
            return pt;
        }
    }
}

/// A marking with `0..=max_tokens` tokens per place.
pub fn random_marking(seed: u64, net: &OcNet, max_tokens: u64) -> Marking {
    let mut rng = StdRng::seed_from_u64(seed);
    net.places().map(|p| (p.id.clone(), rng.gen_range(0..=max_tokens))).collect()
}
