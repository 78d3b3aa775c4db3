//! Differential tests against brute-force reference implementations.

mod common;

use std::collections::BTreeSet;

use common::{classical_soundness_oracle, PtOracle};
use ocwf::generate::{random_marking, random_pt_net, random_wf_net};
use ocwf::semantics::{explore, fire, is_enabled};
use ocwf::soundness::{check_wf_soundness, Status};
use ocwf::{ExplorationBounds, FiringEvent, Marking};

#[test]
fn fire_agrees_with_token_arithmetic() {
    for seed in 0..300 {
        let net = random_pt_net(seed, 5, 5, 3);
        let o = PtOracle::new(&net);
        for k in 0..5 {
            let m = random_marking(seed * 31 + k, &net, 4);
            let v = o.vector(&m);
            for (i, (t, ..)) in o.trans.iter().enumerate() {
                let ev = FiringEvent::plain(t.as_str());
                let expected = o.fire(&v, i).map(|w| o.marking(&w));
                assert_eq!(is_enabled(&net, &m, &ev).unwrap(), expected.is_some(), "seed {seed} {t} at {m}");
                assert_eq!(fire(&net, &m, &ev).ok(), expected, "seed {seed} {t} at {m}");
            }
        }
    }
}

#[test]
fn explore_agrees_with_brute_force_reachability() {
    let bounds = ExplorationBounds::new(100_000, 5, 4).unwrap();
    for seed in 0..200 {
        let net = random_pt_net(seed, 5, 5, 3);
        let m = random_marking(seed + 1000, &net, 4);
        let o = PtOracle::new(&net);
        let r = o.reach(o.vector(&m), 5, 100_000).unwrap();
        let lts = explore(&net, &m, &bounds).unwrap();
        assert_eq!(lts.truncated, r.truncated, "seed {seed}");
        let states: BTreeSet<Marking> = lts.states.iter().cloned().collect();
        let expected: BTreeSet<Marking> = r.states.iter().map(|v| o.marking(v)).collect();
        assert_eq!(states, expected, "seed {seed}");
        let edges: BTreeSet<_> = lts
            .edges
            .iter()
            .map(|(a, l, b)| (lts.states[*a].clone(), l.clone(), lts.states[*b].clone()))
            .collect();
        let expected: BTreeSet<_> = r.edges.iter().map(|(a, l, b)| (o.marking(a), l.clone(), o.marking(b))).collect();
        assert_eq!(edges, expected, "seed {seed}");
    }
}

#[test]
fn classical_soundness_agrees_with_definition() {
    let (mut compared, mut sound, mut unsound) = (0, 0, 0);
    for seed in 0..600 {
        let net = random_wf_net(seed, 5, 4);
        let Some(expected) = classical_soundness_oracle(&net, 10) else { continue };
        let v = check_wf_soundness(&net).unwrap();
        compared += 1;
        if expected {
            sound += 1;
            assert_eq!(v.status, Status::Sound, "seed {seed}");
        } else {
            unsound += 1;
            assert_eq!(v.status, Status::Unsound, "seed {seed}");
            let w = v.witness.unwrap();
            assert_eq!(w.replay(&net).unwrap(), w.marking, "seed {seed}");
        }
    }
    assert!(compared >= 300, "only {compared} nets compared");
    assert!(sound >= 50 && unsound >= 50, "{sound} sound, {unsound} unsound");
}
