//! Checks on the example nets of the university scenario and the
//! construction examples.

use ocwf::equivalence::{check_bisim, is_bisimulation, Mode};
use ocwf::fixtures::{self, NetBuilder};
use ocwf::generate::source_marking;
use ocwf::semantics::explore;
use ocwf::soundness::{
    check_object_soundness, check_oc_soundness, check_projection_soundness, check_wf_soundness, OcBounds, Reason,
    Status,
};
use ocwf::transforms::{eliminate_variable_arcs, replicate, sync_compose, tracking_extension};
use ocwf::{ActivityLabel, ExplorationBounds, Marking, ObjectType, PtNet};

fn d(s: &str) -> ObjectType {
    ObjectType::new(s)
}

#[test]
fn participants_are_sound_workflow_nets() {
    for net in [fixtures::fig1a_member(), fixtures::fig1b_leader(), fixtures::fig1c_project()] {
        let v = check_wf_soundness(&PtNet::try_from(net.clone()).unwrap()).unwrap();
        assert_eq!(v.status, Status::Sound, "{}", net.name());
        let r = check_oc_soundness(&net, &OcBounds::default()).unwrap();
        assert_eq!(r.aggregate, Status::Sound, "{}", net.name());
    }
}

#[test]
fn university_net_is_object_sound() {
    let net = fixtures::fig2();
    let r = check_oc_soundness(&net, &OcBounds::default()).unwrap();
    for ty in ["leader", "member", "project"] {
        let v = &r.types[&d(ty)];
        assert_eq!(v.status, Status::Sound, "{ty}");
        assert!(!v.truncated);
    }
    for (ty, v) in check_projection_soundness(&net).unwrap() {
        assert_eq!(v.status, Status::Sound, "{ty}");
    }
}

#[test]
fn university_net_from_participants_is_an_oc_workflow_net() {
    let built = sync_compose(
        &sync_compose(&replicate(&fixtures::fig1a_member(), 2).unwrap(), &fixtures::fig1b_leader()).unwrap(),
        &fixtures::fig1c_project(),
    )
    .unwrap();
    assert_eq!(built.is_oc_wf_net().unwrap(), vec![]);
    for (p, t) in [("pm2", "attend_im"), ("pm3", "present_project"), ("pm4", "complete")] {
        assert_eq!(built.arc(p, t).and_then(|w| w.as_nat()), Some(2), "{p} -> {t}");
    }
}

#[test]
fn composed_chains_are_dead_and_unsound() {
    let net = sync_compose(&fixtures::fig5_chain1(), &fixtures::fig5_chain2()).unwrap();
    let m = Marking::from_pairs([("in1", 1), ("in2", 1)]);
    let lts = explore(&net, &m, &ExplorationBounds::default()).unwrap();
    assert_eq!((lts.num_states(), lts.edges.len()), (1, 0));
    let r = check_oc_soundness(&net, &OcBounds::default()).unwrap();
    assert_eq!(r.aggregate, Status::Unsound);
    for v in r.types.values() {
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.reason, Reason::NoCompletion);
        assert!(w.trace.is_empty());
    }
}

#[test]
fn fig6_verdicts() {
    let net = fixtures::fig6();
    let bounds = OcBounds::default();

    // o2 creates d1 objects out of nothing, so a second tracked token can
    // appear and the tracked component can never finish cleanly
    let v1 = check_object_soundness(&net, &d("d1"), &bounds).unwrap();
    assert_eq!(v1.status, Status::Unsound);
    let w = v1.witness.as_ref().unwrap();
    assert_eq!(w.reason, Reason::NoCompletion);
    assert_eq!(w.replay(&net).unwrap(), w.marking);
    assert_eq!(w.marking.get("p2'"), 2);
    assert_eq!(w.trace.len(), 4);

    let v2 = check_object_soundness(&net, &d("d2"), &bounds).unwrap();
    assert_eq!(v2.status, Status::Sound);

    let proj = check_projection_soundness(&net).unwrap();
    assert_eq!(proj[&d("d2")].status, Status::Sound);
    let p1 = &proj[&d("d1")];
    assert_eq!(p1.status, Status::Unsound);
    let w = p1.witness.as_ref().unwrap();
    assert_eq!(w.reason, Reason::Unbounded);
    assert_eq!(w.marking, Marking::from_pairs([("in1", 1), ("p2", 1)]));
}

#[test]
fn fig6_tracking_extensions_are_weakly_bisimilar() {
    let net = fixtures::fig6();
    let bounds = ExplorationBounds::new(100_000, 6, 3).unwrap();
    for ty in ["d1", "d2"] {
        let tr = tracking_extension(&net, &d(ty)).unwrap();
        let (src, _) = net.source_sink(&d(ty)).unwrap();
        for extra in 0..=1 {
            let mut m = source_marking(&net);
            m.add(src.clone(), extra);
            let mut moved = m.clone();
            moved.set(src.clone(), extra);
            let moved = tr.with_tracked(&moved, &src).unwrap();
            let l1 = explore(&net, &m, &bounds).unwrap();
            let l2 = explore(&tr.net, &moved, &bounds).unwrap();
            assert!(!l1.truncated && !l2.truncated);
            let r = check_bisim(&l1, &l2, Mode::Weak);
            assert!(r.related, "{ty} with {extra} extra objects: {:?}", r.distinction);
            assert!(is_bisimulation(&l1, &l2, &r.relation(), Mode::Weak));
        }
    }
}

#[test]
fn tracking_cannot_mix_branches_of_different_objects() {
    // d objects split into two branches that are joined again; the branch
    // steps x and y synchronise with a single e object, so each fires once
    let net = NetBuilder::new("mix")
        .ty("d")
        .ty("e")
        .places("d", &["in", "p1", "p2", "q1", "q2", "out"])
        .places("e", &["e_in", "e1", "e_out"])
        .tau("s")
        .trans("x", "x")
        .trans("y", "y")
        .trans("j", "j")
        .chain(&["in", "s", "p1", "x", "q1", "j", "out"])
        .chain(&["s", "p2", "y", "q2", "j"])
        .chain(&["e_in", "x", "e1", "y", "e_out"])
        .build();
    assert_eq!(net.is_oc_wf_net().unwrap(), vec![]);
    let m = Marking::from_pairs([("in", 2), ("e_in", 1)]);
    let tr = tracking_extension(&net, &d("d")).unwrap();
    let moved = tr.with_tracked(&Marking::from_pairs([("in", 1), ("e_in", 1)]), "in").unwrap();
    let bounds = ExplorationBounds::default();
    let l1 = explore(&net, &m, &bounds).unwrap();
    let l2 = explore(&tr.net, &moved, &bounds).unwrap();
    let r = check_bisim(&l1, &l2, Mode::Weak);
    // after x on one object and y on the other, the net can join the two
    // branches; in the tracking extension a tracked and an untracked branch
    // token cannot be joined
    assert!(!r.related);
    let dist = r.distinction.unwrap();
    let visible: Vec<_> = dist.trace.iter().filter(|a| !a.is_silent()).cloned().collect();
    assert_eq!(visible, vec![ActivityLabel::visible("x"), ActivityLabel::visible("y")]);
    assert!(dist.left_labels.contains(&ActivityLabel::visible("j")));
    assert!(!dist.right_labels.contains(&ActivityLabel::visible("j")));

    // with a single object the construction is exact
    let l1 = explore(&net, &Marking::from_pairs([("in", 1), ("e_in", 1)]), &bounds).unwrap();
    let one = tr.with_tracked(&Marking::singleton("e_in"), "in").unwrap();
    let l2 = explore(&tr.net, &one, &bounds).unwrap();
    assert!(check_bisim(&l1, &l2, Mode::Weak).related);
}

#[test]
fn elimination_with_single_transfers() {
    let net = fixtures::fig4a();
    let e = eliminate_variable_arcs(&net).unwrap();
    let m = Marking::from_pairs([("p1", 1), ("p3", 1)]);
    let bounds = ExplorationBounds::default();
    let l1 = explore(&net, &m, &bounds).unwrap();
    let l2 = explore(&e.net, &e.lift(&m), &bounds).unwrap();
    let r = check_bisim(&l1, &l2, Mode::Weak);
    assert!(r.related);
    assert!(is_bisimulation(&l1, &l2, &r.relation(), Mode::Weak));
    assert!(!check_bisim(&l1, &l2, Mode::Strong).related);
}

#[test]
fn elimination_commits_before_checking_other_inputs() {
    // with two tokens in p1, after `a` moved one of them p3 is empty, yet
    // start_t1 still fires and the net gets stuck holding the lock, while
    // the original can go on with `b`
    let net = fixtures::fig4a();
    let e = eliminate_variable_arcs(&net).unwrap();
    let m = Marking::from_pairs([("p1", 2), ("p3", 1)]);
    let bounds = ExplorationBounds::default();
    let l1 = explore(&net, &m, &bounds).unwrap();
    let l2 = explore(&e.net, &e.lift(&m), &bounds).unwrap();
    assert!(!l1.truncated && !l2.truncated);
    let r = check_bisim(&l1, &l2, Mode::Weak);
    assert!(!r.related);
    let dist = r.distinction.unwrap();
    assert_eq!(dist.trace, vec![ActivityLabel::visible("a")]);
    assert_eq!(l2.states[dist.right_state], Marking::from_pairs([("lock_t1", 1), ("p1", 1), ("p2", 1), ("p4", 1)]));
    assert!(dist.left_labels.contains(&ActivityLabel::visible("b")));
    assert!(!dist.right_labels.contains(&ActivityLabel::visible("b")));
}
