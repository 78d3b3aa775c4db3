//! Acceptance suite: one line per criterion with its runtime and limit.
//! Exits non-zero when any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::PtOracle;
use ocwf::dsl::{parse, parse_file, serialize, to_dot};
use ocwf::equivalence::{check_bisim, is_bisimulation, Mode};
use ocwf::fixtures;
use ocwf::generate::{random_marking, random_oc_wf_net, random_pt_net, GenConfig};
use ocwf::semantics::{enabled_modes, explore, fire, is_enabled};
use ocwf::soundness::{check_oc_soundness, check_projection_soundness, check_wf_soundness, OcBounds, Reason, Status};
use ocwf::transforms::{
    eliminate_variable_arcs, normalize_tracking_ids, project_one_safe, sync_compose, tracking_extension,
    tracking_extension_with, TrackingNames,
};
use ocwf::{ArcWeight, ExplorationBounds, FiringEvent, Marking, ObjectType, OcNet, PtNet};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn d(s: &str) -> ObjectType {
    ObjectType::new(s)
}

fn corpus_files() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ocwf"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

fn elimination_golden() -> Outcome {
    let net = fixtures::fig4a();
    let e = eliminate_variable_arcs(&net).map_err(|e| e.to_string())?;
    let ids = |n: &OcNet| -> (BTreeSet<String>, BTreeSet<String>) {
        (n.places().map(|p| p.id.clone()).collect(), n.transitions().map(|t| t.id.clone()).collect())
    };
    let (p0, t0) = ids(&net);
    let (p1, t1) = ids(&e.net);
    ensure!(p1.difference(&p0).eq(["lock", "lock_t1"].iter()), "added places {:?}", p1.difference(&p0).collect::<Vec<_>>());
    ensure!(p0.is_subset(&p1), "places were removed");
    ensure!(t1.difference(&t0).eq(["add_t1", "start_t1"].iter()), "added transitions {:?}", t1.difference(&t0).collect::<Vec<_>>());
    ensure!(t0.is_subset(&t1), "transitions were removed");
    for t in ["start_t1", "add_t1"] {
        ensure!(e.net.transition(t).unwrap().label.is_silent(), "{t} is not silent");
    }
    ensure!(
        e.net.arc("lock", "t2") == Some(ArcWeight::ONE) && e.net.arc("t2", "lock") == Some(ArcWeight::ONE),
        "no lock self-loop on t2"
    );
    ensure!(!e.net.has_variable_arcs(), "variable arcs remain");
    let (file, _) = parse(include_str!("../../../corpus/fig4a_eliminated.ocwf")).map_err(|e| e.to_string())?;
    ensure!(file == e.net, "differs from corpus/fig4a_eliminated.ocwf");
    Ok(format!("{} places, {} transitions", e.net.num_places(), e.net.num_transitions()))
}

fn elimination_bisimilarity() -> Outcome {
    let net = fixtures::fig4a();
    let e = eliminate_variable_arcs(&net).map_err(|e| e.to_string())?;
    let bounds = ExplorationBounds::default();
    let mut failed = Vec::new();
    for k in 1..=3 {
        let m = Marking::from_pairs([("p1", k), ("p3", 1)]);
        let l1 = explore(&net, &m, &bounds).map_err(|e| e.to_string())?;
        let l2 = explore(&e.net, &e.lift(&m), &bounds).map_err(|e| e.to_string())?;
        ensure!(!l1.truncated && !l2.truncated, "k={k}: exploration truncated");
        let r = check_bisim(&l1, &l2, Mode::Weak);
        if r.related {
            ensure!(is_bisimulation(&l1, &l2, &r.relation(), Mode::Weak), "k={k}: relation is not a bisimulation");
        } else {
            let dist = r.distinction.unwrap();
            let trace: Vec<String> = dist.trace.iter().map(|a| a.to_string()).collect();
            failed.push(format!(
                "k={k}: after [{}] left {} vs right {} at {}",
                trace.join(" "),
                dist.left_labels.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","),
                dist.right_labels.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","),
                l2.states[dist.right_state]
            ));
        }
    }
    ensure!(failed.is_empty(), "not weakly bisimilar: {}", failed.join("; "));
    Ok("k=1,2,3 weakly bisimilar".into())
}

fn classical_soundness() -> Outcome {
    for net in [fixtures::fig1a_member(), fixtures::fig1b_leader(), fixtures::fig1c_project()] {
        let pt = PtNet::try_from(net.clone()).map_err(|e| e.to_string())?;
        let v = check_wf_soundness(&pt).map_err(|e| e.to_string())?;
        ensure!(v.status == Status::Sound, "{} is {:?}", net.name(), v.status);
    }
    let net = fixtures::duplicating_loop();
    let pt = PtNet::try_from(net.clone()).map_err(|e| e.to_string())?;
    let v = check_wf_soundness(&pt).map_err(|e| e.to_string())?;
    ensure!(v.status == Status::Unsound, "dup_loop is {:?}", v.status);
    let w = v.witness.ok_or("no witness")?;
    ensure!(w.reason == Reason::Unbounded, "dup_loop reason {}", w.reason);
    let reached = w.replay(&net).map_err(|e| e.to_string())?;
    ensure!(reached == w.marking, "witness replays to {reached}, not {}", w.marking);
    Ok(format!("participants sound; dup_loop unbounded at {}", w.marking))
}

fn composition_deadlock() -> Outcome {
    let net = sync_compose(&fixtures::fig5_chain1(), &fixtures::fig5_chain2()).map_err(|e| e.to_string())?;
    let m = Marking::from_pairs([("in1", 1), ("in2", 1)]);
    let bounds = ExplorationBounds::default();
    for t in net.transitions() {
        let modes = enabled_modes(&net, &m, &t.id, &bounds).map_err(|e| e.to_string())?;
        ensure!(modes.is_empty(), "{} is enabled", t.id);
    }
    let r = check_oc_soundness(&net, &OcBounds::new(2, 2, bounds).unwrap()).map_err(|e| e.to_string())?;
    for ty in ["d1", "d2"] {
        let v = &r.types[&d(ty)];
        ensure!(v.status == Status::Unsound, "{ty} is {:?}", v.status);
    }
    Ok("dead at [in1, in2]; d1 and d2 unsound".into())
}

fn tracking_goldens() -> Outcome {
    let net = fixtures::fig6();
    let t1 = tracking_extension(&net, &d("d1")).map_err(|e| e.to_string())?;
    ensure!(t1.duplicates == BTreeSet::from(["o2'".to_owned()]), "d1 duplicates {:?}", t1.duplicates);
    let t2 = tracking_extension(&net, &d("d2")).map_err(|e| e.to_string())?;
    ensure!(
        t2.duplicates == BTreeSet::from(["t1'".to_owned(), "t1''".to_owned()]),
        "d2 duplicates {:?}",
        t2.duplicates
    );
    let expected = [
        (&t1.net, "o2'", "p2'", Some(ArcWeight::ONE)),
        (&t1.net, "o2'", "p2", None),
        (&t1.net, "p1'", "t1'", Some(ArcWeight::ONE)),
        (&t1.net, "p3", "t1'", Some(ArcWeight::Var)),
        (&t2.net, "p3", "t1'", None),
        (&t2.net, "p3'", "t1'", Some(ArcWeight::ONE)),
        (&t2.net, "p3", "t1''", Some(ArcWeight::Var)),
        (&t2.net, "t1''", "p4", Some(ArcWeight::Var)),
        (&t2.net, "p4'", "o2'", Some(ArcWeight::ONE)),
    ];
    for (n, a, b, w) in expected {
        ensure!(n.arc(a, b) == w, "{}: arc {a} -> {b} is {:?}", n.name(), n.arc(a, b));
    }
    for tr in [&t1, &t2] {
        let problems = tr.net.is_oc_wf_net().map_err(|e| e.to_string())?;
        ensure!(problems.is_empty(), "tracking for {} is not an OC WF-net", tr.tracked);
    }

    // multiplicities drop by one on the duplicate of a weight-2 transition
    let tm = tracking_extension(&fixtures::fig2(), &d("member")).map_err(|e| e.to_string())?;
    ensure!(tm.net.arc("pm2", "attend_im'") == Some(ArcWeight::ONE), "pm2 -> attend_im' not reduced");
    ensure!(tm.net.arc("attend_im'", "pm3") == Some(ArcWeight::ONE), "attend_im' -> pm3 not reduced");
    ensure!(tm.net.arc("pm2", "attend_im") == ArcWeight::nat(2), "attend_im changed");

    for net in [fixtures::fig6(), fixtures::fig2()] {
        let types: Vec<ObjectType> = net.types().cloned().collect();
        for (i, a) in types.iter().enumerate() {
            for b in &types[i + 1..] {
                let na = TrackingNames::with_suffixes("_c1", "_u1");
                let nb = TrackingNames::with_suffixes("_c2", "_u2");
                let x = tracking_extension_with(&net, a, &na).and_then(|x| tracking_extension_with(&x.net, b, &nb));
                let y = tracking_extension_with(&net, b, &nb).and_then(|y| tracking_extension_with(&y.net, a, &na));
                let sfx = ["_c1", "_u1", "_c2", "_u2"];
                let x = normalize_tracking_ids(&x.map_err(|e| e.to_string())?.net, &sfx).map_err(|e| e.to_string())?;
                let y = normalize_tracking_ids(&y.map_err(|e| e.to_string())?.net, &sfx).map_err(|e| e.to_string())?;
                ensure!(x == y, "{}: tracking {a} and {b} depends on the order", net.name());
            }
        }
    }
    Ok("duplicate sets and order independence hold".into())
}

fn necessary_condition() -> Outcome {
    let mut nets: Vec<(String, OcNet)> = Vec::new();
    for (name, text) in corpus_files() {
        let (net, _) = parse_file(&text, &name).map_err(|e| e.to_string())?;
        nets.push((name, net));
    }
    let cfg = GenConfig::default();
    let mut seed = 0;
    while nets.len() < corpus_files().len() + 20 {
        let net = random_oc_wf_net(seed, &cfg);
        seed += 1;
        let too_big = net.types().any(|ty| net.places().filter(|p| &p.ty == ty).count() > cfg.max_places_per_type);
        if net.is_oc_wf_net().map(|v| v.is_empty()).unwrap_or(false) && !too_big {
            nets.push((format!("gen{seed}"), net));
        }
    }
    let bounds = OcBounds::default();
    let (mut sound, mut other, mut skipped) = (0, 0, 0);
    for (name, net) in &nets {
        if !net.is_oc_wf_net().map(|v| v.is_empty()).unwrap_or(false) {
            skipped += 1;
            continue;
        }
        let r = check_oc_soundness(net, &bounds).map_err(|e| format!("{name}: {e}"))?;
        if r.aggregate != Status::Sound {
            other += 1;
            continue;
        }
        sound += 1;
        for (ty, v) in check_projection_soundness(net).map_err(|e| e.to_string())? {
            ensure!(v.status == Status::Sound, "{name}: OC-sound but projection on {ty} is {:?}", v.status);
            let p = project_one_safe(net, &ty).map_err(|e| e.to_string())?;
            let (src, _) = net.source_sink(&ty).ok_or("no source place")?;
            let lts = explore(&p, &Marking::singleton(src), &ExplorationBounds::default()).map_err(|e| e.to_string())?;
            ensure!(!lts.truncated, "{name}: projection on {ty} truncated");
        }
    }
    ensure!(sound > 0, "no OC-sound net in the suite");
    Ok(format!("{} nets, {sound} OC-sound, {other} not, {skipped} not OC WF-nets", nets.len()))
}

fn expected_fire(net: &OcNet, m: &Marking, ev: &FiringEvent) -> Option<Marking> {
    let mut counts: BTreeMap<String, i64> = m.iter().map(|(p, n)| (p.to_owned(), n as i64)).collect();
    for (a, b, w) in net.arcs() {
        let k = |p: &str| match w {
            ArcWeight::Nat(k) => i64::from(k.get()),
            ArcWeight::Var => ev.mode.get(net.type_of(p).unwrap()).unwrap() as i64,
        };
        if b == ev.transition {
            *counts.entry(a.to_owned()).or_default() -= k(a);
        }
        if a == ev.transition {
            *counts.entry(b.to_owned()).or_default() += k(b);
        }
    }
    counts.into_iter().map(|(p, n)| u64::try_from(n).ok().map(|n| (p, n))).collect()
}

fn semantics_oracle() -> Outcome {
    let bounds = ExplorationBounds::new(100_000, 5, 4).unwrap();
    for seed in 0..100 {
        let net = random_pt_net(seed, 5, 5, 3);
        let m = random_marking(seed + 7_000, &net, 4);
        let o = PtOracle::new(&net);
        let v = o.vector(&m);
        for (i, (t, ..)) in o.trans.iter().enumerate() {
            let ev = FiringEvent::plain(t.as_str());
            let expected = o.fire(&v, i).map(|w| o.marking(&w));
            ensure!(fire(&net, &m, &ev).ok() == expected, "pt seed {seed}: {t} at {m}");
        }
        let r = o.reach(v, 5, 100_000).ok_or("oracle gave up")?;
        let lts = explore(&net, &m, &bounds).map_err(|e| e.to_string())?;
        let states: BTreeSet<Marking> = lts.states.iter().cloned().collect();
        let oracle: BTreeSet<Marking> = r.states.iter().map(|v| o.marking(v)).collect();
        ensure!(lts.truncated == r.truncated && states == oracle, "pt seed {seed}: reachable sets differ");
        ensure!(lts.edges.len() == r.edges.len(), "pt seed {seed}: edge counts differ");
    }
    let small = GenConfig {
        max_places_per_type: 6,
        ..GenConfig::default()
    };
    let bounds = ExplorationBounds::default();
    let mut checked = 0;
    for case in 0..1000u64 {
        let net = random_oc_wf_net(case, &small);
        let m = random_marking(case + 50_000, &net, 3);
        let bigger = m.sum(&random_marking(case + 90_000, &net, 2));
        for t in net.transitions() {
            for mode in enabled_modes(&net, &m, &t.id, &bounds).map_err(|e| e.to_string())? {
                let ev = FiringEvent { transition: t.id.clone(), mode };
                let next = fire(&net, &m, &ev).map_err(|e| e.to_string())?;
                ensure!(Some(&next) == expected_fire(&net, &m, &ev).as_ref(), "case {case}: firing {} at {m}", t.id);
                ensure!(is_enabled(&net, &bigger, &ev).map_err(|e| e.to_string())?, "case {case}: {} not monotone", t.id);
                checked += 1;
            }
        }
    }
    Ok(format!("100 P/T nets, {checked} firings over 1000 cases"))
}

fn dsl_round_trip() -> Outcome {
    let mut count = 0;
    for (name, text) in corpus_files() {
        let (net, m) = parse_file(&text, &name).map_err(|e| e.to_string())?;
        let again = parse(&serialize(&net, &m)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(again == (net.clone(), m.clone()), "{name}: round trip changed the net");
        let dot = to_dot(&net, Some(&m));
        ensure!(dot == to_dot(&again.0, Some(&again.1)), "{name}: dot output differs");
        count += 1;
    }
    for seed in 0..500 {
        let net = random_oc_wf_net(seed, &GenConfig::default());
        let m = random_marking(seed + 3_000, &net, 5);
        let text = serialize(&net, &m);
        let again = parse(&text).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(again == (net.clone(), m.clone()), "seed {seed}: round trip changed the net");
        ensure!(serialize(&again.0, &again.1) == text, "seed {seed}: text not stable");
        ensure!(to_dot(&net, Some(&m)) == to_dot(&again.0, Some(&again.1)), "seed {seed}: dot output differs");
        count += 1;
    }
    // byte stability across runs
    let golden = include_str!("../../cli/tests/golden/dot_fig4a.json");
    let report: serde_json::Value = serde_json::from_str(golden).map_err(|e| e.to_string())?;
    let recorded = report["result"]["text"].as_str().ok_or("dot golden has no text")?;
    let (net, m) = parse(include_str!("../../../corpus/fig4a.ocwf")).map_err(|e| e.to_string())?;
    ensure!(to_dot(&net, Some(&m)) == recorded, "fig4a dot differs from the recorded output");
    Ok(format!("{count} nets"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("elimination golden", elimination_golden, 1),
        ("elimination weak bisimilarity", elimination_bisimilarity, 5),
        ("classical soundness", classical_soundness, 5),
        ("composition deadlock", composition_deadlock, 1),
        ("tracking goldens", tracking_goldens, 1),
        ("necessary condition", necessary_condition, 60),
        ("semantics oracle", semantics_oracle, 60),
        ("dsl round trip", dsl_round_trip, 30),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let (word, detail) = match (&outcome, slow) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("over the {limit} s limit; {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if word == "FAIL" {
            failures += 1;
        }
        println!("criterion {} {word} {name} ({:.3} s, limit {limit} s): {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
