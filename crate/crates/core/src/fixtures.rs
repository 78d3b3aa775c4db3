//! The example nets of the university-project scenario and the small
//! construction examples, built in code. The `.ocwf` corpus files describe
//! the same nets.

use crate::model::{ActivityLabel, ArcWeight, OcNet};

/// Compact builder used by the fixtures and tests. Panics on malformed input.
pub struct NetBuilder {
    net: OcNet,
}

impl NetBuilder {
    pub fn new(name: &str) -> Self {
        NetBuilder {
            net: OcNet::new(name),
        }
    }

    pub fn ty(mut self, ty: &str) -> Self {
        self.net.add_type(ty).expect("type");
        self
    }

    pub fn places(mut self, ty: &str, ids: &[&str]) -> Self {
        for id in ids {
            self.net.add_place(*id, ty).expect("place");
        }
        self
    }

    /// A visible transition whose label equals `label`.
    pub fn trans(mut self, id: &str, label: &str) -> Self {
        self.net
            .add_transition(id, ActivityLabel::visible(label))
            .expect("transition");
        self
    }

    pub fn tau(mut self, id: &str) -> Self {
        self.net.add_transition(id, ActivityLabel::Silent).expect("transition");
        self
    }

    pub fn arc(mut self, from: &str, to: &str, k: u32) -> Self {
        self.net
            .add_arc(from, to, ArcWeight::nat(k).expect("positive weight"))
            .expect("arc");
        self
    }

    pub fn var(mut self, from: &str, to: &str) -> Self {
        self.net.add_arc(from, to, ArcWeight::Var).expect("arc");
        self
    }

    /// Unit-weight arcs along a chain `a -> b -> c ...`.
    pub fn chain(mut self, nodes: &[&str]) -> Self {
        for w in nodes.windows(2) {
            self = self.arc(w[0], w[1], 1);
        }
        self
    }

    pub fn build(self) -> OcNet {
        self.net
    }
}

/// Team member workflow.
pub fn fig1a_member() -> OcNet {
    NetBuilder::new("member")
        .ty("member")
        .places("member", &["pm1", "pm2", "pm3", "pm4", "pm5", "pmd"])
        .trans("join1", "join1")
        .trans("join2", "join2")
        .trans("attend_im", "attend i. m.")
        .trans("submit_m", "submit m.")
        .trans("discuss", "discuss")
        .trans("back", "back")
        .trans("present_project", "present project")
        .trans("repeat", "repeat")
        .trans("complete", "complete")
        .trans("fail", "fail")
        .chain(&["pm1", "join1", "pm2"])
        .chain(&["pm1", "join2", "pm2"])
        .chain(&["pm2", "attend_im", "pm3"])
        .chain(&["pm3", "submit_m", "pm3"])
        .chain(&["pm3", "discuss", "pmd", "back", "pm3"])
        .chain(&["pm3", "present_project", "pm4"])
        .chain(&["pm4", "complete", "pm5"])
        .chain(&["pm4", "fail", "pm5"])
        .chain(&["pm4", "repeat", "pm3"])
        .build()
}

/// Team leader workflow.
pub fn fig1b_leader() -> OcNet {
    NetBuilder::new("leader")
        .ty("leader")
        .places("leader", &["pl1", "pl2", "pl3", "pl4", "pl5", "pl6", "pld"])
        .trans("create", "create")
        .trans("start", "start")
        .trans("attend_im", "attend i. m.")
        .trans("submit_m", "submit m.")
        .trans("discuss", "discuss")
        .trans("back", "back")
        .trans("present_project", "present project")
        .trans("repeat", "repeat")
        .trans("complete", "complete")
        .trans("fail", "fail")
        .chain(&["pl1", "create", "pl2", "start", "pl3", "attend_im", "pl4"])
        .chain(&["pl4", "submit_m", "pl4"])
        .chain(&["pl4", "discuss", "pld", "back", "pl4"])
        .chain(&["pl4", "present_project", "pl5"])
        .chain(&["pl5", "complete", "pl6"])
        .chain(&["pl5", "fail", "pl6"])
        .chain(&["pl5", "repeat", "pl4"])
        .build()
}

/// Project workflow.
pub fn fig1c_project() -> OcNet {
    NetBuilder::new("project")
        .ty("project")
        .places("project", &["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"])
        .trans("create", "create")
        .trans("join1", "join1")
        .trans("join2", "join2")
        .trans("start", "start")
        .trans("submit_m", "submit m.")
        .tau("tau1")
        .trans("complete", "complete")
        .trans("fail", "fail")
        .chain(&["p1", "create", "p2", "join1", "p4", "start", "p6"])
        .chain(&["create", "p3", "join2", "p5", "start"])
        .chain(&["p6", "submit_m", "p7", "tau1", "p6"])
        .chain(&["p7", "complete", "p8"])
        .chain(&["p7", "fail", "p8"])
        .build()
}

/// The merged university-project OC WF-net: one project, one leader and two
/// members synchronise on shared activities; discussions use variable arcs.
pub fn fig2() -> OcNet {
    let b = NetBuilder::new("university")
        .ty("leader")
        .ty("member")
        .ty("project")
        .places("member", &["pm1", "pm2", "pm3", "pm4", "pm5", "pmd"])
        .places("leader", &["pl1", "pl2", "pl3", "pl4", "pl5", "pl6", "pld"])
        .places("project", &["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"])
        .trans("create", "create")
        .trans("join1", "join1")
        .trans("join2", "join2")
        .trans("start", "start")
        .trans("attend_im", "attend i. m.")
        .trans("discuss", "discuss")
        .trans("back", "back")
        .trans("submit_m", "submit m.")
        .tau("tau1")
        .trans("present_project", "present project")
        .trans("repeat", "repeat")
        .trans("complete", "complete")
        .trans("fail", "fail")
        // create
        .arc("pl1", "create", 1)
        .arc("p1", "create", 1)
        .arc("create", "p2", 1)
        .arc("create", "p3", 1)
        .arc("create", "pl2", 1)
        // joins
        .chain(&["pm1", "join1", "pm2"])
        .chain(&["p2", "join1", "p4"])
        .chain(&["pm1", "join2", "pm2"])
        .chain(&["p3", "join2", "p5"])
        // start
        .chain(&["pl2", "start", "pl3"])
        .chain(&["p4", "start", "p6"])
        .arc("p5", "start", 1)
        // initial meeting
        .chain(&["pl3", "attend_im", "pl4"])
        .arc("pm2", "attend_im", 2)
        .arc("attend_im", "pm3", 2)
        // discussions
        .var("pm3", "discuss")
        .var("discuss", "pmd")
        .var("pl4", "discuss")
        .var("discuss", "pld")
        .var("pmd", "back")
        .var("back", "pm3")
        .var("pld", "back")
        .var("back", "pl4")
        // submissions
        .chain(&["pm3", "submit_m", "pm3"])
        .chain(&["pl4", "submit_m", "pl4"])
        .chain(&["p6", "submit_m", "p7", "tau1", "p6"])
        // presentation
        .chain(&["pl4", "present_project", "pl5"])
        .arc("pm3", "present_project", 2)
        .arc("present_project", "pm4", 2);
    let mut b = b;
    for t in ["complete", "fail"] {
        b = b
            .arc("pm4", t, 2)
            .arc(t, "pm5", 2)
            .chain(&["pl5", t, "pl6"])
            .chain(&["p7", t, "p8"]);
    }
    b.arc("pm4", "repeat", 2)
        .arc("repeat", "pm3", 2)
        .chain(&["pl5", "repeat", "pl4"])
        .build()
}

/// A simple OC-net with one variable-arc transition.
pub fn fig4a() -> OcNet {
    NetBuilder::new("fig4a")
        .ty("golden")
        .ty("green")
        .places("green", &["p1", "p2"])
        .places("golden", &["p3", "p4"])
        .trans("t1", "a")
        .trans("t2", "b")
        .var("p1", "t1")
        .var("t1", "p2")
        .chain(&["p3", "t1", "p4"])
        .chain(&["p2", "t2", "p4"])
        .build()
}

/// First chain net: `a` then `b`.
pub fn fig5_chain1() -> OcNet {
    NetBuilder::new("chain1")
        .ty("d1")
        .places("d1", &["in1", "p1", "out1"])
        .trans("a", "a")
        .trans("b", "b")
        .chain(&["in1", "a", "p1", "b", "out1"])
        .build()
}

/// Second chain net: `b` then `a`.
pub fn fig5_chain2() -> OcNet {
    NetBuilder::new("chain2")
        .ty("d2")
        .places("d2", &["in2", "p2", "out2"])
        .trans("b", "b")
        .trans("a", "a")
        .chain(&["in2", "b", "p2", "a", "out2"])
        .build()
}

/// Synchronous composition of the two chain nets; dead from `[in1, in2]`.
pub fn fig5_composed() -> OcNet {
    NetBuilder::new("composed")
        .ty("d1")
        .ty("d2")
        .places("d1", &["in1", "p1", "out1"])
        .places("d2", &["in2", "p2", "out2"])
        .trans("a", "a")
        .trans("b", "b")
        .chain(&["in1", "a", "p1", "b", "out1"])
        .chain(&["in2", "b", "p2", "a", "out2"])
        .build()
}

/// OC WF-net with two object types; `t1` transfers `d2` objects and `o2`
/// creates a `d1` object.
pub fn fig6() -> OcNet {
    NetBuilder::new("fig6")
        .ty("d1")
        .ty("d2")
        .places("d1", &["in1", "p1", "p2", "out1"])
        .places("d2", &["in2", "p3", "p4", "out2"])
        .trans("i1", "i1")
        .trans("t1", "t1")
        .trans("o1", "o1")
        .trans("i2", "i2")
        .trans("o2", "o2")
        .chain(&["in1", "i1", "p1", "t1", "p2", "o1", "out1"])
        .chain(&["in2", "i2", "p3"])
        .var("p3", "t1")
        .var("t1", "p4")
        .chain(&["p4", "o2", "out2"])
        .arc("o2", "p2", 1)
        .build()
}

/// A WF-net whose loop `t2` doubles the token in `p`; unbounded.
pub fn duplicating_loop() -> OcNet {
    NetBuilder::new("dup_loop")
        .ty("d")
        .places("d", &["in", "p", "out"])
        .trans("t", "t")
        .trans("t2", "t2")
        .trans("t3", "t3")
        .chain(&["in", "t", "p", "t3", "out"])
        .arc("p", "t2", 1)
        .arc("t2", "p", 2)
        .build()
}

/// Every corpus net by file stem.
pub fn corpus() -> Vec<(&'static str, OcNet)> {
    vec![
        ("fig1a_member", fig1a_member()),
        ("fig1b_leader", fig1b_leader()),
        ("fig1c_project", fig1c_project()),
        ("fig2_university", fig2()),
        ("fig4a", fig4a()),
        ("fig5_chain1", fig5_chain1()),
        ("fig5_chain2", fig5_chain2()),
        ("fig5_composed", fig5_composed()),
        ("fig6", fig6()),
    ]
}
