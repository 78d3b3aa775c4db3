use std::fmt::Write;

use super::write::quote;
use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, OcNet};

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

/// Graphviz rendering: places as ellipses filled by type, transitions as
/// boxes (silent ones grey), variable arcs as doubled edges and weights above
/// one as edge labels. Token counts of `m` are shown inside places.
pub fn to_dot(net: &OcNet, m: Option<&Marking>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(net.name())).unwrap();
    out.push_str("  rankdir=LR;\n");
    let types: Vec<_> = net.types().filter(|t| !t.is_empty_type()).collect();
    for p in net.places() {
        let color = types
            .iter()
            .position(|t| **t == p.ty)
            .map_or("white", |i| PALETTE[i % PALETTE.len()]);
        let tokens = m.map_or(0, |m| m.get(&p.id));
        let label = if tokens > 0 {
            format!("{}\n{}", p.id, tokens)
        } else {
            p.id.clone()
        };
        writeln!(
            out,
            "  {} [shape=ellipse, style=filled, fillcolor={}, label={}, tooltip={}];",
            quote(&p.id),
            quote(color),
            quote(&label),
            quote(p.ty.as_str())
        )
        .unwrap();
    }
    for t in net.transitions() {
        match &t.label {
            ActivityLabel::Silent => writeln!(
                out,
                "  {} [shape=box, style=filled, fillcolor=\"grey70\", label=\"τ\"];",
                quote(&t.id)
            ),
            ActivityLabel::Visible(a) => writeln!(out, "  {} [shape=box, label={}];", quote(&t.id), quote(a)),
        }
        .unwrap();
    }
    let mut arcs: Vec<_> = net.arcs().collect();
    arcs.sort();
    for (a, b, w) in arcs {
        let attrs = match w {
            ArcWeight::Var => " [color=\"black:invis:black\"]".to_owned(),
            ArcWeight::Nat(k) if k.get() > 1 => format!(" [label=\"{k}\"]"),
            ArcWeight::Nat(_) => String::new(),
        };
        writeln!(out, "  {} -> {}{};", quote(a), quote(b), attrs).unwrap();
    }
    out.push_str("}\n");
    out
}
