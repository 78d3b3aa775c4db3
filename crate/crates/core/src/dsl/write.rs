use std::fmt::Write;

use super::GENERATED_PRAGMA;
use crate::marking::Marking;
use crate::model::{ActivityLabel, ObjectType, OcNet};

pub(super) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn net_name(name: &str) -> String {
    let mut out: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '\'' { c } else { '_' })
        .collect();
    if !out.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        out.insert(0, '_');
    }
    out
}

/// Canonical text: types, places, transitions and arcs, each sorted by id.
pub fn serialize(net: &OcNet, m: &Marking) -> String {
    let mut out = String::new();
    if net.has_type(&ObjectType::empty()) {
        out.push_str(GENERATED_PRAGMA);
        out.push('\n');
    }
    writeln!(out, "ocnet {} {{", net_name(net.name())).unwrap();
    for ty in net.types() {
        writeln!(out, "  type {ty};").unwrap();
    }
    for p in net.places() {
        write!(out, "  place {} : {}", p.id, p.ty).unwrap();
        let k = m.get(&p.id);
        if k > 0 {
            write!(out, " init = {k}").unwrap();
        }
        out.push_str(";\n");
    }
    for t in net.transitions() {
        match &t.label {
            ActivityLabel::Silent => writeln!(out, "  trans {} tau;", t.id).unwrap(),
            ActivityLabel::Visible(a) => writeln!(out, "  trans {} label {};", t.id, quote(a)).unwrap(),
        }
    }
    let mut arcs: Vec<_> = net.arcs().collect();
    arcs.sort();
    for (a, b, w) in arcs {
        writeln!(out, "  arc {a} -> {b} : {w};").unwrap();
    }
    out.push_str("}\n");
    out
}
