mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ocwf::dsl::{parse_file, serialize, to_dot};
use ocwf::equivalence::{check_bisim, Mode};
use ocwf::semantics::{explore, parse_script, run};
use ocwf::soundness::{
    check_object_soundness, check_oc_soundness, check_projection_soundness, check_wf_soundness_with,
    classical_bounds, OcBounds, Status, Verdict,
};
use ocwf::transforms::{
    eliminate_variable_arcs, project, project_one_safe, replicate, sync_compose, tracking_extension_with,
    TrackingNames,
};
use ocwf::{Error, ExplorationBounds, Marking, ObjectType, OcNet};

use report::{badge, render_value, use_color, Outcome, Report};

#[derive(Parser)]
#[command(name = "ocwf", version, about = "Analyses of object-centric workflow nets")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = 100_000)]
    max_states: usize,
    /// Token cap per place.
    #[arg(long, default_value_t = 16)]
    cap: u64,
    /// Largest transfer amount per type.
    #[arg(long, default_value_t = 4)]
    max_mode: u64,
}

impl BoundArgs {
    fn bounds(self) -> Result<ExplorationBounds, Failure> {
        Ok(ExplorationBounds::new(self.max_states, self.cap, self.max_mode)?)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SoundnessTarget {
    /// Exact classical soundness of a single-type net.
    #[arg(long)]
    classical: bool,
    /// Object soundness for one type.
    #[arg(long = "type", value_name = "D")]
    ty: Option<String>,
    /// Object soundness for every type, plus projections.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a net and report its structure.
    Validate { file: PathBuf },
    /// Explore the reachable markings.
    Reach {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Fire a sequence of events, e.g. `t1 t2[α:d=2]`.
    Run {
        file: PathBuf,
        #[arg(long)]
        script: String,
    },
    /// Replace variable arcs by ordinary arcs and silent transitions.
    Eliminate {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Keep the places of one type.
    Project {
        file: PathBuf,
        #[arg(long = "type", value_name = "D")]
        ty: String,
        /// Force all weights to one.
        #[arg(long)]
        one_safe: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the tracking extension for a type.
    Track {
        file: PathBuf,
        #[arg(long = "type", value_name = "D")]
        ty: String,
        /// Name of the tracked copy's type.
        #[arg(long = "as", value_name = "D2")]
        fresh: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synchronous composition on equal labels.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Multiply every arc weight and the marking by K.
    Replicate {
        file: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the behaviour of two marked nets.
    Bisim {
        a: PathBuf,
        b: PathBuf,
        /// Ignore silent steps.
        #[arg(long)]
        weak: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Classical or object-centric soundness.
    Soundness {
        file: PathBuf,
        #[command(flatten)]
        target: SoundnessTarget,
        #[arg(long, default_value_t = 2)]
        init_bound: u64,
        #[arg(long, default_value_t = 2)]
        inject_bound: u64,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Graphviz rendering with the initial marking.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Reach { .. } => "reach",
            Command::Run { .. } => "run",
            Command::Eliminate { .. } => "eliminate",
            Command::Project { .. } => "project",
            Command::Track { .. } => "track",
            Command::Compose { .. } => "compose",
            Command::Replicate { .. } => "replicate",
            Command::Bisim { .. } => "bisim",
            Command::Soundness { .. } => "soundness",
            Command::Dot { .. } => "dot",
        }
    }
}

/// A failed invocation: an outcome, a payload and lines for standard error.
struct Failure {
    outcome: Outcome,
    result: Value,
    messages: Vec<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            outcome: Outcome::Error,
            result: json!({ "error": e.to_string() }),
            messages: vec![format!("error: {e}")],
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    let msg = format!("{}: {e}", path.display());
    Failure {
        outcome: Outcome::Error,
        result: json!({ "error": msg }),
        messages: vec![format!("error: {msg}")],
    }
}

struct Success {
    outcome: Outcome,
    bounds: Option<Value>,
    result: Value,
}

fn ok(result: Value) -> Result<Success, Failure> {
    Ok(Success {
        outcome: Outcome::Ok,
        bounds: None,
        result,
    })
}

fn load(path: &Path) -> Result<(OcNet, Marking), Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let file = path.display().to_string();
    parse_file(&text, &file).map_err(|e| Failure {
        outcome: Outcome::Invalid,
        result: json!({ "diagnostics": [e] }),
        messages: vec![e.to_string()],
    })
}

/// Writes `text` to `output`, or returns it for standard output.
fn emit(output: &Option<PathBuf>, text: String) -> Result<(Value, Option<String>), Failure> {
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| io_failure(p, e))?;
            Ok((json!(p.display().to_string()), None))
        }
        None => Ok((Value::Null, Some(text))),
    }
}

fn summary(net: &OcNet) -> Value {
    json!({
        "name": net.name(),
        "types": net.types().map(|t| t.to_string()).collect::<Vec<_>>(),
        "places": net.num_places(),
        "transitions": net.num_transitions(),
        "arcs": net.num_arcs(),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    let mut out = json!({
        "status": v.status,
        "states": v.states,
        "truncated": v.truncated,
    });
    if let Some(d) = &v.detail {
        out["detail"] = json!(d);
    }
    if let Some(w) = &v.witness {
        let mut wj = json!({
            "reason": w.reason.to_string(),
            "subject": w.subject,
            "initial": w.initial.to_string(),
            "trace": w.trace.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "marking": w.marking.to_string(),
        });
        if let Some(t) = &w.transition {
            wj["transition"] = json!(t);
        }
        out["witness"] = wj;
    }
    out
}

fn transform_result(net: &OcNet, m: &Marking, output: &Option<PathBuf>) -> Result<(Value, Option<String>), Failure> {
    let (written, stdout) = emit(output, serialize(net, m))?;
    Ok((json!({ "net": summary(net), "marking": m.to_string(), "output": written }), stdout))
}

fn scale(m: &Marking, k: u32) -> Marking {
    m.iter().map(|(p, n)| (p.to_owned(), n * u64::from(k))).collect()
}

/// Runs a command; the second component is text destined for standard
/// output in place of a report (a net or DOT written without `-o`).
fn execute(cmd: &Command) -> Result<(Success, Option<String>), Failure> {
    let plain = |r: Result<Success, Failure>| r.map(|s| (s, None));
    match cmd {
        Command::Validate { file } => {
            let (net, m) = load(file)?;
            let wf = net.is_oc_wf_net()?;
            let mut result = summary(&net);
            result["variable_transitions"] = json!(net.variable_transitions());
            result["initial"] = json!(m.to_string());
            result["oc_wf_net"] = json!(wf.is_empty());
            result["wf_violations"] = json!(wf.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            plain(ok(result))
        }
        Command::Reach { file, bounds } => {
            let (net, m) = load(file)?;
            let b = bounds.bounds()?;
            let lts = explore(&net, &m, &b)?;
            let mut has_succ = vec![false; lts.num_states()];
            for (s, _, _) in &lts.edges {
                has_succ[*s] = true;
            }
            let deadlocks: Vec<String> = lts
                .states
                .iter()
                .zip(&has_succ)
                .filter(|(_, s)| !**s)
                .map(|(m, _)| m.to_string())
                .collect();
            plain(Ok(Success {
                outcome: if lts.truncated { Outcome::Unknown } else { Outcome::Ok },
                bounds: Some(json!(b)),
                result: json!({
                    "initial": m.to_string(),
                    "states": lts.num_states(),
                    "edges": lts.edges.len(),
                    "truncated": lts.truncated,
                    "deadlocks": deadlocks,
                }),
            }))
        }
        Command::Run { file, script } => {
            let (net, m) = load(file)?;
            let events = parse_script(script)?;
            let mut cur = m.clone();
            let mut steps = Vec::new();
            for (i, ev) in events.iter().enumerate() {
                match run(&net, &cur, std::slice::from_ref(ev)) {
                    Ok(next) => {
                        steps.push(json!({ "event": ev.to_string(), "marking": next.to_string() }));
                        cur = next;
                    }
                    Err(e @ Error::NotEnabled { .. }) => {
                        return Err(Failure {
                            outcome: Outcome::Invalid,
                            result: json!({
                                "initial": m.to_string(),
                                "steps": steps,
                                "failed_step": i,
                                "error": e.to_string(),
                            }),
                            messages: vec![format!("step {i}: event {ev} is not enabled at {cur}")],
                        })
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            plain(ok(json!({ "initial": m.to_string(), "steps": steps, "final": cur.to_string() })))
        }
        Command::Eliminate { file, output } => {
            let (net, m) = load(file)?;
            let e = eliminate_variable_arcs(&net)?;
            let (result, stdout) = transform_result(&e.net, &e.lift(&m), output)?;
            Ok((ok(result)?, stdout))
        }
        Command::Project {
            file,
            ty,
            one_safe,
            output,
        } => {
            let (net, m) = load(file)?;
            let d = ObjectType::new(ty.as_str());
            let p = if *one_safe {
                project_one_safe(&net, &d)?.into_inner()
            } else {
                project(&net, &d)?
            };
            let m = m.restrict(|q| p.place(q).is_some());
            let (result, stdout) = transform_result(&p, &m, output)?;
            Ok((ok(result)?, stdout))
        }
        Command::Track {
            file,
            ty,
            fresh,
            output,
        } => {
            let (net, m) = load(file)?;
            let d = ObjectType::new(ty.as_str());
            let names = TrackingNames {
                fresh: Some(ObjectType::new(fresh.as_str())),
                ..TrackingNames::default()
            };
            let tr = tracking_extension_with(&net, &d, &names)?;
            let (src, _) = net
                .source_sink(&d)
                .ok_or_else(|| Error::NotWorkflow(format!("type {d} has no unique source")))?;
            let m = tr.with_tracked(&m, &src)?;
            let (mut result, stdout) = transform_result(&tr.net, &m, output)?;
            result["duplicates"] = json!(tr.duplicates);
            Ok((ok(result)?, stdout))
        }
        Command::Compose { a, b, output } => {
            let (n1, m1) = load(a)?;
            let (n2, m2) = load(b)?;
            let net = sync_compose(&n1, &n2)?;
            let (result, stdout) = transform_result(&net, &m1.sum(&m2), output)?;
            Ok((ok(result)?, stdout))
        }
        Command::Replicate { file, k, output } => {
            let (net, m) = load(file)?;
            let net = replicate(&net, *k)?;
            let (result, stdout) = transform_result(&net, &scale(&m, *k), output)?;
            Ok((ok(result)?, stdout))
        }
        Command::Bisim { a, b, weak, bounds } => {
            let (n1, m1) = load(a)?;
            let (n2, m2) = load(b)?;
            let bd = bounds.bounds()?;
            let l1 = explore(&n1, &m1, &bd)?;
            let l2 = explore(&n2, &m2, &bd)?;
            let mode = if *weak { Mode::Weak } else { Mode::Strong };
            let r = check_bisim(&l1, &l2, mode);
            let outcome = match (l1.truncated || l2.truncated, r.related) {
                (true, _) => Outcome::Unknown,
                (false, true) => Outcome::Related,
                (false, false) => Outcome::NotRelated,
            };
            let distinction = r.distinction.as_ref().map(|d| {
                let labels = |s: &std::collections::BTreeSet<ocwf::ActivityLabel>| {
                    s.iter().map(|a| a.to_string()).collect::<Vec<_>>()
                };
                json!({
                    "trace": d.trace.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "left_marking": l1.states[d.left_state].to_string(),
                    "right_marking": l2.states[d.right_state].to_string(),
                    "left_labels": labels(&d.left_labels),
                    "right_labels": labels(&d.right_labels),
                })
            });
            plain(Ok(Success {
                outcome,
                bounds: Some(json!(bd)),
                result: json!({
                    "mode": mode,
                    "related": r.related,
                    "left": { "states": l1.num_states(), "truncated": l1.truncated },
                    "right": { "states": l2.num_states(), "truncated": l2.truncated },
                    "classes": r.num_classes(),
                    "distinction": distinction,
                }),
            }))
        }
        Command::Soundness {
            file,
            target,
            init_bound,
            inject_bound,
            bounds,
        } => {
            let (net, _) = load(file)?;
            let explore = bounds.bounds()?;
            if target.classical {
                let b = ExplorationBounds {
                    max_states: explore.max_states,
                    ..classical_bounds()
                };
                let pt = ocwf::PtNet::try_from(net)?;
                let v = check_wf_soundness_with(&pt, &b)?;
                return plain(Ok(Success {
                    outcome: v.status.into(),
                    bounds: Some(json!(b)),
                    result: verdict_json(&v),
                }));
            }
            let ob = OcBounds::new(*init_bound, *inject_bound, explore)?;
            if let Some(ty) = &target.ty {
                let v = check_object_soundness(&net, &ObjectType::new(ty.as_str()), &ob)?;
                let mut result = verdict_json(&v);
                result["type"] = json!(ty);
                return plain(Ok(Success {
                    outcome: v.status.into(),
                    bounds: Some(json!(ob)),
                    result,
                }));
            }
            let r = check_oc_soundness(&net, &ob)?;
            let projections = check_projection_soundness(&net)?;
            let per_type = |m: &std::collections::BTreeMap<ObjectType, Verdict>| -> Value {
                m.iter().map(|(t, v)| (t.to_string(), verdict_json(v))).collect::<serde_json::Map<_, _>>().into()
            };
            let projections_sound = projections.values().all(|v| v.status == Status::Sound);
            plain(Ok(Success {
                outcome: r.aggregate.into(),
                bounds: Some(json!(ob)),
                result: json!({
                    "aggregate": r.aggregate,
                    "types": per_type(&r.types),
                    "projections": per_type(&projections),
                    "projections_sound": projections_sound,
                }),
            }))
        }
        Command::Dot { file, output } => {
            let (net, m) = load(file)?;
            let (written, stdout) = emit(output, to_dot(&net, Some(&m)))?;
            Ok((ok(json!({ "net": summary(&net), "output": written }))?, stdout))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let color = use_color();
    let start = Instant::now();
    let outcome = execute(&cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let (outcome, bounds, result, stdout) = match outcome {
        Ok((s, stdout)) => (s.outcome, s.bounds, s.result, stdout),
        Err(f) => {
            for m in &f.messages {
                eprintln!("{m}");
            }
            (f.outcome, None, f.result, None)
        }
    };
    let (mut result, mut stdout) = (result, stdout);
    if cli.json {
        if let Some(text) = stdout.take() {
            result["text"] = json!(text);
        }
    }
    let report = Report {
        command: cli.command.name().to_owned(),
        args,
        outcome,
        exit_code: outcome.exit_code(),
        bounds,
        result,
        elapsed_ms,
    };
    if let Some(text) = stdout {
        print!("{text}");
    } else if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if outcome != Outcome::Error {
        let mut out = format!("{}: {}\n", report.command, badge(outcome, color));
        render_value(&mut out, &report.result, 2);
        if let Some(b) = &report.bounds {
            out.push_str("  bounds:\n");
            render_value(&mut out, b, 4);
        }
        print!("{out}");
    }
    ExitCode::from(report.exit_code as u8)
}
