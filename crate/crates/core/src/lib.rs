//! Object-centric workflow nets (OC WF-nets).
//!
//! An OC-net is a Petri net whose places are typed by object types; tokens
//! of one type are indistinguishable, and *variable arcs* move a
//! nondeterministic number of tokens of one type in a single firing. This
//! crate provides:
//!
//! - the net model and its structural checks ([`model`], [`marking`]),
//! - transfer-mode firing and bounded state-space exploration ([`semantics`]),
//! - net constructions: variable-arc elimination, type projections,
//!   tracking extensions, synchronous composition ([`transforms`]),
//! - strong and weak bisimulation checking ([`equivalence`]),
//! - exact classical soundness and bounded object-centric soundness
//!   ([`soundness`]),
//! - a small textual format and DOT export ([`dsl`]).
//!
//! State-space work runs data-parallel over exploration frontiers when the
//! default `parallel` feature is on; results are identical without it.

pub mod dsl;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod marking;
pub mod model;
pub mod par;
pub mod semantics;
pub mod soundness;
pub mod transforms;

mod engine;

pub use error::{Error, Result};
pub use marking::Marking;
pub use model::{as_wf_net, ActivityLabel, ArcWeight, ObjectType, OcNet, Place, PtNet, Transition, WfNetView};
pub use semantics::{ExplorationBounds, FiringEvent, Lts, TransferMode};
