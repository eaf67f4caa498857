//! Ordered trees as an exact intermediate representation for arc-standard
//! dependency parsing.
//!
//! A projective dependency tree has a unique ordered representation: an
//! anchored tree whose leaves are the tokens in surface order, whose every
//! node spans an interval, and in which each internal node carries exactly
//! one direct leaf child — its anchor. [`build`] constructs that
//! representation, [`recover`] inverts it exactly, and the transition
//! machinery runs the same arc-standard action sequence either as arc
//! collection ([`execute_arcs`]) or as direct tree construction
//! ([`execute_tree`]), with [`derive`] providing the canonical action
//! sequence for any projective tree. Non-projective trees are rejected with
//! a witness pair of crossing arcs and can be routed through the
//! pseudo-projective [`Projectivizer`] instead.
//!
//! The crate is `no_std` + `alloc`; IO lives in the companion tools crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod build;
pub mod dep;
pub mod ordered;
pub mod proj;
pub mod recover;
pub mod stacktree;
pub mod transition;
pub mod verify;

pub use build::{build, BuildError};
pub use dep::{Arc, DependencyTree, InvalidTree, Sentence, Span, Token, Violation};
pub use ordered::{
    check, yields, AnchorError, NodeYield, OrderedTree, StructureViolation, YieldReport, UNLABELED,
};
pub use proj::{
    DeliftError, DeliftOutcome, LiftLog, LiftStep, LiftedLabel, Projectivizer, UnresolvedLift,
    DEFAULT_SEPARATOR,
};
pub use recover::{anchor_of, recover, RecoverError};
pub use stacktree::{execute_tree, PartialTree, TreeConfiguration};
pub use transition::{
    derive, execute_arcs, Configuration, Derivation, DeriveError, ExecError, StepError, Transition,
};
pub use verify::{
    enumerate_trees, exists_contiguous_representation, gen_random_derivation, gen_random_tree,
    SizeLimit, MAX_ENUM, MAX_EXISTS,
};
