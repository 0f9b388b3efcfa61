//! Causal reasoning over abductive logic programs.
//!
//! A program is a set of propositional clauses `head :- body.` together with
//! declared abducibles, the atoms whose truth the program leaves open, and
//! optional integrity constraints `:- body.` ruling worlds out. A model is a
//! world that is a stable (or supported) model of the clauses once its own
//! abducible choice is added as facts; the choice is the model's explanation.
//!
//! Reading each clause as a causal mechanism gives the same programs three
//! more faces, and this crate keeps them in sync:
//!
//! * a causal system in the sense of Bochman's causal calculus, via
//!   [`bochman_transform`], whose causally founded worlds are exactly the
//!   stable abductive models;
//! * a structural causal model, via [`cm_semantics`], whose solutions are
//!   exactly the supported abductive models;
//! * a surgical notion of intervention, via [`intervene`], that severs an
//!   atom from its causes and commutes with the structural reading.
//!
//! Whether the causal reading is faithful is itself checkable:
//! [`check_irrelevance`] decides whether contexts outside an atom set's
//! influence can always be extended to stable models (stratified programs
//! always can, see [`check_stratified_irrelevance`]), and
//! [`check_non_interference`] verifies that interventions leave the
//! unaffected part of the world alone.
//!
//! Everything works by exhaustive enumeration over worlds and is meant for
//! programs of a few dozen atoms at most; the `*_with_limit` variants set the
//! cutoff explicitly.
//!
//! ```
//! use causalog::{abductive_models, parse, Semantics};
//!
//! let wet = parse(
//!     "abducible c.
//!      r :- c.      % rain follows clouds
//!      s :- not c.  % the sprinkler runs on clear days
//!      w :- r.  w :- s.
//!      d :- w.",
//! )?;
//! let models = abductive_models(&wet.program, Semantics::Stable)?;
//! let shown: Vec<String> = models
//!     .iter()
//!     .map(|m| wet.program.alphabet().set_text(m.world.true_atoms()))
//!     .collect();
//! assert_eq!(shown, ["{c,r,w,d}", "{s,w,d}"]);
//! # Ok::<(), causalog::Error>(())
//! ```

pub mod causal;
pub mod error;
pub mod graph;
pub mod intervention;
pub mod parser;
pub mod principles;
pub mod semantics;
pub mod syntax;
pub mod world;

pub use causal::{
    bochman_transform, causal_worlds, causal_worlds_with_limit, causally_founded_worlds,
    causally_founded_worlds_with_limit, classify_explanation, classify_world, completion_models,
    completion_models_with_limit, derivable, inverse_bochman, rule_text, CausalRule, CausalSystem,
    CausalTheory, ExplanationClass, WorldFounding,
};
pub use error::Error;
pub use graph::{dependence_graph, slice, DependenceGraph, EdgeSign, SliceRegion};
pub use intervention::{cm_semantics, intervene, Assignment, Equation, StructuralCausalModel};
pub use parser::{parse, parse_with_limit, render, Diagnostic, DiagnosticKind, Parsed};
pub use principles::{
    check_irrelevance, check_irrelevance_with_limit, check_non_interference,
    check_non_interference_with_limit, check_stratified_irrelevance, replay_counterexample,
    Counterexample, IrrelevanceVerdict, NonInterferenceReport,
};
pub use semantics::{
    abductive_models, abductive_models_with_limit, clark_completion, greatest_unfounded_set,
    is_consistent, is_consistent_with_limit, is_model, is_unfounded, stable_models,
    stable_models_with_limit, supported_models, supported_models_with_limit, AbductiveModel,
    AtomDefinition, Explanation, Semantics,
};
pub use syntax::{
    AbductiveProgram, Alphabet, AtomId, Clause, IntegrityConstraint, Literal, LogicProgram,
};
pub use world::{
    literal_completion, AtomSet, LiteralSet, World, DEFAULT_ATOM_LIMIT,
    DEFAULT_IRRELEVANCE_LIMIT, MAX_ATOMS,
};
