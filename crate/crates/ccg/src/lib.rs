//! Incremental CCG sentence processor.
//!
//! The crate is organized around a pipeline:
//!
//! * [`category`] — the category algebra: feature-bearing basic categories,
//!   slashed functors, and unification.
//! * [`literal`] — the textual notation for categories and term lists used in
//!   lexicon files and tests.
//! * [`term`] — flat Davidsonian term lists carried by every analysis.
//! * [`rules`] — the combinatory rule set (forward composition up to degree 3,
//!   backward application, backward crossing composition).
//! * [`derivation`] — derivation trees, the rewrite system that normalizes
//!   them toward right-branching form, and the right-frontier computation
//!   used for revealing.
//! * [`lexicon`] — expansion of word/part-of-speech pairs into lexical
//!   entries (inflection, subject type raising, division categories for
//!   extraction, closed-class items).
//! * [`engine`] — the nondeterministic shift/reduce engine with its buffer
//!   admissibility filter.
//! * [`interpreter`] — definite reference resolution, plausibility checking,
//!   and the penalty detectors.
//! * [`adjudicator`] — penalty scoring, grace periods, and state discarding.
//! * [`run`] — whole-sentence driver producing verdicts and trace events.
//! * [`io`] — loaders for the on-disk fixture formats.

pub mod adjudicator;
pub mod category;
pub mod derivation;
pub mod engine;
pub mod interpreter;
pub mod io;
pub mod lexicon;
pub mod literal;
pub mod rules;
pub mod run;
pub mod term;

pub use adjudicator::{PenaltyConfig, PenaltyKind};
pub use category::{Category, FeatVal, SemIndex, Subst};
pub use run::{run_sentence, RunOutcome, Verdict};
