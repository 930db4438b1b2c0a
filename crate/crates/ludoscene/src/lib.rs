//! ludoscene: a toolkit for learning-game scenarios.
//!
//! A scenario joins a three-level pedagogical structure (modules, acts,
//! activities) with a three-level ludic scenario (missions, sequences, game
//! levels) through level-matched staging links. On top of that model the
//! crate provides:
//!
//! - a structural validator with stable diagnostic codes ([`validate`]),
//! - a strict canonical document format ([`parse`], [`serialize`]),
//! - transfer of competences and participants along staging links
//!   ([`propagate`], [`aggregate_subtree`]),
//! - a closed catalog of nine design patterns with a detector, report diffs
//!   and findings ([`catalog`], [`detect`], [`diff`], [`explain`]),
//! - a scenario shell generator ([`scaffold`]),
//! - corpus fixtures and a seeded random generator ([`fixture`],
//!   [`random_scenario`]).
//!
//! Scenarios are immutable snapshots and every operation is a pure function,
//! so analyses can run concurrently without coordination.

mod capillarity;
mod catalog;
mod corpus;
mod detect;
mod format;
mod model;
mod order;
mod path;
mod scaffold;
mod validate;

pub use capillarity::{aggregate_subtree, propagate, EffectiveEntry, EffectiveSets};
pub use catalog::{
    catalog, evaluate_rule, rule, rulebook, ConditionSpec, EvalContext, PatternId, PatternRule,
    RuleOutcome, UnknownPatternId, UnmetCondition, UnmetReason,
};
pub use corpus::{
    expected_patterns, fixture, fixture_scenario, random_scenario, Fixture, FixtureName,
    UnknownFixture,
};
pub use detect::{
    detect, diff, explain, EvidenceBinding, InvalidScenario, PatternDiff, PatternEntry,
    PatternReport,
};
pub use format::{
    parse, parse_bytes, serialize, ParseError, ParseErrorCode, SerializeError, FILE_EXTENSION,
    FORMAT_VERSION,
};
pub use model::*;
pub use order::{first, last, linear_order, CycleError};
pub use path::{Path, PathSeg};
pub use scaffold::{scaffold, ConfigError, ScaffoldConfig};
pub use validate::{is_error_free, validate, Diagnostic, DiagnosticCode, Severity};
