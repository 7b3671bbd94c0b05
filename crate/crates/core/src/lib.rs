//! Exact counting of permutations that avoid every pattern in a set of
//! three-letter patterns while containing one further pattern exactly once.
//!
//! The crate has two independent halves that check each other:
//!
//! * [`oracle`] enumerates the avoiders outright (pruned prefix search) and
//!   counts occurrences directly. Slow but unarguable; guarded by a size cap.
//! * [`formulas`] evaluates each family of forbidden sets through its
//!   structural decomposition: closed generating functions where the shape
//!   of the avoiders pins one down, and a capped joint-occurrence automaton
//!   for the rest. Exact at any order the automaton is allowed to run to.
//!
//! [`classify`] holds the symmetry machinery (reverse, complement, inverse)
//! that transports a query onto one of the canonical families, and the
//! per-family decompositions of the contained pattern. [`perm`] and
//! [`series`] are the underlying vocabulary: permutations with occurrence
//! counting, and polynomial / rational generating function arithmetic over
//! arbitrary-precision integers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub mod classify;
pub mod formulas;
pub mod oracle;
pub mod perm;
pub mod series;

pub use classify::{canonicalize, Decomposition, Family, ForbiddenSet, SymmetryMap};
pub use formulas::{count_quad_quint, evaluate, GfResult, Options, Step};
pub use oracle::{Exec, Mode, Oracle, OracleCache, SequenceTable};
pub use perm::{Permutation, Word};
pub use series::{Polynomial, RationalGF, TruncatedSeries};

/// Default ceiling for brute-force enumeration; n! growth makes anything
/// larger useless interactively.
pub const DEFAULT_GUARD: usize = 12;

/// Ceiling for series orders computed by the occurrence automaton. The
/// automaton's state count is bounded by the number of avoiders of that
/// length, so this also bounds its memory.
pub const MAX_ORDER: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("forbidden set rejected: {0}")]
    BadForbiddenSet(String),
    #[error("enumeration length {n} exceeds guard {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("series order {order} exceeds supported maximum {max}")]
    OrderExceeded { order: usize, max: usize },
    #[error("pattern contains forbidden {pattern} at positions {positions:?}")]
    NotInClass {
        pattern: String,
        /// 1-based positions of the violating occurrence.
        positions: Vec<usize>,
    },
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("no symmetry maps the forbidden set onto a canonical family: {0}")]
    Unreducible(String),
}

type GfKey = (ForbiddenSet, Permutation, usize);

/// Shared memo for a run of queries: avoider lists for the oracle and
/// finished generating-function results keyed by canonical query. Entries
/// are write-once; concurrent duplicate computation is allowed and harmless.
#[derive(Default)]
pub struct Cache {
    pub oracle: oracle::OracleCache,
    pub(crate) gf: Mutex<HashMap<GfKey, Arc<GfResult>>>,
}

impl Cache {
    pub fn new() -> Self {
        Self::default()
    }
}
