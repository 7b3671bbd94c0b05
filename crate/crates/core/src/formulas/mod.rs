//! Generating functions for the counting problem itself.
//!
//! `evaluate` answers one query: how many permutations of each length avoid
//! every pattern of the forbidden set and contain one further pattern
//! exactly once. The answer always includes exact series coefficients; a
//! closed form is attached only when a candidate formula reproduces those
//! coefficients, so a displayed formula is never less trustworthy than the
//! series next to it.

use crate::classify::ForbiddenSet;
use crate::oracle::Exec;
use crate::perm::Permutation;
use crate::series::{RationalGF, TruncatedSeries};

mod dispatch;
mod engine;
mod pairs;
mod quads;
mod triples;

pub use dispatch::evaluate;
pub use quads::count_quad_quint;

/// One rule application in a derivation, from guards and symmetry
/// transport down to the family-specific structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub rule: &'static str,
    pub detail: String,
}

impl Step {
    pub(crate) fn new(rule: &'static str, detail: String) -> Self {
        Self { rule, detail }
    }
}

/// The full answer to one query.
#[derive(Clone, Debug)]
pub struct GfResult {
    pub set: ForbiddenSet,
    pub tau: Permutation,
    pub order: usize,
    /// Attached only when verified against `series` term by term.
    pub closed: Option<RationalGF>,
    /// Exact coefficients for lengths `0..=order`; always present.
    pub series: TruncatedSeries,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Highest series coefficient to compute, at most `MAX_ORDER`.
    pub order: usize,
    /// Execution strategy for the enumeration fallbacks.
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            order: 12,
            exec: Exec::default(),
        }
    }
}

/// What each family evaluator returns before dispatch wraps it up.
type Parts = (Option<RationalGF>, TruncatedSeries, Vec<Step>);

/// Attach `candidate` only if its expansion reproduces the computed
/// series; silently drop it otherwise.
fn attach(
    candidate: Option<RationalGF>,
    series: &TruncatedSeries,
    order: usize,
) -> Option<RationalGF> {
    let c = candidate?;
    if c.expand(order) == *series {
        Some(c)
    } else {
        None
    }
}
