//! Counting against shape tables: four or five forbidden patterns leave at
//! most two avoiders per length (explicit shapes), and sets containing both
//! monotone triples leave none at all past length four, so small direct
//! enumeration finishes those off.

use std::sync::OnceLock;

use crate::classify::{canonicalize, ForbiddenSet};
use crate::oracle::Oracle;
use crate::perm::Permutation;
use crate::series::TruncatedSeries;
use crate::{Cache, Error};

use super::{Options, Parts, Step};

struct ShapeTables {
    q1: ForbiddenSet,
    q2: ForbiddenSet,
    q3: ForbiddenSet,
    quint: ForbiddenSet,
}

fn tables() -> &'static ShapeTables {
    static TABLES: OnceLock<ShapeTables> = OnceLock::new();
    TABLES.get_or_init(|| ShapeTables {
        q1: ForbiddenSet::parse("123,132,213,231").unwrap(),
        q2: ForbiddenSet::parse("123,132,231,312").unwrap(),
        q3: ForbiddenSet::parse("132,213,231,312").unwrap(),
        quint: ForbiddenSet::parse("132,213,231,312,321").unwrap(),
    })
}

/// The avoiders of a canonical shape-table set at length `n`.
fn shapes(set: &ForbiddenSet, n: usize) -> Vec<Permutation> {
    let t = tables();
    let mut out: Vec<Permutation> = Vec::with_capacity(2);
    if *set == t.q1 {
        out.push(Permutation::descending(n));
        if n >= 2 {
            // all but the bottom two values descending, then 1, 2
            let mut v: Vec<u8> = (3..=n as u8).rev().collect();
            v.extend([1, 2]);
            out.push(Permutation::new(v).expect("shape is a permutation"));
        }
    } else if *set == t.q2 {
        out.push(Permutation::descending(n));
        if n >= 1 {
            // descending with the maximum moved to the end
            let mut v: Vec<u8> = (1..n as u8).rev().collect();
            v.push(n as u8);
            out.push(Permutation::new(v).expect("shape is a permutation"));
        }
    } else if *set == t.q3 {
        out.push(Permutation::identity(n));
        out.push(Permutation::descending(n));
    } else if *set == t.quint {
        out.push(Permutation::identity(n));
        if n <= 2 {
            out.push(Permutation::descending(n));
        }
    } else {
        unreachable!("not a canonical shape-table set");
    }
    out.sort();
    out.dedup();
    out
}

fn describe(set: &ForbiddenSet) -> &'static str {
    let t = tables();
    if *set == t.q1 {
        "the descending permutation and the one ending in its two smallest values ascending"
    } else if *set == t.q2 {
        "the descending permutation plain and with its maximum moved to the end"
    } else if *set == t.q3 {
        "the identity and the descending permutation"
    } else {
        "the identity, plus the descending permutation up to length two"
    }
}

fn shape_once(set: &ForbiddenSet, tau: &Permutation, n: usize) -> u64 {
    shapes(set, n)
        .iter()
        .filter(|q| q.contains_exactly_once(tau))
        .count() as u64
}

/// Exactly-once count at a single length for a forbidden set of four or
/// five patterns, or for any set containing both monotone triples. The
/// former are counted through their canonical shape table; the latter are
/// enumerated directly, since their avoiders stop at length four.
pub fn count_quad_quint(
    cache: &Cache,
    set: &ForbiddenSet,
    tau: &Permutation,
    n: usize,
) -> Result<u64, Error> {
    if set.has_monotone_pair() {
        if n >= 7 {
            return Ok(0);
        }
        let oracle = Oracle::new(&cache.oracle).with_guard(6);
        let avs = oracle.avoiders(set, n)?;
        return Ok(avs.iter().filter(|q| q.contains_exactly_once(tau)).count() as u64);
    }
    if set.len() < 4 {
        return Err(Error::Unsupported(format!(
            "shape-table counting covers four or five patterns, not {}",
            set.len()
        )));
    }
    if n > 255 {
        // shapes are materialized as permutations, which stop at 255
        return Err(Error::GuardExceeded { n, guard: 255 });
    }
    let c = canonicalize(set, tau)?;
    Ok(shape_once(&c.set, &c.tau, n))
}

/// Series evaluator used by dispatch once the set is already canonical.
pub(super) fn shape_series(
    set: &ForbiddenSet,
    tau: &Permutation,
    opts: &Options,
) -> Result<Parts, Error> {
    let counts: Vec<u64> = (0..=opts.order).map(|n| shape_once(set, tau, n)).collect();
    let series = TruncatedSeries::from_counts(&counts, opts.order);
    let steps = vec![Step::new(
        "shape-table",
        format!(
            "avoiders of {set} are {}; counted {tau} in each through length {}",
            describe(set),
            opts.order
        ),
    )];
    Ok((None, series, steps))
}
