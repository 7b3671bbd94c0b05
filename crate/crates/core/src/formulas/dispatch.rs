//! Query entry point: guards, symmetry reduction, family dispatch, and
//! memoization of finished answers.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::classify::{canonicalize, Family, ForbiddenSet};
use crate::oracle::{Mode, Oracle};
use crate::perm::Permutation;
use crate::series::{Polynomial, RationalGF, TruncatedSeries};
use crate::{Cache, Error, MAX_ORDER};

use super::{pairs, quads, triples, GfResult, Options, Parts, Step};

/// Computes the exactly-once generating function for one query. Results
/// are memoized per canonical form, so symmetric queries share work.
pub fn evaluate(
    cache: &Cache,
    set: &ForbiddenSet,
    tau: &Permutation,
    opts: &Options,
) -> Result<Arc<GfResult>, Error> {
    if opts.order > MAX_ORDER {
        return Err(Error::OrderExceeded {
            order: opts.order,
            max: MAX_ORDER,
        });
    }
    if set.len() < 2 {
        return Err(Error::Unsupported(
            "a single forbidden pattern is outside this counting scheme; give at least two".into(),
        ));
    }
    if tau.is_empty() {
        return Err(Error::Unsupported(
            "the empty pattern occurs once in everything, so there is nothing to count".into(),
        ));
    }
    // A pattern containing a forbidden one cannot occur in any avoider.
    for p in set.patterns() {
        if let Some(w) = tau.find_occurrence(p) {
            let positions: Vec<usize> = w.iter().map(|i| i + 1).collect();
            return Ok(Arc::new(GfResult {
                set: set.clone(),
                tau: tau.clone(),
                order: opts.order,
                closed: Some(RationalGF::zero()),
                series: TruncatedSeries::zero(opts.order),
                steps: vec![Step::new(
                    "forbidden-pattern-guard",
                    format!("{tau} contains {p} at positions {positions:?}, so no avoider contains it"),
                )],
            }));
        }
    }
    let c = canonicalize(set, tau)?;
    let key = (c.set.clone(), c.tau.clone(), opts.order);
    let hit = cache.gf.lock().unwrap().get(&key).cloned();
    let canonical = match hit {
        Some(found) => found,
        None => {
            let (closed, series, steps) = match c.family {
                Family::MonotoneGuard => monotone_guard(cache, &c.set, &c.tau, opts)?,
                Family::Staircase => pairs::staircase(&c.set, &c.tau, opts.order)?,
                Family::PrefixRotation => pairs::prefix_rotation(&c.set, &c.tau, opts.order)?,
                Family::TopRuns => pairs::top_runs(&c.set, &c.tau, opts.order)?,
                Family::Valley => pairs::valley(&c.set, &c.tau, opts.order)?,
                Family::ShortTopRuns => triples::short_top_runs(&c.set, &c.tau, opts.order)?,
                Family::AlmostDescent => triples::almost_descent(&c.set, &c.tau, opts.order)?,
                Family::RotatedDescent => triples::rotated_descent(&c.set, &c.tau, opts.order)?,
                Family::FallThenRise => triples::fall_then_rise(&c.set, &c.tau, opts.order)?,
                Family::QuadOrQuint => quads::shape_series(&c.set, &c.tau, opts)?,
            };
            let fresh = Arc::new(GfResult {
                set: c.set.clone(),
                tau: c.tau.clone(),
                order: opts.order,
                closed,
                series,
                steps,
            });
            let mut lock = cache.gf.lock().unwrap();
            Arc::clone(lock.entry(key).or_insert(fresh))
        }
    };
    if c.map.is_identity() {
        return Ok(canonical);
    }
    let mut steps = vec![Step::new(
        "symmetry",
        format!(
            "the map ({}) carries avoiding {set} containing {tau} onto avoiding {} containing {}",
            c.map, c.set, c.tau
        ),
    )];
    steps.extend(canonical.steps.iter().cloned());
    Ok(Arc::new(GfResult {
        set: set.clone(),
        tau: tau.clone(),
        order: opts.order,
        closed: canonical.closed.clone(),
        series: canonical.series.clone(),
        steps,
    }))
}

/// Sets forbidding both monotone triples: every permutation of length five
/// or more contains one of them (Erdos and Szekeres), so the whole count
/// is the polynomial read off lengths up to six.
fn monotone_guard(
    cache: &Cache,
    set: &ForbiddenSet,
    tau: &Permutation,
    opts: &Options,
) -> Result<Parts, Error> {
    let oracle = Oracle::new(&cache.oracle).with_guard(6).with_exec(opts.exec);
    let table = oracle.sequence(set, tau, Mode::ExactlyOnce, 6)?;
    let series = TruncatedSeries::from_counts(&table.counts, opts.order);
    let poly = Polynomial::new(table.counts.iter().map(|&c| BigInt::from(c)).collect());
    let steps = vec![
        Step::new(
            "monotone-pair-guard",
            format!("{set} forbids both monotone triples, so no avoider has length five or more"),
        ),
        Step::new(
            "oracle-fallback",
            "lengths up to six enumerated directly".to_string(),
        ),
    ];
    Ok((Some(RationalGF::from_polynomial(poly)), series, steps))
}
