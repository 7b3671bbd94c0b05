//! Evaluators for the four canonical two-pattern families.
//!
//! Three of them (Staircase, TopRuns, Valley) get their coefficients from
//! the occurrence automaton and attach a closed form only for the pattern
//! shapes where the product formula is verified sound. PrefixRotation
//! avoiders form an explicit finite catalogue per length, so its closed
//! forms are exact for every member pattern.

use crate::classify::{self, BlockKind, ForbiddenSet, Params};
use crate::perm::Permutation;
use crate::series::{Polynomial, RationalGF, TruncatedSeries};
use crate::Error;

use super::{attach, engine, Parts, Step};

/// 1 - x - ... - x^(r-1), the gap factor of a block of size r. For r = 1
/// this is just one and drops out of denominators.
pub(super) fn gap(r: usize) -> Polynomial {
    let mut coeffs = vec![-1i64; r];
    coeffs[0] = 1;
    Polynomial::from_i64(&coeffs)
}

pub(super) fn one_minus_x() -> Polynomial {
    Polynomial::from_i64(&[1, -1])
}

pub(super) fn staircase(set: &ForbiddenSet, tau: &Permutation, order: usize) -> Result<Parts, Error> {
    let counts = engine::staircase_counts(tau, order);
    let series = TruncatedSeries::from_counts(&counts, order);
    let mut steps = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    let mut cur = tau.clone();
    while !cur.is_empty() {
        let d = classify::decompose(&cur, set)?;
        let (rule, next) = match &d.params {
            Params::MaxRun { m, remainder } => {
                sizes.extend(std::iter::repeat(1).take(*m));
                ("leading-max-run", remainder.clone())
            }
            Params::DescThenMax { r, remainder } => {
                sizes.push(*r);
                ("desc-prefix-then-max", remainder.clone())
            }
            _ => unreachable!("staircase patterns decompose into blocks"),
        };
        steps.push(Step::new(rule, format!("{cur}: {}", d.params)));
        cur = next;
    }
    steps.push(Step::new(
        "occurrence-automaton",
        format!("coefficients through x^{order} from the front-block occurrence automaton"),
    ));
    let closed = attach(staircase_candidate(&sizes), &series, order);
    if let Some(gf) = &closed {
        steps.push(Step::new(
            "block-shape",
            format!("each block of size r contributes x^r/(1-x-...-x^(r-1)); sizes {sizes:?}"),
        ));
        steps.push(Step::new(
            "avoidance-cofactor",
            format!("the tail below the last block repeats its gap factor: {gf}"),
        ));
    }
    Ok((closed, series, steps))
}

/// The block product is sound when every block has size at least two and
/// the sizes never increase going down; smaller or growing blocks admit
/// extra occurrences that straddle block boundaries.
fn staircase_candidate(sizes: &[usize]) -> Option<RationalGF> {
    if sizes == [1] {
        return Some(RationalGF::monomial(1));
    }
    if sizes.iter().any(|&r| r < 2) || sizes.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let mut gf = RationalGF::from_polynomial(Polynomial::one());
    for &r in sizes {
        gf = gf.mul(&RationalGF::new(Polynomial::x_power(r), vec![(gap(r), 1)]));
    }
    let last = *sizes.last().expect("pattern is nonempty");
    Some(gf.mul(&RationalGF::new(Polynomial::one(), vec![(gap(last), 1)])))
}

pub(super) fn prefix_rotation(
    set: &ForbiddenSet,
    tau: &Permutation,
    order: usize,
) -> Result<Parts, Error> {
    let d = classify::decompose(tau, set)?;
    let Params::Blocks { kind } = d.params else {
        unreachable!("prefix-rotation patterns decompose into a single shape")
    };
    let (closed, step) = match kind {
        BlockKind::Identity { k } => {
            // one hit at length k, then rotations and insets built around
            // the pattern absorb the remaining lengths up to 2k-1
            let mut coeffs = vec![0i64; 2 * k];
            coeffs[k] = 1;
            for (j, c) in coeffs.iter_mut().enumerate().skip(k + 1) {
                *c = 2 * (2 * k - j) as i64;
            }
            let gf = RationalGF::from_polynomial(Polynomial::from_i64(&coeffs));
            let step = Step::new("identity-base", format!("{}; count is {gf}", d.params));
            (gf, step)
        }
        BlockKind::Rotation { .. } => {
            let gf = RationalGF::new(Polynomial::x_power(tau.len()), vec![(one_minus_x(), 1)]);
            let step = Step::new(
                "layered-shape",
                format!("{}; the fixed tail may grow freely: {gf}", d.params),
            );
            (gf, step)
        }
        BlockKind::Inset { .. } => {
            let gf = RationalGF::monomial(tau.len());
            let step = Step::new(
                "layered-shape",
                format!("{}; the shape is rigid: {gf}", d.params),
            );
            (gf, step)
        }
    };
    let series = closed.expand(order);
    Ok((Some(closed), series, vec![step]))
}

pub(super) fn top_runs(set: &ForbiddenSet, tau: &Permutation, order: usize) -> Result<Parts, Error> {
    let counts = engine::top_run_counts(tau, order, None);
    let series = TruncatedSeries::from_counts(&counts, order);
    let d = classify::decompose(tau, set)?;
    let Params::Runs { bounds } = &d.params else {
        unreachable!("top-run patterns decompose into runs")
    };
    let lens: Vec<usize> = bounds.windows(2).map(|w| w[0] - w[1]).collect();
    let mut steps = vec![Step::new("peel-run", format!("{tau}: {}", d.params))];
    steps.push(Step::new(
        "occurrence-automaton",
        format!("coefficients through x^{order} from the top-run occurrence automaton"),
    ));
    let closed = attach(run_candidate(&lens), &series, order);
    if let Some(gf) = &closed {
        steps.push(Step::new(
            "block-shape",
            format!("run lengths {lens:?} never increase, so runs factor: {gf}"),
        ));
    }
    Ok((closed, series, steps))
}

/// Peeling the leading run is sound only while run lengths never increase;
/// the last run keeps the squared gap of the single-run base case.
fn run_candidate(lens: &[usize]) -> Option<RationalGF> {
    if lens.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let mut gf = RationalGF::from_polynomial(Polynomial::one());
    for &l in lens {
        gf = gf.mul(&RationalGF::new(Polynomial::x_power(l), vec![(gap(l), 1)]));
    }
    let last = *lens.last().expect("pattern is nonempty");
    Some(gf.mul(&RationalGF::new(Polynomial::one(), vec![(gap(last), 1)])))
}

pub(super) fn valley(set: &ForbiddenSet, tau: &Permutation, order: usize) -> Result<Parts, Error> {
    let counts = engine::valley_counts(tau, order);
    let series = TruncatedSeries::from_counts(&counts, order);
    let mut steps = Vec::new();
    let mut cur = tau.clone();
    while !cur.is_empty() {
        let d = classify::decompose(&cur, set)?;
        let Params::Wrap { remainder, .. } = &d.params else {
            unreachable!("valley patterns decompose around their maximum")
        };
        steps.push(Step::new("peel-end-max", format!("{cur}: {}", d.params)));
        cur = remainder.clone();
    }
    steps.push(Step::new(
        "occurrence-automaton",
        format!("coefficients through x^{order} from the end-max occurrence automaton"),
    ));
    let k = tau.len();
    let candidate = if *tau == Permutation::identity(k) || *tau == Permutation::descending(k) {
        Some(RationalGF::new(
            Polynomial::x_power(k),
            vec![(one_minus_x(), (k - 1) as u32)],
        ))
    } else {
        None
    };
    let closed = attach(candidate, &series, order);
    if let Some(gf) = &closed {
        steps.push(Step::new(
            "monotone-base",
            format!("a monotone pattern of length {k} extends one letter at a time: {gf}"),
        ));
    }
    Ok((closed, series, steps))
}
