//! Evaluators for the four canonical three-pattern families.
//!
//! ShortTopRuns shares the run automaton with TopRuns, capped at runs of
//! two, and attaches closed forms by peeling the leading run down to a
//! small table of verified bases. The other three families have only k
//! avoiders of length k apiece, so every member pattern gets an exact
//! closed form directly from its shape.

use crate::classify::{self, ForbiddenSet, Params};
use crate::perm::Permutation;
use crate::series::{Polynomial, RationalGF, TruncatedSeries};
use crate::Error;

use super::pairs::one_minus_x;
use super::{attach, engine, Parts, Step};

pub(super) fn short_top_runs(
    set: &ForbiddenSet,
    tau: &Permutation,
    order: usize,
) -> Result<Parts, Error> {
    let counts = engine::top_run_counts(tau, order, Some(2));
    let series = TruncatedSeries::from_counts(&counts, order);
    let mut steps = Vec::new();
    let mut cur = tau.clone();
    while !cur.is_empty() {
        let d = classify::decompose(&cur, set)?;
        let Params::Lead { len, remainder } = &d.params else {
            unreachable!("short-top-run patterns peel from the front")
        };
        let rule = if *len == 1 {
            "peel-lead-max"
        } else {
            "peel-lead-pair"
        };
        steps.push(Step::new(rule, format!("{cur}: {}", d.params)));
        cur = remainder.clone();
    }
    steps.push(Step::new(
        "occurrence-automaton",
        format!("coefficients through x^{order} from the run-capped occurrence automaton"),
    ));
    let closed = attach(peel_candidate(tau), &series, order);
    if let Some(gf) = &closed {
        steps.push(Step::new(
            "fixed-base",
            format!("peeling reaches a verified base: {gf}"),
        ));
    }
    Ok((closed, series, steps))
}

/// Closed forms by peeling the leading run. A leading pair always
/// contributes x^2/(1-x); a leading maximum contributes x only when the
/// next letter is the second largest. Everything else must bottom out in
/// the explicit base table.
fn peel_candidate(tau: &Permutation) -> Option<RationalGF> {
    let k = tau.len();
    let v = tau.values();
    match v {
        [1] => return Some(RationalGF::monomial(1)),
        [1, 2] => {
            return Some(RationalGF::new(
                Polynomial::x_power(2),
                vec![(one_minus_x(), 2)],
            ))
        }
        [2, 1] => return Some(RationalGF::monomial(2)),
        [2, 3, 1] | [3, 1, 2] => {
            return Some(RationalGF::new(
                Polynomial::x_power(3),
                vec![(one_minus_x(), 1)],
            ))
        }
        [3, 2, 1] => return Some(RationalGF::monomial(3)),
        [4, 2, 3, 1] => return Some(RationalGF::monomial(4)),
        _ => {}
    }
    if k >= 2 && v[0] as usize == k - 1 && v[1] as usize == k {
        let tail = peel_candidate(&tau.restrict_to_bottom(k - 2))?;
        let pair = RationalGF::new(Polynomial::x_power(2), vec![(one_minus_x(), 1)]);
        return Some(pair.mul(&tail));
    }
    if k >= 2 && v[0] as usize == k && v[1] as usize == k - 1 {
        let tail = peel_candidate(&tau.restrict_to_bottom(k - 1))?;
        return Some(RationalGF::monomial(1).mul(&tail));
    }
    None
}

pub(super) fn almost_descent(
    set: &ForbiddenSet,
    tau: &Permutation,
    order: usize,
) -> Result<Parts, Error> {
    let d = classify::decompose(tau, set)?;
    let Params::Shape { r, k } = d.params else {
        unreachable!("almost-descent patterns are shapes")
    };
    let (closed, how) = if r + 1 == k {
        // the descending pattern: one hit at length k, and the displaced
        // letter of a longer avoider can sit in k-1 spots at length k+1
        let mut coeffs = vec![0i64; k + 2];
        coeffs[k] = 1;
        coeffs[k + 1] = (k - 1) as i64;
        (
            RationalGF::from_polynomial(Polynomial::from_i64(&coeffs)),
            "tau is the descending pattern",
        )
    } else if r == 0 {
        (
            RationalGF::new(Polynomial::x_power(k), vec![(one_minus_x(), 1)]),
            "tau descends with its maximum at the end, which extends freely",
        )
    } else {
        (
            RationalGF::monomial(k),
            "tau is rigid: only one avoider per length matches and only at length k",
        )
    };
    let series = closed.expand(order);
    let steps = vec![Step::new(
        "layered-shape",
        format!("{how}; count is {closed}"),
    )];
    Ok((Some(closed), series, steps))
}

pub(super) fn rotated_descent(
    set: &ForbiddenSet,
    tau: &Permutation,
    order: usize,
) -> Result<Parts, Error> {
    let d = classify::decompose(tau, set)?;
    let Params::Shape { r, k } = d.params else {
        unreachable!("rotated-descent patterns are shapes")
    };
    let (closed, how) = if r == k {
        // the descending pattern keeps exactly one occurrence in two of
        // the rotations at each length k+1 .. 2k-1
        let mut coeffs = vec![0i64; 2 * k];
        coeffs[k] = 1;
        for c in coeffs.iter_mut().skip(k + 1) {
            *c = 2;
        }
        (
            RationalGF::from_polynomial(Polynomial::from_i64(&coeffs)),
            "tau is the descending pattern",
        )
    } else {
        (RationalGF::monomial(k), "a proper rotation matches only itself")
    };
    let series = closed.expand(order);
    let steps = vec![Step::new(
        "layered-shape",
        format!("{how}; count is {closed}"),
    )];
    Ok((Some(closed), series, steps))
}

pub(super) fn fall_then_rise(
    set: &ForbiddenSet,
    tau: &Permutation,
    order: usize,
) -> Result<Parts, Error> {
    let d = classify::decompose(tau, set)?;
    let Params::Shape { r, k } = d.params else {
        unreachable!("fall-then-rise patterns are shapes")
    };
    let (closed, how) = if r == k && k >= 2 {
        (
            RationalGF::new(Polynomial::x_power(k), vec![(one_minus_x(), 1)]),
            "tau is the identity, which sits once in every longer rise",
        )
    } else {
        (RationalGF::monomial(k), "the fall pins the shape to length k")
    };
    let series = closed.expand(order);
    let steps = vec![Step::new(
        "layered-shape",
        format!("{how}; count is {closed}"),
    )];
    Ok((Some(closed), series, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn fs(s: &str) -> ForbiddenSet {
        ForbiddenSet::parse(s).unwrap()
    }

    fn coeffs(series: &TruncatedSeries) -> Vec<i64> {
        series
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn short_top_runs_peels_to_bases() {
        let set = fs("123,132,213");
        let (closed, _, _) = short_top_runs(&set, &p("12"), 10).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^2/(1-x)^2");
        let (closed, _, _) = short_top_runs(&set, &p("321"), 10).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
        let (closed, _, _) = short_top_runs(&set, &p("4231"), 10).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^4");
        // pair then pair: x^2/(1-x) * x^2/(1-x)^2
        let (closed, _, _) = short_top_runs(&set, &p("3412"), 10).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^4/(1-x)^3");
        // two single maxima, then the 312 base
        let (closed, _, _) = short_top_runs(&set, &p("54312"), 10).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^5/(1-x)");
    }

    #[test]
    fn short_top_runs_without_closed_form() {
        let set = fs("123,132,213");
        // the leading maximum is not followed by the second largest
        let (closed, series, _) = short_top_runs(&set, &p("53421"), 8).unwrap();
        assert!(closed.is_none());
        assert_eq!(coeffs(&series)[5], 1);
    }

    #[test]
    fn short_top_runs_narration() {
        let set = fs("123,132,213");
        let (_, _, steps) = short_top_runs(&set, &p("4231"), 6).unwrap();
        let rules: Vec<&str> = steps.iter().map(|s| s.rule).collect();
        assert_eq!(
            rules,
            [
                "peel-lead-max",
                "peel-lead-pair",
                "peel-lead-max",
                "occurrence-automaton",
                "fixed-base"
            ]
        );
    }

    #[test]
    fn almost_descent_shapes() {
        let set = fs("123,132,231");
        let (closed, series, _) = almost_descent(&set, &p("321"), 6).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3 + 2x^4");
        assert_eq!(coeffs(&series), [0, 0, 0, 1, 2, 0, 0]);
        let (closed, _, _) = almost_descent(&set, &p("213"), 6).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3/(1-x)");
        let (closed, _, _) = almost_descent(&set, &p("312"), 6).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
        let (closed, _, _) = almost_descent(&set, &p("1"), 6).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x");
    }

    #[test]
    fn rotated_descent_shapes() {
        let set = fs("123,231,312");
        let (closed, series, _) = rotated_descent(&set, &p("321"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3 + 2x^4 + 2x^5");
        assert_eq!(coeffs(&series), [0, 0, 0, 1, 2, 2, 0, 0]);
        let (closed, _, _) = rotated_descent(&set, &p("132"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
        let (closed, _, _) = rotated_descent(&set, &p("213"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
    }

    #[test]
    fn fall_then_rise_shapes() {
        let set = fs("132,213,231");
        let (closed, _, _) = fall_then_rise(&set, &p("123"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3/(1-x)");
        let (closed, _, _) = fall_then_rise(&set, &p("321"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
        let (closed, _, _) = fall_then_rise(&set, &p("312"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x^3");
        let (closed, _, _) = fall_then_rise(&set, &p("1"), 7).unwrap();
        assert_eq!(closed.unwrap().to_string(), "x");
    }
}
