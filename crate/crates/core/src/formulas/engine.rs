//! Occurrence-counting automata over recursively structured avoider classes.
//!
//! Each supported avoider class is closed under one of three "grow by a
//! top block" constructions:
//!
//! * front block: a descending run ending in the new maximum is prepended
//!   (the {123,132} avoiders),
//! * top run: an ascending run of the largest values is prepended (the
//!   {132,213} avoiders, and the {123,132,213} avoiders when runs are
//!   capped at two),
//! * end max: the new maximum lands at the front or the back (the
//!   {132,231} avoiders).
//!
//! The automaton walks lengths 0..=order. A state is the profile of
//! occurrence counts, capped at two, of a fixed chain of sub-patterns of
//! tau; the cap is sound because every transition is a nonnegative integer
//! combination of old counts, so the classes "zero", "one", "two or more"
//! are preserved. Weights count avoiders sharing a profile, and the
//! exactly-once answer for length n is the total weight of states whose
//! full-pattern entry is exactly one.

use std::collections::HashMap;

use crate::perm::Permutation;

type Profile = Vec<u8>;
type Level = HashMap<Profile, u64>;

pub(super) fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k {
        // multiply first: the running product of i+1 consecutive binomial
        // steps is always divisible by i+1
        out = out * (n - i) as u64 / (i + 1) as u64;
    }
    out
}

fn cap(total: u64) -> u8 {
    total.min(2) as u8
}

fn empty_profile(len: usize) -> Profile {
    let mut p = vec![0u8; len];
    p[0] = 1; // the empty pattern occurs once in anything
    p
}

fn once_total(level: &Level, full: usize) -> u64 {
    level
        .iter()
        .filter(|(state, _)| state[full] == 1)
        .map(|(_, w)| w)
        .sum()
}

/// How a chain pattern can straddle a prepended descending-run-then-max
/// block. Only two head shapes of the pattern embed into such a block:
/// the whole leading block of the pattern (its top values, maximum last),
/// or a prefix of a leading run of consecutive descents (maximum first).
enum FrontHead {
    /// Maximum sits at 1-based position u >= 2: the only split takes the
    /// pattern's whole leading block out of the new one, C(t-1, u-1) ways.
    MaxAt(usize),
    /// Maximum first, followed by a run of m-1 consecutive descents:
    /// splits of size s = 1..=m are descending prefixes, C(t-1, s) ways
    /// plus one extra way (the block's final maximum) when s = 1.
    MaxFirst { m: usize },
}

/// Exactly-once counts for the front-block class: every avoider is a
/// descending run ending in the new maximum stacked on a smaller avoider.
pub(crate) fn staircase_counts(tau: &Permutation, order: usize) -> Vec<u64> {
    let k = tau.len();
    let heads: Vec<FrontHead> = (1..=k)
        .map(|v| {
            let rho = tau.restrict_to_bottom(v);
            let vals = rho.values();
            if vals[0] as usize == v {
                let mut m = 1;
                while m < v && vals[m] as usize == v - m {
                    m += 1;
                }
                FrontHead::MaxFirst { m }
            } else {
                let u = vals.iter().position(|&x| x as usize == v).unwrap() + 1;
                FrontHead::MaxAt(u)
            }
        })
        .collect();

    let mut levels: Vec<Level> = Vec::with_capacity(order + 1);
    levels.push(Level::from([(empty_profile(k + 1), 1)]));
    for n in 1..=order {
        let mut cur = Level::new();
        for t in 1..=n {
            for (state, w) in &levels[n - t] {
                let mut next = empty_profile(k + 1);
                for v in 1..=k {
                    let mut total = state[v] as u64;
                    match heads[v - 1] {
                        FrontHead::MaxAt(u) => {
                            total += binom(t - 1, u - 1) * state[v - u] as u64;
                        }
                        FrontHead::MaxFirst { m } => {
                            for s in 1..=m {
                                let ways = binom(t - 1, s) + u64::from(s == 1);
                                total += ways * state[v - s] as u64;
                            }
                        }
                    }
                    next[v] = cap(total);
                }
                *cur.entry(next).or_insert(0) += w;
            }
        }
        levels.push(cur);
    }
    (0..=order).map(|n| once_total(&levels[n], k)).collect()
}

/// Exactly-once counts for the top-run class: every avoider is an
/// ascending run of the largest values prepended to a smaller avoider.
/// `max_run` caps the run length (two for the triple family).
pub(crate) fn top_run_counts(tau: &Permutation, order: usize, max_run: Option<usize>) -> Vec<u64> {
    // The chain tracks run suffixes of tau; entry i is the last i runs.
    // A prepended run of length l can host only the whole first run of a
    // chain entry (an ascending prefix of anything shorter misses the
    // entry's top values, and anything longer has an internal descent).
    let vals = tau.values();
    let mut run_lens: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < vals.len() {
        let mut j = i + 1;
        while j < vals.len() && vals[j] == vals[j - 1] + 1 {
            j += 1;
        }
        // runs of a top-run avoider are ascending by consecutive values
        run_lens.push(j - i);
        i = j;
    }
    let m = run_lens.len();
    let first_len: Vec<usize> = (1..=m).map(|i| run_lens[m - i]).collect();

    let mut levels: Vec<Level> = Vec::with_capacity(order + 1);
    levels.push(Level::from([(empty_profile(m + 1), 1)]));
    for n in 1..=order {
        let mut cur = Level::new();
        let top = max_run.unwrap_or(n).min(n);
        for l in 1..=top {
            for (state, w) in &levels[n - l] {
                let mut next = empty_profile(m + 1);
                for i in 1..=m {
                    let total =
                        state[i] as u64 + binom(l, first_len[i - 1]) * state[i - 1] as u64;
                    next[i] = cap(total);
                }
                *cur.entry(next).or_insert(0) += w;
            }
        }
        levels.push(cur);
    }
    (0..=order).map(|n| once_total(&levels[n], m)).collect()
}

/// Exactly-once counts for the end-max class: every avoider places its
/// maximum at the front or the back of a smaller avoider.
pub(crate) fn valley_counts(tau: &Permutation, order: usize) -> Vec<u64> {
    let k = tau.len();
    let flags: Vec<(bool, bool)> = (1..=k)
        .map(|v| {
            let rho = tau.restrict_to_bottom(v);
            let vals = rho.values();
            let starts = vals[0] as usize == v;
            let ends = vals[v - 1] as usize == v;
            (starts, ends)
        })
        .collect();

    let mut prev = Level::from([(empty_profile(k + 1), 1)]);
    let mut counts = vec![once_total(&prev, k)];
    for n in 1..=order {
        let mut cur = Level::new();
        for (state, w) in &prev {
            let mut front = empty_profile(k + 1);
            let mut back = empty_profile(k + 1);
            for v in 1..=k {
                let (starts, ends) = flags[v - 1];
                front[v] = cap(state[v] as u64 + u64::from(starts) * state[v - 1] as u64);
                back[v] = cap(state[v] as u64 + u64::from(ends) * state[v - 1] as u64);
            }
            *cur.entry(front).or_insert(0) += w;
            if n >= 2 {
                // for n = 1 both children are the same one-letter permutation
                *cur.entry(back).or_insert(0) += w;
            }
        }
        counts.push(once_total(&cur, k));
        prev = cur;
    }
    counts
}
