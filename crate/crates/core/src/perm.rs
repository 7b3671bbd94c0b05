//! Permutations in one-line notation and the occurrence machinery used by
//! everything else: pattern counting with an early-exit cap, witness
//! extraction, the three symmetry operations, and bounded lexicographic
//! enumeration.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A permutation of `{1, .., n}` in one-line notation. Values are validated
/// on construction and immutable afterwards. Ordering is lexicographic on
/// the value sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// Checks that `values` is a bijection on `1..=n`.
    pub fn new(values: Vec<u8>) -> Result<Self, Error> {
        let n = values.len();
        if n > 255 {
            return Err(Error::InvalidPermutation {
                n,
                reason: "length above 255".into(),
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= 255);
        Self {
            values: (1..=n as u8).collect(),
        }
    }

    pub fn descending(n: usize) -> Self {
        assert!(n <= 255);
        Self {
            values: (1..=n as u8).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Number of occurrences of `tau` as a classical pattern, i.e. the
    /// number of subsequences of `self` order-isomorphic to `tau`. With
    /// `cap = Some(c)` the scan stops as soon as `c` occurrences are found,
    /// so the result is `min(true count, c)`. The empty pattern occurs once
    /// in everything.
    pub fn occurrences(&self, tau: &Permutation, cap: Option<u64>) -> u64 {
        count_embeddings(&self.values, &tau.values, cap, false)
    }

    pub fn contains(&self, tau: &Permutation) -> bool {
        self.occurrences(tau, Some(1)) == 1
    }

    pub fn contains_exactly_once(&self, tau: &Permutation) -> bool {
        self.occurrences(tau, Some(2)) == 1
    }

    /// True when no pattern of `patterns` occurs in `self`.
    pub fn avoids(&self, patterns: &[Permutation]) -> bool {
        patterns.iter().all(|p| !self.contains(p))
    }

    /// 0-based positions of the lexicographically first occurrence of
    /// `tau`, if any. Used for violation witnesses in error reports.
    pub fn find_occurrence(&self, tau: &Permutation) -> Option<Vec<usize>> {
        first_embedding(&self.values, &tau.values)
    }

    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.values.len() as u8;
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0u8; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u8 + 1;
        }
        Self { values }
    }

    /// The pattern formed by the values `1..=v`, kept in their original
    /// order. Since those values are already `1..=v`, no renumbering is
    /// needed; the result is a permutation of `{1..v}`.
    pub fn restrict_to_bottom(&self, v: usize) -> Permutation {
        Self {
            values: self
                .values
                .iter()
                .copied()
                .filter(|&x| (x as usize) <= v)
                .collect(),
        }
    }

    /// Accepts both syntaxes: compact digits ("31524") for values up to 9,
    /// and comma-separated values ("11,3,10,...") for anything longer.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        let values = if text.contains(',') {
            text.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad value {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(values)
    }

    /// All permutations of `{1..n}` in lexicographic order. Refuses n above
    /// `guard` because the output has n! elements.
    pub fn enumerate(n: usize, guard: usize) -> Result<LexPerms, Error> {
        if n > guard {
            return Err(Error::GuardExceeded { n, guard });
        }
        Ok(LexPerms {
            next: Some((1..=n as u8).collect()),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Iterator over all permutations of a fixed length, lexicographic.
pub struct LexPerms {
    next: Option<Vec<u8>>,
}

impl Iterator for LexPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let out = Permutation {
            values: cur.clone(),
        };
        self.next = next_lex(cur);
        Some(out)
    }
}

fn next_lex(mut v: Vec<u8>) -> Option<Vec<u8>> {
    if v.len() < 2 {
        return None;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

/// A sequence of distinct positive integers that need not be a permutation
/// of an initial segment; `standardize` maps it onto one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    entries: Vec<u32>,
}

impl Word {
    pub fn new(entries: Vec<u32>) -> Result<Self, Error> {
        let mut sorted: Vec<u32> = entries.clone();
        sorted.sort_unstable();
        if sorted.iter().any(|&v| v == 0) {
            return Err(Error::Parse("word entries must be positive".into()));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("word entries must be distinct".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Replaces each entry by its rank, giving the unique order-isomorphic
    /// permutation. Idempotent on permutations.
    pub fn standardize(&self) -> Result<Permutation, Error> {
        let mut sorted: Vec<u32> = self.entries.clone();
        sorted.sort_unstable();
        let values = self
            .entries
            .iter()
            .map(|v| (sorted.partition_point(|&x| x < *v) + 1) as u8)
            .collect();
        Permutation::new(values)
    }
}

/// Tightest earlier neighbours of each pattern slot, by value. For slot j,
/// `lo[j]` is the earlier slot holding the largest value below `pat[j]`
/// (usize::MAX when none), `hi[j]` the smallest value above. Checking a
/// candidate text value against just these two slots enforces order
/// isomorphism with every earlier slot.
fn neighbor_bounds(pat: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let k = pat.len();
    let mut lo = vec![usize::MAX; k];
    let mut hi = vec![usize::MAX; k];
    for j in 0..k {
        for i in 0..j {
            if pat[i] < pat[j] && (lo[j] == usize::MAX || pat[i] > pat[lo[j]]) {
                lo[j] = i;
            }
            if pat[i] > pat[j] && (hi[j] == usize::MAX || pat[i] < pat[hi[j]]) {
                hi[j] = i;
            }
        }
    }
    (lo, hi)
}

/// Visits embeddings of `pat` into `text` (positions increasing, values
/// order-isomorphic) in lexicographic position order. The visitor returns
/// false to stop the scan. `anchored` pins the final pattern slot to the
/// last text position. Works on any sequence of distinct values, not just
/// permutations of 1..n.
fn scan_embeddings(
    text: &[u8],
    pat: &[u8],
    anchored: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let k = pat.len();
    let n = text.len();
    if k == 0 {
        if !anchored {
            visit(&[]);
        }
        return;
    }
    if k > n {
        return;
    }
    let (lo, hi) = neighbor_bounds(pat);
    let mut pos = vec![0usize; k];
    let mut vals = vec![0u8; k];

    // Plain recursion; depth is |pat|.
    fn go(
        text: &[u8],
        lo: &[usize],
        hi: &[usize],
        anchored: bool,
        j: usize,
        from: usize,
        pos: &mut [usize],
        vals: &mut [u8],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let k = lo.len();
        let n = text.len();
        if j == k {
            return visit(pos);
        }
        let last_ok = n - (k - j); // latest position leaving room for the rest
        let (start, end) = if anchored && j == k - 1 {
            if from > n - 1 {
                return true;
            }
            (n - 1, n - 1)
        } else {
            (from, last_ok)
        };
        for p in start..=end {
            let v = text[p];
            if lo[j] != usize::MAX && v <= vals[lo[j]] {
                continue;
            }
            if hi[j] != usize::MAX && v >= vals[hi[j]] {
                continue;
            }
            pos[j] = p;
            vals[j] = v;
            if !go(text, lo, hi, anchored, j + 1, p + 1, pos, vals, visit) {
                return false;
            }
        }
        true
    }

    go(
        text, &lo, &hi, anchored, 0, 0, &mut pos, &mut vals, visit,
    );
}

pub(crate) fn count_embeddings(text: &[u8], pat: &[u8], cap: Option<u64>, anchored: bool) -> u64 {
    let limit = cap.unwrap_or(u64::MAX);
    if limit == 0 {
        return 0;
    }
    let mut found = 0u64;
    scan_embeddings(text, pat, anchored, &mut |_| {
        found += 1;
        found < limit
    });
    found
}

pub(crate) fn first_embedding(text: &[u8], pat: &[u8]) -> Option<Vec<usize>> {
    let mut hit = None;
    scan_embeddings(text, pat, false, &mut |pos| {
        hit = Some(pos.to_vec());
        false
    });
    hit
}

/// Does adding the final letter of `text` complete an occurrence of `pat`?
/// The incremental avoidance check used by the oracle's prefix search.
pub(crate) fn embedding_ends_at_last(text: &[u8], pat: &[u8]) -> bool {
    if pat.is_empty() {
        return false;
    }
    count_embeddings(text, pat, Some(1), true) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    /// Independent occurrence counter: check every k-subset of positions.
    fn occurrences_exhaustive(pi: &Permutation, tau: &Permutation) -> u64 {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if k > n {
                return vec![];
            }
            let mut out = subsets(n - 1, k)
                .into_iter()
                .collect::<Vec<_>>();
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let pv = pi.values();
        let tv = tau.values();
        subsets(pv.len(), tv.len())
            .into_iter()
            .filter(|s| {
                (0..s.len()).all(|a| {
                    (0..s.len()).all(|b| (pv[s[a]] < pv[s[b]]) == (tv[a] < tv[b]))
                })
            })
            .count() as u64
    }

    #[test]
    fn construction_rejects_junk() {
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn parse_both_syntaxes() {
        assert_eq!(p("312").values(), &[3, 1, 2]);
        assert_eq!(p("3,1,2"), p("312"));
        let long = Permutation::parse("10,9,8,7,6,5,4,3,2,1").unwrap();
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(p("312").to_string(), "312");
        assert!(Permutation::parse("").is_err());
        assert!(Permutation::parse("1x2").is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        for n in 0..=6 {
            for q in Permutation::enumerate(n, 12).unwrap() {
                if n > 0 {
                    assert_eq!(Permutation::parse(&q.to_string()).unwrap(), q);
                }
            }
        }
    }

    #[test]
    fn occurrence_counts() {
        assert_eq!(p("123").occurrences(&p("12"), None), 3);
        assert_eq!(p("2413").occurrences(&p("12"), None), 3);
        assert_eq!(p("2413").occurrences(&p("21"), None), 3);
        assert_eq!(p("12345").occurrences(&p("123"), None), 10);
        assert_eq!(p("4231").occurrences(&p("312"), None), 1);
        // empty pattern occurs once in everything, including the empty word
        assert_eq!(p("321").occurrences(&Permutation::empty(), None), 1);
        assert_eq!(
            Permutation::empty().occurrences(&Permutation::empty(), None),
            1
        );
        // pattern longer than the host
        assert_eq!(p("12").occurrences(&p("123"), None), 0);
    }

    #[test]
    fn occurrence_cap_truncates() {
        assert_eq!(p("12345").occurrences(&p("123"), Some(2)), 2);
        assert_eq!(p("12345").occurrences(&p("123"), Some(1)), 1);
        assert_eq!(p("54321").occurrences(&p("123"), Some(2)), 0);
        assert!(p("2341").contains_exactly_once(&p("123")));
        assert!(!p("1234").contains_exactly_once(&p("123")));
    }

    #[test]
    fn matches_exhaustive_counter() {
        for n in 0..=6 {
            for q in Permutation::enumerate(n, 12).unwrap() {
                for k in 0..=4 {
                    for t in Permutation::enumerate(k, 12).unwrap() {
                        assert_eq!(
                            q.occurrences(&t, None),
                            occurrences_exhaustive(&q, &t),
                            "pi={q} tau={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn avoidance() {
        let set = [p("132"), p("321")];
        assert!(p("1234").avoids(&set));
        assert!(!p("1324").avoids(&set));
        assert!(p("12").avoids(&set));
        // avoiding a union is avoiding both parts
        for q in Permutation::enumerate(5, 12).unwrap() {
            assert_eq!(
                q.avoids(&set),
                q.avoids(&set[..1]) && q.avoids(&set[1..])
            );
        }
    }

    #[test]
    fn witness_positions() {
        let w = p("1324").find_occurrence(&p("132")).unwrap();
        assert_eq!(w, vec![0, 1, 2]);
        assert!(p("1234").find_occurrence(&p("321")).is_none());
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("312").reverse(), p("213"));
        assert_eq!(p("312").complement(), p("132"));
        assert_eq!(p("312").inverse(), p("231"));
        for q in Permutation::enumerate(5, 12).unwrap() {
            assert_eq!(q.reverse().reverse(), q);
            assert_eq!(q.complement().complement(), q);
            assert_eq!(q.inverse().inverse(), q);
        }
    }

    #[test]
    fn occurrences_transported_by_symmetries() {
        for q in Permutation::enumerate(5, 12).unwrap() {
            for t in Permutation::enumerate(3, 12).unwrap() {
                let c = q.occurrences(&t, None);
                assert_eq!(q.reverse().occurrences(&t.reverse(), None), c);
                assert_eq!(q.complement().occurrences(&t.complement(), None), c);
                assert_eq!(q.inverse().occurrences(&t.inverse(), None), c);
            }
        }
    }

    #[test]
    fn bottom_restriction() {
        assert_eq!(p("45213").restrict_to_bottom(3), p("213"));
        assert_eq!(p("45213").restrict_to_bottom(0), Permutation::empty());
        assert_eq!(p("45213").restrict_to_bottom(5), p("45213"));
    }

    #[test]
    fn enumeration_is_lexicographic_and_guarded() {
        let all: Vec<_> = Permutation::enumerate(3, 12).unwrap().collect();
        assert_eq!(
            all,
            ["123", "132", "213", "231", "312", "321"]
                .iter()
                .map(|s| p(s))
                .collect::<Vec<_>>()
        );
        assert_eq!(Permutation::enumerate(0, 12).unwrap().count(), 1);
        assert_eq!(Permutation::enumerate(6, 12).unwrap().count(), 720);
        assert!(Permutation::enumerate(13, 12).is_err());
    }

    #[test]
    fn word_standardize() {
        let w = Word::new(vec![40, 7, 19]).unwrap();
        assert_eq!(w.standardize().unwrap(), p("312"));
        assert!(Word::new(vec![3, 3]).is_err());
        assert!(Word::new(vec![0, 1]).is_err());
        // idempotent on permutations
        let q = Word::new(vec![2, 4, 1, 3]).unwrap().standardize().unwrap();
        let again = Word::new(q.values().iter().map(|&v| v as u32).collect())
            .unwrap()
            .standardize()
            .unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn anchored_embedding_check() {
        assert!(embedding_ends_at_last(&[1, 3, 2], &[1, 3, 2]));
        assert!(embedding_ends_at_last(&[5, 1, 4], &[2, 1]));
        assert!(!embedding_ends_at_last(&[2, 1, 3], &[2, 1]));
        assert!(!embedding_ends_at_last(&[2, 1], &[]));
    }
}
