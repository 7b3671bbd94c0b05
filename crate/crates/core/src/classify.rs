//! Forbidden sets and their reduction to canonical families.
//!
//! Counting is invariant under reversing, complementing, or inverting the
//! whole problem (forbidden set and counted pattern together). Those three
//! involutions generate a group of eight maps, so forbidden sets fall into
//! orbits and only one representative per orbit needs a dedicated counting
//! routine. `canonicalize` finds that representative; `decompose` exposes
//! the structure of a pattern inside its family, which is what the formula
//! evaluators consume.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::perm::Permutation;
use crate::Error;

/// A nonempty set of distinct three-letter patterns, kept sorted. Sorting
/// makes display, ordering, and cache keys independent of input order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenSet {
    patterns: Vec<Permutation>,
}

impl ForbiddenSet {
    pub fn new(mut patterns: Vec<Permutation>) -> Result<Self, Error> {
        if patterns.is_empty() {
            return Err(Error::BadForbiddenSet("set is empty".into()));
        }
        if let Some(p) = patterns.iter().find(|p| p.len() != 3) {
            return Err(Error::BadForbiddenSet(format!(
                "pattern {p} has length {}, expected 3",
                p.len()
            )));
        }
        patterns.sort();
        patterns.dedup();
        Ok(Self { patterns })
    }

    /// Comma-separated compact patterns, e.g. "132,321".
    pub fn parse(text: &str) -> Result<Self, Error> {
        let patterns = text
            .split(',')
            .map(|tok| Permutation::parse(tok.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(patterns)
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sets
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    /// Both monotone patterns present: every long enough permutation
    /// contains one of them (Erdos and Szekeres), so avoiders die out.
    pub fn has_monotone_pair(&self) -> bool {
        self.contains(&Permutation::identity(3)) && self.contains(&Permutation::descending(3))
    }
}

impl fmt::Display for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ForbiddenSet({self})")
    }
}

impl FromStr for ForbiddenSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// One of the three generating symmetries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymOp {
    Reverse,
    Complement,
    Inverse,
}

impl SymOp {
    fn apply(self, p: &Permutation) -> Permutation {
        match self {
            SymOp::Reverse => p.reverse(),
            SymOp::Complement => p.complement(),
            SymOp::Inverse => p.inverse(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SymOp::Reverse => "reverse",
            SymOp::Complement => "complement",
            SymOp::Inverse => "inverse",
        }
    }
}

/// A word in the symmetry group, applied left to right. Each generator is
/// an involution, so the inverse word is just the reversal.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymmetryMap {
    ops: Vec<SymOp>,
}

impl SymmetryMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(ops: Vec<SymOp>) -> Self {
        Self { ops }
    }

    pub fn ops(&self) -> &[SymOp] {
        &self.ops
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn apply(&self, p: &Permutation) -> Permutation {
        let mut out = p.clone();
        for op in &self.ops {
            out = op.apply(&out);
        }
        out
    }

    pub fn apply_set(&self, set: &ForbiddenSet) -> ForbiddenSet {
        let patterns = set.patterns().iter().map(|p| self.apply(p)).collect();
        ForbiddenSet::new(patterns).expect("symmetries preserve pattern length")
    }

    pub fn inverted(&self) -> SymmetryMap {
        let mut ops = self.ops.clone();
        ops.reverse();
        Self { ops }
    }

    /// All eight group elements as fixed representative words, identity
    /// first. The order doubles as the tiebreak order in `canonicalize`.
    pub fn group() -> Vec<SymmetryMap> {
        use SymOp::*;
        [
            vec![],
            vec![Reverse],
            vec![Complement],
            vec![Reverse, Complement],
            vec![Inverse],
            vec![Reverse, Inverse],
            vec![Complement, Inverse],
            vec![Reverse, Complement, Inverse],
        ]
        .into_iter()
        .map(SymmetryMap::new)
        .collect()
    }
}

impl fmt::Display for SymmetryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return write!(f, "identity");
        }
        let names: Vec<&str> = self.ops.iter().map(|op| op.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

/// The counting families. Each non-guard family is named for the structure
/// of its avoiders, which is what the corresponding evaluator exploits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// {123, 132}: avoiders stack descending blocks, each ending in its
    /// own maximum.
    Staircase,
    /// {132, 321}: avoiders are the identity with one prefix cyclically
    /// rotated.
    PrefixRotation,
    /// {132, 213}: avoiders split into ascending runs of successively
    /// lower value blocks.
    TopRuns,
    /// {123, 132, 213}: like TopRuns but every run has length one or two.
    ShortTopRuns,
    /// {132, 231}: avoiders descend to their minimum, then ascend.
    Valley,
    /// {123, 132, 231}: avoiders descend except possibly at the last
    /// letter.
    AlmostDescent,
    /// {123, 231, 312}: avoiders are cyclic rotations of the descending
    /// permutation.
    RotatedDescent,
    /// {132, 213, 231}: avoiders are a descending block of top values
    /// followed by an ascending block of bottom values.
    FallThenRise,
    /// Four or five forbidden patterns without a monotone pair: the
    /// avoiders form explicit shape tables.
    QuadOrQuint,
    /// The set contains both 123 and 321, so there are no avoiders of
    /// length seven or more.
    MonotoneGuard,
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Staircase => "pair-123-132",
            Family::PrefixRotation => "pair-132-321",
            Family::TopRuns => "pair-132-213",
            Family::Valley => "pair-132-231",
            Family::ShortTopRuns => "triple-123-132-213",
            Family::AlmostDescent => "triple-123-132-231",
            Family::RotatedDescent => "triple-123-231-312",
            Family::FallThenRise => "triple-132-213-231",
            Family::QuadOrQuint => "quad-or-quint",
            Family::MonotoneGuard => "monotone-guard",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Family::Staircase => "avoiders stack descending blocks that end in their maximum",
            Family::PrefixRotation => "avoiders are the identity with one prefix rotated",
            Family::TopRuns => "avoiders are ascending runs of successively lower values",
            Family::Valley => "avoiders descend to their minimum and then ascend",
            Family::ShortTopRuns => "avoiders are ascending top runs of length one or two",
            Family::AlmostDescent => "avoiders descend except possibly at the last letter",
            Family::RotatedDescent => "avoiders are rotations of the descending permutation",
            Family::FallThenRise => "avoiders fall through the top values then rise",
            Family::QuadOrQuint => "avoiders form fixed shape tables",
            Family::MonotoneGuard => "no avoiders exist beyond length six",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The canonical orbit representatives, pairs first, then triples, quads,
/// and the quintet. Every forbidden set of two or more patterns either
/// contains the monotone pair or maps onto exactly one of these.
pub fn canonical_families() -> &'static [(Family, ForbiddenSet)] {
    static TABLE: OnceLock<Vec<(Family, ForbiddenSet)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        [
            (Family::Staircase, "123,132"),
            (Family::PrefixRotation, "132,321"),
            (Family::TopRuns, "132,213"),
            (Family::Valley, "132,231"),
            (Family::ShortTopRuns, "123,132,213"),
            (Family::AlmostDescent, "123,132,231"),
            (Family::RotatedDescent, "123,231,312"),
            (Family::FallThenRise, "132,213,231"),
            (Family::QuadOrQuint, "123,132,213,231"),
            (Family::QuadOrQuint, "123,132,231,312"),
            (Family::QuadOrQuint, "132,213,231,312"),
            (Family::QuadOrQuint, "132,213,231,312,321"),
        ]
        .into_iter()
        .map(|(fam, s)| (fam, ForbiddenSet::parse(s).unwrap()))
        .collect()
    })
}

fn family_of_canonical(set: &ForbiddenSet) -> Option<Family> {
    canonical_families()
        .iter()
        .find(|(_, s)| s == set)
        .map(|(fam, _)| *fam)
}

/// A forbidden set and pattern transported onto their canonical family.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub family: Family,
    pub set: ForbiddenSet,
    pub tau: Permutation,
    pub map: SymmetryMap,
}

/// Finds the symmetry word carrying `(set, tau)` onto a canonical family.
/// Several words may hit the same canonical set; the one giving the
/// lexicographically smallest transported pattern wins, with the fixed
/// group order breaking exact ties. Sets containing the monotone pair are
/// left untouched under the guard family.
pub fn canonicalize(set: &ForbiddenSet, tau: &Permutation) -> Result<Canonical, Error> {
    if set.has_monotone_pair() {
        return Ok(Canonical {
            family: Family::MonotoneGuard,
            set: set.clone(),
            tau: tau.clone(),
            map: SymmetryMap::identity(),
        });
    }
    let mut best: Option<(Permutation, Family, ForbiddenSet, SymmetryMap)> = None;
    for map in SymmetryMap::group() {
        let tset = map.apply_set(set);
        let Some(family) = family_of_canonical(&tset) else {
            continue;
        };
        let ttau = map.apply(tau);
        let better = match &best {
            None => true,
            Some((bt, ..)) => ttau < *bt,
        };
        if better {
            best = Some((ttau, family, tset, map));
        }
    }
    match best {
        Some((tau, family, set, map)) => Ok(Canonical {
            family,
            set,
            tau,
            map,
        }),
        None => Err(Error::Unreducible(set.to_string())),
    }
}

/// Which end of the word the peeled values sit on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Front,
    Back,
}

/// The PrefixRotation shapes: the identity, the identity rotated left by
/// `d`, or the prefix `1..m-1` rotated left by `d` with the tail fixed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    Identity { k: usize },
    Rotation { d: usize, k: usize },
    Inset { d: usize, m: usize, k: usize },
}

/// One structural layer of a pattern inside its family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Params {
    /// Staircase: the top `r` values form a block with the maximum last
    /// and the rest descending before it (`r >= 2`).
    DescThenMax { r: usize, remainder: Permutation },
    /// Staircase: a maximal run of `m` singleton blocks, i.e. the top `m`
    /// values descending at the front.
    MaxRun { m: usize, remainder: Permutation },
    /// TopRuns: ascending runs of consecutive value blocks; `bounds` lists
    /// the block boundaries from `k+1` down to `1`.
    Runs { bounds: Vec<usize> },
    /// Valley: the top `r` values at one end with the next value wrapped
    /// to the other end; the remainder sits in between.
    Wrap {
        side: Side,
        r: usize,
        remainder: Permutation,
    },
    /// PrefixRotation: one of the explicit shapes.
    Blocks { kind: BlockKind },
    /// ShortTopRuns: a leading run of one or two top values.
    Lead { len: usize, remainder: Permutation },
    /// AlmostDescent, RotatedDescent, FallThenRise: the `r`-th shape of
    /// size `k`.
    Shape { r: usize, k: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub family: Family,
    pub params: Params,
}

fn perm(values: Vec<u8>) -> Permutation {
    Permutation::new(values).expect("constructed shape is a permutation")
}

fn rotation_shape(d: usize, k: usize) -> Permutation {
    let mut v: Vec<u8> = (d as u8 + 1..=k as u8).collect();
    v.extend(1..=d as u8);
    perm(v)
}

fn inset_shape(d: usize, m: usize, k: usize) -> Permutation {
    let mut v: Vec<u8> = (d as u8 + 1..=m as u8 - 1).collect();
    v.extend(1..=d as u8);
    v.extend(m as u8..=k as u8);
    perm(v)
}

fn almost_descent_shape(r: usize, k: usize) -> Permutation {
    // descending, with the value k-r removed and appended at the end
    let mut v: Vec<u8> = (k - r + 1..=k).rev().map(|x| x as u8).collect();
    v.extend((1..=k - r - 1).rev().map(|x| x as u8));
    v.push((k - r) as u8);
    perm(v)
}

fn rotated_descent_shape(r: usize, k: usize) -> Permutation {
    let mut v: Vec<u8> = (1..=r).rev().map(|x| x as u8).collect();
    v.extend((r + 1..=k).rev().map(|x| x as u8));
    perm(v)
}

fn fall_then_rise_shape(r: usize, k: usize) -> Permutation {
    let mut v: Vec<u8> = (r + 1..=k).rev().map(|x| x as u8).collect();
    v.extend(1..=r as u8);
    perm(v)
}

/// Splits `tau` into its outermost structural layer within the canonical
/// family of `set`. Errors with `NotInClass` (and a witness occurrence)
/// when `tau` contains a forbidden pattern, and with `Unsupported` for
/// guard or shape-table families, which have no layered structure.
pub fn decompose(tau: &Permutation, set: &ForbiddenSet) -> Result<Decomposition, Error> {
    let family = family_of_canonical(set).ok_or_else(|| {
        Error::Unsupported(format!("no structural decomposition for the set {set}"))
    })?;
    if family == Family::QuadOrQuint {
        return Err(Error::Unsupported(
            "shape-table families have no layered decomposition".into(),
        ));
    }
    for p in set.patterns() {
        if let Some(w) = tau.find_occurrence(p) {
            return Err(Error::NotInClass {
                pattern: p.to_string(),
                positions: w.iter().map(|i| i + 1).collect(),
            });
        }
    }
    let k = tau.len();
    if k == 0 {
        return Err(Error::Unsupported(
            "the empty pattern has no decomposition".into(),
        ));
    }
    let v = tau.values();
    let params = match family {
        Family::Staircase => {
            if v[0] as usize == k {
                let mut m = 1;
                while m < k && v[m] as usize == k - m {
                    m += 1;
                }
                Params::MaxRun {
                    m,
                    remainder: tau.restrict_to_bottom(k - m),
                }
            } else {
                let r = v.iter().position(|&x| x as usize == k).unwrap() + 1;
                for i in 0..r - 1 {
                    assert_eq!(v[i] as usize, k - 1 - i, "avoider structure violated");
                }
                Params::DescThenMax {
                    r,
                    remainder: tau.restrict_to_bottom(k - r),
                }
            }
        }
        Family::PrefixRotation => {
            let kind = if *tau == Permutation::identity(k) {
                Some(BlockKind::Identity { k })
            } else {
                let mut hit = (1..k)
                    .find(|&d| *tau == rotation_shape(d, k))
                    .map(|d| BlockKind::Rotation { d, k });
                if hit.is_none() {
                    'outer: for m in 3..=k {
                        for d in 1..=m - 2 {
                            if *tau == inset_shape(d, m, k) {
                                hit = Some(BlockKind::Inset { d, m, k });
                                break 'outer;
                            }
                        }
                    }
                }
                hit
            };
            Params::Blocks {
                kind: kind.expect("avoider structure violated"),
            }
        }
        Family::TopRuns => {
            let mut bounds = vec![k + 1];
            let mut pos = 0;
            while pos < k {
                let mut end = pos + 1;
                while end < k && v[end] > v[end - 1] {
                    end += 1;
                }
                let hi = v[end - 1] as usize;
                let lo = v[pos] as usize;
                assert_eq!(hi, bounds.last().unwrap() - 1, "avoider structure violated");
                assert_eq!(hi - lo + 1, end - pos, "avoider structure violated");
                bounds.push(lo);
                pos = end;
            }
            Params::Runs { bounds }
        }
        Family::ShortTopRuns => {
            if v[0] as usize == k {
                Params::Lead {
                    len: 1,
                    remainder: tau.restrict_to_bottom(k - 1),
                }
            } else {
                assert!(
                    k >= 2 && v[0] as usize == k - 1 && v[1] as usize == k,
                    "avoider structure violated"
                );
                Params::Lead {
                    len: 2,
                    remainder: tau.restrict_to_bottom(k - 2),
                }
            }
        }
        Family::Valley => {
            if v[0] as usize == k {
                let r = k - v[k - 1] as usize;
                for i in 0..r {
                    assert_eq!(v[i] as usize, k - i, "avoider structure violated");
                }
                Params::Wrap {
                    side: Side::Front,
                    r,
                    remainder: tau.restrict_to_bottom(k - r - 1),
                }
            } else {
                assert_eq!(v[k - 1] as usize, k, "avoider structure violated");
                let r = k - v[0] as usize;
                for i in 0..r {
                    assert_eq!(v[k - r + i] as usize, k - r + 1 + i, "avoider structure violated");
                }
                Params::Wrap {
                    side: Side::Back,
                    r,
                    remainder: tau.restrict_to_bottom(k - r - 1),
                }
            }
        }
        Family::AlmostDescent => {
            let r = k - v[k - 1] as usize;
            assert_eq!(*tau, almost_descent_shape(r, k), "avoider structure violated");
            Params::Shape { r, k }
        }
        Family::RotatedDescent => {
            let r = v[0] as usize;
            assert_eq!(*tau, rotated_descent_shape(r, k), "avoider structure violated");
            Params::Shape { r, k }
        }
        Family::FallThenRise => {
            let r = v[k - 1] as usize;
            assert_eq!(*tau, fall_then_rise_shape(r, k), "avoider structure violated");
            Params::Shape { r, k }
        }
        Family::QuadOrQuint | Family::MonotoneGuard => unreachable!(),
    };
    Ok(Decomposition { family, params })
}

/// Rebuilds the pattern a decomposition came from. Inverse of `decompose`.
pub fn reassemble(d: &Decomposition) -> Permutation {
    match &d.params {
        Params::MaxRun { m, remainder } => {
            let k = m + remainder.len();
            let mut v: Vec<u8> = (k - m + 1..=k).rev().map(|x| x as u8).collect();
            v.extend_from_slice(remainder.values());
            perm(v)
        }
        Params::DescThenMax { r, remainder } => {
            let k = r + remainder.len();
            let mut v: Vec<u8> = (k - r + 1..=k - 1).rev().map(|x| x as u8).collect();
            v.push(k as u8);
            v.extend_from_slice(remainder.values());
            perm(v)
        }
        Params::Runs { bounds } => {
            let mut v: Vec<u8> = Vec::new();
            for w in bounds.windows(2) {
                v.extend(w[1] as u8..=w[0] as u8 - 1);
            }
            perm(v)
        }
        Params::Wrap { side, r, remainder } => {
            let k = r + 1 + remainder.len();
            let mut v: Vec<u8> = Vec::with_capacity(k);
            match side {
                Side::Front => {
                    v.extend((k - r + 1..=k).rev().map(|x| x as u8));
                    v.extend_from_slice(remainder.values());
                    v.push((k - r) as u8);
                }
                Side::Back => {
                    v.push((k - r) as u8);
                    v.extend_from_slice(remainder.values());
                    v.extend(k as u8 - *r as u8 + 1..=k as u8);
                }
            }
            perm(v)
        }
        Params::Blocks { kind } => match *kind {
            BlockKind::Identity { k } => Permutation::identity(k),
            BlockKind::Rotation { d, k } => rotation_shape(d, k),
            BlockKind::Inset { d, m, k } => inset_shape(d, m, k),
        },
        Params::Lead { len, remainder } => {
            let k = len + remainder.len();
            let mut v: Vec<u8> = Vec::with_capacity(k);
            if *len == 2 {
                v.push(k as u8 - 1);
            }
            v.push(k as u8);
            v.extend_from_slice(remainder.values());
            perm(v)
        }
        Params::Shape { r, k } => match d.family {
            Family::AlmostDescent => almost_descent_shape(*r, *k),
            Family::RotatedDescent => rotated_descent_shape(*r, *k),
            Family::FallThenRise => fall_then_rise_shape(*r, *k),
            _ => unreachable!("shape params only occur in shape families"),
        },
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rem(r: &Permutation) -> String {
            if r.is_empty() {
                "nothing".to_string()
            } else {
                r.to_string()
            }
        }
        match self {
            Params::DescThenMax { r, remainder } => write!(
                f,
                "top {r} values descending into their maximum, then {}",
                rem(remainder)
            ),
            Params::MaxRun { m, remainder } => {
                write!(f, "top {m} values descending, then {}", rem(remainder))
            }
            Params::Runs { bounds } => {
                let lens: Vec<String> = bounds
                    .windows(2)
                    .map(|w| (w[0] - w[1]).to_string())
                    .collect();
                write!(f, "ascending top runs of lengths {}", lens.join(","))
            }
            Params::Wrap { side, r, remainder } => match side {
                Side::Front => write!(
                    f,
                    "top {r} values in front, next value last, {} between",
                    rem(remainder)
                ),
                Side::Back => write!(
                    f,
                    "top {r} values ascending at the back, next value first, {} between",
                    rem(remainder)
                ),
            },
            Params::Blocks { kind } => match kind {
                BlockKind::Identity { k } => write!(f, "the identity on {k} letters"),
                BlockKind::Rotation { d, k } => {
                    write!(f, "the identity on {k} letters rotated left by {d}")
                }
                BlockKind::Inset { d, m, k } => write!(
                    f,
                    "prefix of length {} rotated left by {d}, tail {m}..{k} fixed",
                    m - 1
                ),
            },
            Params::Lead { len, remainder } => match len {
                1 => write!(f, "maximum first, then {}", rem(remainder)),
                _ => write!(f, "second largest then maximum, then {}", rem(remainder)),
            },
            Params::Shape { r, k } => write!(f, "shape {r} of {k}"),
        }
    }
}
