//! Brute-force reference counts.
//!
//! Everything here works by explicit enumeration: build every avoider of
//! the forbidden set by extending prefixes, then filter by how often the
//! counted pattern occurs. Slow but independent of the formula layer,
//! which is exactly the point; the formula layer is verified against it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::classify::ForbiddenSet;
use crate::perm::{self, Permutation};
use crate::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// What to count over the avoiders of the forbidden set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    /// Permutations containing the pattern exactly once.
    ExactlyOnce,
    /// Permutations avoiding the pattern as well.
    Avoid,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::ExactlyOnce => "exactly-once",
            Mode::Avoid => "avoid",
        }
    }
}

/// Execution strategy. `Parallel` degrades to sequential when the crate is
/// built without the `parallel` feature, so callers can request it
/// unconditionally.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Shared memo for enumerated avoiders and finished count tables. Safe to
/// use from several threads.
#[derive(Default)]
pub struct OracleCache {
    avoiders: Mutex<HashMap<(ForbiddenSet, usize), Arc<Vec<Permutation>>>>,
    tables: Mutex<HashMap<(ForbiddenSet, Permutation, Mode, usize), Arc<SequenceTable>>>,
}

impl OracleCache {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Counts of a fixed query for every length `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub set: ForbiddenSet,
    pub tau: Permutation,
    pub mode: Mode,
    /// `counts[n]` is the count at length `n`.
    pub counts: Vec<u64>,
}

impl SequenceTable {
    pub fn count(&self, n: usize) -> Option<u64> {
        self.counts.get(n).copied()
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// OEIS-style b-file: one "n count" line per length starting at 1,
    /// with the query and the length-0 count in comment headers.
    pub fn to_bfile(&self) -> String {
        let mut out = format!(
            "# avoid {} contain {} mode {}\n# c0 = {}\n",
            self.set,
            self.tau,
            self.mode.label(),
            self.counts[0]
        );
        for (n, c) in self.counts.iter().enumerate().skip(1) {
            out.push_str(&format!("{n} {c}\n"));
        }
        out
    }
}

pub struct Oracle<'a> {
    pub cache: &'a OracleCache,
    /// Largest length this oracle will enumerate. Enumeration cost is
    /// bounded by n! prefixes, so keep this small.
    pub guard: usize,
    pub exec: Exec,
}

impl<'a> Oracle<'a> {
    pub fn new(cache: &'a OracleCache) -> Self {
        Self {
            cache,
            guard: crate::DEFAULT_GUARD,
            exec: Exec::default(),
        }
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// All permutations of length `n` avoiding every pattern of `set`, in
    /// lexicographic order.
    pub fn avoiders(&self, set: &ForbiddenSet, n: usize) -> Result<Arc<Vec<Permutation>>, Error> {
        if n > self.guard {
            return Err(Error::GuardExceeded {
                n,
                guard: self.guard,
            });
        }
        let key = (set.clone(), n);
        if let Some(hit) = self.cache.avoiders.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let pats: Vec<&[u8]> = set.patterns().iter().map(|p| p.values()).collect();
        let found = Arc::new(self.enumerate(&pats, n));
        let mut lock = self.cache.avoiders.lock().unwrap();
        Ok(Arc::clone(lock.entry(key).or_insert(found)))
    }

    fn enumerate(&self, pats: &[&[u8]], n: usize) -> Vec<Permutation> {
        #[cfg(feature = "parallel")]
        if self.exec == Exec::Parallel && n >= 2 {
            // split on the first letter; each branch is independent and
            // in-order concatenation keeps the output lexicographic
            let chunks: Vec<Vec<Permutation>> = (1..=n as u8)
                .into_par_iter()
                .map(|first| {
                    let mut prefix = vec![first];
                    let mut out = Vec::new();
                    extend(&mut prefix, 1 << (first - 1), n, pats, &mut out);
                    out
                })
                .collect();
            return chunks.into_iter().flatten().collect();
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), 0, n, pats, &mut out);
        out
    }

    /// Counts for all lengths `0..=n_max` of the avoiders of `set` that
    /// relate to `tau` as `mode` demands.
    pub fn sequence(
        &self,
        set: &ForbiddenSet,
        tau: &Permutation,
        mode: Mode,
        n_max: usize,
    ) -> Result<Arc<SequenceTable>, Error> {
        if n_max > self.guard {
            return Err(Error::GuardExceeded {
                n: n_max,
                guard: self.guard,
            });
        }
        let key = (set.clone(), tau.clone(), mode, n_max);
        if let Some(hit) = self.cache.tables.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let mut counts = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let avs = self.avoiders(set, n)?;
            counts.push(self.count_filtered(&avs, tau, mode));
        }
        let table = Arc::new(SequenceTable {
            set: set.clone(),
            tau: tau.clone(),
            mode,
            counts,
        });
        let mut lock = self.cache.tables.lock().unwrap();
        Ok(Arc::clone(lock.entry(key).or_insert(table)))
    }

    fn count_filtered(&self, avs: &[Permutation], tau: &Permutation, mode: Mode) -> u64 {
        let keep = |q: &Permutation| match mode {
            Mode::ExactlyOnce => q.contains_exactly_once(tau),
            Mode::Avoid => !q.contains(tau),
        };
        #[cfg(feature = "parallel")]
        if self.exec == Exec::Parallel {
            return avs.par_iter().filter(|q| keep(q)).count() as u64;
        }
        avs.iter().filter(|q| keep(q)).count() as u64
    }
}

/// Depth-first prefix extension. A forbidden pattern in a permutation is
/// already present in the prefix that ends where the pattern ends, so it
/// suffices to check occurrences using the newest letter.
fn extend(prefix: &mut Vec<u8>, used: u64, n: usize, pats: &[&[u8]], out: &mut Vec<Permutation>) {
    if prefix.len() == n {
        out.push(Permutation::new(prefix.clone()).expect("prefix extension builds permutations"));
        return;
    }
    for v in 1..=n as u8 {
        let bit = 1u64 << (v - 1);
        if used & bit != 0 {
            continue;
        }
        prefix.push(v);
        if pats.iter().all(|p| !perm::embedding_ends_at_last(prefix, p)) {
            extend(prefix, used | bit, n, pats, out);
        }
        prefix.pop();
    }
}
