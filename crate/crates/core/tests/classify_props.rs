//! Exhaustive checks of the symmetry reduction over every forbidden set,
//! plus decompose/reassemble round-trips for each canonical family.

use patcount::classify::{canonical_families, decompose, reassemble};
use patcount::{canonicalize, Family, ForbiddenSet, Permutation, SymmetryMap};

fn triples() -> Vec<Permutation> {
    Permutation::enumerate(3, 12).unwrap().collect()
}

/// All forbidden sets with at least two patterns, by bitmask over S_3.
fn all_sets() -> Vec<ForbiddenSet> {
    let pats = triples();
    (0u32..64)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            let chosen: Vec<Permutation> = (0..6)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| pats[i].clone())
                .collect();
            ForbiddenSet::new(chosen).unwrap()
        })
        .collect()
}

fn small_patterns() -> Vec<Permutation> {
    (1..=4)
        .flat_map(|k| Permutation::enumerate(k, 12).unwrap())
        .collect()
}

#[test]
fn every_set_reduces_or_is_guarded() {
    let inc: Permutation = "123".parse().unwrap();
    let dec: Permutation = "321".parse().unwrap();
    let canonical_sets: Vec<&ForbiddenSet> =
        canonical_families().iter().map(|(_, s)| s).collect();
    let mut guarded = 0;
    let mut reduced = 0;
    for set in all_sets() {
        for tau in small_patterns() {
            let c = canonicalize(&set, &tau).unwrap();
            if set.contains(&inc) && set.contains(&dec) {
                assert_eq!(c.family, Family::MonotoneGuard);
                assert!(c.map.is_identity());
                assert_eq!(c.set, set);
                assert_eq!(c.tau, tau);
                guarded += 1;
                continue;
            }
            reduced += 1;
            // the map really does carry the query onto the canonical one
            assert_eq!(c.map.apply_set(&set), c.set, "set {set} tau {tau}");
            assert_eq!(c.map.apply(&tau), c.tau, "set {set} tau {tau}");
            assert!(canonical_sets.contains(&&c.set), "set {set}");
            // and no symmetry word reaches a smaller transported pattern
            for map in SymmetryMap::group() {
                if canonical_sets.contains(&&map.apply_set(&set)) {
                    assert!(
                        map.apply(&tau) >= c.tau,
                        "set {set} tau {tau} beaten by ({map})"
                    );
                }
            }
        }
    }
    // 41 of the 57 sets avoid the monotone pair; 33 patterns each
    assert_eq!(reduced, 41 * 33);
    assert_eq!(guarded, 16 * 33);
}

#[test]
fn canonicalization_is_idempotent() {
    for set in all_sets() {
        for tau in small_patterns() {
            let c = canonicalize(&set, &tau).unwrap();
            let again = canonicalize(&c.set, &c.tau).unwrap();
            assert!(again.map.is_identity(), "set {set} tau {tau}");
            assert_eq!(again.set, c.set);
            assert_eq!(again.tau, c.tau);
            assert_eq!(again.family, c.family);
        }
    }
}

#[test]
fn symmetry_group_has_eight_invertible_members() {
    let group = SymmetryMap::group();
    assert_eq!(group.len(), 8);
    // 23514 has trivial stabilizer, so its orbit shows all eight maps
    let w: Permutation = "23514".parse().unwrap();
    let images: std::collections::HashSet<Vec<u8>> = group
        .iter()
        .map(|m| m.apply(&w).values().to_vec())
        .collect();
    assert_eq!(images.len(), 8, "the action on 23514 is free");
    for map in &group {
        assert_eq!(map.inverted().apply(&map.apply(&w)), w);
        let set = ForbiddenSet::parse("123,132").unwrap();
        assert_eq!(map.inverted().apply_set(&map.apply_set(&set)), set);
    }
}

#[test]
fn decompose_round_trips_over_every_family_member() {
    for (family, set) in canonical_families() {
        if *family == Family::QuadOrQuint {
            continue; // quads decompose to shape tables, not peel layers
        }
        for k in 1..=5 {
            for tau in Permutation::enumerate(k, 12).unwrap() {
                if !tau.avoids(set.patterns()) {
                    continue;
                }
                let d = decompose(&tau, set)
                    .unwrap_or_else(|e| panic!("{set} should accept {tau}: {e}"));
                assert_eq!(d.family, *family);
                assert_eq!(reassemble(&d), tau, "family {family} tau {tau}");
            }
        }
    }
}

#[test]
fn decompose_rejects_with_a_witness() {
    for (family, set) in canonical_families() {
        if *family == Family::QuadOrQuint {
            continue;
        }
        for tau in Permutation::enumerate(4, 12).unwrap() {
            if tau.avoids(set.patterns()) {
                continue;
            }
            match decompose(&tau, set) {
                Err(patcount::Error::NotInClass { pattern, positions }) => {
                    let named: Permutation = pattern.parse().unwrap();
                    assert!(set.contains(&named), "witness names a forbidden pattern");
                    assert_eq!(positions.len(), named.len());
                    assert!(positions.windows(2).all(|p| p[0] < p[1]));
                    assert!(*positions.last().unwrap() <= tau.len(), "1-based bounds");
                    let picked: Vec<u8> =
                        positions.iter().map(|&i| tau.values()[i - 1]).collect();
                    // the picked letters are order-isomorphic to the pattern
                    let mut sorted = picked.clone();
                    sorted.sort_unstable();
                    let flat: Vec<u8> = picked
                        .iter()
                        .map(|v| (sorted.iter().position(|s| s == v).unwrap() + 1) as u8)
                        .collect();
                    assert_eq!(flat, named.values());
                }
                other => panic!("{set} should reject {tau}, got {other:?}"),
            }
        }
    }
}

#[test]
fn canonical_table_is_coherent() {
    let table = canonical_families();
    assert_eq!(table.len(), 12);
    // four quad/quint rows share one family variant; sets never repeat
    let mut sets: Vec<String> = table.iter().map(|(_, s)| s.to_string()).collect();
    sets.sort_unstable();
    sets.dedup();
    assert_eq!(sets.len(), 12, "canonical sets are unique");
    let quads = table
        .iter()
        .filter(|(f, _)| matches!(f, Family::QuadOrQuint))
        .count();
    assert_eq!(quads, 4);
    for (family, set) in table {
        assert!(!matches!(family, Family::MonotoneGuard));
        assert!(!set.has_monotone_pair());
        // the table row is its own canonical form
        let c = canonicalize(set, &"1".parse().unwrap()).unwrap();
        assert_eq!(c.set, *set);
        assert_eq!(c.family, *family);
    }
}
