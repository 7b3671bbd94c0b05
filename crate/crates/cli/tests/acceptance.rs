//! The seven release gates, one test each. Every test prints a single
//! `criterion N: PASS - ...` line on success (visible with --nocapture);
//! a failed assert marks the criterion failed with the offending query in
//! its message.

use std::time::Instant;

use patcount::{
    canonicalize, count_quad_quint, evaluate, Cache, Exec, ForbiddenSet, Mode, Options, Oracle,
    Permutation, Polynomial, RationalGF,
};
use patcount_cli::output::WilfReport;
use patcount_cli::run;

fn fs(s: &str) -> ForbiddenSet {
    ForbiddenSet::parse(s).unwrap()
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn opts(order: usize) -> Options {
    Options {
        order,
        ..Options::default()
    }
}

/// x^k over `geom` factors of (1-x) and `fib` factors of (1-x-x^2).
fn gf(k: usize, geom: u32, fib: u32) -> RationalGF {
    let mut den = Vec::new();
    if geom > 0 {
        den.push((Polynomial::from_i64(&[1, -1]), geom));
    }
    if fib > 0 {
        den.push((Polynomial::from_i64(&[1, -1, -1]), fib));
    }
    RationalGF::new(Polynomial::x_power(k), den)
}

/// Every pattern of each length in `lens`.
fn patterns(lens: std::ops::RangeInclusive<usize>) -> Vec<Permutation> {
    lens.flat_map(|k| Permutation::enumerate(k, 6).unwrap())
        .collect()
}

#[test]
fn criterion_1_displayed_expansions() {
    let poly = |c: &[i64]| RationalGF::from_polynomial(Polynomial::from_i64(c));
    let fixtures: Vec<(&str, &str, RationalGF)> = vec![
        ("123,132", "213", gf(3, 0, 2)),
        ("123,132", "231", gf(3, 1, 0)),
        ("123,132", "312", gf(3, 1, 0)),
        ("123,132", "321", poly(&[0, 0, 0, 1, 3])),
        ("132,321", "123", poly(&[0, 0, 0, 1, 4, 2])),
        ("132,321", "213", poly(&[0, 0, 0, 1])),
        ("132,321", "231", gf(3, 1, 0)),
        ("132,321", "312", gf(3, 1, 0)),
        ("132,213", "123", gf(3, 0, 2)),
        ("132,213", "231", gf(3, 1, 0)),
        ("132,213", "312", gf(3, 1, 0)),
        ("132,213", "321", poly(&[0, 0, 0, 1])),
        ("132,231", "123", gf(3, 2, 0)),
        ("132,231", "213", gf(3, 1, 0)),
        ("132,231", "312", gf(3, 1, 0)),
        ("132,231", "321", gf(3, 2, 0)),
    ];
    let cache = Cache::new();
    let total = fixtures.len();
    for (set, tau, expected) in fixtures {
        let r = evaluate(&cache, &fs(set), &p(tau), &opts(12)).unwrap();
        assert_eq!(
            r.series,
            expected.expand(12),
            "avoid {set} contain {tau}: series must match the expected expansion to order 12"
        );
    }
    println!("criterion 1: PASS - {total} displayed generating functions reproduced to order 12");
}

#[test]
fn criterion_2_pairs_and_triples_match_the_oracle() {
    let sets = [
        "123,132", "132,321", "132,213", "132,231", "123,132,213", "123,132,231", "123,231,312",
        "132,213,231",
    ];
    let started = Instant::now();
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle)
        .with_guard(10)
        .with_exec(Exec::Sequential);
    let options = Options {
        order: 10,
        exec: Exec::Sequential,
    };
    let mut queries = 0usize;
    for set in sets {
        let set = fs(set);
        for k in 3..=6 {
            for tau in oracle.avoiders(&set, k).unwrap().iter() {
                let r = evaluate(&cache, &set, tau, &options).unwrap();
                let table = oracle.sequence(&set, tau, Mode::ExactlyOnce, 10).unwrap();
                queries += 1;
                for n in 0..=10 {
                    assert_eq!(
                        r.series.coeff(n).to_string(),
                        table.count(n).unwrap().to_string(),
                        "avoid {set} contain {tau} at n = {n}"
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "single-threaded sweep took {elapsed:.2?}, target is under a minute"
    );
    println!(
        "criterion 2: PASS - {queries} pair/triple queries match enumeration for n <= 10 in {elapsed:.2?} single-threaded"
    );
}

#[test]
fn criterion_3_shape_tables_match_the_oracle() {
    let sets = [
        "123,132,213,231",
        "123,132,231,312",
        "132,213,231,312",
        "132,213,231,312,321",
    ];
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle).with_guard(8);
    let mut queries = 0usize;
    for set in sets {
        let set = fs(set);
        for tau in patterns(1..=6) {
            let table = oracle.sequence(&set, &tau, Mode::ExactlyOnce, 8).unwrap();
            queries += 1;
            for n in 0..=8 {
                assert_eq!(
                    count_quad_quint(&cache, &set, &tau, n).unwrap(),
                    table.count(n).unwrap(),
                    "avoid {set} contain {tau} at n = {n}"
                );
            }
        }
    }
    // the descending pattern sits in exactly one avoider at its own
    // length and one a step longer, nowhere else
    let two_point = fs("123,132,231,312");
    for k in 2..=6 {
        let tau = Permutation::descending(k);
        for n in 0..=8 {
            let expect = u64::from(n == k || n == k + 1);
            assert_eq!(
                count_quad_quint(&cache, &two_point, &tau, n).unwrap(),
                expect,
                "avoid {two_point} contain {tau} at n = {n}"
            );
        }
    }
    println!(
        "criterion 3: PASS - {queries} shape-table queries match enumeration for n <= 8, two-point support confirmed"
    );
}

#[test]
fn criterion_4_monotone_guard_sets_die_out() {
    // every forbidden set containing both monotone triples
    let all = ["132", "213", "231", "312"];
    let mut guard_sets = Vec::new();
    for mask in 0u32..16 {
        let mut names = vec!["123", "321"];
        for (i, extra) in all.iter().enumerate() {
            if mask & (1 << i) != 0 {
                names.push(extra);
            }
        }
        guard_sets.push(fs(&names.join(",")));
    }
    assert_eq!(guard_sets.len(), 16);
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle).with_guard(9);
    let mut queries = 0usize;
    for set in &guard_sets {
        for tau in patterns(1..=6) {
            let r = evaluate(&cache, set, &tau, &opts(9)).unwrap();
            let table = oracle.sequence(set, &tau, Mode::ExactlyOnce, 9).unwrap();
            queries += 1;
            let contained = set.patterns().iter().any(|q| tau.contains(q));
            for n in 0..=9 {
                let formula = r.series.coeff(n).to_string();
                let counted = table.count(n).unwrap();
                assert_eq!(
                    formula,
                    counted.to_string(),
                    "avoid {set} contain {tau} at n = {n}"
                );
                if n >= 7 {
                    assert_eq!(counted, 0, "avoid {set} contain {tau}: nothing survives past length six");
                }
                if contained {
                    assert_eq!(
                        counted, 0,
                        "avoid {set} contain {tau}: the pattern itself is forbidden"
                    );
                }
            }
        }
    }
    println!(
        "criterion 4: PASS - {queries} guarded queries vanish from length seven on and forbidden-containing patterns count zero"
    );
}

#[test]
fn criterion_5_symmetry_transport_preserves_counts() {
    // all two- and three-pattern subsets that dodge the monotone guard
    let six = ["123", "132", "213", "231", "312", "321"];
    let mut sets = Vec::new();
    for mask in 1u32..64 {
        if !(2..=3).contains(&mask.count_ones()) {
            continue;
        }
        let names: Vec<&str> = six
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, s)| *s)
            .collect();
        let set = fs(&names.join(","));
        if !set.has_monotone_pair() {
            sets.push(set);
        }
    }
    assert_eq!(sets.len(), 30);
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle).with_guard(8);
    let mut queries = 0usize;
    for set in &sets {
        for tau in oracle.avoiders(set, 4).unwrap().iter() {
            let c = canonicalize(set, tau).unwrap();
            let direct = oracle.sequence(set, tau, Mode::ExactlyOnce, 8).unwrap();
            let transported = oracle.sequence(&c.set, &c.tau, Mode::ExactlyOnce, 8).unwrap();
            queries += 1;
            assert_eq!(
                direct.counts, transported.counts,
                "avoid {set} contain {tau} vs avoid {} contain {} via {}",
                c.set, c.tau, c.map
            );
        }
    }
    println!(
        "criterion 5: PASS - {queries} queries over 30 sets count identically to their canonical transports for n <= 8"
    );
}

/// Multiplicative congruential generator, fixed seed; enough randomness
/// to scatter polynomial shapes without pulling in a dependency.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn poly(&mut self) -> Polynomial {
        let len = (self.next() % 6) as usize;
        let coeffs: Vec<i64> = (0..len).map(|_| (self.next() % 13) as i64 - 6).collect();
        Polynomial::from_i64(&coeffs)
    }
}

#[test]
fn criterion_6_randomized_algebra_holds() {
    let mut rng = Lcg(0x5eed_cafe);
    let zero = Polynomial::zero();
    let one = Polynomial::one();
    for round in 0..200 {
        let (a, b, c) = (rng.poly(), rng.poly(), rng.poly());
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c), "round {round}");
        assert_eq!(&a + &b, &b + &a, "round {round}");
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "round {round}");
        assert_eq!(&a * &b, &b * &a, "round {round}");
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "round {round}");
        assert_eq!(&a + &-&a, zero, "round {round}");
        assert_eq!(&a * &one, a, "round {round}");
        assert_eq!(&(&a - &b) + &b, a, "round {round}");
    }
    // expanding a rational function then multiplying the denominator
    // back in must recover the numerator modulo x^13
    let pool = [
        Polynomial::from_i64(&[1, -1]),
        Polynomial::from_i64(&[1, -1, -1]),
        Polynomial::from_i64(&[1, -2]),
        Polynomial::from_i64(&[1, 1]),
        Polynomial::from_i64(&[1, 0, -1]),
    ];
    let series = |q: &Polynomial| RationalGF::from_polynomial(q.clone()).expand(12);
    for round in 0..50 {
        let num = rng.poly();
        let factors = 1 + (rng.next() % 3) as usize;
        let den: Vec<(Polynomial, u32)> = (0..factors)
            .map(|_| {
                let f = pool[(rng.next() % pool.len() as u64) as usize].clone();
                (f, 1 + (rng.next() % 2) as u32)
            })
            .collect();
        let r = RationalGF::new(num.clone(), den);
        let mut product = r.expand(12);
        for (f, pow) in r.den() {
            for _ in 0..*pow {
                product = product.mul(&series(f));
            }
        }
        assert_eq!(product, series(&num), "round {round}: num {num} den {r}");
    }
    println!(
        "criterion 6: PASS - 200 polynomial ring rounds and 50 expansion consistency rounds hold"
    );
}

#[test]
fn criterion_7_wilf_grouping_is_stable_and_consistent() {
    let first = run(["wilf"]);
    let second = run(["wilf"]);
    assert_eq!(first.code, 0);
    assert_eq!(
        first.stdout, second.stdout,
        "two identical invocations must print identical bytes"
    );
    let json = run(["wilf", "--format", "json"]);
    let report: WilfReport = serde_json::from_str(&json.stdout).unwrap();
    let group_of = |avoid: &str, contain: &str| -> usize {
        report
            .groups
            .iter()
            .position(|g| {
                g.members
                    .iter()
                    .any(|m| m.avoid == avoid && m.contain == contain)
            })
            .unwrap_or_else(|| panic!("avoid {avoid} contain {contain} missing from the report"))
    };
    // the eight transported queries whose expansions coincide with
    // x^3/(1-x) must land in one class together
    let linear = [
        ("123,132", "231"),
        ("123,132", "312"),
        ("132,321", "231"),
        ("132,321", "312"),
        ("132,213", "231"),
        ("132,213", "312"),
        ("132,231", "213"),
        ("132,231", "312"),
    ];
    let class = group_of(linear[0].0, linear[0].1);
    for (avoid, contain) in linear {
        assert_eq!(group_of(avoid, contain), class, "avoid {avoid} contain {contain}");
    }
    let ones: Vec<String> = (0..=10).map(|n| u64::from(n >= 3).to_string()).collect();
    assert_eq!(report.groups[class].sequence, ones);
    // classes implied by equal fixture expansions
    assert_eq!(group_of("123,132", "213"), group_of("132,213", "123"));
    assert_eq!(group_of("132,321", "213"), group_of("132,213", "321"));
    assert_eq!(group_of("132,231", "123"), group_of("132,231", "321"));
    // distinct expansions must stay apart
    assert_ne!(group_of("132,321", "123"), group_of("123,132", "321"));
    assert_ne!(group_of("123,132", "213"), class);
    let queries: usize = report.groups.iter().map(|g| g.members.len()).sum();
    assert_eq!(queries, 39, "every canonical query appears exactly once");
    println!(
        "criterion 7: PASS - wilf grouping is byte-stable across runs and matches the fixture-implied classes"
    );
}
