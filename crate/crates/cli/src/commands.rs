//! The five subcommands. Each builds a typed report, renders it in the
//! requested format, and picks the exit code; library errors bubble up to
//! the caller, which maps them onto stderr and a usage or class code.

use std::collections::BTreeMap;

use patcount::classify::canonical_families;
use patcount::{
    canonicalize, evaluate, Cache, Error, ForbiddenSet, Mode, Options, Oracle, Permutation,
};

use crate::output::{
    to_json, ClassifyReport, GfReport, MismatchReport, SeqReport, SeqRow, StepReport,
    VerifyReport, ViolationReport, WilfGroup, WilfMember, WilfReport,
};
use crate::{Format, Outcome, SeqFormat, SetChoice, Source};

pub fn gf(avoid: &str, contain: &str, order: usize, format: Format) -> Result<Outcome, Error> {
    let set = ForbiddenSet::parse(avoid)?;
    let tau: Permutation = contain.parse()?;
    let cache = Cache::new();
    let opts = Options {
        order,
        ..Options::default()
    };
    let result = evaluate(&cache, &set, &tau, &opts)?;
    let report = GfReport::from_result(&result);
    Ok(Outcome::ok(match format {
        Format::Text => report.render_text(),
        Format::Json => to_json(&report),
    }))
}

pub fn seq(
    avoid: &str,
    contain: &str,
    n: &str,
    source: Source,
    format: SeqFormat,
    guard: usize,
) -> Result<Outcome, Error> {
    let set = ForbiddenSet::parse(avoid)?;
    let tau: Permutation = contain.parse()?;
    let (lo, hi) = parse_range(n)?;
    if format == SeqFormat::Bfile && source == Source::Both {
        return Err(Error::Unsupported(
            "a b-file carries a single column; pick --source formula or --source oracle".into(),
        ));
    }
    let cache = Cache::new();
    let formula: Option<Vec<String>> = if source == Source::Oracle {
        None
    } else {
        let opts = Options {
            order: hi,
            ..Options::default()
        };
        let r = evaluate(&cache, &set, &tau, &opts)?;
        Some((lo..=hi).map(|i| r.series.coeff(i).to_string()).collect())
    };
    let counted: Option<Vec<String>> = if source == Source::Formula {
        None
    } else {
        let oracle = Oracle::new(&cache.oracle).with_guard(guard);
        let table = oracle.sequence(&set, &tau, Mode::ExactlyOnce, hi)?;
        Some(
            (lo..=hi)
                .map(|i| table.count(i).expect("within table range").to_string())
                .collect(),
        )
    };
    let rows = (lo..=hi)
        .enumerate()
        .map(|(i, len)| SeqRow {
            n: len,
            formula: formula.as_ref().map(|v| v[i].clone()),
            oracle: counted.as_ref().map(|v| v[i].clone()),
            matches: formula
                .as_ref()
                .zip(counted.as_ref())
                .map(|(f, o)| f[i] == o[i]),
        })
        .collect();
    let report = SeqReport {
        avoid: set.to_string(),
        contain: tau.to_string(),
        source: match source {
            Source::Formula => "formula",
            Source::Oracle => "oracle",
            Source::Both => "both",
        }
        .into(),
        rows,
    };
    Ok(Outcome::ok(match format {
        SeqFormat::Text => report.render_text(),
        SeqFormat::Json => to_json(&report),
        SeqFormat::Csv => report.render_csv(),
        SeqFormat::Bfile => report.render_bfile(),
    }))
}

fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let end = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad length range {text:?}, expected N or A..B")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (end(a)?, end(b)?),
        None => {
            let n = end(text)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty length range {text:?}")));
    }
    Ok((lo, hi))
}

fn named_sets(choice: SetChoice) -> Vec<ForbiddenSet> {
    let rows = canonical_families();
    match choice {
        SetChoice::Pairs => rows
            .iter()
            .filter(|(_, s)| s.len() == 2)
            .map(|(_, s)| s.clone())
            .collect(),
        SetChoice::Triples => rows
            .iter()
            .filter(|(_, s)| s.len() == 3)
            .map(|(_, s)| s.clone())
            .collect(),
        SetChoice::Quads => rows
            .iter()
            .filter(|(_, s)| s.len() >= 4)
            .map(|(_, s)| s.clone())
            .collect(),
        SetChoice::Canonical => {
            let mut all: Vec<ForbiddenSet> = rows.iter().map(|(_, s)| s.clone()).collect();
            all.push(ForbiddenSet::parse("123,321").expect("guard set parses"));
            all
        }
    }
}

pub fn verify(
    choice: SetChoice,
    explicit: &[String],
    k_max: usize,
    n_max: usize,
    format: Format,
) -> Result<Outcome, Error> {
    let sets: Vec<ForbiddenSet> = if explicit.is_empty() {
        named_sets(choice)
    } else {
        explicit
            .iter()
            .map(|s| ForbiddenSet::parse(s))
            .collect::<Result<_, _>>()?
    };
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle).with_guard(n_max.max(k_max));
    let opts = Options {
        order: n_max,
        ..Options::default()
    };
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for set in &sets {
        for k in 1..=k_max {
            for tau in oracle.avoiders(set, k)?.iter() {
                let r = evaluate(&cache, set, tau, &opts)?;
                let table = oracle.sequence(set, tau, Mode::ExactlyOnce, n_max)?;
                checked += 1;
                for len in 0..=n_max {
                    let f = r.series.coeff(len).to_string();
                    let o = table.count(len).expect("within table range").to_string();
                    if f != o {
                        mismatches.push(MismatchReport {
                            avoid: set.to_string(),
                            contain: tau.to_string(),
                            n: len,
                            formula: f,
                            oracle: o,
                            steps: r.steps.iter().map(StepReport::from_step).collect(),
                        });
                        break;
                    }
                }
            }
        }
    }
    let report = VerifyReport {
        sets: sets.iter().map(ToString::to_string).collect(),
        k_max,
        n_max,
        checked,
        mismatches,
    };
    let code = report.exit_code();
    let stdout = match format {
        Format::Text => report.render_text(),
        Format::Json => to_json(&report),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code,
    })
}

pub fn classify(
    avoid: &str,
    contain: &str,
    order: usize,
    format: Format,
) -> Result<Outcome, Error> {
    let set = ForbiddenSet::parse(avoid)?;
    let tau: Permutation = contain.parse()?;
    for p in set.patterns() {
        if let Some(pos) = tau.find_occurrence(p) {
            let report = ClassifyReport {
                avoid: set.to_string(),
                contain: tau.to_string(),
                member: false,
                violation: Some(ViolationReport {
                    pattern: p.to_string(),
                    positions: pos.iter().map(|i| i + 1).collect(),
                }),
                family: None,
                family_note: None,
                canonical_avoid: None,
                canonical_contain: None,
                map: None,
                steps: vec![],
                closed: None,
                series: vec![],
            };
            return Ok(Outcome {
                stdout: match format {
                    Format::Text => report.render_text(),
                    Format::Json => to_json(&report),
                },
                stderr: String::new(),
                code: 3,
            });
        }
    }
    let cache = Cache::new();
    let c = canonicalize(&set, &tau)?;
    let opts = Options {
        order,
        ..Options::default()
    };
    let r = evaluate(&cache, &set, &tau, &opts)?;
    let report = ClassifyReport {
        avoid: set.to_string(),
        contain: tau.to_string(),
        member: true,
        violation: None,
        family: Some(c.family.id().to_string()),
        family_note: Some(c.family.describe().to_string()),
        canonical_avoid: Some(c.set.to_string()),
        canonical_contain: Some(c.tau.to_string()),
        map: Some(c.map.to_string()),
        steps: r.steps.iter().map(StepReport::from_step).collect(),
        closed: r.closed.as_ref().map(ToString::to_string),
        series: r.series.coeffs().iter().map(ToString::to_string).collect(),
    };
    Ok(Outcome::ok(match format {
        Format::Text => report.render_text(),
        Format::Json => to_json(&report),
    }))
}

pub fn wilf(k: usize, n_max: usize, format: Format) -> Result<Outcome, Error> {
    let cache = Cache::new();
    let oracle = Oracle::new(&cache.oracle).with_guard(n_max.max(k));
    // sequence -> members carrying it; BTreeMap fixes the group order
    let mut groups: BTreeMap<Vec<u64>, Vec<(String, String, Option<String>)>> = BTreeMap::new();
    for set in named_sets(SetChoice::Canonical) {
        for tau in oracle.avoiders(&set, k)?.iter() {
            let table = oracle.sequence(&set, tau, Mode::ExactlyOnce, n_max)?;
            let closed = if n_max <= patcount::MAX_ORDER {
                let opts = Options {
                    order: n_max,
                    ..Options::default()
                };
                evaluate(&cache, &set, tau, &opts)?
                    .closed
                    .as_ref()
                    .map(ToString::to_string)
            } else {
                None
            };
            groups.entry(table.counts.clone()).or_default().push((
                set.to_string(),
                tau.to_string(),
                closed,
            ));
        }
    }
    let report = WilfReport {
        k,
        n_max,
        groups: groups
            .into_iter()
            .map(|(seq, mut members)| {
                members.sort();
                WilfGroup {
                    sequence: seq.iter().map(ToString::to_string).collect(),
                    closed: members.iter().find_map(|(.., c)| c.clone()),
                    members: members
                        .into_iter()
                        .map(|(avoid, contain, _)| WilfMember { avoid, contain })
                        .collect(),
                }
            })
            .collect(),
    };
    Ok(Outcome::ok(match format {
        Format::Text => report.render_text(),
        Format::Json => to_json(&report),
    }))
}
