use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use pgroup_core::constructions::{LemmaConfig, LemmaId};
use pgroup_core::corpus::default_corpus;
use pgroup_core::oracle::{cayley_sanity, diff_report, EXHAUSTIVE_ASSOCIATIVITY_ORDER};
use pgroup_core::pc::check_consistency;
use pgroup_core::{Element, Error, Report, ReportEntry, Result, Verdict};

use crate::target::{load_targets, Target};
use crate::{Cli, Command, RunFlags};

/// Corpus groups up to this order are compared against the oracle.
pub const CORPUS_DIFF_ORDER: u128 = EXHAUSTIVE_ASSOCIATIVITY_ORDER;

pub fn execute(cli: &Cli) -> Result<Report> {
    let flags = &cli.run;
    match &cli.command {
        Command::Check(t) => per_target(flags, load_targets(t)?, |t| check(flags, t)),
        Command::Lemmas { targets, only } => {
            let ids = lemma_ids(only)?;
            per_target(flags, load_targets(targets)?, |t| lemmas(flags, t, &ids))
        }
        Command::Audit(t) => per_target(flags, load_targets(t)?, |t| Ok(vec![audit(flags, t)?])),
        Command::Witness {
            targets,
            constructive,
            exhaustive,
        } => {
            let both = !constructive && !exhaustive;
            per_target(flags, load_targets(targets)?, |t| {
                witness(flags, t, *constructive || both, *exhaustive || both)
            })
        }
        Command::OracleDiff(t) => per_target(flags, load_targets(t)?, |t| {
            Ok(vec![oracle_diff(flags, t)?])
        }),
        Command::Corpus { only } => {
            let ids = lemma_ids(only)?;
            let targets = default_corpus()?
                .into_iter()
                .map(|e| Target {
                    name: e.name,
                    presentation: e.presentation,
                })
                .collect();
            per_target(flags, targets, |t| corpus_entry(flags, t, &ids))
        }
    }
}

fn lemma_ids(only: &[String]) -> Result<Vec<LemmaId>> {
    if only.is_empty() {
        return Ok(LemmaId::ALL.to_vec());
    }
    only.iter().map(|s| s.trim().parse()).collect()
}

/// Runs `f` on every target in a pool of `--jobs` workers; entries keep
/// target order regardless of scheduling.
fn per_target(
    flags: &RunFlags,
    targets: Vec<Target>,
    f: impl Fn(&Target) -> Result<Vec<ReportEntry>> + Sync,
) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(flags.jobs)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    let chunks: Vec<Vec<ReportEntry>> =
        pool.install(|| targets.par_iter().map(&f).collect::<Result<Vec<_>>>())?;
    let mut report = Report::default();
    for entry in chunks.into_iter().flatten() {
        report.push(entry);
    }
    Ok(report)
}

fn timed<T>(flags: &RunFlags, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
    let start = Instant::now();
    let out = f()?;
    let ms = flags.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok((out, ms))
}

fn exps(e: &Element) -> serde_json::Value {
    json!(e.exps())
}

pub fn check(flags: &RunFlags, t: &Target) -> Result<Vec<ReportEntry>> {
    let (report, ms) = timed(flags, || Ok(check_consistency(&t.presentation)))?;
    let verdict = if report.passed() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut e = ReportEntry::new(t.name.clone(), "consistency", verdict);
    e.timings = ms;
    e.details = json!({ "overlaps_checked": report.overlaps_checked, "failures": report.failures });
    e.note = Some(match &report.first_failure {
        None => format!("{} overlaps consistent", report.overlaps_checked),
        Some(f) => f.to_string(),
    });
    if let Some(f) = &report.first_failure {
        let (k, j, i) = f.triple;
        e.counterexample = Some(json!({
            "overlap": [k + 1, j + 1, i + 1],
            "left": exps(&f.left),
            "right": exps(&f.right),
        }));
    }
    let mut out = vec![e];
    if !report.passed() {
        return Ok(out);
    }

    let g = t.group(flags.max_order)?;
    let (sanity, ms) = timed(flags, || cayley_sanity(&g, flags.seed))?;
    let verdict = if sanity.passed() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut e = ReportEntry::new(t.name.clone(), "sanity", verdict);
    e.timings = ms;
    e.note = Some(format!(
        "{} {} triples, {} elements",
        if sanity.exhaustive { "all" } else { "sampled" },
        sanity.triples_checked,
        sanity.elements_checked
    ));
    e.details = json!({
        "exhaustive": sanity.exhaustive,
        "triples_checked": sanity.triples_checked,
        "elements_checked": sanity.elements_checked,
    });
    if !sanity.passed() {
        e.counterexample = Some(json!({
            "associativity": sanity.associativity_failure.as_ref().map(|t| t.iter().map(exps).collect::<Vec<_>>()),
            "axiom": sanity.axiom_failure.as_ref().map(exps),
        }));
    }
    out.push(e);
    Ok(out)
}

fn lemma_config(flags: &RunFlags) -> LemmaConfig {
    LemmaConfig {
        seed: flags.seed,
        ..LemmaConfig::default()
    }
}

pub fn lemmas(flags: &RunFlags, t: &Target, ids: &[LemmaId]) -> Result<Vec<ReportEntry>> {
    let g = t.group(flags.max_order)?;
    ids.iter()
        .map(|&id| {
            let (r, ms) = timed(flags, || g.verify_lemma(&t.name, id, lemma_config(flags)))?;
            let mut e = r.to_entry();
            e.timings = ms;
            Ok(e)
        })
        .collect()
}

pub fn audit(flags: &RunFlags, t: &Target) -> Result<ReportEntry> {
    let g = t.group(flags.max_order)?;
    let (r, ms) = timed(flags, || g.theorem_a_audit(&t.name))?;
    let mut e = r.to_entry();
    e.timings = ms;
    Ok(e)
}

pub fn witness(
    flags: &RunFlags,
    t: &Target,
    constructive: bool,
    exhaustive: bool,
) -> Result<Vec<ReportEntry>> {
    let g = t.group(flags.max_order)?;
    let mut out = Vec::new();
    let derived_rank = g.generator_rank(&g.derived_subgroup()?)?;
    if constructive {
        let (res, ms) = timed(flags, || Ok(g.witness_constructive()))?;
        let mut e = match res {
            Ok((x, trace)) => {
                let mut e = ReportEntry::new(t.name.clone(), "witness_constructive", Verdict::Pass);
                e.note = Some(format!("branch {} chose {x}", trace.branch));
                let aux: serde_json::Map<String, serde_json::Value> = trace
                    .auxiliary
                    .iter()
                    .map(|(k, v)| (k.clone(), exps(v)))
                    .collect();
                e.details =
                    json!({ "x": exps(&x), "branch": trace.branch.label(), "auxiliary": aux });
                e
            }
            Err(Error::Precondition(msg)) => {
                let mut e =
                    ReportEntry::new(t.name.clone(), "witness_constructive", Verdict::Vacuous);
                e.note = Some(format!("unmet hypothesis: {msg}"));
                e
            }
            Err(err @ Error::InvariantViolation(_)) => {
                let mut e = ReportEntry::new(t.name.clone(), "witness_constructive", Verdict::Fail);
                e.note = Some(err.to_string());
                e
            }
            Err(err) => return Err(err),
        };
        e.timings = ms;
        out.push(e);
    }
    if exhaustive {
        let (set, ms) = timed(flags, || g.witness_exhaustive())?;
        let verdict = match (set.is_empty(), derived_rank <= 2) {
            (false, _) => Verdict::Pass,
            (true, true) => Verdict::Fail,
            (true, false) => Verdict::Vacuous,
        };
        let mut e = ReportEntry::new(t.name.clone(), "witness_exhaustive", verdict);
        e.timings = ms;
        e.note = Some(format!("{} witnesses; d(G') = {derived_rank}", set.len()));
        let list: Vec<_> = set.iter(&g).map(|x| exps(&x)).collect();
        e.details = json!({ "count": set.len(), "derived_rank": derived_rank, "witnesses": list });
        out.push(e);
    }
    Ok(out)
}

pub fn oracle_diff(flags: &RunFlags, t: &Target) -> Result<ReportEntry> {
    let g = t.group(flags.max_order)?;
    let (r, ms) = timed(flags, || diff_report(&g, &t.name, flags.seed))?;
    let mut e = r.to_entry();
    e.timings = ms;
    Ok(e)
}

fn corpus_entry(flags: &RunFlags, t: &Target, ids: &[LemmaId]) -> Result<Vec<ReportEntry>> {
    let mut out = check(flags, t)?;
    if out.iter().any(|e| e.verdict.is_fail()) {
        return Ok(out);
    }
    out.extend(lemmas(flags, t, ids)?);
    out.push(audit(flags, t)?);
    if t.group(flags.max_order)?.order() <= CORPUS_DIFF_ORDER {
        out.push(oracle_diff(flags, t)?);
    }
    Ok(out)
}
