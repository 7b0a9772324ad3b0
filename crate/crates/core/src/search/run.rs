//! The outer `(p, q)` loop with parallelism, JSONL output, checkpoints and
//! resume.

use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::bounds::past_last_useful_q;
use super::checkpoint::{SearchCheckpoint, CHECKPOINT_VERSION};
use super::scan::{scan_pair, PairCounters, ScanOptions};
use super::{Mode, SearchConfig, SearchError};
use crate::cuboid_eqs::{reconstruct_cuboid, CaseTag, CuboidWitness, PQPair};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchReport {
    pub pairs_examined: u64,
    pub t_values_tested: u64,
    pub sieve_rejections: u64,
    pub hits: Vec<CuboidWitness>,
    pub wall_time: f64,
    /// Last `p` whose results are in the output file.
    pub last_completed_p: u64,
    /// False when the run stopped early on request.
    pub completed: bool,
    /// `last_completed_p` of the checkpoint the run resumed from.
    pub resumed_after_p: Option<u64>,
}

/// Emitted after each completed `p`; counts are for that `p` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgressEvent {
    pub p: u64,
    pub pairs: u64,
    pub evals: u64,
    pub hits: u64,
}

impl fmt::Display for ProgressEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} pairs={} evals={} hits={}",
            self.p, self.pairs, self.evals, self.hits
        )
    }
}

/// Hooks into a running search.
#[derive(Default)]
pub struct RunControl<'a> {
    /// Stop (as if interrupted) once this `p` has been checkpointed.
    pub stop_after_p: Option<u64>,
    pub on_progress: Option<&'a dyn Fn(&ProgressEvent)>,
}

#[derive(Serialize)]
struct Summary<'a> {
    p_min: u64,
    p_max: u64,
    mode: Mode,
    sieve_moduli: &'a [u64],
    faithful: bool,
    pairs_examined: u64,
    t_values_tested: u64,
    sieve_rejections: u64,
    hits: usize,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: Summary<'a>,
}

struct PResult {
    pairs: u64,
    counters: PairCounters,
    hits: Vec<CuboidWitness>,
}

/// Coprime `q ≠ p` below `59p`, stopping early at the first `q` past which
/// every range is empty unless `faithful` is set.
fn q_values(p: u64, faithful: bool) -> Vec<PQPair> {
    (1..59 * p)
        .take_while(|&q| faithful || !past_last_useful_q(p, q))
        .filter(|&q| q != p && q.gcd(&p) == 1)
        .map(|q| PQPair::new(p, q).expect("coprime and distinct"))
        .collect()
}

fn process_p(p: u64, config: &SearchConfig, count_only: bool) -> Result<PResult, SearchError> {
    let pairs = q_values(p, config.faithful);
    let opts = ScanOptions {
        mode: config.mode,
        sieve_moduli: &config.sieve_moduli,
        count_only,
    };
    let outcomes: Vec<_> = pairs
        .par_iter()
        .map(|pair| scan_pair(pair, &opts))
        .collect();
    let mut result = PResult {
        pairs: pairs.len() as u64,
        counters: PairCounters::default(),
        hits: Vec::new(),
    };
    for outcome in outcomes {
        let outcome = outcome?;
        result.counters.add(&outcome.counters);
        result.hits.extend(outcome.hits);
    }
    Ok(result)
}

fn parse_hit(line: &str) -> Option<CuboidWitness> {
    let v: Value = serde_json::from_str(line).ok()?;
    let field = |k: &str| v.get(k)?.as_u64();
    let case = v.get("case")?.as_str()?;
    let case = CaseTag::ALL.into_iter().find(|c| c.as_str() == case)?;
    let pair = PQPair::new(field("p")?, field("q")?).ok()?;
    reconstruct_cuboid(&pair, field("t")?, case).ok()
}

/// Keeps the first `keep` lines of the output (the hits recorded up to the
/// checkpoint) and returns them re-parsed.
fn truncate_output(path: &Path, keep: u64) -> Result<Vec<CuboidWitness>, SearchError> {
    let corrupt = |reason: String| SearchError::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason,
    };
    let file = match File::open(path) {
        Ok(f) => Some(f),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(SearchError::io(path, e)),
    };
    let mut kept = String::new();
    let mut hits = Vec::new();
    if let Some(file) = file {
        for line in BufReader::new(file).lines().take(keep as usize) {
            let line = line.map_err(|e| SearchError::io(path, e))?;
            let hit = parse_hit(&line)
                .ok_or_else(|| corrupt(format!("output line {:?} is not a valid hit", line)))?;
            hits.push(hit);
            kept.push_str(&line);
            kept.push('\n');
        }
    }
    if hits.len() as u64 != keep {
        return Err(corrupt(format!(
            "checkpoint records {keep} hits but the output holds {}",
            hits.len()
        )));
    }
    fs::write(path, kept).map_err(|e| SearchError::io(path, e))?;
    Ok(hits)
}

/// Runs the search described by `config`.
///
/// Hits are written to the output as JSON lines ordered by `(p, q, t,
/// case)`, followed by one summary line once every `p` is done. With a
/// checkpoint path, an existing checkpoint for the same config resumes the
/// run after its last completed `p`; the final output is byte-identical to
/// an uninterrupted run and independent of the worker count.
pub fn run_search(
    config: &SearchConfig,
    control: &RunControl,
) -> Result<SearchReport, SearchError> {
    config.validate()?;
    let started = Instant::now();
    let digest = config.digest();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let out_path = &config.output_path;

    let mut report = SearchReport {
        last_completed_p: config.p_min - 1,
        ..SearchReport::default()
    };
    let mut prior_elapsed = 0.0;

    let resume = match &config.checkpoint_path {
        Some(path) => SearchCheckpoint::load(path)?,
        None => None,
    };
    if let Some(ckpt) = resume {
        let path = config.checkpoint_path.as_deref().unwrap();
        if ckpt.version != CHECKPOINT_VERSION || ckpt.config_digest != digest {
            return Err(SearchError::ResumeMismatch {
                expected: digest,
                found: ckpt.config_digest,
            });
        }
        if ckpt.last_completed_p + 1 < config.p_min || ckpt.last_completed_p > config.p_max {
            return Err(SearchError::CorruptCheckpoint {
                path: path.to_path_buf(),
                reason: format!("last_completed_p={} outside the run", ckpt.last_completed_p),
            });
        }
        report.hits = truncate_output(out_path, ckpt.candidates_found)?;
        for p in config.p_min..=ckpt.last_completed_p {
            let replay = pool.install(|| process_p(p, config, true))?;
            report.pairs_examined += replay.pairs;
            report.t_values_tested += replay.counters.t_values_tested;
            report.sieve_rejections += replay.counters.sieve_rejections;
        }
        report.last_completed_p = ckpt.last_completed_p;
        report.resumed_after_p = Some(ckpt.last_completed_p);
        prior_elapsed = ckpt.elapsed_seconds;
    } else {
        File::create(out_path).map_err(|e| SearchError::io(out_path, e))?;
    }

    let mut out = OpenOptions::new()
        .append(true)
        .open(out_path)
        .map_err(|e| SearchError::io(out_path, e))?;
    let io_err = |e| SearchError::io(out_path, e);

    for p in report.last_completed_p + 1..=config.p_max {
        if control.stop_after_p.is_some_and(|s| p > s) {
            report.wall_time = started.elapsed().as_secs_f64();
            return Ok(report);
        }
        let result = pool.install(|| process_p(p, config, false))?;
        for hit in &result.hits {
            let line = serde_json::to_string(hit).expect("witness serialises");
            writeln!(out, "{line}").map_err(io_err)?;
        }
        out.sync_data().map_err(io_err)?;

        report.pairs_examined += result.pairs;
        report.t_values_tested += result.counters.t_values_tested;
        report.sieve_rejections += result.counters.sieve_rejections;
        report.hits.extend(result.hits.iter().cloned());
        report.last_completed_p = p;

        if let Some(path) = &config.checkpoint_path {
            SearchCheckpoint {
                version: CHECKPOINT_VERSION,
                config_digest: digest.clone(),
                last_completed_p: p,
                candidates_found: report.hits.len() as u64,
                elapsed_seconds: prior_elapsed + started.elapsed().as_secs_f64(),
            }
            .store(path)?;
        }
        if let Some(cb) = control.on_progress {
            cb(&ProgressEvent {
                p,
                pairs: result.pairs,
                evals: result.counters.t_values_tested,
                hits: result.hits.len() as u64,
            });
        }
    }

    let summary = SummaryLine {
        summary: Summary {
            p_min: config.p_min,
            p_max: config.p_max,
            mode: config.mode,
            sieve_moduli: &config.sieve_moduli,
            faithful: config.faithful,
            pairs_examined: report.pairs_examined,
            t_values_tested: report.t_values_tested,
            sieve_rejections: report.sieve_rejections,
            hits: report.hits.len(),
        },
    };
    let line = serde_json::to_string(&summary).expect("summary serialises");
    writeln!(out, "{line}").map_err(io_err)?;
    out.sync_data().map_err(io_err)?;

    report.completed = true;
    report.wall_time = started.elapsed().as_secs_f64();
    Ok(report)
}
