//! `cuboid`: command-line front end for the cuboid search library.
//!
//! Exit codes: 0 success / nothing found, 1 a check failed, 2 bad input,
//! 3 checkpoint does not match the run, 4 I/O error, 5 a reconstructed
//! cuboid failed verification, 10 a perfect cuboid was found.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use cuboid_core::asymptotics::{
    build_newton_grid, compute_certificates, integer_point_report, leading_coefficients,
    upper_hull, AsymError, AsymptoticInterval, Axis, LeadingTerm,
};
use cuboid_core::cuboid_eqs::{
    build_qpq, factorization_check_with, reconstruct_cuboid, CaseTag, EqError, PQPair,
};
use cuboid_core::exact_arith::{IntPoly, QuadRational};
use cuboid_core::search::{
    run_search, Mode, RunControl, SearchConfig, SearchError, DEFAULT_SIEVE_MODULI,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_RESUME_MISMATCH: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;
const EXIT_CUBOID_FOUND: u8 = 10;

/// Significant digits of every decimal approximation printed.
const APPROX_DIGITS: usize = 30;

#[derive(Parser)]
#[command(
    name = "cuboid",
    version,
    about = "Perfect cuboid search over the Q_pq family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Scan,
    Divisor,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Scan => Mode::Scan,
            ModeArg::Divisor => Mode::Divisor,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive search over p in [p-min, p-max], q < 59p.
    Search {
        #[arg(long, default_value_t = 1)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value = "scan")]
        mode: ModeArg,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
        /// Resume from / write to this checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// JSON Lines output file.
        #[arg(long)]
        out: PathBuf,
        /// Iterate every q < 59p even where the t-range is provably empty.
        #[arg(long)]
        faithful: bool,
        /// Comma-separated residue-filter moduli.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIEVE_MODULI)]
        sieve_moduli: Vec<u64>,
        /// Disable residue filtering.
        #[arg(long, conflicts_with = "sieve_moduli")]
        no_sieve: bool,
        /// Stop after checkpointing this p, as if interrupted.
        #[arg(long, hide = true)]
        stop_after_p: Option<u64>,
    },
    /// Root intervals and certificates for a pair with q >= 59p.
    Roots {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Newton polygon of Q_pq and the leading terms of its roots.
    Newton,
    /// Check whether (p, q, t) yields a perfect cuboid.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u64,
    },
    /// Check the factorisation of the degree-12 equation for all coprime
    /// pairs p != q up to max-pq.
    IdentityCheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_pq: u64,
        /// Perturb Q_pq for the pair P,Q before checking.
        #[arg(long, hide = true, value_parser = parse_pair)]
        inject_fault: Option<(u64, u64)>,
    },
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| e.to_string());
    Ok((num(p)?, num(q)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Search {
            p_min,
            p_max,
            mode,
            threads,
            checkpoint,
            out,
            faithful,
            sieve_moduli,
            no_sieve,
            stop_after_p,
        } => {
            let worker_count = threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let config = SearchConfig {
                p_min,
                p_max,
                mode: mode.into(),
                sieve_moduli: if no_sieve { Vec::new() } else { sieve_moduli },
                worker_count,
                checkpoint_path: checkpoint,
                output_path: out,
                faithful,
            };
            cmd_search(&config, stop_after_p)
        }
        Command::Roots { p, q } => cmd_roots(p, q),
        Command::Newton => cmd_newton(),
        Command::Verify { p, q, t } => cmd_verify(p, q, t),
        Command::IdentityCheck {
            max_pq,
            inject_fault,
        } => cmd_identity_check(max_pq, inject_fault),
    };
    ExitCode::from(code)
}

fn cmd_search(config: &SearchConfig, stop_after_p: Option<u64>) -> u8 {
    let progress = |e: &cuboid_core::search::ProgressEvent| eprintln!("{e}");
    let control = RunControl {
        stop_after_p,
        on_progress: Some(&progress),
    };
    let report = match run_search(config, &control) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                SearchError::InvalidConfig(_) | SearchError::ThreadPool(_) => EXIT_BAD_INPUT,
                SearchError::ResumeMismatch { .. } | SearchError::CorruptCheckpoint { .. } => {
                    EXIT_RESUME_MISMATCH
                }
                SearchError::Io { .. } => EXIT_IO,
                SearchError::Eq(_) => EXIT_VERIFICATION,
            };
        }
    };
    if let Some(p) = report.resumed_after_p {
        eprintln!("resumed after p={p}");
    }
    if !report.completed {
        eprintln!("stopped after p={}", report.last_completed_p);
        return 0;
    }
    eprintln!(
        "done: pairs={} evals={} sieve_rejections={} hits={} wall_time={:.2}s",
        report.pairs_examined,
        report.t_values_tested,
        report.sieve_rejections,
        report.hits.len(),
        report.wall_time
    );
    if report.hits.is_empty() {
        0
    } else {
        for h in &report.hits {
            eprintln!(
                "PERFECT CUBOID: p={} q={} t={} case={}",
                h.p, h.q, h.t, h.case
            );
        }
        EXIT_CUBOID_FOUND
    }
}

fn approx(x: &QuadRational) -> String {
    format!("{} (approx)", x.to_decimal(APPROX_DIGITS))
}

fn print_interval(iv: &AsymptoticInterval) {
    let unit = if iv.axis == Axis::Imaginary {
        "·i"
    } else {
        ""
    };
    eprintln!("{} {}", iv.label, iv.axis);
    eprintln!("  lo = ({}){unit}", iv.lo);
    eprintln!("     ~ {}", approx(&iv.lo));
    eprintln!("  hi = ({}){unit}", iv.hi);
    eprintln!("     ~ {}", approx(&iv.hi));
}

fn cmd_roots(p: u64, q: u64) -> u8 {
    let pair = match PQPair::new(p, q) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    let report = match compute_certificates(&pair) {
        Ok(r) => r,
        Err(e @ AsymError::PreconditionViolated { .. }) => {
            eprintln!("error: {e}; the root intervals are only established for q >= 59p");
            return EXIT_BAD_INPUT;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    eprintln!("Q_pq for {pair}");
    for iv in &report.intervals {
        print_interval(iv);
    }
    eprintln!();
    for m in &report.disjointness.margins {
        let rel = if m.strict { ">" } else { ">=" };
        let verdict = if m.holds() { "ok" } else { "FAIL" };
        eprintln!("  {} = {} {rel} 0 [{verdict}]", m.name, m.value);
    }
    eprintln!(
        "disjoint: {}",
        if report.disjointness.disjoint {
            "yes"
        } else {
            "NO"
        }
    );
    eprintln!();
    for c in &report.certificates {
        let sturm = c
            .sturm_count
            .map_or(String::new(), |n| format!(", Sturm count {n}"));
        match &c.failure {
            None => eprintln!(
                "{} PASS: endpoint signs {:+}/{:+}{sturm}",
                c.label, c.lo_sign, c.hi_sign
            ),
            Some(why) => eprintln!("{} FAIL: {why}", c.label),
        }
    }
    eprintln!(
        "Sturm counts: (0, B) -> {}, (-B, B) -> {}, imaginary (0, B) -> {}  [B = {}]",
        report.positive_real_roots,
        report.real_roots,
        report.positive_imaginary_roots,
        report.root_bound
    );
    if let Ok(ip) = integer_point_report(&pair) {
        eprintln!("integer points: {}", ip.conclusion);
    }
    if report.passed() {
        eprintln!("all certificates PASS");
        0
    } else {
        eprintln!("certification FAILED");
        EXIT_CHECK_FAILED
    }
}

fn format_p_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (e, c) in coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
    {
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.abs();
        let mag_str = if mag == BigInt::from(1) && e > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        out.push_str(&match e {
            0 => mag_str,
            1 => format!("{mag_str}p"),
            _ => format!("{mag_str}p^{e}"),
        });
    }
    out
}

fn cmd_newton() -> u8 {
    let grid = build_newton_grid();
    eprintln!("nodes (m, r): A_mr(p)");
    for n in &grid {
        eprintln!("  ({}, {}): {}", n.m, n.r, format_p_poly(&n.coeff));
    }
    let polygon = match upper_hull(&grid) {
        Ok(poly) => poly,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    let hull: Vec<String> = polygon
        .upper_hull
        .iter()
        .map(|(m, r)| format!("({m},{r})"))
        .collect();
    eprintln!("upper hull: {}", hull.join(" - "));
    let slopes: Vec<String> = polygon
        .segment_slopes
        .iter()
        .map(|k| k.to_string())
        .collect();
    eprintln!("slopes: {}", slopes.join(", "));
    let exps: Vec<String> = polygon.exponents.iter().map(|a| a.to_string()).collect();
    eprintln!("exponents: {}", exps.join(", "));

    let mut terms: Vec<LeadingTerm> = Vec::new();
    for &alpha in &polygon.exponents {
        match leading_coefficients(&polygon, alpha) {
            Ok(ts) => terms.extend(ts),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CHECK_FAILED;
            }
        }
    }
    for t in &terms {
        eprintln!(
            "  t ~ {} q^{}  (multiplicity {})",
            t, t.exponent, t.multiplicity
        );
    }

    let golden_hull = vec![(0, 10), (4, 10), (6, 8), (10, 0)];
    let golden_exps: Vec<Rational64> = (0..3).map(Rational64::from).collect();
    let golden_terms = [
        (0, QuadRational::from_ints(1, 0), 2, Axis::Real, 2),
        (1, QuadRational::from_ints(1, 0), 1, Axis::Real, 1),
        (2, QuadRational::from_ints(1, 1), 0, Axis::Imaginary, 1),
        (2, QuadRational::from_ints(-1, 1), 0, Axis::Imaginary, 1),
    ];
    let terms_match = terms.len() == golden_terms.len()
        && terms.iter().zip(&golden_terms).all(|(t, g)| {
            t.exponent == Rational64::from(g.0)
                && t.magnitude == g.1
                && t.p_power == g.2
                && t.axis == g.3
                && t.multiplicity == g.4
        });
    if polygon.upper_hull == golden_hull && polygon.exponents == golden_exps && terms_match {
        eprintln!("matches reference values");
        0
    } else {
        eprintln!("MISMATCH against reference values");
        EXIT_CHECK_FAILED
    }
}

fn cmd_verify(p: u64, q: u64, t: u64) -> u8 {
    let pair = match PQPair::new(p, q) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    if t == 0 {
        eprintln!("error: {}", EqError::NonPositiveT);
        return EXIT_BAD_INPUT;
    }
    let value = build_qpq(&pair).eval_int(&BigInt::from(t));
    if value.is_zero() {
        eprintln!("Q(t) = 0");
    } else {
        eprintln!("Q(t) ≠ 0  (Q(t) = {value})");
    }
    let (p, q, t) = (p as u128, q as u128, t as u128);
    let checks = [
        ("t > p^2", t > p * p),
        ("t > pq", t > p * q),
        ("t > q^2", t > q * q),
        (
            "(p^2 + t)(pq + t) > 2t^2",
            (p * p + t) * (p * q + t) > 2 * t * t,
        ),
    ];
    for (name, ok) in checks {
        eprintln!("{name}: {}", if ok { "holds" } else { "fails" });
    }
    if !value.is_zero() || checks.iter().any(|(_, ok)| !ok) {
        eprintln!("verdict: not a perfect cuboid");
        return 0;
    }
    let mut found = false;
    for case in CaseTag::ALL {
        match reconstruct_cuboid(&pair, t as u64, case) {
            Ok(w) => {
                found = true;
                eprintln!(
                    "{case}: {}",
                    serde_json::to_string(&w).expect("witness serialises")
                );
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VERIFICATION;
            }
        }
    }
    if found {
        eprintln!("verdict: PERFECT CUBOID");
        EXIT_CUBOID_FOUND
    } else {
        0
    }
}

fn cmd_identity_check(max_pq: u64, fault: Option<(u64, u64)>) -> u8 {
    let mut ordered = 0u64;
    let mut failures = Vec::new();
    for p in 1..=max_pq {
        for q in 1..=max_pq {
            let Ok(pair) = PQPair::new(p, q) else {
                continue;
            };
            ordered += 1;
            let mut qpq = build_qpq(&pair);
            if fault == Some((p, q)) {
                qpq = &qpq + &IntPoly::from_i64(&[0, 0, 1]);
            }
            if !factorization_check_with(&pair, &qpq) {
                failures.push(pair);
            }
        }
    }
    eprintln!(
        "{} unordered pairs ({ordered} ordered) checked under both substitutions",
        ordered / 2
    );
    if failures.is_empty() {
        eprintln!("all pass");
        0
    } else {
        for pair in &failures {
            eprintln!("FAIL {pair}");
        }
        EXIT_CHECK_FAILED
    }
}
