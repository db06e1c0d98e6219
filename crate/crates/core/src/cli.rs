//! Command-line front end: `analyze`, `poly`, `hj`, `scan` and `oracle`.
//!
//! Exit codes: 0 on success, 2 for parse or validation errors, 3 when the
//! criteria disagree on a two-parameter type.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    cross_check, decide_general, normalize, CrossCheck, Decision, TwoParameterType, Verdict,
};
use crate::error::Error;
use crate::fraction::ProperFraction;
use crate::hj::{dlr_criterion, hj_expand, HjExpansion};
use crate::lattice::{search_triangulation, Overlattice, SearchLimits, SearchOutcome};
use crate::polynomial::RemainderPolynomial;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

type Int = BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "crepant",
    version,
    about = "Crepant resolutions of cyclic quotient singularities"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for `scan` (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide crepancy of a type given as r:a1,...,an.
    Analyze {
        #[arg(value_name = "TYPE")]
        type_string: String,
        /// Also list the remainder polynomial.
        #[arg(long)]
        poly: bool,
    },
    /// List the remainder polynomial of r:a1,...,an.
    Poly {
        #[arg(value_name = "TYPE")]
        type_string: String,
    },
    /// Hirzebruch-Jung expansion of r/d.
    Hj {
        r: String,
        d: String,
        /// Check the congruence condition in this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cross-check every two-parameter type of one dimension up to rmax.
    Scan {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rmax: usize,
    },
    /// Search for a basic triangulation of the junior simplex.
    Oracle {
        #[arg(value_name = "TYPE")]
        type_string: String,
        #[arg(long, default_value_t = 12)]
        max_r: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(CliError::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = Result<i32, CliError>;

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Analyze { type_string, poly } => analyze(type_string, *poly, cli.json, out),
        Command::Poly { type_string } => poly(type_string, cli.json, out, err),
        Command::Hj { r, d, dim } => hj(r, d, *dim, cli.json, out),
        Command::Scan { dim, rmax } => scan(*dim, *rmax, cli.jobs, cli.json, out),
        Command::Oracle { type_string, max_r } => oracle(type_string, *max_r, cli.json, out),
    }
}

fn parse_int(text: &str) -> Result<Int, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("{text:?} is not an integer")))
}

fn write_json<S: Serialize>(out: &mut dyn Write, value: &S) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// `{"r", "d", "entries", "dlr"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjReport {
    #[serde(flatten)]
    pub expansion: HjExpansion<Int>,
    pub dlr: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub polynomial: Decision,
    pub fast: Decision,
    pub hj: Option<Decision>,
    pub agree: bool,
    pub skipped: Option<String>,
    pub disagreement: Option<String>,
}

impl From<&CrossCheck<Int>> for CrossCheckReport {
    fn from(x: &CrossCheck<Int>) -> Self {
        CrossCheckReport {
            polynomial: x.polynomial.decision(),
            fast: x.fast.decision(),
            hj: x.hj_decision(),
            agree: x.agree(),
            skipped: x.skipped.clone(),
            disagreement: x.disagreement(),
        }
    }
}

#[derive(Debug, Serialize)]
struct AnalyzeReport<'a> {
    #[serde(rename = "type")]
    source: &'a ProperFraction<Int>,
    normalized: Option<&'a ProperFraction<Int>>,
    permutation: Option<Vec<usize>>,
    two_parameter: Option<&'a TwoParameterType<Int>>,
    terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<&'a RemainderPolynomial<Int>>,
    verdict: &'a Verdict<Int>,
    hj: Option<HjReport>,
    cross_check: Option<CrossCheckReport>,
}

fn analyze(type_string: &str, with_poly: bool, json: bool, out: &mut dyn Write) -> CliResult {
    let source: ProperFraction<Int> = type_string.parse()?;
    let normalized = normalize(&source);
    let subject = normalized.as_ref().map_or(&source, |n| &n.fraction);
    let polynomial = RemainderPolynomial::expand(subject);
    let two_parameter = normalized.as_ref().and_then(|n| n.two_parameter.clone());
    let check = two_parameter.as_ref().map(cross_check);

    let verdict = if !source.is_semi_unimodular() {
        Verdict::Indeterminate {
            reason: "no weight equals 1: outside the hypotheses of the criteria".into(),
        }
    } else if !subject.has_age_one() {
        Verdict::Indeterminate {
            reason: format!(
                "weights sum to {}, not r = {}: not Gorenstein, no criterion applies",
                subject.numerator_sum(),
                subject.denominator()
            ),
        }
    } else if let Some(x) = &check {
        x.polynomial.clone()
    } else {
        decide_general(subject)?
    };
    let hj_report = check.as_ref().and_then(|x| {
        x.hj.as_ref().map(|(e, ok)| HjReport {
            expansion: e.clone(),
            dlr: Some(*ok),
        })
    });
    let disagreement = check.as_ref().and_then(CrossCheck::disagreement);
    let permuted = normalized
        .as_ref()
        .filter(|n| n.permutation.iter().enumerate().any(|(i, &p)| i != p));

    if json {
        let report = AnalyzeReport {
            source: &source,
            normalized: normalized.as_ref().map(|n| &n.fraction),
            permutation: normalized
                .as_ref()
                .map(|n| n.permutation.iter().map(|p| p + 1).collect()),
            two_parameter: two_parameter.as_ref(),
            terms: polynomial.len(),
            polynomial: with_poly.then_some(&polynomial),
            verdict: &verdict,
            hj: hj_report,
            cross_check: check.as_ref().map(CrossCheckReport::from),
        };
        write_json(out, &report)?;
    } else {
        writeln!(out, "type: {}", source.to_type_string())?;
        if let Some(n) = permuted {
            let perm: Vec<String> = n.permutation.iter().map(|p| (p + 1).to_string()).collect();
            writeln!(
                out,
                "normalized: {} (coordinates {})",
                n.fraction.to_type_string(),
                perm.join(",")
            )?;
        }
        if let Some(t) = &two_parameter {
            writeln!(out, "two-parameter: {t}")?;
        }
        writeln!(out, "terms: {}", polynomial.len())?;
        if with_poly {
            write!(out, "{}", polynomial.to_text())?;
        }
        writeln!(out, "verdict: {}", verdict.decision())?;
        writeln!(out, "witness: {}", verdict.witness_summary())?;
        if let (Some(t), Some(x)) = (&two_parameter, &check) {
            match &x.hj {
                Some((e, _)) => writeln!(out, "hj: {}", e.describe(t.n()))?,
                None => writeln!(out, "hj: skipped ({})", x.skipped.as_deref().unwrap_or(""))?,
            }
            let hj = x
                .hj_decision()
                .map_or("skipped".to_string(), |d| d.to_string());
            writeln!(
                out,
                "cross-check: polynomial={} fast={} hj={} {}",
                x.polynomial.decision(),
                x.fast.decision(),
                hj,
                if x.agree() { "agree" } else { "DISAGREE" }
            )?;
        }
    }
    if let Some(msg) = disagreement {
        writeln!(out, "disagreement: {msg}")?;
        return Ok(EXIT_DISAGREEMENT);
    }
    Ok(EXIT_OK)
}

fn poly(type_string: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let source: ProperFraction<Int> = type_string.parse()?;
    let p = RemainderPolynomial::expand(&source);
    if !p.within_hypotheses() {
        writeln!(
            err,
            "warning: {} is not semi-unimodular; the expansion is outside the hypotheses of the criteria",
            source.to_type_string()
        )?;
    }
    if json {
        write_json(out, &p)?;
    } else {
        write!(out, "{}", p.to_text())?;
    }
    Ok(EXIT_OK)
}

fn hj(r: &str, d: &str, dim: Option<usize>, json: bool, out: &mut dyn Write) -> CliResult {
    let (r, d) = (parse_int(r)?, parse_int(d)?);
    let e = hj_expand(&r, &d)?;
    let dlr = dim.map(|n| dlr_criterion(&e, n)).transpose()?;
    if json {
        write_json(out, &HjReport { expansion: e, dlr })?;
    } else {
        match dim {
            Some(n) => writeln!(out, "{}", e.describe(n))?,
            None => writeln!(out, "{e}")?,
        }
    }
    Ok(EXIT_OK)
}

/// One scanned two-parameter type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    #[serde(with = "crate::json::int")]
    pub r: Int,
    #[serde(with = "crate::json::int")]
    pub d: Int,
    #[serde(with = "crate::json::int")]
    pub c: Int,
    pub verdict_poly: Decision,
    pub verdict_fast: Decision,
    pub verdict_hj: Option<Decision>,
    pub agree: bool,
    pub witness: String,
}

impl ScanRecord {
    pub fn from_check(x: &CrossCheck<Int>) -> Self {
        ScanRecord {
            n: x.subject.n(),
            r: x.subject.r().clone(),
            d: x.subject.d().clone(),
            c: x.subject.c().clone(),
            verdict_poly: x.polynomial.decision(),
            verdict_fast: x.fast.decision(),
            verdict_hj: x.hj_decision(),
            agree: x.agree(),
            witness: x.polynomial.witness_summary(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub crepant: usize,
    pub not_crepant: usize,
    pub indeterminate: usize,
    pub hj_skipped: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub dim: usize,
    pub rmax: usize,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

/// Every valid `(r, d, c)` with `2 <= r <= rmax`, ordered by `r` then `c`.
pub fn scan_types(n: usize, rmax: usize) -> Vec<TwoParameterType<Int>> {
    let mut types = Vec::new();
    for r in 2..=rmax {
        let mut c = 0;
        while (n - 2) * c < r {
            if let Ok(t) = TwoParameterType::from_c(n, Int::from(r), Int::from(c)) {
                types.push(t);
            }
            c += 1;
        }
    }
    types
}

/// Cross-checks every type of [`scan_types`]; records come back in input
/// order whatever the thread count.
pub fn run_scan(n: usize, rmax: usize) -> ScanOutput {
    let records: Vec<ScanRecord> = scan_types(n, rmax)
        .par_iter()
        .map(|t| ScanRecord::from_check(&cross_check(t)))
        .collect();
    let mut summary = ScanSummary {
        total: records.len(),
        ..ScanSummary::default()
    };
    for rec in &records {
        match rec.verdict_poly {
            Decision::Crepant => summary.crepant += 1,
            Decision::NotCrepant => summary.not_crepant += 1,
            Decision::Indeterminate => summary.indeterminate += 1,
        }
        if rec.verdict_hj.is_none() {
            summary.hj_skipped += 1;
        }
        if !rec.agree {
            summary.disagreements += 1;
        }
    }
    ScanOutput {
        dim: n,
        rmax,
        records,
        summary,
    }
}

fn scan(n: usize, rmax: usize, jobs: Option<usize>, json: bool, out: &mut dyn Write) -> CliResult {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 }.into());
    }
    let result = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| CliError::Invalid(e.to_string()))?
            .install(|| run_scan(n, rmax)),
        None => run_scan(n, rmax),
    };
    if json {
        write_json(out, &result)?;
    } else {
        for rec in &result.records {
            let hj = rec
                .verdict_hj
                .map_or("skipped".to_string(), |d| d.to_string());
            writeln!(
                out,
                "n={} r={} d={} c={} poly={} fast={} hj={} agree={} witness={}",
                rec.n,
                rec.r,
                rec.d,
                rec.c,
                rec.verdict_poly,
                rec.verdict_fast,
                hj,
                if rec.agree { "yes" } else { "NO" },
                rec.witness
            )?;
        }
        let s = &result.summary;
        writeln!(
            out,
            "total={} crepant={} not_crepant={} indeterminate={} hj_skipped={} disagreements={}",
            s.total, s.crepant, s.not_crepant, s.indeterminate, s.hj_skipped, s.disagreements
        )?;
    }
    Ok(if result.summary.disagreements > 0 {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    })
}

/// `{"simplices": [[[ints]]], "volume": int, "exhaustive": bool}`; a found
/// witness is conclusive and reported with `exhaustive: true`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub simplices: Vec<Vec<Vec<crate::json::Int<Int>>>>,
    #[serde(with = "crate::json::int")]
    pub volume: Int,
    pub exhaustive: bool,
}

impl OracleReport {
    pub fn from_outcome(outcome: &SearchOutcome<Int>) -> Self {
        match outcome {
            SearchOutcome::Found(t) => {
                let volume = t.normalized_volume().to_integer();
                let simplices = t
                    .simplices()
                    .iter()
                    .map(|s| {
                        s.vertices()
                            .iter()
                            .map(|v| v.scaled().iter().cloned().map(crate::json::Int).collect())
                            .collect()
                    })
                    .collect();
                OracleReport {
                    simplices,
                    volume,
                    exhaustive: true,
                }
            }
            SearchOutcome::NoWitnessFound { exhaustive } => OracleReport {
                simplices: Vec::new(),
                volume: Int::zero(),
                exhaustive: *exhaustive,
            },
        }
    }
}

fn oracle(type_string: &str, max_r: usize, json: bool, out: &mut dyn Write) -> CliResult {
    let source: ProperFraction<Int> = type_string.parse()?;
    let lattice = Overlattice::new(source.denominator().clone(), source.numerators().to_vec())?;
    let limits = SearchLimits {
        max_r,
        ..SearchLimits::default()
    };
    let outcome = search_triangulation(&lattice, limits)?;
    if json {
        write_json(out, &OracleReport::from_outcome(&outcome))?;
        return Ok(EXIT_OK);
    }
    match &outcome {
        SearchOutcome::Found(t) => {
            writeln!(
                out,
                "triangulation: {} basic simplices, normalized volume {}",
                t.len(),
                t.normalized_volume().to_integer().to_u64().unwrap_or(0)
            )?;
            for s in t.simplices() {
                writeln!(out, "{s}")?;
            }
        }
        SearchOutcome::NoWitnessFound { exhaustive } => {
            writeln!(out, "NoWitnessFound (exhaustive: {exhaustive})")?;
        }
    }
    Ok(EXIT_OK)
}
