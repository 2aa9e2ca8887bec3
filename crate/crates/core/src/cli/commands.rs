use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use super::format::{ProblemFile, RecordStatus, RecordTimings, ResultRecord, CSV_HEADER};
use super::generate;
use crate::existence::{dual_existence_test, primal_existence_test, ExistenceCertificate};
use crate::solver::{solve_dual, solve_primal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMethod {
    Primal,
    Dual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Primal,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ex1,
    Ex2,
}

pub fn read_problem(path: &Path) -> Result<ProblemFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ProblemFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn status_of(cert: &ExistenceCertificate) -> RecordStatus {
    if cert.exists() {
        RecordStatus::Exists
    } else {
        RecordStatus::NotExists
    }
}

/// Existence test(s) on a parsed problem.
pub fn check_problem(file: &ProblemFile, method: CheckMethod) -> Result<ResultRecord> {
    let p = file.to_problem()?;
    let start = Instant::now();
    let (primal, dual) = match method {
        CheckMethod::Primal => (Some(primal_existence_test(p.g(), p.h())), None),
        CheckMethod::Dual => (None, Some(dual_existence_test(p.g(), p.h()))),
        CheckMethod::Both => (
            Some(primal_existence_test(p.g(), p.h())),
            Some(dual_existence_test(p.g(), p.h())),
        ),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let agreement = match (&primal, &dual) {
        (Some(a), Some(b)) => Some(a.verdict == b.verdict),
        _ => None,
    };
    let (certificate, dual_certificate) = match method {
        CheckMethod::Dual => (dual, None),
        _ => (primal, dual),
    };
    let lead = certificate.as_ref().expect("at least one test ran");
    Ok(ResultRecord {
        status: status_of(lead),
        method: format!("{method:?}").to_lowercase(),
        x: None,
        value: None,
        dual_y: None,
        certificate,
        dual_certificate,
        agreement,
        timings: RecordTimings {
            exist: elapsed,
            total: elapsed,
            ..Default::default()
        },
    })
}

pub fn solve_problem(file: &ProblemFile, method: SolveMethod) -> Result<ResultRecord> {
    let p = file.to_problem()?;
    let sol = match method {
        SolveMethod::Primal => solve_primal(&p)?,
        SolveMethod::Dual => solve_dual(&p)?,
    };
    Ok(ResultRecord::from_solution(&sol))
}

/// Exit code 0 (exists), 2 (does not exist).
pub fn cmd_check(path: &Path, method: CheckMethod, out: &mut dyn Write) -> Result<i32> {
    let rec = check_problem(&read_problem(path)?, method)?;
    writeln!(out, "{}", rec.to_json())?;
    Ok(rec.status.exit_code())
}

/// Exit code 0 (optimal), 2 (no solution).
pub fn cmd_solve(path: &Path, method: SolveMethod, output: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let file = read_problem(path)?;
    let rec = solve_problem(&file, method)?;
    match output {
        OutputFormat::Json => writeln!(out, "{}", rec.to_json())?,
        OutputFormat::Csv => writeln!(out, "{CSV_HEADER}\n{}", rec.csv_row(file.n))?,
    }
    Ok(rec.status.exit_code())
}

pub fn generate(family: Family, n: usize, mg: usize, mh: usize) -> Result<ProblemFile> {
    Ok(match family {
        Family::Ex1 => generate::ex1(n, mg, mh)?,
        Family::Ex2 => generate::ex2(n)?,
    })
}

/// Writes the problem to `out_path`, or to `out` when no path is given.
pub fn cmd_gen(file: &ProblemFile, out_path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let text = file.to_json();
    match out_path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

/// Inclusive range `a..b` (or a single size); empty when `a > b`.
pub fn parse_sizes(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let parse = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .with_context(|| format!("invalid size `{s}` in `{text}`"))
    };
    match text.split_once("..") {
        Some((a, b)) => Ok(parse(a)?..=parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(text)?;
            Ok(n..=n)
        }
    }
}

/// CSV with one row per size and method.
pub fn bench_csv(family: Family, sizes: &str, methods: &[SolveMethod], mg: usize, mh: usize) -> Result<String> {
    if methods.is_empty() {
        bail!("no methods given");
    }
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for n in parse_sizes(sizes)? {
        let file = generate(family, n, mg, mh)?;
        for &m in methods {
            let rec = solve_problem(&file, m)?;
            csv.push_str(&rec.csv_row(n));
            csv.push('\n');
        }
    }
    Ok(csv)
}

pub fn cmd_bench(
    family: Family,
    sizes: &str,
    methods: &[SolveMethod],
    mg: usize,
    mh: usize,
    out_path: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let csv = bench_csv(family, sizes, methods, mg, mh)?;
    fs::write(out_path, &csv).with_context(|| format!("writing {}", out_path.display()))?;
    writeln!(out, "wrote {} rows to {}", csv.lines().count() - 1, out_path.display())?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("2..5").unwrap(), 2..=5);
        assert_eq!(parse_sizes("3").unwrap(), 3..=3);
        assert_eq!(parse_sizes("2..=4").unwrap(), 2..=4);
        assert!(parse_sizes("5..4").unwrap().is_empty());
        assert!(parse_sizes("x..4").is_err());
    }

    #[test]
    fn check_example_one() {
        let rec = check_problem(&generate::ex1(1, 2, 1).unwrap(), CheckMethod::Both).unwrap();
        assert_eq!(rec.status, RecordStatus::Exists);
        assert_eq!(rec.agreement, Some(true));
        let rec = check_problem(&generate::ex1(1, 1, 2).unwrap(), CheckMethod::Both).unwrap();
        assert_eq!(rec.status, RecordStatus::NotExists);
        assert_eq!(rec.agreement, Some(true));
    }

    #[test]
    fn empty_bench() {
        let csv = bench_csv(Family::Ex2, "5..4", &[SolveMethod::Primal], 1, 1).unwrap();
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }
}
