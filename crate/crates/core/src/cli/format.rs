//! Problem and result files.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::existence::ExistenceCertificate;
use crate::funcalc::{compile, FuncError, FuncExpr};
use crate::rational::{self, Rational};
use crate::solver::{DcProblem, DcSolution, SolverError, Status, Timings};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("field `{field}`: {source}")]
    Function {
        field: &'static str,
        #[source]
        source: FuncError,
    },
    #[error("field `{field}` has dimension {found}, but n = {n}")]
    Dimension { field: &'static str, n: usize, found: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A d.c. problem `min g - h` on `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub description: Option<String>,
    pub n: usize,
    pub g: FuncExpr,
    pub h: FuncExpr,
}

impl ProblemFile {
    /// Parse JSON, reporting the failing field path and line/column.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| FormatError::Json {
            path: e.path().to_string(),
            source: e.into_inner(),
        })?;
        de.end().map_err(|source| FormatError::Json {
            path: ".".into(),
            source,
        })?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files serialize");
        s.push('\n');
        s
    }

    pub fn to_problem(&self) -> Result<DcProblem, FormatError> {
        let compile_field = |field: &'static str, e: &FuncExpr| {
            let f = compile(e).map_err(|source| FormatError::Function { field, source })?;
            if f.n() != self.n {
                return Err(FormatError::Dimension {
                    field,
                    n: self.n,
                    found: f.n(),
                });
            }
            Ok(f)
        };
        let g = compile_field("g", &self.g)?;
        let h = compile_field("h", &self.h)?;
        Ok(DcProblem::new(g, h)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Exists,
    NotExists,
    Optimal,
    NoSolution,
}

impl RecordStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RecordStatus::Exists | RecordStatus::Optimal => 0,
            RecordStatus::NotExists | RecordStatus::NoSolution => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RecordStatus::Exists => "exists",
            RecordStatus::NotExists => "not_exists",
            RecordStatus::Optimal => "optimal",
            RecordStatus::NoSolution => "no_solution",
        }
    }
}

/// Phase timings in seconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordTimings {
    pub exist: f64,
    pub reduce: f64,
    #[serde(rename = "enum")]
    pub enumerate: f64,
    pub total: f64,
}

impl From<Timings> for RecordTimings {
    fn from(t: Timings) -> Self {
        let s = |d: Duration| d.as_secs_f64();
        RecordTimings {
            exist: s(t.exist),
            reduce: s(t.reduce),
            enumerate: s(t.enumerate),
            total: s(t.total),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub status: RecordStatus,
    pub method: String,
    #[serde(with = "rational::serde_opt_rational_vec", skip_serializing_if = "Option::is_none", default)]
    pub x: Option<Vec<Rational>>,
    #[serde(with = "rational::serde_opt_rational", skip_serializing_if = "Option::is_none", default)]
    pub value: Option<Rational>,
    #[serde(with = "rational::serde_opt_rational_vec", skip_serializing_if = "Option::is_none", default)]
    pub dual_y: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<ExistenceCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual_certificate: Option<ExistenceCertificate>,
    /// Whether the primal and dual existence tests agree (`check --method both`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agreement: Option<bool>,
    pub timings: RecordTimings,
}

impl ResultRecord {
    pub fn from_solution(sol: &DcSolution) -> Self {
        let method = match sol.method {
            crate::solver::Method::Primal => "primal",
            crate::solver::Method::Dual => "dual",
        };
        let (status, certificate) = match &sol.status {
            Status::Optimal => (RecordStatus::Optimal, None),
            Status::NoSolution(c) => (RecordStatus::NoSolution, Some(c.clone())),
        };
        ResultRecord {
            status,
            method: method.into(),
            x: sol.x.clone(),
            value: sol.value.clone(),
            dual_y: sol.dual_y.clone(),
            certificate,
            dual_certificate: None,
            agreement: None,
            timings: sol.timings.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// One row matching [`CSV_HEADER`].
    pub fn csv_row(&self, n: usize) -> String {
        let t = &self.timings;
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6}",
            n,
            self.method,
            self.status.as_str(),
            self.value.as_ref().map(rational::format).unwrap_or_default(),
            t.exist,
            t.reduce,
            t.enumerate,
            t.total
        )
    }
}

pub const CSV_HEADER: &str = "n,method,status,value,t_exist,t_reduce,t_enum,t_total";
