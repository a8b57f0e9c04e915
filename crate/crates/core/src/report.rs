//! Serializable verification reports.
//!
//! Exact values are written as `"p/q"` strings. Every report carries enough
//! witness data for [`recompute_pass`] to re-derive its pass flag without
//! trusting the producer.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::linalg::{determinant, Matrix, Subspace};
use crate::multigerm::{Multicusp, PolynomialField};
use crate::scalar::{format_rational, parse_circle_point, parse_rational};
use crate::theorems::paper_closed_form_columns;
use crate::Rational;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    Lemma1,
    Theorem1,
    Theorem2,
    Corollary1,
    PaperCheck,
    Bookkeeping,
    Kernel,
    Matrix,
    Lift,
    Sweep,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branches: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub removed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theta1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kernel_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_level: Option<usize>,
}

/// One `value · X^x Y^y` term of a lifted field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTerm {
    pub x: u32,
    pub y: u32,
    pub value: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftWitness {
    pub target_degree: usize,
    pub jet_order: usize,
    pub field: Vec<FieldTerm>,
    /// Source field coefficients `x⁰ … x^{jet_order}` per branch.
    pub eta: Vec<Vec<String>>,
    pub residual_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub level: usize,
    pub trial: usize,
    pub branches: String,
    pub lemma1: bool,
    pub theorem2: bool,
    pub corollary1: bool,
    pub bookkeeping: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator_count: Option<usize>,
    pub pass: bool,
}

impl TrialSummary {
    pub fn derived_pass(&self) -> bool {
        self.lemma1
            && self.theorem2
            && self.corollary1
            && self.bookkeeping
            && self.generator_count.is_none_or(|n| n == 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub inputs: Inputs,
    pub dimensions: BTreeMap<String, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kernels: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lift: Option<LiftWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<Vec<TrialSummary>>,
    pub pass: bool,
    pub version: String,
}

impl VerificationReport {
    pub fn new(statement: Statement, inputs: Inputs) -> Self {
        Self {
            statement,
            inputs,
            dimensions: BTreeMap::new(),
            determinant: None,
            kernels: None,
            matrix: None,
            lift: None,
            trials: None,
            pass: false,
            version: VERSION.to_string(),
        }
    }

    pub fn dimension(&mut self, key: &str, values: Vec<usize>) -> &mut Self {
        self.dimensions.insert(key.to_string(), values);
        self
    }
}

pub fn encode_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn encode_matrix(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| encode_vector(r)).collect()
}

pub fn encode_subspace(s: &Subspace<Rational>) -> Vec<Vec<String>> {
    s.basis().iter().map(|r| encode_vector(r)).collect()
}

pub fn decode_vector(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|x| parse_rational(x)).collect()
}

pub fn decode_matrix(rows: &[Vec<String>]) -> Result<Matrix<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows
        .iter()
        .map(|r| decode_vector(r))
        .collect::<Result<_>>()?;
    Matrix::from_rows(cols, rows)
}

fn decode_span(ambient: usize, vectors: &[Vec<String>]) -> Result<Subspace<Rational>> {
    let vectors = vectors
        .iter()
        .map(|v| decode_vector(v))
        .collect::<Result<_>>()?;
    Subspace::from_vectors(ambient, vectors)
}

fn missing(what: &str) -> Error {
    Error::Report(format!("missing {what}"))
}

fn dim(report: &VerificationReport, key: &str) -> Result<Vec<usize>> {
    report
        .dimensions
        .get(key)
        .cloned()
        .ok_or_else(|| missing(key))
}

fn single(report: &VerificationReport, key: &str) -> Result<usize> {
    match dim(report, key)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::Report(format!("{key} must hold one value"))),
    }
}

/// Re-derives the pass flag from the report's witnesses alone.
pub fn recompute_pass(report: &VerificationReport) -> Result<bool> {
    let level = report.inputs.level;
    match report.statement {
        Statement::Lemma1 => {
            let level = level.ok_or_else(|| missing("level"))?;
            let kernels = report.kernels.as_ref().ok_or_else(|| missing("kernels"))?;
            let n = 2 * (level + 1);
            let mut ok = kernels.len() == level + 1;
            for k in kernels {
                ok &= decode_span(n, k)?.dim() == 2;
            }
            Ok(ok)
        }
        Statement::Theorem2 => {
            let level = level.ok_or_else(|| missing("level"))?;
            let kernels = report.kernels.as_ref().ok_or_else(|| missing("kernels"))?;
            let n = 2 * (level + 1);
            let mut dims = 0;
            let mut all = Vec::new();
            for k in kernels {
                dims += decode_span(n, k)?.dim();
                all.extend(k.iter().cloned());
            }
            Ok(kernels.len() == level + 1 && dims == n && decode_span(n, &all)?.dim() == n)
        }
        Statement::Corollary1 => {
            let level = level.ok_or_else(|| missing("level"))?;
            let m = decode_matrix(report.matrix.as_ref().ok_or_else(|| missing("matrix"))?)?;
            let n = 2 * (level + 1);
            if m.rows() != n || m.cols() != n {
                return Ok(false);
            }
            let det = determinant(&m)?;
            let reported = parse_rational(
                report
                    .determinant
                    .as_deref()
                    .ok_or_else(|| missing("determinant"))?,
            )?;
            Ok(det == reported && det != Rational::from_integer(0.into()))
        }
        Statement::Theorem1 => {
            let level = level.ok_or_else(|| missing("level"))?;
            let m = decode_matrix(report.matrix.as_ref().ok_or_else(|| missing("matrix"))?)?;
            let n = 2 * (level + 1);
            let hypothesis = m.rows() == n && m.cols() == n && m.rank() == n;
            let kernels = report.kernels.as_ref().ok_or_else(|| missing("kernels"))?;
            let [k] = kernels.as_slice() else {
                return Err(Error::Report("theorem1 carries one kernel".into()));
            };
            let count = decode_span(2 * (level + 2), k)?.dim();
            Ok(hypothesis && count == single(report, "generator_count")? && count == 2)
        }
        Statement::PaperCheck => {
            let theta = parse_circle_point(
                report
                    .inputs
                    .theta1
                    .as_deref()
                    .ok_or_else(|| missing("theta1"))?,
            )?;
            let m = decode_matrix(report.matrix.as_ref().ok_or_else(|| missing("matrix"))?)?;
            let expected = Matrix::from_columns(4, &paper_closed_form_columns(&theta))?;
            let s = theta.sin().clone();
            let target = Rational::from_integer((-20).into()) * &s * &s;
            let reported = parse_rational(
                report
                    .determinant
                    .as_deref()
                    .ok_or_else(|| missing("determinant"))?,
            )?;
            let kernels = report.kernels.as_ref().ok_or_else(|| missing("kernels"))?;
            let [k0, k1] = kernels.as_slice() else {
                return Err(Error::Report("paper_check carries two kernels".into()));
            };
            let cols: Vec<Vec<Rational>> = (0..4).map(|j| m.column(j)).collect();
            let closed0 = Subspace::from_vectors(4, cols[..2].to_vec())?;
            let closed1 = Subspace::from_vectors(4, cols[2..].to_vec())?;
            let both = decode_span(4, &k0.iter().chain(k1).cloned().collect::<Vec<_>>())?;
            Ok(m == expected
                && determinant(&m)? == target
                && reported == target
                && decode_span(4, k0)? == closed0
                && decode_span(4, k1)? == closed1
                && both.dim() == 4)
        }
        Statement::Bookkeeping => {
            let b = single(report, "branch_count")?;
            let delta = single(report, "delta")?;
            let quotient = single(report, "quotient_dim")?;
            let gamma = single(report, "gamma")?;
            let gamma_prev = single(report, "gamma_prev")?;
            let identity = (2 * delta + gamma)
                .checked_sub(delta + gamma_prev)
                .is_some_and(|rhs| rhs == quotient);
            Ok(delta == 2 * b && quotient == 2 * b && identity)
        }
        Statement::Kernel | Statement::Matrix => Ok(true),
        Statement::Lift => {
            let lift = report.lift.as_ref().ok_or_else(|| missing("lift"))?;
            let f = Multicusp::parse(
                report
                    .inputs
                    .branches
                    .as_deref()
                    .ok_or_else(|| missing("branches"))?,
            )?;
            let f = match report.inputs.removed {
                Some(j) => f.remove_branch(j)?,
                None => f,
            };
            let mut field = PolynomialField::zero();
            for term in &lift.field {
                let value = [
                    parse_rational(&term.value[0])?,
                    parse_rational(&term.value[1])?,
                ];
                field.add_term(term.x, term.y, value);
            }
            let eta = lift
                .eta
                .iter()
                .map(|c| Ok(SeriesJet::from_coeffs(lift.jet_order, decode_vector(c)?)))
                .collect::<Result<Vec<_>>>()?;
            let residual = f.omega_f(&field, lift.jet_order).try_sub(&f.tf(&eta)?)?;
            let achieved = residual.order_of_vanishing().unwrap_or(lift.jet_order + 1);
            Ok(achieved == lift.residual_order && achieved >= 2 * (lift.target_degree + 1))
        }
        Statement::Sweep => {
            let trials = report.trials.as_ref().ok_or_else(|| missing("trials"))?;
            Ok(!trials.is_empty() && trials.iter().all(|t| t.pass && t.derived_pass()))
        }
    }
}
