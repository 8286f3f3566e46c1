//! Command implementations behind the `negabent` binary. Each returns a
//! [`Report`] and, where the command produces one, a text artifact (a truth
//! table file or a CSV).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boolfun::{BooleanFunction, UnivariatePoly};
use crate::bridge::{full_degree_h, optimal_degree_construction, Construction, Source};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx, FieldSpec};
use crate::io::{nega_csv, read_table, sweep_csv, walsh_csv, write_table, FieldTag};
use crate::mm::{mm_build, mm_negabent_test, PermSpec};
use crate::spectra::{nega, walsh, SpectrumSummary, Transform};
use crate::suites::{run_suite, Suite, SuiteParams, SuiteResult};

pub const REPORT_VERSION: u32 = 1;

/// Violations listed per function in a report.
const VIOLATION_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionVerdict {
    pub name: String,
    pub n: u32,
    pub field: String,
    pub weight: u64,
    /// `None` for the zero function.
    pub degree: Option<u32>,
    pub bent: bool,
    pub negabent: bool,
    pub spectra: SpectrumSummary,
}

impl FunctionVerdict {
    pub fn of(name: &str, f: &BooleanFunction, field: FieldTag) -> Self {
        let spectra = SpectrumSummary::of(f).truncated(VIOLATION_LIMIT);
        FunctionVerdict {
            name: name.into(),
            n: f.n(),
            field: field.to_string(),
            weight: f.weight(),
            degree: f.degree(),
            bent: spectra.bent,
            negabent: spectra.negabent,
            spectra,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_v: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// False when a check performed by the command failed (exit code 1).
    pub passed: bool,
    pub functions: Vec<FunctionVerdict>,
    pub suites: Vec<SuiteResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            report_v: REPORT_VERSION,
            command,
            field: None,
            passed: true,
            functions: Vec::new(),
            suites: Vec::new(),
            data: None,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A report plus the command's artifact, if any.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Report,
    pub artifact: Option<String>,
}

fn field_ctx(tag: FieldTag) -> Result<FieldCtx> {
    let s = tag.spec();
    make_field(s.n, Some(s.modulus))
}

/// Reads a truth-table file and reports degree, weight and both spectral verdicts.
/// `spectrum` selects a CSV export of one transform.
pub fn analyze(
    command: Vec<String>,
    name: &str,
    text: &str,
    expected_field: Option<FieldSpec>,
    spectrum: Option<Transform>,
) -> Result<Output> {
    let (f, tag) = read_table(text)?;
    field_ctx(tag)?;
    if let Some(spec) = expected_field {
        if spec != tag.spec() {
            return Err(Error::FieldMismatch(spec.to_string(), tag.to_string()));
        }
    }
    let mut report = Report::new(command);
    report.field = Some(tag.to_string());
    report.functions.push(FunctionVerdict::of(name, &f, tag));
    let artifact = spectrum.map(|t| match t {
        Transform::Walsh => walsh_csv(&walsh(&f)),
        Transform::Nega => nega_csv(&nega(&f)),
    });
    Ok(Output { report, artifact })
}

pub fn sweep_monomial(command: Vec<String>, spec: FieldSpec, k: u32) -> Result<Output> {
    let ctx = make_field(spec.n, Some(spec.modulus))?;
    let csv = sweep_csv(&ctx, k)?;
    let rows: Vec<Value> = csv
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<u32> = line.split(',').map(|x| x.parse().unwrap_or(0)).collect();
            json!({
                "lambda": v[0],
                "bent": v[1] == 1,
                "negabent": v[2] == 1,
                "zt_zero": v[3] == 1,
                "in_power_image": v[4] == 1,
            })
        })
        .collect();
    let mut report = Report::new(command);
    report.field = Some(spec.to_string());
    report.data = Some(json!({ "k": k, "rows": rows }));
    Ok(Output { report, artifact: Some(csv) })
}

/// Builds `Tr(x pi(y) + h(y))` and reports its verdicts; fails the run if the
/// negabent criterion disagrees with the transform.
pub fn mm_build_cmd(command: Vec<String>, spec: FieldSpec, pi: &str, h: &str) -> Result<Output> {
    let ctx = make_field(spec.n, Some(spec.modulus))?;
    let pi_poly = UnivariatePoly::parse(&ctx, pi)?;
    let h_poly = UnivariatePoly::parse(&ctx, h)?;
    let perm = PermSpec::from_poly(&ctx, &pi_poly);
    let m = mm_build(&ctx, &perm, &h_poly)?;
    let tag = FieldTag::Square(spec);
    let verdict = FunctionVerdict::of("mm", &m.function, tag);
    let criterion = if perm.is_bijection() { Some(mm_negabent_test(&ctx, &m)?) } else { None };
    let mut report = Report::new(command);
    report.passed = criterion.is_none_or(|c| c == verdict.negabent) && verdict.bent == perm.is_bijection();
    report.field = Some(tag.to_string());
    report.functions.push(verdict);
    report.data = Some(json!({
        "t": spec.n,
        "pi": pi_poly.to_string(),
        "h": h_poly.to_string(),
        "pi_bijective": perm.is_bijection(),
        "pi_complete_mapping": perm.is_complete_mapping(),
        "mm_negabent_criterion": criterion,
    }));
    let table = write_table(&m.function, tag)?;
    Ok(Output { report, artifact: Some(table) })
}

/// Checks whether `pi` is a complete mapping; a negative answer fails the run.
pub fn cm_verify(command: Vec<String>, spec: FieldSpec, pi: &str) -> Result<Output> {
    let ctx = make_field(spec.n, Some(spec.modulus))?;
    let poly = UnivariatePoly::parse(&ctx, pi)?;
    let perm = PermSpec::from_poly(&ctx, &poly);
    let mut report = Report::new(command);
    report.field = Some(spec.to_string());
    report.passed = perm.is_complete_mapping();
    report.data = Some(json!({
        "pi": poly.to_string(),
        "bijective": perm.is_bijection(),
        "sum_with_identity_bijective": perm.add_identity().is_bijection(),
        "complete_mapping": perm.is_complete_mapping(),
        "degree": perm.algebraic_degree(&ctx),
        "degree_of_sum": perm.add_identity().algebraic_degree(&ctx),
    }));
    Ok(Output { report, artifact: None })
}

/// Certificate attached to a constructed function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub bent: bool,
    pub negabent: bool,
    pub degree: Option<u32>,
    pub transform_used: TransformUsed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformUsed {
    pub source: Source,
    pub seed: u64,
    pub t: u32,
    pub pi: Vec<u32>,
    pub h: String,
    /// Rows of `A` as bitmasks.
    pub matrix: Vec<u32>,
    pub translation: u32,
    pub functional: u32,
    pub constant: bool,
}

impl Certificate {
    pub fn of(c: &Construction, source: Source, seed: u64) -> Self {
        Certificate {
            bent: c.bent,
            negabent: c.negabent,
            degree: c.degree,
            transform_used: TransformUsed {
                source,
                seed,
                t: c.pi.t(),
                pi: c.pi.table().to_vec(),
                h: c.h.to_string(),
                matrix: c.transform.matrix().rows().to_vec(),
                translation: c.transform.translation(),
                functional: c.transform.functional(),
                constant: c.transform.constant(),
            },
        }
    }
}

/// Optimal-degree bent-negabent function on `n` variables; the artifact is its table file.
pub fn construct(command: Vec<String>, n: u32, source: Source, seed: u64, h: Option<&str>) -> Result<Output> {
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let ctx_t = make_field(n / 2, None)?;
    let h = match h {
        Some(text) => UnivariatePoly::parse(&ctx_t, text)?,
        None => full_degree_h(&ctx_t),
    };
    let c = optimal_degree_construction(n, source, seed, Some(h))?;
    let tag = FieldTag::Single(FieldSpec::default_for(n)?);
    let cert = Certificate::of(&c, source, seed);
    let mut report = Report::new(command);
    report.passed = c.is_bent_negabent() && c.degree == Some(n / 2);
    report.field = Some(tag.to_string());
    report.functions.push(FunctionVerdict::of("constructed", &c.function, tag));
    report.data = Some(json!({ "certificate": cert }));
    Ok(Output { report, artifact: Some(write_table(&c.function, tag)?) })
}

pub fn verify(command: Vec<String>, suite: Suite, params: &SuiteParams) -> Result<Output> {
    let result = run_suite(suite, params)?;
    let mut report = Report::new(command);
    report.passed = result.passed();
    report.suites.push(result);
    Ok(Output { report, artifact: None })
}
