//! Instance and result file formats.
//!
//! Instances are JSON documents `{n, degree, coefficients}` where
//! `coefficients[j][r][c]` is the `[re, im]` pair of entry `(r, c)` of
//! `A_j`. Every float is written with 17 significant digits so a parse of
//! the output reproduces the input bit for bit.

use std::fmt;
use std::io;

use ek_core::bounds::{BoundResult, Witness};
use ek_core::{Complex64, ComplexMatrix, MatrixPolynomial, NormKind, Region, Spectrum};
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};
use sha2::{Digest, Sha256};

pub type Pair = [f64; 2];
pub type MatrixRows = Vec<Vec<Pair>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub degree: usize,
    pub coefficients: Vec<MatrixRows>,
}

/// A parse failure with the JSON line/column or the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for FormatError {}

fn field_error(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError {
        location: location.into(),
        message: message.into(),
    }
}

impl InstanceFile {
    pub fn from_polynomial(p: &MatrixPolynomial) -> Self {
        Self {
            n: p.dim(),
            degree: p.degree(),
            coefficients: p.coefficients().iter().map(matrix_rows).collect(),
        }
    }

    /// Checks the declared shape and builds the polynomial.
    pub fn to_polynomial(&self) -> Result<MatrixPolynomial, FormatError> {
        if self.n == 0 {
            return Err(field_error("n", "matrix size must be at least 1"));
        }
        if self.degree == 0 {
            return Err(field_error("degree", "degree must be at least 1"));
        }
        if self.coefficients.len() != self.degree + 1 {
            return Err(field_error(
                "coefficients",
                format!(
                    "expected degree + 1 = {} matrices, found {}",
                    self.degree + 1,
                    self.coefficients.len()
                ),
            ));
        }
        let mut mats = Vec::with_capacity(self.coefficients.len());
        for (j, rows) in self.coefficients.iter().enumerate() {
            mats.push(rows_to_matrix(rows, self.n, &format!("coefficients[{j}]"))?);
        }
        MatrixPolynomial::new(mats).map_err(|e| field_error("coefficients", e.to_string()))
    }
}

pub fn matrix_rows(a: &ComplexMatrix) -> MatrixRows {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &MatrixRows, n: usize, path: &str) -> Result<ComplexMatrix, FormatError> {
    if rows.len() != n {
        return Err(field_error(path, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(field_error(
                format!("{path}[{r}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        for (c, &[re, im]) in row.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(field_error(format!("{path}[{r}][{c}]"), "non-finite number"));
            }
            data.push(Complex64::new(re, im));
        }
    }
    ComplexMatrix::new(n, n, data).map_err(|e| field_error(path, e.to_string()))
}

fn json_error(e: serde_json::Error) -> FormatError {
    field_error(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_instance(text: &str) -> Result<MatrixPolynomial, FormatError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_polynomial()
}

/// Formatter that writes every `f64` as `d.dddddddddddddddde±x`.
#[derive(Debug)]
pub struct Fixed17<F>(pub F);

impl<F: Formatter> Formatter for Fixed17<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", fmt_f64(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn serialize_with<F: Formatter, T: Serialize>(value: &T, formatter: F) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Fixed17(formatter));
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serialize_with(value, PrettyFormatter::with_indent(b"  "));
    s.push('\n');
    s
}

pub fn to_compact_json<T: Serialize>(value: &T) -> String {
    serialize_with(value, CompactFormatter)
}

/// SHA-256 of the compact serialization, hex encoded.
pub fn instance_digest(p: &MatrixPolynomial) -> String {
    let text = to_compact_json(&InstanceFile::from_polynomial(p));
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Contained,
    Violated,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WitnessRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        Self {
            t: w.t,
            k: w.k,
            alpha: w.alpha,
            axis: w.axis.as_ref().map(matrix_rows),
            norm: w.norm.map(|k| k.as_str().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Radii {
    pub inner: Option<f64>,
    pub outer: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    /// `disk`, `annulus` or `exclusion-disk`.
    pub variant: String,
    pub center: Pair,
    pub radii: Radii,
}

impl From<&Region> for RegionRecord {
    fn from(r: &Region) -> Self {
        let c = r.center();
        let (inner, outer) = r.radii();
        Self {
            variant: r.kind_name().to_string(),
            center: [c.re, c.im],
            radii: Radii { inner, outer },
        }
    }
}

impl RegionRecord {
    pub fn to_region(&self) -> anyhow::Result<Region> {
        let center = Complex64::new(self.center[0], self.center[1]);
        let need = |r: Option<f64>, which: &str| {
            r.ok_or_else(|| anyhow::anyhow!("{} region lacks its {which} radius", self.variant))
        };
        Ok(match self.variant.as_str() {
            "disk" => Region::disk(center, need(self.radii.outer, "outer")?),
            "annulus" => Region::annulus(need(self.radii.inner, "inner")?, need(self.radii.outer, "outer")?)?,
            "exclusion-disk" => Region::exclusion_disk(center, need(self.radii.inner, "inner")?),
            other => anyhow::bail!("unknown region variant {other:?}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub theorem_id: String,
    pub hypothesis_ok: bool,
    pub witness: WitnessRecord,
    pub region: Option<RegionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl From<&BoundResult> for BoundRecord {
    fn from(r: &BoundResult) -> Self {
        Self {
            theorem_id: r.theorem.as_str().to_string(),
            hypothesis_ok: r.hypothesis_ok,
            witness: WitnessRecord::from(&r.witness),
            region: r.region.as_ref().map(RegionRecord::from),
            slack: None,
            verdict: None,
            diagnostics: r.diagnostics.clone(),
        }
    }
}

/// Eigenvalues and their normalized residuals; an unavailable residual is
/// written as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub eigenvalues: Vec<Pair>,
    pub residuals: Vec<Option<f64>>,
}

impl From<&Spectrum> for SpectrumRecord {
    fn from(s: &Spectrum) -> Self {
        Self {
            eigenvalues: s.lambdas().map(|z| [z.re, z.im]).collect(),
            residuals: s
                .eigenvalues
                .iter()
                .map(|e| e.residual.is_finite().then_some(e.residual))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub instance_digest: String,
    pub norm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub bounds: Vec<BoundRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumRecord>,
}

impl ResultFile {
    pub fn new(p: &MatrixPolynomial, norm: NormKind, bounds: Vec<BoundRecord>) -> Self {
        Self {
            instance_digest: instance_digest(p),
            norm: norm.as_str().to_string(),
            tolerance: None,
            bounds,
            spectrum: None,
        }
    }

    pub fn has_violation(&self) -> bool {
        self.bounds.iter().any(|b| b.verdict == Some(Verdict::Violated))
    }
}

pub fn parse_result(text: &str) -> Result<ResultFile, FormatError> {
    serde_json::from_str(text).map_err(json_error)
}

/// CSV cell for an optional float: empty when absent.
pub fn csv_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}
