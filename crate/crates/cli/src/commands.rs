//! Subcommands. Each returns an [`Outcome`]; operational failures come back
//! as errors and map to exit code 2.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ek_core::bounds::{all_bounds, bound_auto, tightness_report, Tightness, MEMBERSHIP_TOL};
use ek_core::eigen::polyeig;
use ek_core::generators::{generate, GeneratorClass, GeneratorConfig};
use ek_core::{BoundResult, MatrixPolynomial, NormKind, Region, Spectrum, TheoremId};
use rayon::prelude::*;

use crate::format::{
    csv_f64, fmt_f64, instance_digest, parse_instance, parse_result, to_json, BoundRecord,
    InstanceFile, ResultFile, SpectrumRecord, Verdict, WitnessRecord,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Violated => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ek", version, about = "Eigenvalue localization bounds for matrix polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every localization region whose hypothesis holds
    Bounds(BoundsArgs),
    /// Compute the spectrum and check every claimed region against it
    Verify(VerifyArgs),
    /// Write a random instance satisfying a chosen hypothesis
    Generate(GenerateArgs),
    /// Rank the satisfied bounds by slack against the spectrum
    Compare(CompareArgs),
}

fn parse_norm(s: &str) -> std::result::Result<NormKind, String> {
    match s {
        "2" => Ok(NormKind::Induced2),
        "1" => Ok(NormKind::Induced1),
        "inf" => Ok(NormKind::InducedInf),
        other => Err(format!("expected 2, 1 or inf, got {other:?}")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct NormArg {
    /// Subordinate norm for the norm-based bounds
    #[arg(long, env = "EK_DEFAULT_NORM", default_value = "2", value_parser = parse_norm)]
    pub norm: NormKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Instance file, or - for stdin
    pub input: String,
    #[command(flatten)]
    pub norm: NormArg,
    /// Comma-separated theorem ids, or "all"
    #[arg(long, default_value = "all")]
    pub theorems: String,
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Instance file, or - for stdin
    #[arg(required_unless_present = "input_dir", conflicts_with = "input_dir")]
    pub input: Option<String>,
    /// Verify every *.json file in a directory
    #[arg(long)]
    pub input_dir: Option<PathBuf>,
    /// Relative membership tolerance
    #[arg(long, default_value_t = MEMBERSHIP_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub norm: NormArg,
    /// Check the regions recorded in this result file instead of recomputing them
    #[arg(long, conflicts_with = "input_dir")]
    pub claims: Option<String>,
    /// Output file (directory in --input-dir mode)
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    Unconstrained,
    Loewner,
    Geometric,
    Cone,
    HermitianChain,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub class: ClassName,
    /// Matrix size
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Chain ratio (geometric, hermitian-chain); default 1
    #[arg(long)]
    pub t: Option<f64>,
    /// Leading factor (cone, hermitian-chain); default 1
    #[arg(long)]
    pub k: Option<f64>,
    /// Cone half-angle in radians (cone); default pi/4
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Instance file, or - for stdin
    pub input: String,
    #[arg(long, default_value_t = MEMBERSHIP_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub norm: NormArg,
    /// Also write the table as CSV
    #[arg(long)]
    pub csv: Option<String>,
    /// Write region geometry (one row per satisfied bound) as CSV
    #[arg(long)]
    pub geometry: Option<String>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Generate(a) => cmd_generate(&a),
        Command::Compare(a) => cmd_compare(&a),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn write_output(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {path}"))
    }
}

/// Parses an instance and rejects a singular leading coefficient, which
/// every bound and the linearization assume away.
pub fn load_instance(text: &str, origin: &str) -> Result<MatrixPolynomial> {
    let p = parse_instance(text).map_err(|e| anyhow!("{origin}: {e}"))?;
    if !p.validate().leading_nonsingular {
        bail!("{origin}: leading coefficient A_m is singular");
    }
    Ok(p)
}

fn parse_theorems(list: &str) -> Result<Vec<TheoremId>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut ids: Vec<TheoremId> = list
        .split(',')
        .map(|s| s.parse::<TheoremId>().map_err(|e| anyhow!("{e}")))
        .collect::<Result<_>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

fn bounds_csv(results: &[BoundResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem_id", "hypothesis_ok", "center_re", "center_im", "radius_inner", "radius_outer"])?;
    for r in results {
        let (center, (inner, outer)) = match &r.region {
            Some(g) => (Some(g.center()), g.radii()),
            None => (None, (None, None)),
        };
        w.write_record([
            r.theorem.as_str().to_string(),
            r.hypothesis_ok.to_string(),
            csv_f64(center.map(|c| c.re)),
            csv_f64(center.map(|c| c.im)),
            csv_f64(inner),
            csv_f64(outer),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_bounds(a: &BoundsArgs) -> Result<Outcome> {
    let p = load_instance(&read_input(&a.input)?, &a.input)?;
    let ids = parse_theorems(&a.theorems)?;
    let results: Vec<BoundResult> = ids.iter().map(|&id| bound_auto(&p, id, a.norm.norm)).collect();
    let text = match a.format {
        OutputFormat::Json => to_json(&ResultFile::new(
            &p,
            a.norm.norm,
            results.iter().map(BoundRecord::from).collect(),
        )),
        OutputFormat::Csv => bounds_csv(&results)?,
    };
    write_output(&a.out, &text)?;
    Ok(Outcome::Verified)
}

fn slack_for(theorem: &str, report: &[Tightness]) -> Option<f64> {
    report
        .iter()
        .find(|t| t.theorem.as_str() == theorem)
        .map(|t| t.slack)
}

/// Attaches verdicts and slack to `records` and packs the result file.
fn judge(
    p: &MatrixPolynomial,
    norm: NormKind,
    spectrum: &Spectrum,
    mut records: Vec<BoundRecord>,
    tol: f64,
) -> Result<ResultFile> {
    let mut satisfied = Vec::new();
    for rec in records.iter_mut() {
        let region = match (&rec.region, rec.hypothesis_ok) {
            (Some(r), true) => Some(r.to_region()?),
            _ => None,
        };
        rec.verdict = Some(match region {
            None => Verdict::NotApplicable,
            Some(g) if g.admits_all(spectrum.lambdas(), tol) => Verdict::Contained,
            Some(_) => Verdict::Violated,
        });
        if let Some(g) = region {
            let theorem = rec.theorem_id.parse::<TheoremId>()?;
            satisfied.push(BoundResult {
                theorem,
                hypothesis_ok: true,
                witness: Default::default(),
                region: Some(g),
                diagnostics: Vec::new(),
            });
        }
    }
    let report = tightness_report(&satisfied, spectrum);
    for rec in records.iter_mut() {
        if rec.verdict != Some(Verdict::NotApplicable) {
            rec.slack = slack_for(&rec.theorem_id, &report);
        }
    }
    let mut file = ResultFile::new(p, norm, records);
    file.tolerance = Some(tol);
    file.spectrum = Some(SpectrumRecord::from(spectrum));
    Ok(file)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= 0.0 && tol.is_finite()) {
        bail!("--tol must be finite and nonnegative, got {tol}");
    }
    Ok(())
}

/// Spectrum and verdicts for one instance text.
pub fn verify_text(
    text: &str,
    origin: &str,
    norm: NormKind,
    tol: f64,
    claims: Option<&ResultFile>,
) -> Result<ResultFile> {
    let p = load_instance(text, origin)?;
    let spectrum = polyeig(&p).with_context(|| format!("{origin}: eigensolver failed"))?;
    let records = match claims {
        Some(c) => {
            let digest = instance_digest(&p);
            if c.instance_digest != digest {
                bail!(
                    "{origin}: claims were recorded for instance {}, not {digest}",
                    c.instance_digest
                );
            }
            c.bounds.clone()
        }
        None => all_bounds(&p, norm).iter().map(BoundRecord::from).collect(),
    };
    judge(&p, norm, &spectrum, records, tol)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    check_tol(a.tol)?;
    if let Some(dir) = &a.input_dir {
        return verify_dir(dir, a);
    }
    let input = a.input.as_deref().expect("clap requires input");
    let claims = match &a.claims {
        Some(path) => Some(parse_result(&read_input(path)?).map_err(|e| anyhow!("{path}: {e}"))?),
        None => None,
    };
    let file = verify_text(&read_input(input)?, input, a.norm.norm, a.tol, claims.as_ref())?;
    write_output(a.out.as_deref().unwrap_or("-"), &to_json(&file))?;
    for b in file.bounds.iter().filter(|b| b.verdict == Some(Verdict::Violated)) {
        eprintln!("violated: {} claims {:?}", b.theorem_id, b.region);
    }
    Ok(if file.has_violation() {
        Outcome::Violated
    } else {
        Outcome::Verified
    })
}

fn verify_dir(dir: &Path, a: &VerifyArgs) -> Result<Outcome> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if let Some(out) = &a.out {
        fs::create_dir_all(out).with_context(|| format!("creating {out}"))?;
    }
    let results: Vec<(PathBuf, Result<ResultFile>)> = files
        .par_iter()
        .map(|path| {
            let origin = path.display().to_string();
            let r = fs::read_to_string(path)
                .with_context(|| format!("reading {origin}"))
                .and_then(|text| verify_text(&text, &origin, a.norm.norm, a.tol, None));
            (path.clone(), r)
        })
        .collect();
    let mut violated = false;
    let mut failed = false;
    let mut stdout = io::stdout().lock();
    for (path, r) in &results {
        let name = path.file_name().map(|s| s.to_string_lossy()).unwrap_or_default();
        match r {
            Ok(file) => {
                let status = if file.has_violation() { "violated" } else { "ok" };
                violated |= file.has_violation();
                writeln!(stdout, "{name}\t{status}")?;
                if let Some(out) = &a.out {
                    let stem = path.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default();
                    let target = Path::new(out).join(format!("{stem}.result.json"));
                    fs::write(&target, to_json(file))
                        .with_context(|| format!("writing {}", target.display()))?;
                }
            }
            Err(e) => {
                failed = true;
                writeln!(stdout, "{name}\terror")?;
                eprintln!("error: {e:#}");
            }
        }
    }
    if violated {
        Ok(Outcome::Violated)
    } else if failed {
        bail!("{} of {} instances could not be verified", results.iter().filter(|r| r.1.is_err()).count(), results.len())
    } else {
        Ok(Outcome::Verified)
    }
}

fn generator_class(a: &GenerateArgs) -> Result<GeneratorClass> {
    let (uses_t, uses_k, uses_alpha) = match a.class {
        ClassName::Unconstrained | ClassName::Loewner => (false, false, false),
        ClassName::Geometric => (true, false, false),
        ClassName::Cone => (false, true, true),
        ClassName::HermitianChain => (true, true, false),
    };
    let name = a.class.to_possible_value().expect("named class").get_name().to_string();
    for (flag, given, used) in [
        ("--t", a.t.is_some(), uses_t),
        ("--k", a.k.is_some(), uses_k),
        ("--alpha", a.alpha.is_some(), uses_alpha),
    ] {
        if given && !used {
            bail!("{flag} is not a parameter of class {name}");
        }
    }
    let t = a.t.unwrap_or(1.0);
    let k = a.k.unwrap_or(1.0);
    let alpha = a.alpha.unwrap_or(std::f64::consts::FRAC_PI_4);
    Ok(match a.class {
        ClassName::Unconstrained => GeneratorClass::Unconstrained,
        ClassName::Loewner => GeneratorClass::LoewnerChain,
        ClassName::Geometric => GeneratorClass::GeometricNormChain { t },
        ClassName::Cone => GeneratorClass::FrobeniusCone { k, alpha },
        ClassName::HermitianChain => GeneratorClass::HermitianScaledChain { k, t },
    })
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<Outcome> {
    let class = generator_class(a)?;
    let g = generate(&GeneratorConfig {
        seed: a.seed,
        n: a.n,
        m: a.degree,
        class,
    })?;
    write_output(&a.out, &to_json(&InstanceFile::from_polynomial(&g.polynomial)))?;
    let witness = to_json(&WitnessRecord::from(&g.witness));
    if a.out == "-" {
        eprint!("{witness}");
    } else {
        print!("{witness}");
    }
    Ok(Outcome::Verified)
}

fn radii_text(r: &Region) -> String {
    match r.radii() {
        (None, Some(o)) => format!("<= {o:.6e}"),
        (Some(i), None) => format!(">= {i:.6e}"),
        (Some(i), Some(o)) => format!("[{i:.6e}, {o:.6e}]"),
        (None, None) => String::new(),
    }
}

fn tightness_table(rows: &[Tightness]) -> String {
    let header = ["theorem", "region", "center", "radii", "slack", "inner_margin"];
    let body: Vec<[String; 6]> = rows
        .iter()
        .map(|t| {
            let c = t.region.center();
            [
                t.theorem.as_str().to_string(),
                t.region.kind_name().to_string(),
                format!("{:.6e}{:+.6e}i", c.re, c.im),
                radii_text(&t.region),
                format!("{:.6e}", t.slack),
                t.inner_margin.map(|m| format!("{m:.6e}")).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn tightness_csv(rows: &[Tightness]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem_id", "type", "center_re", "center_im", "radius_inner", "radius_outer", "slack", "inner_margin"])?;
    for t in rows {
        let c = t.region.center();
        let (inner, outer) = t.region.radii();
        w.write_record([
            t.theorem.as_str().to_string(),
            t.region.kind_name().to_string(),
            fmt_f64(c.re),
            fmt_f64(c.im),
            csv_f64(inner),
            csv_f64(outer),
            fmt_f64(t.slack),
            csv_f64(t.inner_margin),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn geometry_csv(results: &[BoundResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem_id", "type", "center_re", "center_im", "radius_inner", "radius_outer"])?;
    for r in results.iter().filter(|r| r.hypothesis_ok) {
        let Some(g) = &r.region else { continue };
        let c = g.center();
        let (inner, outer) = g.radii();
        w.write_record([
            r.theorem.as_str().to_string(),
            g.kind_name().to_string(),
            fmt_f64(c.re),
            fmt_f64(c.im),
            csv_f64(inner),
            csv_f64(outer),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_compare(a: &CompareArgs) -> Result<Outcome> {
    check_tol(a.tol)?;
    let text = read_input(&a.input)?;
    let p = load_instance(&text, &a.input)?;
    let spectrum = polyeig(&p).with_context(|| format!("{}: eigensolver failed", a.input))?;
    let results = all_bounds(&p, a.norm.norm);
    let report = tightness_report(&results, &spectrum);
    print!("{}", tightness_table(&report));
    if let Some(path) = &a.csv {
        write_output(path, &tightness_csv(&report)?)?;
    }
    if let Some(path) = &a.geometry {
        write_output(path, &geometry_csv(&results)?)?;
    }
    let violated = results
        .iter()
        .filter_map(|r| r.region.as_ref())
        .any(|g| !g.admits_all(spectrum.lambdas(), a.tol));
    Ok(if violated {
        Outcome::Violated
    } else {
        Outcome::Verified
    })
}
