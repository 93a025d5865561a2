//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Tolerances are pinned below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{instance, match_distance, scalar_roots, shape};
use ek_cli::format::{parse_instance, parse_result, to_json, InstanceFile};
use ek_core::bounds::{
    bound_cor1, bound_thm1, bound_thm2, bound_thm3, bound_thm4, bound_thm_c, bound_thm_d,
    bound_thm_e, optimal_t_thm1,
};
use ek_core::eigen::polyeig;
use ek_core::generators::{generate, GeneratorClass, GeneratorConfig};
use ek_core::linalg::{
    cone_inequality_rhs, frobenius_norm, inverse_norm_reciprocal, matrix_norm,
    numerical_radius_estimate, ComplexMatrix, NormKind,
};
use ek_core::pell::pell_identity_check;
use ek_core::scalar::{trinomial_greatest_root, CauchyPolynomial};
use ek_core::{Complex64, MatrixPolynomial, Region, Spectrum};

const INSTANCES: u64 = 200;
const PAIRS: u64 = 500;
const REL: f64 = 1e-8;

const PELL_BUDGET: Duration = Duration::from_millis(100);
const CAUCHY_BUDGET: Duration = Duration::from_secs(20);
const SUITE_BUDGET: Duration = Duration::from_secs(60);

const GOLDEN: f64 = 1.618_033_988_749_895;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    outcome(false, detail)
}

fn spectrum(p: &MatrixPolynomial) -> Result<Spectrum, String> {
    polyeig(p).map_err(|e| e.to_string())
}

fn c1_pell() -> Outcome {
    let start = Instant::now();
    let bad: Vec<usize> = (1..=20).filter(|&m| !pell_identity_check(m)).collect();
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < PELL_BUDGET,
        format!("m = 1..20 exact, failures {bad:?}, {took:?} (budget {PELL_BUDGET:?})"),
    )
}

fn c2_trinomial() -> Outcome {
    let k1 = trinomial_greatest_root(1).unwrap();
    let k2 = trinomial_greatest_root(2).unwrap();
    let mut worst = 0.0f64;
    let mut worst_naive = 0.0f64;
    let mut in_range = true;
    for m in 1..=30 {
        let r = trinomial_greatest_root(m).unwrap();
        worst = worst.max(r.residual());
        let k = r.root;
        worst_naive = worst_naive.max((k.powi(m as i32 + 1) - 2.0 * k.powi(m as i32) + 1.0).abs());
        in_range &= (1.0..2.0).contains(&k);
    }
    let pass = k1.root == 1.0
        && (k2.root - GOLDEN).abs() <= 1e-12
        && worst <= 1e-11
        && in_range;
    outcome(
        pass,
        format!(
            "k1(1) = {}, |k1(2) - phi| = {:.1e}, max residual m<=30 {worst:.1e} \
             (via 2 - deficit; plain f64 evaluation {worst_naive:.1e}), 1 <= k1 < 2: {in_range}",
            k1.root,
            (k2.root - GOLDEN).abs()
        ),
    )
}

fn quadratic_roots(c: &[Complex64]) -> [Complex64; 2] {
    let (a, b, cc) = (c[2], c[1], c[0]);
    let d = (b * b - a * cc * 4.0).sqrt();
    let q = if (b.conj() * d).re >= 0.0 { -(b + d) / 2.0 } else { -(b - d) / 2.0 };
    [q / a, cc / q]
}

fn c3_eigensolver() -> Outcome {
    let mut worst_res = 0.0f64;
    let mut worst_quad = 0.0f64;
    for seed in 0..INSTANCES {
        let m = 1 + (seed % 8) as usize;
        let p = instance(seed, 1, m, GeneratorClass::Unconstrained);
        let c: Vec<Complex64> = p.coefficients().iter().map(|a| a[(0, 0)]).collect();
        let s = match spectrum(&p) {
            Ok(s) => s,
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        for z in s.lambdas() {
            let val = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
            let scale: f64 = c.iter().enumerate().map(|(j, a)| a.norm() * z.norm().powi(j as i32)).sum();
            worst_res = worst_res.max(val.norm() / scale);
        }
        if m == 2 {
            let got: Vec<Complex64> = s.lambdas().collect();
            worst_quad = worst_quad.max(match_distance(&got, &quadratic_roots(&c)));
        }
    }
    // Diagonal polynomials against per-diagonal scalar roots.
    let mut worst_diag = 0.0f64;
    for seed in 0..50u64 {
        let (n, m) = (2 + (seed % 3) as usize, 1 + (seed % 5) as usize);
        let diag: Vec<MatrixPolynomial> =
            (0..n).map(|i| instance(seed * 16 + i as u64, 1, m, GeneratorClass::Unconstrained)).collect();
        let coeffs: Vec<ComplexMatrix> = (0..=m)
            .map(|j| {
                let d: Vec<Complex64> = diag.iter().map(|q| q.coeff(j)[(0, 0)]).collect();
                ComplexMatrix::from_diag(&d)
            })
            .collect();
        let p = MatrixPolynomial::new(coeffs).unwrap();
        let got: Vec<Complex64> = match spectrum(&p) {
            Ok(s) => s.lambdas().collect(),
            Err(e) => return fail(format!("diagonal seed {seed}: {e}")),
        };
        let mut want = Vec::new();
        for q in &diag {
            let c: Vec<Complex64> = q.coefficients().iter().map(|a| a[(0, 0)]).collect();
            want.extend(scalar_roots(&c));
        }
        worst_diag = worst_diag.max(match_distance(&got, &want));
    }
    outcome(
        worst_res <= 1e-7 && worst_quad <= 1e-9 && worst_diag <= 1e-7,
        format!(
            "scalar |p(l)|/sum|a_j||l|^j max {worst_res:.1e} (<= 1e-7), \
             quadratic closed form {worst_quad:.1e} (<= 1e-9 rel), diagonal {worst_diag:.1e} (<= 1e-7 rel)"
        ),
    )
}

fn c4_cauchy() -> Outcome {
    let start = Instant::now();
    let mut worst_c = f64::NEG_INFINITY;
    let mut worst_d = f64::NEG_INFINITY;
    let mut worst_g = 0.0f64;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let p = instance(seed, n, m, GeneratorClass::Unconstrained);
        let s = match spectrum(&p) {
            Ok(s) => s,
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        let rho = bound_thm_c(&p, NormKind::Induced2).unwrap().region.unwrap().radii().1.unwrap();
        let d = bound_thm_d(&p, NormKind::Induced2).unwrap().region.unwrap().radii().1.unwrap();
        worst_c = worst_c.max(s.max_modulus() / rho - 1.0);
        worst_d = worst_d.max(s.max_modulus() / d - 1.0);

        let sigma = inverse_norm_reciprocal(p.leading(), NormKind::Induced2).unwrap();
        let lower: Vec<f64> = (0..m).rev().map(|j| matrix_norm(p.coeff(j), NormKind::Induced2).unwrap()).collect();
        let terms = sigma * rho.powi(m as i32)
            + lower.iter().enumerate().map(|(i, c)| c * rho.powi((m - 1 - i) as i32)).sum::<f64>();
        let g = CauchyPolynomial::new(sigma, lower).unwrap().evaluate(rho);
        worst_g = worst_g.max(g.abs() / terms);
    }
    let took = start.elapsed();
    outcome(
        worst_c <= REL && worst_d <= REL && worst_g <= 1e-12 && took < CAUCHY_BUDGET,
        format!(
            "max|l|/rho - 1 = {worst_c:.2e}, max|l|/(1+M) - 1 = {worst_d:.2e}, \
             |G(rho)| rel {worst_g:.1e}, {took:.2?} (budget {CAUCHY_BUDGET:?})"
        ),
    )
}

fn c5_loewner() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let p = instance(seed, n, m, GeneratorClass::LoewnerChain);
        if !bound_thm_e(&p).hypothesis_ok {
            return fail(format!("seed {seed}: generated chain rejected"));
        }
        match spectrum(&p) {
            Ok(s) => worst = worst.max(s.max_modulus()),
            Err(e) => return fail(format!("seed {seed}: {e}")),
        }
    }
    let p = MatrixPolynomial::scalar_real(&[1.0, 1.0, 1.0]).unwrap();
    let tight = spectrum(&p).map(|s| s.max_modulus()).unwrap_or(f64::NAN);
    outcome(
        worst <= 1.0 + 1e-8 && (tight - 1.0).abs() <= 1e-9,
        format!("max|l| = {worst:.12}, z^2+z+1 max|l| - 1 = {:.1e}", tight - 1.0),
    )
}

fn c6_geometric() -> Outcome {
    let ts = [0.25, 0.5, 1.0, 2.0];
    let mut worst = f64::NEG_INFINITY;
    let mut boundary_ok = true;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let t = ts[(seed % 4) as usize];
        let p = instance(seed, n, m, GeneratorClass::GeometricNormChain { t });
        let r = match bound_thm1(&p, t, NormKind::Induced2) {
            Ok(r) => r,
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        let radius = r.region.unwrap().radii().1.unwrap();
        match spectrum(&p) {
            Ok(s) => worst = worst.max(s.max_modulus() / radius - 1.0),
            Err(e) => return fail(format!("seed {seed}: {e}")),
        }
        let t_max = optimal_t_thm1(&p, NormKind::Induced2).unwrap();
        boundary_ok &= t_max >= t
            && bound_thm1(&p, t_max * (1.0 - 1e-6), NormKind::Induced2).is_ok()
            && bound_thm1(&p, t_max * (1.0 + 1e-6), NormKind::Induced2).is_err();
    }
    outcome(
        worst <= REL && boundary_ok,
        format!("max|l| t/k1 - 1 = {worst:.2e}, t_max(1 -/+ 1e-6) accepted/rejected: {boundary_ok}"),
    )
}

fn c7_cone() -> Outcome {
    let ks = [1.0, 2.0];
    let alphas = [0.0, PI / 6.0, PI / 3.0, PI / 2.0];
    let mut worst = f64::NEG_INFINITY;
    let mut cor_exact = true;
    let mut cor_checked = 0;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let k = ks[(seed % 2) as usize];
        let alpha = alphas[((seed / 2) % 4) as usize];
        let g = generate(&GeneratorConfig { seed, n, m, class: GeneratorClass::FrobeniusCone { k, alpha } }).unwrap();
        let axis = g.witness.axis.unwrap();
        let p = g.polynomial;
        let region = match bound_thm2(&p, k, alpha, &axis) {
            Ok(r) => r.region.unwrap(),
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        let Region::Disk { center, radius } = region else {
            return fail("Thm2 returned a non-disk");
        };
        let s = match spectrum(&p) {
            Ok(s) => s,
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        for z in s.lambdas() {
            worst = worst.max((z - center).norm() / radius - 1.0);
        }
        let t = 1.25;
        if let Ok(c) = bound_cor1(&p, k, alpha, &axis, t) {
            let inner = bound_thm2(&p.scale_argument(t).unwrap(), k, alpha, &axis).unwrap();
            cor_exact &= c.region.unwrap() == inner.region.unwrap().scaled(t);
            cor_checked += 1;
        }
    }
    let ek = MatrixPolynomial::scalar_real(&[0.3, 0.5, 0.5, 0.9, 1.4]).unwrap();
    let unit = bound_thm2(&ek, 1.0, 0.0, &ComplexMatrix::identity(1)).unwrap().region.unwrap();
    let unit_err = (unit.radii().1.unwrap() - 1.0).abs();
    outcome(
        worst <= REL && unit_err <= 1e-12 && unit.center() == Complex64::new(0.0, 0.0) && cor_exact && cor_checked > 0,
        format!(
            "max |l - c|/R - 1 = {worst:.2e}, n=1 k=1 alpha=0 radius error {unit_err:.1e}, \
             Cor1 = t-scaled Thm2 of P(tz) on {cor_checked} instances: {cor_exact}"
        ),
    )
}

fn c8_annulus() -> Outcome {
    let mut worst_in = f64::NEG_INFINITY;
    let mut worst_out = f64::NEG_INFINITY;
    let mut ordered = true;
    let mut used = 0;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let p = instance(seed + 10_000, n, m, GeneratorClass::Unconstrained);
        if !p.validate().a0_nonsingular {
            continue;
        }
        used += 1;
        let Region::Annulus { inner, outer } = bound_thm3(&p, NormKind::Induced2).unwrap().region.unwrap() else {
            return fail("Thm3 returned a non-annulus");
        };
        ordered &= inner <= outer;
        match spectrum(&p) {
            Ok(s) => {
                worst_in = worst_in.max(1.0 - s.min_modulus() / inner);
                worst_out = worst_out.max(s.max_modulus() / outer - 1.0);
            }
            Err(e) => return fail(format!("seed {seed}: {e}")),
        }
    }
    let p = MatrixPolynomial::scalar_real(&[-0.7, 2.3]).unwrap();
    let r = bound_thm3(&p, NormKind::Induced2).unwrap().region.unwrap();
    let (r1, r2) = (r.radii().0.unwrap(), r.radii().1.unwrap());
    let exact = 0.7 / 2.3;
    let scalar_err = (r1 - exact).abs().max((r2 - exact).abs());
    outcome(
        used == INSTANCES as usize && worst_in <= REL && worst_out <= REL && ordered && scalar_err <= 1e-12,
        format!(
            "{used} instances, inner deficit {worst_in:.2e}, outer excess {worst_out:.2e}, r1 <= r2: {ordered}, \
             m=1 |r - |a0/a1|| = {scalar_err:.1e}"
        ),
    )
}

fn c9_exclusion() -> Outcome {
    let params = [(1.0, 0.5), (1.0, 1.0), (2.0, 0.5), (2.0, 1.0), (5.0, 0.5), (5.0, 1.0)];
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..INSTANCES {
        let (n, m) = shape(seed);
        let (k, t) = params[(seed % 6) as usize];
        let p = instance(seed, n, m, GeneratorClass::HermitianScaledChain { k, t });
        let r = match bound_thm4(&p, k, t) {
            Ok(r) => r.region.unwrap(),
            Err(e) => return fail(format!("seed {seed}: {e}")),
        };
        let Region::ExclusionDisk { center, radius } = r else {
            return fail("Thm4 returned a non-exclusion region");
        };
        match spectrum(&p) {
            Ok(s) => {
                for z in s.lambdas() {
                    worst = worst.max(1.0 - (z - center).norm() / radius);
                }
            }
            Err(e) => return fail(format!("seed {seed}: {e}")),
        }
    }
    outcome(worst <= REL, format!("max 1 - |l - c|/r = {worst:.2e} (<= 1e-8)"))
}

fn c10_cone_and_radius() -> Outcome {
    let mut worst_cone = f64::NEG_INFINITY;
    for seed in 0..PAIRS {
        let n = 1 + (seed % 4) as usize;
        let alpha = (PI / 2.0) * (seed % 11) as f64 / 10.0;
        let g = generate(&GeneratorConfig {
            seed,
            n,
            m: 1,
            class: GeneratorClass::FrobeniusCone { k: 1.0, alpha },
        })
        .unwrap();
        let (b, a) = (g.polynomial.coeff(0), g.polynomial.coeff(1));
        let (na, nb) = (frobenius_norm(a), frobenius_norm(b));
        let lhs = frobenius_norm(&(a - b));
        worst_cone = worst_cone.max(lhs - cone_inequality_rhs(na, nb, alpha));
    }
    let mut worst_r = f64::NEG_INFINITY;
    let mut worst_2 = f64::NEG_INFINITY;
    for seed in 0..PAIRS {
        let n = 1 + (seed % 4) as usize;
        let a = instance(seed + 50_000, n, 1, GeneratorClass::Unconstrained).coeff(0).clone();
        let r = numerical_radius_estimate(&a, 720).unwrap();
        let n2 = matrix_norm(&a, NormKind::Induced2).unwrap();
        worst_r = worst_r.max(r - n2);
        worst_2 = worst_2.max(n2 - frobenius_norm(&a));
    }
    outcome(
        worst_cone <= 1e-10 && worst_r <= 1e-9 && worst_2 <= 1e-9,
        format!(
            "cone pairs max lhs - rhs {worst_cone:.1e} (<= 1e-10), r(A) - ||A||_2 max {worst_r:.1e}, \
             ||A||_2 - ||A||_F max {worst_2:.1e} (<= 1e-9)"
        ),
    )
}

fn run_ek(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_ek"))
        .args(args)
        .env_remove("EK_DEFAULT_NORM")
        .output()
        .expect("spawn ek")
        .status
        .code()
        .unwrap_or(-1)
}

fn c11_cli(dir: &Path) -> Outcome {
    let classes = ["unconstrained", "loewner", "geometric", "cone", "hermitian-chain"];
    let mut failures = Vec::new();
    let mut bit_exact = true;
    for class in classes {
        for seed in 1..=20u64 {
            let (n, m) = shape(seed);
            let path = dir.join(format!("{class}-{seed}.json"));
            let p = path.to_str().unwrap();
            let (n, m, s) = (n.to_string(), m.to_string(), seed.to_string());
            let g = run_ek(&["generate", "--class", class, "--n", &n, "--degree", &m, "--seed", &s, "--out", p]);
            let v = run_ek(&["verify", p, "--out", dir.join("r.json").to_str().unwrap()]);
            if g != 0 || v != 0 {
                failures.push(format!("{class}/{seed}: generate {g}, verify {v}"));
            }
            if let Ok(text) = std::fs::read_to_string(&path) {
                bit_exact &= parse_instance(&text)
                    .map(|q| to_json(&InstanceFile::from_polynomial(&q)) == text)
                    .unwrap_or(false);
            }
        }
    }

    // Shrunk-region fixture: honest claims for z^2 + z + 1 with the unit
    // disk cut to radius 0.9.
    let inst = dir.join("fixture.json");
    std::fs::write(&inst, r#"{"n": 1, "degree": 2, "coefficients": [[[[1, 0]]], [[[1, 0]]], [[[1, 0]]]]}"#).unwrap();
    let claims = dir.join("claims.json");
    let b = run_ek(&["bounds", inst.to_str().unwrap(), "--out", claims.to_str().unwrap()]);
    let mut file = parse_result(&std::fs::read_to_string(&claims).unwrap()).unwrap();
    for rec in file.bounds.iter_mut().filter(|r| r.theorem_id == "ThmE") {
        rec.region.as_mut().unwrap().radii.outer = Some(0.9);
    }
    std::fs::write(&claims, to_json(&file)).unwrap();
    let shrunk = run_ek(&["verify", inst.to_str().unwrap(), "--claims", claims.to_str().unwrap()]);

    let bad = dir.join("malformed.json");
    std::fs::write(&bad, "{\"n\": 2, \"degree\": 1, \"coefficients\": [[[1, 0]]").unwrap();
    let malformed = run_ek(&["verify", bad.to_str().unwrap()]);

    outcome(
        failures.is_empty() && bit_exact && b == 0 && shrunk == 1 && malformed == 2,
        format!(
            "round trips 100/100 minus {} failures {:?}, bit-exact: {bit_exact}, shrunk fixture exit {shrunk}, \
             malformed exit {malformed}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: [Criterion; 10] = [
        ("Pell binomial identity", c1_pell),
        ("trinomial greatest root", c2_trinomial),
        ("eigensolver oracle", c3_eigensolver),
        ("Cauchy-type and max-norm radius soundness", c4_cauchy),
        ("Loewner chain unit disk", c5_loewner),
        ("geometric norm chain radius", c6_geometric),
        ("Frobenius cone disk and its scaled form", c7_cone),
        ("Pell-weighted annulus", c8_annulus),
        ("Hermitian scaled chain exclusion disk", c9_exclusion),
        ("cone inequality and numerical radius ordering", c10_cone_and_radius),
    ];
    let mut all = true;
    let mut line = |i: usize, name: &str, o: Outcome| {
        all &= o.pass;
        println!("{} [{i:>2}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };
    for (i, (name, f)) in criteria.iter().enumerate() {
        line(i + 1, name, f());
    }
    let mut cli = c11_cli(dir.path());
    let total = start.elapsed();
    cli.pass &= total < SUITE_BUDGET;
    cli.detail.push_str(&format!(", acceptance wall clock {total:.2?} (budget {SUITE_BUDGET:?})"));
    line(11, "CLI contract", cli);
    if !all {
        std::process::exit(1);
    }
}
