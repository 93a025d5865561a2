#![allow(dead_code)]

use ek_core::generators::{generate, GeneratorClass, GeneratorConfig};
use ek_core::{Complex64, MatrixPolynomial};

/// Roots of `sum_j a_j z^j` by Weierstrass (Durand-Kerner) iteration
/// followed by Newton polishing. Independent of the companion/QR path.
pub fn scalar_roots(a: &[Complex64]) -> Vec<Complex64> {
    let m = a.len() - 1;
    let lead = a[m];
    let monic: Vec<Complex64> = a.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let deriv = |z: Complex64| {
        (1..=m)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, j| acc * z + monic[j] * j as f64)
    };
    let bound = 1.0 + monic[..m].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..m).map(|k| seed.powu(k as u32) * (0.5 * bound)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..m {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..m {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * bound {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() > 0.0 {
                let step = eval(*zi) / d;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Largest distance in a greedy nearest-neighbour pairing of two multisets,
/// each distance divided by `1 + |a|`.
pub fn match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multiset sizes differ");
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a[j].norm().total_cmp(&a[i].norm()));
    for i in order {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, bj)| (j, (a[i] - bj).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("unmatched element");
        used[j] = true;
        worst = worst.max(d / (1.0 + a[i].norm()));
    }
    worst
}

pub fn instance(seed: u64, n: usize, m: usize, class: GeneratorClass) -> MatrixPolynomial {
    generate(&GeneratorConfig { seed, n, m, class })
        .unwrap_or_else(|e| panic!("generator failed for seed {seed}: {e}"))
        .polynomial
}

/// `(n, m)` for the `i`-th instance of a sweep: `n` in 1..=4, `m` in 1..=6.
pub fn shape(i: u64) -> (usize, usize) {
    (1 + (i % 4) as usize, 1 + ((i / 4) % 6) as usize)
}
