//! Numeric offset samples for the factor membership test.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::poly::{Binding, ToScalar, Poly, VarId};

/// A point `(x1, x2)` of the offset at distance `d`.
#[derive(Clone, Copy, Debug)]
pub struct OffsetSample {
    pub x1: Complex64,
    pub x2: Complex64,
    pub d: Complex64,
}

pub fn eval_complex(p: &Poly, point: &[(VarId, Complex64)]) -> Complex64 {
    p.eval_with(
        |v, e| {
            let z = point
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, z)| *z)
                .unwrap_or(Complex64::new(f64::NAN, 0.0));
            z.powu(e)
        },
        Complex64::new(0.0, 0.0),
    )
}

/// Sum of absolute term values; the scale for relative vanishing tests.
pub fn eval_abs_scale(p: &Poly, point: &[(VarId, Complex64)]) -> f64 {
    p.terms()
        .iter()
        .map(|(m, c)| {
            let mut t: f64 = ToScalar::<f64>::to_scalar(c).abs();
            for (i, e) in m.exponents().iter().enumerate() {
                if *e > 0 {
                    let z = point
                        .iter()
                        .find(|(w, _)| w.index() == i)
                        .map(|(_, z)| z.norm())
                        .unwrap_or(f64::NAN);
                    t *= z.powi(*e as i32);
                }
            }
            t
        })
        .sum()
}

/// Roots of a univariate polynomial given by ascending coefficients.
fn univariate_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -c[i] / lead;
    }
    companion.complex_eigenvalues().iter().copied().collect()
}

fn newton_polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..20 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + *c;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Curve points on random lines, displaced by `±d` along the unit normal.
///
/// `f` must be free of parameters. `distance` gives the `d` to use; when
/// `None` a random distance is drawn per curve point. Returns at most
/// `wanted` samples.
pub fn offset_samples<R: Rng>(
    f: &Poly,
    distance: Option<f64>,
    wanted: usize,
    rng: &mut R,
    max_lines: usize,
) -> Vec<OffsetSample> {
    let f1 = f.derivative(VarId::Y1);
    let f2 = f.derivative(VarId::Y2);
    let s = Poly::var(VarId::T);
    let mut samples = Vec::new();
    for _ in 0..max_lines {
        if samples.len() >= wanted {
            break;
        }
        let a: [i64; 2] = [rng.gen_range(-7..=7), rng.gen_range(-7..=7)];
        let v: [i64; 2] = [rng.gen_range(-5..=5), rng.gen_range(1..=5)];
        let line = |i: usize| &Poly::from_i64(a[i]) + &(&Poly::from_i64(v[i]) * &s);
        let restricted = f.substitute(&[
            (VarId::Y1, Binding::Poly(line(0))),
            (VarId::Y2, Binding::Poly(line(1))),
        ]);
        let coeffs: Vec<f64> = restricted
            .coeffs_in(VarId::T)
            .iter()
            .map(|c| ToScalar::<f64>::to_scalar(&c.constant_coeff()))
            .collect();
        if coeffs.len() < 2 {
            continue;
        }
        for root in univariate_roots(&coeffs) {
            let root = newton_polish(&coeffs, root);
            let y1 = Complex64::new(a[0] as f64, 0.0) + root * v[0] as f64;
            let y2 = Complex64::new(a[1] as f64, 0.0) + root * v[1] as f64;
            let pt = [(VarId::Y1, y1), (VarId::Y2, y2)];
            let g1 = eval_complex(&f1, &pt);
            let g2 = eval_complex(&f2, &pt);
            let norm2 = g1 * g1 + g2 * g2;
            let scale = g1.norm().max(g2.norm());
            if !norm2.is_finite() || scale < 1e-8 || norm2.norm() < 1e-6 * scale * scale {
                // singular or isotropic point
                continue;
            }
            let nrm = norm2.sqrt();
            let (n1, n2) = (g1 / nrm, g2 / nrm);
            let d = Complex64::new(distance.unwrap_or_else(|| rng.gen_range(0.5..3.0)), 0.0);
            for sign in [1.0, -1.0] {
                samples.push(OffsetSample {
                    x1: y1 + n1 * d * sign,
                    x2: y2 + n2 * d * sign,
                    d,
                });
            }
        }
    }
    samples.truncate(wanted);
    samples
}
