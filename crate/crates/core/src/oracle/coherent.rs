//! Coherent spin states `|θ, φ⟩` on a spin-`S` site.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::params::SpinParams;

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `Σ_m u^(S+m) v^(S−m) √C(2S, S+m) |S,m⟩` with
/// `(u, v) = (e^{iφ/2} cos(θ/2), e^{−iφ/2} sin(θ/2))`, basis ordered by
/// descending `m`.
pub fn coherent_state(spin: SpinParams, theta: f64, phi: f64) -> DVector<C64> {
    let s = spin.get();
    let u = C64::from_polar((theta / 2.0).cos(), phi / 2.0);
    let v = C64::from_polar((theta / 2.0).sin(), -phi / 2.0);
    DVector::from_iterator(
        2 * s as usize + 1,
        (0..=2 * s).map(|k| {
            // index k ↔ m = S − k, so S + m = 2S − k
            let up = 2 * s - k;
            u.powu(up) * v.powu(k) * binomial(2 * s, up).sqrt()
        }),
    )
}

/// `⟨a|b⟩`.
pub fn overlap(a: &DVector<C64>, b: &DVector<C64>) -> C64 {
    a.dotc(b)
}

/// Point `Ω` on the unit sphere.
pub fn unit_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// `((1 + Ω·Ω′)/2)^S`.
pub fn geometric_overlap(spin: SpinParams, a: (f64, f64), b: (f64, f64)) -> f64 {
    let (x, y) = (unit_vector(a.0, a.1), unit_vector(b.0, b.1));
    let dot: f64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
    ((1.0 + dot) / 2.0).powi(spin.get() as i32)
}

/// `θ × φ` sample grid with `n_theta` points on `[0, π]` and `n_phi` points
/// on `[0, 2π)`.
pub fn angle_grid(n_theta: usize, n_phi: usize) -> Vec<(f64, f64)> {
    use std::f64::consts::PI;
    let thetas = (0..n_theta).map(move |i| PI * i as f64 / (n_theta.max(2) - 1) as f64);
    thetas.flat_map(|t| (0..n_phi).map(move |j| (t, 2.0 * PI * j as f64 / n_phi as f64))).collect()
}

/// Largest violation of `|⟨Ω|Ω′⟩| = ((1+Ω·Ω′)/2)^S` over all pairs drawn from
/// `grid`.
pub fn max_overlap_deviation(spin: SpinParams, grid: &[(f64, f64)]) -> f64 {
    let states: Vec<_> = grid.iter().map(|&(t, p)| coherent_state(spin, t, p)).collect();
    let mut worst: f64 = 0.0;
    for (i, a) in grid.iter().enumerate() {
        for (j, b) in grid.iter().enumerate() {
            let measured = overlap(&states[i], &states[j]).norm();
            worst = worst.max((measured - geometric_overlap(spin, *a, *b)).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::angular::{Spin, SpinOperatorTriple};
    use std::f64::consts::PI;

    fn spin(s: u32) -> SpinParams {
        SpinParams::new(s).unwrap()
    }

    #[test]
    fn poles() {
        for s in 1..=4 {
            let north = coherent_state(spin(s), 0.0, 0.3);
            assert!((north[0].norm() - 1.0).abs() < 1e-12);
            let south = coherent_state(spin(s), PI, 1.1);
            assert!((south[2 * s as usize].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_norm_and_direction() {
        for s in 1..=3 {
            let ops = SpinOperatorTriple::new(Spin::integer(s));
            for &(t, p) in &angle_grid(4, 3) {
                let v = coherent_state(spin(s), t, p);
                assert!((v.norm() - 1.0).abs() < 1e-12);
                // ⟨S⟩ = S Ω with Ω at azimuth −φ for this choice of (u, v)
                let omega = unit_vector(t, -p);
                for (op, axis) in [(ops.sx(), 0), (ops.sy(), 1), (ops.sz.clone(), 2)] {
                    let expect = overlap(&v, &(op * &v));
                    assert!((expect.re - f64::from(s) * omega[axis]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn overlap_law() {
        let grid = angle_grid(5, 5);
        for s in 1..=3 {
            assert!(max_overlap_deviation(spin(s), &grid) < 1e-12);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }
}
