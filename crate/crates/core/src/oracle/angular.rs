//! Spin matrices, Clebsch–Gordan coefficients and two-site projectors in the
//! `|j, m⟩` basis ordered by descending `m`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{param_err, Result};

/// Integer or half-integer angular momentum, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    pub fn integer(j: u32) -> Self {
        Self { twice: 2 * j }
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }

    /// `2m` for basis index `k`, i.e. `m = j − k`.
    pub fn twice_m(self, k: usize) -> i32 {
        self.twice as i32 - 2 * k as i32
    }

    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

fn factorial(n: i32) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).map(f64::from).product()
}

/// Clebsch–Gordan coefficient `⟨j1 m1; j2 m2 | J M⟩` (Condon–Shortley
/// phase) from Racah's formula. All arguments are doubled.
pub fn clebsch_gordan(tj1: i32, tm1: i32, tj2: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
    if tm1 + tm2 != tm
        || tj < (tj1 - tj2).abs()
        || tj > tj1 + tj2
        || (tj1 + tj2 + tj) % 2 != 0
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm.abs() > tj
        || (tj1 + tm1) % 2 != 0
        || (tj2 + tm2) % 2 != 0
        || (tj + tm) % 2 != 0
    {
        return 0.0;
    }
    // undoubled integer combinations
    let a = (tj1 + tj2 - tj) / 2;
    let b = (tj1 - tm1) / 2;
    let c = (tj2 + tm2) / 2;
    let d = (tj - tj2 + tm1) / 2;
    let e = (tj - tj1 - tm2) / 2;

    let prefactor =
        (f64::from(tj + 1) * factorial((tj + tj1 - tj2) / 2) * factorial((tj - tj1 + tj2) / 2) * factorial(a)
            / factorial((tj1 + tj2 + tj) / 2 + 1))
        .sqrt();
    let norms = (factorial((tj + tm) / 2)
        * factorial((tj - tm) / 2)
        * factorial((tj1 - tm1) / 2)
        * factorial((tj1 + tm1) / 2)
        * factorial((tj2 - tm2) / 2)
        * factorial((tj2 + tm2) / 2))
    .sqrt();

    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let sum: f64 = (k_min..=k_max)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign / (factorial(k)
                * factorial(a - k)
                * factorial(b - k)
                * factorial(c - k)
                * factorial(d + k)
                * factorial(e + k))
        })
        .sum();
    prefactor * norms * sum
}

/// `S_z`, `S_+`, `S_−` for one spin.
#[derive(Clone, Debug)]
pub struct SpinOperatorTriple {
    pub spin: Spin,
    pub sz: DMatrix<C64>,
    pub splus: DMatrix<C64>,
    pub sminus: DMatrix<C64>,
}

impl SpinOperatorTriple {
    pub fn new(spin: Spin) -> Self {
        let d = spin.dim();
        let j = spin.value();
        let sz =
            DMatrix::from_fn(
                d,
                d,
                |r, c| {
                    if r == c {
                        C64::from(f64::from(spin.twice_m(r)) / 2.0)
                    } else {
                        C64::from(0.0)
                    }
                },
            );
        // S+|j,m⟩ = sqrt(j(j+1) − m(m+1)) |j,m+1⟩ and m+1 sits one index up
        let splus = DMatrix::from_fn(d, d, |r, c| {
            if r + 1 == c {
                let m = f64::from(spin.twice_m(c)) / 2.0;
                C64::from((j * (j + 1.0) - m * (m + 1.0)).sqrt())
            } else {
                C64::from(0.0)
            }
        });
        let sminus = splus.adjoint();
        Self { spin, sz, splus, sminus }
    }

    pub fn sx(&self) -> DMatrix<C64> {
        (&self.splus + &self.sminus) * C64::from(0.5)
    }

    pub fn sy(&self) -> DMatrix<C64> {
        (&self.splus - &self.sminus) * C64::new(0.0, -0.5)
    }

    /// `S² = S_z² + (S_+S_− + S_−S_+)/2`.
    pub fn casimir(&self) -> DMatrix<C64> {
        &self.sz * &self.sz + (&self.splus * &self.sminus + &self.sminus * &self.splus) * C64::from(0.5)
    }

    /// Heisenberg coupling `S₁·S₂` on the product space `self ⊗ other`.
    pub fn dot(&self, other: &Self) -> DMatrix<C64> {
        self.sz.kronecker(&other.sz)
            + (self.splus.kronecker(&other.sminus) + self.sminus.kronecker(&other.splus)) * C64::from(0.5)
    }

    /// Total `S_z` on `self ⊗ other`.
    pub fn total_sz(&self, other: &Self) -> DMatrix<C64> {
        let ia = DMatrix::identity(self.spin.dim(), self.spin.dim());
        let ib = DMatrix::identity(other.spin.dim(), other.spin.dim());
        self.sz.kronecker(&ib) + ia.kronecker(&other.sz)
    }
}

/// Two-site singlet `Σ_m (−1)^(j−m)/√(2j+1) |j,m⟩⊗|j,−m⟩`.
pub fn singlet_pair(spin: Spin) -> DVector<C64> {
    let d = spin.dim();
    let norm = (d as f64).sqrt();
    let mut v = DVector::zeros(d * d);
    for k in 0..d {
        // −m has index d−1−k
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        v[k * d + (d - 1 - k)] = C64::from(sign / norm);
    }
    v
}

/// Isometry `(2S+1) × (S+1)²` mapping the total-spin-`S` sector of two spin
/// `S/2` onto a single spin-`S` site.
pub fn symmetric_projector(spin: u32) -> DMatrix<C64> {
    let half = Spin::from_twice(spin);
    let full = Spin::integer(spin);
    let d = half.dim();
    DMatrix::from_fn(full.dim(), d * d, |row, col| {
        let (a, b) = (col / d, col % d);
        C64::from(clebsch_gordan(
            spin as i32,
            half.twice_m(a),
            spin as i32,
            half.twice_m(b),
            2 * spin as i32,
            full.twice_m(row),
        ))
    })
}

/// Projector onto total spin `J` of `j1 ⊗ j2`, by Lagrange interpolation in
/// the eigenvalues `x_K = [K(K+1) − j1(j1+1) − j2(j2+1)]/2` of `S₁·S₂`.
pub fn aklt_projector(j1: Spin, j2: Spin, total: Spin) -> Result<DMatrix<C64>> {
    let (lo, hi) = (j1.twice().abs_diff(j2.twice()), j1.twice() + j2.twice());
    if total.twice() < lo || total.twice() > hi || !(total.twice() - lo).is_multiple_of(2) {
        return param_err(format!("total spin {total} not reachable from {j1} ⊗ {j2}"));
    }
    let a = SpinOperatorTriple::new(j1);
    let b = SpinOperatorTriple::new(j2);
    let coupling = a.dot(&b);
    let dim = j1.dim() * j2.dim();
    let x = |k: Spin| (k.casimir() - j1.casimir() - j2.casimir()) / 2.0;
    let xj = x(total);

    let mut proj = DMatrix::<C64>::identity(dim, dim);
    for twice_k in (lo..=hi).step_by(2).filter(|&t| t != total.twice()) {
        let xk = x(Spin::from_twice(twice_k));
        let factor = (&coupling - DMatrix::<C64>::identity(dim, dim) * C64::from(xk)) / C64::from(xj - xk);
        proj *= factor;
    }
    Ok(proj)
}

/// Totals reachable from `j1 ⊗ j2` with `2J` in `[twice_lo, twice_hi]`.
pub(crate) fn totals_between(twice_lo: u32, twice_hi: u32) -> impl Iterator<Item = Spin> {
    (twice_lo..=twice_hi).step_by(2).map(Spin::from_twice)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn spins() -> impl Iterator<Item = Spin> {
        (1..=8).map(Spin::from_twice)
    }

    #[test]
    fn commutators_and_casimir() {
        for s in spins() {
            let ops = SpinOperatorTriple::new(s);
            let d = s.dim();
            let id = DMatrix::<C64>::identity(d, d);
            let plus = &ops.sz * &ops.splus - &ops.splus * &ops.sz - &ops.splus;
            let minus = &ops.sz * &ops.sminus - &ops.sminus * &ops.sz + &ops.sminus;
            assert!(max_abs(&plus) < TOL, "{s}");
            assert!(max_abs(&minus) < TOL, "{s}");
            assert!(max_abs(&(ops.casimir() - id * C64::from(s.casimir()))) < TOL, "{s}");
            let xy = &ops.sx() * ops.sy() - ops.sy() * ops.sx() - &ops.sz * C64::new(0.0, 1.0);
            assert!(max_abs(&xy) < TOL);
        }
    }

    #[test]
    fn known_clebsch_gordan() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // two spin-1/2 → triplet m=0 and singlet
        assert!((clebsch_gordan(1, 1, 1, -1, 2, 0) - h).abs() < TOL);
        assert!((clebsch_gordan(1, -1, 1, 1, 2, 0) - h).abs() < TOL);
        assert!((clebsch_gordan(1, 1, 1, -1, 0, 0) - h).abs() < TOL);
        assert!((clebsch_gordan(1, -1, 1, 1, 0, 0) + h).abs() < TOL);
        // ⟨1 1; 1 −1 | 0 0⟩ = 1/√3, ⟨1 0; 1 0 | 0 0⟩ = −1/√3
        assert!((clebsch_gordan(2, 2, 2, -2, 0, 0) - 3f64.sqrt().recip()).abs() < TOL);
        assert!((clebsch_gordan(2, 0, 2, 0, 0, 0) + 3f64.sqrt().recip()).abs() < TOL);
        // ⟨1 0; 1 0 | 2 0⟩ = √(2/3)
        assert!((clebsch_gordan(2, 0, 2, 0, 4, 0) - (2.0f64 / 3.0).sqrt()).abs() < TOL);
        assert_eq!(clebsch_gordan(2, 0, 2, 0, 2, 0), 0.0);
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 0), 0.0);
    }

    #[test]
    fn clebsch_gordan_orthonormal() {
        for (t1, t2) in [(1i32, 1), (2, 2), (3, 2), (4, 3), (4, 4)] {
            let totals: Vec<i32> = ((t1 - t2).abs()..=t1 + t2).step_by(2).collect();
            for &ta in &totals {
                for &tb in &totals {
                    for tm in (-ta.min(tb)..=ta.min(tb)).step_by(2) {
                        let mut dot = 0.0;
                        for tm1 in (-t1..=t1).step_by(2) {
                            let tm2 = tm - tm1;
                            dot += clebsch_gordan(t1, tm1, t2, tm2, ta, tm) * clebsch_gordan(t1, tm1, t2, tm2, tb, tm);
                        }
                        let expected = if ta == tb { 1.0 } else { 0.0 };
                        assert!((dot - expected).abs() < TOL);
                    }
                }
            }
        }
    }

    #[test]
    fn singlets() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let half = singlet_pair(Spin::from_twice(1));
        let expected = [0.0, h, -h, 0.0];
        for (a, b) in half.iter().zip(expected) {
            assert!((a.re - b).abs() < TOL && a.im == 0.0);
        }
        let one = singlet_pair(Spin::integer(1));
        let r3 = 3f64.sqrt().recip();
        // |1,1⟩|1,−1⟩ − |0,0⟩ + |−1,1⟩|
        assert!((one[2].re - r3).abs() < TOL && (one[4].re + r3).abs() < TOL && (one[6].re - r3).abs() < TOL);
        for s in spins() {
            let ops = SpinOperatorTriple::new(s);
            let v = singlet_pair(s);
            assert!((v.norm() - 1.0).abs() < TOL);
            for total in [
                ops.total_sz(&ops),
                ops.splus.kronecker(&DMatrix::identity(s.dim(), s.dim()))
                    + DMatrix::identity(s.dim(), s.dim()).kronecker(&ops.splus),
            ] {
                assert!((total * &v).norm() < TOL, "{s}");
            }
        }
    }

    #[test]
    fn symmetric_projector_is_isometry() {
        for s in 1..=4u32 {
            let p = symmetric_projector(s);
            assert_eq!(p.shape(), ((2 * s + 1) as usize, ((s + 1) * (s + 1)) as usize));
            let gram = &p * p.adjoint();
            let id = DMatrix::<C64>::identity(gram.nrows(), gram.ncols());
            assert!(max_abs(&(gram - id)) < TOL, "S = {s}");
            // P†P is the projector onto total spin S
            let half = Spin::from_twice(s);
            let top = aklt_projector(half, half, Spin::integer(s)).unwrap();
            assert!(max_abs(&(p.adjoint() * &p - top)) < 1e-10);
        }
    }

    #[test]
    fn spin_one_triplet_map() {
        let p = symmetric_projector(1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |1,1⟩ ← |↑↑⟩, |1,0⟩ ← (|↑↓⟩+|↓↑⟩)/√2, |1,−1⟩ ← |↓↓⟩
        let expected = [[1.0, 0.0, 0.0, 0.0], [0.0, h, h, 0.0], [0.0, 0.0, 0.0, 1.0]];
        for r in 0..3 {
            for c in 0..4 {
                assert!((p[(r, c)].re - expected[r][c]).abs() < TOL);
            }
        }
    }

    #[test]
    fn projectors() {
        let half = Spin::from_twice(1);
        let singlet = aklt_projector(half, half, Spin::integer(0)).unwrap();
        let ops = SpinOperatorTriple::new(half);
        let textbook = DMatrix::<C64>::identity(4, 4) * C64::from(0.25) - ops.dot(&ops);
        assert!(max_abs(&(singlet - textbook)) < 1e-10);
        assert!(aklt_projector(half, half, Spin::integer(2)).is_err());
        assert!(aklt_projector(half, half, Spin::from_twice(1)).is_err());

        for (a, b) in [(1, 1), (2, 2), (1, 2), (2, 4), (3, 4), (4, 4), (3, 6)] {
            let (ja, jb) = (Spin::from_twice(a), Spin::from_twice(b));
            let dim = ja.dim() * jb.dim();
            let mut sum = DMatrix::<C64>::zeros(dim, dim);
            for total in totals_between(a.abs_diff(b), a + b) {
                let p = aklt_projector(ja, jb, total).unwrap();
                assert!(max_abs(&(&p * &p - &p)) < 1e-10);
                assert!(max_abs(&(p.adjoint() - &p)) < 1e-10);
                let rank: f64 = (0..dim).map(|i| p[(i, i)].re).sum();
                assert!((rank - total.dim() as f64).abs() < 1e-10);
                sum += p;
            }
            assert!(max_abs(&(sum - DMatrix::identity(dim, dim))) < 1e-10);
        }
    }

    #[test]
    fn spin_one_aklt_bond_projector() {
        // P² for two spin-1 = (S·S)²/6 + S·S/2 + 1/3
        let one = Spin::integer(1);
        let ops = SpinOperatorTriple::new(one);
        let h = ops.dot(&ops);
        let expected =
            &h * &h * C64::from(1.0 / 6.0) + &h * C64::from(0.5) + DMatrix::identity(9, 9) * C64::from(1.0 / 3.0);
        let p = aklt_projector(one, one, Spin::integer(2)).unwrap();
        assert!(max_abs(&(p - expected)) < 1e-10);
    }
}
