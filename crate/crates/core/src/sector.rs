//! Sector membership of the numerical range and the sectorial decomposition
//! `A = X·Z·X*` with `Z = diag(e^{iθ_j})`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{ComplexMatrix, C64};

/// Real part must have smallest eigenvalue above this times `‖A‖_F`.
pub const STRICT_TOL: f64 = 1e-12;
/// Angles this close to `π/2` are treated as outside every sector.
pub const RIGHT_ANGLE_MARGIN: f64 = 1e-9;
pub const BISECTION_STEPS: usize = 60;

/// Half-opening `α ∈ [0, π/2)` of the sector `|arg z| ≤ α`, `Re z > 0`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SectorAngle(f64);

impl SectorAngle {
    pub const ZERO: SectorAngle = SectorAngle(0.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && (0.0..FRAC_PI_2).contains(&alpha) {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidAngle(alpha))
        }
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn sec(self) -> f64 {
        1.0 / libm::cos(self.0)
    }

    /// `sec^k(α)`.
    pub fn sec_power(self, k: u32) -> f64 {
        libm::pow(self.sec(), k as f64)
    }
}

/// An eigenpair of `Re(e^{iβ}A)` showing a sector boundary is crossed.
#[derive(Clone, Debug)]
pub struct SectorWitness {
    /// The rotation `β`; `0` for the strict half-plane test.
    pub rotation: f64,
    pub eigenvalue: f64,
    pub eigenvector: Vec<C64>,
}

#[derive(Clone, Debug)]
pub struct SectorMembership {
    pub inside: bool,
    pub witness: Option<SectorWitness>,
}

/// `e^{iβ}·A`.
pub fn rotate(a: &ComplexMatrix, beta: f64) -> ComplexMatrix {
    a.scale(C64::from_polar(1.0, beta))
}

/// Whether `W(A) ⊂ S_α` up to `tol · ‖A‖_F`.
///
/// A point `z` lies in the closed cone iff `Re(e^{±i(π/2−α)} z) ≥ 0`, so the
/// test is on the smallest eigenvalues of `Re(e^{±i(π/2−α)}A)`. The open
/// half-plane condition is checked separately on `Re A` with [`STRICT_TOL`].
pub fn in_sector(a: &ComplexMatrix, alpha: SectorAngle, tol: f64) -> Result<SectorMembership> {
    a.require_square()?;
    let norm = a.frobenius_norm();
    let beta = FRAC_PI_2 - alpha.radians();
    let tests = [
        (0.0, STRICT_TOL * norm, true),
        (beta, -tol * norm, false),
        (-beta, -tol * norm, false),
    ];
    for (rotation, threshold, strict) in tests {
        let eig = linalg::hermitian_eigen(&rotate(a, rotation).hermitian_part())?;
        let lo = eig.min();
        let ok = if strict {
            lo > threshold
        } else {
            lo >= threshold
        };
        if !ok {
            return Ok(SectorMembership {
                inside: false,
                witness: Some(SectorWitness {
                    rotation,
                    eigenvalue: lo,
                    eigenvector: eig.eigenvectors.column(0),
                }),
            });
        }
    }
    Ok(SectorMembership {
        inside: true,
        witness: None,
    })
}

/// `A = X·diag(e^{iθ_j})·X*` with `θ` sorted descending.
#[derive(Clone, Debug)]
pub struct SectorialDecomposition {
    pub x: ComplexMatrix,
    pub thetas: Vec<f64>,
}

impl SectorialDecomposition {
    pub fn z(&self) -> ComplexMatrix {
        let d: Vec<C64> = self
            .thetas
            .iter()
            .map(|&t| C64::from_polar(1.0, t))
            .collect();
        ComplexMatrix::from_diagonal(&d)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.x * &self.z()) * &self.x.adjoint()
    }

    pub fn max_abs_theta(&self) -> f64 {
        self.thetas.iter().fold(0.0, |m, t| m.max(t.abs()))
    }
}

/// Congruence construction: with `H = Re A`, `K = Im A`, diagonalize
/// `H^{-1/2}·K·H^{-1/2} = U·diag(d)·U*`. Then `θ_j = atan d_j` and
/// `X = H^{1/2}·U·diag((cos θ_j)^{-1/2})`, because `1 + i·d_j = e^{iθ_j}/cos θ_j`.
pub fn sectorial_decompose(a: &ComplexMatrix) -> Result<SectorialDecomposition> {
    let n = a.require_square()?;
    let norm = a.frobenius_norm();
    let parts = a.cartesian_split();
    let h_eig = linalg::hermitian_eigen(&parts.real_part)?;
    if !(h_eig.min() > STRICT_TOL * norm) {
        return Err(Error::NotSectorial);
    }
    let h_half = h_eig.apply(libm::sqrt);
    let h_inv_half = h_eig.apply(|l| 1.0 / libm::sqrt(l));
    let c = (&(&h_inv_half * &parts.imag_part) * &h_inv_half).hermitian_part();
    let c_eig = linalg::hermitian_eigen(&c)?;
    let hu = &h_half * &c_eig.eigenvectors;

    // eigenvalues ascend and atan is increasing, so walk them backwards
    let mut thetas = Vec::with_capacity(n);
    let mut x = ComplexMatrix::zeros(n, n);
    for (col, src) in (0..n).rev().enumerate() {
        let d = c_eig.eigenvalues[src];
        thetas.push(libm::atan(d));
        let scale = libm::sqrt(libm::sqrt(1.0 + d * d));
        for i in 0..n {
            x[(i, col)] = hu[(i, src)] * scale;
        }
    }
    Ok(SectorialDecomposition { x, thetas })
}

/// Smallest `α` with `W(A) ⊂ S_α`, read off the decomposition.
pub fn sector_angle(a: &ComplexMatrix) -> Result<SectorAngle> {
    let alpha = sectorial_decompose(a)?.max_abs_theta();
    if alpha >= FRAC_PI_2 - RIGHT_ANGLE_MARGIN {
        return Err(Error::NotSectorial);
    }
    SectorAngle::new(alpha)
}

/// Same quantity as [`sector_angle`] by bisection on [`in_sector`] with zero
/// tolerance. Independent of the decomposition.
pub fn sector_angle_bisection(a: &ComplexMatrix) -> Result<f64> {
    a.require_square()?;
    let top = SectorAngle::new(FRAC_PI_2 - RIGHT_ANGLE_MARGIN)?;
    if !in_sector(a, top, 0.0)?.inside {
        return Err(Error::NotSectorial);
    }
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if in_sector(a, SectorAngle(mid), 0.0)?.inside {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `m` points on the boundary of `W(A)`: for `φ_t = 2πt/m`, the value
/// `v*Av` at a top eigenvector `v` of `Re(e^{−iφ_t}A)`.
pub fn numerical_range_boundary(a: &ComplexMatrix, m: usize) -> Result<Vec<C64>> {
    a.require_square()?;
    if m < 3 {
        return Err(Error::IndexOutOfRange {
            index: m,
            min: 3,
            max: usize::MAX,
        });
    }
    let n = a.n();
    (0..m)
        .map(|t| {
            let phi = TAU * t as f64 / m as f64;
            let eig = linalg::hermitian_eigen(&rotate(a, -phi).hermitian_part())?;
            let v = eig.eigenvectors.column(n - 1);
            Ok(a.quadratic_form(&v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_positive_definite, TrialRng};
    use core::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Largest `|arg x*Ax|` over many random unit vectors; a lower bound on
    /// the sector angle that tightens with the sample count.
    fn sampled_max_arg(a: &ComplexMatrix, samples: usize, seed: u64) -> (f64, f64) {
        let mut rng = TrialRng::new(seed, 0);
        let n = a.n();
        let mut max_arg = 0.0f64;
        let mut min_re = f64::INFINITY;
        for _ in 0..samples {
            let x: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
            let nx: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let x: Vec<C64> = x.iter().map(|z| z / nx).collect();
            let q = a.quadratic_form(&x);
            max_arg = max_arg.max(q.arg().abs());
            min_re = min_re.min(q.re);
        }
        (max_arg, min_re)
    }

    #[test]
    fn positive_definite_is_in_every_sector() {
        let a = gen_positive_definite(4, 1);
        for alpha in [0.0, 0.3, 1.2] {
            assert!(
                in_sector(&a, SectorAngle::new(alpha).unwrap(), 1e-12)
                    .unwrap()
                    .inside
            );
        }
    }

    #[test]
    fn scalar_outside_narrow_sector() {
        let a = ComplexMatrix::from_diagonal(&[C64::from_polar(1.0, FRAC_PI_3)]);
        let m = in_sector(&a, SectorAngle::new(FRAC_PI_4).unwrap(), 1e-9).unwrap();
        assert!(!m.inside);
        let w = m.witness.unwrap();
        assert!(w.eigenvalue < 0.0);
        assert!(
            in_sector(&a, SectorAngle::new(FRAC_PI_3 + 1e-9).unwrap(), 1e-9)
                .unwrap()
                .inside
        );
    }

    #[test]
    fn shear_touches_the_imaginary_axis() {
        // W = closed disk of radius 1 around 1: reaches Re z = 0.
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let (max_arg, min_re) = sampled_max_arg(&a, 20000, 3);
        assert!(max_arg > FRAC_PI_3);
        assert!(min_re < 1e-3);
        assert!(
            !in_sector(&a, SectorAngle::new(FRAC_PI_3).unwrap(), 1e-9)
                .unwrap()
                .inside
        );
        assert_eq!(sector_angle(&a).unwrap_err(), Error::NotSectorial);
    }

    #[test]
    fn decomposition_of_identity() {
        let d = sectorial_decompose(&ComplexMatrix::identity(3)).unwrap();
        assert!(d.thetas.iter().all(|&t| t == 0.0));
        let xx = &d.x * &d.x.adjoint();
        assert!((&xx - &ComplexMatrix::identity(3)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn decomposition_of_diagonal_unitary() {
        let a = ComplexMatrix::from_diagonal(&[
            C64::from_polar(1.0, FRAC_PI_6),
            C64::from_polar(1.0, -FRAC_PI_4),
        ]);
        let d = sectorial_decompose(&a).unwrap();
        assert!((d.thetas[0] - FRAC_PI_6).abs() < 1e-14);
        assert!((d.thetas[1] + FRAC_PI_4).abs() < 1e-14);
        assert!((&d.reconstruct() - &a).frobenius_norm() < 1e-14);
        assert!((sector_angle(&a).unwrap().radians() - FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn planted_angles_are_recovered() {
        let mut rng = TrialRng::new(3, 0);
        let p = crate::generators::sectorial_planted(4, FRAC_PI_4, &mut rng).unwrap();
        let d = sectorial_decompose(&p.matrix).unwrap();
        let mut planted = p.thetas.clone();
        planted.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in d.thetas.iter().zip(&planted) {
            assert!((got - want).abs() < 1e-8);
        }
        let rel = (&d.reconstruct() - &p.matrix).frobenius_norm() / p.matrix.frobenius_norm();
        assert!(rel < 1e-9);
    }

    #[test]
    fn angle_agrees_with_bisection() {
        // [[2, 1+i], [1-i, 2]] + i·I
        let a =
            ComplexMatrix::from_rows(&[&[c(2.0, 1.0), c(1.0, 1.0)], &[c(1.0, -1.0), c(2.0, 1.0)]]);
        let by_decomposition = sector_angle(&a).unwrap().radians();
        let by_bisection = sector_angle_bisection(&a).unwrap();
        assert!((by_decomposition - by_bisection).abs() < 1e-8);
        // Hermitian part has eigenvalues 2 ± √2, imaginary part is I: the
        // extreme argument is atan(1/(2 - √2)).
        let expected = libm::atan(1.0 / (2.0 - core::f64::consts::SQRT_2));
        assert!((by_decomposition - expected).abs() < 1e-12);
    }

    #[test]
    fn angle_of_pd_is_zero() {
        let a = gen_positive_definite(5, 2);
        assert!(sector_angle(&a).unwrap().radians() < 1e-12);
    }

    #[test]
    fn not_sectorial_when_real_part_indefinite() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert_eq!(sectorial_decompose(&a).unwrap_err(), Error::NotSectorial);
        assert_eq!(sector_angle_bisection(&a).unwrap_err(), Error::NotSectorial);
    }

    #[test]
    fn boundary_of_normal_and_identity() {
        let pts =
            numerical_range_boundary(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0]), 64).unwrap();
        assert!(pts
            .iter()
            .all(|z| z.im.abs() < 1e-14 && z.re >= 1.0 - 1e-14 && z.re <= 2.0 + 1e-14));
        let pts = numerical_range_boundary(&ComplexMatrix::identity(3), 8).unwrap();
        assert!(pts.iter().all(|&z| z == c(1.0, 0.0)));
        assert!(numerical_range_boundary(&ComplexMatrix::identity(2), 2).is_err());
    }

    #[test]
    fn boundary_of_nilpotent_is_unit_circle() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let pts = numerical_range_boundary(&a, 360).unwrap();
        for z in &pts {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
        // sampled interior points never leave the disk and come close to it
        let mut rng = TrialRng::new(5, 0);
        let mut max_r = 0.0f64;
        for _ in 0..20000 {
            let x = [rng.complex_normal(), rng.complex_normal()];
            let nx = (x[0].norm_sqr() + x[1].norm_sqr()).sqrt();
            let q = a.quadratic_form(&[x[0] / nx, x[1] / nx]);
            max_r = max_r.max(q.norm());
        }
        assert!(max_r <= 1.0 + 1e-12 && max_r > 0.99);
        // points sweep the full circle
        let first = pts[0].arg();
        let quarter = pts[90].arg();
        assert!(((quarter - first).rem_euclid(2.0 * PI) - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn sector_angle_newtype_rejects_out_of_range() {
        assert!(SectorAngle::new(-0.1).is_err());
        assert!(SectorAngle::new(FRAC_PI_2).is_err());
        assert!(SectorAngle::new(f64::NAN).is_err());
        assert_eq!(SectorAngle::ZERO.sec(), 1.0);
    }
}
