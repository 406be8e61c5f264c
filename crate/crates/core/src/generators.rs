//! Seeded random matrix families.
//!
//! Every draw comes from a ChaCha8 stream keyed by `(seed, stream)`; trial
//! `i` of a suite uses stream `i`, so trials are reproducible in isolation
//! and can run in any order.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{ComplexMatrix, C64};
use crate::sector::SectorAngle;

/// Largest angle the sectorial generator accepts.
pub const MAX_GENERATOR_ALPHA: f64 = FRAC_PI_2 - 0.01;
/// Draws of the congruence factor whose smallest singular value falls below
/// this are discarded.
pub const MIN_FACTOR_SINGULAR_VALUE: f64 = 1e-3;

pub struct TrialRng {
    inner: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { inner }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Two independent standard normals (Box–Muller).
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let (s, c) = libm::sincos(TAU * u2);
        (r * c, r * s)
    }

    /// Complex Gaussian with independent N(0, 1) real and imaginary parts.
    pub fn complex_normal(&mut self) -> C64 {
        let (a, b) = self.normal_pair();
        C64::new(a, b)
    }

    /// Log-uniform on `[lo, hi]`, `0 < lo < hi`.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        libm::exp(self.uniform_in(libm::log(lo), libm::log(hi)))
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrialConfig {
    pub seed: u64,
    pub n: usize,
    pub alpha: f64,
    pub trials: usize,
    pub partition: Option<usize>,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1"));
        }
        if let Some(p) = self.partition {
            if p == 0 || p >= self.n {
                return Err(Error::InvalidConfig("partition must lie in 1..=n-1"));
            }
        }
        if !(self.alpha >= 0.0 && self.alpha < MAX_GENERATOR_ALPHA) {
            return Err(Error::InvalidConfig("alpha must lie in [0, pi/2 - 0.01)"));
        }
        Ok(())
    }

    pub fn sector_angle(&self) -> Result<SectorAngle> {
        SectorAngle::new(self.alpha)
    }

    /// Generator for trial `index`.
    pub fn rng(&self, index: usize) -> TrialRng {
        TrialRng::new(self.seed, index as u64)
    }
}

pub fn gaussian_matrix(n: usize, rng: &mut TrialRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| rng.complex_normal())
}

/// `G·G* + 0.1·I` with `G` complex Gaussian.
pub fn positive_definite(n: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let g = gaussian_matrix(n, rng);
    let mut h = (&g * &g.adjoint()).hermitian_part();
    for i in 0..n {
        h[(i, i)] += 0.1;
    }
    h
}

/// A sectorial matrix together with the factors it was built from.
#[derive(Clone, Debug)]
pub struct PlantedSectorial {
    pub matrix: ComplexMatrix,
    pub factor: ComplexMatrix,
    /// Planted angles in draw order; the first equals the target angle.
    pub thetas: Vec<f64>,
}

/// `X·diag(e^{iθ})·X*` with `θ₁ = α` and the rest uniform on `[−α, α]`.
pub fn sectorial_planted(n: usize, alpha: f64, rng: &mut TrialRng) -> Result<PlantedSectorial> {
    if !(0.0..MAX_GENERATOR_ALPHA).contains(&alpha) {
        return Err(Error::InvalidAngle(alpha));
    }
    let factor = loop {
        let x = gaussian_matrix(n, rng);
        let smin = linalg::singular_values(&x)?.last().copied().unwrap_or(0.0);
        if smin >= MIN_FACTOR_SINGULAR_VALUE {
            break x;
        }
    };
    let thetas: Vec<f64> = (0..n)
        .map(|j| {
            if j == 0 {
                alpha
            } else {
                rng.uniform_in(-alpha, alpha)
            }
        })
        .collect();
    let mut scaled = factor.clone();
    for j in 0..n {
        let z = C64::from_polar(1.0, thetas[j]);
        for i in 0..n {
            scaled[(i, j)] *= z;
        }
    }
    let matrix = &scaled * &factor.adjoint();
    Ok(PlantedSectorial {
        matrix,
        factor,
        thetas,
    })
}

pub fn sectorial(n: usize, alpha: f64, rng: &mut TrialRng) -> Result<ComplexMatrix> {
    Ok(sectorial_planted(n, alpha, rng)?.matrix)
}

/// `H + iK` with `H`, `K` independent positive definite draws.
pub fn accretive_dissipative(n: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let h = positive_definite(n, rng);
    let k = positive_definite(n, rng);
    &h + &k.scale(C64::new(0.0, 1.0))
}

/// Sequences `a, b` of length `n + 1` with `a₀ = b₀ = 1` and the remaining
/// entries log-uniform on `[lo, hi]`.
pub fn log_uniform_sequences(
    n: usize,
    lo: f64,
    hi: f64,
    rng: &mut TrialRng,
) -> (Vec<f64>, Vec<f64>) {
    let draw = |rng: &mut TrialRng| {
        let mut v = Vec::with_capacity(n + 1);
        v.push(1.0);
        v.extend((0..n).map(|_| rng.log_uniform(lo, hi)));
        v
    };
    let a = draw(rng);
    let b = draw(rng);
    (a, b)
}

pub fn gen_positive_definite(n: usize, seed: u64) -> ComplexMatrix {
    positive_definite(n, &mut TrialRng::new(seed, 0))
}

pub fn gen_sectorial(n: usize, alpha: f64, seed: u64) -> Result<ComplexMatrix> {
    sectorial(n, alpha, &mut TrialRng::new(seed, 0))
}

pub fn gen_accretive_dissipative(n: usize, seed: u64) -> ComplexMatrix {
    accretive_dissipative(n, &mut TrialRng::new(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::{in_sector, sector_angle};
    use core::f64::consts::FRAC_PI_4;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a = gen_positive_definite(4, 9);
        let b = gen_positive_definite(4, 9);
        assert_eq!(a, b);
        let mut r0 = TrialRng::new(9, 0);
        let mut r1 = TrialRng::new(9, 1);
        assert_ne!(r0.uniform(), r1.uniform());
    }

    #[test]
    fn positive_definite_has_eigenvalues_above_floor() {
        for seed in 0..20 {
            let h = gen_positive_definite(5, seed);
            assert!(linalg::min_eigenvalue(&h).unwrap() >= 0.09);
            let d = linalg::determinant(&h).unwrap();
            assert!(d.re > 0.0 && d.im.abs() <= 1e-12 * d.re);
            assert!(in_sector(&h, SectorAngle::ZERO, 1e-12).unwrap().inside);
        }
    }

    #[test]
    fn sectorial_attains_its_angle() {
        for seed in 0..20 {
            let a = gen_sectorial(4, 0.9, seed).unwrap();
            let alpha = sector_angle(&a).unwrap().radians();
            assert!((alpha - 0.9).abs() < 1e-8, "seed {seed}: {alpha}");
            assert!(
                in_sector(&a, SectorAngle::new(0.9).unwrap(), 1e-9)
                    .unwrap()
                    .inside
            );
        }
        let pd = gen_sectorial(3, 0.0, 1).unwrap();
        assert!(linalg::is_positive_definite(&pd, 0.0).unwrap());
    }

    #[test]
    fn accretive_dissipative_parts_are_pd_and_rotate_into_quarter_sector() {
        for seed in 0..10 {
            let a = gen_accretive_dissipative(4, seed);
            let p = a.cartesian_split();
            assert!(linalg::is_positive_definite(&p.real_part, 0.0).unwrap());
            assert!(linalg::is_positive_definite(&p.imag_part, 0.0).unwrap());
            let rotated = a.scale(C64::from_polar(1.0, -FRAC_PI_4));
            let quarter = SectorAngle::new(FRAC_PI_4 + 1e-9).unwrap();
            assert!(in_sector(&rotated, quarter, 1e-9).unwrap().inside);
            assert!(sector_angle(&a).is_ok());
        }
    }

    #[test]
    fn config_validation() {
        let ok = TrialConfig {
            seed: 0,
            n: 3,
            alpha: 0.5,
            trials: 10,
            partition: Some(2),
        };
        assert!(ok.validate().is_ok());
        assert!(TrialConfig {
            trials: 0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(TrialConfig {
            partition: Some(3),
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(TrialConfig {
            alpha: 1.565,
            ..ok.clone()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn log_uniform_sequences_are_normalized() {
        let mut rng = TrialRng::new(15, 0);
        let (a, b) = log_uniform_sequences(6, 1e-3, 1e3, &mut rng);
        assert_eq!(a.len(), 7);
        assert_eq!((a[0], b[0]), (1.0, 1.0));
        assert!(a.iter().chain(&b).all(|&x| (1e-3..=1e3).contains(&x)));
    }
}
