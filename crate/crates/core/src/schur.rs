//! Conformal 2×2 block partitions and Schur complements.

use crate::error::{Error, Result};
use crate::linalg::{self, Lu};
use crate::matrix::{ComplexMatrix, I};

/// Split index `p`: the leading block `A₁₁` is `p×p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPartition(usize);

impl BlockPartition {
    /// Valid for an `n×n` matrix when `1 ≤ p ≤ n − 1`.
    pub fn new(p: usize, n: usize) -> Result<Self> {
        if p >= 1 && p < n {
            Ok(Self(p))
        } else {
            Err(Error::IndexOutOfRange {
                index: p,
                min: 1,
                max: n.saturating_sub(1),
            })
        }
    }

    #[inline]
    pub fn p(self) -> usize {
        self.0
    }

    fn check(self, a: &ComplexMatrix) -> Result<usize> {
        let n = a.require_square()?;
        Self::new(self.0, n)?;
        Ok(n)
    }
}

/// The four blocks `A₁₁, A₁₂, A₂₁, A₂₂`.
pub fn blocks(a: &ComplexMatrix, part: BlockPartition) -> Result<[ComplexMatrix; 4]> {
    let n = part.check(a)?;
    let p = part.p();
    Ok([
        a.block(0, p, 0, p),
        a.block(0, p, p, n),
        a.block(p, n, 0, p),
        a.block(p, n, p, n),
    ])
}

/// `A/A₁₁ = A₂₂ − A₂₁·A₁₁⁻¹·A₁₂`, solving `A₁₁·W = A₁₂` by LU.
pub fn schur_complement(a: &ComplexMatrix, part: BlockPartition) -> Result<ComplexMatrix> {
    let [a11, a12, a21, a22] = blocks(a, part)?;
    let lu = Lu::factor(&a11)?;
    if lu.is_singular() {
        return Err(Error::SingularLeadingBlock);
    }
    let w = lu.solve(&a12)?;
    Ok(&a22 - &(&a21 * &w))
}

/// Trailing `(n−p)×(n−p)` block of a matrix.
pub fn trailing_block(a: &ComplexMatrix, part: BlockPartition) -> Result<ComplexMatrix> {
    let n = part.check(a)?;
    Ok(a.block(part.p(), n, part.p(), n))
}

/// `‖(A/A₁₁)⁻¹ − (A⁻¹)₂₂‖_F / ‖A⁻¹‖_F`.
pub fn inverse_block_identity(a: &ComplexMatrix, part: BlockPartition) -> Result<f64> {
    let a_inv = linalg::inverse(a)?;
    let s = schur_complement(a, part).map_err(|e| match e {
        Error::SingularLeadingBlock => Error::Singular,
        e => e,
    })?;
    let s_inv = linalg::inverse(&s)?;
    let tail = trailing_block(&a_inv, part)?;
    Ok((&s_inv - &tail).frobenius_norm() / a_inv.frobenius_norm())
}

/// Pieces of the Schur complement expressed through the Cartesian parts
/// `M = Re A`, `N = Im A`:
/// `A/A₁₁ = M/M₁₁ + i·N/N₁₁ + Y·(M₁₁⁻¹ − i·N₁₁⁻¹)⁻¹·Y*`,
/// `Y = M₂₁·M₁₁⁻¹ − N₂₁·N₁₁⁻¹`.
#[derive(Clone, Debug)]
pub struct CartesianSchurParts {
    pub m_part: ComplexMatrix,
    pub n_part: ComplexMatrix,
    pub y_factor: ComplexMatrix,
    pub correction: ComplexMatrix,
    /// `‖M/M₁₁ + i·N/N₁₁ + correction − A/A₁₁‖_F`.
    pub residual: f64,
    /// `‖A‖_F`, the scale the residual is judged against.
    pub norm: f64,
}

impl CartesianSchurParts {
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.norm
    }

    pub fn recombine(&self) -> ComplexMatrix {
        &(&self.m_part + &self.n_part.scale(I)) + &self.correction
    }
}

pub fn cartesian_schur_identity(
    a: &ComplexMatrix,
    part: BlockPartition,
) -> Result<CartesianSchurParts> {
    part.check(a)?;
    let cart = a.cartesian_split();
    if !linalg::is_positive_definite(&cart.real_part, 0.0)? {
        return Err(Error::NotAccretive);
    }
    let singular_block = |e: Error| match e {
        Error::Singular | Error::SingularLeadingBlock => Error::SingularBlock,
        e => e,
    };
    let [m11, _, m21, _] = blocks(&cart.real_part, part)?;
    let [n11, _, n21, _] = blocks(&cart.imag_part, part)?;
    let m11_inv = linalg::inverse(&m11).map_err(singular_block)?;
    let n11_inv = linalg::inverse(&n11).map_err(singular_block)?;

    let m_part = schur_complement(&cart.real_part, part).map_err(singular_block)?;
    let n_part = schur_complement(&cart.imag_part, part).map_err(singular_block)?;
    let y_factor = &(&m21 * &m11_inv) - &(&n21 * &n11_inv);
    let middle = linalg::inverse(&(&m11_inv - &n11_inv.scale(I))).map_err(singular_block)?;
    let correction = &(&y_factor * &middle) * &y_factor.adjoint();

    let direct = schur_complement(a, part)?;
    let mut parts = CartesianSchurParts {
        m_part,
        n_part,
        y_factor,
        correction,
        residual: 0.0,
        norm: a.frobenius_norm(),
    };
    parts.residual = (&parts.recombine() - &direct).frobenius_norm();
    Ok(parts)
}

/// `Re(A⁻¹)` against `(Re A + Im A·(Re A)⁻¹·Im A)⁻¹`, relative to `‖A⁻¹‖_F`.
pub fn inverse_real_part_identity(a: &ComplexMatrix) -> Result<f64> {
    let cart = a.cartesian_split();
    if !linalg::is_positive_definite(&cart.real_part, 0.0)? {
        return Err(Error::NotAccretive);
    }
    let a_inv = linalg::inverse(a)?;
    let m_inv = linalg::inverse(&cart.real_part)?;
    let inner = &cart.real_part + &(&(&cart.imag_part * &m_inv) * &cart.imag_part);
    let formula = linalg::inverse(&inner)?;
    Ok((&a_inv.hermitian_part() - &formula).frobenius_norm() / a_inv.frobenius_norm())
}

/// `det A / (det A₁₁ · det(A/A₁₁)) − 1` in modulus.
pub fn determinant_quotient_residual(a: &ComplexMatrix, part: BlockPartition) -> Result<f64> {
    let [a11, ..] = blocks(a, part)?;
    let s = schur_complement(a, part)?;
    let whole = linalg::determinant(a)?;
    let product = linalg::determinant(&a11)? * linalg::determinant(&s)?;
    Ok((whole - product).norm() / whole.norm().max(product.norm()).max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_accretive_dissipative, gen_positive_definite, gen_sectorial};
    use crate::matrix::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complement_of_identity() {
        let s = schur_complement(
            &ComplexMatrix::identity(4),
            BlockPartition::new(2, 4).unwrap(),
        )
        .unwrap();
        assert_eq!(s, ComplexMatrix::identity(2));
    }

    #[test]
    fn complement_of_2x2() {
        let a = ComplexMatrix::from_real_rows(&[&[4.0, 2.0], &[2.0, 3.0]]);
        let s = schur_complement(&a, BlockPartition::new(1, 2).unwrap()).unwrap();
        assert!((s[(0, 0)] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn complement_of_block_diagonal() {
        let b = gen_positive_definite(2, 1);
        let cblk = gen_sectorial(3, 0.5, 2).unwrap();
        let a = ComplexMatrix::from_fn(5, 5, |i, j| match (i < 2, j < 2) {
            (true, true) => b[(i, j)],
            (false, false) => cblk[(i - 2, j - 2)],
            _ => c(0.0, 0.0),
        });
        let s = schur_complement(&a, BlockPartition::new(2, 5).unwrap()).unwrap();
        assert_eq!(s, cblk);
    }

    #[test]
    fn partition_bounds_and_singular_leading_block() {
        assert!(BlockPartition::new(0, 3).is_err());
        assert!(BlockPartition::new(3, 3).is_err());
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(
            schur_complement(&a, BlockPartition::new(1, 2).unwrap()),
            Err(Error::SingularLeadingBlock)
        );
    }

    #[test]
    fn inverse_block_identity_exact_cases() {
        let d = ComplexMatrix::from_real_diagonal(&[2.0, 3.0]);
        assert!(inverse_block_identity(&d, BlockPartition::new(1, 2).unwrap()).unwrap() < 1e-16);
        for p in 1..4 {
            let r = inverse_block_identity(
                &ComplexMatrix::identity(4),
                BlockPartition::new(p, 4).unwrap(),
            );
            assert_eq!(r.unwrap(), 0.0);
        }
    }

    #[test]
    fn inverse_block_identity_random_sectorial() {
        let a = gen_sectorial(4, 0.7, 5).unwrap();
        assert!(inverse_block_identity(&a, BlockPartition::new(2, 4).unwrap()).unwrap() <= 1e-9);
    }

    #[test]
    fn cartesian_identity_accretive_dissipative() {
        let a = gen_accretive_dissipative(4, 9);
        let parts = cartesian_schur_identity(&a, BlockPartition::new(2, 4).unwrap()).unwrap();
        assert!(parts.relative_residual() <= 1e-9);
    }

    #[test]
    fn cartesian_identity_with_identity_imaginary_part() {
        let m = gen_positive_definite(4, 4);
        let a = &m + &ComplexMatrix::identity(4).scale(I);
        for p in 1..4 {
            let part = BlockPartition::new(p, 4).unwrap();
            let parts = cartesian_schur_identity(&a, part).unwrap();
            assert!(parts.relative_residual() <= 1e-9);
            // N = I: N/N₁₁ = I and Y = M₂₁·M₁₁⁻¹ since N₂₁ = 0
            assert!((&parts.n_part - &ComplexMatrix::identity(4 - p)).frobenius_norm() < 1e-15);
            let [m11, _, m21, _] = blocks(&m, part).unwrap();
            let y = &m21 * &linalg::inverse(&m11).unwrap();
            assert!((&parts.y_factor - &y).frobenius_norm() < 1e-12 * y.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn cartesian_identity_needs_invertible_imaginary_block() {
        let a = gen_positive_definite(3, 8);
        assert_eq!(
            cartesian_schur_identity(&a, BlockPartition::new(1, 3).unwrap()).unwrap_err(),
            Error::SingularBlock
        );
    }

    #[test]
    fn determinant_quotient() {
        let a = gen_sectorial(5, 1.0, 12).unwrap();
        for p in 1..5 {
            let r = determinant_quotient_residual(&a, BlockPartition::new(p, 5).unwrap()).unwrap();
            assert!(r < 1e-9);
        }
    }

    #[test]
    fn inverse_real_part_formula() {
        let a = gen_sectorial(5, 1.0, 13).unwrap();
        assert!(inverse_real_part_identity(&a).unwrap() < 1e-9);
    }
}
