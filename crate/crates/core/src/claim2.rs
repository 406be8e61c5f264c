//! The scalar inequality behind the determinant refinements:
//!
//! ```text
//! ∏_{k=1}^n (a_k/a_{k−1} + b_k/b_{k−1})
//!     ≥ a_n(1 + Σ_{s=1}^{n−1} b_s/a_s) + b_n(1 + Σ_{s=1}^{n−1} a_s/b_s) + (2ⁿ − 2n)√(a_n b_n)
//! ```
//!
//! for positive `a_k`, `b_k` with `a_0 = b_0 = 1`, together with the subset
//! machinery of its proof: expanding `∏(1 + x_k)` over all subsets of
//! `{1..n}`, splitting them into the chain family `Ω` (empty set, prefixes,
//! suffixes) and the rest `Ω′`, and bounding the `Ω′` sum by AM-GM.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::inequalities::non_chain_count;
use crate::report::InequalityReport;

/// Subset enumeration is capped at this many elements.
pub const MAX_SUBSET_N: usize = 20;

/// A subset of `{1..n}` as a bitmask; bit `k − 1` stands for `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn contains(self, k: usize) -> bool {
        (1..=32).contains(&k) && self.0 & (1 << (k - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&k| self.contains(k))
    }

    /// `{1..s}`.
    pub fn prefix(s: usize) -> Self {
        Subset(((1u64 << s) - 1) as u32)
    }

    /// `{s..n}`.
    pub fn suffix(s: usize, n: usize) -> Self {
        Subset(Self::prefix(n).0 & !Self::prefix(s - 1).0)
    }
}

fn is_prefix(mask: u32) -> bool {
    (mask as u64 + 1).is_power_of_two()
}

#[derive(Clone, Debug)]
pub struct OmegaPartition {
    pub n: usize,
    /// `∅`, then `{1..s}` for `s = 1..n`, then `{s..n}` for `s = 2..n`.
    pub omega: Vec<Subset>,
    /// Every other subset, in increasing bitmask order.
    pub omega_prime: Vec<Subset>,
}

impl OmegaPartition {
    /// Number of members of `family` containing `k`.
    pub fn multiplicity(family: &[Subset], k: usize) -> usize {
        family.iter().filter(|s| s.contains(k)).count()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            min: 1,
            max: MAX_SUBSET_N,
        });
    }
    if n > MAX_SUBSET_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_SUBSET_N,
        });
    }
    Ok(())
}

pub fn omega_partition(n: usize) -> Result<OmegaPartition> {
    check_n(n)?;
    let full = Subset::prefix(n).0;
    let mut omega = Vec::with_capacity(2 * n);
    omega.push(Subset::EMPTY);
    omega.extend((1..=n).map(Subset::prefix));
    omega.extend((2..=n).map(|s| Subset::suffix(s, n)));
    let omega_prime = (0..=full)
        .filter(|&m| !is_prefix(m) && !is_prefix(full ^ m))
        .map(Subset)
        .collect();
    Ok(OmegaPartition {
        n,
        omega,
        omega_prime,
    })
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `∏_{k∈B} x_k` for every bitmask `B < 2ⁿ`.
fn subset_products(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut prod = vec![1.0; 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        prod[mask] = prod[mask & (mask - 1)] * x[low];
    }
    prod
}

/// `|∏(1 + x_k) − Σ_B ∏_{k∈B} x_k| / ∏(1 + x_k)`.
pub fn product_expansion_check(x: &[f64]) -> Result<f64> {
    check_n(x.len())?;
    if x.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidSequence("x must be finite and non-negative"));
    }
    let product: f64 = x.iter().map(|v| 1.0 + v).product();
    let expansion = compensated_sum(subset_products(x));
    Ok((product - expansion).abs() / product)
}

/// Sequences `a_0..a_n`, `b_0..b_n`, positive, with `a_0 = b_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PositiveSequencePair {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl PositiveSequencePair {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidSequence("a and b differ in length"));
        }
        if a.len() < 2 {
            return Err(Error::InvalidSequence("need at least a_0 and a_1"));
        }
        if a[0] != 1.0 || b[0] != 1.0 {
            return Err(Error::InvalidSequence("a_0 and b_0 must equal 1"));
        }
        if a.iter().chain(&b).any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidSequence(
                "entries must be finite and positive",
            ));
        }
        Ok(Self { a, b })
    }

    /// The `n` of the inequality (sequence length minus one).
    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Multiplies every entry with index `k ≥ 1` by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let scale = |v: &[f64]| -> Vec<f64> {
            v.iter()
                .enumerate()
                .map(|(k, x)| if k == 0 { *x } else { x * c })
                .collect()
        };
        Self::new(scale(&self.a), scale(&self.b))
    }

    /// `∏_{k=1}^n (a_k/a_{k−1} + b_k/b_{k−1})`.
    pub fn lhs(&self) -> f64 {
        (1..=self.n())
            .map(|k| self.a[k] / self.a[k - 1] + self.b[k] / self.b[k - 1])
            .product()
    }

    /// `a_n(1 + Σ b_s/a_s) + b_n(1 + Σ a_s/b_s) + (2ⁿ − 2n)√(a_n b_n)`,
    /// sums over `s = 1..n−1`.
    pub fn rhs(&self) -> f64 {
        let n = self.n();
        let (an, bn) = (self.a[n], self.b[n]);
        let sum_ba: f64 = (1..n).map(|s| self.b[s] / self.a[s]).sum();
        let sum_ab: f64 = (1..n).map(|s| self.a[s] / self.b[s]).sum();
        an * (1.0 + sum_ba) + bn * (1.0 + sum_ab) + non_chain_count(n) * libm::sqrt(an * bn)
    }

    /// `x_k = a_{k−1} b_k / (b_{k−1} a_k)`.
    pub fn substitution(&self) -> Vec<f64> {
        (1..=self.n())
            .map(|k| self.a[k - 1] * self.b[k] / (self.b[k - 1] * self.a[k]))
            .collect()
    }

    /// `a_n · ∏(1 + x_k)`, which equals [`Self::lhs`].
    pub fn lhs_via_substitution(&self) -> f64 {
        self.a[self.n()] * self.substitution().iter().map(|x| 1.0 + x).product::<f64>()
    }
}

pub fn check_claim2(pair: &PositiveSequencePair, tol: f64) -> InequalityReport {
    InequalityReport::scalar("claim2", pair.lhs(), pair.rhs(), tol)
}

/// AM-GM over `Ω′`: returns `(Σ_{B∈Ω′} ∏_{k∈B} x_k, |Ω′|·(∏_{B∈Ω′} ∏_{k∈B} x_k)^{1/|Ω′|})`.
pub fn claim2_am_gm_bound(x: &[f64]) -> Result<(f64, f64)> {
    let n = x.len();
    if n < 3 {
        return Err(Error::OmegaPrimeEmpty);
    }
    check_n(n)?;
    if x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidSequence("x must be finite and positive"));
    }
    let omega_prime = omega_partition(n)?.omega_prime;
    let products = subset_products(x);
    let logs: Vec<f64> = x.iter().map(|v| libm::log(*v)).collect();
    let lhs = compensated_sum(omega_prime.iter().map(|s| products[s.0 as usize]));
    let log_sum = compensated_sum(
        omega_prime
            .iter()
            .flat_map(|s| s.elements().map(|k| logs[k - 1])),
    );
    let count = omega_prime.len() as f64;
    Ok((lhs, count * libm::exp(log_sum / count)))
}
