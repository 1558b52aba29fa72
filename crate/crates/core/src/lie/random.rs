//! Seeded fixtures.
//!
//! The generator is the 64-bit linear congruential recurrence
//! `s ← s·6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)`, seeded with
//! `s₀ = seed`, advanced once before the first draw. A draw maps to
//! `(s >> 11)·2⁻⁵³ ∈ [0, 1)`. These constants are part of the fixture
//! contract: any implementation using them reproduces the same elements.

use num_complex::Complex64;

use super::{exponentiate, AlgebraElement, GroupElement, GroupId};
use crate::linalg::{CMatrix, I};

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        self.state
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Anti-Hermitian traceless element X = iπ(H - tr(H)/n), where H is
/// Hermitian with entries drawn row-major (diagonal real, then re/im of
/// each strictly upper entry) uniformly from [-1, 1).
pub fn random_algebra_element(group: GroupId, seed: u64) -> AlgebraElement {
    let n = group.matrix_size();
    let mut rng = Lcg::new(seed);
    let mut h = CMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            if r == c {
                h[(r, c)] = Complex64::new(rng.next_symmetric(), 0.0);
            } else {
                let z = Complex64::new(rng.next_symmetric(), rng.next_symmetric());
                h[(r, c)] = z;
                h[(c, r)] = z.conj();
            }
        }
    }
    let tr: Complex64 = h.diagonal().iter().sum::<Complex64>() / n as f64;
    for k in 0..n {
        h[(k, k)] -= tr;
    }
    let x = h.map(|z| I * std::f64::consts::PI * z);
    AlgebraElement { matrix: x, group }
}

pub fn random_group_element(group: GroupId, seed: u64) -> GroupElement {
    exponentiate(&random_algebra_element(group, seed)).expect("random element is anti-Hermitian")
}
