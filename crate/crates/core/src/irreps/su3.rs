//! SU(3) irreps as cyclic modules inside (ℂ³)^{⊗p} ⊗ (Λ²ℂ³)^{⊗q}.
//!
//! The highest weight vector e₁^{⊗p} ⊗ (e₁∧e₂)^{⊗q} is lowered repeatedly by
//! f₁ and f₂. Candidates are orthonormalized by modified Gram–Schmidt and
//! appended breadth-first (f₁ before f₂). Every tensor index has a definite
//! weight, so candidates need only be orthogonalized against basis vectors
//! of the same weight.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{weyl_dimension, HighestWeight, Irrep};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Relative norm below which a Gram–Schmidt residual counts as dependent.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Clone, Copy)]
enum Op {
    E1,
    E2,
    F1,
    F2,
}

/// Image of a basis index of one tensor slot under a root vector (all
/// nonzero coefficients are +1 in the orthonormal bases used here).
///
/// ℂ³ basis: e₁, e₂, e₃. Λ²ℂ³ basis: e₁∧e₂, e₁∧e₃, e₂∧e₃.
fn slot_map(op: Op, wedge: bool, digit: usize) -> Option<usize> {
    match (op, wedge, digit) {
        (Op::F1, false, 0) => Some(1),
        (Op::F2, false, 1) => Some(2),
        (Op::E1, false, 1) => Some(0),
        (Op::E2, false, 2) => Some(1),
        (Op::F1, true, 1) => Some(2),
        (Op::F2, true, 0) => Some(1),
        (Op::E1, true, 2) => Some(1),
        (Op::E2, true, 1) => Some(0),
        _ => None,
    }
}

/// (h₁, h₂) weight of a slot basis vector.
fn slot_weight(wedge: bool, digit: usize) -> [i64; 2] {
    const VECTOR: [[i64; 2]; 3] = [[1, 0], [-1, 1], [0, -1]];
    const WEDGE: [[i64; 2]; 3] = [[0, 1], [1, -1], [-1, 0]];
    if wedge {
        WEDGE[digit]
    } else {
        VECTOR[digit]
    }
}

/// Weight shift (h₁, h₂) produced by a root vector.
fn root(op: Op) -> [i64; 2] {
    match op {
        Op::E1 => [2, -1],
        Op::E2 => [-1, 2],
        Op::F1 => [-2, 1],
        Op::F2 => [1, -2],
    }
}

struct TensorSpace {
    p: usize,
    slots: usize,
    len: usize,
    strides: Vec<usize>,
}

impl TensorSpace {
    fn new(p: usize, q: usize) -> Self {
        let slots = p + q;
        let strides = (0..slots).map(|s| 3usize.pow(s as u32)).collect();
        TensorSpace { p, slots, len: 3usize.pow(slots as u32), strides }
    }

    fn apply(&self, op: Op, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len];
        for (i, &x) in v.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for s in 0..self.slots {
                let stride = self.strides[s];
                let digit = (i / stride) % 3;
                if let Some(to) = slot_map(op, s >= self.p, digit) {
                    out[i + to * stride - digit * stride] += x;
                }
            }
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn build_irrep_su3(p: i64, q: i64) -> Result<Irrep> {
    if p < 0 || q < 0 {
        return Err(Error::InvalidArgument(format!("highest weight ({p},{q}) has a negative label")));
    }
    let (pu, qu) = (p as usize, q as usize);
    let hw = HighestWeight::su3(p as u32, q as u32);
    let space = TensorSpace::new(pu, qu);

    let mut highest = vec![0.0; space.len];
    highest[0] = 1.0;
    let top_weight = (0..space.slots)
        .map(|s| slot_weight(s >= pu, 0))
        .fold([0, 0], |a, w| [a[0] + w[0], a[1] + w[1]]);

    let mut basis: Vec<Vec<f64>> = vec![highest];
    let mut weights: Vec<[i64; 2]> = vec![top_weight];
    let mut by_weight: BTreeMap<[i64; 2], Vec<usize>> = BTreeMap::from([(top_weight, vec![0])]);

    let mut cursor = 0;
    while cursor < basis.len() {
        for op in [Op::F1, Op::F2] {
            let mut cand = space.apply(op, &basis[cursor]);
            let start = norm(&cand);
            if start == 0.0 {
                continue;
            }
            let r = root(op);
            let w = [weights[cursor][0] + r[0], weights[cursor][1] + r[1]];
            let peers = by_weight.get(&w).cloned().unwrap_or_default();
            // Two passes of modified Gram–Schmidt.
            for _ in 0..2 {
                for &k in &peers {
                    let c = dot(&basis[k], &cand);
                    for (x, b) in cand.iter_mut().zip(&basis[k]) {
                        *x -= c * b;
                    }
                }
            }
            // Basis vectors have unit norm, so images that vanish up to
            // roundoff are caught by the floor of 1.
            let residual = norm(&cand);
            if residual <= RANK_TOL * start.max(1.0) {
                continue;
            }
            cand.iter_mut().for_each(|x| *x /= residual);
            by_weight.entry(w).or_default().push(basis.len());
            basis.push(cand);
            weights.push(w);
        }
        cursor += 1;
    }

    let dim = basis.len();
    let expected = weyl_dimension(hw);
    if dim != expected {
        return Err(Error::Consistency(format!(
            "cyclic construction of {hw} closed at dimension {dim}, Weyl formula gives {expected}"
        )));
    }

    let mut generators = BTreeMap::new();
    for (label, op) in [("e1", Op::E1), ("f1", Op::F1), ("e2", Op::E2), ("f2", Op::F2)] {
        let mut m = CMatrix::zeros(dim, dim);
        let r = root(op);
        for (col, b) in basis.iter().enumerate() {
            let image = space.apply(op, b);
            let target = [weights[col][0] + r[0], weights[col][1] + r[1]];
            if let Some(rows) = by_weight.get(&target) {
                for &row in rows {
                    m[(row, col)] = Complex64::new(dot(&basis[row], &image), 0.0);
                }
            }
        }
        generators.insert(label.to_string(), m);
    }
    for (i, label) in ["h1", "h2"].iter().enumerate() {
        let mut m = CMatrix::zeros(dim, dim);
        for (k, w) in weights.iter().enumerate() {
            m[(k, k)] = Complex64::new(w[i] as f64, 0.0);
        }
        generators.insert(label.to_string(), m);
    }

    let irrep = Irrep {
        hw,
        dim,
        generators,
        weight_labels: weights.iter().map(|w| w.to_vec()).collect(),
    };
    irrep.validate()?;
    Ok(irrep)
}
