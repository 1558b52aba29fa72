//! Irreducible unitary representations of SU(2) and SU(3).
//!
//! An [`Irrep`] stores the images of the Chevalley generators in an
//! orthonormal weight basis. Group elements are evaluated by exponentiating
//! the represented algebra action.

mod cache;
mod su2;
mod su3;

pub use cache::IrrepCache;
pub use su2::build_irrep_su2;
pub use su3::build_irrep_su3;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{AlgebraElement, GroupElement, GroupId};
use crate::linalg::{self, CMatrix, OneParameter};

/// Tolerance for the algebraic invariants of a built irrep.
pub const IRREP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum HighestWeight {
    Su2 { two_j: u32 },
    Su3 { p: u32, q: u32 },
}

impl HighestWeight {
    pub fn su2(two_j: u32) -> Self {
        HighestWeight::Su2 { two_j }
    }

    pub fn su3(p: u32, q: u32) -> Self {
        HighestWeight::Su3 { p, q }
    }

    pub fn group(&self) -> GroupId {
        match self {
            HighestWeight::Su2 { .. } => GroupId::Su2,
            HighestWeight::Su3 { .. } => GroupId::Su3,
        }
    }

    pub fn labels(&self) -> Vec<u32> {
        match *self {
            HighestWeight::Su2 { two_j } => vec![two_j],
            HighestWeight::Su3 { p, q } => vec![p, q],
        }
    }

    /// Shell index: two_j for SU(2), p + q for SU(3).
    pub fn degree(&self) -> u32 {
        match *self {
            HighestWeight::Su2 { two_j } => two_j,
            HighestWeight::Su3 { p, q } => p + q,
        }
    }

    pub fn dim(&self) -> usize {
        weyl_dimension(*self)
    }

    /// Every highest weight of `group` with degree ≤ `max_degree`, ordered
    /// by (degree, first label).
    pub fn enumerate(group: GroupId, max_degree: u32) -> Vec<HighestWeight> {
        match group {
            GroupId::Su2 => (0..=max_degree).map(HighestWeight::su2).collect(),
            GroupId::Su3 => (0..=max_degree)
                .flat_map(|n| (0..=n).map(move |p| HighestWeight::su3(p, n - p)))
                .collect(),
        }
    }

    pub fn from_labels(group: GroupId, labels: &[i64]) -> Result<Self> {
        if let Some(bad) = labels.iter().find(|&&l| l < 0) {
            return Err(Error::InvalidArgument(format!("highest weight label {bad} is negative")));
        }
        let to_u32 = |x: i64| {
            u32::try_from(x).map_err(|_| Error::InvalidArgument(format!("label {x} out of range")))
        };
        match (group, labels) {
            (GroupId::Su2, [two_j]) => Ok(HighestWeight::su2(to_u32(*two_j)?)),
            (GroupId::Su3, [p, q]) => Ok(HighestWeight::su3(to_u32(*p)?, to_u32(*q)?)),
            _ => Err(Error::InvalidArgument(format!(
                "{group} highest weight needs {} labels, got {}",
                group.matrix_size() - 1,
                labels.len()
            ))),
        }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HighestWeight::Su2 { two_j } => write!(f, "su2({two_j})"),
            HighestWeight::Su3 { p, q } => write!(f, "su3({p},{q})"),
        }
    }
}

/// Weyl dimension formula.
pub fn weyl_dimension(hw: HighestWeight) -> usize {
    match hw {
        HighestWeight::Su2 { two_j } => two_j as usize + 1,
        HighestWeight::Su3 { p, q } => {
            let (p, q) = (p as usize, q as usize);
            (p + 1) * (q + 1) * (p + q + 2) / 2
        }
    }
}

pub fn build_irrep(hw: HighestWeight) -> Result<Irrep> {
    match hw {
        HighestWeight::Su2 { two_j } => build_irrep_su2(two_j as i64),
        HighestWeight::Su3 { p, q } => build_irrep_su3(p as i64, q as i64),
    }
}

/// Generator labels in storage order.
pub fn generator_labels(group: GroupId) -> &'static [&'static str] {
    match group {
        GroupId::Su2 => &["e", "f", "h"],
        GroupId::Su3 => &["e1", "f1", "h1", "e2", "f2", "h2"],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub hw: HighestWeight,
    pub dim: usize,
    /// Images of e, f, h (SU(2)) or e₁, f₁, h₁, e₂, f₂, h₂ (SU(3)).
    pub generators: BTreeMap<String, CMatrix>,
    /// Eigenvalues of the h generators on each basis vector.
    pub weight_labels: Vec<Vec<i64>>,
}

impl Irrep {
    pub fn group(&self) -> GroupId {
        self.hw.group()
    }

    pub fn generator(&self, label: &str) -> Result<&CMatrix> {
        self.generators.get(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            context: "irrep generator",
        })
    }

    /// Image of a (complexified) defining-representation algebra element.
    ///
    /// Every traceless matrix decomposes over the root vectors and Cartan
    /// generators; E₁₃ = [e₁, e₂] and E₃₁ = [f₂, f₁] carry the remaining roots.
    pub fn represent(&self, x: &AlgebraElement) -> Result<CMatrix> {
        if x.group() != self.group() {
            return Err(Error::OutsideSpan(format!(
                "{} element cannot act on a {} representation",
                x.group(),
                self.group()
            )));
        }
        let m = x.matrix();
        let g = |l: &str| &self.generators[l];
        let out = match self.group() {
            GroupId::Su2 => g("e") * m[(0, 1)] + g("f") * m[(1, 0)] + g("h") * m[(0, 0)],
            GroupId::Su3 => {
                let e13 = linalg::commutator(g("e1"), g("e2"));
                let e31 = linalg::commutator(g("f2"), g("f1"));
                g("e1") * m[(0, 1)]
                    + g("e2") * m[(1, 2)]
                    + g("f1") * m[(1, 0)]
                    + g("f2") * m[(2, 1)]
                    + e13 * m[(0, 2)]
                    + e31 * m[(2, 0)]
                    + g("h1") * m[(0, 0)]
                    - g("h2") * m[(2, 2)]
            }
        };
        Ok(out)
    }

    /// σ(∏ exp(t_k X_k)) with each X_k in the compact real form.
    pub fn group_matrix(&self, factors: &[(f64, AlgebraElement)]) -> Result<CMatrix> {
        let mut acc = linalg::identity(self.dim);
        for (t, x) in factors {
            if !x.is_real_form() {
                return Err(Error::OutsideSpan(
                    "group factors must be anti-Hermitian (compact real form)".into(),
                ));
            }
            let rep_x = self.represent(x)?;
            acc *= OneParameter::new(&rep_x).exp(*t);
        }
        Ok(acc)
    }

    /// σ(g) for an arbitrary group element, through its logarithm.
    pub fn group_matrix_at(&self, g: &GroupElement) -> Result<CMatrix> {
        self.group_matrix(&[(1.0, g.log())])
    }

    pub fn character_value(&self, factors: &[(f64, AlgebraElement)]) -> Result<Complex64> {
        Ok(linalg::trace(&self.group_matrix(factors)?))
    }

    /// Checks every structural invariant; returns the largest defect seen.
    pub fn validate(&self) -> Result<f64> {
        let expected = weyl_dimension(self.hw);
        if self.dim != expected {
            return Err(Error::Consistency(format!(
                "{} has dimension {} but the Weyl formula gives {expected}",
                self.hw, self.dim
            )));
        }
        if self.weight_labels.len() != self.dim {
            return Err(Error::Consistency("one weight label per basis vector required".into()));
        }
        for label in generator_labels(self.group()) {
            let m = self.generator(label)?;
            if m.nrows() != self.dim || m.ncols() != self.dim {
                return Err(Error::Consistency(format!("generator {label} has wrong shape")));
            }
        }
        let mut worst: f64 = 0.0;
        let check = |what: String, defect: f64, worst: &mut f64| -> Result<()> {
            *worst = worst.max(defect);
            if defect > IRREP_TOL {
                return Err(Error::Consistency(format!("{what} violated by {defect:.3e}")));
            }
            Ok(())
        };
        let g = |l: &str| &self.generators[l];
        let cartan: &[[i64; 2]] = &[[2, -1], [-1, 2]];
        let ranks: Vec<usize> = match self.group() {
            GroupId::Su2 => vec![0],
            GroupId::Su3 => vec![0, 1],
        };
        let name = |base: &str, i: usize| match self.group() {
            GroupId::Su2 => base.to_string(),
            GroupId::Su3 => format!("{base}{}", i + 1),
        };
        for &i in &ranks {
            let (hi, ei, fi) = (g(&name("h", i)), g(&name("e", i)), g(&name("f", i)));
            check(format!("f{i} = e{i}†"), linalg::max_abs(&(fi - ei.adjoint())), &mut worst)?;
            for &j in &ranks {
                let (ej, fj) = (g(&name("e", j)), g(&name("f", j)));
                let a = cartan[i][j] as f64;
                let he = linalg::commutator(hi, ej) - ej * Complex64::new(a, 0.0);
                let hf = linalg::commutator(hi, fj) + fj * Complex64::new(a, 0.0);
                let ef = if i == j {
                    linalg::commutator(ei, fj) - hi
                } else {
                    linalg::commutator(ei, fj)
                };
                check(format!("[h{i},e{j}]"), linalg::max_abs(&he), &mut worst)?;
                check(format!("[h{i},f{j}]"), linalg::max_abs(&hf), &mut worst)?;
                check(format!("[e{i},f{j}]"), linalg::max_abs(&ef), &mut worst)?;
                check(
                    format!("[h{i},h{j}]"),
                    linalg::max_abs(&linalg::commutator(hi, g(&name("h", j)))),
                    &mut worst,
                )?;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let expected = if r == c { self.weight_labels[r][i] as f64 } else { 0.0 };
                    let d = (hi[(r, c)] - Complex64::new(expected, 0.0)).norm();
                    check(format!("h{i} diagonal weights"), d, &mut worst)?;
                }
            }
        }
        Ok(worst)
    }
}
