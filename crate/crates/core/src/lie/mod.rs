//! Matrix Lie algebra and group primitives for SU(2) and SU(3).
//!
//! Algebra elements are stored as traceless complex matrices in the defining
//! representation. The compact real form consists of the anti-Hermitian ones;
//! sl₂-triples live in the complexification.

mod quadrature;
mod random;

pub use quadrature::{haar_quadrature, NodeCoords, QuadGroup, QuadratureRule};
pub use random::{random_algebra_element, random_group_element, Lcg};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, OneParameter, I, ONE};

pub const TRACE_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupId {
    Su2,
    Su3,
}

impl GroupId {
    pub fn matrix_size(self) -> usize {
        match self {
            GroupId::Su2 => 2,
            GroupId::Su3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupId::Su2 => "su2",
            GroupId::Su3 => "su3",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su2" => Ok(GroupId::Su2),
            "su3" => Ok(GroupId::Su3),
            _ => Err(Error::UnknownLabel { label: s.to_string(), context: "group" }),
        }
    }
}

/// A traceless matrix in the defining representation of su(2) or su(3),
/// possibly complexified.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    matrix: CMatrix,
    group: GroupId,
}

impl AlgebraElement {
    pub fn new(matrix: CMatrix, group: GroupId) -> Result<Self> {
        let n = group.matrix_size();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{group} algebra element must be {n}x{n}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let tr = linalg::trace(&matrix).norm();
        if tr > TRACE_TOL {
            return Err(Error::OutsideSpan(format!("trace {tr:.3e} is not zero")));
        }
        Ok(AlgebraElement { matrix, group })
    }

    pub fn zero(group: GroupId) -> Self {
        let n = group.matrix_size();
        AlgebraElement { matrix: CMatrix::zeros(n, n), group }
    }

    /// Elementary matrix E_{row,col} (zero-indexed).
    pub fn elementary(group: GroupId, row: usize, col: usize) -> Self {
        assert_ne!(row, col, "diagonal elementary matrices are not traceless");
        let n = group.matrix_size();
        let mut m = CMatrix::zeros(n, n);
        m[(row, col)] = ONE;
        AlgebraElement { matrix: m, group }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    /// Anti-Hermitian, i.e. an element of the compact real form.
    pub fn is_real_form(&self) -> bool {
        linalg::anti_hermiticity_defect(&self.matrix) <= TRACE_TOL
    }

    pub fn scale(&self, s: Complex64) -> Self {
        AlgebraElement { matrix: self.matrix.map(|z| z * s), group: self.group }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        AlgebraElement { matrix: linalg::commutator(&self.matrix, &other.matrix), group: self.group }
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { matrix: &self.matrix + &rhs.matrix, group: self.group }
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { matrix: &self.matrix - &rhs.matrix, group: self.group }
    }
}

/// Unitary, determinant-one matrix in the defining representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
    group: GroupId,
}

impl GroupElement {
    pub fn new(matrix: CMatrix, group: GroupId) -> Result<Self> {
        let n = group.matrix_size();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!("{group} element must be {n}x{n}")));
        }
        let defect = linalg::unitarity_defect(&matrix);
        if defect > UNITARY_TOL {
            return Err(Error::Consistency(format!("matrix is not unitary (defect {defect:.3e})")));
        }
        let det = matrix.determinant();
        if (det - ONE).norm() > UNITARY_TOL {
            return Err(Error::Consistency(format!("determinant {det} is not 1")));
        }
        Ok(GroupElement { matrix, group })
    }

    pub fn identity(group: GroupId) -> Self {
        let n = group.matrix_size();
        GroupElement { matrix: linalg::identity(n), group }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn inverse(&self) -> Self {
        GroupElement { matrix: self.matrix.adjoint(), group: self.group }
    }

    pub fn compose(&self, other: &Self) -> Self {
        GroupElement { matrix: &self.matrix * &other.matrix, group: self.group }
    }

    /// An anti-Hermitian traceless X with exp(X) = self.
    pub fn log(&self) -> AlgebraElement {
        let n = self.matrix.nrows();
        let schur = self.matrix.clone().schur();
        let (q, t) = schur.unpack();
        let mut angles: Vec<f64> = (0..n).map(|k| t[(k, k)].arg()).collect();
        // Shift one branch so the logarithm is traceless.
        let total: f64 = angles.iter().sum();
        let wraps = (total / (2.0 * std::f64::consts::PI)).round();
        if wraps != 0.0 {
            let k = if wraps > 0.0 {
                (0..n).max_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap()
            } else {
                (0..n).min_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap()
            };
            angles[k] -= wraps * 2.0 * std::f64::consts::PI;
        }
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            angles.iter().map(|&a| I * a),
        ));
        let x = &q * d * q.adjoint();
        let x = (&x - x.adjoint()).scale(0.5);
        let tr = linalg::trace(&x) / n as f64;
        let x = x - linalg::identity(n) * tr;
        AlgebraElement { matrix: x, group: self.group }
    }
}

/// Complexified sl₂-triple: [h,e] = 2e, [h,f] = -2f, [e,f] = h, f = e†.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub e: AlgebraElement,
    pub f: AlgebraElement,
    pub h: AlgebraElement,
}

impl Sl2Triple {
    pub fn new(e: AlgebraElement, f: AlgebraElement, h: AlgebraElement) -> Result<Self> {
        let triple = Sl2Triple { e, f, h };
        let defect = triple.relation_defect();
        if defect > TRACE_TOL {
            return Err(Error::Consistency(format!("sl2 relations violated by {defect:.3e}")));
        }
        let adj = linalg::max_abs(&(triple.f.matrix() - triple.e.matrix().adjoint()));
        if adj > TRACE_TOL {
            return Err(Error::Consistency(format!("f differs from e† by {adj:.3e}")));
        }
        Ok(triple)
    }

    /// Largest entrywise violation of the three bracket relations.
    pub fn relation_defect(&self) -> f64 {
        let two = Complex64::new(2.0, 0.0);
        let he = &self.h.bracket(&self.e) - &self.e.scale(two);
        let hf = &self.h.bracket(&self.f) + &self.f.scale(two);
        let ef = &self.e.bracket(&self.f) - &self.h;
        [he, hf, ef].iter().map(|m| linalg::max_abs(m.matrix())).fold(0.0, f64::max)
    }

    /// Compact generators -iσ_z/2, -iσ_y/2, -iσ_x/2 realized through this triple.
    pub fn compact_basis(&self) -> [AlgebraElement; 3] {
        let half = Complex64::new(0.5, 0.0);
        let z = self.h.scale(-I * half);
        let y = (&self.e - &self.f).scale(-half);
        let x = (&self.e + &self.f).scale(-I * half);
        [z, y, x]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleLabel {
    UpperLeft,
    LowerRight,
    Whole,
}

impl TripleLabel {
    pub fn name(self) -> &'static str {
        match self {
            TripleLabel::UpperLeft => "upper_left",
            TripleLabel::LowerRight => "lower_right",
            TripleLabel::Whole => "whole",
        }
    }

    pub fn group(self) -> GroupId {
        match self {
            TripleLabel::Whole => GroupId::Su2,
            _ => GroupId::Su3,
        }
    }
}

impl fmt::Display for TripleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TripleLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper_left" => Ok(TripleLabel::UpperLeft),
            "lower_right" => Ok(TripleLabel::LowerRight),
            "whole" => Ok(TripleLabel::Whole),
            _ => Err(Error::UnknownLabel { label: s.to_string(), context: "sl2 triple" }),
        }
    }
}

fn diag(group: GroupId, entries: &[f64]) -> AlgebraElement {
    let m = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        entries.len(),
        entries.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    AlgebraElement { matrix: m, group }
}

fn corner_triple(group: GroupId, a: usize, b: usize) -> Sl2Triple {
    let n = group.matrix_size();
    let mut h = vec![0.0; n];
    h[a] = 1.0;
    h[b] = -1.0;
    Sl2Triple {
        e: AlgebraElement::elementary(group, a, b),
        f: AlgebraElement::elementary(group, b, a),
        h: diag(group, &h),
    }
}

/// The standard triples available for a group: `whole` for SU(2), the two
/// corner embeddings for SU(3).
pub fn standard_sl2_triples(group: GroupId) -> BTreeMap<TripleLabel, Sl2Triple> {
    let mut out = BTreeMap::new();
    match group {
        GroupId::Su2 => {
            out.insert(TripleLabel::Whole, corner_triple(group, 0, 1));
        }
        GroupId::Su3 => {
            out.insert(TripleLabel::UpperLeft, corner_triple(group, 0, 1));
            out.insert(TripleLabel::LowerRight, corner_triple(group, 1, 2));
        }
    }
    out
}

pub fn standard_sl2_triple(group: GroupId, label: TripleLabel) -> Result<Sl2Triple> {
    standard_sl2_triples(group).remove(&label).ok_or_else(|| Error::UnknownLabel {
        label: label.name().to_string(),
        context: if group == GroupId::Su2 { "su2 triple" } else { "su3 triple" },
    })
}

/// exp(x) for anti-Hermitian x, via the eigendecomposition of i·x.
pub fn exponentiate(x: &AlgebraElement) -> Result<GroupElement> {
    let defect = linalg::anti_hermiticity_defect(x.matrix());
    if defect > TRACE_TOL {
        return Err(Error::NotAntiHermitian { deviation: defect });
    }
    let u = OneParameter::new(x.matrix()).exp(1.0);
    Ok(GroupElement { matrix: u, group: x.group })
}

/// Product ∏ exp(t_k X_k) in the defining representation.
pub fn exp_product(group: GroupId, factors: &[(f64, AlgebraElement)]) -> Result<GroupElement> {
    let mut g = GroupElement::identity(group);
    for (t, x) in factors {
        let u = exponentiate(&x.scale(Complex64::new(*t, 0.0)))?;
        g = g.compose(&u);
    }
    Ok(g)
}

#[cfg(test)]
pub(crate) fn complex(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
