//! Subgroup isotypical projections on an ambient irrep.
//!
//! Two independent routes produce the projection onto the π-isotypical
//! subspace of an embedded SU(2) (or torus): the spectral projection of the
//! embedded Casimir, and the character integral dim(π)∫ χ̄_π(k) σ(k) dk
//! evaluated by exact Haar quadrature on the subgroup.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::irreps::{HighestWeight, Irrep};
use crate::lie::{
    haar_quadrature, standard_sl2_triple, AlgebraElement, GroupId, NodeCoords, QuadGroup,
    QuadratureRule, Sl2Triple, TripleLabel,
};
use crate::linalg::{self, CMatrix, OneParameter};

/// Eigenvalue window around j(j+1) (or around a torus weight).
pub const SPECTRAL_WINDOW: f64 = 1e-6;

/// Named subgroup embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingLabel {
    UpperLeft,
    LowerRight,
    Whole,
    /// Maximal torus of SU(2), generated by i·h.
    Torus,
}

impl EmbeddingLabel {
    pub fn ambient_group(self) -> GroupId {
        match self {
            EmbeddingLabel::UpperLeft | EmbeddingLabel::LowerRight => GroupId::Su3,
            EmbeddingLabel::Whole | EmbeddingLabel::Torus => GroupId::Su2,
        }
    }

    pub fn kind(self) -> SubgroupKind {
        match self {
            EmbeddingLabel::Torus => SubgroupKind::Torus,
            _ => SubgroupKind::Sl2Triple,
        }
    }

    pub fn quad_group(self) -> QuadGroup {
        match self.kind() {
            SubgroupKind::Torus => QuadGroup::Torus,
            SubgroupKind::Sl2Triple => QuadGroup::Su2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EmbeddingLabel::UpperLeft => "upper_left",
            EmbeddingLabel::LowerRight => "lower_right",
            EmbeddingLabel::Whole => "whole",
            EmbeddingLabel::Torus => "torus",
        }
    }

    fn triple_label(self) -> Option<TripleLabel> {
        match self {
            EmbeddingLabel::UpperLeft => Some(TripleLabel::UpperLeft),
            EmbeddingLabel::LowerRight => Some(TripleLabel::LowerRight),
            EmbeddingLabel::Whole | EmbeddingLabel::Torus => Some(TripleLabel::Whole),
        }
    }
}

impl fmt::Display for EmbeddingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EmbeddingLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper_left" => Ok(EmbeddingLabel::UpperLeft),
            "lower_right" => Ok(EmbeddingLabel::LowerRight),
            "whole" => Ok(EmbeddingLabel::Whole),
            "torus" => Ok(EmbeddingLabel::Torus),
            _ => Err(Error::UnknownLabel { label: s.to_string(), context: "embedding" }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupKind {
    Sl2Triple,
    Torus,
}

/// An irreducible type of the embedded subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupType {
    /// Spin two_j/2 of an embedded SU(2).
    Spin(u32),
    /// Character diag(z, z̄) ↦ z^m of the torus.
    Weight(i64),
}

impl SubgroupType {
    pub const TRIVIAL_SPIN: SubgroupType = SubgroupType::Spin(0);

    pub fn dim(self) -> usize {
        match self {
            SubgroupType::Spin(two_j) => two_j as usize + 1,
            SubgroupType::Weight(_) => 1,
        }
    }

    pub fn kind(self) -> SubgroupKind {
        match self {
            SubgroupType::Spin(_) => SubgroupKind::Sl2Triple,
            SubgroupType::Weight(_) => SubgroupKind::Torus,
        }
    }

    /// Trivial type for a subgroup kind.
    pub fn trivial(kind: SubgroupKind) -> Self {
        match kind {
            SubgroupKind::Sl2Triple => SubgroupType::Spin(0),
            SubgroupKind::Torus => SubgroupType::Weight(0),
        }
    }

    /// Index contributing to the quadrature degree: 2j or |m|.
    fn band(self) -> usize {
        match self {
            SubgroupType::Spin(two_j) => two_j as usize,
            SubgroupType::Weight(m) => m.unsigned_abs() as usize,
        }
    }

    pub fn as_highest_weight(self) -> Option<HighestWeight> {
        match self {
            SubgroupType::Spin(two_j) => Some(HighestWeight::su2(two_j)),
            SubgroupType::Weight(_) => None,
        }
    }

    /// Complex conjugate of the character at a subgroup node.
    pub fn conj_character(self, node: &crate::lie::GroupElement) -> Complex64 {
        match self {
            SubgroupType::Spin(two_j) => Complex64::new(spin_character(two_j, node), 0.0),
            SubgroupType::Weight(m) => {
                let z = node.matrix()[(0, 0)];
                Complex64::from_polar(1.0, -(m as f64) * z.arg())
            }
        }
    }
}

impl fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupType::Spin(two_j) if two_j % 2 == 0 => write!(f, "spin{}", two_j / 2),
            SubgroupType::Spin(two_j) => write!(f, "spin{two_j}/2"),
            SubgroupType::Weight(m) => write!(f, "weight{m}"),
        }
    }
}

/// χ_j(g) = U_{2j}(tr g / 2) for g ∈ SU(2).
pub fn spin_character(two_j: u32, g: &crate::lie::GroupElement) -> f64 {
    let x = linalg::trace(g.matrix()).re / 2.0;
    let (mut u0, mut u1) = (1.0, 2.0 * x);
    if two_j == 0 {
        return 1.0;
    }
    for _ in 1..two_j {
        let u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    u1
}

/// An embedded SU(2) or torus realized on an ambient irrep.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding<'a> {
    pub ambient: &'a Irrep,
    pub kind: SubgroupKind,
    pub label: Option<EmbeddingLabel>,
    /// Defining-representation generator h (torus: the generator of i·h).
    triple: Sl2Triple,
    e: CMatrix,
    f: CMatrix,
    h: CMatrix,
}

impl<'a> SubgroupEmbedding<'a> {
    pub fn sl2(ambient: &'a Irrep, triple: &Sl2Triple) -> Result<Self> {
        let emb = SubgroupEmbedding {
            ambient,
            kind: SubgroupKind::Sl2Triple,
            label: None,
            triple: triple.clone(),
            e: ambient.represent(&triple.e)?,
            f: ambient.represent(&triple.f)?,
            h: ambient.represent(&triple.h)?,
        };
        emb.check()?;
        Ok(emb)
    }

    /// Torus exp(t·i·h) for the h of `triple`.
    pub fn torus(ambient: &'a Irrep, triple: &Sl2Triple) -> Result<Self> {
        let mut emb = Self::sl2(ambient, triple)?;
        emb.kind = SubgroupKind::Torus;
        Ok(emb)
    }

    pub fn standard(ambient: &'a Irrep, label: EmbeddingLabel) -> Result<Self> {
        if ambient.group() != label.ambient_group() {
            return Err(Error::InvalidArgument(format!(
                "embedding {label} needs an {} ambient, got {}",
                label.ambient_group(),
                ambient.hw
            )));
        }
        let triple = standard_sl2_triple(label.ambient_group(), label.triple_label().unwrap())?;
        let mut emb = match label.kind() {
            SubgroupKind::Sl2Triple => Self::sl2(ambient, &triple)?,
            SubgroupKind::Torus => Self::torus(ambient, &triple)?,
        };
        emb.label = Some(label);
        Ok(emb)
    }

    fn check(&self) -> Result<()> {
        let two = Complex64::new(2.0, 0.0);
        let defects = [
            linalg::max_abs(&(linalg::commutator(&self.h, &self.e) - &self.e * two)),
            linalg::max_abs(&(linalg::commutator(&self.h, &self.f) + &self.f * two)),
            linalg::max_abs(&(linalg::commutator(&self.e, &self.f) - &self.h)),
            linalg::max_abs(&(&self.f - self.e.adjoint())),
        ];
        let worst = defects.iter().cloned().fold(0.0, f64::max);
        if worst > 1e-10 {
            return Err(Error::Consistency(format!("embedded sl2 relations violated by {worst:.3e}")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim
    }

    pub fn e(&self) -> &CMatrix {
        &self.e
    }

    pub fn f(&self) -> &CMatrix {
        &self.f
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    /// Represented generators relevant to the subgroup: (e, f, h), or h alone.
    pub fn action(&self) -> Vec<&CMatrix> {
        match self.kind {
            SubgroupKind::Sl2Triple => vec![&self.e, &self.f, &self.h],
            SubgroupKind::Torus => vec![&self.h],
        }
    }

    /// Largest |weight| of the embedded h on the ambient space.
    pub fn max_weight(&self) -> usize {
        let eig = linalg::hermitian_eigen(&self.h);
        eig.values.iter().map(|v| v.abs().round() as usize).max().unwrap_or(0)
    }

    /// Quadrature degree needed to project exactly onto `pi`.
    pub fn required_degree(&self, pi: SubgroupType) -> usize {
        self.max_weight() + pi.band()
    }

    /// Σ_n w_n c_n σ(ι(k_n)) over the nodes of a subgroup rule.
    ///
    /// Euler nodes factor as exp(φZ) exp(θY) exp(ψZ) with Z = dσ(-ih/2) and
    /// Y = dσ(-(e-f)/2); the sum is accumulated in the eigenbasis of Z.
    pub fn integrate<C>(&self, rule: &QuadratureRule, coefficient: C) -> Result<CMatrix>
    where
        C: Fn(usize) -> Complex64,
    {
        let expected = match self.kind {
            SubgroupKind::Sl2Triple => QuadGroup::Su2,
            SubgroupKind::Torus => QuadGroup::Torus,
        };
        if rule.group != expected {
            return Err(Error::InvalidArgument(format!(
                "a {} rule cannot integrate over this subgroup",
                rule.group
            )));
        }
        let n = self.dim();
        let [z, y, _] = self.triple.compact_basis();
        match self.kind {
            SubgroupKind::Torus => {
                // t(α) = exp(α·ih) = exp(-2α Z).
                let gen = self.ambient.represent(&z)?;
                let one = OneParameter::new(&gen);
                let mut acc = vec![Complex64::new(0.0, 0.0); n];
                for (k, coords) in rule.coords.iter().enumerate() {
                    let NodeCoords::Torus { angle } = *coords else {
                        return Err(Error::InvalidArgument("torus rule with Euler node".into()));
                    };
                    let c = coefficient(k) * rule.weights[k];
                    for (a, ph) in one.phases(-2.0 * angle).iter().enumerate() {
                        acc[a] += c * ph;
                    }
                }
                let basis = one.basis();
                let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(acc));
                Ok(basis * d * basis.adjoint())
            }
            SubgroupKind::Sl2Triple => {
                let zgen = OneParameter::new(&self.ambient.represent(&z)?);
                let ygen = OneParameter::new(&self.ambient.represent(&y)?);
                let vz = zgen.basis();
                let mut acc = CMatrix::zeros(n, n);
                let mut cached: Option<(f64, CMatrix)> = None;
                for (k, coords) in rule.coords.iter().enumerate() {
                    let NodeCoords::Euler { phi, theta, psi } = *coords else {
                        return Err(Error::InvalidArgument("su2 rule with torus node".into()));
                    };
                    let c = coefficient(k) * rule.weights[k];
                    if c == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    if cached.as_ref().map(|(t, _)| *t != theta).unwrap_or(true) {
                        let middle = if zgen.is_diagonal() {
                            ygen.exp(theta)
                        } else {
                            vz.adjoint() * ygen.exp(theta) * vz
                        };
                        cached = Some((theta, middle));
                    }
                    let middle = &cached.as_ref().unwrap().1;
                    let left = zgen.phases(phi);
                    let right = zgen.phases(psi);
                    for b in 0..n {
                        let cb = c * right[b];
                        for a in 0..n {
                            acc[(a, b)] += left[a] * middle[(a, b)] * cb;
                        }
                    }
                }
                if zgen.is_diagonal() {
                    Ok(acc)
                } else {
                    Ok(vz * acc * vz.adjoint())
                }
            }
        }
    }

    /// σ(ι(k)) for a single node of a subgroup rule.
    pub fn node_matrix(&self, coords: &NodeCoords) -> Result<CMatrix> {
        let [z, y, _] = self.triple.compact_basis();
        let rep = |x: &AlgebraElement, t: f64| -> Result<CMatrix> {
            Ok(OneParameter::new(&self.ambient.represent(x)?).exp(t))
        };
        match *coords {
            NodeCoords::Euler { phi, theta, psi } => {
                Ok(rep(&z, phi)? * rep(&y, theta)? * rep(&z, psi)?)
            }
            NodeCoords::Torus { angle } => rep(&z, -2.0 * angle),
        }
    }

    /// ½(ef + fe) + ¼h² in the represented action.
    pub fn casimir_matrix(&self) -> Result<CMatrix> {
        if self.kind != SubgroupKind::Sl2Triple {
            return Err(Error::InvalidArgument("the torus has no Casimir; use h directly".into()));
        }
        let half = Complex64::new(0.5, 0.0);
        let quarter = Complex64::new(0.25, 0.0);
        let c = (&self.e * &self.f + &self.f * &self.e) * half + &self.h * &self.h * quarter;
        Ok((&c + c.adjoint()) * half)
    }

    fn check_type(&self, pi: SubgroupType) -> Result<()> {
        if pi.kind() != self.kind {
            return Err(Error::InvalidArgument(format!("type {pi} does not belong to this subgroup")));
        }
        Ok(())
    }

    /// Spectral projection of the Casimir (or of h for the torus).
    pub fn isotypic_projection(&self, pi: SubgroupType) -> Result<IsotypicProjection> {
        self.check_type(pi)?;
        let (operator, target) = match pi {
            SubgroupType::Spin(two_j) => {
                let j = two_j as f64 / 2.0;
                (self.casimir_matrix()?, j * (j + 1.0))
            }
            SubgroupType::Weight(m) => (self.h.clone(), m as f64),
        };
        let eig = linalg::hermitian_eigen(&operator);
        let selected: Vec<usize> = (0..eig.values.len())
            .filter(|&k| (eig.values[k] - target).abs() <= SPECTRAL_WINDOW)
            .collect();
        let matrix = linalg::column_projector(&eig.vectors, &selected);
        Ok(IsotypicProjection { matrix, subgroup_type: pi, ambient_hw: self.ambient.hw })
    }

    /// dim(π) ∫ χ̄_π(k) σ(k) dk by subgroup quadrature.
    pub fn isotypic_projection_by_character(
        &self,
        pi: SubgroupType,
        rule: &QuadratureRule,
    ) -> Result<IsotypicProjection> {
        self.check_type(pi)?;
        let need = self.required_degree(pi);
        if rule.degree < need {
            return Err(Error::InsufficientQuadrature { have: rule.degree, need });
        }
        let scale = pi.dim() as f64;
        let p = self.integrate(rule, |k| pi.conj_character(&rule.nodes[k]) * scale)?;
        let matrix = (&p + p.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(IsotypicProjection { matrix, subgroup_type: pi, ambient_hw: self.ambient.hw })
    }

    /// Convenience: builds the minimal exact rule for `pi`.
    pub fn isotypic_projection_by_character_auto(&self, pi: SubgroupType) -> Result<IsotypicProjection> {
        let group = match self.kind {
            SubgroupKind::Sl2Triple => QuadGroup::Su2,
            SubgroupKind::Torus => QuadGroup::Torus,
        };
        let rule = haar_quadrature(group, self.required_degree(pi) as i64)?;
        self.isotypic_projection_by_character(pi, &rule)
    }

    /// Coefficients expressing the embedded h in the Cartan generators, so
    /// that its eigenvalue on a basis vector is Σ c_i · weight_i.
    fn cartan_coefficients(&self) -> Result<Vec<i64>> {
        let h = self.triple.h.matrix();
        if !linalg::is_diagonal(h) {
            return Err(Error::InvalidArgument("embedded h is not in the diagonal Cartan".into()));
        }
        let coeffs = match self.ambient.group() {
            GroupId::Su2 => vec![h[(0, 0)].re],
            GroupId::Su3 => vec![h[(0, 0)].re, -h[(2, 2)].re],
        };
        coeffs
            .iter()
            .map(|&c| {
                if (c - c.round()).abs() > 1e-12 {
                    Err(Error::InvalidArgument("embedded h has non-integral weights".into()))
                } else {
                    Ok(c.round() as i64)
                }
            })
            .collect()
    }

    /// Embedded-h weight of every ambient basis vector, from the weight labels.
    pub fn restricted_weights(&self) -> Result<Vec<i64>> {
        let coeffs = self.cartan_coefficients()?;
        Ok(self
            .ambient
            .weight_labels
            .iter()
            .map(|w| w.iter().zip(&coeffs).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Multiplicities of subgroup types, by weight counting alone.
    ///
    /// Spin j occurs count(2j) − count(2j+2) times; a torus weight occurs
    /// count(m) times.
    pub fn branching_multiplicities(&self) -> Result<BranchingTable> {
        let weights = self.restricted_weights()?;
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for w in weights {
            *counts.entry(w).or_default() += 1;
        }
        let mut table = BTreeMap::new();
        match self.kind {
            SubgroupKind::Torus => {
                for (&w, &c) in &counts {
                    table.insert(SubgroupType::Weight(w), c);
                }
            }
            SubgroupKind::Sl2Triple => {
                let top = counts.keys().cloned().max().unwrap_or(0).max(0);
                for two_j in 0..=top {
                    let here = counts.get(&two_j).copied().unwrap_or(0);
                    let above = counts.get(&(two_j + 2)).copied().unwrap_or(0);
                    if here > above {
                        table.insert(SubgroupType::Spin(two_j as u32), here - above);
                    }
                }
            }
        }
        Ok(BranchingTable { multiplicities: table })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingTable {
    pub multiplicities: BTreeMap<SubgroupType, usize>,
}

impl BranchingTable {
    pub fn multiplicity(&self, pi: SubgroupType) -> usize {
        self.multiplicities.get(&pi).copied().unwrap_or(0)
    }

    /// Σ multiplicity·dim, which must equal the ambient dimension.
    pub fn total_dim(&self) -> usize {
        self.multiplicities.iter().map(|(pi, m)| pi.dim() * m).sum()
    }

    pub fn occurring(&self) -> impl Iterator<Item = SubgroupType> + '_ {
        self.multiplicities.keys().copied()
    }
}

/// Orthogonal projection onto one subgroup-isotypical subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicProjection {
    pub matrix: CMatrix,
    pub subgroup_type: SubgroupType,
    pub ambient_hw: HighestWeight,
}

/// Defects of the projection invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionDefects {
    pub idempotency: f64,
    pub hermiticity: f64,
    pub commutation: f64,
}

impl IsotypicProjection {
    pub fn trace(&self) -> f64 {
        linalg::trace(&self.matrix).re
    }

    /// Rank from the trace; errors if the trace is not within 1e-6 of an integer.
    pub fn rank(&self) -> Result<usize> {
        let t = self.trace();
        let r = t.round();
        if (t - r).abs() > 1e-6 || r < 0.0 {
            return Err(Error::Consistency(format!("projection trace {t} is not integral")));
        }
        Ok(r as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.trace() < 0.5
    }

    pub fn defects(&self, embedding: &SubgroupEmbedding<'_>) -> ProjectionDefects {
        let p = &self.matrix;
        ProjectionDefects {
            idempotency: linalg::op_norm(&(p * p - p)),
            hermiticity: linalg::op_norm(&(p - p.adjoint())),
            commutation: embedding
                .action()
                .iter()
                .map(|x| linalg::op_norm(&linalg::commutator(p, x)))
                .fold(0.0, f64::max),
        }
    }
}

/// sup{|⟨ξ₁, ξ₂⟩| : ξⱼ ∈ Hⱼ, ‖ξⱼ‖ ≤ 1} = σ_max(P₁P₂); zero for an empty subspace.
pub fn subspace_inner_product(p1: &IsotypicProjection, p2: &IsotypicProjection) -> Result<f64> {
    if p1.ambient_hw != p2.ambient_hw || p1.matrix.shape() != p2.matrix.shape() {
        return Err(Error::DimensionMismatch(format!(
            "projections live on {} and {}",
            p1.ambient_hw, p2.ambient_hw
        )));
    }
    if p1.is_zero() || p2.is_zero() {
        return Ok(0.0);
    }
    Ok(linalg::op_norm(&(&p1.matrix * &p2.matrix)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::{build_irrep_su2, build_irrep_su3};

    fn sorted_eigs(m: &CMatrix) -> Vec<f64> {
        linalg::hermitian_eigen(m).values
    }

    #[test]
    fn casimir_spectrum_on_fundamental() {
        let rep = build_irrep_su3(1, 0).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let eigs = sorted_eigs(&emb.casimir_matrix().unwrap());
        let expected = [0.0, 0.75, 0.75];
        for (a, b) in eigs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn casimir_spectrum_on_adjoint() {
        let rep = build_irrep_su3(1, 1).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let eigs = sorted_eigs(&emb.casimir_matrix().unwrap());
        let expected = [0.0, 0.75, 0.75, 0.75, 0.75, 2.0, 2.0, 2.0];
        for (a, b) in eigs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{eigs:?}");
        }
    }

    #[test]
    fn casimir_kernel_is_annihilated_by_triple() {
        let rep = build_irrep_su3(2, 1).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::LowerRight).unwrap();
        let p0 = emb.isotypic_projection(SubgroupType::Spin(0)).unwrap();
        for x in emb.action() {
            assert!(linalg::op_norm(&(x * &p0.matrix)) < 1e-10);
        }
    }

    #[test]
    fn torus_has_no_casimir() {
        let rep = build_irrep_su2(2).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::Torus).unwrap();
        assert!(emb.casimir_matrix().is_err());
    }

    #[test]
    fn trivial_lines_in_fundamental() {
        let rep = build_irrep_su3(1, 0).unwrap();
        for (label, axis) in [(EmbeddingLabel::UpperLeft, 2), (EmbeddingLabel::LowerRight, 0)] {
            let emb = SubgroupEmbedding::standard(&rep, label).unwrap();
            let p = emb.isotypic_projection(SubgroupType::Spin(0)).unwrap();
            assert_eq!(p.rank().unwrap(), 1);
            let mut expected = CMatrix::zeros(3, 3);
            expected[(axis, axis)] = Complex64::new(1.0, 0.0);
            assert!(linalg::max_abs(&(&p.matrix - expected)) < 1e-12);
        }
    }

    #[test]
    fn completeness() {
        let rep = build_irrep_su3(2, 2).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let table = emb.branching_multiplicities().unwrap();
        let sum = table
            .occurring()
            .map(|pi| emb.isotypic_projection(pi).unwrap().matrix)
            .fold(CMatrix::zeros(27, 27), |a, b| a + b);
        assert!(linalg::op_norm(&(sum - linalg::identity(27))) < 1e-9);
    }

    #[test]
    fn branching_by_weight_counting() {
        let rep = build_irrep_su3(1, 0).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let t = emb.branching_multiplicities().unwrap();
        assert_eq!(t.multiplicities, BTreeMap::from([(SubgroupType::Spin(0), 1), (SubgroupType::Spin(1), 1)]));

        let rep = build_irrep_su3(1, 1).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let t = emb.branching_multiplicities().unwrap();
        assert_eq!(
            t.multiplicities,
            BTreeMap::from([(SubgroupType::Spin(0), 1), (SubgroupType::Spin(1), 2), (SubgroupType::Spin(2), 1)])
        );
        assert_eq!(t.total_dim(), 8);
    }

    #[test]
    fn character_route_agrees_on_fundamental() {
        let rep = build_irrep_su3(1, 0).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let half = SubgroupType::Spin(1);
        let spectral = emb.isotypic_projection(half).unwrap();
        let quad = emb.isotypic_projection_by_character_auto(half).unwrap();
        assert!(linalg::op_norm(&(&spectral.matrix - &quad.matrix)) < 1e-8);
    }

    #[test]
    fn character_route_trivial_on_adjoint_and_absent_type() {
        let rep = build_irrep_su3(1, 1).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let p = emb.isotypic_projection_by_character_auto(SubgroupType::Spin(0)).unwrap();
        assert_eq!(p.rank().unwrap(), 1);

        let rep = build_irrep_su3(1, 0).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let p = emb.isotypic_projection_by_character_auto(SubgroupType::Spin(3)).unwrap();
        assert!(linalg::op_norm(&p.matrix) <= 1e-8);
    }

    #[test]
    fn insufficient_quadrature_is_reported() {
        let rep = build_irrep_su3(2, 0).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let rule = haar_quadrature(QuadGroup::Su2, 1).unwrap();
        let err = emb.isotypic_projection_by_character(SubgroupType::Spin(0), &rule).unwrap_err();
        assert!(matches!(err, Error::InsufficientQuadrature { have: 1, need: 2 }));
    }

    #[test]
    fn torus_projection_and_character_route() {
        let rep = build_irrep_su2(4).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::Torus).unwrap();
        for m in [-4, -2, 0, 1, 2] {
            let pi = SubgroupType::Weight(m);
            let a = emb.isotypic_projection(pi).unwrap();
            let b = emb.isotypic_projection_by_character_auto(pi).unwrap();
            assert!(linalg::op_norm(&(&a.matrix - &b.matrix)) < 1e-10, "m={m}");
            assert_eq!(a.rank().unwrap(), if m % 2 == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn inner_product_examples() {
        let rep = build_irrep_su3(1, 0).unwrap();
        let ul = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let lr = SubgroupEmbedding::standard(&rep, EmbeddingLabel::LowerRight).unwrap();
        let p1 = ul.isotypic_projection(SubgroupType::Spin(0)).unwrap();
        let p2 = lr.isotypic_projection(SubgroupType::Spin(0)).unwrap();
        assert!(subspace_inner_product(&p1, &p2).unwrap().abs() < 1e-12);
        assert!((subspace_inner_product(&p1, &p1).unwrap() - 1.0).abs() < 1e-12);

        // Fixed lines in the adjoint are spanned by diag(1,1,-2) and
        // diag(-2,1,1); their normalized trace-form overlap is 3/6.
        let rep = build_irrep_su3(1, 1).unwrap();
        let ul = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let lr = SubgroupEmbedding::standard(&rep, EmbeddingLabel::LowerRight).unwrap();
        let p1 = ul.isotypic_projection(SubgroupType::Spin(0)).unwrap();
        let p2 = lr.isotypic_projection(SubgroupType::Spin(0)).unwrap();
        let a = [1.0, 1.0, -2.0];
        let b = [-2.0, 1.0, 1.0];
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let oracle = dot.abs() / (6f64.sqrt() * 6f64.sqrt());
        assert!((subspace_inner_product(&p1, &p2).unwrap() - oracle).abs() < 1e-8);
    }

    #[test]
    fn inner_product_of_empty_subspace_is_zero() {
        let rep = build_irrep_su2(1).unwrap();
        let emb = SubgroupEmbedding::standard(&rep, EmbeddingLabel::Torus).unwrap();
        let p = emb.isotypic_projection(SubgroupType::Weight(0)).unwrap();
        assert_eq!(p.rank().unwrap(), 0);
        assert_eq!(subspace_inner_product(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_ambients_rejected() {
        let a = build_irrep_su3(1, 0).unwrap();
        let b = build_irrep_su3(0, 1).unwrap();
        let pa = SubgroupEmbedding::standard(&a, EmbeddingLabel::UpperLeft)
            .unwrap()
            .isotypic_projection(SubgroupType::Spin(0))
            .unwrap();
        let pb = SubgroupEmbedding::standard(&b, EmbeddingLabel::UpperLeft)
            .unwrap()
            .isotypic_projection(SubgroupType::Spin(0))
            .unwrap();
        assert!(matches!(subspace_inner_product(&pa, &pb), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn wrong_ambient_group_rejected() {
        let rep = build_irrep_su2(2).unwrap();
        assert!(SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).is_err());
    }
}
