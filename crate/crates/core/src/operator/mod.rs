//! Truncated Peter–Weyl realization of smoothing operators.
//!
//! An operator on L²(G) that commutes with right translations acts on each
//! summand V^σ ⊗ (V^σ)* as `block ⊗ 1`. A [`BlockOperator`] stores those
//! blocks for every type up to a truncation degree.

mod phi;

pub use phi::{euler_chart, singular_coordinate_blocks, Axis, AxisRule, Density, PhiSpec, WeightFn};

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::format_float;
use crate::irreps::{HighestWeight, Irrep, IrrepCache};
use crate::isotypic::{EmbeddingLabel, SubgroupEmbedding, SubgroupType};
use crate::lie::{haar_quadrature, GroupElement, GroupId, QuadratureRule};
use crate::linalg::{self, CMatrix};
use crate::orthotype::obtain_irrep;

/// Slack allowed on the operator-norm bound.
pub const NORM_BOUND_SLACK: f64 = 1e-6;

/// Modular function of the compact subgroups used for kernels. Compact groups
/// are unimodular, so the adjoint kernel carries no extra factor.
pub fn modular_function(_h: &GroupElement) -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelForm {
    /// k(h) = scale · conj(χ_π(h)).
    Character { pi: SubgroupType, scale: f64 },
    /// Kernel values at the nodes of the subgroup rule of the spec's degree.
    Sampled { values: Vec<Complex64> },
}

/// A base-point independent kernel on an embedded subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub label: EmbeddingLabel,
    pub form: KernelForm,
    /// Subgroup quadrature degree; `None` picks an exact degree per block.
    pub degree: Option<usize>,
}

impl KernelSpec {
    pub fn character(label: EmbeddingLabel, pi: SubgroupType, scale: f64) -> Self {
        KernelSpec { label, form: KernelForm::Character { pi, scale }, degree: None }
    }

    /// The projection kernel dim(π)·χ̄_π.
    pub fn projection(label: EmbeddingLabel, pi: SubgroupType) -> Self {
        Self::character(label, pi, pi.dim() as f64)
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = Some(degree);
        self
    }

    /// Samples `k` at the nodes of the subgroup rule of the given degree.
    pub fn sampled<F>(label: EmbeddingLabel, degree: usize, k: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> Complex64,
    {
        let rule = haar_quadrature(label.quad_group(), degree as i64)?;
        let values = rule.nodes.iter().map(k).collect();
        Ok(KernelSpec { label, form: KernelForm::Sampled { values }, degree: Some(degree) })
    }

    /// k*(h) = conj(k(h⁻¹)) Δ(h⁻¹), sampled on the same rule.
    pub fn sampled_adjoint<F>(label: EmbeddingLabel, degree: usize, k: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> Complex64,
    {
        Self::sampled(label, degree, |h| {
            let inv = h.inverse();
            k(&inv).conj() * modular_function(&inv)
        })
    }

    fn band(&self) -> usize {
        match &self.form {
            KernelForm::Character { pi, .. } => match pi {
                SubgroupType::Spin(two_j) => *two_j as usize,
                SubgroupType::Weight(m) => m.unsigned_abs() as usize,
            },
            KernelForm::Sampled { .. } => 0,
        }
    }

    /// Degree needed at truncation N: N plus the kernel band for characters,
    /// 2N + 2 for sampled kernels.
    pub fn required_degree(&self, n: u32) -> usize {
        match self.form {
            KernelForm::Character { .. } => n as usize + self.band(),
            KernelForm::Sampled { .. } => 2 * n as usize + 2,
        }
    }

    // Depends on σ alone, so blocks do not change with the truncation.
    fn block_degree(&self, hw: HighestWeight) -> usize {
        self.degree.unwrap_or(2 * hw.degree() as usize + 2 + self.band())
    }
}

/// Blocks of a right-invariant operator, one per type up to degree N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockOperator {
    pub group: GroupId,
    pub degree: u32,
    #[serde(with = "blocks_serde")]
    pub blocks: BTreeMap<HighestWeight, CMatrix>,
}

mod blocks_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        hw: HighestWeight,
        dim: usize,
        matrix: Vec<[f64; 2]>,
    }

    pub fn serialize<S: Serializer>(
        b: &BTreeMap<HighestWeight, CMatrix>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = b
            .iter()
            .map(|(hw, m)| Entry { hw: *hw, dim: m.nrows(), matrix: linalg::row_major_pairs(m) })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<HighestWeight, CMatrix>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| {
                linalg::from_row_major_pairs(e.dim, &e.matrix)
                    .map(|m| (e.hw, m))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

impl BlockOperator {
    /// Evaluates `f` on every irrep of degree ≤ N, in parallel.
    pub fn from_fn<F>(group: GroupId, degree: u32, cache: Option<&IrrepCache>, f: F) -> Result<Self>
    where
        F: Fn(&Irrep) -> Result<CMatrix> + Sync,
    {
        let weights = HighestWeight::enumerate(group, degree);
        let blocks = weights
            .par_iter()
            .map(|&hw| {
                let rep = obtain_irrep(cache, hw)?;
                Ok((hw, f(&rep)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockOperator { group, degree, blocks: blocks.into_iter().collect() })
    }

    pub fn identity(group: GroupId, degree: u32) -> Self {
        let blocks = HighestWeight::enumerate(group, degree)
            .into_iter()
            .map(|hw| (hw, linalg::identity(hw.dim())))
            .collect();
        BlockOperator { group, degree, blocks }
    }

    pub fn zero(group: GroupId, degree: u32) -> Self {
        let blocks = HighestWeight::enumerate(group, degree)
            .into_iter()
            .map(|hw| (hw, CMatrix::zeros(hw.dim(), hw.dim())))
            .collect();
        BlockOperator { group, degree, blocks }
    }

    pub fn block(&self, hw: HighestWeight) -> Option<&CMatrix> {
        self.blocks.get(&hw)
    }

    /// Largest blockwise operator-norm difference.
    pub fn distance(&self, other: &BlockOperator) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .blocks
            .iter()
            .map(|(hw, a)| linalg::op_norm(&(a - &other.blocks[hw])))
            .fold(0.0, f64::max))
    }

    fn check_compatible(&self, other: &BlockOperator) -> Result<()> {
        if self.group != other.group || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} operator of degree {} vs {} operator of degree {}",
                self.group, self.degree, other.group, other.degree
            )));
        }
        Ok(())
    }

    /// Restriction to types of degree ≤ n.
    pub fn truncate(&self, n: u32) -> BlockOperator {
        let blocks = self
            .blocks
            .iter()
            .filter(|(hw, _)| hw.degree() <= n)
            .map(|(hw, m)| (*hw, m.clone()))
            .collect();
        BlockOperator { group: self.group, degree: n.min(self.degree), blocks }
    }
}

/// block(σ) = Σ_n w_n k(h_n) σ(ι(h_n)) over the subgroup rule.
pub fn subgroup_smoothing_blocks(
    kernel: &KernelSpec,
    n: u32,
    cache: Option<&IrrepCache>,
) -> Result<BlockOperator> {
    if let KernelForm::Character { pi, .. } = kernel.form {
        if pi.kind() != kernel.label.kind() {
            return Err(Error::InvalidArgument(format!(
                "type {pi} does not belong to {}",
                kernel.label
            )));
        }
    }
    let need = kernel.required_degree(n);
    match kernel.degree {
        Some(have) if have < need => return Err(Error::InsufficientQuadrature { have, need }),
        None if matches!(kernel.form, KernelForm::Sampled { .. }) => {
            return Err(Error::InvalidArgument("sampled kernel without a rule degree".into()))
        }
        _ => {}
    }
    let group = kernel.label.ambient_group();
    let mut rules: BTreeMap<usize, QuadratureRule> = BTreeMap::new();
    for hw in HighestWeight::enumerate(group, n) {
        let d = kernel.block_degree(hw);
        if !rules.contains_key(&d) {
            rules.insert(d, haar_quadrature(kernel.label.quad_group(), d as i64)?);
        }
    }
    if let KernelForm::Sampled { values } = &kernel.form {
        let rule = &rules[&kernel.degree.unwrap()];
        if values.len() != rule.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} kernel samples for a rule with {} nodes",
                values.len(),
                rule.len()
            )));
        }
    }
    BlockOperator::from_fn(group, n, cache, |rep| {
        let rule = &rules[&kernel.block_degree(rep.hw)];
        let emb = SubgroupEmbedding::standard(rep, kernel.label)?;
        match &kernel.form {
            KernelForm::Character { pi, scale } => {
                emb.integrate(rule, |k| pi.conj_character(&rule.nodes[k]) * *scale)
            }
            KernelForm::Sampled { values } => emb.integrate(rule, |k| values[k]),
        }
    })
}

/// Blockwise product A·B.
pub fn block_product(a: &BlockOperator, b: &BlockOperator) -> Result<BlockOperator> {
    a.check_compatible(b)?;
    let blocks = a.blocks.iter().map(|(hw, m)| (*hw, m * &b.blocks[hw])).collect();
    Ok(BlockOperator { group: a.group, degree: a.degree, blocks })
}

/// Blockwise conjugate transpose.
pub fn adjoint_blocks(a: &BlockOperator) -> BlockOperator {
    let blocks = a.blocks.iter().map(|(hw, m)| (*hw, m.adjoint())).collect();
    BlockOperator { group: a.group, degree: a.degree, blocks }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularProfile {
    pub degree: u32,
    pub per_type: BTreeMap<HighestWeight, f64>,
    pub global_norm: f64,
    pub shell_max: BTreeMap<u32, f64>,
    /// The last two shells sit strictly below the global norm, or the
    /// operator vanishes.
    pub decaying: bool,
}

pub fn singular_profile(a: &BlockOperator) -> SingularProfile {
    let per_type: BTreeMap<HighestWeight, f64> =
        a.blocks.iter().map(|(hw, m)| (*hw, linalg::op_norm(m))).collect();
    let global_norm = per_type.values().cloned().fold(0.0, f64::max);
    let mut shell_max = BTreeMap::new();
    for (hw, v) in &per_type {
        let e = shell_max.entry(hw.degree()).or_insert(0.0f64);
        *e = e.max(*v);
    }
    // Two shells, since half-integer SU(2) shells can vanish by parity.
    let tail = shell_max.values().rev().take(2).cloned().fold(0.0, f64::max);
    let decaying =
        global_norm == 0.0 || (shell_max.len() > 2 && tail < global_norm * (1.0 - 1e-6));
    SingularProfile { degree: a.degree, per_type, global_norm, shell_max, decaying }
}

impl SingularProfile {
    /// Rows in enumeration order (degree, then p).
    pub fn ordered(&self) -> Vec<(HighestWeight, f64)> {
        let mut rows: Vec<_> = self.per_type.iter().map(|(h, v)| (*h, *v)).collect();
        rows.sort_by_key(|(h, _)| (h.degree(), h.labels()[0]));
        rows
    }

    /// CSV with header `p,q,dim_sigma,sigma_max`; SU(2) rows use p = 2j, q = 0.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "p,q,dim_sigma,sigma_max")?;
        for (hw, v) in self.ordered() {
            let (p, q) = match hw {
                HighestWeight::Su3 { p, q } => (p, q),
                HighestWeight::Su2 { two_j } => (two_j, 0),
            };
            writeln!(w, "{p},{q},{},{}", hw.dim(), format_float(v))?;
        }
        Ok(())
    }

    pub fn shell_values(&self) -> Vec<f64> {
        self.shell_max.values().copied().collect()
    }

    /// `{"N": .., "shell_max": [..], "global_norm": ..}` with fixed float text.
    pub fn to_json(&self) -> String {
        let shells: Vec<String> = self.shell_max.values().map(|v| format_float(*v)).collect();
        format!(
            "{{\"N\": {}, \"shell_max\": [{}], \"global_norm\": {}}}\n",
            self.degree,
            shells.join(", "),
            format_float(self.global_norm)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormBound {
    pub bound: f64,
    pub observed: f64,
    pub holds: bool,
}

/// ‖A‖ ≤ ‖a‖_∞ · vol(supp a), with the volume taken in the declared measure.
pub fn norm_bound_check(phi: &PhiSpec, a: &BlockOperator) -> NormBound {
    let bound = phi.weight.sup() * phi.support_measure();
    let observed = singular_profile(a).global_norm;
    NormBound { bound, observed, holds: observed <= bound + NORM_BOUND_SLACK }
}
