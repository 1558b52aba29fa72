//! Numerical laboratory for subgroup isotypical projections on compact Lie
//! groups: SU(2)/SU(3) irreps, essential-orthotypicality sweeps and
//! singular-value witnesses for products of subgroup smoothing operators.

pub mod error;
pub mod format;
pub mod isotypic;
pub mod irreps;
pub mod lie;
pub mod linalg;
pub mod operator;
pub mod orthotype;

pub use error::{Error, Result};
pub use format::format_float;
pub use irreps::{build_irrep, weyl_dimension, HighestWeight, Irrep, IrrepCache};
pub use isotypic::{
    subspace_inner_product, BranchingTable, EmbeddingLabel, IsotypicProjection, SubgroupEmbedding,
    SubgroupKind, SubgroupType,
};
pub use lie::{
    exponentiate, haar_quadrature, random_group_element, standard_sl2_triples, AlgebraElement,
    GroupElement, GroupId, QuadGroup, QuadratureRule, Sl2Triple, TripleLabel,
};
pub use operator::{
    adjoint_blocks, block_product, norm_bound_check, singular_coordinate_blocks, singular_profile,
    subgroup_smoothing_blocks, BlockOperator, KernelForm, KernelSpec, NormBound, PhiSpec,
    SingularProfile,
};
pub use orthotype::{
    decay_verdict, orthotype_sweep, torus_counterexample, DecayVerdict, SweepRecord, SweepReport,
};
