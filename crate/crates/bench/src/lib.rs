//! Shared inputs for the criterion benches.

use orthotype_core::{EmbeddingLabel, SubgroupType};

pub const CORNERS: [EmbeddingLabel; 2] = [EmbeddingLabel::UpperLeft, EmbeddingLabel::LowerRight];
pub const TRIVIAL: SubgroupType = SubgroupType::Spin(0);
