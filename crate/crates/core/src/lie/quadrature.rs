//! Normalized Haar quadrature on SU(2) (Euler-angle product grid) and on its
//! maximal torus.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupId};
use crate::error::{Error, Result};
use crate::linalg::{self, from_row_major_pairs, row_major_pairs, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadGroup {
    Su2,
    Torus,
}

impl fmt::Display for QuadGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadGroup::Su2 => "su2",
            QuadGroup::Torus => "torus",
        })
    }
}

impl FromStr for QuadGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su2" => Ok(QuadGroup::Su2),
            "torus" => Ok(QuadGroup::Torus),
            _ => Err(Error::UnknownLabel { label: s.to_string(), context: "quadrature group" }),
        }
    }
}

/// Chart coordinates of a node.
///
/// Euler: g = exp(-iφσ_z/2) exp(-iθσ_y/2) exp(-iψσ_z/2).
/// Torus: g = diag(e^{iα}, e^{-iα}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "lowercase")]
pub enum NodeCoords {
    Euler { phi: f64, theta: f64, psi: f64 },
    Torus { angle: f64 },
}

impl NodeCoords {
    pub fn group_element(&self) -> GroupElement {
        let m = match *self {
            NodeCoords::Euler { phi, theta, psi } => {
                let z = |a: f64| {
                    let mut m = CMatrix::zeros(2, 2);
                    m[(0, 0)] = Complex64::from_polar(1.0, -a / 2.0);
                    m[(1, 1)] = Complex64::from_polar(1.0, a / 2.0);
                    m
                };
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                let y = CMatrix::from_row_slice(
                    2,
                    2,
                    &[c.into(), (-s).into(), s.into(), c.into()],
                );
                z(phi) * y * z(psi)
            }
            NodeCoords::Torus { angle } => {
                let mut m = CMatrix::zeros(2, 2);
                m[(0, 0)] = Complex64::from_polar(1.0, angle);
                m[(1, 1)] = Complex64::from_polar(1.0, -angle);
                m
            }
        };
        GroupElement { matrix: m, group: GroupId::Su2 }
    }
}

/// Weighted node set integrating against normalized Haar measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RuleFile", try_from = "RuleFile")]
pub struct QuadratureRule {
    pub group: QuadGroup,
    /// Exact on matrix coefficients with 2·spin ≤ degree (SU(2)), or on
    /// characters of frequency ≤ degree (torus).
    pub degree: usize,
    pub nodes: Vec<GroupElement>,
    pub coords: Vec<NodeCoords>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate<F: Fn(&GroupElement) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(g, &w)| f(g) * w).sum()
    }
}

/// Quadrature sizes: n_θ = ⌈degree/2⌉ + 1 Gauss–Legendre points in cos θ,
/// n_φ = n_ψ = degree + 2 uniform points. Torus: degree + 1 uniform points.
pub fn haar_quadrature(group: QuadGroup, degree: i64) -> Result<QuadratureRule> {
    if degree < 0 {
        return Err(Error::InvalidArgument(format!("quadrature degree {degree} is negative")));
    }
    let degree = degree as usize;
    let coords: Vec<(NodeCoords, f64)> = match group {
        QuadGroup::Torus => {
            let n = degree + 1;
            (0..n)
                .map(|k| (NodeCoords::Torus { angle: 2.0 * PI * k as f64 / n as f64 }, 1.0 / n as f64))
                .collect()
        }
        QuadGroup::Su2 => {
            let n_theta = degree.div_ceil(2) + 1;
            let n_uniform = degree + 2;
            let (xs, ws) = linalg::gauss_legendre(n_theta);
            let mut out = Vec::with_capacity(n_theta * n_uniform * n_uniform);
            for (x, wx) in xs.iter().zip(&ws) {
                let theta = x.clamp(-1.0, 1.0).acos();
                for a in 0..n_uniform {
                    let phi = 2.0 * PI * a as f64 / n_uniform as f64;
                    for b in 0..n_uniform {
                        let psi = 4.0 * PI * b as f64 / n_uniform as f64;
                        // sinθ dθ = d(cos θ); the angular factors cancel 16π².
                        let w = wx / 2.0 / (n_uniform * n_uniform) as f64;
                        out.push((NodeCoords::Euler { phi, theta, psi }, w));
                    }
                }
            }
            out
        }
    };
    let nodes = coords.iter().map(|(c, _)| c.group_element()).collect();
    let weights = coords.iter().map(|&(_, w)| w).collect();
    let coords = coords.into_iter().map(|(c, _)| c).collect();
    Ok(QuadratureRule { group, degree, nodes, coords, weights })
}

#[derive(Serialize, Deserialize)]
struct RuleFile {
    group: QuadGroup,
    degree: usize,
    nodes: Vec<Vec<[f64; 2]>>,
    weights: Vec<f64>,
    coords: Vec<NodeCoords>,
}

impl From<QuadratureRule> for RuleFile {
    fn from(rule: QuadratureRule) -> Self {
        RuleFile {
            group: rule.group,
            degree: rule.degree,
            nodes: rule.nodes.iter().map(|g| row_major_pairs(g.matrix())).collect(),
            weights: rule.weights,
            coords: rule.coords,
        }
    }
}

impl TryFrom<RuleFile> for QuadratureRule {
    type Error = Error;
    fn try_from(file: RuleFile) -> Result<Self> {
        if file.nodes.len() != file.weights.len() || file.coords.len() != file.weights.len() {
            return Err(Error::Parse("node, coordinate and weight counts differ".into()));
        }
        let nodes = file
            .nodes
            .iter()
            .map(|pairs| GroupElement::new(from_row_major_pairs(2, pairs)?, GroupId::Su2))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadratureRule {
            group: file.group,
            degree: file.degree,
            nodes,
            coords: file.coords,
            weights: file.weights,
        })
    }
}
