//! Singular-coordinate operators Au(x) = ∫_M a(m) u(φ(m)⁻¹x) dm with
//! φ(m) = ∏ exp(t_k X_k) on a product grid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;

use super::BlockOperator;
use crate::error::{Error, Result};
use crate::irreps::{Irrep, IrrepCache};
use crate::lie::{standard_sl2_triple, AlgebraElement, GroupId, TripleLabel};
use crate::linalg::{self, CMatrix, OneParameter};

/// Relative agreement required between the grid and its refinement.
pub const GRID_TOL: f64 = 1e-4;
/// Tolerance on the declared total mass.
pub const MASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisRule {
    /// Uniform left endpoints; exact for trigonometric integrands.
    Periodic,
    /// Composite Gauss–Legendre with `panels` equal panels of n points each.
    Gauss { panels: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub direction: AlgebraElement,
    pub scale: f64,
    pub range: (f64, f64),
    pub n: usize,
    pub rule: AxisRule,
}

impl Axis {
    /// Nodes and weights with `refine` times the declared resolution.
    fn nodes(&self, refine: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.range;
        match self.rule {
            AxisRule::Periodic => {
                let m = self.n * refine;
                let h = (b - a) / m as f64;
                (0..m).map(|i| (a + h * i as f64, h)).collect()
            }
            AxisRule::Gauss { panels } => {
                let (xs, ws) = linalg::gauss_legendre(self.n * refine);
                let width = (b - a) / panels as f64;
                let mut out = Vec::with_capacity(xs.len() * panels);
                for p in 0..panels {
                    let left = a + width * p as f64;
                    for (x, w) in xs.iter().zip(&ws) {
                        out.push((left + width * (x + 1.0) / 2.0, w * width / 2.0));
                    }
                }
                out
            }
        }
    }

    fn midpoint(&self) -> f64 {
        (self.range.0 + self.range.1) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Lebesgue,
    /// sin θ / 16π² on the middle axis of a three-axis (φ, θ, ψ) chart.
    EulerHaar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFn {
    Constant(f64),
    /// `value` where the coordinate on `axis` lies below its midpoint, else 0.
    LowerHalf { value: f64, axis: usize },
}

impl WeightFn {
    pub fn sup(&self) -> f64 {
        match *self {
            WeightFn::Constant(c) | WeightFn::LowerHalf { value: c, .. } => c.abs(),
        }
    }

    fn value(&self) -> f64 {
        match *self {
            WeightFn::Constant(c) | WeightFn::LowerHalf { value: c, .. } => c,
        }
    }

    fn indicator(&self, axis: usize, t: f64, mid: f64) -> bool {
        match *self {
            WeightFn::LowerHalf { axis: a, .. } if a == axis => t < mid,
            _ => true,
        }
    }
}

/// A chart φ: M → G on a product of intervals, with a separable weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    pub group: GroupId,
    pub axes: Vec<Axis>,
    pub density: Density,
    pub weight: WeightFn,
    pub mass: f64,
    /// Truncation degree suggested by the spec file.
    pub truncation: Option<u32>,
}

impl PhiSpec {
    pub fn new(
        group: GroupId,
        axes: Vec<Axis>,
        density: Density,
        weight: WeightFn,
        mass: f64,
    ) -> Result<Self> {
        let spec = PhiSpec { group, axes, density, weight, mass, truncation: None };
        spec.validate()?;
        Ok(spec)
    }

    fn density_factor(&self, axis: usize, t: f64) -> f64 {
        match self.density {
            Density::Lebesgue => 1.0,
            Density::EulerHaar if axis == 1 => t.sin(),
            Density::EulerHaar => 1.0,
        }
    }

    fn global_factor(&self) -> f64 {
        match self.density {
            Density::Lebesgue => 1.0,
            Density::EulerHaar => 1.0 / (16.0 * PI * PI),
        }
    }

    /// Per-axis nodes with weights that already include density and support.
    fn axis_weights(&self, axis: usize, refine: usize, with_support: bool) -> Vec<(f64, f64)> {
        let ax = &self.axes[axis];
        let mid = ax.midpoint();
        ax.nodes(refine)
            .into_iter()
            .filter(|&(t, _)| !with_support || self.weight.indicator(axis, t, mid))
            .map(|(t, w)| (t, w * self.density_factor(axis, t)))
            .collect()
    }

    fn measure(&self, with_support: bool) -> f64 {
        (0..self.axes.len())
            .map(|k| self.axis_weights(k, 1, with_support).iter().map(|(_, w)| w).sum::<f64>())
            .product::<f64>()
            * self.global_factor()
    }

    /// Σ of all grid weights in the declared measure.
    pub fn grid_mass(&self) -> f64 {
        self.measure(false)
    }

    /// Measure of the grid cells where the weight is nonzero.
    pub fn support_measure(&self) -> f64 {
        if self.weight.value() == 0.0 {
            0.0
        } else {
            self.measure(true)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::InvalidArgument("a chart needs at least one axis".into()));
        }
        for ax in &self.axes {
            if ax.direction.group() != self.group {
                return Err(Error::InvalidArgument(format!("axis {} is not in {}", ax.label, self.group)));
            }
            let dev = linalg::anti_hermiticity_defect(ax.direction.matrix());
            if dev > 1e-12 {
                return Err(Error::NotAntiHermitian { deviation: dev });
            }
            if !(ax.range.1 > ax.range.0) || ax.n == 0 {
                return Err(Error::InvalidArgument(format!("axis {} has an empty grid", ax.label)));
            }
            if let AxisRule::Gauss { panels: 0 } = ax.rule {
                return Err(Error::InvalidArgument("gauss rule with zero panels".into()));
            }
        }
        if self.density == Density::EulerHaar && self.axes.len() != 3 {
            return Err(Error::InvalidArgument("euler_haar density needs exactly three axes".into()));
        }
        if let WeightFn::LowerHalf { axis, .. } = self.weight {
            let ax = self.axes.get(axis).ok_or_else(|| {
                Error::InvalidArgument(format!("weight refers to missing axis {axis}"))
            })?;
            let aligned = match ax.rule {
                AxisRule::Periodic => ax.n % 2 == 0,
                AxisRule::Gauss { panels } => panels % 2 == 0,
            };
            if !aligned {
                return Err(Error::InvalidArgument(
                    "lower_half weight needs the axis midpoint on a cell boundary".into(),
                ));
            }
        }
        let mass = self.grid_mass();
        if (mass - self.mass).abs() > MASS_TOL * self.mass.abs().max(1.0) {
            return Err(Error::Consistency(format!(
                "grid mass {mass:.12e} differs from declared mass {:.12e}",
                self.mass
            )));
        }
        Ok(())
    }

    /// block(σ) = Σ_grid a(m) σ(φ(m)) dm at the given refinement.
    fn block(&self, rep: &Irrep, refine: usize) -> Result<CMatrix> {
        let c = self.weight.value() * self.global_factor();
        let mut out = linalg::identity(rep.dim) * Complex64::new(c, 0.0);
        for (k, ax) in self.axes.iter().enumerate() {
            let x = rep.represent(&ax.direction)? * Complex64::new(ax.scale, 0.0);
            let one = OneParameter::new(&x);
            let mut acc = vec![Complex64::new(0.0, 0.0); rep.dim];
            for (t, w) in self.axis_weights(k, refine, true) {
                for (a, ph) in acc.iter_mut().zip(one.phases(t)) {
                    *a += ph * w;
                }
            }
            let d = CMatrix::from_diagonal(&DVector::from_vec(acc));
            let factor = one.basis() * d * one.basis().adjoint();
            out *= factor;
        }
        Ok(out)
    }
}

/// Blocks of the singular-coordinate operator, after a grid-doubling check.
pub fn singular_coordinate_blocks(
    phi: &PhiSpec,
    n: u32,
    cache: Option<&IrrepCache>,
) -> Result<BlockOperator> {
    phi.validate()?;
    let coarse = BlockOperator::from_fn(phi.group, n, cache, |rep| phi.block(rep, 1))?;
    let fine = BlockOperator::from_fn(phi.group, n, cache, |rep| phi.block(rep, 2))?;
    for (hw, a) in &coarse.blocks {
        let (na, nb) = (linalg::op_norm(a), linalg::op_norm(&fine.blocks[hw]));
        if (na - nb).abs() >= GRID_TOL * na.max(nb).max(1.0) {
            return Err(Error::GridConvergence { coarse: na, fine: nb });
        }
    }
    Ok(coarse)
}

fn named_direction(group: GroupId, name: &str) -> Result<AlgebraElement> {
    let (label, axis) = match (group, name) {
        (GroupId::Su2, "z" | "y" | "x") => (TripleLabel::Whole, name),
        (GroupId::Su3, "z1" | "y1" | "x1") => (TripleLabel::UpperLeft, &name[..1]),
        (GroupId::Su3, "z2" | "y2" | "x2") => (TripleLabel::LowerRight, &name[..1]),
        _ => return Err(Error::UnknownLabel { label: name.to_string(), context: "chart direction" }),
    };
    let [z, y, x] = standard_sl2_triple(group, label)?.compact_basis();
    Ok(match axis {
        "z" => z,
        "y" => y,
        _ => x,
    })
}

/// Reals with an optional π factor: `2.5`, `pi`, `-pi`, `4pi`, `0.5*pi`.
fn parse_real(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("`{s}` is not a number"));
    let s = s.trim();
    if let Some(head) = s.strip_suffix("pi") {
        let head = head.trim_end_matches('*');
        let k = match head {
            "" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(k * PI);
    }
    s.parse::<f64>().map_err(|_| bad())
}

fn parse_axis(group: GroupId, text: &str) -> Result<Axis> {
    let mut words = text.split_whitespace();
    let label = words.next().ok_or_else(|| Error::Parse("axis without a direction".into()))?;
    let direction = named_direction(group, label)?;
    let (mut scale, mut range, mut n, mut rule, mut panels) = (1.0, None, None, "periodic", 1);
    for word in words {
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("axis option `{word}` is not key=value")))?;
        match key {
            "scale" => scale = parse_real(value)?,
            "range" => {
                let (a, b) = value
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("range `{value}` needs two ends")))?;
                range = Some((parse_real(a)?, parse_real(b)?));
            }
            "n" => n = Some(value.parse::<usize>().map_err(|_| Error::Parse(format!("bad n `{value}`")))?),
            "rule" => rule = value,
            "panels" => {
                panels = value.parse::<usize>().map_err(|_| Error::Parse(format!("bad panels `{value}`")))?
            }
            _ => return Err(Error::Parse(format!("unknown axis option `{key}`"))),
        }
    }
    let rule = match rule {
        "periodic" => AxisRule::Periodic,
        "gauss" => AxisRule::Gauss { panels },
        other => return Err(Error::Parse(format!("unknown rule `{other}`"))),
    };
    Ok(Axis {
        label: label.to_string(),
        direction,
        scale,
        range: range.ok_or_else(|| Error::Parse(format!("axis {label} needs range=a,b")))?,
        n: n.ok_or_else(|| Error::Parse(format!("axis {label} needs n=")))?,
        rule,
    })
}

fn parse_weight(text: &str) -> Result<WeightFn> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        [c] => Ok(WeightFn::Constant(parse_real(c)?)),
        ["constant", c] => Ok(WeightFn::Constant(parse_real(c)?)),
        ["lower_half", c, axis] => {
            let axis = axis
                .strip_prefix("axis=")
                .and_then(|a| a.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad weight axis `{axis}`")))?;
            Ok(WeightFn::LowerHalf { value: parse_real(c)?, axis })
        }
        _ => Err(Error::Parse(format!("cannot read weight `{text}`"))),
    }
}

impl FromStr for PhiSpec {
    type Err = Error;

    /// Plain `key = value` lines with `#` comments; `axis` repeats in order.
    fn from_str(text: &str) -> Result<Self> {
        let mut group = None;
        let mut axis_lines = Vec::new();
        let (mut density, mut weight, mut mass, mut truncation) = (Density::Lebesgue, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            match key {
                "group" => group = Some(value.parse::<GroupId>()?),
                "axis" => axis_lines.push(value.to_string()),
                "density" => {
                    density = match value {
                        "lebesgue" => Density::Lebesgue,
                        "euler_haar" => Density::EulerHaar,
                        _ => return Err(Error::Parse(format!("unknown density `{value}`"))),
                    }
                }
                "weight" => weight = Some(parse_weight(value)?),
                "mass" => mass = Some(parse_real(value)?),
                "N" => {
                    truncation =
                        Some(value.parse::<u32>().map_err(|_| Error::Parse(format!("bad N `{value}`")))?)
                }
                _ => return Err(Error::Parse(format!("line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        let group = group.ok_or_else(|| Error::Parse("missing `group`".into()))?;
        let axes = axis_lines.iter().map(|a| parse_axis(group, a)).collect::<Result<Vec<_>>>()?;
        let mut spec = PhiSpec::new(
            group,
            axes,
            density,
            weight.ok_or_else(|| Error::Parse("missing `weight`".into()))?,
            mass.ok_or_else(|| Error::Parse("missing `mass`".into()))?,
        )?;
        spec.truncation = truncation;
        Ok(spec)
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group = {}", self.group)?;
        for ax in &self.axes {
            let rule = match ax.rule {
                AxisRule::Periodic => "rule=periodic".to_string(),
                AxisRule::Gauss { panels } => format!("rule=gauss panels={panels}"),
            };
            writeln!(
                f,
                "axis = {} scale={:e} range={:e},{:e} n={} {rule}",
                ax.label, ax.scale, ax.range.0, ax.range.1, ax.n
            )?;
        }
        let density = match self.density {
            Density::Lebesgue => "lebesgue",
            Density::EulerHaar => "euler_haar",
        };
        writeln!(f, "density = {density}")?;
        match self.weight {
            WeightFn::Constant(c) => writeln!(f, "weight = constant {c:e}")?,
            WeightFn::LowerHalf { value, axis } => writeln!(f, "weight = lower_half {value:e} axis={axis}")?,
        }
        writeln!(f, "mass = {:e}", self.mass)?;
        if let Some(n) = self.truncation {
            writeln!(f, "N = {n}")?;
        }
        Ok(())
    }
}

/// The weight-`a` chart used by the bundled fixtures: the Euler chart of
/// SU(2) with the normalized Haar density.
pub fn euler_chart(weight: WeightFn, n_uniform: usize, n_theta: usize) -> Result<PhiSpec> {
    let axis = |label: &str, range: (f64, f64), n, rule| -> Result<Axis> {
        Ok(Axis { label: label.into(), direction: named_direction(GroupId::Su2, label)?, scale: 1.0, range, n, rule })
    };
    PhiSpec::new(
        GroupId::Su2,
        vec![
            axis("z", (0.0, 2.0 * PI), n_uniform, AxisRule::Periodic)?,
            axis("y", (0.0, PI), n_theta, AxisRule::Gauss { panels: 2 })?,
            axis("z", (0.0, 4.0 * PI), n_uniform, AxisRule::Periodic)?,
        ],
        Density::EulerHaar,
        weight,
        1.0,
    )
}
