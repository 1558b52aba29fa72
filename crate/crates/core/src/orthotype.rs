//! Essential-orthotypicality sweeps over ambient types.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::format_float;
use crate::irreps::{build_irrep, HighestWeight, Irrep, IrrepCache};
use crate::isotypic::{subspace_inner_product, EmbeddingLabel, SubgroupEmbedding, SubgroupType};
use crate::lie::GroupId;

/// Default threshold separating the adjoint value 0.5 from the tail.
pub const DEFAULT_EPSILON: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub ambient_hw: HighestWeight,
    pub dim_sigma: usize,
    pub rank1: usize,
    pub rank2: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub records: Vec<SweepRecord>,
    pub pi1: SubgroupType,
    pub pi2: SubgroupType,
    pub emb1: EmbeddingLabel,
    pub emb2: EmbeddingLabel,
    pub epsilon: f64,
    pub count_at_or_above_eps: usize,
    pub shell_max: BTreeMap<u32, f64>,
}

impl SweepReport {
    fn assemble(
        records: Vec<SweepRecord>,
        (pi1, pi2): (SubgroupType, SubgroupType),
        (emb1, emb2): (EmbeddingLabel, EmbeddingLabel),
        epsilon: f64,
    ) -> Self {
        let count_at_or_above_eps = records.iter().filter(|r| r.value >= epsilon).count();
        let mut shell_max = BTreeMap::new();
        for r in &records {
            let e = shell_max.entry(r.ambient_hw.degree()).or_insert(0.0f64);
            *e = e.max(r.value);
        }
        SweepReport { records, pi1, pi2, emb1, emb2, epsilon, count_at_or_above_eps, shell_max }
    }

    pub fn record(&self, hw: HighestWeight) -> Option<&SweepRecord> {
        self.records.iter().find(|r| r.ambient_hw == hw)
    }

    /// CSV with header `p,q,dim_sigma,rank1,rank2,value`; SU(2) rows use p = 2j, q = 0.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "p,q,dim_sigma,rank1,rank2,value")?;
        for r in &self.records {
            let (p, q) = match r.ambient_hw {
                HighestWeight::Su3 { p, q } => (p, q),
                HighestWeight::Su2 { two_j } => (two_j, 0),
            };
            writeln!(w, "{p},{q},{},{},{},{}", r.dim_sigma, r.rank1, r.rank2, format_float(r.value))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

pub(crate) fn obtain_irrep(cache: Option<&IrrepCache>, hw: HighestWeight) -> Result<Irrep> {
    match cache {
        Some(c) => c.get_or_build(hw),
        None => build_irrep(hw),
    }
}

fn sweep_one(
    rep: &Irrep,
    (emb1, pi1): (EmbeddingLabel, SubgroupType),
    (emb2, pi2): (EmbeddingLabel, SubgroupType),
) -> Result<SweepRecord> {
    let p1 = SubgroupEmbedding::standard(rep, emb1)?.isotypic_projection(pi1)?;
    let p2 = SubgroupEmbedding::standard(rep, emb2)?.isotypic_projection(pi2)?;
    Ok(SweepRecord {
        ambient_hw: rep.hw,
        dim_sigma: rep.dim,
        rank1: p1.rank()?,
        rank2: p2.rank()?,
        value: subspace_inner_product(&p1, &p2)?,
    })
}

fn sweep(
    group: GroupId,
    max_degree: u32,
    first: (EmbeddingLabel, SubgroupType),
    second: (EmbeddingLabel, SubgroupType),
    epsilon: f64,
    cache: Option<&IrrepCache>,
) -> Result<SweepReport> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 1]")));
    }
    for (label, pi) in [first, second] {
        if label.ambient_group() != group {
            return Err(Error::InvalidArgument(format!("embedding {label} does not live in {group}")));
        }
        if pi.kind() != label.kind() {
            return Err(Error::InvalidArgument(format!("type {pi} does not belong to {label}")));
        }
    }
    let weights = HighestWeight::enumerate(group, max_degree);
    let records = weights
        .par_iter()
        .map(|&hw| {
            let rep = obtain_irrep(cache, hw)?;
            sweep_one(&rep, first, second)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::assemble(records, (first.1, second.1), (first.0, second.0), epsilon))
}

/// Subspace inner products of the π₁- and π₂-isotypical subspaces over every
/// SU(3) type with p + q ≤ max_degree.
pub fn orthotype_sweep(
    pi1: SubgroupType,
    pi2: SubgroupType,
    emb1: EmbeddingLabel,
    emb2: EmbeddingLabel,
    max_degree: u32,
    epsilon: f64,
    cache: Option<&IrrepCache>,
) -> Result<SweepReport> {
    sweep(GroupId::Su3, max_degree, (emb1, pi1), (emb2, pi2), epsilon, cache)
}

/// The torus of SU(2) taken twice: the weight-0 lines coincide, so the value
/// is 1 at every integer spin and no decay occurs.
pub fn torus_counterexample(max_two_j: u32, epsilon: f64) -> Result<SweepReport> {
    let torus = (EmbeddingLabel::Torus, SubgroupType::Weight(0));
    sweep(GroupId::Su2, max_two_j, torus, torus, epsilon, None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayVerdict {
    pub count_above: usize,
    /// Max over all shells ≥ n, indexed by position in shell order.
    pub tail_max_by_shell: Vec<f64>,
    pub monotone_tail: bool,
}

pub fn decay_verdict(report: &SweepReport) -> Result<DecayVerdict> {
    if report.records.is_empty() {
        return Err(Error::EmptyReport);
    }
    let shells: Vec<f64> = report.shell_max.values().copied().collect();
    let mut tail = vec![0.0; shells.len()];
    let mut running = f64::NEG_INFINITY;
    for (k, v) in shells.iter().enumerate().rev() {
        running = running.max(*v);
        tail[k] = running;
    }
    let nonincreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    let last_below = *shells.last().unwrap() < report.epsilon;
    Ok(DecayVerdict {
        count_above: report.count_at_or_above_eps,
        tail_max_by_shell: tail,
        monotone_tail: nonincreasing && last_below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_sweep(max_degree: u32) -> SweepReport {
        orthotype_sweep(
            SubgroupType::Spin(0),
            SubgroupType::Spin(0),
            EmbeddingLabel::UpperLeft,
            EmbeddingLabel::LowerRight,
            max_degree,
            DEFAULT_EPSILON,
            None,
        )
        .unwrap()
    }

    #[test]
    fn small_values() {
        let r = trivial_sweep(2);
        assert_eq!(r.records.len(), 6);
        assert!((r.record(HighestWeight::su3(0, 0)).unwrap().value - 1.0).abs() < 1e-12);
        assert!(r.record(HighestWeight::su3(1, 0)).unwrap().value.abs() < 1e-12);
        assert!((r.record(HighestWeight::su3(1, 1)).unwrap().value - 0.5).abs() < 1e-8);
        let order: Vec<_> = r.records.iter().map(|x| x.ambient_hw).collect();
        assert_eq!(order, HighestWeight::enumerate(GroupId::Su3, 2));
    }

    #[test]
    fn counterexample_values() {
        let r = torus_counterexample(10, 0.5).unwrap();
        for rec in &r.records {
            let HighestWeight::Su2 { two_j } = rec.ambient_hw else { unreachable!() };
            let expected = if two_j % 2 == 0 { 1.0 } else { 0.0 };
            assert!((rec.value - expected).abs() < 1e-10);
        }
        assert_eq!(decay_verdict(&r).unwrap().count_above, 6);
        assert!(!decay_verdict(&r).unwrap().monotone_tail);
    }

    #[test]
    fn all_zero_report_is_monotone() {
        let mut r = torus_counterexample(3, 0.5).unwrap();
        r.records.retain(|x| x.value == 0.0);
        let r = SweepReport::assemble(r.records, (r.pi1, r.pi2), (r.emb1, r.emb2), 0.5);
        let v = decay_verdict(&r).unwrap();
        assert_eq!(v.count_above, 0);
        assert!(v.monotone_tail);
    }

    #[test]
    fn empty_report_rejected() {
        let r = SweepReport::assemble(
            vec![],
            (SubgroupType::Spin(0), SubgroupType::Spin(0)),
            (EmbeddingLabel::UpperLeft, EmbeddingLabel::LowerRight),
            0.25,
        );
        assert!(matches!(decay_verdict(&r), Err(Error::EmptyReport)));
    }

    #[test]
    fn bad_epsilon_rejected() {
        assert!(torus_counterexample(2, 0.0).is_err());
        assert!(torus_counterexample(2, 1.5).is_err());
    }

    #[test]
    fn csv_is_deterministic() {
        let a = trivial_sweep(3).to_csv_string();
        let b = trivial_sweep(3).to_csv_string();
        assert_eq!(a, b);
        assert!(a.starts_with("p,q,dim_sigma,rank1,rank2,value\n0,0,1,1,1,1.0000000000000000"));
    }

    #[test]
    #[ignore]
    fn print_degree8() {
        let r = trivial_sweep(8);
        print!("{}", r.to_csv_string());
        println!("{:?}", r.shell_max);
        println!("{:?}", decay_verdict(&r).unwrap());
    }
}
