use orthotype_core::lie::random_group_element;
use orthotype_core::linalg;
use orthotype_core::{
    build_irrep, subspace_inner_product, EmbeddingLabel, GroupId, HighestWeight, SubgroupEmbedding,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_product_is_symmetric_and_bounded(p in 0u32..4, q in 0u32..4, a in 0usize..8, b in 0usize..8) {
        let rep = build_irrep(HighestWeight::su3(p, q)).unwrap();
        let up = SubgroupEmbedding::standard(&rep, EmbeddingLabel::UpperLeft).unwrap();
        let lo = SubgroupEmbedding::standard(&rep, EmbeddingLabel::LowerRight).unwrap();
        let t1: Vec<_> = up.branching_multiplicities().unwrap().occurring().collect();
        let t2: Vec<_> = lo.branching_multiplicities().unwrap().occurring().collect();
        let p1 = up.isotypic_projection(t1[a % t1.len()]).unwrap();
        let p2 = lo.isotypic_projection(t2[b % t2.len()]).unwrap();
        let x = subspace_inner_product(&p1, &p2).unwrap();
        let y = subspace_inner_product(&p2, &p1).unwrap();
        prop_assert!((x - y).abs() < 1e-10);
        prop_assert!((-1e-12..=1.0 + 1e-10).contains(&x));
        prop_assert!((subspace_inner_product(&p1, &p1).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn seeded_elements_act_unitarily(seed in any::<u64>(), p in 0u32..3, q in 0u32..3) {
        let rep = build_irrep(HighestWeight::su3(p, q)).unwrap();
        let g = random_group_element(GroupId::Su3, seed);
        let m = rep.group_matrix_at(&g).unwrap();
        prop_assert!(linalg::unitarity_defect(&m) < 1e-10);
    }
}
