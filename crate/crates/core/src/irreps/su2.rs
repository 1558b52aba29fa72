use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{HighestWeight, Irrep};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Spin two_j/2 in the basis |j⟩, |j−1⟩, …, |−j⟩.
///
/// e has superdiagonal entries √(k(two_j+1−k)), k = 1..two_j.
pub fn build_irrep_su2(two_j: i64) -> Result<Irrep> {
    if two_j < 0 {
        return Err(Error::InvalidArgument(format!("two_j = {two_j} is negative")));
    }
    let n = two_j as usize + 1;
    let mut e = CMatrix::zeros(n, n);
    let mut h = CMatrix::zeros(n, n);
    let mut weight_labels = Vec::with_capacity(n);
    for k in 0..n {
        let w = two_j - 2 * k as i64;
        h[(k, k)] = Complex64::new(w as f64, 0.0);
        weight_labels.push(vec![w]);
    }
    for k in 1..n {
        let c = ((k as i64 * (two_j + 1 - k as i64)) as f64).sqrt();
        e[(k - 1, k)] = Complex64::new(c, 0.0);
    }
    let f = e.adjoint();
    let generators = BTreeMap::from([("e".to_string(), e), ("f".to_string(), f), ("h".to_string(), h)]);
    let irrep = Irrep {
        hw: HighestWeight::su2(two_j as u32),
        dim: n,
        generators,
        weight_labels,
    };
    irrep.validate()?;
    Ok(irrep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spins() {
        let half = build_irrep_su2(1).unwrap();
        assert_eq!(half.dim, 2);
        assert_eq!(half.generators["h"][(0, 0)].re, 1.0);
        assert_eq!(half.generators["h"][(1, 1)].re, -1.0);

        let one = build_irrep_su2(2).unwrap();
        assert_eq!(one.dim, 3);
        let e = &one.generators["e"];
        assert!((e[(0, 1)].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((e[(1, 2)].re - 2f64.sqrt()).abs() < 1e-15);

        let trivial = build_irrep_su2(0).unwrap();
        for m in trivial.generators.values() {
            assert_eq!(m.shape(), (1, 1));
            assert_eq!(m[(0, 0)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn negative_spin_rejected() {
        assert!(matches!(build_irrep_su2(-1), Err(Error::InvalidArgument(_))));
    }
}
