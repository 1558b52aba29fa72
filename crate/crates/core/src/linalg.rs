//! Dense complex matrix helpers shared by every module.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Spectral (operator 2-) norm.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// ‖M - M†‖ measured entrywise.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn anti_hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m + m.adjoint()))
}

pub fn unitarity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m.adjoint() * m - identity(m.nrows())))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen { values: vec![], vectors: CMatrix::zeros(0, 0) };
    }
    // Symmetrize first so roundoff asymmetry cannot leak into the solver.
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Projection onto the span of the selected orthonormal columns.
pub fn column_projector(vectors: &CMatrix, columns: &[usize]) -> CMatrix {
    let n = vectors.nrows();
    let mut basis = CMatrix::zeros(n, columns.len());
    for (dst, &src) in columns.iter().enumerate() {
        basis.set_column(dst, &vectors.column(src));
    }
    let p = &basis * basis.adjoint();
    (&p + p.adjoint()).scale(0.5)
}

/// Cached spectral data for t ↦ exp(tX) with X anti-Hermitian.
///
/// With iX = V Λ V†, exp(tX) = V diag(e^{-iλt}) V†.
#[derive(Clone)]
pub struct OneParameter {
    eigen_values: Vec<f64>,
    basis: CMatrix,
    diagonal: bool,
}

impl OneParameter {
    pub fn new(x: &CMatrix) -> Self {
        let diagonal = is_diagonal(x);
        if diagonal {
            let n = x.nrows();
            // iX is Hermitian with eigenvalues i·x_kk.
            let eigen_values = (0..n).map(|k| (I * x[(k, k)]).re).collect();
            return OneParameter { eigen_values, basis: identity(n), diagonal };
        }
        let h = x.map(|z| I * z);
        let eig = hermitian_eigen(&h);
        OneParameter { eigen_values: eig.values, basis: eig.vectors, diagonal }
    }

    pub fn dim(&self) -> usize {
        self.eigen_values.len()
    }

    /// Phases e^{-iλt} in the eigenbasis.
    pub fn phases(&self, t: f64) -> Vec<Complex64> {
        self.eigen_values.iter().map(|&l| Complex64::from_polar(1.0, -l * t)).collect()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn exp(&self, t: f64) -> CMatrix {
        let phases = self.phases(t);
        if self.diagonal {
            return CMatrix::from_diagonal(&nalgebra::DVector::from_vec(phases));
        }
        let mut scaled = self.basis.clone();
        for (j, ph) in phases.iter().enumerate() {
            for i in 0..scaled.nrows() {
                scaled[(i, j)] *= ph;
            }
        }
        scaled * self.basis.adjoint()
    }
}

pub fn is_diagonal(m: &CMatrix) -> bool {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if i != j && m[(i, j)] != ZERO {
                return false;
            }
        }
    }
    true
}

pub fn row_major_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.push([m[(r, c)].re, m[(r, c)].im]);
        }
    }
    out
}

pub fn from_row_major_pairs(n: usize, pairs: &[[f64; 2]]) -> crate::error::Result<CMatrix> {
    if pairs.len() != n * n {
        return Err(crate::error::Error::Parse(format!("expected {} entries, got {}", n * n, pairs.len())));
    }
    Ok(CMatrix::from_row_iterator(n, n, pairs.iter().map(|p| Complex64::new(p[0], p[1]))))
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for k in 0..(2 * n) {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                assert!((q - exact).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn one_parameter_matches_dense_exp_for_nondiagonal() {
        // X = t(E12 - E21) has exp = rotation.
        let mut x = CMatrix::zeros(2, 2);
        x[(0, 1)] = ONE;
        x[(1, 0)] = -ONE;
        let u = OneParameter::new(&x).exp(0.3);
        assert!((u[(0, 0)].re - 0.3f64.cos()).abs() < 1e-14);
        assert!((u[(0, 1)].re - 0.3f64.sin()).abs() < 1e-14);
        assert!((u[(1, 0)].re + 0.3f64.sin()).abs() < 1e-14);
    }
}
