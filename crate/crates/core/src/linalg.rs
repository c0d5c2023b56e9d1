//! Dense complex matrices and the handful of norms the checks need.

use nalgebra::DMatrix;
pub use num_complex::Complex64;

pub type ComplexMatrix = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn from_real(m: &DMatrix<f64>) -> ComplexMatrix {
    m.map(c)
}

/// Largest entry modulus (0 for an empty matrix).
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max(|U U† − I|, |U† U − I|) entrywise.
pub fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    let id = identity(n);
    let ua = u.adjoint();
    max_abs_diff(&(u * &ua), &id).max(max_abs_diff(&(&ua * u), &id))
}

/// Block-diagonal matrix with the given blocks in order.
pub fn direct_sum(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r, c0), b.shape()).copy_from(b);
        r += b.nrows();
        c0 += b.ncols();
    }
    out
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Matrix whose every entry is real to within `tol`.
pub fn is_real(m: &ComplexMatrix, tol: f64) -> bool {
    m.iter().all(|z| z.im.abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sum_and_kron_shapes() {
        let a = identity(2);
        let b = ComplexMatrix::from_element(1, 3, c(2.0));
        let s = direct_sum(&[a.clone(), b.clone()]);
        assert_eq!(s.shape(), (3, 5));
        assert_eq!(s[(2, 4)], c(2.0));
        assert_eq!(s[(0, 4)], c(0.0));
        assert_eq!(kron(&a, &b).shape(), (2, 6));
    }

    #[test]
    fn unitarity_of_hadamard() {
        let h = ComplexMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(1.0), c(-1.0)]) / c(2f64.sqrt());
        assert!(unitarity_deviation(&h) < 1e-15);
        assert!(unitarity_deviation(&(h * c(1.1))) > 0.1);
    }
}
