//! Dense matrix utilities shared by the separation, bound, and
//! identifiability modules.
//!
//! Everything here operates on small matrices (K, N <= 16 in practice), so
//! the implementations favor clarity over blocking tricks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Block-diagonal matrix with `blocks` on the diagonal, in order.
pub fn direct_sum(blocks: &[DMatrix<f64>]) -> Result<DMatrix<f64>> {
    if blocks.is_empty() {
        return Err(Error::EmptyDirectSum);
    }
    for b in blocks {
        if !b.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "direct sum block is {}x{}, expected square",
                b.nrows(),
                b.ncols()
            )));
        }
    }
    let side: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(side, side);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((offset, offset), (b.nrows(), b.ncols())).copy_from(b);
        offset += b.nrows();
    }
    Ok(out)
}

/// trace(A ∘ C ⊘ D), the elementwise product/quotient trace used by the ISR
/// bound. All inputs must share one square shape and D must be free of zeros.
pub fn hadamard_quotient_trace(
    a: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
) -> Result<f64> {
    let shape = a.shape();
    if !a.is_square() || c.shape() != shape || d.shape() != shape {
        return Err(Error::ShapeMismatch(format!(
            "hadamard_quotient_trace: {:?} vs {:?} vs {:?}",
            a.shape(),
            c.shape(),
            d.shape()
        )));
    }
    if d.iter().any(|&x| x == 0.0) {
        return Err(Error::HadamardDivisionByZero);
    }
    let mut tr = 0.0;
    for i in 0..shape.0 {
        tr += a[(i, i)] * c[(i, i)] / d[(i, i)];
    }
    Ok(tr)
}

/// Elementwise (Hadamard) product.
pub fn hadamard(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "hadamard: {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.component_mul(b))
}

/// Kronecker product A ⊗ B.
pub fn kronecker(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// Check symmetry up to `tol` times the largest magnitude entry.
pub fn is_symmetric(m: &DMatrix<f64>, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let scale = m.amax().max(1e-300);
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if (m[(i, j)] - m[(j, i)]).abs() > tol * scale {
                return false;
            }
        }
    }
    true
}

/// Validate that `m` is symmetric positive definite.
///
/// The definiteness test is an eigenvalue-ratio threshold: the smallest
/// eigenvalue must exceed `1e-12` times the largest.
pub fn check_spd(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSpd(format!("{what}: not square")));
    }
    if !is_symmetric(m, 1e-10) {
        return Err(Error::NotSpd(format!("{what}: not symmetric")));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotSpd(format!("{what}: non-finite entries")));
    }
    let eig = m.clone().symmetric_eigenvalues();
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || min <= 1e-12 * max {
        return Err(Error::NotSpd(format!(
            "{what}: eigenvalue range [{min:.3e}, {max:.3e}]"
        )));
    }
    Ok(())
}

/// Symmetric positive-definite square root via eigendecomposition.
pub fn spd_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_spd(m, "spd_sqrt input")?;
    let eig = m.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| x.sqrt()));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Inverse of an SPD matrix via Cholesky.
pub fn spd_inverse(m: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    nalgebra::Cholesky::new(m.clone())
        .map(|ch| ch.inverse())
        .ok_or_else(|| Error::NotSpd(format!("{what}: Cholesky failed")))
}

/// 2-norm condition number from singular values.
pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Relative Frobenius distance ‖a − b‖_F / ‖b‖_F.
pub fn rel_frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Smallest and largest eigenvalue of a symmetric matrix.
pub fn sym_eig_range(m: &DMatrix<f64>) -> (f64, f64) {
    let eig = m.clone().symmetric_eigenvalues();
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    (min, max)
}

/// Diagonal of a matrix as a vector.
pub fn diagonal(m: &DMatrix<f64>) -> DVector<f64> {
    m.diagonal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;
    use proptest::prelude::*;

    #[test]
    fn direct_sum_scalars() {
        let out = direct_sum(&[dmatrix![2.0], dmatrix![3.0]]).unwrap();
        assert_eq!(out, dmatrix![2.0, 0.0; 0.0, 3.0]);
    }

    #[test]
    fn direct_sum_identities() {
        let out = direct_sum(&[DMatrix::identity(2, 2), DMatrix::identity(3, 3)]).unwrap();
        assert_eq!(out, DMatrix::<f64>::identity(5, 5));
    }

    #[test]
    fn direct_sum_mixed_sizes() {
        let out = direct_sum(&[dmatrix![1.0, 2.0; 3.0, 4.0], dmatrix![5.0]]).unwrap();
        assert_eq!(out, dmatrix![1.0, 2.0, 0.0; 3.0, 4.0, 0.0; 0.0, 0.0, 5.0]);
    }

    #[test]
    fn direct_sum_empty_errors() {
        assert!(matches!(direct_sum(&[]), Err(Error::EmptyDirectSum)));
    }

    #[test]
    fn direct_sum_rejects_non_square() {
        let r = direct_sum(&[DMatrix::<f64>::zeros(2, 3)]);
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn hqt_identity_times_ones() {
        let a = DMatrix::<f64>::identity(2, 2);
        let ones = DMatrix::from_element(2, 2, 1.0);
        assert_eq!(hadamard_quotient_trace(&a, &ones, &ones).unwrap(), 2.0);
    }

    #[test]
    fn hqt_diagonal_case() {
        let a = dmatrix![2.0, 0.0; 0.0, 3.0];
        let c = dmatrix![1.0, 4.0; 4.0, 1.0];
        let d = dmatrix![1.0, 2.0; 2.0, 1.0];
        assert_eq!(hadamard_quotient_trace(&a, &c, &d).unwrap(), 5.0);
    }

    #[test]
    fn hqt_zero_divisor_errors() {
        let a = DMatrix::<f64>::identity(2, 2);
        let c = DMatrix::from_element(2, 2, 1.0);
        let d = dmatrix![1.0, 0.0; 1.0, 1.0];
        assert!(matches!(
            hadamard_quotient_trace(&a, &c, &d),
            Err(Error::HadamardDivisionByZero)
        ));
    }

    /// Brute-force oracle: form A ∘ C ⊘ D elementwise and sum the diagonal.
    fn hqt_brute(a: &DMatrix<f64>, c: &DMatrix<f64>, d: &DMatrix<f64>) -> f64 {
        let n = a.nrows();
        let mut full = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                full[(i, j)] = a[(i, j)] * c[(i, j)] / d[(i, j)];
            }
        }
        (0..n).map(|i| full[(i, i)]).sum()
    }

    #[test]
    fn hqt_matches_brute_force_on_random_spd() {
        let mut rng = crate::rng::RngHandle::new(11, 0).rng();
        for _ in 0..20 {
            let raw = DMatrix::from_fn(3, 3, |_, _| rand::Rng::gen_range(&mut rng, -1.0..1.0));
            let a = &raw * raw.transpose() + DMatrix::identity(3, 3);
            let c = &a + DMatrix::from_element(3, 3, 2.0);
            let d = DMatrix::from_fn(3, 3, |_, _| rand::Rng::gen_range(&mut rng, 0.5..2.0));
            let got = hadamard_quotient_trace(&a, &c, &d).unwrap();
            let want = hqt_brute(&a, &c, &d);
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    fn arb_block(max: usize) -> impl Strategy<Value = DMatrix<f64>> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-2.0..2.0f64, n * n)
                .prop_map(move |v| DMatrix::from_vec(n, n, v))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn direct_sum_associative(a in arb_block(4), b in arb_block(4), c in arb_block(4)) {
            let ab_c = direct_sum(&[direct_sum(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
            let a_bc = direct_sum(&[a.clone(), direct_sum(&[b.clone(), c.clone()]).unwrap()]).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn direct_sum_determinant_multiplies(seed in 0u64..500) {
            // Well-conditioned random blocks up to 8x8: diagonally dominated.
            let mut rng = crate::rng::RngHandle::new(seed, 5).rng();
            let mut sizes = vec![];
            for _ in 0..2 {
                sizes.push(rand::Rng::gen_range(&mut rng, 1..=8usize));
            }
            let blocks: Vec<DMatrix<f64>> = sizes
                .iter()
                .map(|&n| {
                    DMatrix::from_fn(n, n, |i, j| {
                        let x: f64 = rand::Rng::gen_range(&mut rng, -1.0..1.0);
                        if i == j { x + 4.0 } else { x }
                    })
                })
                .collect();
            let whole = direct_sum(&blocks).unwrap();
            let det_whole = whole.determinant();
            let det_parts: f64 = blocks.iter().map(|b| b.determinant()).product();
            prop_assert!((det_whole - det_parts).abs() <= 1e-10 * det_parts.abs().max(1e-10));
        }
    }

    #[test]
    fn spd_check_rejects_indefinite() {
        let m = dmatrix![1.0, 2.0; 2.0, 1.0];
        assert!(check_spd(&m, "test").is_err());
        let ok = dmatrix![2.0, 0.5; 0.5, 1.0];
        assert!(check_spd(&ok, "test").is_ok());
    }

    #[test]
    fn spd_sqrt_squares_back() {
        let m = dmatrix![2.0, 0.5; 0.5, 1.0];
        let r = spd_sqrt(&m).unwrap();
        assert!(rel_frobenius(&(&r * &r), &m) < 1e-12);
    }
}
