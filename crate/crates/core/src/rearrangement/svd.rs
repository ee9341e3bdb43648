//! Singular values of small complex matrices by one-sided (Hestenes) Jacobi
//! rotations.

use num_complex::Complex64;

use super::step::SquareMatrix;
use crate::{Error, Result};

pub const MAX_SIZE: usize = 64;
pub const MAX_SWEEPS: usize = 30;
/// A pair of columns is rotated while `|a_iᴴ a_j| > ROTATION_TOL · ‖A‖_F²`.
pub const ROTATION_TOL: f64 = 1e-13;
/// Singular values below `CLAMP_TOL · σ_max` are reported as zero.
pub const CLAMP_TOL: f64 = 1e-14;

/// The `n` singular values of `a`, in decreasing order.
pub fn singular_values(a: &SquareMatrix) -> Result<Vec<f64>> {
    let n = a.size();
    if n == 0 || n > MAX_SIZE {
        return Err(Error::input(format!("matrix size {n} outside 1..={MAX_SIZE}")));
    }
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a.get(i, j)).collect()).collect();

    let frob_sq: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum();
    if !frob_sq.is_finite() {
        return Err(Error::Numeric("matrix norm is not finite".into()));
    }
    let threshold = ROTATION_TOL * frob_sq;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if rotate_pair(&mut cols, i, j, threshold) {
                    rotated = true;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "Jacobi iteration did not converge within {MAX_SWEEPS} sweeps"
        )));
    }

    let mut sigma: Vec<f64> = cols.iter().map(|c| column_norm(c)).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    let largest = sigma[0];
    for s in &mut sigma {
        if *s < CLAMP_TOL * largest {
            *s = 0.0;
        }
    }
    Ok(sigma)
}

fn column_norm(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalises columns `i` and `j`; returns whether a rotation was applied.
fn rotate_pair(cols: &mut [Vec<Complex64>], i: usize, j: usize, threshold: f64) -> bool {
    let (alpha, beta, gamma) = {
        let (ci, cj) = (&cols[i], &cols[j]);
        let alpha: f64 = ci.iter().map(|z| z.norm_sqr()).sum();
        let beta: f64 = cj.iter().map(|z| z.norm_sqr()).sum();
        let gamma: Complex64 = ci.iter().zip(cj).map(|(x, y)| x.conj() * y).sum();
        (alpha, beta, gamma)
    };
    let g = gamma.norm();
    if g <= threshold || g == 0.0 {
        return false;
    }
    // Strip the phase so the off-diagonal entry is real, then apply the real
    // symmetric Jacobi rotation.
    let phase = gamma / g;
    let zeta = (beta - alpha) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;

    let (left, right) = cols.split_at_mut(j);
    let ci = &mut left[i];
    let cj = &mut right[0];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yy = *y * phase.conj();
        let xi = *x;
        *x = xi * c - yy * s;
        *y = xi * s + yy * c;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let a = SquareMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 4.0]]).unwrap();
        assert_eq!(singular_values(&a).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn zero_matrix() {
        for n in [1, 2, 5] {
            assert_eq!(singular_values(&SquareMatrix::zeros(n)).unwrap(), vec![0.0; n]);
        }
    }

    #[test]
    fn shear_gives_golden_ratio_pair() {
        let a = SquareMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s[0] - phi).abs() < 1e-12);
        assert!((s[1] - (phi - 1.0)).abs() < 1e-12);
        assert!((s[0] - 1.6180339887).abs() < 1e-10);
        assert!((s[1] - 0.6180339887).abs() < 1e-10);
    }

    #[test]
    fn complex_unitary_has_unit_singular_values() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = SquareMatrix::new(
            2,
            vec![
                Complex64::new(h, 0.0),
                Complex64::new(0.0, h),
                Complex64::new(0.0, h),
                Complex64::new(h, 0.0),
            ],
        )
        .unwrap();
        for s in singular_values(&u).unwrap() {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_one_clamps_the_rest() {
        let a =
            SquareMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[3.0, 6.0, 9.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 14.0).abs() < 1e-12);
        assert_eq!(&s[1..], &[0.0, 0.0]);
    }

    #[test]
    fn oversized_input_is_rejected() {
        assert!(singular_values(&SquareMatrix::zeros(65)).is_err());
    }
}
