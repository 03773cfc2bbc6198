//! 2x2 complex matrices in column convention: column `c` is the image of `|c⟩`.

use std::ops::Mul;

use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn real(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Mat2::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2([[s, ZERO], [ZERO, s]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    /// Entrywise deviation of `M M†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        (*self * self.adjoint()).max_deviation(&Mat2::IDENTITY)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Applies the matrix to the column vector `(a0, a1)`.
    #[inline]
    pub fn apply(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_of_product() {
        let a = Mat2::new(
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.9),
            Complex64::new(1.0, -0.5),
            Complex64::new(0.0, 2.0),
        );
        let b = Mat2::real(0.5, -1.0, 2.0, 0.25);
        let lhs = (a * b).adjoint();
        let rhs = b.adjoint() * a.adjoint();
        assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn apply_matches_columns() {
        let m = Mat2::real(1.0, 2.0, 3.0, 4.0);
        assert_eq!(m.apply(ONE, ZERO), (ONE, Complex64::new(3.0, 0.0)));
        assert_eq!(
            m.apply(ZERO, ONE),
            (Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0))
        );
    }
}
