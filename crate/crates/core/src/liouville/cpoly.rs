//! Dense polynomials with `Complex64` coefficients, ascending order.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CPoly {
    /// `coeffs[i]` multiplies `z^i`; no trailing zeros.
    coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        CPoly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        CPoly::new(vec![c])
    }

    pub fn monomial(c: Complex64, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = c;
        CPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Sum of `|c_i| |z|^i`, the natural scale for rounding errors in `eval`.
    pub fn eval_abs(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> CPoly {
        CPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, k: Complex64) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// `z^d p(1/z)` for `d >= degree`.
    pub fn reversed(&self, d: usize) -> CPoly {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c;
        }
        CPoly::new(coeffs)
    }

    /// Quotient by `(z - root)`, remainder dropped.
    pub fn deflate(&self, root: Complex64) -> CPoly {
        let n = self.coeffs.len();
        if n <= 1 {
            return CPoly::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for i in (1..n).rev() {
            carry = carry * root + self.coeffs[i];
            out[i - 1] = carry;
        }
        CPoly::new(out)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &CPoly, i: usize| p.coeffs.get(i).copied().unwrap_or_default();
        CPoly::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basic_ops() {
        let p = CPoly::from_real(&[-1.0, 0.0, 1.0, 0.0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(c(3.0)), c(8.0));
        assert_eq!(p.derivative(), CPoly::from_real(&[0.0, 2.0]));
        assert_eq!(p.reversed(3), CPoly::from_real(&[0.0, 1.0, 0.0, -1.0]));
        assert_eq!(p.deflate(c(1.0)), CPoly::from_real(&[1.0, 1.0]));
        let q = &CPoly::from_real(&[1.0, 1.0]) * &CPoly::from_real(&[-1.0, 1.0]);
        assert_eq!(q, p);
        assert!((&p - &q).is_zero());
        assert_eq!(CPoly::default().degree(), None);
        assert_eq!(CPoly::monomial(c(2.0), 3).eval(c(2.0)), c(16.0));
    }
}
