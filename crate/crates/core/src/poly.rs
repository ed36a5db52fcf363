//! Dense univariate polynomials, coefficients stored lowest degree first.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::laurent::C64;

/// Integer polynomial, used for the exact transfer-matrix recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<i128>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Multiplication by the variable.
    pub fn shift_up(&self) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.0.len() + 1);
        c.push(0);
        c.extend_from_slice(&self.0);
        Self(c)
    }

    pub fn to_real(&self) -> Poly {
        Poly::new(self.0.iter().map(|&c| c as f64).collect())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.to_real().eval(x)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0) - rhs.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

/// Real polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(Vec<f64>);

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(vec![a, b])
    }

    /// `prod (x - root)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::linear(-r, 1.0))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    /// Coefficients highest degree first.
    pub fn coeffs_descending(&self) -> Vec<f64> {
        self.0.iter().rev().copied().collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, x: C64) -> C64 {
        self.0.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        self.scale(1.0 / self.leading())
    }

    /// `p(a + b x)`.
    pub fn compose_linear(&self, a: f64, b: f64) -> Self {
        let inner = Poly::linear(a, b);
        self.0
            .iter()
            .rev()
            .fold(Poly::constant(0.0), |acc, &c| &(&acc * &inner) + &Poly::constant(c))
    }

    /// Roots as eigenvalues of the companion matrix.
    pub fn companion_roots(&self) -> Result<Vec<C64>> {
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let mut comp = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            comp[(i, deg - 1)] = -self.0[i] / lead;
        }
        let ev = comp.complex_eigenvalues();
        if ev.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("companion eigenvalues are not finite".into()));
        }
        Ok(ev.iter().copied().collect())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0.0) + rhs.0.get(i).copied().unwrap_or(0.0))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![0.0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_eval() {
        let p = Poly::from_roots(&[1.0, 2.0, 3.0]);
        assert_eq!(p.coeffs(), &[-6.0, 11.0, -6.0, 1.0]);
        assert_eq!(p.eval(4.0), 6.0);
        let q = p.compose_linear(1.0, 2.0); // p(1 + 2x)
        for x in [-1.0, 0.0, 0.5, 2.0] {
            assert!((q.eval(x) - p.eval(1.0 + 2.0 * x)).abs() < 1e-12);
        }
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn companion() {
        let p = Poly::from_roots(&[0.5, 1.5, -2.0, 7.0]).scale(3.0);
        let mut roots: Vec<f64> = p.companion_roots().unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (a, b) in roots.iter().zip([-2.0, 0.5, 1.5, 7.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(Poly::constant(2.0).companion_roots().unwrap().is_empty());
    }

    #[test]
    fn int_poly() {
        let p = &IntPoly::x().shift_up() - &IntPoly::constant(2);
        assert_eq!(p.coeffs(), &[-2, 0, 1]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(IntPoly::new(vec![0, 0]).degree(), None);
        assert_eq!(p.eval(3.0), 7.0);
    }
}
