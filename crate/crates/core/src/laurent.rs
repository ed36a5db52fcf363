//! Integer Laurent polynomials in `z` with exponents reduced mod n, and square
//! matrices of them.
//!
//! The only evaluation points are n-th roots of unity, so `z^-m` is stored as
//! `z^(n-m)`. Rendering can show either form; see [`ExponentStyle`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;

/// `exp(2 pi i m / n)` with the angle reduced exactly first.
pub fn root_of_unity(n: usize, m: usize) -> C64 {
    let m = m % n;
    C64::from_polar(1.0, TAU * m as f64 / n as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "modulus must be positive");
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::monomial(n, c, 0)
    }

    /// `c * z^exp`, with a possibly negative exponent.
    pub fn monomial(n: usize, c: i64, exp: i64) -> Self {
        let mut p = Self::zero(n);
        p.add_term(c, exp);
        p
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    /// Accumulates `c * z^exp`.
    pub fn add_term(&mut self, c: i64, exp: i64) {
        if c == 0 {
            return;
        }
        let e = exp.rem_euclid(self.n as i64) as usize;
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, exp: usize) -> i64 {
        self.coeffs.get(&(exp % self.n)).copied().unwrap_or(0)
    }

    /// Stored `(exponent, coefficient)` pairs, exponents ascending in `[0, n)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    /// Value at `z = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `p(z^-1)`, the complex conjugate on the unit circle.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in self.terms() {
            out.add_term(c, -(e as i64));
        }
        out
    }

    /// Value at `z = exp(2 pi i r / n)`.
    pub fn eval(&self, r: usize) -> C64 {
        self.terms()
            .map(|(e, c)| root_of_unity(self.n, (r % self.n) * e) * c as f64)
            .sum()
    }

    pub fn render(&self, style: ExponentStyle) -> String {
        self.render_with(style, false)
    }

    pub fn render_latex(&self, style: ExponentStyle) -> String {
        self.render_with(style, true)
    }

    fn render_with(&self, style: ExponentStyle, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let n = self.n as i64;
        let mut shown: Vec<(i64, i64)> = self
            .terms()
            .map(|(e, c)| {
                let e = e as i64;
                let shown = match style {
                    ExponentStyle::Positive => e,
                    ExponentStyle::Balanced if 2 * e > n => e - n,
                    ExponentStyle::Balanced => e,
                    ExponentStyle::Negative if e > 0 => e - n,
                    ExponentStyle::Negative => e,
                };
                (shown, c)
            })
            .collect();
        // Constant first, then by magnitude, positive before negative.
        shown.sort_by_key(|&(e, _)| (e.abs(), e < 0));
        let mut out = String::new();
        for (i, (e, c)) in shown.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            out.push_str(sign);
            let mag = c.abs();
            if e == 0 {
                let _ = write!(out, "{mag}");
                continue;
            }
            if mag != 1 {
                let _ = write!(out, "{mag}");
            }
            match (e, latex) {
                (1, _) => out.push('z'),
                (_, false) => {
                    let _ = write!(out, "z^{e}");
                }
                (_, true) => {
                    let _ = write!(out, "z^{{{e}}}");
                }
            }
        }
        out
    }
}

/// How stored exponents in `[0, n)` are shown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentStyle {
    /// As stored: `z^4` for `z^4` mod 6.
    Positive,
    /// Exponents above n/2 shown negative: `z^5` mod 9 becomes `z^-4`.
    Balanced,
    /// Every nonconstant term shown negative: `z^4` mod 6 becomes `z^-2`.
    Negative,
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "modulus mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e as i64);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "modulus mismatch");
        let mut out = LaurentPoly::zero(self.n);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, (e1 + e2) as i64);
            }
        }
        out
    }
}

/// Layout conventions for rendering a whole matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixStyle {
    /// Positive exponents, except that a strictly-lower entry equal to the
    /// conjugate of its transpose is shown with negated exponents.
    General,
    /// The tridiagonal 2-token layout: upper entries negative, lower entries
    /// positive, diagonal balanced.
    Tridiagonal,
}

/// Square matrix of Laurent polynomials sharing one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    order: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(n: usize, order: usize) -> Self {
        Self {
            n,
            order,
            entries: vec![LaurentPoly::zero(n); order * order],
        }
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.modulus(), self.n, "modulus mismatch");
        self.entries[i * self.order + j] = p;
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: i64, exp: i64) {
        self.entries[i * self.order + j].add_term(c, exp);
    }

    /// Entrywise evaluation at `z = exp(2 pi i r / n)`.
    pub fn specialize(&self, r: usize) -> DMatrix<C64> {
        DMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j).eval(r))
    }

    /// Integer matrix at `z = 1`.
    pub fn at_one(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j).coefficient_sum() as f64)
    }

    pub fn entry_styles(&self, style: MatrixStyle) -> Vec<Vec<ExponentStyle>> {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| match style {
                        MatrixStyle::General => {
                            if i > j && !self.get(i, j).is_zero() && *self.get(i, j) == self.get(j, i).conj() {
                                ExponentStyle::Negative
                            } else {
                                ExponentStyle::Positive
                            }
                        }
                        MatrixStyle::Tridiagonal => match i.cmp(&j) {
                            std::cmp::Ordering::Less => ExponentStyle::Negative,
                            std::cmp::Ordering::Equal => ExponentStyle::Balanced,
                            std::cmp::Ordering::Greater => ExponentStyle::Positive,
                        },
                    })
                    .collect()
            })
            .collect()
    }

    /// Rendered entries, row-major.
    pub fn rendered_entries(&self, style: MatrixStyle) -> Vec<Vec<String>> {
        let styles = self.entry_styles(style);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).render(styles[i][j])).collect())
            .collect()
    }

    /// Plain text with space-aligned columns, one row per line.
    pub fn render_text(&self, style: MatrixStyle) -> String {
        let cells = self.rendered_entries(style);
        let widths: Vec<usize> = (0..self.order)
            .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_latex(&self, style: MatrixStyle) -> String {
        let styles = self.entry_styles(style);
        let mut out = String::from("\\begin{pmatrix}\n");
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.get(i, j).render_latex(styles[i][j]))
                .collect();
            out.push_str("  ");
            out.push_str(&row.join(" & "));
            if i + 1 < self.order {
                out.push_str(" \\\\");
            }
            out.push('\n');
        }
        out.push_str("\\end{pmatrix}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(n: usize, terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(n);
        for &(c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    #[test]
    fn storage_invariants() {
        let p = poly(6, &[(-1, 0), (-1, -2), (1, 4), (1, 0)]);
        // -1 - z^-2 + z^4 + 1 = 0 since z^-2 == z^4
        assert!(p.is_zero());
        let q = poly(6, &[(-1, -2)]);
        assert_eq!(q.terms().collect::<Vec<_>>(), vec![(4, -1)]);
    }

    #[test]
    fn evaluation_examples() {
        let p = poly(6, &[(1, 1), (1, 3), (1, 5)]);
        assert!(p.eval(1).norm() < 1e-12);
        assert!((LaurentPoly::constant(5, 1).eval(3) - C64::new(1.0, 0.0)).norm() < 1e-15);
        let inv = poly(7, &[(1, 6)]);
        assert!((inv.eval(1) - root_of_unity(7, 1).conj()).norm() < 1e-15);
        // -(z^3 + z^9 + z^15) at z = exp(i pi / 3): each term is -1, so the value is 3.
        let d = poly(6, &[(-1, 1), (-1, 3), (-1, 5)]);
        assert!((d.eval(3) - C64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rendering() {
        let p = poly(6, &[(-1, 0), (-1, -2)]);
        assert_eq!(p.render(ExponentStyle::Positive), "-1-z^4");
        assert_eq!(p.render(ExponentStyle::Negative), "-1-z^-2");
        let q = poly(9, &[(4, 0), (-1, 4), (-1, 5)]);
        assert_eq!(q.render(ExponentStyle::Balanced), "4-z^4-z^-4");
        assert_eq!(q.render_latex(ExponentStyle::Balanced), "4-z^{4}-z^{-4}");
        assert_eq!(poly(6, &[(-1, 1), (-1, 3), (-1, 5)]).render(ExponentStyle::Positive), "-z-z^3-z^5");
        assert_eq!(poly(4, &[(2, 0), (-1, 1), (-1, 3)]).render(ExponentStyle::Positive), "2-z-z^3");
        assert_eq!(poly(5, &[(3, 2), (-2, 0)]).render(ExponentStyle::Positive), "-2+3z^2");
        assert_eq!(LaurentPoly::zero(5).render(ExponentStyle::Balanced), "0");
    }

    #[test]
    fn specialize_constant_matrix() {
        let mut m = LaurentMatrix::zeros(5, 3);
        for i in 0..3 {
            m.set(i, i, LaurentPoly::constant(5, 1));
        }
        for r in 0..5 {
            let s = m.specialize(r);
            assert_eq!(s, DMatrix::<C64>::identity(3, 3));
        }
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-5i64..=5, -20i64..20), 0..6).prop_map(move |terms| poly(n, &terms))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(
            (_n, p, q, r) in (2usize..13).prop_flat_map(|n| (Just(n), arb_poly(n), arb_poly(n), 0..n))
        ) {
            let lhs = (&p * &q).eval(r);
            let rhs = p.eval(r) * q.eval(r);
            prop_assert!((lhs - rhs).norm() < 1e-9);
            let sum = (&p + &q).eval(r);
            prop_assert!((sum - (p.eval(r) + q.eval(r))).norm() < 1e-9);
        }

        #[test]
        fn conjugate_sectors(
            (n, p, r) in (2usize..13).prop_flat_map(|n| (Just(n), arb_poly(n), 0..n))
        ) {
            let a = p.eval(r);
            let b = p.eval((n - r) % n);
            prop_assert!((a - b.conj()).norm() < 1e-9);
            prop_assert!((p.conj().eval(r) - a.conj()).norm() < 1e-9);
        }
    }
}
