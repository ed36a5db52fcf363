//! Two tokens on a cycle: tridiagonal sector matrices, the continued-fraction
//! description of their eigenvalues and closed-form sector polynomials.
//!
//! Representatives are `{0, h}` for `h = 1..=nu`, with `nu = floor(n/2)`.
//! Writing `c = cos(r pi / n)`, the sector variable is
//! `Z = (4 - lambda) / (2c)` and `alpha = 1 / c`.
//!
//! | case | n    | r          | sector eigenvalues            |
//! |------|------|------------|-------------------------------|
//! | a    | odd  | any        | `nu` roots of `Q_1 = Z - alpha` |
//! | b.1  | even | even       | `nu` roots                    |
//! | b.2  | even | `n/2`      | `2` and `nu - 1` fours        |
//! | b.3  | even | odd        | `nu - 1` roots, the 4 dropped |
//!
//! When `n = 2 mod 4` the sector `r = n/2` is also odd, and its last 4
//! belongs to the orbit `{0, n/2}` of period `n/2`; it is dropped as in b.3.
//!
//! Roots come from the polynomial form: `R_i, S_i` are expanded exactly as
//! integer polynomials in `Z`, the sector polynomial
//! `P(Z) = R_{nu-2} - (Z - alpha) S_{nu-2}` is rewritten in `lambda` for
//! display. Roots are not taken from that monomial form, whose companion
//! matrix is badly conditioned once `nu` passes about 10 with `r` near `n/2`.
//! Instead the sign changes of `P(Z(lambda))`, evaluated by the recurrence,
//! are bracketed on a grid over `[0, 8]` and bisected; every root is then
//! checked against the tridiagonal matrix.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{check_sector, Error, Result};
use crate::exec::{self, Execution};
use crate::laurent::{LaurentMatrix, C64};
use crate::linalg;
use crate::poly::{IntPoly, Poly};
use crate::spectrum::{DiscardReason, Method, SectorEntry, SectorSpectrum, SpectrumReport};
use crate::token_graph::binomial;

/// Smallest denominator tolerated in the continued fraction.
pub const POLE_TOL: f64 = 1e-12;
/// Half-width of the excluded band around `Z^2 = 4` for the closed form.
pub const BRANCH_GUARD: f64 = 0.1;
/// Distance from 4 within which a case-b.3 root counts as the spurious one.
pub const FOUR_TOL: f64 = 1e-8;
/// Accepted `sigma_min(B - lambda I)` for a verified root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorCase {
    /// n odd.
    Odd,
    /// n even, r even.
    EvenEven,
    /// n even, r = n/2: the sector matrix is diagonal.
    HalfTurn,
    /// n even, r odd.
    EvenOdd,
}

impl SectorCase {
    pub fn of(n: usize, r: usize) -> Self {
        if n % 2 == 1 {
            SectorCase::Odd
        } else if 2 * r == n {
            SectorCase::HalfTurn
        } else if r.is_multiple_of(2) {
            SectorCase::EvenEven
        } else {
            SectorCase::EvenOdd
        }
    }

    /// Whether the sector's eigenvalue 4 carried by the period-`n/2` orbit
    /// `{0, n/2}` is spurious. This happens exactly for odd `r` with n even,
    /// including `r = n/2` when `n = 2 mod 4`.
    pub fn drops_four(n: usize, r: usize) -> bool {
        n.is_multiple_of(2) && r % 2 == 1
    }
}

/// Number of eigenvalues sector `r` contributes to `F_2(C_n)`.
pub fn expected_roots(n: usize, r: usize) -> usize {
    half_index(n) - usize::from(SectorCase::drops_four(n, r))
}

/// Kept eigenvalues of the diagonal sector `r = n/2`.
fn half_turn_roots(n: usize) -> Vec<f64> {
    let mut roots = vec![4.0; expected_roots(n, n / 2)];
    roots[0] = 2.0;
    roots
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Domain(format!("the 2-token routes need n >= 4, got n = {n}")));
    }
    Ok(())
}

pub fn half_index(n: usize) -> usize {
    n / 2
}

/// The per-sector constants `Z(lambda)`, `alpha` and `nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorParams {
    pub n: usize,
    pub r: usize,
    pub nu: usize,
    pub case: SectorCase,
    /// `cos(r pi / n)`, never zero.
    pub cos: f64,
    pub alpha: f64,
}

impl SectorParams {
    /// Fails for `r = n/2` with n even, where `Z` is undefined.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        check_n(n)?;
        check_sector(n, r)?;
        let case = SectorCase::of(n, r);
        if case == SectorCase::HalfTurn {
            return Err(Error::Domain(format!("Z is undefined for r = n/2 = {r}")));
        }
        let cos = (r as f64 * PI / n as f64).cos();
        Ok(Self {
            n,
            r,
            nu: half_index(n),
            case,
            cos,
            alpha: 1.0 / cos,
        })
    }

    /// `(-1)^r`.
    pub fn sign(&self) -> f64 {
        if self.r.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    pub fn z(&self, lambda: f64) -> f64 {
        (4.0 - lambda) / (2.0 * self.cos)
    }

    pub fn lambda(&self, z: f64) -> f64 {
        4.0 - 2.0 * self.cos * z
    }

    /// `Z = a + b lambda`, returned as `(a, b)`.
    pub fn z_affine(&self) -> (f64, f64) {
        (2.0 * self.alpha, -0.5 * self.alpha)
    }
}

/// `(R_i, S_i)` under `R_{i+1} = S_i`, `S_{i+1} = Z S_i - R_i`.
///
/// Index 0 is `(1, Z - (-1)^r)` for odd n, `(2, Z)` for even n and even r,
/// and `(0, 1)` for even n and odd r; one step from the last gives `(1, Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferState {
    pub index: usize,
    pub r_poly: IntPoly,
    pub s_poly: IntPoly,
}

impl TransferState {
    pub fn initial(case: SectorCase, r: usize) -> Result<Self> {
        let (r_poly, s_poly) = match case {
            SectorCase::Odd => {
                let s = if r.is_multiple_of(2) { 1 } else { -1 };
                (IntPoly::constant(1), IntPoly::new(vec![-s, 1]))
            }
            SectorCase::EvenEven => (IntPoly::constant(2), IntPoly::x()),
            SectorCase::EvenOdd => (IntPoly::constant(0), IntPoly::constant(1)),
            SectorCase::HalfTurn => {
                return Err(Error::Domain("no transfer recurrence for r = n/2".into()));
            }
        };
        Ok(Self { index: 0, r_poly, s_poly })
    }

    pub fn step(&self) -> Self {
        Self {
            index: self.index + 1,
            r_poly: self.s_poly.clone(),
            s_poly: &self.s_poly.shift_up() - &self.r_poly,
        }
    }

    pub fn advanced(mut self, steps: usize) -> Self {
        for _ in 0..steps {
            self = self.step();
        }
        self
    }

    /// `deg S = deg R + 1` with unit leading coefficients. Holds from index 1
    /// on in every case, and from index 0 for odd n.
    pub fn is_normalized(&self) -> bool {
        match (self.r_poly.degree(), self.s_poly.degree()) {
            (Some(dr), Some(ds)) => {
                ds == dr + 1 && self.r_poly.leading().abs() == 1 && self.s_poly.leading().abs() == 1
            }
            _ => false,
        }
    }
}

/// `B_o(z)` or `B_e(z)` as a Laurent matrix, written the way the sector
/// matrices are usually displayed: super-diagonal `-1 - z^-1`, sub-diagonal
/// `-1 - z`, and the last row carrying the wrap-around terms.
pub fn b2_poly_matrix(n: usize) -> Result<LaurentMatrix> {
    check_n(n)?;
    let nu = half_index(n);
    let nu_exp = nu as i64;
    let mut m = LaurentMatrix::zeros(n, nu);
    for h in 0..nu {
        m.add_term(h, h, if h == 0 { 2 } else { 4 }, 0);
        if h + 1 < nu {
            m.add_term(h, h + 1, -1, 0);
            m.add_term(h, h + 1, -1, -1);
            m.add_term(h + 1, h, -1, 0);
            m.add_term(h + 1, h, -1, 1);
        }
    }
    if n % 2 == 1 {
        m.add_term(nu - 1, nu - 1, -1, nu_exp);
        m.add_term(nu - 1, nu - 1, -1, -nu_exp);
    } else {
        m.add_term(nu - 1, nu - 2, -1, nu_exp);
        m.add_term(nu - 1, nu - 2, -1, nu_exp + 1);
    }
    Ok(m)
}

/// The tridiagonal sector matrix evaluated at `z = exp(2 pi i r / n)`.
pub fn build_b2(n: usize, r: usize) -> Result<DMatrix<C64>> {
    check_sector(n, r)?;
    Ok(b2_poly_matrix(n)?.specialize(r))
}

fn checked_inverse(lambda: f64, denominator: f64) -> Result<f64> {
    if denominator.abs() < POLE_TOL {
        return Err(Error::Pole { lambda, denominator });
    }
    Ok(1.0 / denominator)
}

/// `Q_1` by the backward recurrence `Q_{h-1} = 1 / (Z - Q_h)` from the
/// terminal value of the sector's case.
pub fn contfrac_q1(lambda: f64, n: usize, r: usize) -> Result<f64> {
    let p = SectorParams::new(n, r)?;
    let z = p.z(lambda);
    let mut q = match p.case {
        SectorCase::Odd => checked_inverse(lambda, z - p.sign())?,
        SectorCase::EvenEven => 2.0 * checked_inverse(lambda, z)?,
        SectorCase::EvenOdd => 0.0,
        SectorCase::HalfTurn => unreachable!(),
    };
    for _ in 2..p.nu {
        q = checked_inverse(lambda, z - q)?;
    }
    Ok(q)
}

/// `P(Z)` and `dP/dZ` evaluated numerically through the recurrence.
pub fn sector_poly_eval_z(p: &SectorParams, z: f64) -> (f64, f64) {
    let (mut r, mut s, mut dr, mut ds) = match p.case {
        SectorCase::Odd => (1.0, z - p.sign(), 0.0, 1.0),
        SectorCase::EvenEven => (2.0, z, 0.0, 1.0),
        SectorCase::EvenOdd => (0.0, 1.0, 0.0, 0.0),
        SectorCase::HalfTurn => unreachable!(),
    };
    for _ in 0..p.nu - 2 {
        let (nr, ns) = (s, z * s - r);
        let (ndr, nds) = (ds, s + z * ds - dr);
        (r, s, dr, ds) = (nr, ns, ndr, nds);
    }
    let shift = z - p.alpha;
    (r - shift * s, dr - s - shift * ds)
}

/// The sector polynomial in `Z`, before the change of variable.
pub fn sector_poly_z(p: &SectorParams) -> Result<Poly> {
    let state = TransferState::initial(p.case, p.r)?.advanced(p.nu - 2);
    let r = state.r_poly.to_real();
    let s = state.s_poly.to_real();
    Ok(&r - &(&Poly::linear(-p.alpha, 1.0) * &s))
}

/// Monic sector factor of the characteristic polynomial, in `lambda`, of
/// degree [`expected_roots`]. For `r = n/2` this is `(lambda - 2)` times a
/// power of `(lambda - 4)`.
pub fn charpoly_sector(n: usize, r: usize) -> Result<Poly> {
    check_n(n)?;
    check_sector(n, r)?;
    if SectorCase::of(n, r) == SectorCase::HalfTurn {
        return Ok(Poly::from_roots(&half_turn_roots(n)));
    }
    let p = SectorParams::new(n, r)?;
    let (a, b) = p.z_affine();
    Ok(sector_poly_z(&p)?.compose_linear(a, b).monic())
}

/// The sector polynomial through `rho_{1,2} = (Z +- sqrt(Z^2 - 4)) / 2`.
/// Equal to `P(Z)` itself, so it differs from [`charpoly_sector`] by the
/// constant leading coefficient of `P(Z(lambda))`.
pub fn charpoly_rho_form(n: usize, r: usize, lambda: f64) -> Result<f64> {
    let p = SectorParams::new(n, r)?;
    let z = p.z(lambda);
    let distance = (z * z - 4.0).abs();
    if distance <= BRANCH_GUARD {
        return Err(Error::Singularity { lambda, distance });
    }
    let zc = C64::new(z, 0.0);
    let w = (zc * zc - 4.0).sqrt();
    let rho1 = (zc + w) / 2.0;
    let rho2 = (zc - w) / 2.0;
    let shift = zc - p.alpha;
    let nu = p.nu as i32;
    let value = match p.case {
        SectorCase::Odd => {
            let s = p.sign();
            ((rho2 - s) * (rho2 - p.alpha) * rho2.powi(nu - 1) - (rho1 - s) * (rho1 - p.alpha) * rho1.powi(nu - 1)) / w
        }
        SectorCase::EvenEven => (1.0 - shift * rho1) * rho1.powi(nu - 2) + (1.0 - shift * rho2) * rho2.powi(nu - 2),
        SectorCase::EvenOdd => ((1.0 - shift * rho1) * rho1.powi(nu - 2) - (1.0 - shift * rho2) * rho2.powi(nu - 2)) / w,
        SectorCase::HalfTurn => unreachable!(),
    };
    if value.im.abs() > 1e-8 * value.norm().max(1.0) {
        return Err(Error::Numeric(format!("closed form at lambda = {lambda} has imaginary part {}", value.im)));
    }
    Ok(value.re)
}

/// Eigenvalues of F_2(C_n) lie in `[0, 8]`; the margin keeps the roots 0 and
/// 8 off the ends of the scan.
const SCAN_RANGE: (f64, f64) = (-0.5, 8.5);
const MAX_SCAN_POINTS: usize = 1 << 22;

/// `P(Z(lambda))` through the recurrence; only its sign is used.
fn sector_value(p: &SectorParams, lambda: f64) -> f64 {
    sector_poly_eval_z(p, p.z(lambda)).0
}

/// Bisects a sign change down to adjacent floating-point numbers.
fn bisect(p: &SectorParams, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_negative = f_lo < 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let f = sector_value(p, mid);
        if f == 0.0 {
            return mid;
        }
        if (f < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Brackets every sign change of the sector polynomial on a uniform grid,
/// refining the grid until `expected` roots are found.
fn bracket_roots(p: &SectorParams, expected: usize) -> Vec<f64> {
    let (a, b) = SCAN_RANGE;
    let mut points = 64 * expected.max(1);
    loop {
        let h = (b - a) / points as f64;
        let mut roots = Vec::with_capacity(expected);
        let (mut x0, mut f0) = (a, sector_value(p, a));
        for i in 1..=points {
            let x1 = a + h * i as f64;
            let f1 = sector_value(p, x1);
            if f1 == 0.0 {
                roots.push(x1);
            } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
                roots.push(bisect(p, x0, x1, f0));
            }
            (x0, f0) = (x1, f1);
        }
        if roots.len() >= expected || points >= MAX_SCAN_POINTS {
            return roots;
        }
        points *= 4;
    }
}

fn smallest_singular_value(b: &DMatrix<C64>, lambda: f64) -> f64 {
    let nu = b.nrows();
    let shifted = b - DMatrix::<C64>::identity(nu, nu) * C64::new(lambda, 0.0);
    linalg::right_singular_ascending(&shifted).0[0]
}

/// The eigenvalues sector `r` contributes to `F_2(C_n)`, ascending.
pub fn sector_roots(n: usize, r: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    check_sector(n, r)?;
    let case = SectorCase::of(n, r);
    if case == SectorCase::HalfTurn {
        return Ok(half_turn_roots(n));
    }
    let p = SectorParams::new(n, r)?;
    let mut roots = bracket_roots(&p, expected_roots(n, r));
    if case == SectorCase::EvenOdd {
        roots.retain(|&x| (x - 4.0).abs() > FOUR_TOL);
    }
    roots.sort_by(f64::total_cmp);

    let expected = expected_roots(n, r);
    if roots.len() != expected {
        return Err(Error::RootCount { n, r, expected, found: roots.len() });
    }
    if let Some(w) = roots.windows(2).find(|w| w[1] - w[0] < 1e-9) {
        return Err(Error::Numeric(format!("sector r = {r} of n = {n}: roots {} and {} collapsed", w[0], w[1])));
    }
    let b = build_b2(n, r)?;
    for &lambda in &roots {
        let sigma = smallest_singular_value(&b, lambda);
        if sigma > ROOT_RESIDUAL_TOL * 4.0 {
            return Err(Error::Numeric(format!(
                "sector r = {r} of n = {n}: root {lambda} has matrix residual {sigma:e}"
            )));
        }
    }
    Ok(roots)
}

/// Sector roots as report entries; case b.3 also lists the dropped 4.
pub fn sector_spectrum_2token(n: usize, r: usize) -> Result<SectorSpectrum> {
    let mut entries: Vec<SectorEntry> = sector_roots(n, r)?
        .into_iter()
        .map(|lambda| SectorEntry { lambda, kept: true, reason: None })
        .collect();
    if SectorCase::drops_four(n, r) {
        entries.push(SectorEntry {
            lambda: 4.0,
            kept: false,
            reason: Some(DiscardReason::ExcludedFour),
        });
        entries.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    }
    Ok(SectorSpectrum { r, entries })
}

pub fn spectrum_2token(n: usize) -> Result<SpectrumReport> {
    spectrum_2token_with(n, Execution::default())
}

pub fn spectrum_2token_with(n: usize, exec: Execution) -> Result<SpectrumReport> {
    check_n(n)?;
    let sectors = exec::try_map_collect((0..n).collect(), exec, |r| sector_spectrum_2token(n, r))?;
    let report = SpectrumReport::from_sectors(n, 2, Method::Contfrac, sectors);
    let expected = binomial(n, 2) as usize;
    if report.kept().len() != expected {
        return Err(Error::Numeric(format!(
            "collected {} eigenvalues for F_2(C_{n}), expected {expected}",
            report.kept().len()
        )));
    }
    Ok(report)
}
