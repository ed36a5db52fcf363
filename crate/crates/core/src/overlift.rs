//! The over-lift polynomial matrix `B(z)` of F_k(C_n).
//!
//! Rows and columns are indexed by the orbit representatives of Z_n acting
//! on k-subsets. Evaluating `B` at every n-th root of unity produces `n * nu`
//! eigenvalues; when some orbits are shorter than n a few of them are
//! spurious. A sector-`r` eigenvector lifts to the token graph only if it
//! vanishes on every short orbit whose period is not a multiple of the order
//! of `z = exp(2 pi i r / n)`. Filtering is done on whole eigenspaces, so
//! coincident genuine and spurious eigenvalues are separated correctly.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_nk, check_sector, Error, Result};
use crate::exec::{self, Execution};
use crate::laurent::{root_of_unity, LaurentMatrix, C64};
use crate::linalg;
use crate::necklaces::{enumerate_orbits, sector_order, OrbitTable};
use crate::spectrum::{cluster_sorted, DiscardReason, Method, SectorEntry, SectorSpectrum, SpectrumReport};
use crate::token_graph::{binomial, k_subsets, TokenSet};

/// Eigenvalues closer than this are treated as one eigenspace.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Largest imaginary part tolerated before an eigenvalue is declared real.
pub const IMAG_TOL: f64 = 1e-7;
/// Relative singular-value cutoff for eigenspace and rank decisions.
pub const RANK_TOL: f64 = 1e-8;

/// Largest `C(n, k)` accepted by [`full_spectrum`]; the sector matrices
/// then have order about `C(n, k) / n`.
pub const OVERLIFT_CAP: usize = 20_000;

/// Which shift to record when a neighbour lies in a short orbit and
/// `A' = B + r` holds for several `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShiftRule {
    #[default]
    Smallest,
    Largest,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OverliftOptions {
    pub exec: Execution,
    pub shift_rule: ShiftRule,
}

/// Builds `B(z)`: the degree of each representative on the diagonal and,
/// for every neighbour `A' = B + r` of representative `A`, a `-z^r` term in
/// entry `(A, B)`. Neighbours in `A`'s own orbit give diagonal loop terms.
pub fn build_poly_matrix(orbits: &OrbitTable) -> LaurentMatrix {
    build_poly_matrix_with(orbits, ShiftRule::Smallest)
}

pub fn build_poly_matrix_with(orbits: &OrbitTable, rule: ShiftRule) -> LaurentMatrix {
    let n = orbits.n();
    let mut m = LaurentMatrix::zeros(n, orbits.len());
    for (i, rep) in orbits.reps().iter().enumerate() {
        let neighbors = rep.neighbors();
        m.add_term(i, i, neighbors.len() as i64, 0);
        for nb in &neighbors {
            let (j, shift) = match rule {
                ShiftRule::Smallest => orbits.lookup(nb),
                ShiftRule::Largest => orbits.lookup_largest(nb),
            };
            m.add_term(i, j, -1, shift as i64);
        }
    }
    m
}

/// Structural checks on an over-lift matrix: the diagonal constant term is
/// the representative's degree, every other coefficient is negative, and
/// `B(1)` has zero row sums.
pub fn check_poly_matrix(m: &LaurentMatrix, orbits: &OrbitTable) -> Result<()> {
    let nu = m.order();
    if nu != orbits.len() || m.modulus() != orbits.n() {
        return Err(Error::Consistency("matrix does not match the orbit table".into()));
    }
    for i in 0..nu {
        let degree = orbits.reps()[i].degree() as i64;
        if m.get(i, i).coeff(0) != degree {
            return Err(Error::Consistency(format!("diagonal {i} has constant term {} != degree {degree}", m.get(i, i).coeff(0))));
        }
        let mut row_sum = 0;
        for j in 0..nu {
            let p = m.get(i, j);
            row_sum += p.coefficient_sum();
            if p.terms().any(|(e, c)| c > 0 && !(i == j && e == 0)) {
                return Err(Error::Consistency(format!("entry ({i},{j}) has a positive off-diagonal coefficient")));
            }
        }
        if row_sum != 0 {
            return Err(Error::Consistency(format!("row {i} of B(1) sums to {row_sum}")));
        }
    }
    Ok(())
}

/// One eigenpair of `B(zeta^r)`.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub lambda: f64,
    pub r: usize,
    /// Unit 2-norm, indexed by orbit representative.
    pub vector: DVector<C64>,
    /// `max_i |(B v - lambda v)_i|`.
    pub residual: f64,
}

fn entry_scale(b: &DMatrix<C64>) -> f64 {
    b.iter().map(|c| c.norm()).fold(1.0, f64::max)
}

/// Eigenvalues of `B(zeta^r)`, ascending, each repeated by algebraic
/// multiplicity. Members of a cluster are replaced by the cluster mean,
/// which is far more accurate than the individual values when the cluster
/// is a Jordan block.
pub fn sector_eigenvalues(b: &DMatrix<C64>, r: usize) -> Result<Vec<f64>> {
    let mut values = Vec::with_capacity(b.nrows());
    for z in linalg::complex_eigenvalues(b)? {
        if z.im.abs() >= IMAG_TOL {
            return Err(Error::Numeric(format!("sector r = {r}: eigenvalue {z} is not real")));
        }
        values.push(z.re);
    }
    values.sort_by(f64::total_cmp);
    for cluster in cluster_sorted(&values, CLUSTER_TOL) {
        let mean = values[cluster.clone()].iter().sum::<f64>() / cluster.len() as f64;
        values[cluster].fill(mean);
    }
    Ok(values)
}

fn shifted(b: &DMatrix<C64>, lambda: f64) -> DMatrix<C64> {
    let nu = b.nrows();
    b - DMatrix::<C64>::identity(nu, nu) * C64::new(lambda, 0.0)
}

fn distinct(values: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Eigenpairs of a sector matrix, ascending: for each distinct eigenvalue an
/// orthonormal basis of `ker(B - lambda I)`. `B(z)` can be defective when a
/// genuine and a spurious eigenvalue coincide, and then a cluster carries
/// fewer vectors than its multiplicity.
pub fn matrix_eigenpairs(b: &DMatrix<C64>, r: usize) -> Result<Vec<EigenPair>> {
    let values = sector_eigenvalues(b, r)?;
    let tol = RANK_TOL * entry_scale(b);
    let mut pairs = Vec::with_capacity(values.len());
    for (lambda, multiplicity) in distinct(&values) {
        let basis = linalg::null_space(&shifted(b, lambda), tol);
        if basis.is_empty() || basis.len() > multiplicity {
            return Err(Error::Numeric(format!(
                "sector r = {r}: eigenvalue {lambda} of multiplicity {multiplicity} has a {}-dimensional eigenspace",
                basis.len()
            )));
        }
        for v in basis {
            let residual = linalg::residual_inf(b, &v, lambda);
            pairs.push(EigenPair { lambda, r, vector: v, residual });
        }
    }
    Ok(pairs)
}

pub fn sector_eigenpairs(m: &LaurentMatrix, r: usize) -> Result<Vec<EigenPair>> {
    check_sector(m.modulus(), r)?;
    matrix_eigenpairs(&m.specialize(r), r)
}

/// Verdict for one distinct eigenvalue of a sector.
#[derive(Debug, Clone)]
pub struct ClusterVerdict {
    pub lambda: f64,
    /// Algebraic multiplicity in `B(zeta^r)`.
    pub multiplicity: usize,
    /// How many copies survive condition (*).
    pub kept: usize,
    /// Short orbits on which the eigenspace does not vanish.
    pub blocking_orbits: Vec<usize>,
    /// Orthonormal eigenvectors vanishing on every incompatible orbit.
    pub kept_vectors: Vec<DVector<C64>>,
}

impl ClusterVerdict {
    pub fn discarded(&self) -> usize {
        self.multiplicity - self.kept
    }
}

/// Condition (*) on each distinct eigenvalue `lambda` of sector `r`: the
/// kept copies are the eigenvectors that vanish on the incompatible short
/// orbits `V`, i.e. the null space of `(B - lambda I)` restricted to the
/// columns outside `V`. Counting null vectors of that restriction stays
/// correct when `B` is defective.
pub fn filter_spurious(b: &DMatrix<C64>, orbits: &OrbitTable, r: usize) -> Result<Vec<ClusterVerdict>> {
    let values = sector_eigenvalues(b, r)?;
    let bad = orbits.incompatible_with_sector(r);
    let good: Vec<usize> = (0..b.nrows()).filter(|i| !bad.contains(i)).collect();
    let tol = RANK_TOL * entry_scale(b);
    let mut verdicts = Vec::new();
    for (lambda, multiplicity) in distinct(&values) {
        let a = shifted(b, lambda);
        let restricted = a.select_columns(&good);
        let kept_vectors: Vec<DVector<C64>> = linalg::null_space(&restricted, tol)
            .into_iter()
            .take(multiplicity)
            .map(|w| {
                let mut v = DVector::<C64>::zeros(b.nrows());
                for (slot, &i) in good.iter().enumerate() {
                    v[i] = w[slot];
                }
                v
            })
            .collect();
        // B[V, W] = 0, so the discarded copies are eigenvalues of B[V, V];
        // its eigenvectors name the orbits responsible.
        let blocking_orbits = if kept_vectors.len() == multiplicity {
            Vec::new()
        } else {
            let block = a.select_rows(&bad).select_columns(&bad);
            let local = linalg::null_space(&block, tol);
            let hit: Vec<usize> = (0..bad.len())
                .filter(|&j| local.iter().any(|v| v[j].norm() > RANK_TOL))
                .map(|j| bad[j])
                .collect();
            if hit.is_empty() {
                bad.clone()
            } else {
                hit
            }
        };
        verdicts.push(ClusterVerdict {
            lambda,
            multiplicity,
            kept: kept_vectors.len(),
            blocking_orbits,
            kept_vectors,
        });
    }
    Ok(verdicts)
}

/// The kept eigenpairs of sector `r`, ready for [`lift_eigenvector`].
pub fn kept_eigenpairs(b: &DMatrix<C64>, orbits: &OrbitTable, r: usize) -> Result<Vec<EigenPair>> {
    let mut out = Vec::new();
    for verdict in filter_spurious(b, orbits, r)? {
        for v in verdict.kept_vectors {
            let residual = linalg::residual_inf(b, &v, verdict.lambda);
            out.push(EigenPair { lambda: verdict.lambda, r, vector: v, residual });
        }
    }
    Ok(out)
}

fn sector_spectrum(b: &DMatrix<C64>, orbits: &OrbitTable, r: usize) -> Result<SectorSpectrum> {
    let order = sector_order(orbits.n(), r);
    let mut entries = Vec::with_capacity(b.nrows());
    for verdict in filter_spurious(b, orbits, r)? {
        for idx in 0..verdict.multiplicity {
            let kept = idx < verdict.kept;
            entries.push(SectorEntry {
                lambda: verdict.lambda,
                kept,
                reason: (!kept).then(|| DiscardReason::ShortOrbit {
                    orbits: verdict.blocking_orbits.clone(),
                    order,
                }),
            });
        }
    }
    Ok(SectorSpectrum { r, entries })
}

/// Filtered spectrum of an arbitrary over-lift matrix over `orbits`.
pub fn spectrum_from_matrix(orbits: &OrbitTable, m: &LaurentMatrix, exec: Execution) -> Result<SpectrumReport> {
    let (n, k) = (orbits.n(), orbits.k());
    let sectors = exec::try_map_collect((0..n).collect(), exec, |r| {
        sector_spectrum(&m.specialize(r), orbits, r)
    })?;
    let report = SpectrumReport::from_sectors(n, k, Method::Overlift, sectors);
    let expected = binomial(n, k) as usize;
    if report.kept().len() != expected {
        return Err(Error::Numeric(format!(
            "over-lift of F_{k}(C_{n}) kept {} eigenvalues, expected {expected}",
            report.kept().len()
        )));
    }
    Ok(report)
}

/// Laplacian spectrum of F_k(C_n) from the over-lift matrix.
pub fn full_spectrum(n: usize, k: usize) -> Result<SpectrumReport> {
    full_spectrum_with(n, k, OverliftOptions::default())
}

pub fn full_spectrum_with(n: usize, k: usize, opts: OverliftOptions) -> Result<SpectrumReport> {
    check_nk(n, k)?;
    let order = binomial(n, k);
    if order > OVERLIFT_CAP as u128 {
        return Err(Error::SizeGuard {
            n,
            k,
            order: order.min(usize::MAX as u128) as usize,
            cap: OVERLIFT_CAP,
        });
    }
    let orbits = enumerate_orbits(n, k)?;
    let m = build_poly_matrix_with(&orbits, opts.shift_rule);
    spectrum_from_matrix(&orbits, &m, opts.exec)
}

/// A quotient eigenvector spread over all `C(n, k)` token sets.
#[derive(Debug, Clone)]
pub struct LiftedVector {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: f64,
    /// Indexed by the lexicographic rank of the token set.
    pub components: Vec<C64>,
    /// `max_X |(L v - lambda v)_X|` against the token-graph Laplacian.
    pub residual: f64,
}

impl LiftedVector {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `v_X = f_i * z^j` for `X = A_i + j`, `z = exp(2 pi i r / n)`.
pub fn lift_eigenvector(pair: &EigenPair, orbits: &OrbitTable) -> Result<LiftedVector> {
    let (n, k, r) = (orbits.n(), orbits.k(), pair.r);
    let f = &pair.vector;
    if f.len() != orbits.len() {
        return Err(Error::Consistency(format!("vector has {} components for {} orbits", f.len(), orbits.len())));
    }
    let scale = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for i in orbits.periodic() {
        if f[i].norm() > RANK_TOL * scale && !(r * orbits.period_of(i)).is_multiple_of(n) {
            return Err(Error::Consistency(format!(
                "component {i} (period {}) is nonzero but z^period != 1 in sector r = {r}",
                orbits.period_of(i)
            )));
        }
    }
    let subsets = k_subsets(n, k);
    let components: Vec<C64> = subsets
        .iter()
        .map(|x| {
            let (i, j) = orbits.lookup(x);
            f[i] * root_of_unity(n, r * j)
        })
        .collect();
    let lambda = pair.lambda;
    let residual = subsets
        .iter()
        .enumerate()
        .map(|(idx, x)| {
            let nbrs = x.neighbors();
            let lv = components[idx] * nbrs.len() as f64
                - nbrs.iter().map(|y| components[y.lex_rank()]).sum::<C64>();
            (lv - components[idx] * lambda).norm()
        })
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Consistency("zero eigenvector".into()));
    }
    Ok(LiftedVector {
        n,
        k,
        r,
        lambda,
        components,
        residual,
    })
}

/// Every kept eigenpair of every sector of F_k(C_n), lifted.
pub fn lifted_eigenbasis(n: usize, k: usize, exec: Execution) -> Result<Vec<LiftedVector>> {
    check_nk(n, k)?;
    let orbits = enumerate_orbits(n, k)?;
    let m = build_poly_matrix(&orbits);
    let per_sector = exec::try_map_collect((0..n).collect(), exec, |r| {
        let b = m.specialize(r);
        kept_eigenpairs(&b, &orbits, r)?
            .iter()
            .map(|p| lift_eigenvector(p, &orbits))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(per_sector.into_iter().flatten().collect())
}

/// The genuine lift of a base matrix over Z_n: vertex `(u, g)` has index
/// `u * n + g`, and each term `c z^s` of entry `(u, v)` contributes `c` at
/// `((u, g), (v, g + s))`.
pub fn expand_lift(base: &LaurentMatrix) -> DMatrix<f64> {
    let (n, nu) = (base.modulus(), base.order());
    let mut out = DMatrix::<f64>::zeros(nu * n, nu * n);
    for u in 0..nu {
        for v in 0..nu {
            for (s, c) in base.get(u, v).terms() {
                for g in 0..n {
                    out[(u * n + g, v * n + (g + s) % n)] += c as f64;
                }
            }
        }
    }
    out
}

/// [`expand_lift`] for an over-lift matrix, which only expands to a genuine
/// lift when every orbit has full period n.
pub fn expand_orbit_lift(base: &LaurentMatrix, orbits: &OrbitTable) -> Result<DMatrix<f64>> {
    if let Some(i) = orbits.periodic().next() {
        return Err(Error::Domain(format!(
            "representative {} has period {} < n = {}; an over-lift does not expand to a lift",
            orbits.reps()[i],
            orbits.period_of(i),
            orbits.n()
        )));
    }
    Ok(expand_lift(base))
}

/// Position of `x` among the lifted vertices `(u, g)` of [`expand_lift`].
pub fn lift_vertex(orbits: &OrbitTable, x: &TokenSet) -> usize {
    let (i, j) = orbits.lookup(x);
    i * orbits.n() + j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{ExponentStyle, LaurentPoly, MatrixStyle};
    use crate::token_graph::{build_token_graph, laplacian};

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn f3_c6_matrix_entries() {
        let orbits = enumerate_orbits(6, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        let entries = m.rendered_entries(MatrixStyle::General);
        let expected = [
            ["2", "-1", "-z", "0"],
            ["-1", "4", "-1-z^2", "-z"],
            ["-z^-1", "-1-z^-2", "4", "-1"],
            ["0", "-z-z^3-z^5", "-1-z^2-z^4", "6"],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(entries[i][j], expected[i][j], "entry ({i},{j})");
            }
        }
        // C = 014, B = 013: stored exponent 4 for z^-2.
        assert_eq!(m.get(2, 1).render(ExponentStyle::Positive), "-1-z^4");
        check_poly_matrix(&m, &orbits).unwrap();
    }

    #[test]
    fn f3_c7_diagonal_up_to_relabeling() {
        let orbits = enumerate_orbits(7, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        check_poly_matrix(&m, &orbits).unwrap();
        let mut diag: Vec<String> = (0..5).map(|i| m.get(i, i).render(ExponentStyle::Balanced)).collect();
        diag.sort();
        let mut expected = vec!["2", "4", "4", "4", "6-z^2-z^-2"];
        expected.sort();
        assert_eq!(diag, expected);
    }

    #[test]
    fn table_sector_values() {
        let orbits = enumerate_orbits(7, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        let ev: Vec<f64> = sector_eigenpairs(&m, 0).unwrap().iter().map(|p| p.lambda).collect();
        assert_close(&ev, &[0.0, 2.0, 5.0, 5.0, 6.0], 1e-3);

        let orbits = enumerate_orbits(6, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        let ev: Vec<f64> = sector_eigenpairs(&m, 3).unwrap().iter().map(|p| p.lambda).collect();
        assert_close(&ev, &[1.3944, 2.0, 4.0, 8.6056], 1e-3);

        let orbits = enumerate_orbits(8, 4).unwrap();
        let m = build_poly_matrix(&orbits);
        let ev: Vec<f64> = sector_eigenpairs(&m, 4).unwrap().iter().map(|p| p.lambda).collect();
        // 1.3399 and 9.3993 come from the dense Laplacian of F_4(C_8).
        assert_close(&ev, &[1.079, 1.3399, 2.0, 4.0, 4.0, 4.0, 5.522, 6.403, 9.3993, 10.257], 5e-3);
    }

    #[test]
    fn eigenpair_residuals() {
        for (n, k) in [(6, 3), (8, 4), (9, 3)] {
            let orbits = enumerate_orbits(n, k).unwrap();
            let m = build_poly_matrix(&orbits);
            for r in 0..n {
                for p in sector_eigenpairs(&m, r).unwrap() {
                    assert!(p.residual < 1e-8, "n={n} k={k} r={r} lambda={} residual={}", p.lambda, p.residual);
                }
            }
        }
    }

    #[test]
    fn six_eigenvectors_of_f3_c6() {
        let orbits = enumerate_orbits(6, 3).unwrap();
        let m = build_poly_matrix(&orbits);

        let verdicts = filter_spurious(&m.specialize(1), &orbits, 1).unwrap();
        let six = verdicts.iter().find(|v| (v.lambda - 6.0).abs() < 1e-6).unwrap();
        assert_eq!((six.multiplicity, six.kept), (1, 0));
        assert_eq!(six.blocking_orbits, vec![3]);
        // The eigenvector is proportional to (0.1 + 0.173i, -0.2 - 0.376i, -0.4, 1).
        let pairs = sector_eigenpairs(&m, 1).unwrap();
        let v = &pairs.iter().find(|p| (p.lambda - 6.0).abs() < 1e-6).unwrap().vector;
        let scaled: Vec<C64> = v.iter().map(|c| c / v[3]).collect();
        assert!((scaled[2] - C64::new(-0.4, 0.0)).norm() < 1e-3);
        assert!((scaled[0].re - 0.1).abs() < 1e-3 && (scaled[0].im.abs() - 0.173).abs() < 1e-3);

        let verdicts = filter_spurious(&m.specialize(0), &orbits, 0).unwrap();
        let six = verdicts.iter().find(|v| (v.lambda - 6.0).abs() < 1e-6).unwrap();
        assert_eq!(six.kept, 1);
        let v = &six.kept_vectors[0];
        let scaled: Vec<C64> = v.iter().map(|c| c / v[2]).collect();
        assert!(scaled[0].norm() < 1e-9 && scaled[3].norm() < 1e-9);
        assert!((scaled[1] + C64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn defective_sector() {
        // F_2(C_6) at r = 3: the genuine 4 of {0,1},{0,2} and the spurious 4
        // of {0,3} form a Jordan block.
        let orbits = enumerate_orbits(6, 2).unwrap();
        let b = build_poly_matrix(&orbits).specialize(3);
        let pairs = matrix_eigenpairs(&b, 3).unwrap();
        let fours = pairs.iter().filter(|p| (p.lambda - 4.0).abs() < 1e-9).count();
        assert_eq!(fours, 1);
        let verdicts = filter_spurious(&b, &orbits, 3).unwrap();
        let four = verdicts.iter().find(|v| (v.lambda - 4.0).abs() < 1e-9).unwrap();
        assert_eq!((four.multiplicity, four.kept), (2, 1));
        assert_eq!(four.blocking_orbits, vec![2]);

        let s = full_spectrum(6, 2).unwrap();
        let sector: Vec<(f64, bool)> = s.sector(3).unwrap().entries.iter().map(|e| (e.lambda, e.kept)).collect();
        assert_eq!(sector.len(), 3);
        assert!((sector[0].0 - 2.0).abs() < 1e-12 && sector[0].1);
        assert!((sector[1].0 - 4.0).abs() < 1e-12 && sector[1].1);
        assert!((sector[2].0 - 4.0).abs() < 1e-12 && !sector[2].1);
    }

    #[test]
    fn coprime_cases_keep_everything() {
        let orbits = enumerate_orbits(7, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        for r in 0..7 {
            assert!(filter_spurious(&m.specialize(r), &orbits, r).unwrap().iter().all(|v| v.discarded() == 0));
        }
    }

    #[test]
    fn full_spectrum_discards() {
        let s = full_spectrum(6, 3).unwrap();
        assert_eq!(s.kept().len(), 20);
        let d = s.discarded();
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|(_, l, _)| (l - 6.0).abs() < 1e-6));
        let mut rs: Vec<usize> = d.iter().map(|(r, _, _)| *r).collect();
        rs.sort_unstable();
        assert_eq!(rs, vec![1, 2, 4, 5]);

        let s = full_spectrum(8, 4).unwrap();
        assert_eq!(s.kept().len(), 70);
        let d = s.discarded();
        assert_eq!(d.iter().filter(|(_, l, _)| (l - 8.0).abs() < 1e-6).count(), 6);
        assert_eq!(d.iter().filter(|(_, l, _)| (l - 4.0).abs() < 1e-6).count(), 4);
        assert_eq!(d.len(), 10);

        let s = full_spectrum(7, 3).unwrap();
        assert_eq!(s.kept().len(), 35);
        assert!(s.discarded().is_empty());
        assert_eq!(s.entry_count(), 35);
    }

    #[test]
    fn lifting_examples() {
        let orbits = enumerate_orbits(6, 3).unwrap();
        let ones = EigenPair {
            lambda: 0.0,
            r: 0,
            vector: DVector::from_element(4, C64::new(0.5, 0.0)),
            residual: 0.0,
        };
        let v = lift_eigenvector(&ones, &orbits).unwrap();
        assert_eq!(v.residual, 0.0);
        assert!(v.components.iter().all(|c| *c == C64::new(0.5, 0.0)));

        let f = DVector::from_vec(vec![0.0, -1.0, 1.0, 0.0].into_iter().map(|x| C64::new(x, 0.0)).collect());
        let six = EigenPair { lambda: 6.0, r: 0, vector: f, residual: 0.0 };
        let v = lift_eigenvector(&six, &orbits).unwrap();
        assert!(v.residual < 1e-12);
        assert_eq!(v.components.len(), 20);

        // The spurious 6 of sector 1 must be refused.
        let m = build_poly_matrix(&orbits);
        let pairs = sector_eigenpairs(&m, 1).unwrap();
        let spurious = pairs.iter().find(|p| (p.lambda - 6.0).abs() < 1e-6).unwrap();
        assert!(matches!(lift_eigenvector(spurious, &orbits), Err(Error::Consistency(_))));

        let orbits = enumerate_orbits(7, 2).unwrap();
        let m = build_poly_matrix(&orbits);
        let pairs = sector_eigenpairs(&m, 1).unwrap();
        assert!((pairs[0].lambda - 0.7530).abs() < 1e-4);
        let v = lift_eigenvector(&pairs[0], &orbits).unwrap();
        assert!(v.residual < 1e-8);
    }

    #[test]
    fn lift_expansion() {
        let orbits = enumerate_orbits(7, 3).unwrap();
        let m = build_poly_matrix(&orbits);
        let big = expand_orbit_lift(&m, &orbits).unwrap();
        assert_eq!(big.nrows(), 35);
        // The lift is F_3(C_7) itself, relabelled.
        let g = build_token_graph(7, 3).unwrap();
        let l = laplacian(&g);
        for (a, x) in g.vertices().iter().enumerate() {
            for (b, y) in g.vertices().iter().enumerate() {
                assert_eq!(l.matrix()[(a, b)], big[(lift_vertex(&orbits, x), lift_vertex(&orbits, y))]);
            }
        }

        let orbits = enumerate_orbits(6, 3).unwrap();
        assert!(expand_orbit_lift(&build_poly_matrix(&orbits), &orbits).is_err());

        let mut loop_base = LaurentMatrix::zeros(9, 1);
        let mut p = LaurentPoly::constant(9, 2);
        p.add_term(-1, 1);
        p.add_term(-1, -1);
        loop_base.set(0, 0, p);
        let cycle = expand_lift(&loop_base);
        assert_eq!(cycle, laplacian(&build_token_graph(9, 1).unwrap()).into_matrix());
    }
}
