//! Acceptance run: one PASS/FAIL line per criterion, with its runtime.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use token_spectra::contfrac2::{charpoly_sector, sector_roots, spectrum_2token};
use token_spectra::necklaces::{count_burnside, count_enumerated_by_density, count_polya, enumerate_orbits};
use token_spectra::overlift::{build_poly_matrix, expand_lift, full_spectrum, full_spectrum_with, lifted_eigenbasis, OverliftOptions, ShiftRule};
use token_spectra::spectrum::{compare_multisets, is_submultiset, DiscardReason, SectorSpectrum};
use token_spectra::token_graph::{binomial, brute_spectrum};
use token_spectra::{linalg, Execution, SpectrumReport};

type Outcome = Result<String, String>;

/// Orbit counts for k = 2..=7 (rows) and n = 3..=12 (columns); 0 marks an
/// empty cell (k > n).
const NECKLACES: [[u128; 10]; 6] = [
    [1, 2, 2, 3, 3, 4, 4, 5, 5, 6],
    [1, 1, 2, 4, 5, 7, 10, 12, 15, 19],
    [0, 1, 1, 3, 5, 10, 14, 22, 30, 43],
    [0, 0, 1, 1, 3, 7, 14, 26, 42, 66],
    [0, 0, 0, 1, 1, 4, 10, 22, 42, 80],
    [0, 0, 0, 0, 1, 1, 4, 12, 30, 66],
];

/// Sector rows r = 0..=3 of F_3(C_7).
const F3C7: [[f64; 5]; 4] = [
    [0.0, 2.0, 5.0, 5.0, 6.0],
    [0.7530, 2.91929, 3.9363, 5.7238, 7.1125],
    [1.1633, 2.4450, 3.8385, 5.1446, 9.2103],
    [1.2696, 1.9019, 3.8019, 4.7411, 7.0383],
];

fn close(a: &[f64], b: &[f64], tol: f64) -> Result<(), String> {
    compare_multisets(a, b, tol).map_err(|m| format!("{a:?} vs {b:?}: {m}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: token_spectra::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let mut cells = 0;
    for (row, k) in NECKLACES.iter().zip(2..) {
        for (&expected, n) in row.iter().zip(3..) {
            if k > n {
                continue;
            }
            cells += 1;
            let found = count_burnside(n, k).map_err(err)?;
            ensure(found == expected, || format!("n={n} k={k}: {found} orbits, table has {expected}"))?;
        }
    }
    let mut pairs = 0;
    for n in 2..=30 {
        let walk = count_enumerated_by_density(n, n / 2);
        for k in 1..=n / 2 {
            let (b, p) = (count_burnside(n, k).map_err(err)?, count_polya(n, k).map_err(err)?);
            ensure(b == p && p == walk[k] as u128, || format!("n={n} k={k}: burnside {b}, polya {p}, walk {}", walk[k]))?;
            pairs += 1;
        }
    }
    Ok(format!("{cells} table cells, {pairs} (n, k) pairs up to n = 30"))
}

fn criterion_2() -> Outcome {
    let report = full_spectrum(7, 3).map_err(err)?;
    for (r, row) in F3C7.iter().enumerate() {
        for rr in [r, (7 - r) % 7] {
            let s = report.sector(rr).ok_or(format!("sector {rr} missing"))?;
            close(&s.eigenvalues(), row, 1e-3).map_err(|e| format!("r={rr}: {e}"))?;
        }
    }
    ensure(report.discarded().is_empty(), || format!("{} discards", report.discarded().len()))?;
    ensure(report.kept().len() == 35, || format!("{} kept", report.kept().len()))?;
    Ok("20 sector values within 1e-3, 35 kept, 0 discarded".into())
}

fn discards(report: &SpectrumReport) -> Vec<(usize, f64)> {
    report.discarded().into_iter().map(|(r, x, _)| (r, x)).collect()
}

fn criterion_3() -> Outcome {
    let c6 = full_spectrum(6, 3).map_err(err)?;
    ensure(c6.kept().len() == 20, || format!("F_3(C_6) keeps {}", c6.kept().len()))?;
    let d = discards(&c6);
    ensure(d.len() == 4 && d.iter().all(|&(_, x)| (x - 6.0).abs() < 1e-6), || format!("F_3(C_6) discards {d:?}"))?;
    let mut rs: Vec<usize> = d.iter().map(|&(r, _)| r).collect();
    rs.sort_unstable();
    ensure(rs == [1, 2, 4, 5], || format!("F_3(C_6) discards from sectors {rs:?}"))?;

    let c8 = full_spectrum(8, 4).map_err(err)?;
    ensure(c8.kept().len() == 70, || format!("F_4(C_8) keeps {}", c8.kept().len()))?;
    let d = discards(&c8);
    let eights = d.iter().filter(|&&(_, x)| (x - 8.0).abs() < 1e-6).count();
    let fours = d.iter().filter(|&&(_, x)| (x - 4.0).abs() < 1e-6).count();
    ensure(d.len() == 10 && eights == 6 && fours == 4, || format!("F_4(C_8) discards {d:?}"))?;
    Ok("F_3(C_6): 20 kept, four 6's from r = 1,2,4,5; F_4(C_8): 70 kept, six 8's and four 4's".into())
}

fn criterion_4() -> Outcome {
    let mut pairs = 0;
    for n in 3..=12 {
        for k in 1..=n / 2 {
            let brute = brute_spectrum(n, k).map_err(err)?;
            let over = full_spectrum(n, k).map_err(err)?;
            close(brute.kept(), over.kept(), 1e-8).map_err(|e| format!("n={n} k={k}: {e}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (n, k) pairs agree within 1e-8"))
}

fn criterion_5() -> Outcome {
    let c7 = spectrum_2token(7).map_err(err)?;
    let rows7: [&[f64]; 4] = [
        &[0.0, 2.0, 6.0],
        &[0.7530, 3.9363, 7.1125],
        &[1.1633, 2.4450, 5.1446],
        &[1.9019, 3.8019, 4.7411],
    ];
    let c8 = spectrum_2token(8).map_err(err)?;
    let rows8: [&[f64]; 5] = [
        &[0.0, 1.5060, 4.8900, 7.60387],
        &[0.5857, 3.1259, 4.0, 6.2882],
        &[0.9486, 2.0, 4.5173, 6.5340],
        &[1.7117, 3.4142, 4.0, 4.8740],
        &[2.0, 4.0, 4.0, 4.0],
    ];
    let check = |report: &SpectrumReport, rows: &[&[f64]]| -> Result<(), String> {
        let n = report.n;
        for (r, row) in rows.iter().enumerate() {
            for rr in [r, (n - r) % n] {
                let s: &SectorSpectrum = report.sector(rr).ok_or(format!("n={n}: sector {rr} missing"))?;
                close(&s.eigenvalues(), row, 1e-3).map_err(|e| format!("n={n} r={rr}: {e}"))?;
            }
        }
        Ok(())
    };
    check(&c7, &rows7)?;
    check(&c8, &rows8)?;
    ensure(c7.discarded().is_empty(), || "F_2(C_7) has discards".into())?;
    let d = c8.discarded();
    let starred = d
        .iter()
        .all(|(r, x, why)| r % 2 == 1 && (x - 4.0).abs() < 1e-8 && *why == DiscardReason::ExcludedFour);
    ensure(d.len() == 4 && starred, || format!("F_2(C_8) discards {d:?}"))?;
    for n in 4..=40 {
        let brute = brute_spectrum(n, 2).map_err(err)?;
        let cf = spectrum_2token(n).map_err(|e| format!("n={n}: {e}"))?;
        close(brute.kept(), cf.kept(), 1e-8).map_err(|e| format!("n={n}: {e}"))?;
    }
    Ok("both tables within 1e-3, four excluded 4's for n = 8, brute agreement for n = 4..40".into())
}

fn criterion_6() -> Outcome {
    let sqrt5 = 5f64.sqrt();
    let exact: [&[f64]; 3] = [
        &[1.0, -4.0, 0.0],
        &[1.0, -6.5 - sqrt5 / 2.0, 7.5 + sqrt5 / 2.0],
        &[1.0, -6.5 + sqrt5 / 2.0, 7.5 - sqrt5 / 2.0],
    ];
    for (r, want) in exact.iter().enumerate() {
        let got = charpoly_sector(5, r).map_err(err)?.coeffs_descending();
        ensure(got.len() == want.len() && got.iter().zip(*want).all(|(a, b)| (a - b).abs() < 1e-9), || {
            format!("n=5 r={r}: {got:?} vs {want:?}")
        })?;
    }
    // Reference values carry 2 decimals (1 for the linear term of n = 9), so
    // the 5e-3 allowance is read relative to each coefficient's size.
    let mut worst_abs: f64 = 0.0;
    for (n, want) in [(9, &[1.0, -15.88, 80.19, -136.2, 47.79][..]), (8, &[1.0, -10.0, 25.17, -11.51][..])] {
        let got = charpoly_sector(n, 1).map_err(err)?.coeffs_descending();
        ensure(got.len() == want.len(), || format!("n={n}: degree {}", got.len() - 1))?;
        for (a, b) in got.iter().zip(want) {
            worst_abs = worst_abs.max((a - b).abs());
            ensure((a - b).abs() <= 5e-3 * b.abs().max(1.0), || format!("n={n} r=1: {got:?} vs {want:?}"))?;
        }
    }
    let (s9, s8) = (sector_roots(9, 1).map_err(err)?[0], sector_roots(8, 1).map_err(err)?[0]);
    ensure((s9 - 0.4679).abs() < 1e-3 && (s8 - 0.5857).abs() < 1e-3, || format!("smallest roots {s9}, {s8}"))?;
    Ok(format!(
        "n = 5 exact, n = 9 and 8 within 5e-3 relative (largest absolute gap {worst_abs:.3}), smallest roots {s9:.4} and {s8:.4}"
    ))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for n in 3..=12 {
        let mut per_k: Vec<SpectrumReport> = Vec::new();
        for k in 1..=n / 2 {
            let at = |e: String| format!("n={n} k={k}: {e}");
            let report = full_spectrum(n, k).map_err(err)?;
            let largest = full_spectrum_with(
                n,
                k,
                OverliftOptions {
                    exec: Execution::Parallel,
                    shift_rule: ShiftRule::Largest,
                },
            )
            .map_err(err)?;
            close(report.kept(), largest.kept(), 1e-8).map_err(|e| at(format!("shift rule: {e}")))?;
            for s in &report.sectors {
                let c = report.sector((n - s.r) % n).ok_or(at("sector missing".into()))?;
                close(&s.eigenvalues(), &c.eigenvalues(), 1e-8).map_err(|e| at(format!("conjugacy r={}: {e}", s.r)))?;
            }
            let nu = enumerate_orbits(n, k).map_err(err)?.len();
            let expected = n * nu - binomial(n, k) as usize;
            let found = report.discarded().len();
            ensure(found == expected, || at(format!("{found} discards, expected {expected}")))?;
            let lifts = lifted_eigenbasis(n, k, Execution::Parallel).map_err(err)?;
            ensure(lifts.len() == binomial(n, k) as usize, || at(format!("{} lifted vectors", lifts.len())))?;
            if let Some(bad) = lifts.iter().find(|v| !(v.residual < 1e-8)) {
                return Err(at(format!("lift residual {} at r={} lambda={}", bad.residual, bad.r, bad.lambda)));
            }
            per_k.push(report);
            checked += 1;
        }
        let conn: Vec<f64> = per_k.iter().filter_map(|s| s.algebraic_connectivity(1e-9)).collect();
        ensure(conn.iter().all(|a| (a - conn[0]).abs() < 1e-8), || format!("n={n}: connectivity {conn:?}"))?;
        for (h, small) in per_k.iter().enumerate() {
            for large in &per_k[h + 1..] {
                ensure(is_submultiset(small.kept(), large.kept(), 1e-8), || {
                    format!("n={n}: F_{} not contained in F_{}", small.k, large.k)
                })?;
            }
        }
    }
    Ok(format!("six properties over {checked} (n, k) pairs, n <= 12"))
}

fn criterion_8() -> Outcome {
    let orbits = enumerate_orbits(7, 3).map_err(err)?;
    let base = build_poly_matrix(&orbits);
    let lift = expand_lift(&base);
    ensure(lift.nrows() == 35 && lift.ncols() == 35, || format!("{}x{} lift", lift.nrows(), lift.ncols()))?;
    let asym = (&lift - lift.transpose()).amax();
    ensure(asym == 0.0, || format!("lift is not symmetric ({asym})"))?;
    let lifted: Vec<f64> = lift.symmetric_eigen().eigenvalues.iter().copied().collect();
    let mut union = Vec::new();
    for r in 0..7 {
        let ev = linalg::complex_eigenvalues(&base.specialize(r)).map_err(err)?;
        union.extend(ev.iter().map(|z| z.re));
    }
    close(&lifted, &union, 1e-8)?;
    Ok("35x35 lift spectrum equals the union of 7 sector spectra within 1e-8".into())
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Outcome, Duration); 8] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(1)),
        (criterion_3, Duration::from_secs(2)),
        (criterion_4, Duration::from_secs(60)),
        (criterion_5, Duration::from_secs(10)),
        (criterion_6, Duration::from_secs(1)),
        (criterion_7, Duration::from_secs(120)),
        (criterion_8, Duration::from_secs(1)),
    ];
    let mut failures = 0;
    for (i, (run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= *budget {
                Ok(detail)
            } else {
                Err(format!("{detail}, but over the {budget:?} budget"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({:.3} s) {detail}", i + 1, elapsed.as_secs_f64()),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL ({:.3} s) {detail}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
