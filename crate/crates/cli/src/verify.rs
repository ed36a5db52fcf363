use std::fmt::Write as _;

use serde::Serialize;
use token_spectra::contfrac2::spectrum_2token_with;
use token_spectra::exec::{self, Execution};
use token_spectra::necklaces::{count_burnside, count_enumerated, count_moreau, count_polya, enumerate_orbits};
use token_spectra::overlift::{build_poly_matrix, spectrum_from_matrix};
use token_spectra::spectrum::{compare_multisets, is_submultiset, max_deviation};
use token_spectra::token_graph::{binomial, brute_spectrum, DENSE_CAP};
use token_spectra::SpectrumReport;

use crate::args::{Format, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::{emit, require_format};

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self { name, ok, detail: detail.into() }
    }
}

#[derive(Debug, Serialize)]
struct PairOutcome {
    n: usize,
    k: usize,
    spectra: usize,
    checks: Vec<Check>,
    #[serde(skip)]
    brute: Option<SpectrumReport>,
}

#[derive(Debug, Serialize)]
struct CycleOutcome {
    n: usize,
    checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    n_max: usize,
    tol: f64,
    spectra_compared: usize,
    pairs: Vec<PairOutcome>,
    cycles: Vec<CycleOutcome>,
    passed: bool,
}

fn deviation_detail(a: &[f64], b: &[f64]) -> String {
    match max_deviation(a, b) {
        Some(d) => format!("{d:.1e}"),
        None => format!("{} vs {} values", a.len(), b.len()),
    }
}

fn multiset_check(name: &'static str, a: &[f64], b: &[f64], tol: f64) -> Check {
    let ok = compare_multisets(a, b, tol).is_ok();
    Check::new(name, ok, deviation_detail(a, b))
}

fn counts_check(n: usize, k: usize) -> Check {
    let result = (|| -> token_spectra::Result<Check> {
        let table = enumerate_orbits(n, k)?;
        let total = table.len() as u128;
        let aperiodic = table.periods().iter().filter(|&&p| p == n).count() as u128;
        let (b, p, m) = (count_burnside(n, k)?, count_polya(n, k)?, count_moreau(n, k)?);
        let walk = count_enumerated(n, k) as u128;
        let ok = b == total && p == total && walk == total && m == aperiodic;
        Ok(Check::new("counts", ok, format!("{total} orbits, {aperiodic} aperiodic")))
    })();
    result.unwrap_or_else(|e| Check::new("counts", false, e.to_string()))
}

fn check_pair(n: usize, k: usize, tol: f64, perturb: bool) -> PairOutcome {
    let mut checks = vec![counts_check(n, k)];
    let mut spectra = 0;

    let brute = brute_spectrum(n, k);
    let overlift = enumerate_orbits(n, k).and_then(|orbits| {
        let mut m = build_poly_matrix(&orbits);
        if perturb {
            m.add_term(0, 0, 1, 0);
        }
        spectrum_from_matrix(&orbits, &m, Execution::Sequential)
    });
    if brute.is_ok() {
        spectra += 1;
    }
    if overlift.is_ok() {
        spectra += n;
    }
    match (&brute, &overlift) {
        (Ok(b), Ok(o)) => {
            checks.push(multiset_check("brute=overlift", b.kept(), o.kept(), tol));
            let expected = n * o.sectors.first().map_or(0, |s| s.entries.len()) - binomial(n, k) as usize;
            let found = o.discarded().len();
            checks.push(Check::new("discards", found == expected, format!("{found} of expected {expected}")));
            let conj_ok = o.sectors.iter().all(|s| {
                let c = o.sector((n - s.r) % n).expect("every sector present");
                compare_multisets(&s.eigenvalues(), &c.eigenvalues(), tol).is_ok()
            });
            checks.push(Check::new("conjugacy", conj_ok, ""));
        }
        (Err(e), _) | (_, Err(e)) => checks.push(Check::new("brute=overlift", false, e.to_string())),
    }

    if k == 2 && n >= 4 {
        match (&brute, spectrum_2token_with(n, Execution::Sequential)) {
            (Ok(b), Ok(c)) => {
                spectra += n;
                checks.push(multiset_check("brute=contfrac", b.kept(), c.kept(), tol));
            }
            (_, Err(e)) => checks.push(Check::new("brute=contfrac", false, e.to_string())),
            (Err(_), Ok(_)) => {}
        }
    }
    PairOutcome {
        n,
        k,
        spectra,
        checks,
        brute: brute.ok(),
    }
}

fn check_cycle(n: usize, pairs: &[PairOutcome], tol: f64) -> CycleOutcome {
    let spectra: Vec<&SpectrumReport> = pairs.iter().filter(|p| p.n == n).filter_map(|p| p.brute.as_ref()).collect();
    let mut contained = true;
    for (i, small) in spectra.iter().enumerate() {
        for large in &spectra[i + 1..] {
            contained &= is_submultiset(small.kept(), large.kept(), tol);
        }
    }
    let connectivity: Vec<f64> = spectra.iter().filter_map(|s| s.algebraic_connectivity(1e-9)).collect();
    let spread = connectivity.iter().fold(0.0f64, |acc, &a| acc.max((a - connectivity[0]).abs()));
    CycleOutcome {
        n,
        checks: vec![
            Check::new("containment", contained, format!("k = 1..{}", spectra.len())),
            Check::new("connectivity", spread <= tol, format!("spread {spread:.1e}")),
        ],
    }
}

fn summary_text(report: &VerifyReport) -> String {
    let names = ["counts", "brute=overlift", "discards", "conjugacy", "brute=contfrac"];
    let mut s = format!("{:>3} {:>3}", "n", "k");
    for name in names {
        write!(s, "  {name:<16}").unwrap();
    }
    s.push('\n');
    for p in &report.pairs {
        write!(s, "{:>3} {:>3}", p.n, p.k).unwrap();
        for name in names {
            let cell = match p.checks.iter().find(|c| c.name == name) {
                None => "-".to_string(),
                Some(c) if c.ok => format!("ok {}", c.detail),
                Some(c) => format!("FAIL {}", c.detail),
            };
            let cell: String = cell.chars().take(16).collect();
            write!(s, "  {cell:<16}").unwrap();
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    for c in &report.cycles {
        let parts: Vec<String> = c
            .checks
            .iter()
            .map(|x| format!("{} {} ({})", x.name, if x.ok { "ok" } else { "FAIL" }, x.detail))
            .collect();
        writeln!(s, "n = {:>2}: {}", c.n, parts.join(", ")).unwrap();
    }
    writeln!(
        s,
        "{}: {} (n, k) pairs, {} spectra compared, tol {:e}",
        if report.passed { "all checks passed" } else { "FAILED" },
        report.pairs.len(),
        report.spectra_compared,
        report.tol
    )
    .unwrap();
    s
}

/// Largest n for which every k fits the dense oracle.
fn dense_n_max() -> usize {
    (3..).take_while(|&n| binomial(n, n / 2) <= DENSE_CAP as u128).last().unwrap_or(3)
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    require_format(args.output.format, &[Format::Text, Format::Json], "verify")?;
    let limit = dense_n_max();
    if args.n_max < 3 || args.n_max > limit {
        return Err(CliError::Usage(format!("--n-max must lie in [3, {limit}], got {}", args.n_max)));
    }
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let work: Vec<(usize, usize)> = (3..=args.n_max).flat_map(|n| (1..=n / 2).map(move |k| (n, k))).collect();
    let first = work[0];
    let pairs = exec::map_collect(work, Execution::Parallel, |(n, k)| {
        check_pair(n, k, args.tol, args.perturb && (n, k) == first)
    });
    let cycles: Vec<CycleOutcome> = (3..=args.n_max).map(|n| check_cycle(n, &pairs, args.tol)).collect();

    let first_failure = pairs
        .iter()
        .flat_map(|p| p.checks.iter().map(move |c| (format!("(n = {}, k = {})", p.n, p.k), c)))
        .chain(cycles.iter().flat_map(|cy| cy.checks.iter().map(move |c| (format!("(n = {})", cy.n), c))))
        .find(|(_, c)| !c.ok)
        .map(|(at, c)| format!("{at}, {}: {}", c.name, c.detail));
    let report = VerifyReport {
        n_max: args.n_max,
        tol: args.tol,
        spectra_compared: pairs.iter().map(|p| p.spectra).sum(),
        passed: first_failure.is_none(),
        pairs,
        cycles,
    };
    let body = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => summary_text(&report),
    };
    emit(&args.output, &body)?;
    match first_failure {
        Some(msg) => Err(CliError::Mismatch(msg)),
        None => Ok(()),
    }
}
