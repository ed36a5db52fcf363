use std::fmt::Write as _;

use serde::Serialize;
use token_spectra::contfrac2::{charpoly_sector, sector_roots, SectorCase};

use crate::args::{CharpolyArgs, Format};
use crate::error::{CliError, CliResult};
use crate::output::{emit, fixed, require_format, trimmed};

#[derive(Debug, Serialize)]
struct Sample {
    lambda: f64,
    phi: f64,
}

#[derive(Debug, Serialize)]
struct SectorPoly {
    r: usize,
    case: &'static str,
    /// Highest degree first, monic.
    coefficients: Vec<f64>,
    roots: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    samples: Vec<Sample>,
}

#[derive(Debug, Serialize)]
struct CharpolyReport {
    n: usize,
    k: usize,
    lambda_range: Option<[f64; 2]>,
    sectors: Vec<SectorPoly>,
}

fn case_name(case: SectorCase) -> &'static str {
    match case {
        SectorCase::Odd => "odd n",
        SectorCase::EvenEven => "even n, even r",
        SectorCase::HalfTurn => "even n, r = n/2",
        SectorCase::EvenOdd => "even n, odd r",
    }
}

fn grid(min: f64, max: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![min];
    }
    (0..m).map(|i| min + (max - min) * i as f64 / (m - 1) as f64).collect()
}

pub fn run(args: &CharpolyArgs) -> CliResult<()> {
    require_format(args.output.format, &[Format::Text, Format::Csv, Format::Json], "charpoly")?;
    let n = args.n;
    if args.k != 2 {
        return Err(CliError::Usage(format!("charpoly is only defined for --k 2, got --k {}", args.k)));
    }
    if let Some(r) = args.r {
        if r >= n {
            return Err(CliError::Usage(format!("--r {r} must lie in [0, {n})")));
        }
    }
    if args.samples == Some(0) {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(args.lambda_min < args.lambda_max) {
        return Err(CliError::Usage(format!(
            "--lambda-min {} must be below --lambda-max {}",
            args.lambda_min, args.lambda_max
        )));
    }

    let sectors: Vec<usize> = match args.r {
        Some(r) => vec![r],
        None => (0..n).collect(),
    };
    let lambdas = args.samples.map(|m| grid(args.lambda_min, args.lambda_max, m)).unwrap_or_default();
    let mut polys = Vec::with_capacity(sectors.len());
    for r in sectors {
        let poly = charpoly_sector(n, r)?;
        polys.push(SectorPoly {
            r,
            case: case_name(SectorCase::of(n, r)),
            coefficients: poly.coeffs_descending(),
            roots: sector_roots(n, r)?,
            samples: lambdas.iter().map(|&lambda| Sample { lambda, phi: poly.eval(lambda) }).collect(),
        });
    }
    let report = CharpolyReport {
        n,
        k: 2,
        lambda_range: args.samples.map(|_| [args.lambda_min, args.lambda_max]),
        sectors: polys,
    };

    let body = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv if args.samples.is_some() => {
            let mut s = String::from("r,lambda,phi\n");
            for p in &report.sectors {
                for x in &p.samples {
                    writeln!(s, "{},{},{}", p.r, x.lambda, x.phi).unwrap();
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("r,degree,coefficient\n");
            for p in &report.sectors {
                let deg = p.coefficients.len() - 1;
                for (i, c) in p.coefficients.iter().enumerate() {
                    writeln!(s, "{},{},{c}", p.r, deg - i).unwrap();
                }
            }
            s
        }
        _ => {
            let mut s = String::new();
            for p in &report.sectors {
                writeln!(s, "F_2(C_{n}) sector r = {} ({})", p.r, p.case).unwrap();
                let coeffs: Vec<String> = p.coefficients.iter().map(|&c| trimmed(c)).collect();
                writeln!(s, "  coefficients, highest degree first: {}", coeffs.join(", ")).unwrap();
                let roots: Vec<String> = p.roots.iter().map(|&x| fixed(x)).collect();
                writeln!(s, "  roots: {}", roots.join(" ")).unwrap();
                if let Some(&smallest) = p.roots.first() {
                    writeln!(s, "  smallest root: {}", fixed(smallest)).unwrap();
                }
                if !p.samples.is_empty() {
                    writeln!(s, "  samples on [{}, {}]:", args.lambda_min, args.lambda_max).unwrap();
                    writeln!(s, "lambda,phi").unwrap();
                    for x in &p.samples {
                        writeln!(s, "{},{}", x.lambda, x.phi).unwrap();
                    }
                }
            }
            s
        }
    };
    emit(&args.output, &body)
}
