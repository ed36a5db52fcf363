use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use token_spectra::contfrac2::spectrum_2token;
use token_spectra::overlift::full_spectrum;
use token_spectra::spectrum::{compare_multisets, max_deviation, SectorSpectrum};
use token_spectra::token_graph::brute_spectrum;
use token_spectra::{Method, SpectrumReport};

use crate::args::{Format, MethodArg, SpectrumArgs};
use crate::error::{CliError, CliResult};
use crate::output::{emit, fixed, wrap};

#[derive(Debug, Serialize, Deserialize)]
pub struct SectorJson {
    pub r: usize,
    /// Every eigenvalue of B(z) at this sector, kept or not.
    pub eigenvalues: Vec<f64>,
    pub discarded: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub sectors: Vec<SectorJson>,
    pub kept: Vec<f64>,
}

impl From<&SpectrumReport> for SpectrumJson {
    fn from(r: &SpectrumReport) -> Self {
        Self {
            n: r.n,
            k: r.k,
            method: r.method,
            sectors: r
                .sectors
                .iter()
                .map(|s| SectorJson {
                    r: s.r,
                    eigenvalues: s.eigenvalues(),
                    discarded: s.discarded(),
                })
                .collect(),
            kept: r.kept().to_vec(),
        }
    }
}

pub fn compute(n: usize, k: usize, method: MethodArg) -> CliResult<SpectrumReport> {
    match method {
        MethodArg::Brute => Ok(brute_spectrum(n, k)?),
        MethodArg::Overlift => Ok(full_spectrum(n, k)?),
        MethodArg::Contfrac => {
            if k != 2 {
                return Err(CliError::Usage(format!("--method contfrac needs --k 2, got --k {k}")));
            }
            Ok(spectrum_2token(n)?)
        }
    }
}

fn same_sector(a: &SectorSpectrum, b: &SectorSpectrum) -> bool {
    a.entries.len() == b.entries.len()
        && a.entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| x.kept == y.kept && (x.lambda - y.lambda).abs() < 1e-6)
}

/// Rows `(label parts, sector)` in ascending r, with each sector merged into
/// its conjugate `n - r` when their spectra agree.
fn audit_rows(report: &SpectrumReport) -> Vec<(Vec<usize>, &SectorSpectrum)> {
    let n = report.n;
    let mut rows = Vec::new();
    let mut merged = vec![false; n];
    for s in &report.sectors {
        if merged[s.r] {
            continue;
        }
        let conj = (n - s.r) % n;
        match report.sector(conj) {
            Some(c) if conj != s.r && same_sector(s, c) => {
                merged[conj] = true;
                rows.push((vec![s.r, conj], s));
            }
            _ => rows.push((vec![s.r], s)),
        }
    }
    rows
}

fn cell(lambda: f64, kept: bool) -> String {
    format!("{:>8}{}", fixed(lambda), if kept { ' ' } else { '*' })
}

fn audit_text(report: &SpectrumReport) -> String {
    let rows = audit_rows(report);
    let labels: Vec<String> = rows
        .iter()
        .map(|(rs, _)| rs.iter().map(|r| format!("spec(B(z^{r}))")).collect::<Vec<_>>().join("="))
        .collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    let mut s = String::new();
    for (label, (_, sector)) in labels.iter().zip(&rows) {
        let cells: String = sector.entries.iter().map(|e| cell(e.lambda, e.kept)).collect();
        writeln!(s, "{label:<width$}{}", cells.trim_end()).unwrap();
    }
    let mut reasons: Vec<String> = report.discarded().iter().map(|(_, _, why)| why.to_string()).collect();
    reasons.dedup();
    reasons.sort();
    reasons.dedup();
    for why in reasons {
        writeln!(s, "* discarded: {why}").unwrap();
    }
    s
}

fn audit_latex(report: &SpectrumReport) -> String {
    let rows = audit_rows(report);
    let cols = rows.iter().map(|(_, s)| s.entries.len()).max().unwrap_or(0);
    let mut s = format!("\\begin{{tabular}}{{|c|{}|}}\n\\hline\n", "c".repeat(cols));
    let head: Vec<String> = (1..=cols).map(|i| format!("$\\lambda_{{r,{i}}}$")).collect();
    writeln!(s, "$z=\\zeta^r$ & {} \\\\\n\\hline\\hline", head.join(" & ")).unwrap();
    for (rs, sector) in rows {
        let label = rs.iter().map(|r| format!("\\mathrm{{spec}}(B(\\zeta^{{{r}}}))")).collect::<Vec<_>>().join("=");
        let mut cells: Vec<String> = sector
            .entries
            .iter()
            .map(|e| if e.kept { fixed(e.lambda) } else { format!("${}^*$", fixed(e.lambda)) })
            .collect();
        cells.resize(cols, String::new());
        writeln!(s, "${label}$ & {} \\\\\n\\hline", cells.join(" & ")).unwrap();
    }
    s.push_str("\\end{tabular}\n");
    s
}

fn render(report: &SpectrumReport, args: &SpectrumArgs) -> CliResult<String> {
    let (n, k) = (report.n, report.k);
    Ok(match (args.output.format, args.audit) {
        (Format::Json, _) => serde_json::to_string_pretty(&SpectrumJson::from(report))? + "\n",
        (Format::Csv, false) => {
            let mut s = String::from("index,lambda\n");
            for (i, x) in report.kept().iter().enumerate() {
                writeln!(s, "{i},{x}").unwrap();
            }
            s
        }
        (Format::Csv, true) => {
            let mut s = String::from("r,lambda,kept,reason\n");
            for sector in &report.sectors {
                for e in &sector.entries {
                    let why = e.reason.as_ref().map(|w| format!("\"{w}\"")).unwrap_or_default();
                    writeln!(s, "{},{},{},{why}", sector.r, e.lambda, e.kept).unwrap();
                }
            }
            s
        }
        (Format::Latex, true) => audit_latex(report),
        (Format::Latex, false) => {
            let values: Vec<String> = report.kept().iter().map(|&x| fixed(x)).collect();
            format!("{}\n", values.join(", "))
        }
        (Format::Text, audit) => {
            let mut s = format!(
                "F_{k}(C_{n}), method {}: {} eigenvalues kept, {} discarded\n",
                report.method,
                report.kept().len(),
                report.discarded().len()
            );
            if audit {
                s.push_str(&audit_text(report));
            } else {
                let values: Vec<String> = report.kept().iter().map(|&x| fixed(x)).collect();
                s.push_str(&wrap(&values, 8));
            }
            s
        }
    })
}

pub fn run(args: &SpectrumArgs) -> CliResult<()> {
    let (n, k) = (args.graph.n, args.graph.k);
    if args.audit && args.method == MethodArg::Brute {
        return Err(CliError::Usage("--audit needs a sector method (overlift or contfrac)".into()));
    }
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let report = compute(n, k, args.method)?;
    let mut body = render(&report, args)?;

    let check = match args.check_against {
        Some(other) => {
            let reference = compute(n, k, other)?;
            let deviation = max_deviation(report.kept(), reference.kept());
            let line = match deviation {
                Some(d) => format!("check against {}: max deviation {d:.3e} (tol {:e})", Method::from(other), args.tol),
                None => format!("check against {}: lengths differ", Method::from(other)),
            };
            Some((compare_multisets(report.kept(), reference.kept(), args.tol), line))
        }
        None => None,
    };
    if let Some((_, line)) = &check {
        if args.output.format == Format::Text {
            body.push_str(line);
            body.push('\n');
        } else {
            eprintln!("{line}");
        }
    }
    emit(&args.output, &body)?;
    if let Some((Err(mismatch), _)) = check {
        return Err(CliError::Mismatch(format!("{} vs {}: {mismatch}", args.method.name(), args.check_against.unwrap().name())));
    }
    Ok(())
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        Method::from(self).as_str()
    }
}
