use std::fmt::Write as _;

use serde::Serialize;
use token_spectra::contfrac2::b2_poly_matrix;
use token_spectra::laurent::{LaurentMatrix, MatrixStyle};
use token_spectra::necklaces::enumerate_orbits;
use token_spectra::overlift::build_poly_matrix;

use crate::args::{Format, MatrixArgs};
use crate::error::{CliError, CliResult};
use crate::output::{emit, fixed, require_format};

#[derive(Debug, Serialize)]
struct Evaluated {
    r: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct MatrixReport {
    n: usize,
    k: usize,
    representatives: Vec<Vec<usize>>,
    entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluated: Option<Evaluated>,
}

fn complex_cell(re: f64, im: f64) -> String {
    if im.abs() < 5e-5 {
        fixed(re)
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fixed(re), fixed(im.abs()))
    }
}

pub fn run(args: &MatrixArgs) -> CliResult<()> {
    require_format(args.output.format, &[Format::Text, Format::Latex, Format::Json], "matrix")?;
    let (n, k) = (args.graph.n, args.graph.k);
    let orbits = enumerate_orbits(n, k)?;
    let (m, style): (LaurentMatrix, MatrixStyle) = if k == 2 {
        (b2_poly_matrix(n)?, MatrixStyle::Tridiagonal)
    } else {
        (build_poly_matrix(&orbits), MatrixStyle::General)
    };
    if let Some(r) = args.r {
        if r >= n {
            return Err(CliError::Usage(format!("--r {r} must lie in [0, {n})")));
        }
    }
    let evaluated = args.r.map(|r| {
        let b = m.specialize(r);
        let rows = |f: &dyn Fn(usize, usize) -> f64| (0..b.nrows()).map(|i| (0..b.ncols()).map(|j| f(i, j)).collect()).collect();
        Evaluated {
            r,
            re: rows(&|i, j| b[(i, j)].re),
            im: rows(&|i, j| b[(i, j)].im),
        }
    });
    let reps: Vec<String> = orbits.reps().iter().map(|r| r.to_string()).collect();

    let body = match args.output.format {
        Format::Json => {
            let report = MatrixReport {
                n,
                k,
                representatives: orbits.reps().iter().map(|r| r.elements().to_vec()).collect(),
                entries: m.rendered_entries(style),
                evaluated,
            };
            serde_json::to_string_pretty(&report)? + "\n"
        }
        Format::Latex => {
            let mut s = m.render_latex(style);
            if let Some(e) = &evaluated {
                writeln!(s, "% z = exp(2 pi i {} / {n})", e.r).unwrap();
                s.push_str("\\begin{pmatrix}\n");
                let rows: Vec<String> = (0..e.re.len())
                    .map(|i| {
                        let cells: Vec<String> = (0..e.re.len()).map(|j| complex_cell(e.re[i][j], e.im[i][j])).collect();
                        format!("  {}", cells.join(" & "))
                    })
                    .collect();
                s.push_str(&rows.join(" \\\\\n"));
                s.push_str("\n\\end{pmatrix}\n");
            }
            s
        }
        _ => {
            let mut s = format!("B(z) for F_{k}(C_{n}), rows and columns {}\n", reps.join(" "));
            s.push_str(&m.render_text(style));
            if let Some(e) = &evaluated {
                writeln!(s, "\nB(z) at z = exp(2 pi i {} / {n})", e.r).unwrap();
                let cells: Vec<Vec<String>> = (0..e.re.len())
                    .map(|i| (0..e.re.len()).map(|j| complex_cell(e.re[i][j], e.im[i][j])).collect())
                    .collect();
                let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
                for row in cells {
                    let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    writeln!(s, "{}", line.join("  ")).unwrap();
                }
            }
            s
        }
    };
    emit(&args.output, &body)
}
