use std::fmt::Write as _;

use serde::Serialize;
use token_spectra::necklaces::{count_burnside, count_enumerated, count_moreau, count_polya, enumerate_orbits};

use crate::args::{Format, OrbitsArgs};
use crate::error::{CliError, CliResult};
use crate::output::{emit, require_format};

#[derive(Debug, Serialize)]
struct OrbitRow {
    representative: Vec<usize>,
    period: usize,
}

#[derive(Debug, Serialize)]
struct Counts {
    enumerated: u128,
    burnside: u128,
    polya: u128,
    aperiodic_enumerated: u128,
    moreau: u128,
}

#[derive(Debug, Serialize)]
struct OrbitsReport {
    n: usize,
    k: usize,
    orbits: Vec<OrbitRow>,
    counts: Counts,
}

pub fn run(args: &OrbitsArgs) -> CliResult<()> {
    require_format(args.output.format, &[Format::Text, Format::Csv, Format::Json], "orbits")?;
    let (n, k) = (args.graph.n, args.graph.k);
    let table = enumerate_orbits(n, k)?;
    let aperiodic = table.periods().iter().filter(|&&p| p == n).count() as u128;
    let counts = Counts {
        enumerated: table.len() as u128,
        burnside: count_burnside(n, k)?,
        polya: count_polya(n, k)?,
        aperiodic_enumerated: aperiodic,
        moreau: count_moreau(n, k)?,
    };
    let walk = count_enumerated(n, k) as u128;
    let report = OrbitsReport {
        n,
        k,
        orbits: table
            .reps()
            .iter()
            .zip(table.periods())
            .map(|(rep, &period)| OrbitRow {
                representative: rep.elements().to_vec(),
                period,
            })
            .collect(),
        counts,
    };

    let body = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("representative,period\n");
            for (rep, p) in table.reps().iter().zip(table.periods()) {
                let digits: Vec<String> = rep.elements().iter().map(|e| e.to_string()).collect();
                writeln!(s, "{},{p}", digits.join(" ")).unwrap();
            }
            s
        }
        _ => {
            let mut s = format!("Z_{n} orbits on {k}-subsets: {}\n", table.len());
            let width = table.reps().iter().map(|r| r.to_string().len()).max().unwrap_or(0).max(14);
            writeln!(s, "{:<width$}  period", "representative").unwrap();
            for (rep, p) in table.reps().iter().zip(table.periods()) {
                writeln!(s, "{:<width$}  {p}", rep.to_string()).unwrap();
            }
            let c = &report.counts;
            writeln!(s, "counts  burnside  polya  moreau").unwrap();
            writeln!(s, "        {:<8}  {:<5}  {} (aperiodic)", c.burnside, c.polya, c.moreau).unwrap();
            s
        }
    };
    emit(&args.output, &body)?;

    let c = &report.counts;
    if c.burnside != c.enumerated || c.polya != c.enumerated || walk != c.enumerated || c.moreau != c.aperiodic_enumerated {
        return Err(CliError::Mismatch(format!(
            "orbit counts disagree: enumerated {} (walk {walk}), burnside {}, polya {}, aperiodic {} vs moreau {}",
            c.enumerated, c.burnside, c.polya, c.aperiodic_enumerated, c.moreau
        )));
    }
    Ok(())
}
