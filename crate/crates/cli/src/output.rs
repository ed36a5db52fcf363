use std::fs;
use std::io::{self, Write};

use crate::args::{Format, OutputArgs};
use crate::error::{CliError, CliResult};

pub fn emit(output: &OutputArgs, body: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

pub fn require_format(format: Format, allowed: &[Format], command: &str) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase()))
    }
}

/// Table precision for eigenvalues.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Four decimals with trailing zeros removed: `-4`, `47.7602`.
pub fn trimmed(x: f64) -> String {
    let s = fixed(x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Joins values `per_line` at a time.
pub fn wrap(values: &[String], per_line: usize) -> String {
    let mut out = String::new();
    for chunk in values.chunks(per_line) {
        out.push_str("  ");
        out.push_str(&chunk.join("  "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formats() {
        assert_eq!(fixed(-1e-17), "0.0000");
        assert_eq!(fixed(0.75302), "0.7530");
        assert_eq!(trimmed(-3.9999999999999996), "-4");
        assert_eq!(trimmed(47.76020092), "47.7602");
        assert_eq!(trimmed(-2e-16), "0");
        assert_eq!(trimmed(1.0), "1");
    }
}
