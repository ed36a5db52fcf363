use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `(n, k)` or `r` outside the supported domain.
    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("C({n},{k}) = {order} exceeds the size cap of {cap} for this route")]
    SizeGuard {
        n: usize,
        k: usize,
        order: usize,
        cap: usize,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A continued-fraction denominator vanished.
    #[error("pole of the continued fraction at lambda = {lambda} (denominator {denominator:e})")]
    Pole { lambda: f64, denominator: f64 },

    #[error("lambda = {lambda} is within the guard band of the branch point Z^2 = 4 (|Z^2 - 4| = {distance})")]
    Singularity { lambda: f64, distance: f64 },

    /// An eigenvector could not be lifted consistently over a periodic orbit.
    #[error("lift consistency failure: {0}")]
    Consistency(String),

    #[error("sector r = {r} of n = {n}: expected {expected} eigenvalues, found {found}")]
    RootCount {
        n: usize,
        r: usize,
        expected: usize,
        found: usize,
    },
}

pub(crate) fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("cycle length n = {n} must be at least 3")));
    }
    if k == 0 || 2 * k > n {
        return Err(Error::Domain(format!(
            "token count k = {k} must satisfy 1 <= k <= n/2 for n = {n}"
        )));
    }
    Ok(())
}

pub(crate) fn check_sector(n: usize, r: usize) -> Result<()> {
    if r >= n {
        return Err(Error::Domain(format!("sector r = {r} must lie in [0, {n})")));
    }
    Ok(())
}
