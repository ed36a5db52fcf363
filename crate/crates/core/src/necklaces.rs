//! Orbits of the rotation group Z_n acting on k-subsets of Z_n
//! (fixed-density binary necklaces).
//!
//! [`enumerate_orbits`] materialises one canonical representative per orbit
//! together with a total lookup from every k-subset to `(orbit, shift)`; it
//! is the index set of the over-lift matrix. The three closed-form counts
//! ([`count_burnside`], [`count_polya`], [`count_moreau`]) and the
//! allocation-free walk in [`count_enumerated_by_density`] cross-check it.

use std::collections::HashMap;

use crate::error::{check_nk, Error, Result};
use crate::token_graph::{binomial, k_subsets, TokenSet};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `d(r) = gcd(n, r)` and `o(r) = n / d(r)`, the number and length of the
/// cycles of the rotation by `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationArithmetic {
    pub n: usize,
    pub r: usize,
}

impl RotationArithmetic {
    pub fn new(n: usize, r: usize) -> Self {
        debug_assert!(r < n);
        Self { n, r }
    }

    pub fn d(self) -> usize {
        gcd(self.n, self.r)
    }

    /// Order of `z = exp(2 pi i r / n)` as a root of unity.
    pub fn o(self) -> usize {
        self.n / self.d()
    }
}

/// Order of the sector `r` as a root of unity.
pub fn sector_order(n: usize, r: usize) -> usize {
    RotationArithmetic::new(n, r).o()
}

/// Ascending divisors of `n`.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: usize) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn exact_binomial(n: usize, k: usize) -> Result<u128> {
    match binomial(n, k) {
        u128::MAX => Err(Error::Domain(format!("C({n},{k}) overflows 128-bit arithmetic"))),
        v => Ok(v),
    }
}

fn check_count_args(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::Domain(format!("orbit counts need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Number of orbits by Burnside's lemma: the average over all rotations `r`
/// of the number of k-subsets they fix, `C(d(r), k / o(r))` when `o(r) | k`.
pub fn count_burnside(n: usize, k: usize) -> Result<u128> {
    check_count_args(n, k)?;
    let mut total: u128 = 0;
    for r in 0..n {
        let rot = RotationArithmetic::new(n, r);
        if k.is_multiple_of(rot.o()) {
            total += exact_binomial(rot.d(), k / rot.o())?;
        }
    }
    debug_assert_eq!(total % n as u128, 0);
    Ok(total / n as u128)
}

/// Number of orbits from the Euler-phi form of Polya's theorem.
pub fn count_polya(n: usize, k: usize) -> Result<u128> {
    check_count_args(n, k)?;
    let mut total: u128 = 0;
    for d in divisors(gcd(n, k)) {
        total += euler_phi(d) as u128 * exact_binomial(n / d, k / d)?;
    }
    debug_assert_eq!(total % n as u128, 0);
    Ok(total / n as u128)
}

/// Number of aperiodic orbits (period exactly n), via the Mobius function.
pub fn count_moreau(n: usize, k: usize) -> Result<u128> {
    check_count_args(n, k)?;
    let mut total: i128 = 0;
    for d in divisors(gcd(n, k)) {
        let c = exact_binomial(n / d, k / d)? as i128;
        total += mobius(d) as i128 * c;
    }
    debug_assert!(total >= 0 && total % n as i128 == 0);
    Ok((total / n as i128) as u128)
}

/// Counts orbits of every density `0..=max_ones` in one pass, by walking the
/// binary pre-necklace tree (Fredricksen-Kessler-Maiorana order) and pruning
/// branches with more than `max_ones` ones. Nothing is allocated per orbit,
/// so this reaches n = 30 where [`enumerate_orbits`] cannot.
pub fn count_enumerated_by_density(n: usize, max_ones: usize) -> Vec<u64> {
    struct Walk {
        n: usize,
        max_ones: usize,
        word: Vec<u8>,
        counts: Vec<u64>,
    }

    impl Walk {
        // `t` is the next 1-based position, `p` the current period.
        fn go(&mut self, t: usize, p: usize, ones: usize) {
            if t > self.n {
                if self.n.is_multiple_of(p) {
                    self.counts[ones] += 1;
                }
                return;
            }
            let inherited = self.word[t - p];
            if ones + inherited as usize <= self.max_ones {
                self.word[t] = inherited;
                self.go(t + 1, p, ones + inherited as usize);
            }
            if inherited == 0 && ones < self.max_ones {
                self.word[t] = 1;
                self.go(t + 1, t, ones + 1);
            }
        }
    }

    let max_ones = max_ones.min(n);
    let mut walk = Walk {
        n,
        max_ones,
        word: vec![0; n + 1],
        counts: vec![0; max_ones + 1],
    };
    if n > 0 {
        walk.go(1, 1, 0);
    }
    walk.counts
}

/// Orbit count from the pre-necklace walk for a single density.
pub fn count_enumerated(n: usize, k: usize) -> u64 {
    count_enumerated_by_density(n, k)[k]
}

/// Smallest `gamma >= 1` with `A + gamma = A`. Always divides n.
pub fn period(a: &TokenSet) -> usize {
    let n = a.n();
    divisors(n)
        .into_iter()
        .find(|&g| a.shifted(g) == *a)
        .unwrap_or(n)
}

/// Canonical representative of the orbit of `x` (the lexicographically least
/// rotation) and the smallest nonnegative `j` with `rep + j = x`.
pub fn canonical_form(x: &TokenSet) -> (TokenSet, usize) {
    let n = x.n();
    let mut best = x.clone();
    let mut best_shift = 0;
    for s in 1..n {
        let cand = x.shifted(n - s);
        if cand < best {
            best = cand;
            best_shift = s;
        }
    }
    (best, best_shift)
}

/// Canonical orbit representatives with periods and a total subset lookup.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    n: usize,
    k: usize,
    reps: Vec<TokenSet>,
    periods: Vec<usize>,
    rep_index: HashMap<TokenSet, usize>,
    /// Indexed by the lexicographic rank of a subset: `(orbit, smallest shift)`.
    lookup: Vec<(usize, usize)>,
}

impl OrbitTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of orbits, the order of the over-lift matrix.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[TokenSet] {
        &self.reps
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn period_of(&self, i: usize) -> usize {
        self.periods[i]
    }

    pub fn index_of_rep(&self, rep: &TokenSet) -> Option<usize> {
        self.rep_index.get(rep).copied()
    }

    /// `(i, j)` with `reps[i] + j = x` and `0 <= j < periods[i]`.
    pub fn lookup(&self, x: &TokenSet) -> (usize, usize) {
        debug_assert_eq!((x.n(), x.k()), (self.n, self.k));
        self.lookup[x.lex_rank()]
    }

    /// Same orbit as [`Self::lookup`] but the largest shift in `[0, n)`.
    pub fn lookup_largest(&self, x: &TokenSet) -> (usize, usize) {
        let (i, j) = self.lookup(x);
        let p = self.periods[i];
        (i, j + p * (self.n / p - 1))
    }

    /// Representatives whose period is smaller than n.
    pub fn periodic(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.periods[i] < self.n)
    }

    /// Short orbits whose period is not a multiple of the order of sector
    /// `r`: a quotient eigenvector must vanish on these to lift.
    pub fn incompatible_with_sector(&self, r: usize) -> Vec<usize> {
        let o = sector_order(self.n, r);
        self.periodic().filter(|&i| !self.periods[i].is_multiple_of(o)).collect()
    }
}

/// Largest `C(n, k)` that [`enumerate_orbits`] will walk through.
pub const ENUMERATION_CAP: usize = 4_000_000;

/// One lexicographically least representative per orbit, sorted, via filter
/// enumeration over all `C(n, k)` subsets.
pub fn enumerate_orbits(n: usize, k: usize) -> Result<OrbitTable> {
    check_nk(n, k)?;
    let order = binomial(n, k);
    if order > ENUMERATION_CAP as u128 {
        return Err(Error::SizeGuard {
            n,
            k,
            order: order.min(usize::MAX as u128) as usize,
            cap: ENUMERATION_CAP,
        });
    }
    let subsets = k_subsets(n, k);
    let mut reps = Vec::new();
    let mut periods = Vec::new();
    let mut rep_index = HashMap::new();
    let mut lookup = Vec::with_capacity(subsets.len());
    for x in subsets {
        let (rep, shift) = canonical_form(&x);
        let i = match rep_index.get(&rep) {
            Some(&i) => i,
            None => {
                // Lexicographic order meets every orbit first at its representative.
                debug_assert_eq!(rep, x);
                let i = reps.len();
                periods.push(period(&rep));
                rep_index.insert(rep.clone(), i);
                reps.push(rep);
                i
            }
        };
        lookup.push((i, shift));
    }
    Ok(OrbitTable {
        n,
        k,
        reps,
        periods,
        rep_index,
        lookup,
    })
}
