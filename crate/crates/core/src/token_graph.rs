//! Explicit construction of the k-token graph F_k(C_n) of an n-cycle and its
//! Laplacian. This is the brute-force reference every other route is checked
//! against.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{check_nk, Error, Result};
use crate::exec::{self, Execution};
use crate::spectrum::{Method, SpectrumReport};

/// Largest vertex count accepted by the dense eigensolver.
pub const DENSE_CAP: usize = 5000;

/// A k-subset of Z_n: one placement of k indistinguishable tokens on the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TokenSet {
    n: usize,
    elements: Vec<usize>,
}

impl TokenSet {
    /// Builds a token set from arbitrary (unsorted) elements.
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.is_empty() || elements.len() > n {
            return Err(Error::Domain(format!(
                "a token set needs between 1 and {n} elements, got {}",
                elements.len()
            )));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("repeated element in {elements:?}")));
        }
        if let Some(&e) = elements.last().filter(|&&e| e >= n) {
            return Err(Error::Domain(format!("element {e} outside Z_{n}")));
        }
        Ok(Self { n, elements })
    }

    /// Caller guarantees `elements` is sorted, distinct and inside `[0, n)`.
    pub(crate) fn from_sorted(n: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|&e| e < n));
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The rotated set `A + shift` (every element shifted mod n).
    pub fn shifted(&self, shift: usize) -> Self {
        let mut elements: Vec<usize> = self.elements.iter().map(|&e| (e + shift) % self.n).collect();
        elements.sort_unstable();
        Self { n: self.n, elements }
    }

    /// All token sets reachable by sliding one token to a free neighbouring
    /// vertex of the cycle. Results are distinct.
    pub fn neighbors(&self) -> Vec<TokenSet> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * self.k());
        for &a in &self.elements {
            for b in [(a + 1) % n, (a + n - 1) % n] {
                if !self.contains(b) {
                    let mut next: Vec<usize> =
                        self.elements.iter().map(|&e| if e == a { b } else { e }).collect();
                    next.sort_unstable();
                    out.push(Self { n, elements: next });
                }
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.neighbors().len()
    }

    /// Position of this set in the lexicographic order of all k-subsets.
    pub fn lex_rank(&self) -> usize {
        let (n, k) = (self.n, self.k());
        let mut rank = 0usize;
        let mut next = 0usize;
        for (i, &c) in self.elements.iter().enumerate() {
            for v in next..c {
                rank += binomial(n - v - 1, k - i - 1) as usize;
            }
            next = c + 1;
        }
        rank
    }
}

impl fmt::Display for TokenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Exact binomial coefficient; saturates at `u128::MAX` on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All k-subsets of Z_n in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<TokenSet> {
    let mut out = Vec::with_capacity(binomial(n, k).min(1 << 20) as usize);
    let mut current: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(TokenSet::from_sorted(n, current.clone()));
        // Advance to the next combination.
        let mut i = k;
        while i > 0 && current[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct TokenGraph {
    n: usize,
    k: usize,
    vertices: Vec<TokenSet>,
    adjacency: Vec<Vec<usize>>,
}

impl TokenGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[TokenSet] {
        &self.vertices
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, set: &TokenSet) -> Option<usize> {
        if set.n() != self.n || set.k() != self.k {
            return None;
        }
        Some(set.lex_rank())
    }
}

/// Builds F_k(C_n) with vertices in lexicographic order.
pub fn build_token_graph(n: usize, k: usize) -> Result<TokenGraph> {
    check_nk(n, k)?;
    let vertices = k_subsets(n, k);
    let adjacency = vertices
        .iter()
        .map(|v| {
            let mut nb: Vec<usize> = v.neighbors().iter().map(TokenSet::lex_rank).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(TokenGraph {
        n,
        k,
        vertices,
        adjacency,
    })
}

/// L = D - A in the graph's vertex order.
#[derive(Debug, Clone)]
pub struct LaplacianMatrix {
    entries: DMatrix<f64>,
}

impl LaplacianMatrix {
    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// Ascending eigenvalues from the dense symmetric solver.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }
}

pub fn laplacian(g: &TokenGraph) -> LaplacianMatrix {
    let m = g.order();
    let mut entries = DMatrix::<f64>::zeros(m, m);
    for v in 0..m {
        entries[(v, v)] = g.degree(v) as f64;
        for &u in g.neighbors(v) {
            entries[(v, u)] = -1.0;
        }
    }
    LaplacianMatrix { entries }
}

/// Dense Laplacian eigenvalues of F_k(C_n), sorted ascending.
pub fn brute_spectrum(n: usize, k: usize) -> Result<SpectrumReport> {
    check_nk(n, k)?;
    let order = binomial(n, k);
    if order > DENSE_CAP as u128 {
        return Err(Error::SizeGuard {
            n,
            k,
            order: order.min(usize::MAX as u128) as usize,
            cap: DENSE_CAP,
        });
    }
    let g = build_token_graph(n, k)?;
    let kept = laplacian(&g).eigenvalues();
    Ok(SpectrumReport::unsectored(n, k, Method::Brute, kept))
}

/// Brute-force spectra for a batch of `(n, k)` pairs.
pub fn brute_spectra(pairs: Vec<(usize, usize)>, exec: Execution) -> Result<Vec<SpectrumReport>> {
    exec::try_map_collect(pairs, exec, |(n, k)| brute_spectrum(n, k))
}
