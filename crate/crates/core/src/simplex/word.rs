use std::fmt;

use crate::error::{Error, Result};

/// A composite degeneracy `s_{j1} ∘ … ∘ s_{jt}` with `j1 > … > jt`.
///
/// Equivalently, a surjection of ordinals `[m] → [m - t]`; the indices are the
/// positions `i` with `σ(i) = σ(i + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn identity() -> Self {
        DegeneracyWord(Vec::new())
    }

    /// Builds a word, rejecting indices that are not strictly decreasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Malformed(format!(
                "degeneracy indices {indices:?} are not strictly decreasing"
            )));
        }
        Ok(DegeneracyWord(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    /// The surjection `[dim] → [dim - len]` this word denotes, as a value table.
    pub fn surjection(&self, dim: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(dim + 1);
        let mut v = 0;
        out.push(0);
        for i in 0..dim {
            if !self.0.contains(&i) {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// Reads a word back from a surjective monotone value table.
    pub fn from_surjection(values: &[usize]) -> Self {
        let mut idx: Vec<usize> = (0..values.len().saturating_sub(1))
            .filter(|&i| values[i] == values[i + 1])
            .collect();
        idx.reverse();
        DegeneracyWord(idx)
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.0 {
            write!(f, "s{j}")?;
        }
        Ok(())
    }
}

/// Coface `δ^i: [n-1] → [n]` as a value table.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// Codegeneracy `σ^j: [n+1] → [n]` as a value table.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect()
}

/// Epi-mono factorization of a monotone map: returns `(surjection, image)`.
pub fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::with_capacity(values.len());
    let mut surj = Vec::with_capacity(values.len());
    for &v in values {
        if image.last() != Some(&v) {
            image.push(v);
        }
        surj.push(image.len() - 1);
    }
    (surj, image)
}

pub fn is_monotone(values: &[usize]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

/// All monotone maps `[p] → [n]`, lexicographically.
pub fn monotone_maps(p: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p + 1);
    fn rec(p: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(p, n, v, cur, out);
            cur.pop();
        }
    }
    rec(p, n, 0, &mut cur, &mut out);
    out
}

/// All degeneracy words carrying `[m]` onto `[k]`, in lexicographic order of
/// their index sets.
pub fn words_between(m: usize, k: usize) -> Vec<DegeneracyWord> {
    if k > m {
        return Vec::new();
    }
    let t = m - k;
    let mut out = Vec::new();
    for set in subsets(m, t) {
        let mut v = set;
        v.reverse();
        out.push(DegeneracyWord(v));
    }
    out
}

/// Increasing `t`-element subsets of `{0, …, n-1}`.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < t - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, t, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, t, 0, &mut cur, &mut out);
    out
}
