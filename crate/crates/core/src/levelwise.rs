//! Simplicial sets given dimensionwise by all of their simplices and the
//! action of monotone maps, cut down to their non-degenerate part.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::budget::max_simplices;
use crate::error::{Error, Result};
use crate::simplex::word::{codegeneracy, coface};
use crate::simplex::{DegeneracyWord, FinSSet, FinSSetBuilder, NdId, SimplexRef};

pub use crate::simplex::codes::{decode_images, encode_images, offsets, Key};

/// A simplicial set known through its simplices in each dimension.
pub trait LevelSource {
    /// Every `n`-simplex, degenerate or not, in a fixed order.
    fn keys(&mut self, n: usize) -> Result<Vec<Key>>;

    /// `θ*` of an `n`-simplex for a monotone `θ: [m] → [n]`.
    fn act(&mut self, key: &[u64], n: usize, theta: &[usize]) -> Key;

    /// Whether `θ*` fixes the key.
    fn fixes(&mut self, key: &[u64], n: usize, theta: &[usize]) -> bool {
        self.act(key, n, theta) == key
    }

    fn name(&self, n: usize, i: usize, _key: &[u64]) -> String {
        format!("x{n}_{i}")
    }
}

/// The non-degenerate part of a [`LevelSource`] through dimension `cap`,
/// with the normal form of every enumerated key.
#[derive(Clone, Debug)]
pub struct Levelwise {
    pub space: FinSSet,
    pub cap: usize,
    table: Vec<FxHashMap<Arc<[u64]>, SimplexRef>>,
    nd_keys: Vec<Vec<Arc<[u64]>>>,
}

/// `δʲσʲ: [n] → [n]`, so that `θ*x = s_j d_j x`.
fn retraction(n: usize, j: usize) -> Vec<usize> {
    let s = codegeneracy(n - 1, j);
    let d = coface(n, j);
    s.iter().map(|&v| d[v]).collect()
}

impl Levelwise {
    pub fn build(src: &mut dyn LevelSource, cap: usize) -> Result<Self> {
        let limit = max_simplices();
        let mut b = FinSSetBuilder::new();
        let mut table: Vec<FxHashMap<Arc<[u64]>, SimplexRef>> = Vec::new();
        let mut nd_keys: Vec<Vec<Arc<[u64]>>> = Vec::new();
        let mut total = 0usize;
        for n in 0..=cap {
            let keys = src.keys(n)?;
            let mut level: FxHashMap<Arc<[u64]>, SimplexRef> = FxHashMap::default();
            level.reserve(keys.len());
            let mut nd: Vec<Arc<[u64]>> = Vec::new();
            let retractions: Vec<Vec<usize>> = (0..n).map(|j| retraction(n, j)).collect();
            for key in keys {
                let key: Arc<[u64]> = key.into();
                let word: Vec<usize> = (0..n).rev().filter(|&j| src.fixes(&key, n, &retractions[j])).collect();
                let r = if word.is_empty() {
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n)
                            .map(|i| {
                                let f = src.act(&key, n, &coface(n, i));
                                table[n - 1].get(f.as_slice()).cloned().ok_or_else(|| {
                                    Error::Validation(format!("face {i} of an {n}-simplex was not enumerated"))
                                })
                            })
                            .collect::<Result<Vec<_>>>()?
                    };
                    let idx = nd.len();
                    let id = b.add(src.name(n, idx, &key), n, faces);
                    total += 1;
                    if total > limit {
                        return Err(Error::Budget(format!("more than {limit} non-degenerate simplices")));
                    }
                    nd.push(key.clone());
                    SimplexRef::nd(id)
                } else {
                    let keep: Vec<usize> = (0..=n).filter(|&i| i == 0 || !word.contains(&(i - 1))).collect();
                    let base = src.act(&key, n, &keep);
                    let m = keep.len() - 1;
                    let found = table[m].get(base.as_slice()).cloned().ok_or_else(|| {
                        Error::Validation(format!("base of a degenerate {n}-simplex was not enumerated"))
                    })?;
                    if found.is_degenerate() {
                        return Err(Error::Validation("degenerate base of a degenerate simplex".into()));
                    }
                    SimplexRef::new(DegeneracyWord::new(word).expect("decreasing"), found.base)
                };
                level.insert(key, r);
            }
            table.push(level);
            nd_keys.push(nd);
        }
        let space = b.build()?;
        Ok(Levelwise { space, cap, table, nd_keys })
    }

    /// The normal form of an enumerated simplex.
    pub fn lookup(&self, n: usize, key: &[u64]) -> Option<&SimplexRef> {
        self.table.get(n)?.get(key)
    }

    pub fn key(&self, id: NdId) -> &[u64] {
        &self.nd_keys[id.dim][id.idx]
    }

    /// Number of simplices, degenerate ones included, in dimension `n`.
    pub fn all_count(&self, n: usize) -> usize {
        self.table.get(n).map_or(0, FxHashMap::len)
    }
}

/// Decodes the value at `z` (any simplex of the source) of a map given as a
/// flattened key into `y`.
pub fn value_at(key: &[u64], offs: &[usize], y: &FinSSet, z: &SimplexRef) -> SimplexRef {
    let v = SimplexRef::from_code(key[offs[z.base.dim] + z.base.idx]);
    if z.word.is_empty() {
        v
    } else {
        y.apply(&v, &z.word.surjection(z.dim()))
    }
}
