use std::collections::HashMap;
use std::sync::Arc;

use super::map::SMap;
use super::sset::{FinSSet, FinSSetBuilder, NdId, SimplexRef};
use super::word::{subsets, DegeneracyWord};

/// `X × Y` with its projections and a lookup from pairs to normal forms.
#[derive(Clone, Debug)]
pub struct Product {
    space: Arc<FinSSet>,
    left: Arc<FinSSet>,
    right: Arc<FinSSet>,
    pairs: Vec<Vec<(SimplexRef, SimplexRef)>>,
    index: HashMap<(SimplexRef, SimplexRef), NdId>,
}

fn remove_common(word: &DegeneracyWord, dim: usize, common: &[usize], tau: &[usize]) -> DegeneracyWord {
    if common.is_empty() {
        return word.clone();
    }
    let sigma = word.surjection(dim);
    let mut reduced = vec![0; dim - common.len() + 1];
    for i in 0..=dim {
        reduced[tau[i]] = sigma[i];
    }
    DegeneracyWord::from_surjection(&reduced)
}

impl Product {
    /// The full product.
    pub fn new(left: Arc<FinSSet>, right: Arc<FinSSet>) -> Self {
        let cap = left.dim().unwrap_or(0) + right.dim().unwrap_or(0);
        Self::with_cap(left, right, cap)
    }

    /// Non-degenerate simplices are enumerated as jointly non-degenerate
    /// pairs (shuffles), up to dimension `cap`.
    pub fn with_cap(left: Arc<FinSSet>, right: Arc<FinSSet>, cap: usize) -> Self {
        let mut candidates: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
        if let (Some(dl), Some(dr)) = (left.dim(), right.dim()) {
            let top = (dl + dr).min(cap);
            candidates.resize(top + 1, Vec::new());
            for p in 0..=dl {
                for x in left.ids(p) {
                    for q in 0..=dr {
                        for y in right.ids(q) {
                            for n in p.max(q)..=(p + q).min(top) {
                                for wa in subsets(n, n - p) {
                                    let rest: Vec<usize> = (0..n).filter(|i| !wa.contains(i)).collect();
                                    for pick in subsets(rest.len(), n - q) {
                                        let wb: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
                                        let a = SimplexRef::new(
                                            DegeneracyWord::new(wa.iter().rev().copied().collect()).unwrap(),
                                            x,
                                        );
                                        let b = SimplexRef::new(
                                            DegeneracyWord::new(wb.iter().rev().copied().collect()).unwrap(),
                                            y,
                                        );
                                        candidates[n].push((a, b));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut builder = FinSSetBuilder::new();
        let mut index = HashMap::new();
        let mut product = Product {
            space: Arc::new(FinSSet::empty()),
            left: left.clone(),
            right: right.clone(),
            pairs: Vec::new(),
            index: HashMap::new(),
        };
        for (n, level) in candidates.iter().enumerate() {
            for (a, b) in level {
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let fa = left.face(a, i);
                            let fb = right.face(b, i);
                            product.normalize_with(&index, &fa, &fb)
                        })
                        .collect()
                };
                let name = format!("({},{})", left.display(a), right.display(b));
                let id = builder.add(name, n, faces);
                index.insert((a.clone(), b.clone()), id);
            }
        }
        product.space = Arc::new(builder.build().expect("product"));
        product.pairs = candidates;
        product.index = index;
        product
    }

    fn normalize_with(
        &self,
        index: &HashMap<(SimplexRef, SimplexRef), NdId>,
        a: &SimplexRef,
        b: &SimplexRef,
    ) -> SimplexRef {
        let n = a.dim();
        let common: Vec<usize> = a.word.indices().iter().copied().filter(|&j| b.word.contains(j)).collect();
        let cword = DegeneracyWord::new(common.clone()).unwrap();
        let tau = cword.surjection(n);
        let a2 = SimplexRef::new(remove_common(&a.word, n, &common, &tau), a.base);
        let b2 = SimplexRef::new(remove_common(&b.word, n, &common, &tau), b.base);
        let id = index[&(a2, b2)];
        SimplexRef::new(cword, id)
    }

    /// Normal form of the pair `(a, b)` of equal-dimensional simplices.
    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
        assert_eq!(a.dim(), b.dim(), "pair of simplices of different dimensions");
        self.normalize_with(&self.index, a, b)
    }

    pub fn space(&self) -> &Arc<FinSSet> {
        &self.space
    }

    pub fn left(&self) -> &Arc<FinSSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinSSet> {
        &self.right
    }

    /// Components of a non-degenerate simplex of the product.
    pub fn components(&self, id: NdId) -> &(SimplexRef, SimplexRef) {
        &self.pairs[id.dim][id.idx]
    }

    /// Components of an arbitrary simplex of the product.
    pub fn split(&self, x: &SimplexRef) -> (SimplexRef, SimplexRef) {
        let (a, b) = self.components(x.base);
        if x.word.is_empty() {
            return (a.clone(), b.clone());
        }
        let s = x.word.surjection(x.dim());
        (self.left.apply(a, &s), self.right.apply(b, &s))
    }

    pub fn projection_left(&self) -> SMap {
        let images = self.pairs.iter().map(|l| l.iter().map(|(a, _)| a.clone()).collect()).collect();
        SMap::new_unchecked(self.space.clone(), self.left.clone(), images)
    }

    pub fn projection_right(&self) -> SMap {
        let images = self.pairs.iter().map(|l| l.iter().map(|(_, b)| b.clone()).collect()).collect();
        SMap::new_unchecked(self.space.clone(), self.right.clone(), images)
    }

    /// `f × g` into another product.
    pub fn map_into(&self, other: &Product, f: &SMap, g: &SMap) -> SMap {
        let images = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|(a, b)| other.pair(&f.apply(a), &g.apply(b))).collect())
            .collect();
        SMap::new_unchecked(self.space.clone(), other.space.clone(), images)
    }
}
