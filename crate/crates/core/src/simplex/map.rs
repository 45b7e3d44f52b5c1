use std::collections::HashSet;
use std::sync::Arc;

use super::sset::{FinSSet, NdId, SimplexRef};
use crate::error::{Error, Result};

/// A simplicial map, recorded by its values on non-degenerate source simplices.
#[derive(Clone, Debug)]
pub struct SMap {
    source: Arc<FinSSet>,
    target: Arc<FinSSet>,
    images: Vec<Vec<SimplexRef>>,
}

fn same_object(a: &Arc<FinSSet>, b: &Arc<FinSSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SMap {
    /// Checks shapes and that every image has the dimension of its source
    /// simplex. Face compatibility is reported by [`SMap::validate`].
    pub fn new(source: Arc<FinSSet>, target: Arc<FinSSet>, images: Vec<Vec<SimplexRef>>) -> Result<Self> {
        if images.len() != source.counts().len()
            || images.iter().zip(source.counts()).any(|(l, c)| l.len() != c)
        {
            return Err(Error::Malformed("map does not assign every source simplex".into()));
        }
        for (dim, level) in images.iter().enumerate() {
            for (idx, y) in level.iter().enumerate() {
                target.check_ref(y)?;
                if y.dim() != dim {
                    return Err(Error::Malformed(format!(
                        "image of {} has dimension {} instead of {dim}",
                        source.name(NdId::new(dim, idx)),
                        y.dim()
                    )));
                }
            }
        }
        Ok(SMap { source, target, images })
    }

    pub(crate) fn new_unchecked(source: Arc<FinSSet>, target: Arc<FinSSet>, images: Vec<Vec<SimplexRef>>) -> Self {
        SMap { source, target, images }
    }

    pub fn identity(x: Arc<FinSSet>) -> Self {
        let images = (0..x.counts().len())
            .map(|d| x.ids(d).map(SimplexRef::nd).collect())
            .collect();
        SMap { source: x.clone(), target: x, images }
    }

    /// The map onto the degeneracies of one vertex.
    pub fn constant(source: Arc<FinSSet>, target: Arc<FinSSet>, vertex: NdId) -> Result<Self> {
        let v = SimplexRef::nd(vertex);
        let images = (0..source.counts().len())
            .map(|d| source.ids(d).map(|_| target.apply(&v, &vec![0; d + 1])).collect())
            .collect();
        SMap::new(source, target, images)
    }

    /// Builds a map from a function on non-degenerate source simplices.
    pub fn from_fn(
        source: Arc<FinSSet>,
        target: Arc<FinSSet>,
        mut f: impl FnMut(NdId) -> SimplexRef,
    ) -> Result<Self> {
        let images = (0..source.counts().len())
            .map(|d| source.ids(d).map(&mut f).collect())
            .collect();
        SMap::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<FinSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSSet> {
        &self.target
    }

    pub fn image(&self, id: NdId) -> &SimplexRef {
        &self.images[id.dim][id.idx]
    }

    pub fn images(&self) -> &[Vec<SimplexRef>] {
        &self.images
    }

    /// Value on an arbitrary simplex of the source.
    pub fn apply(&self, x: &SimplexRef) -> SimplexRef {
        let y = self.image(x.base);
        if x.word.is_empty() {
            y.clone()
        } else {
            self.target.apply(y, &x.word.surjection(x.dim()))
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SMap) -> Result<SMap> {
        if !same_object(first.target(), &self.source) {
            return Err(Error::Validation("maps are not composable".into()));
        }
        let images = first
            .images
            .iter()
            .map(|l| l.iter().map(|y| self.apply(y)).collect())
            .collect();
        Ok(SMap { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// Equality of underlying maps (same source, target and values).
    pub fn same_as(&self, other: &SMap) -> bool {
        same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
            && self.images == other.images
    }

    /// Every face-compatibility failure `f(d_i x) ≠ d_i f(x)`.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for id in self.source.all_ids() {
            if id.dim == 0 {
                continue;
            }
            let fx = self.image(id);
            for (i, face) in self.source.faces_of(id).iter().enumerate() {
                let lhs = self.apply(face);
                let rhs = self.target.face(fx, i);
                if lhs != rhs {
                    report.push(format!(
                        "map on {}: f(d{i}) = {} but d{i}(f) = {}",
                        self.source.name(id),
                        self.target.display(&lhs),
                        self.target.display(&rhs)
                    ));
                }
            }
        }
        report
    }

    /// True when the map is a dimensionwise bijection of non-degenerate
    /// simplices onto non-degenerate simplices.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.counts() != self.target.counts() {
            return false;
        }
        let mut seen = HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|y| y.word.is_empty() && seen.insert(y.base))
    }

    /// True when distinct non-degenerate simplices go to distinct
    /// non-degenerate simplices.
    pub fn is_monomorphism(&self) -> bool {
        let mut seen = HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|y| y.word.is_empty() && seen.insert(y.base))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut images: Vec<Vec<SimplexRef>> = self
            .target
            .counts()
            .iter()
            .map(|&c| vec![SimplexRef::nd(NdId::new(0, 0)); c])
            .collect();
        for id in self.source.all_ids() {
            let y = self.image(id).base;
            images[y.dim][y.idx] = SimplexRef::nd(id);
        }
        Some(SMap { source: self.target.clone(), target: self.source.clone(), images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard::{boundary, standard_simplex};

    #[test]
    fn identity_is_iso_and_valid() {
        let x = Arc::new(standard_simplex(2));
        let id = SMap::identity(x);
        assert!(id.validate().is_empty());
        assert!(id.is_isomorphism());
        assert!(id.inverse().unwrap().same_as(&id));
    }

    #[test]
    fn wrong_dimension_rejected() {
        let x = Arc::new(standard_simplex(1));
        let pt = Arc::new(standard_simplex(0));
        let v = SimplexRef::nd(NdId::new(0, 0));
        let bad = vec![vec![v.clone(), v.clone()], vec![v]];
        assert!(SMap::new(x, pt, bad).is_err());
    }

    #[test]
    fn incompatible_map_reported() {
        let x = Arc::new(standard_simplex(1));
        let y = Arc::new(boundary(2));
        // both endpoints to vertex 0 but edge to [0,1]
        let v0 = SimplexRef::nd(y.id("0").unwrap());
        let e = SimplexRef::nd(y.id("[0,1]").unwrap());
        let f = SMap::new(x, y, vec![vec![v0.clone(), v0], vec![e]]).unwrap();
        assert_eq!(f.validate().len(), 1);
    }
}
