use std::collections::HashMap;
use std::fmt;

use super::word::{codegeneracy, coface, epi_mono, is_monotone, words_between, DegeneracyWord};
use crate::error::{Error, Result};

/// Handle of a non-degenerate simplex: its dimension and position in that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NdId {
    pub dim: usize,
    pub idx: usize,
}

impl NdId {
    pub fn new(dim: usize, idx: usize) -> Self {
        NdId { dim, idx }
    }
}

/// A simplex in Eilenberg–Zilber normal form: a degeneracy word applied to a
/// non-degenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    pub base: NdId,
}

impl SimplexRef {
    pub fn nd(base: NdId) -> Self {
        SimplexRef { word: DegeneracyWord::identity(), base }
    }

    pub fn new(word: DegeneracyWord, base: NdId) -> Self {
        SimplexRef { word, base }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Packs the reference into one integer: base dimension, base index and
    /// the degeneracy indices as a bit set. Injective while dimensions stay
    /// below 24 and indices below 2³².
    pub fn code(&self) -> u64 {
        let bits = self.word.indices().iter().fold(0u64, |acc, &j| acc | (1 << j));
        ((self.base.dim as u64) << 56) | ((self.base.idx as u64) << 24) | bits
    }

    /// Inverse of [`SimplexRef::code`].
    pub fn from_code(code: u64) -> Self {
        let dim = (code >> 56) as usize;
        let idx = ((code >> 24) & 0xFFFF_FFFF) as usize;
        let indices: Vec<usize> = (0..24).rev().filter(|&j| code & (1 << j) != 0).collect();
        SimplexRef { word: DegeneracyWord::new(indices).expect("decreasing"), base: NdId::new(dim, idx) }
    }
}

/// One step of a raw operator expression, applied left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

pub(crate) type FaceTable = Vec<Vec<Vec<SimplexRef>>>;

/// Precomposes `x` with the monotone map `theta: [p] → [dim x]` and returns the
/// normal form of the result. Only faces of dimension below `dim x.base` are read.
pub(crate) fn apply_in(faces: &FaceTable, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
    let m = x.dim();
    debug_assert!(theta.iter().all(|&t| t <= m) && is_monotone(theta));
    let comp: Vec<usize> = if x.word.is_empty() {
        theta.to_vec()
    } else {
        let sigma = x.word.surjection(m);
        theta.iter().map(|&t| sigma[t]).collect()
    };
    let (rho, image) = epi_mono(&comp);
    let face = restrict_in(faces, x.base, &image);
    if rho.len() == image.len() {
        return face;
    }
    let tau = face.word.surjection(face.dim());
    let total: Vec<usize> = rho.iter().map(|&r| tau[r]).collect();
    SimplexRef::new(DegeneracyWord::from_surjection(&total), face.base)
}

/// The face of a non-degenerate simplex spanned by the strictly increasing `image`.
fn restrict_in(faces: &FaceTable, base: NdId, image: &[usize]) -> SimplexRef {
    let k = base.dim;
    if image.len() == k + 1 {
        return SimplexRef::nd(base);
    }
    let j = (0..=k).rev().find(|v| !image.contains(v)).expect("proper subset");
    let face = &faces[k][base.idx][j];
    let shifted: Vec<usize> = image.iter().map(|&v| if v < j { v } else { v - 1 }).collect();
    apply_in(faces, face, &shifted)
}

/// A finite simplicial set presented by its non-degenerate simplices.
///
/// `faces[n][i]` holds the `n + 1` faces `d_0 … d_n` of the `i`-th
/// non-degenerate `n`-simplex, each in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSSet {
    names: Vec<Vec<String>>,
    faces: FaceTable,
    lookup: HashMap<String, NdId>,
}

/// Incremental construction of a [`FinSSet`]; simplices must be added in
/// non-decreasing dimension.
#[derive(Clone, Debug, Default)]
pub struct FinSSetBuilder {
    names: Vec<Vec<String>>,
    faces: FaceTable,
}

impl FinSSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SimplexRef>) -> NdId {
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        self.names[dim].push(name.into());
        self.faces[dim].push(faces);
        NdId::new(dim, self.names[dim].len() - 1)
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> NdId {
        self.add(name, 0, Vec::new())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    /// Normal form of `x ∘ theta` using the simplices added so far.
    pub fn apply(&self, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
        apply_in(&self.faces, x, theta)
    }

    pub fn build(self) -> Result<FinSSet> {
        FinSSet::from_parts(self.names, self.faces)
    }
}

impl FinSSet {
    /// Assembles a simplicial set, checking that names are unique, that every
    /// face reference exists, has the right dimension and is in normal form.
    /// Simplicial identities are not checked here; see [`FinSSet::validate`].
    pub fn from_parts(mut names: Vec<Vec<String>>, mut faces: FaceTable) -> Result<Self> {
        while names.last().is_some_and(Vec::is_empty) {
            names.pop();
        }
        faces.truncate(names.len());
        while faces.len() < names.len() {
            faces.push(Vec::new());
        }
        let mut lookup = HashMap::new();
        for (dim, level) in names.iter().enumerate() {
            if faces[dim].len() != level.len() {
                return Err(Error::Malformed(format!("face table size mismatch in dimension {dim}")));
            }
            for (idx, name) in level.iter().enumerate() {
                if lookup.insert(name.clone(), NdId::new(dim, idx)).is_some() {
                    return Err(Error::Malformed(format!("duplicate simplex id {name:?}")));
                }
            }
        }
        for (dim, level) in faces.iter().enumerate() {
            for (idx, fs) in level.iter().enumerate() {
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if fs.len() != expected {
                    return Err(Error::Malformed(format!(
                        "simplex {:?} has {} faces, expected {expected}",
                        names[dim][idx],
                        fs.len()
                    )));
                }
                for f in fs {
                    let ok = f.dim() + 1 == dim
                        && f.base.dim < names.len()
                        && f.base.idx < names[f.base.dim].len()
                        && f.base.dim < dim;
                    if !ok {
                        return Err(Error::Malformed(format!(
                            "simplex {:?} has an invalid face reference {f:?}",
                            names[dim][idx]
                        )));
                    }
                }
            }
        }
        Ok(FinSSet { names, faces, lookup })
    }

    pub fn empty() -> Self {
        FinSSet::default()
    }

    /// Dimension of the highest non-degenerate simplex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.names.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.names
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn name(&self, id: NdId) -> &str {
        &self.names[id.dim][id.idx]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        self.names.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn id(&self, name: &str) -> Option<NdId> {
        self.lookup.get(name).copied()
    }

    pub fn ids(&self, dim: usize) -> impl Iterator<Item = NdId> {
        (0..self.count(dim)).map(move |i| NdId::new(dim, i))
    }

    /// All non-degenerate simplices in (dimension, index) order.
    pub fn all_ids(&self) -> impl Iterator<Item = NdId> + '_ {
        (0..self.names.len()).flat_map(move |d| self.ids(d))
    }

    /// Recorded faces of a non-degenerate simplex (empty for vertices).
    pub fn faces_of(&self, id: NdId) -> &[SimplexRef] {
        &self.faces[id.dim][id.idx]
    }

    /// Normal form of `x ∘ theta` for a monotone `theta: [p] → [dim x]`.
    pub fn apply(&self, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
        apply_in(&self.faces, x, theta)
    }

    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        self.apply(x, &coface(x.dim(), i))
    }

    pub fn degeneracy(&self, x: &SimplexRef, j: usize) -> SimplexRef {
        self.apply(x, &codegeneracy(x.dim(), j))
    }

    /// Evaluates a raw operator word on a simplex, rejecting out-of-range indices.
    pub fn normalize(&self, x: &SimplexRef, ops: &[Op]) -> Result<SimplexRef> {
        self.check_ref(x)?;
        let mut cur = x.clone();
        for op in ops {
            let n = cur.dim();
            cur = match *op {
                Op::Face(i) => {
                    if n == 0 || i > n {
                        return Err(Error::Malformed(format!("d{i} applied to a {n}-simplex")));
                    }
                    self.face(&cur, i)
                }
                Op::Degeneracy(j) => {
                    if j > n {
                        return Err(Error::Malformed(format!("s{j} applied to a {n}-simplex")));
                    }
                    self.degeneracy(&cur, j)
                }
            };
        }
        Ok(cur)
    }

    pub fn check_ref(&self, x: &SimplexRef) -> Result<()> {
        if x.base.dim >= self.names.len() || x.base.idx >= self.names[x.base.dim].len() {
            return Err(Error::Malformed(format!("unknown simplex {:?}", x.base)));
        }
        if x.word.indices().first().is_some_and(|&j| j >= x.dim()) {
            return Err(Error::Malformed(format!("degeneracy word {} out of range", x.word)));
        }
        Ok(())
    }

    /// The `j`-th vertex of a simplex.
    pub fn vertex(&self, x: &SimplexRef, j: usize) -> NdId {
        self.apply(x, &[j]).base
    }

    pub fn vertices(&self, x: &SimplexRef) -> Vec<NdId> {
        (0..=x.dim()).map(|j| self.vertex(x, j)).collect()
    }

    /// Every `m`-simplex, degenerate ones included: grouped by the dimension
    /// of the base, then base index, then degeneracy word.
    pub fn all_simplices(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for k in 0..=m.min(self.names.len().saturating_sub(1)) {
            if k >= self.names.len() {
                break;
            }
            let words = words_between(m, k);
            for id in self.ids(k) {
                for w in &words {
                    out.push(SimplexRef::new(w.clone(), id));
                }
            }
        }
        out
    }

    /// Human-readable rendering such as `s1s0(v)`.
    pub fn display(&self, x: &SimplexRef) -> String {
        if x.word.is_empty() {
            self.name(x.base).to_string()
        } else {
            format!("{}({})", x.word, self.name(x.base))
        }
    }

    /// Every violated simplicial identity `d_i d_j = d_{j-1} d_i` (`i < j`).
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for dim in 2..self.names.len() {
            for id in self.ids(dim) {
                let fs = self.faces_of(id);
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(&fs[j], i);
                        let rhs = self.face(&fs[i], j - 1);
                        if lhs != rhs {
                            report.push(format!(
                                "simplex {}: d{i} d{j} = {} but d{} d{i} = {}",
                                self.name(id),
                                self.display(&lhs),
                                j - 1,
                                self.display(&rhs)
                            ));
                        }
                    }
                }
            }
        }
        report
    }

    /// The same simplicial set with new names for its non-degenerate simplices.
    pub fn renamed(&self, names: Vec<Vec<String>>) -> Result<FinSSet> {
        if names.iter().map(Vec::len).ne(self.counts()) {
            return Err(Error::Malformed("renaming has the wrong shape".into()));
        }
        FinSSet::from_parts(names, self.faces.clone())
    }

    /// Restriction to the non-degenerate simplices of dimension `≤ cap`.
    pub fn skeleton(&self, cap: usize) -> FinSSet {
        let keep = (cap + 1).min(self.names.len());
        FinSSet::from_parts(self.names[..keep].to_vec(), self.faces[..keep].to_vec())
            .expect("skeleton of a valid simplicial set")
    }
}

impl fmt::Display for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSSet{:?}", self.counts())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard::{circle, standard_simplex};

    #[test]
    fn face_of_degenerate_vertex_is_identity() {
        let x = standard_simplex(0);
        let v = SimplexRef::nd(NdId::new(0, 0));
        let r = x.normalize(&v, &[Op::Degeneracy(0), Op::Face(1)]).unwrap();
        assert_eq!(r, v);
    }

    #[test]
    fn double_degeneracy_rewrites() {
        let x = standard_simplex(0);
        let v = SimplexRef::nd(NdId::new(0, 0));
        let r = x.normalize(&v, &[Op::Degeneracy(0), Op::Degeneracy(0)]).unwrap();
        assert_eq!(r.word.indices(), &[1, 0]);
    }

    #[test]
    fn out_of_range_is_malformed() {
        let x = standard_simplex(1);
        let e = SimplexRef::nd(NdId::new(1, 0));
        assert!(x.normalize(&e, &[Op::Face(2)]).is_err());
        assert!(x.normalize(&e, &[Op::Degeneracy(3)]).is_err());
        let v = SimplexRef::nd(NdId::new(0, 0));
        assert!(x.normalize(&v, &[Op::Face(0)]).is_err());
    }

    #[test]
    fn edge_face_lookup() {
        let x = standard_simplex(1);
        let e = SimplexRef::nd(x.id("[0,1]").unwrap());
        let d0 = x.normalize(&e, &[Op::Face(0)]).unwrap();
        assert_eq!(x.name(d0.base), "1");
        assert!(d0.word.is_empty());
    }

    #[test]
    fn circle_faces_degenerate_correctly() {
        let c = circle();
        let e = SimplexRef::nd(c.id("e").unwrap());
        let s = c.degeneracy(&e, 0);
        assert_eq!(c.face(&s, 0), e);
        assert_eq!(c.face(&s, 1), e);
        let s1 = c.degeneracy(&e, 1);
        assert_eq!(c.face(&s1, 2), e);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut b = FinSSetBuilder::new();
        b.vertex("a");
        b.vertex("a");
        assert!(b.build().is_err());
    }
}
