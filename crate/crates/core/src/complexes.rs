//! Finite simplicial complexes with totally ordered vertices, their
//! realizations as simplicial sets, face posets and order complexes.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::category::Poset;
use crate::error::{Error, Result};
use crate::simplex::standard::{face_name, realize_faces};
use crate::simplex::word::subsets;
use crate::simplex::{DegeneracyWord, FinSSet, NdId, SMap, SimplexRef};

/// A downward-closed family of vertex sets. Faces are stored as strictly
/// increasing lists of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`, given by vertex names. Every
    /// listed vertex becomes a face even when no facet mentions it.
    pub fn new(vertices: Vec<String>, facets: &[Vec<String>]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Validation("duplicate vertex".into()));
        }
        let mut lists = Vec::new();
        for f in facets {
            let mut l = Vec::new();
            for v in f {
                l.push(*index.get(v.as_str()).ok_or_else(|| Error::Validation(format!("unknown vertex {v}")))?);
            }
            lists.push(l);
        }
        Self::from_index_faces(vertices, lists)
    }

    /// Builds the complex generated by faces given as vertex-index lists.
    pub fn from_index_faces(vertices: Vec<String>, generators: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut faces = BTreeSet::new();
        for v in 0..n {
            faces.insert(vec![v]);
        }
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(Error::Validation("empty facet".into()));
            }
            if g.iter().any(|&v| v >= n) {
                return Err(Error::Validation("facet refers to an unknown vertex".into()));
            }
            if faces.contains(&g) {
                continue;
            }
            for size in 1..=g.len() {
                for s in subsets(g.len(), size) {
                    faces.insert(s.iter().map(|&i| g[i]).collect());
                }
            }
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    pub fn point() -> Self {
        Self::simplex(0)
    }

    /// The full simplex on vertices `0 … n`.
    pub fn simplex(n: usize) -> Self {
        Self::from_index_faces(numbered(n), [(0..=n).collect()]).expect("simplex")
    }

    pub fn boundary(n: usize) -> Self {
        let facets = (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect::<Vec<_>>()).filter(|f| !f.is_empty());
        if n == 0 {
            return SimplicialComplex { vertices: Vec::new(), faces: BTreeSet::new() };
        }
        Self::from_index_faces(numbered(n), facets).expect("boundary")
    }

    pub fn horn(n: usize, k: usize) -> Self {
        assert!(k <= n && n >= 1, "horn index out of range");
        let facets = (0..=n).filter(|&i| i != k).map(|i| (0..=n).filter(|&v| v != i).collect::<Vec<_>>());
        Self::from_index_faces(numbered(n), facets).expect("horn")
    }

    /// The `n`-gon with vertices `0 … n−1`.
    pub fn polygon(n: usize) -> Self {
        assert!(n >= 3);
        Self::from_index_faces(numbered(n - 1), (0..n).map(|i| vec![i, (i + 1) % n])).expect("polygon")
    }

    /// `Δⁿ × Δ¹` as the order complex of the poset `[n] × [1]`; vertex
    /// `(i,e)` has index `2i + e`.
    pub fn prism(n: usize) -> Self {
        let vertices = (0..=n).flat_map(|i| (0..2).map(move |e| format!("({i},{e})"))).collect();
        let facets = (0..=n).map(|turn| {
            let mut f: Vec<usize> = (0..=turn).map(|i| 2 * i).collect();
            f.extend((turn..=n).map(|i| 2 * i + 1));
            f
        });
        Self::from_index_faces(vertices, facets).expect("prism")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    /// Maximal faces, in lexicographic order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.faces {
            for i in 0..f.len() {
                if f.len() > 1 {
                    let mut g = f.clone();
                    g.remove(i);
                    covered.insert(g);
                }
            }
        }
        self.faces.iter().filter(|f| !covered.contains(*f)).cloned().collect()
    }

    /// Faces grouped by dimension, lexicographic within a dimension.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
        for f in &self.faces {
            let d = f.len() - 1;
            while out.len() <= d {
                out.push(Vec::new());
            }
            out[d].push(f.clone());
        }
        out
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    pub fn face_name(&self, face: &[usize]) -> String {
        face_name(&self.vertices, face)
    }

    pub fn to_sset(&self) -> FinSSet {
        realize_faces(&self.vertices, &self.faces)
    }

    pub fn realize(&self) -> ComplexRealization {
        ComplexRealization::new(Arc::new(self.clone()))
    }

    /// The subcomplex of faces satisfying `keep`, closed downward.
    pub fn restrict(&self, keep: impl Fn(&[usize]) -> bool) -> SimplicialComplex {
        let kept: BTreeSet<Vec<usize>> = self.faces.iter().filter(|f| keep(f)).cloned().collect();
        let mut faces = BTreeSet::new();
        for f in &kept {
            for size in 1..=f.len() {
                for s in subsets(f.len(), size) {
                    faces.insert(s.iter().map(|&i| f[i]).collect());
                }
            }
        }
        SimplicialComplex { vertices: self.vertices.clone(), faces }
    }

    /// Barycentric subdivision: the order complex of the face poset.
    pub fn subdivide(&self) -> SdComplex {
        let cells: Vec<Vec<usize>> = self.faces_by_dim().into_iter().flatten().collect();
        let position: HashMap<&[usize], usize> = cells.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        // covers[i]: cells having cell i as a codimension-one face
        let mut covers: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for (i, c) in cells.iter().enumerate() {
            if c.len() > 1 {
                for j in 0..c.len() {
                    let mut g = c.clone();
                    g.remove(j);
                    covers[position[g.as_slice()]].push(i);
                }
            }
        }
        // above[i]: every cell strictly containing cell i, in index order
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for i in (0..cells.len()).rev() {
            let mut all: BTreeSet<usize> = BTreeSet::new();
            for &c in &covers[i] {
                all.insert(c);
                all.extend(above[c].iter().copied());
            }
            above[i] = all.into_iter().collect();
        }
        let mut faces = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..cells.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for &j in &above[last] {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
            faces.insert(chain);
        }
        let vertices = cells.iter().map(|c| self.face_name(c)).collect();
        SdComplex { complex: SimplicialComplex { vertices, faces }, cells }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..=n).map(|i| i.to_string()).collect()
}

/// A subdivided complex: vertex `i` is the barycenter of `cells[i]`, a face of
/// the original complex. Cells are ordered by dimension, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdComplex {
    pub complex: SimplicialComplex,
    pub cells: Vec<Vec<usize>>,
}

impl SdComplex {
    /// The last-vertex map on vertices: a cell goes to its largest vertex.
    pub fn last_vertex(&self) -> Vec<usize> {
        self.cells.iter().map(|c| *c.last().expect("non-empty cell")).collect()
    }

    /// Chains whose cells all lie in `sub`, a subcomplex of the original.
    pub fn restrict(&self, sub: &SimplicialComplex) -> SimplicialComplex {
        let inside: Vec<bool> = self.cells.iter().map(|c| sub.contains(c)).collect();
        let faces = self.complex.faces.iter().filter(|f| f.iter().all(|&v| inside[v])).cloned().collect();
        SimplicialComplex { vertices: self.complex.vertices.clone(), faces }
    }

    /// Vertex map induced on subdivisions by a vertex map of the originals
    /// that sends faces to faces.
    pub fn induced_vertex_map(&self, target: &SdComplex, vmap: &[usize]) -> Result<Vec<usize>> {
        let position: HashMap<&[usize], usize> = target.cells.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        self.cells
            .iter()
            .map(|c| {
                let mut img: Vec<usize> = c.iter().map(|&v| vmap[v]).collect();
                img.sort_unstable();
                img.dedup();
                position
                    .get(img.as_slice())
                    .copied()
                    .ok_or_else(|| Error::Validation("vertex map does not send faces to faces".into()))
            })
            .collect()
    }
}

/// The order complex of `K`: vertices are the faces of `K` ordered by
/// dimension then lexicographically, simplices are chains under inclusion.
pub fn order_complex(k: &SimplicialComplex) -> SimplicialComplex {
    k.subdivide().complex
}

/// The simplicial set of a complex together with the vertex lists of its
/// non-degenerate simplices.
#[derive(Clone, Debug)]
pub struct ComplexRealization {
    pub complex: Arc<SimplicialComplex>,
    pub space: Arc<FinSSet>,
    index: HashMap<Vec<usize>, NdId>,
    lists: Vec<Vec<Vec<usize>>>,
}

impl ComplexRealization {
    pub fn new(complex: Arc<SimplicialComplex>) -> Self {
        let space = Arc::new(complex.to_sset());
        let lists = complex.faces_by_dim();
        let mut index = HashMap::new();
        for (d, level) in lists.iter().enumerate() {
            for (i, f) in level.iter().enumerate() {
                index.insert(f.clone(), NdId::new(d, i));
            }
        }
        ComplexRealization { complex, space, index, lists }
    }

    pub fn vertex_list(&self, id: NdId) -> &[usize] {
        &self.lists[id.dim][id.idx]
    }

    pub fn id_of(&self, face: &[usize]) -> Option<NdId> {
        self.index.get(face).copied()
    }

    /// The simplex with the given weakly increasing vertex sequence.
    pub fn simplex(&self, vertices: &[usize]) -> Option<SimplexRef> {
        if vertices.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut base = vertices.to_vec();
        base.dedup();
        let id = self.id_of(&base)?;
        let mut rank = 0;
        let values: Vec<usize> = vertices
            .iter()
            .enumerate()
            .map(|(p, _)| {
                if p > 0 && vertices[p] != vertices[p - 1] {
                    rank += 1;
                }
                rank
            })
            .collect();
        Some(SimplexRef::new(DegeneracyWord::from_surjection(&values), id))
    }

    /// Vertex sequence of an arbitrary simplex.
    pub fn vertices_of(&self, x: &SimplexRef) -> Vec<usize> {
        let base = self.vertex_list(x.base);
        if x.word.is_empty() {
            base.to_vec()
        } else {
            x.word.surjection(x.dim()).iter().map(|&j| base[j]).collect()
        }
    }
}

/// The simplicial map between complex realizations induced by a vertex map
/// that is weakly increasing on every face and sends faces to faces.
pub fn complex_map(source: &ComplexRealization, target: &ComplexRealization, vmap: &[usize]) -> Result<SMap> {
    if vmap.len() != source.complex.vertices().len() {
        return Err(Error::Validation("vertex map has the wrong length".into()));
    }
    SMap::new(
        source.space.clone(),
        target.space.clone(),
        (0..source.lists.len())
            .map(|d| {
                source.lists[d]
                    .iter()
                    .map(|f| {
                        let img: Vec<usize> = f.iter().map(|&v| vmap[v]).collect();
                        target.simplex(&img).ok_or_else(|| {
                            Error::Validation(format!(
                                "vertex map does not send {} to a face in order",
                                source.complex.face_name(f)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Recovers the complex presented by a simplicial set whose non-degenerate
/// simplices have strictly increasing, pairwise distinct vertex lists
/// (vertices ordered by index). Returns `None` otherwise.
pub fn complex_of(x: &FinSSet) -> Option<SimplicialComplex> {
    let vertices: Vec<String> = x.names(0).to_vec();
    let mut faces = BTreeSet::new();
    for id in x.all_ids() {
        let vs: Vec<usize> = x.vertices(&SimplexRef::nd(id)).iter().map(|v| v.idx).collect();
        if vs.windows(2).any(|w| w[0] >= w[1]) || !faces.insert(vs) {
            return None;
        }
    }
    let k = SimplicialComplex { vertices, faces };
    let closed = k.faces.iter().all(|f| {
        f.len() == 1
            || (0..f.len()).all(|i| {
                let mut g = f.clone();
                g.remove(i);
                k.faces.contains(&g)
            })
    });
    closed.then_some(k)
}

/// The poset of non-degenerate simplices of `X`, element `i` being `ids[i]`
/// (in dimension, index order) and named as in `X`.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: Poset,
    pub ids: Vec<NdId>,
    position: HashMap<NdId, usize>,
}

impl FacePoset {
    pub fn position(&self, id: NdId) -> usize {
        self.position[&id]
    }
}

/// `σ ≤ τ` iff `σ` lies in the closure of `τ` under iterated faces.
pub fn face_poset(x: &FinSSet) -> FacePoset {
    let ids: Vec<NdId> = x.all_ids().collect();
    let position: HashMap<NdId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let n = ids.len();
    let mut leq = vec![vec![false; n]; n];
    // ids are sorted by dimension, so closures of faces are known first
    for (t, &id) in ids.iter().enumerate() {
        leq[t][t] = true;
        for f in x.faces_of(id) {
            let s = position[&f.base];
            for a in 0..n {
                if leq[a][s] {
                    leq[a][t] = true;
                }
            }
        }
    }
    let elements = ids.iter().map(|&id| x.name(id).to_string()).collect();
    FacePoset { poset: Poset::from_matrix_unchecked(elements, leq), ids, position }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard::standard_simplex;

    #[test]
    fn realization_of_full_simplex() {
        assert_eq!(SimplicialComplex::simplex(2).to_sset(), standard_simplex(2));
        assert_eq!(SimplicialComplex::boundary(2).to_sset().counts(), vec![3, 3]);
        assert_eq!(SimplicialComplex::horn(2, 1).counts(), vec![3, 2]);
    }

    #[test]
    fn order_complex_counts() {
        assert_eq!(order_complex(&SimplicialComplex::simplex(1)).counts(), vec![3, 2]);
        assert_eq!(order_complex(&SimplicialComplex::simplex(2)).counts(), vec![7, 12, 6]);
        assert_eq!(order_complex(&SimplicialComplex::point()).counts(), vec![1]);
        assert_eq!(order_complex(&SimplicialComplex::boundary(2)).counts(), vec![6, 6]);
    }

    #[test]
    fn prism_is_product() {
        let p = SimplicialComplex::prism(2);
        assert_eq!(p.counts(), vec![6, 12, 10, 3]);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn face_poset_of_interval_and_circle() {
        let fp = face_poset(&standard_simplex(1));
        assert_eq!(fp.poset.len(), 3);
        assert!(fp.poset.lt(0, 2) && fp.poset.lt(1, 2) && !fp.poset.leq(0, 1));
        let c = face_poset(&crate::simplex::circle());
        assert_eq!(c.poset.len(), 2);
        assert!(c.poset.lt(0, 1));
    }

    #[test]
    fn weakly_increasing_lists_normalize() {
        let r = SimplicialComplex::simplex(1).realize();
        let x = r.simplex(&[0, 0, 1]).unwrap();
        assert_eq!(x.word.indices(), &[0]);
        assert_eq!(r.vertices_of(&x), vec![0, 0, 1]);
        assert!(r.simplex(&[1, 0]).is_none());
    }

    #[test]
    fn complex_recovered_from_realization() {
        let k = SimplicialComplex::polygon(6);
        assert_eq!(complex_of(&k.to_sset()), Some(k));
        assert!(complex_of(&crate::simplex::circle()).is_none());
    }
}
