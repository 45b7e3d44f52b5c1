//! Standard generators: simplices, boundaries, horns and a few small
//! non-complex simplicial sets.

use std::collections::{BTreeSet, HashMap};

use super::sset::{FinSSet, FinSSetBuilder, NdId, SimplexRef};
use super::word::{subsets, DegeneracyWord};

/// Name of an ordered vertex set: the vertex name itself, or `[a,b,…]`.
pub fn face_name(vertex_names: &[String], face: &[usize]) -> String {
    if face.len() == 1 {
        vertex_names[face[0]].clone()
    } else {
        let parts: Vec<&str> = face.iter().map(|&v| vertex_names[v].as_str()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Realizes a downward-closed family of increasing vertex-index lists as a
/// simplicial set, faces by vertex deletion. Within each dimension simplices
/// are ordered lexicographically by their index lists.
pub fn realize_faces(vertex_names: &[String], faces: &BTreeSet<Vec<usize>>) -> FinSSet {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = Vec::new();
    for f in faces {
        let d = f.len() - 1;
        while by_dim.len() <= d {
            by_dim.push(Vec::new());
        }
        by_dim[d].push(f);
    }
    for level in &mut by_dim {
        level.sort();
    }
    let mut index: HashMap<&[usize], NdId> = HashMap::new();
    let mut b = FinSSetBuilder::new();
    for (d, level) in by_dim.iter().enumerate() {
        for f in level {
            let fs = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut g = (*f).clone();
                        g.remove(i);
                        SimplexRef::nd(index[g.as_slice()])
                    })
                    .collect()
            };
            let id = b.add(face_name(vertex_names, f), d, fs);
            index.insert(f.as_slice(), id);
        }
    }
    b.build().expect("realization of a simplicial complex")
}

fn numbered(n: usize) -> Vec<String> {
    (0..=n).map(|i| i.to_string()).collect()
}

fn faces_where(n: usize, keep: impl Fn(&[usize]) -> bool) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for size in 1..=n + 1 {
        for s in subsets(n + 1, size) {
            if keep(&s) {
                out.insert(s);
            }
        }
    }
    out
}

/// `Δⁿ`, with `C(n+1, m+1)` non-degenerate `m`-simplices.
pub fn standard_simplex(n: usize) -> FinSSet {
    realize_faces(&numbered(n), &faces_where(n, |_| true))
}

/// `∂Δⁿ`. For `n = 0` this is empty.
pub fn boundary(n: usize) -> FinSSet {
    realize_faces(&numbered(n), &faces_where(n, |s| s.len() <= n))
}

/// `Λⁿ_k`: the union of the faces of `Δⁿ` containing vertex `k`, minus the top
/// simplex and its `k`-th face.
pub fn horn(n: usize, k: usize) -> FinSSet {
    assert!(k <= n, "horn index out of range");
    realize_faces(
        &numbered(n),
        &faces_where(n, |s| s.len() <= n && !(s.len() == n && !s.contains(&k))),
    )
}

/// One vertex `v` and one edge `e` with both faces `v`.
pub fn circle() -> FinSSet {
    let mut b = FinSSetBuilder::new();
    let v = b.vertex("v");
    b.add("e", 1, vec![SimplexRef::nd(v), SimplexRef::nd(v)]);
    b.build().expect("circle")
}

/// Wedge of two circles: one vertex, two loops.
pub fn wedge_of_circles() -> FinSSet {
    let mut b = FinSSetBuilder::new();
    let v = b.vertex("v");
    b.add("a", 1, vec![SimplexRef::nd(v), SimplexRef::nd(v)]);
    b.add("b", 1, vec![SimplexRef::nd(v), SimplexRef::nd(v)]);
    b.build().expect("wedge")
}

/// The 2-sphere as `Δ²/∂Δ²`: one vertex and one 2-simplex all of whose
/// faces are the degenerate edge.
pub fn sphere2() -> FinSSet {
    let mut b = FinSSetBuilder::new();
    let v = b.vertex("v");
    let sv = SimplexRef::new(DegeneracyWord::new(vec![0]).unwrap(), v);
    b.add("t", 2, vec![sv.clone(), sv.clone(), sv]);
    b.build().expect("sphere")
}
