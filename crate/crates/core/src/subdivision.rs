//! Barycentric subdivision of simplicial sets, the comparison map
//! `π: sd X → BNX` and the last-vertex maps `γ: sd X → X`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::max_simplices;
use crate::complexes::{complex_map, face_poset, order_complex, ComplexRealization, SdComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::nerve::PosetNerve;
use crate::simplex::word::{coface, is_monotone};
use crate::simplex::{colimit_of_graph, FinSSet, NdId, SMap, SimplexRef};

/// `sd(K)` for a complex: its order complex.
pub fn sd_complex(k: &SimplicialComplex) -> SimplicialComplex {
    order_complex(k)
}

/// `sd Δⁿ` with its cells (faces of `Δⁿ`) and realization.
#[derive(Clone, Debug)]
pub struct Piece {
    pub sd: SdComplex,
    pub real: ComplexRealization,
    position: HashMap<Vec<usize>, usize>,
}

impl Piece {
    pub fn new(n: usize) -> Self {
        let sd = SimplicialComplex::simplex(n).subdivide();
        let real = sd.complex.realize();
        let position = sd.cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Piece { sd, real, position }
    }

    /// The simplex of a weakly increasing chain of faces of `Δⁿ`.
    pub fn chain_simplex(&self, chain: &[Vec<usize>]) -> SimplexRef {
        let cells: Vec<usize> = chain.iter().map(|c| self.position[c]).collect();
        self.real.simplex(&cells).expect("chain of faces")
    }

    /// The chain of faces of a non-degenerate simplex.
    pub fn chain(&self, id: NdId) -> Vec<Vec<usize>> {
        self.real.vertex_list(id).iter().map(|&v| self.sd.cells[v].clone()).collect()
    }

    /// `sd(θ)` for a monotone `θ: [m] → [n]`, with `self` the piece of `m`.
    pub fn map_along(&self, target: &Piece, theta: &[usize]) -> Result<SMap> {
        let vmap = self.sd.induced_vertex_map(&target.sd, theta)?;
        complex_map(&self.real, &target.real, &vmap)
    }
}

/// Number of chains of faces of `Δⁿ` that end at the top face.
pub fn interior_chain_count(n: usize) -> usize {
    // chains ending at a k-face, by k
    let mut ending = vec![1usize; n + 1];
    for k in 1..=n {
        let mut total = 1;
        for j in 0..k {
            total += binomial(k + 1, j + 1) * ending[j];
        }
        ending[k] = total;
    }
    ending[n]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `sd X` built as the colimit of copies of `sd Δⁿ`, one per non-degenerate
/// simplex, glued along the face relations of `X`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: Arc<FinSSet>,
    pub space: Arc<FinSSet>,
    pieces: Vec<Arc<Piece>>,
    legs: HashMap<NdId, SMap>,
    reps: Vec<Vec<(NdId, Vec<Vec<usize>>)>>,
}

impl Subdivision {
    pub fn new(x: Arc<FinSSet>) -> Result<Self> {
        let top = x.dim().unwrap_or(0);
        let pieces: Vec<Arc<Piece>> = (0..=top).map(|n| Arc::new(Piece::new(n))).collect();
        Self::with_pieces(x, &pieces)
    }

    fn with_pieces(x: Arc<FinSSet>, all_pieces: &[Arc<Piece>]) -> Result<Self> {
        let cap = max_simplices();
        let expected: usize = x.all_ids().map(|id| interior_chain_count(id.dim)).sum();
        if expected > cap {
            return Err(Error::Budget(format!("subdivision would have {expected} simplices, cap is {cap}")));
        }
        let top = x.dim().map_or(0, |d| d + 1);
        let pieces: Vec<Arc<Piece>> = all_pieces[..top.min(all_pieces.len())].to_vec();
        let ids: Vec<NdId> = x.all_ids().collect();
        let object_of: HashMap<NdId, usize> = ids.iter().enumerate().map(|(o, &id)| (id, o)).collect();
        let mut labels: Vec<String> = ids.iter().map(|&id| x.name(id).to_string()).collect();
        let mut objects: Vec<Arc<FinSSet>> = ids.iter().map(|id| pieces[id.dim].real.space.clone()).collect();
        let mut arrows = Vec::new();
        for &id in &ids {
            let n = id.dim;
            for (i, f) in x.faces_of(id).iter().enumerate() {
                let inclusion = pieces[n - 1].map_along(&pieces[n], &coface(n, i))?;
                if f.word.is_empty() {
                    arrows.push((object_of[&f.base], object_of[&id], inclusion));
                } else {
                    let collapse = pieces[n - 1].map_along(&pieces[f.base.dim], &f.word.surjection(n - 1))?;
                    let r = objects.len();
                    labels.push(String::new());
                    objects.push(pieces[n - 1].real.space.clone());
                    arrows.push((r, object_of[&id], inclusion));
                    arrows.push((r, object_of[&f.base], collapse));
                }
            }
        }
        let colim = colimit_of_graph(&labels, &objects, &arrows)?;
        let reps: Vec<Vec<(NdId, Vec<Vec<usize>>)>> = colim
            .representatives
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&(o, s)| {
                        let xid = ids[o];
                        (xid, pieces[xid.dim].chain(s))
                    })
                    .collect()
            })
            .collect();
        // name each simplex by the chain of simplices of X it runs through
        let mut seen: HashMap<String, usize> = HashMap::new();
        let names: Vec<Vec<String>> = reps
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(xid, chain)| {
                        let xr = SimplexRef::nd(*xid);
                        let parts: Vec<&str> = chain.iter().map(|s| x.name(x.apply(&xr, s).base)).collect();
                        let name = parts.join("<");
                        let k = seen.entry(name.clone()).or_insert(0);
                        *k += 1;
                        if *k == 1 {
                            name
                        } else {
                            format!("{name}#{}", *k - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let space = Arc::new(colim.space.renamed(names)?);
        let legs = ids
            .iter()
            .enumerate()
            .map(|(o, &id)| {
                let leg = &colim.cocone[o];
                (id, SMap::new(leg.source().clone(), space.clone(), leg.images().to_vec()).expect("cocone leg"))
            })
            .collect();
        Ok(Subdivision { base: x, space, pieces, legs, reps })
    }

    /// The representative `(x, S₀ ⊂ … ⊂ S_k)` of a non-degenerate simplex.
    pub fn representative(&self, id: NdId) -> (NdId, &[Vec<usize>]) {
        let (x, c) = &self.reps[id.dim][id.idx];
        (*x, c)
    }

    /// The simplex of `sd X` given by a weakly increasing chain of faces of
    /// the non-degenerate simplex `x`.
    pub fn simplex_in(&self, x: NdId, chain: &[Vec<usize>]) -> SimplexRef {
        let s = self.pieces[x.dim].chain_simplex(chain);
        self.legs[&x].apply(&s)
    }

    /// `γ: sd X → X`, sending a chain to the face spanned by its last vertices.
    pub fn last_vertex(&self) -> SMap {
        let x = &self.base;
        let images = self
            .reps
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(xid, chain)| {
                        let lasts: Vec<usize> = chain.iter().map(|s| *s.last().unwrap()).collect();
                        x.apply(&SimplexRef::nd(*xid), &lasts)
                    })
                    .collect()
            })
            .collect();
        SMap::new(self.space.clone(), x.clone(), images).expect("last vertex map")
    }

    /// `π: sd X → BNX`, sending a chain to the chain of simplices of `X` it
    /// generates.
    pub fn comparison(&self) -> Result<(SMap, PosetNerve)> {
        let x = &self.base;
        let fp = face_poset(x);
        let bn = PosetNerve::new(&fp.poset)?;
        let images = self
            .reps
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(xid, chain)| {
                        let xr = SimplexRef::nd(*xid);
                        let seq: Vec<usize> = chain.iter().map(|s| fp.position(x.apply(&xr, s).base)).collect();
                        bn.chain_simplex(&seq).expect("generated simplices form a chain")
                    })
                    .collect()
            })
            .collect();
        Ok((SMap::new(self.space.clone(), bn.space.clone(), images)?, bn))
    }

    /// `sd(f): sd X → sd Y` for `f: X → Y`, with `self` the subdivision of `X`.
    pub fn map_to(&self, target: &Subdivision, f: &SMap) -> Result<SMap> {
        if f.source().as_ref() != self.base.as_ref() || f.target().as_ref() != target.base.as_ref() {
            return Err(Error::Validation("map does not match the subdivisions".into()));
        }
        let images = self
            .reps
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(xid, chain)| {
                        let fx = f.image(*xid);
                        let sigma = fx.word.surjection(xid.dim);
                        let img: Vec<Vec<usize>> = chain
                            .iter()
                            .map(|s| {
                                let mut t: Vec<usize> = s.iter().map(|&v| sigma[v]).collect();
                                t.dedup();
                                t
                            })
                            .collect();
                        target.simplex_in(fx.base, &img)
                    })
                    .collect()
            })
            .collect();
        SMap::new(self.space.clone(), target.space.clone(), images)
    }
}

/// `sd X` alone.
pub fn sd_sset(x: &FinSSet) -> Result<FinSSet> {
    Ok(Subdivision::new(Arc::new(x.clone()))?.space.as_ref().clone())
}

/// `π: sd K → BNK` for a complex, and whether it is an isomorphism.
pub fn pi_comparison(k: &SimplicialComplex) -> Result<(SMap, bool)> {
    let sd = Subdivision::new(Arc::new(k.to_sset()))?;
    let (pi, _) = sd.comparison()?;
    let iso = pi.is_isomorphism();
    Ok((pi, iso))
}

/// `sd¹ X … sd^k X` with the last-vertex maps between consecutive levels.
#[derive(Clone, Debug)]
pub struct SubdivisionTower {
    pub base: Arc<FinSSet>,
    pub levels: Vec<Subdivision>,
    pub gammas: Vec<SMap>,
}

impl SubdivisionTower {
    pub fn new(x: Arc<FinSSet>, k: usize) -> Result<Self> {
        let top = x.dim().unwrap_or(0);
        let pieces: Vec<Arc<Piece>> = (0..=top).map(|n| Arc::new(Piece::new(n))).collect();
        let mut levels: Vec<Subdivision> = Vec::new();
        let mut gammas = Vec::new();
        for _ in 0..k {
            let below = levels.last().map_or(x.clone(), |l| l.space.clone());
            let sd = Subdivision::with_pieces(below, &pieces)?;
            gammas.push(sd.last_vertex());
            levels.push(sd);
        }
        Ok(SubdivisionTower { base: x, levels, gammas })
    }

    pub fn top(&self) -> &Arc<FinSSet> {
        self.levels.last().map_or(&self.base, |l| &l.space)
    }

    /// `γ^k: sd^k X → X`.
    pub fn gamma_composite(&self) -> SMap {
        let mut g = SMap::identity(self.top().clone());
        for gamma in self.gammas.iter().rev() {
            g = gamma.after(&g).expect("tower maps compose");
        }
        g
    }

    /// `sd^k(f)` for `f: X → Y`, given the tower of `Y` of the same height.
    pub fn map_to(&self, target: &SubdivisionTower, f: &SMap) -> Result<SMap> {
        let mut g = f.clone();
        for (a, b) in self.levels.iter().zip(&target.levels) {
            g = a.map_to(b, &g)?;
        }
        Ok(g)
    }
}

/// `sd(θ)` for a monotone `θ: [m] → [n]`.
pub fn sd_of_monotone(m: usize, n: usize, theta: &[usize]) -> Result<SMap> {
    if theta.len() != m + 1 || !is_monotone(theta) || theta.iter().any(|&t| t > n) {
        return Err(Error::Malformed("not a monotone map".into()));
    }
    Piece::new(m).map_along(&Piece::new(n), theta)
}
