//! Maps out of simplicial complexes as functors on their face posets.
//!
//! A map `f: L → X` from a complex is determined by the simplices `f(σ)` for
//! non-degenerate `σ`, compatibly with the face order. Conversely, compatible
//! data glue to a unique map.

use std::sync::Arc;

use crate::complexes::{complex_of, face_poset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::nerve::PosetNerve;
use crate::simplex::word::subsets;
use crate::simplex::{DegeneracyWord, FinSSet, NdId, SMap, SimplexRef};

/// A simplex of `target` for every non-degenerate simplex of a complex `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub source: Arc<FinSSet>,
    pub target: Arc<FinSSet>,
    pub values: Vec<Vec<SimplexRef>>,
}

impl FunctorData {
    pub fn value(&self, id: NdId) -> &SimplexRef {
        &self.values[id.dim][id.idx]
    }
}

fn require_complex(x: &FinSSet) -> Result<SimplicialComplex> {
    complex_of(x).ok_or_else(|| Error::Validation("source is not the realization of a simplicial complex".into()))
}

/// Restriction of a map out of a complex to its face poset.
pub fn functor_of_map(f: &SMap) -> Result<FunctorData> {
    require_complex(f.source())?;
    Ok(FunctorData { source: f.source().clone(), target: f.target().clone(), values: f.images().to_vec() })
}

/// Glues functor data to a map, checking that `F(σ)` is the matching face
/// of `F(τ)` for every `σ ≤ τ`.
pub fn realize_functor(data: &FunctorData) -> Result<SMap> {
    require_complex(&data.source)?;
    let l = &data.source;
    let x = &data.target;
    for id in l.all_ids() {
        let fx = data.value(id);
        x.check_ref(fx)?;
        if fx.dim() != id.dim {
            return Err(Error::Malformed(format!("value at {} has the wrong dimension", l.name(id))));
        }
        let tau = SimplexRef::nd(id);
        for size in 1..=id.dim {
            for s in subsets(id.dim + 1, size) {
                let sigma = l.apply(&tau, &s);
                let expected = x.apply(fx, &s);
                if data.value(sigma.base) != &expected {
                    return Err(Error::Coherence { sigma: l.name(sigma.base).to_string(), tau: l.name(id).to_string() });
                }
            }
        }
    }
    SMap::new(l.clone(), x.clone(), data.values.clone())
}

/// The monotone map `g_*` of face posets induced by a map of complex
/// realizations, with the codegeneracy witnesses `s_σ` of the unique
/// factorizations `g(σ) = s_σ^*(g_*(σ))`.
#[derive(Clone, Debug)]
pub struct PosetMap {
    pub source: Arc<FinSSet>,
    pub target: Arc<FinSSet>,
    pub values: Vec<Vec<NdId>>,
    pub witnesses: Vec<Vec<DegeneracyWord>>,
}

impl PosetMap {
    pub fn value(&self, id: NdId) -> NdId {
        self.values[id.dim][id.idx]
    }

    pub fn witness(&self, id: NdId) -> &DegeneracyWord {
        &self.witnesses[id.dim][id.idx]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PosetMap) -> PosetMap {
        let values = first.values.iter().map(|l| l.iter().map(|&v| self.value(v)).collect()).collect();
        let witnesses = first
            .values
            .iter()
            .enumerate()
            .map(|(d, l)| {
                l.iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        // compose the two codegeneracies
                        let outer = first.witness(NdId::new(d, i)).surjection(d);
                        let inner = self.witness(v).surjection(v.dim);
                        let total: Vec<usize> = outer.iter().map(|&t| inner[t]).collect();
                        DegeneracyWord::from_surjection(&total)
                    })
                    .collect()
            })
            .collect();
        PosetMap { source: first.source.clone(), target: self.target.clone(), values, witnesses }
    }

    /// Checks `σ ≤ τ ⇒ g_*(σ) ≤ g_*(τ)` over every pair.
    pub fn is_monotone(&self) -> bool {
        let s = face_poset(&self.source);
        let t = face_poset(&self.target);
        for (a, &ia) in s.ids.iter().enumerate() {
            for (b, &ib) in s.ids.iter().enumerate() {
                if s.poset.leq(a, b) && !t.poset.leq(t.position(self.value(ia)), t.position(self.value(ib))) {
                    return false;
                }
            }
        }
        true
    }

    /// The induced map of poset nerves `BNK → BNL`.
    pub fn nerve_map(&self) -> Result<SMap> {
        let s = face_poset(&self.source);
        let t = face_poset(&self.target);
        let f: Vec<usize> = s.ids.iter().map(|&id| t.position(self.value(id))).collect();
        PosetNerve::new(&s.poset)?.map_to(&PosetNerve::new(&t.poset)?, &f)
    }
}

pub fn induced_poset_map(g: &SMap) -> Result<PosetMap> {
    require_complex(g.source())?;
    require_complex(g.target())?;
    let values = g.images().iter().map(|l| l.iter().map(|y| y.base).collect()).collect();
    let witnesses = g.images().iter().map(|l| l.iter().map(|y| y.word.clone()).collect()).collect();
    let p = PosetMap { source: g.source().clone(), target: g.target().clone(), values, witnesses };
    if !p.is_monotone() {
        return Err(Error::Validation("induced poset map is not monotone".into()));
    }
    Ok(p)
}

/// Outcome of comparing the realization of `f̃ ∘ g_*` with `f ∘ g`.
#[derive(Clone, Debug)]
pub struct CompositeCheck {
    pub composite: SMap,
    pub agrees: bool,
}

/// Realizes the functor `f̃ ∘ g_*` on `NK` (with `f̃` read through the
/// witnesses of `g_*`) and compares it with the direct composite.
pub fn compose_realizations(g: &SMap, f: &SMap) -> Result<CompositeCheck> {
    let gs = induced_poset_map(g)?;
    let ft = functor_of_map(f)?;
    let values = g
        .images()
        .iter()
        .enumerate()
        .map(|(d, l)| {
            (0..l.len())
                .map(|i| {
                    let id = NdId::new(d, i);
                    let base = ft.value(gs.value(id));
                    let w = gs.witness(id);
                    if w.is_empty() {
                        base.clone()
                    } else {
                        f.target().apply(base, &w.surjection(d))
                    }
                })
                .collect()
        })
        .collect();
    let data = FunctorData { source: g.source().clone(), target: f.target().clone(), values };
    let realized = realize_functor(&data)?;
    let direct = f.after(g)?;
    let agrees = realized.same_as(&direct);
    Ok(CompositeCheck { composite: realized, agrees })
}
