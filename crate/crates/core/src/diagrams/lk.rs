//! Maps `K → hocolim hom(X, Z)` as maps `L_K X → Z`, extension problems for
//! an inclusion of diagrams, and the refinement test over a filtered index.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::FinCategory;
use super::{Diagram, FibrantTestObject, Hocolim, InducedHocolim, ProMap};
use crate::budget::DEFAULT_MAP_CAP;
use crate::complexes::ComplexRealization;
use crate::error::{Error, Result};
use crate::kan_ex::{delta, delta_map, function_complex_capped, CornerFrame, CornerOutcome, CornerSearch, FramePlan, FunctionComplex};
use crate::levelwise::{encode_images, Key};
use crate::realization::{functor_of_map, realize_functor, FunctorData};
use crate::simplex::word::coface;
use crate::simplex::{
    colimit_of_graph, pushout, Colimit, FinSSet, FinSSetBuilder, MapSearch, NdId, Product, SMap, SimplexRef, TruncatedSSet,
};

/// `L_K X` with `f_ω: L_K X → Z` for a map `ω: K → hocolim hom(X, Z)`.
#[derive(Clone, Debug)]
pub struct LkRealization {
    pub source: Arc<FinSSet>,
    /// String part `α` of `ω(σ)`, per simplex of `K` in (dimension, index) order.
    pub strings: Vec<Key>,
    /// `α(n)` per simplex of `K`.
    pub ends: Vec<usize>,
    /// Colimit of `X(α(n)) × Δⁿ` over the simplices of `K`.
    pub colimit: Colimit,
    pub f: SMap,
}

fn positions(x: &FinSSet) -> HashMap<NdId, usize> {
    x.all_ids().enumerate().map(|(p, id)| (id, p)).collect()
}

impl LkRealization {
    pub fn space(&self) -> &Arc<FinSSet> {
        &self.colimit.space
    }

    /// The piece of `σ` and its leg into `L_K X`.
    pub fn leg(&self, id: NdId) -> &SMap {
        &self.colimit.cocone[positions(&self.source)[&id]]
    }

    /// The map `K → hocolim` with `τ_σ = f_ω ∘ leg_σ`.
    pub fn expand(&self, h: &Hocolim) -> Result<SMap> {
        let mut images = Vec::new();
        for (p, id) in self.source.all_ids().enumerate() {
            if images.len() <= id.dim {
                images.push(Vec::new());
            }
            let tau = self.f.after(&self.colimit.cocone[p])?;
            let mut key = self.strings[p].clone();
            key.extend(encode_images(tau.images()));
            let s = h
                .simplex_of(id.dim, &key)
                .ok_or_else(|| Error::Validation(format!("{} does not expand to a hocolim simplex", self.source.name(id))))?;
            images[id.dim].push(s);
        }
        SMap::new(self.source.clone(), h.complex.space.clone(), images)
    }
}

/// Glues `X(α(n)) × Δⁿ` over the simplices of `K`, with `X(u) × δ` along each
/// face, and assembles `f_ω` from the `τ`. `K` must be a simplicial complex.
pub fn realize_lk(h: &Hocolim, omega: &FunctorData) -> Result<LkRealization> {
    if omega.target.as_ref() != h.complex.space.as_ref() {
        return Err(Error::Validation("ω does not land in this hocolim".into()));
    }
    realize_functor(omega)?;
    let k = omega.source.clone();
    if k.dim().unwrap_or(0) > h.cap {
        return Err(Error::Validation(format!("K has dimension above the hocolim cap {}", h.cap)));
    }
    let pos = positions(&k);
    let c = &h.diagram.index;
    let mut strings = Vec::new();
    let mut ends = Vec::new();
    let mut objects = Vec::new();
    let mut taus = Vec::new();
    let mut labels = Vec::new();
    for id in k.all_ids() {
        let key = h.key_of(omega.value(id));
        let end = h.end(&key, id.dim);
        strings.push(key[..=id.dim].to_vec());
        ends.push(end);
        objects.push(h.product(end, id.dim).space().clone());
        taus.push(h.tau(&key, id.dim));
        labels.push(k.name(id).to_string());
    }
    let deltas: Vec<ComplexRealization> = (0..=k.dim().unwrap_or(0)).map(delta).collect();
    let mut arrows = Vec::new();
    for id in k.all_ids().filter(|id| id.dim > 0) {
        let (n, t) = (id.dim, pos[&id]);
        for (i, face) in k.faces_of(id).iter().enumerate() {
            let s = pos[&face.base];
            let u = if i < n { c.identity(ends[t]) } else { strings[t][n] as usize };
            let g = h.product(ends[s], n - 1).map_into(
                h.product(ends[t], n),
                &h.diagram.arrows[u],
                &delta_map(&deltas[n - 1], &deltas[n], &coface(n, i)),
            );
            arrows.push((s, t, g));
        }
    }
    let colimit = colimit_of_graph(&labels, &objects, &arrows)?;
    let f = colimit.induced_map(h.z.space.clone(), &taus)?;
    Ok(LkRealization { source: k, strings, ends, colimit, f })
}

/// `L_K Y ∪_{L_K X} L_L X` with its map to `Z`, for `K ⊂ L` on shared vertex
/// numbers, `top: K → hocolim(Y)` and `bottom: L → hocolim(X)`.
fn corner_pushout(
    p: &ProMap,
    ind: &InducedHocolim,
    top: &ComplexRealization,
    bottom: &ComplexRealization,
    top_map: &SMap,
    bottom_map: &SMap,
) -> Result<(Colimit, SMap)> {
    let ly = realize_lk(&ind.source, &functor_of_map(top_map)?)?;
    let lx = realize_lk(&ind.target, &functor_of_map(&ind.map.after(top_map)?)?)?;
    let lb = realize_lk(&ind.target, &functor_of_map(bottom_map)?)?;
    let into_y: Vec<SMap> = top
        .space
        .all_ids()
        .enumerate()
        .map(|(q, id)| {
            let (e, n) = (lx.ends[q], id.dim);
            let from = ind.target.product(e, n);
            let g = from.map_into(ind.source.product(e, n), &p.theta[e], &SMap::identity(from.right().clone()));
            ly.colimit.cocone[q].after(&g)
        })
        .collect::<Result<_>>()?;
    let bpos = positions(&bottom.space);
    let into_b: Vec<SMap> = top
        .space
        .all_ids()
        .map(|id| {
            let b = bottom.id_of(top.vertex_list(id)).ok_or_else(|| Error::Validation("K is not inside L".into()))?;
            Ok(lb.colimit.cocone[bpos[&b]].clone())
        })
        .collect::<Result<_>>()?;
    let a = lx.colimit.induced_map(ly.space().clone(), &into_y)?;
    let b = lx.colimit.induced_map(lb.space().clone(), &into_b)?;
    let po = pushout(&a, &b)?;
    let f = po.induced_map(ind.source.z.space.clone(), &[lx.f.clone(), ly.f.clone(), lb.f.clone()])?;
    Ok((po, f))
}

fn check_inclusion(p: &ProMap) -> Result<()> {
    let c = &p.x.index;
    let fixed = p.y.index.as_ref() == c.as_ref()
        && (0..c.object_count()).all(|o| p.alpha.on_objects[o] == o)
        && (0..c.morphism_count()).all(|m| p.alpha.on_morphisms[m] == m);
    if !fixed {
        return Err(Error::Validation("an inclusion of diagrams over a fixed index is required".into()));
    }
    if let Some(j) = p.theta.iter().position(|t| !t.is_monomorphism()) {
        return Err(Error::Validation(format!("X({0}) → Y({0}) is not injective", c.objects()[j])));
    }
    Ok(())
}

/// Result of a corner extension test.
#[derive(Clone, Debug)]
pub struct CornerTest {
    pub outcome: CornerOutcome,
    pub transcript: Vec<String>,
    /// Counts of `L_K Y ∪_{L_K X} L_L X`.
    pub source_pushout: Vec<usize>,
    /// Counts of the subdivided `L_{K'} Y ∪_{L_{K'} X} L_{L'} X` on success.
    pub target_pushout: Option<Vec<usize>>,
    /// Whether the lift glues to a map out of the target pushout.
    pub glued: Option<bool>,
}

#[derive(Serialize)]
struct CornerRecord<'a> {
    status: &'a str,
    k: Option<usize>,
    verified: Option<bool>,
    glued: Option<bool>,
    source_pushout: &'a [usize],
    target_pushout: Option<&'a [usize]>,
    transcript: &'a [String],
}

impl CornerTest {
    pub fn to_json(&self) -> serde_json::Value {
        let verified = match &self.outcome {
            CornerOutcome::Success { verified, .. } => Some(*verified),
            _ => None,
        };
        serde_json::to_value(CornerRecord {
            status: self.outcome.label(),
            k: self.outcome.k(),
            verified,
            glued: self.glued,
            source_pushout: &self.source_pushout,
            target_pushout: self.target_pushout.as_deref(),
            transcript: &self.transcript,
        })
        .expect("plain record")
    }
}

/// Extends `ω: K → hocolim(Y)` to `K'` and `β: L → hocolim(X)` to `L'`
/// compatibly with the restriction `i*`, after `k ≤ k_max` subdivisions.
/// Equivalent to extending `L_K Y ∪_{L_K X} L_L X → Z` along the corner
/// inclusion; that pushout is built, and any lift is glued over the
/// subdivided target pushout as a second check.
pub fn corner_extension_test(
    p: &ProMap,
    ind: &InducedHocolim,
    frame: &CornerFrame,
    omega: &SMap,
    beta: &SMap,
    k_max: usize,
    node_cap: u64,
) -> Result<CornerTest> {
    check_inclusion(p)?;
    let search = CornerSearch { frame, vertical: &ind.map, top_map: omega, bottom_map: beta, node_cap };
    let plan = FramePlan::new(frame.clone(), k_max)?;
    let kr = frame.top_fixed.realize();
    let lr = frame.bottom_fixed.realize();
    let omega_k = SMap::new(kr.space.clone(), omega.target().clone(), omega.images().to_vec())?;
    let beta_l = SMap::new(lr.space.clone(), beta.target().clone(), beta.images().to_vec())?;
    let result = search.run_planned(&plan)?;
    let (source, _) = corner_pushout(p, ind, &kr, &lr, &omega_k, &beta_l)?;
    let (target_pushout, glued) = match &result.outcome {
        CornerOutcome::Success { k, theta, h, .. } => {
            let (top, ambient) = plan.level(*k);
            match corner_pushout(p, ind, top, ambient, theta, h) {
                Ok((po, _)) => (Some(po.space.counts()), Some(true)),
                Err(_) => (None, Some(false)),
            }
        }
        _ => (None, None),
    };
    Ok(CornerTest {
        outcome: result.outcome,
        transcript: result.transcript,
        source_pushout: source.space.counts(),
        target_pushout,
        glued,
    })
}

/// The sub-simplicial set on the kept non-degenerate simplices, which must
/// be closed under faces, with its inclusion.
pub fn sub_sset(x: &Arc<FinSSet>, keep: impl Fn(NdId) -> bool) -> Result<(Arc<FinSSet>, SMap)> {
    let mut b = FinSSetBuilder::new();
    let mut new_id: HashMap<NdId, NdId> = HashMap::new();
    let mut images: Vec<Vec<SimplexRef>> = Vec::new();
    for id in x.all_ids().filter(|&id| keep(id)) {
        let faces = x
            .faces_of(id)
            .iter()
            .map(|f| {
                new_id
                    .get(&f.base)
                    .map(|&nb| SimplexRef::new(f.word.clone(), nb))
                    .ok_or_else(|| Error::Validation(format!("kept simplex {} has a face outside", x.name(id))))
            })
            .collect::<Result<Vec<_>>>()?;
        let nid = b.add(x.name(id), id.dim, faces);
        new_id.insert(id, nid);
        while images.len() <= id.dim {
            images.push(Vec::new());
        }
        images[id.dim].push(SimplexRef::nd(id));
    }
    let sub = Arc::new(b.build()?);
    images.truncate(sub.counts().len());
    let incl = SMap::new(sub.clone(), x.clone(), images)?;
    Ok((sub, incl))
}

/// `(∂Δⁿ × Y_i) ∪ (Δⁿ × X_i)` inside `Δⁿ × Y_i`.
#[derive(Clone, Debug)]
pub struct RefinementDomain {
    pub product: Product,
    pub space: Arc<FinSSet>,
    pub inclusion: SMap,
    index: HashMap<NdId, NdId>,
}

impl RefinementDomain {
    pub fn new(p: &ProMap, i: usize, n: usize) -> Result<Self> {
        let d = delta(n);
        let product = Product::new(d.space.clone(), p.y.objects[i].clone());
        let image: std::collections::HashSet<NdId> =
            p.theta[i].images().iter().flatten().map(|s| s.base).collect();
        let keep = |id: NdId| {
            let (a, y) = product.components(id);
            let vs = d.vertices_of(a);
            let mut distinct = vs.clone();
            distinct.dedup();
            distinct.len() <= n || image.contains(&y.base)
        };
        let (space, inclusion) = sub_sset(product.space(), keep)?;
        let index = inclusion.images().iter().flatten().zip(space.all_ids()).map(|(s, id)| (s.base, id)).collect();
        Ok(RefinementDomain { product, space, inclusion, index })
    }

    /// A simplex of `Δⁿ × Y_i` lying in the domain, as a simplex of the domain.
    fn pull(&self, s: &SimplexRef) -> Option<SimplexRef> {
        self.index.get(&s.base).map(|&b| SimplexRef::new(s.word.clone(), b))
    }
}

/// A map `f: (∂Δⁿ × Y_i) ∪ (Δⁿ × X_i) → Z` to be extended over `Δⁿ × Y_j`
/// after restricting along some `j → i`.
#[derive(Clone, Debug)]
pub struct RefinementProblem {
    pub i: usize,
    pub n: usize,
    pub domain: RefinementDomain,
    pub f: SMap,
}

impl RefinementProblem {
    pub fn new(p: &ProMap, i: usize, n: usize, f: SMap) -> Result<Self> {
        let domain = RefinementDomain::new(p, i, n)?;
        if f.source().as_ref() != domain.space.as_ref() {
            return Err(Error::Validation("f is not defined on (∂Δⁿ × Y_i) ∪ (Δⁿ × X_i)".into()));
        }
        Ok(RefinementProblem { i, n, domain, f })
    }
}

#[derive(Clone, Debug)]
pub enum RefinementOutcome {
    /// `theta: Δⁿ × Y_j → Z` for the morphism `alpha: j → i`.
    Solved { alpha: usize, theta: SMap },
    Exhausted,
    Unresolved,
}

impl RefinementOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            RefinementOutcome::Solved { .. } => "solved",
            RefinementOutcome::Exhausted => "exhausted",
            RefinementOutcome::Unresolved => "unresolved",
        }
    }
}

/// Tries every `α: j → i`, the identity first, for an extension of
/// `f ∘ (1 × Y(α))` from the domain at `j` to all of `Δⁿ × Y_j`.
pub fn filtered_refinement_solve(
    p: &ProMap,
    problem: &RefinementProblem,
    z: &TruncatedSSet,
    node_cap: u64,
) -> Result<(RefinementOutcome, Vec<String>)> {
    check_inclusion(p)?;
    let c = &p.x.index;
    c.check_left_filtered()?;
    if problem.f.target().as_ref() != z.space.as_ref() {
        return Err(Error::Validation("f does not land in Z".into()));
    }
    let i = problem.i;
    let mut candidates = FinCategory::into(c, i);
    candidates.sort_by_key(|&a| (a != c.identity(i), a));
    let mut transcript = Vec::new();
    let mut capped = false;
    let d = delta(problem.n);
    for a in candidates {
        let j = c.morphism(a).src;
        let dom = RefinementDomain::new(p, j, problem.n)?;
        let down = dom.product.map_into(&problem.domain.product, &SMap::identity(d.space.clone()), &p.y.arrows[a]);
        let mut fixed = HashMap::new();
        for s in dom.inclusion.images().iter().flatten() {
            let there = problem
                .domain
                .pull(&down.apply(s))
                .ok_or_else(|| Error::Validation("Y(α) does not carry X_j into X_i".into()))?;
            fixed.insert(s.base, problem.f.apply(&there));
        }
        let (found, stats) = MapSearch::new(dom.product.space(), &z.space).fix(fixed).node_cap(node_cap).first();
        let verdict = if found.is_some() {
            "solved"
        } else if stats.capped {
            "capped"
        } else {
            "exhausted"
        };
        transcript.push(format!("alpha={} j={} nodes={} -> {verdict}", c.morphism(a).id, c.objects()[j], stats.nodes));
        if let Some(images) = found {
            let theta = SMap::new(dom.product.space().clone(), z.space.clone(), images)?;
            return Ok((RefinementOutcome::Solved { alpha: a, theta }, transcript));
        }
        capped |= stats.capped;
    }
    let outcome = if capped { RefinementOutcome::Unresolved } else { RefinementOutcome::Exhausted };
    Ok((outcome, transcript))
}

/// The colimit over the index of `hom(X_i, Z)` along precomposition with
/// `X(a)`, through dimension `cap`, with the function complexes.
pub fn colim_hom(x: &Diagram, z: &FibrantTestObject, cap: usize) -> Result<(Colimit, Vec<FunctionComplex>)> {
    let zt = z.through(x.max_dim() + cap)?;
    let c = &x.index;
    let fcs = x
        .objects
        .iter()
        .map(|o| function_complex_capped(o.clone(), &zt, cap, DEFAULT_MAP_CAP))
        .collect::<Result<Vec<_>>>()?;
    let mut arrows = Vec::new();
    for a in (0..c.morphism_count()).filter(|&a| !c.is_identity(a)) {
        let m = c.morphism(a);
        let (from, to) = (&fcs[m.dst], &fcs[m.src]);
        let images = from
            .complex
            .counts()
            .iter()
            .enumerate()
            .map(|(n, &cnt)| {
                (0..cnt)
                    .map(|q| {
                        let tau = from.map_of(NdId::new(n, q));
                        let g = to.products[n].map_into(&from.products[n], &x.arrows[a], &SMap::identity(to.products[n].right().clone()));
                        let key = encode_images(tau.after(&g)?.images());
                        to.levels.lookup(n, &key).cloned().ok_or_else(|| Error::Validation("restricted map was not enumerated".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        arrows.push((m.dst, m.src, SMap::new(from.complex.space.clone(), to.complex.space.clone(), images)?));
    }
    let objects: Vec<Arc<FinSSet>> = fcs.iter().map(|f| f.complex.space.clone()).collect();
    let colimit = colimit_of_graph(c.objects(), &objects, &arrows)?;
    Ok((colimit, fcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Functor;
    use crate::fixtures::filtered_poset;
    use crate::kan_ex::LiftingProblem;
    use crate::simplex::{boundary, horn, standard_simplex};
    use crate::diagrams::{hocolim, induced_hocolim_map};

    fn pt() -> Arc<FinSSet> {
        Arc::new(standard_simplex(0))
    }

    fn point_z() -> FibrantTestObject {
        FibrantTestObject::assumed("pt", TruncatedSSet::exact(standard_simplex(0)))
    }

    fn vertex(x: &FinSSet, name: &str) -> SimplexRef {
        SimplexRef::nd(x.id(name).unwrap())
    }

    fn inclusion(sub: &Arc<FinSSet>, x: &Arc<FinSSet>) -> SMap {
        SMap::from_fn(sub.clone(), x.clone(), |id| SimplexRef::nd(x.id(sub.name(id)).unwrap())).unwrap()
    }

    fn single_inclusion(a: FinSSet, b: FinSSet) -> ProMap {
        let (a, b) = (Arc::new(a), Arc::new(b));
        let x = Arc::new(Diagram::single(a.clone()));
        let y = Arc::new(Diagram::single(b.clone()));
        ProMap::new(Functor::identity(x.index.clone()), x, y, vec![inclusion(&a, &b)]).unwrap()
    }

    fn omega_on(k: &Arc<FinSSet>, h: &Hocolim, values: Vec<Vec<SimplexRef>>) -> FunctorData {
        FunctorData { source: k.clone(), target: h.complex.space.clone(), values }
    }

    #[test]
    fn point_gives_the_object() {
        let x = Arc::new(Diagram::single(Arc::new(boundary(1))));
        let z = FibrantTestObject::assumed("∂Δ¹", TruncatedSSet::exact(boundary(1)));
        let h = hocolim(x, &z, 1).unwrap();
        let k = Arc::new(standard_simplex(0));
        for v in 0..h.complex.counts()[0] {
            let om = omega_on(&k, &h, vec![vec![SimplexRef::nd(NdId::new(0, v))]]);
            let lk = realize_lk(&h, &om).unwrap();
            assert_eq!(lk.space().counts(), vec![2]);
            let key = h.key_of(&SimplexRef::nd(NdId::new(0, v)));
            assert!(lk.f.after(&lk.colimit.cocone[0]).unwrap().same_as(&h.tau(&key, 0)));
            assert!(lk.expand(&h).unwrap().same_as(&realize_functor(&om).unwrap()));
        }
    }

    #[test]
    fn two_points_give_a_coproduct() {
        let x = Arc::new(Diagram::single(Arc::new(boundary(1))));
        let z = FibrantTestObject::assumed("∂Δ¹", TruncatedSSet::exact(boundary(1)));
        let h = hocolim(x, &z, 1).unwrap();
        let k = Arc::new(boundary(1));
        let om = omega_on(&k, &h, vec![vec![SimplexRef::nd(NdId::new(0, 0)), SimplexRef::nd(NdId::new(0, 3))]]);
        let lk = realize_lk(&h, &om).unwrap();
        assert_eq!(lk.space().counts(), vec![4]);
        assert!(lk.expand(&h).unwrap().same_as(&realize_functor(&om).unwrap()));
    }

    #[test]
    fn edge_over_a_point() {
        let x = Arc::new(Diagram::single(pt()));
        let h = hocolim(x, &point_z(), 1).unwrap();
        assert_eq!(h.complex.counts(), vec![1]);
        let k = Arc::new(standard_simplex(1));
        let deg = h.complex.space.degeneracy(&SimplexRef::nd(NdId::new(0, 0)), 0);
        let om = omega_on(&k, &h, vec![vec![SimplexRef::nd(NdId::new(0, 0)); 2], vec![deg]]);
        let lk = realize_lk(&h, &om).unwrap();
        // Δ⁰ × Δ¹ glued to two copies of Δ⁰ × Δ⁰ along its ends
        assert_eq!(lk.space().counts(), vec![2, 1]);
        assert!(lk.space().validate().is_empty());
        assert_eq!(lk.f.target().counts(), vec![1]);
        assert!(lk.expand(&h).unwrap().same_as(&realize_functor(&om).unwrap()));
    }

    #[test]
    fn incoherent_data_names_the_pair() {
        let x = Arc::new(Diagram::single(pt()));
        let z = FibrantTestObject::assumed("Δ¹", TruncatedSSet::exact(standard_simplex(1)));
        let h = hocolim(x, &z, 1).unwrap();
        let k = Arc::new(standard_simplex(1));
        let e = SimplexRef::nd(NdId::new(1, 0));
        let faces = h.complex.space.faces_of(NdId::new(1, 0)).to_vec();
        // vertices swapped
        let om = omega_on(&k, &h, vec![vec![faces[0].clone(), faces[1].clone()], vec![e]]);
        match realize_lk(&h, &om) {
            Err(Error::Coherence { sigma, tau }) => {
                assert_eq!(tau, k.name(NdId::new(1, 0)));
                assert!(sigma == "0" || sigma == "1");
            }
            other => panic!("{other:?}"),
        }
    }

    fn corner_data(ind: &InducedHocolim, n: usize, omega: SMap, b: &SMap) -> (CornerFrame, SMap) {
        let lp = LiftingProblem::constant_homotopy(n, omega, b, ind.map.clone()).unwrap();
        (CornerFrame::prism(n), lp.hb)
    }

    fn top_fixed_map(n: usize, target: &Arc<FinSSet>, images: Vec<Vec<SimplexRef>>) -> SMap {
        SMap::new(LiftingProblem::boundary_source(n), target.clone(), images).unwrap()
    }

    #[test]
    fn equal_diagrams_extend_at_once() {
        let p = single_inclusion(boundary(1), boundary(1));
        let z = FibrantTestObject::groupoid("B(Z/2)", FinCategory::cyclic_group(2)).unwrap();
        let ind = induced_hocolim_map(&p, &z, 1).unwrap();
        let omega = top_fixed_map(0, &ind.source.complex.space, vec![]);
        let d0 = Arc::new(standard_simplex(0));
        let b = SMap::new(d0, ind.target.complex.space.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0))]]).unwrap();
        let (frame, hb) = corner_data(&ind, 0, omega.clone(), &b);
        let t = corner_extension_test(&p, &ind, &frame, &omega, &hb, 1, 100_000).unwrap();
        assert_eq!(t.outcome.k(), Some(0));
        assert_eq!(t.glued, Some(true));
    }

    #[test]
    fn point_target_extends_at_once() {
        let p = single_inclusion(horn(2, 1), standard_simplex(2));
        let ind = induced_hocolim_map(&p, &point_z(), 1).unwrap();
        let omega = top_fixed_map(0, &ind.source.complex.space, vec![]);
        let d0 = Arc::new(standard_simplex(0));
        let b = SMap::new(d0, ind.target.complex.space.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0))]]).unwrap();
        let (frame, hb) = corner_data(&ind, 0, omega.clone(), &b);
        let t = corner_extension_test(&p, &ind, &frame, &omega, &hb, 1, 100_000).unwrap();
        assert_eq!(t.outcome.k(), Some(0));
        assert_eq!(t.glued, Some(true));
        assert!(t.source_pushout.iter().sum::<usize>() > 0);
    }

    #[test]
    fn refinement_with_equal_diagrams_uses_identity() {
        let c = Arc::new(filtered_poset().to_category());
        let x = Arc::new(Diagram::constant(c.clone(), pt()));
        let p = ProMap::identity(x);
        let z = TruncatedSSet::exact(boundary(1));
        let dom = RefinementDomain::new(&p, 0, 1).unwrap();
        let f = SMap::constant(dom.space.clone(), z.space.clone(), z.space.id("1").unwrap()).unwrap();
        let problem = RefinementProblem::new(&p, 0, 1, f).unwrap();
        let (out, _) = filtered_refinement_solve(&p, &problem, &z, 10_000).unwrap();
        match out {
            RefinementOutcome::Solved { alpha, .. } => assert!(c.is_identity(alpha)),
            other => panic!("{other:?}"),
        }
    }

    /// X(0) = ∂Δ¹ ⊂ Y(0) = Δ¹ and X(1) = Y(1) = Δ⁰, mapped to the vertex 0.
    fn refining_fixture() -> ProMap {
        let c = Arc::new(filtered_poset().to_category());
        let (b1, d1, p0) = (Arc::new(boundary(1)), Arc::new(standard_simplex(1)), pt());
        let a = c.morphisms().iter().position(|m| m.src == 1 && m.dst == 0).unwrap();
        let arrows_for = |zero: &Arc<FinSSet>| -> Vec<SMap> {
            (0..c.morphism_count())
                .map(|m| {
                    if m == a {
                        SMap::from_fn(p0.clone(), zero.clone(), |_| vertex(zero, "0")).unwrap()
                    } else if c.morphism(m).src == 0 {
                        SMap::identity(zero.clone())
                    } else {
                        SMap::identity(p0.clone())
                    }
                })
                .collect()
        };
        let x = Arc::new(Diagram::new(c.clone(), vec![b1.clone(), p0.clone()], arrows_for(&b1)).unwrap());
        let y = Arc::new(Diagram::new(c.clone(), vec![d1.clone(), p0.clone()], arrows_for(&d1)).unwrap());
        ProMap::new(Functor::identity(c), x, y, vec![inclusion(&b1, &d1), SMap::identity(p0)]).unwrap()
    }

    #[test]
    fn refinement_kills_the_missing_filler() {
        let p = refining_fixture();
        let z = TruncatedSSet::exact(boundary(1));
        let dom = RefinementDomain::new(&p, 0, 0).unwrap();
        assert_eq!(dom.space.counts(), vec![2]);
        // the identity on the two endpoints has no extension over Δ¹
        let f = SMap::from_fn(dom.space.clone(), z.space.clone(), |id| {
            let (_, y) = dom.product.components(dom.inclusion.image(id).base);
            vertex(&z.space, p.y.objects[0].name(y.base))
        })
        .unwrap();
        let problem = RefinementProblem::new(&p, 0, 0, f).unwrap();
        let (out, transcript) = filtered_refinement_solve(&p, &problem, &z, 10_000).unwrap();
        assert_eq!(transcript.len(), 2);
        assert!(transcript[0].ends_with("exhausted"));
        match out {
            RefinementOutcome::Solved { alpha, theta } => {
                assert_eq!(p.x.index.morphism(alpha).src, 1);
                assert!(theta.validate().is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_target_always_solves_at_identity() {
        let p = refining_fixture();
        let z = TruncatedSSet::exact(standard_simplex(0));
        for n in 0..=1 {
            let dom = RefinementDomain::new(&p, 0, n).unwrap();
            let f = SMap::constant(dom.space.clone(), z.space.clone(), NdId::new(0, 0)).unwrap();
            let problem = RefinementProblem::new(&p, 0, n, f).unwrap();
            match filtered_refinement_solve(&p, &problem, &z, 10_000).unwrap().0 {
                RefinementOutcome::Solved { alpha, .. } => assert!(p.x.index.is_identity(alpha)),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn non_filtered_index_is_rejected() {
        let c = Arc::new(FinCategory::discrete(&["a", "b"]));
        let p = ProMap::identity(Arc::new(Diagram::constant(c, pt())));
        let z = TruncatedSSet::exact(standard_simplex(0));
        let dom = RefinementDomain::new(&p, 0, 0).unwrap();
        let f = SMap::constant(dom.space.clone(), z.space.clone(), NdId::new(0, 0)).unwrap();
        let problem = RefinementProblem::new(&p, 0, 0, f).unwrap();
        assert!(matches!(filtered_refinement_solve(&p, &problem, &z, 100), Err(Error::NotFiltered(_))));
    }

    #[test]
    fn colimit_of_hom_complexes() {
        let p = refining_fixture();
        let z = FibrantTestObject::groupoid("B(Z/2)", FinCategory::cyclic_group(2)).unwrap();
        let (colim, fcs) = colim_hom(&p.x, &z, 2).unwrap();
        // over 1 → 0 the colimit is the value at the initial object 1
        assert_eq!(colim.space.counts(), fcs[1].complex.counts());
    }
}
