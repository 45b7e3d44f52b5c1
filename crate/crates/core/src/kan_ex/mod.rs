//! Function complexes, Ex, the path-space replacement of a map, and the
//! weak-equivalence test by extension after subdivision.

pub mod lifting;

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::DEFAULT_MAP_CAP;
use crate::complexes::{complex_map, ComplexRealization, SimplicialComplex};
use crate::error::{Error, Result};
use crate::levelwise::{Key, LevelSource, Levelwise};
use crate::simplex::{enumerate_codes, CodeOps, FinSSet, MapSearch, NdId, Product, Pullback, SMap, SimplexRef, TruncatedSSet};
use crate::subdivision::Piece;

pub use lifting::{
    extension_search, extension_search_planned, weq_test, weq_test_bounded, CornerFrame, CornerOutcome, CornerSearch, ExtensionResult, FramePlan,
    LiftingProblem, WeqBudgets, WeqStatus, WeqVerdict, WeqWitness,
};

/// `Δⁿ` as a complex realization, shared by the constructions below.
pub(crate) fn delta(n: usize) -> ComplexRealization {
    SimplicialComplex::simplex(n).realize()
}

/// The map `Δᵐ → Δⁿ` of a monotone `θ`.
pub(crate) fn delta_map(m: &ComplexRealization, n: &ComplexRealization, theta: &[usize]) -> SMap {
    complex_map(m, n, theta).expect("monotone maps of simplices")
}

fn check_target(y: &TruncatedSSet, needed: usize) -> Result<()> {
    match y.cap {
        Some(c) if c < needed => Err(Error::Validation(format!(
            "target is only known through dimension {c}, {needed} is needed"
        ))),
        _ => Ok(()),
    }
}

fn collect_maps(source: &FinSSet, target: &FinSSet, cap: usize, what: &str) -> Result<Vec<Key>> {
    enumerate_codes(source, target, cap).map_err(|_| Error::Budget(format!("more than {cap} maps {what}")))
}

struct FunctionSource<'a> {
    ops: CodeOps<'a>,
    a: Arc<FinSSet>,
    deltas: Vec<ComplexRealization>,
    products: Vec<Product>,
    shifts: HashMap<(usize, Vec<usize>), Pullback>,
    map_cap: usize,
}

impl FunctionSource<'_> {
    fn shift(&mut self, n: usize, theta: &[usize]) -> &Pullback {
        let m = theta.len() - 1;
        let key = (n, theta.to_vec());
        if !self.shifts.contains_key(&key) {
            let t = delta_map(&self.deltas[m], &self.deltas[n], theta);
            let g = self.products[m].map_into(&self.products[n], &SMap::identity(self.a.clone()), &t);
            self.shifts.insert(key.clone(), Pullback::new(&g, &self.ops));
        }
        &self.shifts[&key]
    }
}

impl LevelSource for FunctionSource<'_> {
    fn keys(&mut self, n: usize) -> Result<Vec<Key>> {
        collect_maps(self.products[n].space(), self.ops.space(), self.map_cap, &format!("A × Δ^{n} → Y"))
    }

    fn act(&mut self, key: &[u64], n: usize, theta: &[usize]) -> Key {
        self.shift(n, theta);
        self.shifts[&(n, theta.to_vec())].apply(key, &self.ops)
    }

    fn fixes(&mut self, key: &[u64], n: usize, theta: &[usize]) -> bool {
        self.shift(n, theta);
        self.shifts[&(n, theta.to_vec())].fixes(key, &self.ops)
    }

    fn name(&self, n: usize, i: usize, _key: &[u64]) -> String {
        format!("f{n}_{i}")
    }
}

/// `hom(A, Y)` through dimension `cap`: its `n`-simplices are the maps
/// `A × Δⁿ → Y`.
#[derive(Clone, Debug)]
pub struct FunctionComplex {
    pub a: Arc<FinSSet>,
    pub y: TruncatedSSet,
    pub complex: TruncatedSSet,
    pub products: Vec<Product>,
    pub levels: Levelwise,
}

impl FunctionComplex {
    /// The map `A × Δⁿ → Y` of a non-degenerate simplex.
    pub fn map_of(&self, id: NdId) -> SMap {
        let p = &self.products[id.dim];
        let images = crate::levelwise::decode_images(self.levels.key(id), p.space());
        SMap::new(p.space().clone(), self.y.space.clone(), images).expect("enumerated map")
    }
}

pub fn function_complex(a: Arc<FinSSet>, y: &TruncatedSSet, cap: usize) -> Result<FunctionComplex> {
    function_complex_capped(a, y, cap, DEFAULT_MAP_CAP)
}

pub fn function_complex_capped(a: Arc<FinSSet>, y: &TruncatedSSet, cap: usize, map_cap: usize) -> Result<FunctionComplex> {
    check_target(y, a.dim().unwrap_or(0) + cap)?;
    let deltas: Vec<ComplexRealization> = (0..=cap).map(delta).collect();
    let products: Vec<Product> = deltas.iter().map(|d| Product::new(a.clone(), d.space.clone())).collect();
    let mut src = FunctionSource { ops: CodeOps::new(&y.space), a: a.clone(), deltas, products, shifts: HashMap::new(), map_cap };
    let levels = Levelwise::build(&mut src, cap)?;
    let complex = TruncatedSSet { space: Arc::new(levels.space.clone()), cap: Some(cap), kan: y.kan };
    Ok(FunctionComplex { a, y: y.clone(), complex, products: src.products, levels })
}

struct ExSource<'a> {
    ops: CodeOps<'a>,
    pieces: Vec<Piece>,
    along: HashMap<(usize, Vec<usize>), Pullback>,
    map_cap: usize,
}

impl ExSource<'_> {
    fn along(&mut self, n: usize, theta: &[usize]) -> &Pullback {
        let m = theta.len() - 1;
        let k = (n, theta.to_vec());
        if !self.along.contains_key(&k) {
            let g = self.pieces[m].map_along(&self.pieces[n], theta).expect("monotone");
            self.along.insert(k.clone(), Pullback::new(&g, &self.ops));
        }
        &self.along[&k]
    }
}

impl LevelSource for ExSource<'_> {
    fn keys(&mut self, n: usize) -> Result<Vec<Key>> {
        collect_maps(&self.pieces[n].real.space, self.ops.space(), self.map_cap, &format!("sd Δ^{n} → X"))
    }

    fn act(&mut self, key: &[u64], n: usize, theta: &[usize]) -> Key {
        self.along(n, theta);
        self.along[&(n, theta.to_vec())].apply(key, &self.ops)
    }

    fn fixes(&mut self, key: &[u64], n: usize, theta: &[usize]) -> bool {
        self.along(n, theta);
        self.along[&(n, theta.to_vec())].fixes(key, &self.ops)
    }

    fn name(&self, n: usize, i: usize, _key: &[u64]) -> String {
        format!("e{n}_{i}")
    }
}

/// `Ex(X)` through dimension `cap` with the natural map `X → Ex(X)`, the
/// latter defined on the `cap`-skeleton of `X`.
#[derive(Clone, Debug)]
pub struct ExObject {
    pub ex: TruncatedSSet,
    pub natural: SMap,
    pub pieces: Vec<Piece>,
    pub levels: Levelwise,
}

impl ExObject {
    /// The map `sd Δⁿ → X` of a non-degenerate simplex of `Ex(X)`.
    pub fn map_of(&self, id: NdId, x: &Arc<FinSSet>) -> SMap {
        let p = &self.pieces[id.dim].real.space;
        SMap::new(p.clone(), x.clone(), crate::levelwise::decode_images(self.levels.key(id), p)).expect("enumerated map")
    }
}

pub fn ex(x: Arc<FinSSet>, cap: usize) -> Result<ExObject> {
    ex_capped(x, cap, DEFAULT_MAP_CAP)
}

pub fn ex_capped(x: Arc<FinSSet>, cap: usize, map_cap: usize) -> Result<ExObject> {
    let pieces: Vec<Piece> = (0..=cap).map(Piece::new).collect();
    let mut src = ExSource { ops: CodeOps::new(&x), pieces, along: HashMap::new(), map_cap };
    let levels = Levelwise::build(&mut src, cap)?;
    let pieces = src.pieces;
    let ex_space = Arc::new(levels.space.clone());
    let skeleton = Arc::new(x.skeleton(cap));
    let images = skeleton
        .counts()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let piece = &pieces[n];
            let lasts = piece.sd.last_vertex();
            (0..c)
                .map(|i| {
                    let xs = SimplexRef::nd(NdId::new(n, i));
                    let key: Key = piece
                        .real
                        .space
                        .all_ids()
                        .map(|s| {
                            let list: Vec<usize> = piece.real.vertex_list(s).iter().map(|&v| lasts[v]).collect();
                            x.apply(&xs, &list).code()
                        })
                        .collect();
                    levels.lookup(n, &key).cloned().ok_or_else(|| Error::Validation("x∘γ was not enumerated".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let natural = SMap::new(skeleton, ex_space.clone(), images)?;
    Ok(ExObject { ex: TruncatedSSet { space: ex_space, cap: Some(cap), kan: false }, natural, pieces, levels })
}

struct PathSource<'a> {
    x: &'a FinSSet,
    y: &'a FinSSet,
    f: &'a SMap,
    deltas: Vec<ComplexRealization>,
    products: Vec<Product>,
    interval: Arc<FinSSet>,
    shifts: HashMap<(usize, Vec<usize>), Pullback>,
    ops: CodeOps<'a>,
    map_cap: usize,
}

impl LevelSource for PathSource<'_> {
    /// Pairs `(x, p)` with `p: Δ¹ × Δⁿ → Y` ending at `f(x)` over the vertex 1.
    fn keys(&mut self, n: usize) -> Result<Vec<Key>> {
        let p = &self.products[n];
        let one = SimplexRef::nd(NdId::new(0, 1));
        let mut out = Vec::new();
        for xs in self.x.all_simplices(n) {
            let fx = self.f.apply(&xs);
            let mut fixed = HashMap::new();
            for t in self.deltas[n].space.all_ids() {
                let verts = self.deltas[n].vertex_list(t).to_vec();
                let c = self.interval.apply(&one, &vec![0; verts.len()]);
                let z = p.pair(&c, &SimplexRef::nd(t));
                fixed.insert(z.base, self.y.apply(&fx, &verts));
            }
            let search = MapSearch::new(p.space(), self.y).fix(fixed);
            let mut over = false;
            let cap = self.map_cap;
            search.run_codes(|imgs| {
                if out.len() >= cap {
                    over = true;
                    return false;
                }
                let mut key = vec![xs.code()];
                key.extend_from_slice(imgs);
                out.push(key);
                true
            });
            if over {
                return Err(Error::Budget(format!("more than {cap} paths in dimension {n}")));
            }
        }
        Ok(out)
    }

    fn act(&mut self, key: &[u64], n: usize, theta: &[usize]) -> Key {
        let m = theta.len() - 1;
        let k = (n, theta.to_vec());
        if !self.shifts.contains_key(&k) {
            let t = delta_map(&self.deltas[m], &self.deltas[n], theta);
            let g = self.products[m].map_into(&self.products[n], &SMap::identity(self.interval.clone()), &t);
            self.shifts.insert(k.clone(), Pullback::new(&g, &self.ops));
        }
        let xs = self.x.apply(&SimplexRef::from_code(key[0]), theta);
        let mut out = vec![xs.code()];
        out.extend(self.shifts[&k].apply(&key[1..], &self.ops));
        out
    }

    fn name(&self, n: usize, i: usize, _key: &[u64]) -> String {
        format!("p{n}_{i}")
    }
}

/// `X ×_Y Y^I` with `π = d₁ ∘ f_*` (the start of the path) and the
/// projection to `X`.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub total: TruncatedSSet,
    pub pi: SMap,
    pub to_x: SMap,
}

pub fn path_space_replacement(f: &SMap, y: &TruncatedSSet, cap: usize) -> Result<PathSpace> {
    path_space_capped(f, y, cap, DEFAULT_MAP_CAP)
}

pub fn path_space_capped(f: &SMap, y: &TruncatedSSet, cap: usize, map_cap: usize) -> Result<PathSpace> {
    check_target(y, cap + 1)?;
    if f.target().as_ref() != y.space.as_ref() {
        return Err(Error::Validation("map target differs from the given target object".into()));
    }
    let interval = delta(1).space;
    let deltas: Vec<ComplexRealization> = (0..=cap).map(delta).collect();
    let products: Vec<Product> = deltas.iter().map(|d| Product::new(interval.clone(), d.space.clone())).collect();
    let x = f.source().clone();
    let mut src = PathSource {
        x: &x,
        y: &y.space,
        f,
        deltas,
        products,
        interval: interval.clone(),
        shifts: HashMap::new(),
        ops: CodeOps::new(&y.space),
        map_cap,
    };
    let levels = Levelwise::build(&mut src, cap)?;
    let total = Arc::new(levels.space.clone());
    let zero = SimplexRef::nd(NdId::new(0, 0));
    let mut pi_images = Vec::new();
    let mut x_images = Vec::new();
    for (n, &c) in total.counts().iter().enumerate() {
        let p = &src.products[n];
        let top = SimplexRef::nd(NdId::new(n, 0));
        let start = p.pair(&interval.apply(&zero, &vec![0; n + 1]), &top);
        let offs = crate::levelwise::offsets(p.space());
        let mut pl = Vec::new();
        let mut xl = Vec::new();
        for i in 0..c {
            let key = levels.key(NdId::new(n, i));
            xl.push(SimplexRef::from_code(key[0]));
            pl.push(crate::levelwise::value_at(&key[1..], &offs, &y.space, &start));
        }
        pi_images.push(pl);
        x_images.push(xl);
    }
    let pi = SMap::new(total.clone(), y.space.clone(), pi_images)?;
    let to_x = SMap::new(total.clone(), x.clone(), x_images)?;
    Ok(PathSpace { total: TruncatedSSet { space: total, cap: Some(cap), kan: y.kan }, pi, to_x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FinCategory;
    use crate::homology::groupoid_nerve;
    use crate::simplex::{boundary, circle, standard_simplex};

    fn exact(x: FinSSet) -> TruncatedSSet {
        TruncatedSSet::exact(x)
    }

    #[test]
    fn function_complex_examples() {
        let pt = Arc::new(standard_simplex(0));
        let d1 = exact(standard_simplex(1));
        // hom(Δ⁰, Y) ≅ Y
        let h = function_complex(pt.clone(), &d1, 3).unwrap();
        assert_eq!(h.complex.counts(), vec![2, 1]);
        // hom(∂Δ¹, Δ¹)₀: pairs of vertices
        let h = function_complex(Arc::new(boundary(1)), &d1, 2).unwrap();
        assert_eq!(h.complex.counts()[0], 4);
        assert!(h.complex.space.validate().is_empty());
        // hom(Δ¹, Δ⁰) = Δ⁰
        let h = function_complex(Arc::new(standard_simplex(1)), &exact(standard_simplex(0)), 3).unwrap();
        assert_eq!(h.complex.counts(), vec![1]);
    }

    #[test]
    fn function_complex_into_groupoid_nerve() {
        let bz2 = groupoid_nerve(&FinCategory::cyclic_group(2), 4).unwrap();
        let h = function_complex(Arc::new(standard_simplex(0)), &bz2, 3).unwrap();
        assert_eq!(h.complex.counts(), vec![1, 1, 1, 1]);
        assert!(h.complex.kan);
        let h = function_complex(Arc::new(circle()), &bz2, 3).unwrap();
        // maps S¹ → B(Z/2) are the two group elements
        assert_eq!(h.complex.counts()[0], 2);
    }

    #[test]
    fn ex_examples() {
        let e = ex(Arc::new(standard_simplex(0)), 3).unwrap();
        assert_eq!(e.ex.counts(), vec![1]);
        let c = Arc::new(circle());
        let e = ex(c.clone(), 2).unwrap();
        assert_eq!(e.ex.counts()[0], 1);
        assert_eq!(e.levels.all_count(1), 4);
        assert!(e.ex.space.validate().is_empty());
        assert!(e.natural.validate().is_empty());
    }

    #[test]
    fn path_space_examples() {
        let pt = Arc::new(standard_simplex(0));
        let id = SMap::identity(pt.clone());
        let ps = path_space_replacement(&id, &exact(standard_simplex(0)), 2).unwrap();
        assert_eq!(ps.total.counts(), vec![1]);
        let bz2 = groupoid_nerve(&FinCategory::cyclic_group(2), 3).unwrap();
        let incl = SMap::new(pt, bz2.space.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0))]]).unwrap();
        let ps = path_space_replacement(&incl, &bz2, 2).unwrap();
        assert_eq!(ps.total.counts()[0], 2);
        assert!(ps.pi.validate().is_empty());
        assert!(ps.to_x.validate().is_empty());
    }
}
