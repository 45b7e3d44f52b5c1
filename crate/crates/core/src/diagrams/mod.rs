//! Diagrams of finite simplicial sets over finite index categories, pro-maps,
//! the homotopy colimit of hom-complexes and the bounded pro-equivalence check.

pub mod lk;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::DEFAULT_MAP_CAP;
use crate::category::{FinCategory, Functor, Morphism};
use crate::complexes::ComplexRealization;
use crate::error::{Error, Result};
use crate::homology::groupoid_nerve;
use crate::kan_ex::{delta, delta_map, weq_test_bounded, WeqBudgets, WeqStatus, WeqVerdict};
use crate::levelwise::{Key, LevelSource, Levelwise};
use crate::nerve::{CategoryNerve, MorphismString};
use crate::simplex::{enumerate_codes, CodeOps, FinSSet, NdId, Product, Pullback, SMap, SimplexRef, TruncatedSSet};

pub use lk::{
    colim_hom, corner_extension_test, filtered_refinement_solve, realize_lk, CornerTest, LkRealization, RefinementOutcome,
    RefinementProblem,
};

/// A functor `I → sSet` with finite values: one simplicial set per object and
/// one map per morphism (identities included).
#[derive(Clone, Debug)]
pub struct Diagram {
    pub index: Arc<FinCategory>,
    pub objects: Vec<Arc<FinSSet>>,
    pub arrows: Vec<SMap>,
}

impl Diagram {
    pub fn new(index: Arc<FinCategory>, objects: Vec<Arc<FinSSet>>, arrows: Vec<SMap>) -> Result<Self> {
        let d = Diagram { index, objects, arrows };
        let report = d.validate();
        if report.is_empty() {
            Ok(d)
        } else {
            Err(Error::Validation(report.join("; ")))
        }
    }

    /// The diagram with value `x` everywhere and identity maps.
    pub fn constant(index: Arc<FinCategory>, x: Arc<FinSSet>) -> Self {
        let objects = vec![x.clone(); index.object_count()];
        let arrows = (0..index.morphism_count()).map(|_| SMap::identity(x.clone())).collect();
        Diagram { index, objects, arrows }
    }

    /// `x` over the terminal category.
    pub fn single(x: Arc<FinSSet>) -> Self {
        Diagram::constant(Arc::new(FinCategory::terminal()), x)
    }

    /// Functoriality, checked on every identity and every composable pair.
    pub fn validate(&self) -> Vec<String> {
        let c = &self.index;
        let mut report = Vec::new();
        if self.objects.len() != c.object_count() || self.arrows.len() != c.morphism_count() {
            report.push("diagram tables do not match the index category".into());
            return report;
        }
        for (m, f) in self.arrows.iter().enumerate() {
            let mor = c.morphism(m);
            if f.source().as_ref() != self.objects[mor.src].as_ref() || f.target().as_ref() != self.objects[mor.dst].as_ref() {
                report.push(format!("X({}) does not go from X({}) to X({})", mor.id, c.objects()[mor.src], c.objects()[mor.dst]));
            }
            report.extend(f.validate().into_iter().map(|e| format!("X({}): {e}", mor.id)));
        }
        if !report.is_empty() {
            return report;
        }
        for o in 0..c.object_count() {
            if !self.arrows[c.identity(o)].same_as(&SMap::identity(self.objects[o].clone())) {
                report.push(format!("X(id_{}) is not the identity", c.objects()[o]));
            }
        }
        for f in 0..c.morphism_count() {
            for g in c.out_of(c.morphism(f).dst) {
                let composite = self.arrows[g].after(&self.arrows[f]).expect("endpoints checked");
                if !self.arrows[c.compose(g, f)].same_as(&composite) {
                    report.push(format!("X({} ∘ {}) differs from X({}) ∘ X({})", c.morphism(g).id, c.morphism(f).id, c.morphism(g).id, c.morphism(f).id));
                }
            }
        }
        report
    }

    fn max_dim(&self) -> usize {
        self.objects.iter().filter_map(|x| x.dim()).max().unwrap_or(0)
    }
}

/// A pro-map `(α, θ)` from `X` over `I` to `Y` over `J`: a functor
/// `α: J → I` and maps `θ_j: X(α(j)) → Y(j)` natural in `j`.
#[derive(Clone, Debug)]
pub struct ProMap {
    pub alpha: Functor,
    pub x: Arc<Diagram>,
    pub y: Arc<Diagram>,
    pub theta: Vec<SMap>,
}

impl ProMap {
    pub fn new(alpha: Functor, x: Arc<Diagram>, y: Arc<Diagram>, theta: Vec<SMap>) -> Result<Self> {
        let p = ProMap { alpha, x, y, theta };
        let report = p.validate();
        if report.is_empty() {
            Ok(p)
        } else {
            Err(Error::Validation(report.join("; ")))
        }
    }

    pub fn identity(x: Arc<Diagram>) -> Self {
        let theta = x.objects.iter().map(|o| SMap::identity(o.clone())).collect();
        ProMap { alpha: Functor::identity(x.index.clone()), x: x.clone(), y: x, theta }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut report = self.alpha.validate();
        if self.alpha.source.as_ref() != self.y.index.as_ref() || self.alpha.target.as_ref() != self.x.index.as_ref() {
            report.push("α must go from the index of Y to the index of X".into());
        }
        if self.theta.len() != self.y.objects.len() {
            report.push("one component θ_j per object of J is required".into());
        }
        if !report.is_empty() {
            return report;
        }
        let j = &self.y.index;
        for (o, t) in self.theta.iter().enumerate() {
            let src = &self.x.objects[self.alpha.on_objects[o]];
            if t.source().as_ref() != src.as_ref() || t.target().as_ref() != self.y.objects[o].as_ref() {
                report.push(format!("θ_{} does not go from X(α({0})) to Y({0})", j.objects()[o]));
            }
        }
        if !report.is_empty() {
            return report;
        }
        for a in 0..j.morphism_count() {
            let m = j.morphism(a);
            let left = self.theta[m.dst].after(&self.x.arrows[self.alpha.on_morphisms[a]]).expect("checked");
            let right = self.y.arrows[a].after(&self.theta[m.src]).expect("checked");
            if !left.same_as(&right) {
                report.push(format!("θ is not natural at {}", m.id));
            }
        }
        report
    }
}

/// A test object `Z`: a simplicial set taken to be fibrant, or a finite
/// groupoid whose nerve is generated as far as needed.
#[derive(Clone, Debug)]
pub enum FibrantTestObject {
    Assumed { name: String, space: TruncatedSSet },
    Groupoid { name: String, category: FinCategory },
}

impl FibrantTestObject {
    pub fn groupoid(name: &str, category: FinCategory) -> Result<Self> {
        if !category.is_groupoid() {
            return Err(Error::Validation(format!("{name} is not a groupoid")));
        }
        Ok(FibrantTestObject::Groupoid { name: name.into(), category })
    }

    pub fn assumed(name: &str, space: TruncatedSSet) -> Self {
        FibrantTestObject::Assumed { name: name.into(), space }
    }

    pub fn name(&self) -> &str {
        match self {
            FibrantTestObject::Assumed { name, .. } | FibrantTestObject::Groupoid { name, .. } => name,
        }
    }

    /// `Z` known at least through dimension `d`.
    pub fn through(&self, d: usize) -> Result<TruncatedSSet> {
        match self {
            FibrantTestObject::Assumed { name, space } => match space.cap {
                Some(c) if c < d => Err(Error::Validation(format!("{name} is only known through dimension {c}, {d} is needed"))),
                _ => Ok(space.clone()),
            },
            FibrantTestObject::Groupoid { category, .. } => groupoid_nerve(category, d),
        }
    }
}

/// The composite of a run of arrows in a string, identity when empty.
fn composite(c: &FinCategory, start: usize, arrows: &[u64]) -> usize {
    arrows.iter().fold(c.identity(start), |acc, &m| c.compose(m as usize, acc))
}

/// Objects along the string prefix of a key.
fn string_objects(c: &FinCategory, key: &[u64], n: usize) -> Vec<usize> {
    let mut o = vec![key[0] as usize];
    for &m in &key[1..=n] {
        o.push(c.morphism(m as usize).dst);
    }
    o
}

/// `α∘θ` for a string of `n` arrows and monotone `θ: [m] → [n]`, with the
/// arrow `α(θ(m)) → α(n)`.
fn restrict_string(c: &FinCategory, key: &[u64], n: usize, theta: &[usize]) -> (Vec<u64>, usize) {
    let objs = string_objects(c, key, n);
    let arrows = &key[1..=n];
    let mut out = vec![objs[theta[0]] as u64];
    for k in 1..theta.len() {
        out.push(composite(c, objs[theta[k - 1]], &arrows[theta[k - 1]..theta[k]]) as u64);
    }
    let last = theta[theta.len() - 1];
    (out, composite(c, objs[last], &arrows[last..n]))
}

/// All functors `[n] → I`, as a start object followed by `n` arrows.
fn strings(c: &FinCategory, n: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = (0..c.object_count()).map(|o| vec![o as u64]).collect();
    for _ in 0..n {
        level = level
            .into_iter()
            .flat_map(|s| {
                let end = if s.len() == 1 { s[0] as usize } else { c.morphism(*s.last().unwrap() as usize).dst };
                c.out_of(end).into_iter().map(move |m| {
                    let mut t = s.clone();
                    t.push(m as u64);
                    t
                })
            })
            .collect();
    }
    level
}

struct HocolimSource<'a> {
    diagram: &'a Diagram,
    products: &'a [Vec<Product>],
    deltas: &'a [ComplexRealization],
    ops: CodeOps<'a>,
    pulls: HashMap<(usize, usize, Vec<usize>), Pullback>,
    map_cap: usize,
}

impl<'a> HocolimSource<'a> {
    fn pull(&mut self, u: usize, n: usize, theta: &[usize]) -> (usize, usize, Vec<usize>) {
        let k = (u, n, theta.to_vec());
        if !self.pulls.contains_key(&k) {
            let c = &self.diagram.index;
            let m = theta.len() - 1;
            let (src, dst) = (c.morphism(u).src, c.morphism(u).dst);
            let t = delta_map(&self.deltas[m], &self.deltas[n], theta);
            let g = self.products[src][m].map_into(&self.products[dst][n], &self.diagram.arrows[u], &t);
            self.pulls.insert(k.clone(), Pullback::new(&g, &self.ops));
        }
        k
    }
}

impl LevelSource for HocolimSource<'_> {
    fn keys(&mut self, n: usize) -> Result<Vec<Key>> {
        let c = &self.diagram.index;
        let mut taus: HashMap<usize, Vec<Key>> = HashMap::new();
        let mut out = Vec::new();
        for s in strings(c, n) {
            let end = *string_objects(c, &s, n).last().unwrap();
            if !taus.contains_key(&end) {
                let maps = enumerate_codes(self.products[end][n].space(), self.ops.space(), self.map_cap).map_err(|_| {
                    Error::Budget(format!("more than {} maps X({}) × Δ^{n} → Z", self.map_cap, c.objects()[end]))
                })?;
                taus.insert(end, maps);
            }
            for tau in &taus[&end] {
                let mut key = s.clone();
                key.extend_from_slice(tau);
                out.push(key);
            }
            if out.len() > self.map_cap {
                return Err(Error::Budget(format!("more than {} hocolim {n}-simplices", self.map_cap)));
            }
        }
        Ok(out)
    }

    fn act(&mut self, key: &[u64], n: usize, theta: &[usize]) -> Key {
        let (mut out, u) = restrict_string(&self.diagram.index, key, n, theta);
        let tau = &key[n + 1..];
        let k = self.pull(u, n, theta);
        out.extend(self.pulls[&k].apply(tau, &self.ops));
        out
    }

    fn fixes(&mut self, key: &[u64], n: usize, theta: &[usize]) -> bool {
        let (prefix, u) = restrict_string(&self.diagram.index, key, n, theta);
        if prefix[..] != key[..=n] {
            return false;
        }
        let k = self.pull(u, n, theta);
        self.pulls[&k].fixes(&key[n + 1..], &self.ops)
    }

    fn name(&self, n: usize, i: usize, _key: &[u64]) -> String {
        format!("h{n}_{i}")
    }
}

/// `hocolim_I hom(X, Z)` through dimension `cap`. An `n`-simplex is a string
/// `α: [n] → I` with a map `τ: X(α(n)) × Δⁿ → Z`.
#[derive(Clone, Debug)]
pub struct Hocolim {
    pub diagram: Arc<Diagram>,
    pub z: TruncatedSSet,
    pub cap: usize,
    pub complex: TruncatedSSet,
    pub levels: Levelwise,
    products: Vec<Vec<Product>>,
    deltas: Vec<ComplexRealization>,
}

impl Hocolim {
    fn source(&self) -> HocolimSource<'_> {
        HocolimSource {
            diagram: &self.diagram,
            products: &self.products,
            deltas: &self.deltas,
            ops: CodeOps::new(&self.z.space),
            pulls: HashMap::new(),
            map_cap: usize::MAX,
        }
    }

    /// The key `(α, τ)` of any simplex, degenerate ones included.
    pub fn key_of(&self, x: &SimplexRef) -> Key {
        let base = self.levels.key(x.base);
        if x.word.is_empty() {
            return base.to_vec();
        }
        self.source().act(base, x.base.dim, &x.word.surjection(x.dim()))
    }

    /// The simplex with key `(α, τ)`, if it was enumerated.
    pub fn simplex_of(&self, n: usize, key: &[u64]) -> Option<SimplexRef> {
        self.levels.lookup(n, key).cloned()
    }

    /// The string `α` of a key of dimension `n`.
    pub fn string(&self, key: &[u64], n: usize) -> MorphismString {
        MorphismString { start: key[0] as usize, arrows: key[1..=n].iter().map(|&m| m as usize).collect() }
    }

    /// The last object `α(n)` of a key of dimension `n`.
    pub fn end(&self, key: &[u64], n: usize) -> usize {
        *string_objects(&self.diagram.index, key, n).last().unwrap()
    }

    /// `X(α(n)) × Δⁿ` for the last object of a key.
    pub fn product(&self, object: usize, n: usize) -> &Product {
        &self.products[object][n]
    }

    /// The map `τ: X(α(n)) × Δⁿ → Z` of a key of dimension `n`.
    pub fn tau(&self, key: &[u64], n: usize) -> SMap {
        let p = self.product(self.end(key, n), n);
        let images = crate::levelwise::decode_images(&key[n + 1..], p.space());
        SMap::new(p.space().clone(), self.z.space.clone(), images).expect("enumerated map")
    }

    /// The nerve of the index category at the same truncation.
    pub fn index_nerve(&self) -> Result<CategoryNerve> {
        CategoryNerve::new(self.diagram.index.clone(), Some(self.cap))
    }

    /// `(α, τ) ↦ α` into the nerve of the index category.
    pub fn projection(&self, nerve: &CategoryNerve) -> Result<SMap> {
        let images = self
            .complex
            .space
            .counts()
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                (0..c)
                    .map(|i| {
                        let s = self.string(self.levels.key(NdId::new(n, i)), n);
                        nerve.simplex(&s).ok_or_else(|| Error::Budget("index nerve is truncated below the hocolim".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SMap::new(self.complex.space.clone(), nerve.space().clone(), images)
    }
}

pub fn hocolim(x: Arc<Diagram>, z: &FibrantTestObject, cap: usize) -> Result<Hocolim> {
    hocolim_capped(x, z, cap, DEFAULT_MAP_CAP)
}

pub fn hocolim_capped(x: Arc<Diagram>, z: &FibrantTestObject, cap: usize, map_cap: usize) -> Result<Hocolim> {
    let zt = z.through(x.max_dim() + cap)?;
    hocolim_over(x, zt, cap, map_cap)
}

/// As [`hocolim`] with `Z` already generated far enough.
pub fn hocolim_over(x: Arc<Diagram>, z: TruncatedSSet, cap: usize, map_cap: usize) -> Result<Hocolim> {
    let report = x.validate();
    if !report.is_empty() {
        return Err(Error::Validation(report.join("; ")));
    }
    if let Some(c) = z.cap {
        if c < x.max_dim() + cap {
            return Err(Error::Validation(format!("Z is only known through dimension {c}, {} is needed", x.max_dim() + cap)));
        }
    }
    let deltas: Vec<ComplexRealization> = (0..=cap).map(delta).collect();
    let products: Vec<Vec<Product>> =
        x.objects.iter().map(|o| deltas.iter().map(|d| Product::new(o.clone(), d.space.clone())).collect()).collect();
    let levels = {
        let mut src = HocolimSource {
            diagram: &x,
            products: &products,
            deltas: &deltas,
            ops: CodeOps::new(&z.space),
            pulls: HashMap::new(),
            map_cap,
        };
        Levelwise::build(&mut src, cap)?
    };
    let complex = TruncatedSSet { space: Arc::new(levels.space.clone()), cap: Some(cap), kan: false };
    Ok(Hocolim { diagram: x, z, cap, complex, levels, products, deltas })
}

/// The nerve of the category of pairs `(i, g: X(i) → Z)`, with a morphism
/// `(i, g) → (i′, g′)` for each `a: i → i′` with `g = g′ ∘ X(a)`.
pub fn slice_category(x: &Diagram, z: &FinSSet, map_cap: usize) -> Result<FinCategory> {
    let c = &x.index;
    let ops = CodeOps::new(z);
    let maps: Vec<Vec<Key>> = x
        .objects
        .iter()
        .map(|o| enumerate_codes(o, z, map_cap))
        .collect::<Result<Vec<_>>>()?;
    let position: Vec<HashMap<&[u64], usize>> =
        maps.iter().map(|l| l.iter().enumerate().map(|(k, g)| (g.as_slice(), k)).collect()).collect();
    let mut objects = Vec::new();
    let mut object_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, l) in maps.iter().enumerate() {
        for k in 0..l.len() {
            object_of.insert((i, k), objects.len());
            objects.push(format!("{}:{k}", c.objects()[i]));
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_of: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..c.morphism_count() {
        let m = c.morphism(a);
        let pull = Pullback::new(&x.arrows[a], &ops);
        for (k, g) in maps[m.dst].iter().enumerate() {
            let source = position[m.src][pull.apply(g, &ops).as_slice()];
            let (s, t) = (object_of[&(m.src, source)], object_of[&(m.dst, k)]);
            morphism_of.insert((a, t), morphisms.len());
            morphisms.push(Morphism { id: format!("{}@{}", m.id, objects[t]), src: s, dst: t });
        }
    }
    let identities = (0..objects.len())
        .map(|o| {
            let (i, k) = object_of.iter().find(|(_, &v)| v == o).map(|(&p, _)| p).expect("object");
            morphism_of[&(c.identity(i), object_of[&(i, k)])]
        })
        .collect();
    let mut compose = HashMap::new();
    for (&(a, t), &f) in &morphism_of {
        for (&(b, t2), &g) in &morphism_of {
            if morphisms[g].src == t {
                compose.insert((g, f), morphism_of[&(c.compose(b, a), t2)]);
            }
        }
    }
    FinCategory::new(objects, morphisms, identities, compose)
}

pub fn slice_nerve(x: &Diagram, z: &FibrantTestObject, cap: usize) -> Result<TruncatedSSet> {
    let zt = z.through(x.max_dim())?;
    let cat = slice_category(x, &zt.space, DEFAULT_MAP_CAP)?;
    Ok(CategoryNerve::new(Arc::new(cat), Some(cap))?.nerve)
}

/// The map `hocolim_J hom(Y, Z) → hocolim_I hom(X, Z)` of a pro-map, with
/// both homotopy colimits.
#[derive(Clone, Debug)]
pub struct InducedHocolim {
    pub source: Hocolim,
    pub target: Hocolim,
    pub map: SMap,
}

impl InducedHocolim {
    /// Whether `proj_I ∘ map = B(α) ∘ proj_J` holds on every simplex.
    pub fn commutes_with_projections(&self, alpha: &Functor) -> Result<bool> {
        let nj = self.source.index_nerve()?;
        let ni = self.target.index_nerve()?;
        let left = self.target.projection(&ni)?.after(&self.map)?;
        let right = nj.functor_map(&ni, alpha)?.after(&self.source.projection(&nj)?)?;
        Ok(left.same_as(&right))
    }
}

pub fn induced_hocolim_map(p: &ProMap, z: &FibrantTestObject, cap: usize) -> Result<InducedHocolim> {
    induced_hocolim_capped(p, z, cap, DEFAULT_MAP_CAP)
}

pub fn induced_hocolim_capped(p: &ProMap, z: &FibrantTestObject, cap: usize, map_cap: usize) -> Result<InducedHocolim> {
    let report = p.validate();
    if !report.is_empty() {
        return Err(Error::Validation(report.join("; ")));
    }
    let zt = z.through(p.x.max_dim().max(p.y.max_dim()) + cap)?;
    let source = hocolim_over(p.y.clone(), zt.clone(), cap, map_cap)?;
    let target = hocolim_over(p.x.clone(), zt, cap, map_cap)?;
    let ops = CodeOps::new(&source.z.space);
    let mut pulls: HashMap<(usize, usize), Pullback> = HashMap::new();
    let mut images = Vec::new();
    for (n, &c) in source.complex.counts().iter().enumerate() {
        let mut level = Vec::new();
        for i in 0..c {
            let key = source.levels.key(NdId::new(n, i));
            let end = source.end(key, n);
            let mut out: Key = vec![p.alpha.on_objects[key[0] as usize] as u64];
            out.extend(key[1..=n].iter().map(|&m| p.alpha.on_morphisms[m as usize] as u64));
            let pull = pulls.entry((end, n)).or_insert_with(|| {
                let from = target.product(p.alpha.on_objects[end], n);
                let g = from.map_into(source.product(end, n), &p.theta[end], &SMap::identity(from.right().clone()));
                Pullback::new(&g, &ops)
            });
            out.extend(pull.apply(&key[n + 1..], &ops));
            level.push(target.simplex_of(n, &out).ok_or_else(|| Error::Validation("image simplex was not enumerated".into()))?);
        }
        images.push(level);
    }
    let map = SMap::new(source.complex.space.clone(), target.complex.space.clone(), images)?;
    Ok(InducedHocolim { source, target, map })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProEqStatus {
    NotProEquivalence,
    NoObstructionFound,
}

/// Budgets of a pro-equivalence check: the hocolim truncation and the
/// weak-equivalence test budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProEqBudgets {
    pub dim: usize,
    pub weq: WeqBudgets,
}

impl Default for ProEqBudgets {
    fn default() -> Self {
        ProEqBudgets { dim: 3, weq: WeqBudgets::default() }
    }
}

/// One weak-equivalence test inside a pro-equivalence check.
#[derive(Clone, Debug, Serialize)]
pub struct ProEqCheck {
    /// `nerve` or `hocolim:<Z>`.
    pub check: String,
    pub source_counts: Vec<usize>,
    pub target_counts: Vec<usize>,
    pub verdict: WeqVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProEqVerdict {
    pub status: ProEqStatus,
    /// Name of the failing check.
    pub failed: Option<String>,
    pub budgets: ProEqBudgets,
    pub test_objects: Vec<String>,
    pub checks: Vec<ProEqCheck>,
}

fn weq_limits(source: &TruncatedSSet, target: &TruncatedSSet) -> (usize, usize) {
    let degrees = source.homology_bound().min(target.homology_bound());
    let n_limit = match (source.cap, target.cap) {
        (None, None) => usize::MAX,
        (a, b) => a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX)).saturating_sub(1),
    };
    (degrees, n_limit)
}

/// Checks that `B(α): BJ → BI` and the induced maps of homotopy colimits for
/// every test object show no obstruction to being weak equivalences.
/// Stops at the first counterexample; the verdict is relative to `zs`.
pub fn pro_equivalence_check(p: &ProMap, zs: &[FibrantTestObject], budgets: &ProEqBudgets) -> Result<ProEqVerdict> {
    pro_equivalence_check_with(p, zs, budgets, false)
}

fn check_one(name: String, f: &SMap, degrees: usize, n_limit: usize, budgets: &ProEqBudgets) -> Result<ProEqCheck> {
    let verdict = weq_test_bounded(f, degrees, n_limit, &budgets.weq)?;
    Ok(ProEqCheck { check: name, source_counts: f.source().counts(), target_counts: f.target().counts(), verdict })
}

fn check_z(p: &ProMap, z: &FibrantTestObject, budgets: &ProEqBudgets) -> Result<ProEqCheck> {
    let ind = induced_hocolim_capped(p, z, budgets.dim, budgets.weq.map_cap)?;
    let (degrees, n_limit) = weq_limits(&ind.source.complex, &ind.target.complex);
    check_one(format!("hocolim:{}", z.name()), &ind.map, degrees, n_limit, budgets)
}

/// As [`pro_equivalence_check`]; with `parallel` the test objects are checked
/// on separate threads and the first witness in the given order is kept.
pub fn pro_equivalence_check_with(
    p: &ProMap,
    zs: &[FibrantTestObject],
    budgets: &ProEqBudgets,
    parallel: bool,
) -> Result<ProEqVerdict> {
    let report = p.validate();
    if !report.is_empty() {
        return Err(Error::Validation(report.join("; ")));
    }
    let trunc = |c: &Arc<FinCategory>| if c.is_loop_free() { None } else { Some(budgets.dim) };
    let nj = CategoryNerve::new(p.y.index.clone(), trunc(&p.y.index))?;
    let ni = CategoryNerve::new(p.x.index.clone(), trunc(&p.x.index))?;
    let f = nj.functor_map(&ni, &p.alpha)?;
    let (degrees, n_limit) = weq_limits(&nj.nerve, &ni.nerve);
    let degrees = degrees.min(f.source().dim().unwrap_or(0).min(f.target().dim().unwrap_or(0)) + 2);
    let bad = |c: &ProEqCheck| c.verdict.status == WeqStatus::CounterexampleFound;
    let mut checks = vec![check_one("nerve".into(), &f, degrees, n_limit, budgets)?];
    if !bad(&checks[0]) {
        if parallel {
            let results: Vec<Result<ProEqCheck>> = std::thread::scope(|s| {
                let handles: Vec<_> = zs.iter().map(|z| s.spawn(move || check_z(p, z, budgets))).collect();
                handles.into_iter().map(|h| h.join().expect("check thread")).collect()
            });
            for r in results {
                let c = r?;
                let stop = bad(&c);
                checks.push(c);
                if stop {
                    break;
                }
            }
        } else {
            for z in zs {
                let c = check_z(p, z, budgets)?;
                let stop = bad(&c);
                checks.push(c);
                if stop {
                    break;
                }
            }
        }
    }
    let failed = checks.last().filter(|c| bad(c)).map(|c| c.check.clone());
    Ok(ProEqVerdict {
        status: if failed.is_some() { ProEqStatus::NotProEquivalence } else { ProEqStatus::NoObstructionFound },
        failed,
        budgets: *budgets,
        test_objects: zs.iter().map(|z| z.name().to_string()).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kan_ex::function_complex;
    use crate::nerve::nerve;
    use crate::simplex::word::monotone_maps;
    use crate::simplex::{boundary, circle, standard_simplex};

    fn pt() -> Arc<FinSSet> {
        Arc::new(standard_simplex(0))
    }

    fn bz2() -> FibrantTestObject {
        FibrantTestObject::groupoid("B(Z/2)", FinCategory::cyclic_group(2)).unwrap()
    }

    fn interval_of_points() -> Arc<Diagram> {
        Arc::new(Diagram::constant(Arc::new(FinCategory::ordinal(1)), pt()))
    }

    fn same_tables(a: &FinSSet, b: &FinSSet) -> bool {
        a.counts() == b.counts() && a.all_ids().all(|id| a.faces_of(id) == b.faces_of(id))
    }

    #[test]
    fn terminal_index_is_function_complex() {
        for (x, z) in [(circle(), bz2()), (boundary(1), bz2()), (standard_simplex(1), FibrantTestObject::assumed("Δ¹", TruncatedSSet::exact(standard_simplex(1))))] {
            let x = Arc::new(x);
            let h = hocolim(Arc::new(Diagram::single(x.clone())), &z, 3).unwrap();
            let zt = z.through(x.dim().unwrap() + 3).unwrap();
            let fc = function_complex(x, &zt, 3).unwrap();
            assert!(same_tables(&h.complex.space, &fc.complex.space));
        }
    }

    #[test]
    fn constant_point_gives_nerve() {
        let z = FibrantTestObject::assumed("pt", TruncatedSSet::exact(standard_simplex(0)));
        for c in [FinCategory::terminal(), FinCategory::ordinal(1), FinCategory::cospan()] {
            let c = Arc::new(c);
            let h = hocolim(Arc::new(Diagram::constant(c.clone(), pt())), &z, 3).unwrap();
            let n = nerve(&c, Some(3)).unwrap();
            assert!(same_tables(&h.complex.space, &n.space));
        }
    }

    #[test]
    fn interval_into_bz2_has_two_vertices() {
        let h = hocolim(interval_of_points(), &bz2(), 2).unwrap();
        assert_eq!(h.complex.counts()[0], 2);
        assert!(h.complex.space.validate().is_empty());
    }

    #[test]
    fn slice_nerve_examples() {
        let z = FibrantTestObject::assumed("∂Δ¹", TruncatedSSet::exact(boundary(1)));
        assert_eq!(slice_nerve(&interval_of_points(), &z, 3).unwrap().counts(), vec![4, 2]);
        let pt_z = FibrantTestObject::assumed("pt", TruncatedSSet::exact(standard_simplex(0)));
        assert_eq!(slice_nerve(&Diagram::single(pt()), &pt_z, 3).unwrap().counts(), vec![1]);
        let cospan = Arc::new(FinCategory::cospan());
        let s = slice_nerve(&Diagram::constant(cospan.clone(), pt()), &pt_z, 3).unwrap();
        assert_eq!(s.counts(), nerve(&cospan, None).unwrap().counts());
    }

    #[test]
    fn identity_pro_map_induces_identity() {
        let x = interval_of_points();
        let p = ProMap::identity(x);
        let ind = induced_hocolim_map(&p, &bz2(), 2).unwrap();
        assert!(ind.map.is_isomorphism());
        assert!(ind.map.same_as(&SMap::identity(ind.source.complex.space.clone())));
        assert!(ind.commutes_with_projections(&p.alpha).unwrap());
    }

    #[test]
    fn restriction_to_the_target_object() {
        // J terminal, α picks object 1 of [1]
        let x = interval_of_points();
        let j = Arc::new(FinCategory::terminal());
        let alpha = Functor::constant_from_terminal(x.index.clone(), 1);
        let y = Arc::new(Diagram::single(pt()));
        let p = ProMap::new(alpha.clone(), x, y, vec![SMap::identity(pt())]).unwrap();
        assert_eq!(p.alpha.source.as_ref(), j.as_ref());
        let ind = induced_hocolim_map(&p, &bz2(), 2).unwrap();
        assert!(ind.commutes_with_projections(&alpha).unwrap());
        let c = &x_index_end(&ind);
        assert!(c.iter().all(|s| s.arrows.iter().all(|&m| ind.target.diagram.index.is_identity(m)) && s.start == 1));
    }

    fn x_index_end(ind: &InducedHocolim) -> Vec<MorphismString> {
        ind.map
            .images()
            .iter()
            .flatten()
            .map(|s| {
                let k = ind.target.key_of(s);
                ind.target.string(&k, s.dim())
            })
            .collect()
    }

    #[test]
    fn collapse_of_circle_is_detected() {
        let x = Arc::new(Diagram::single(Arc::new(circle())));
        let y = Arc::new(Diagram::single(pt()));
        let collapse = SMap::constant(x.objects[0].clone(), pt(), NdId::new(0, 0)).unwrap();
        let alpha = Functor::identity(x.index.clone());
        let p = ProMap::new(alpha, x, y, vec![collapse]).unwrap();
        let v = pro_equivalence_check(&p, &[bz2()], &ProEqBudgets::default()).unwrap();
        assert_eq!(v.status, ProEqStatus::NotProEquivalence);
        let last = v.checks.last().unwrap();
        let w = last.verdict.witness.as_ref().unwrap();
        assert!(w.invariant.starts_with("pi0"));
        assert_eq!((w.source.as_str(), w.target.as_str()), ("1", "2"));
    }

    #[test]
    fn broken_index_functor_is_detected() {
        let i = Arc::new(FinCategory::discrete(&["a", "b"]));
        let x = Arc::new(Diagram::constant(i.clone(), pt()));
        let y = Arc::new(Diagram::single(pt()));
        let alpha = Functor::constant_from_terminal(i, 0);
        let p = ProMap::new(alpha, x, y, vec![SMap::identity(pt())]).unwrap();
        let v = pro_equivalence_check(&p, &[bz2()], &ProEqBudgets::default()).unwrap();
        assert_eq!(v.status, ProEqStatus::NotProEquivalence);
        assert_eq!(v.failed.as_deref(), Some("nerve"));
    }

    #[test]
    fn identity_has_no_obstruction() {
        let p = ProMap::identity(interval_of_points());
        let v = pro_equivalence_check(&p, &[bz2()], &ProEqBudgets::default()).unwrap();
        assert_eq!(v.status, ProEqStatus::NoObstructionFound);
        assert_eq!(v.checks.len(), 2);
    }

    #[test]
    fn parallel_check_matches_sequential() {
        let x = Arc::new(Diagram::single(Arc::new(circle())));
        let y = Arc::new(Diagram::single(pt()));
        let collapse = SMap::constant(x.objects[0].clone(), pt(), NdId::new(0, 0)).unwrap();
        let p = ProMap::new(Functor::identity(x.index.clone()), x, y, vec![collapse]).unwrap();
        let pz = FibrantTestObject::assumed("pt", TruncatedSSet::exact(standard_simplex(0)));
        let zs = [pz, bz2()];
        let a = pro_equivalence_check_with(&p, &zs, &ProEqBudgets::default(), false).unwrap();
        let b = pro_equivalence_check_with(&p, &zs, &ProEqBudgets::default(), true).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.failed.as_deref(), Some("hocolim:B(Z/2)"));
    }

    #[test]
    fn restriction_is_functorial() {
        let x = interval_of_points();
        let h = hocolim(x, &bz2(), 3).unwrap();
        let mut src = h.source();
        for n in 0..=3 {
            for id in h.complex.space.ids(n) {
                let key = h.levels.key(id).to_vec();
                for m in 0..=3 {
                    for theta in monotone_maps(m, n) {
                        let once = src.act(&key, n, &theta);
                        for k in 0..=3 {
                            for psi in monotone_maps(k, m) {
                                let composite: Vec<usize> = psi.iter().map(|&v| theta[v]).collect();
                                assert_eq!(src.act(&once, m, &psi), src.act(&key, n, &composite));
                            }
                        }
                    }
                }
            }
        }
    }
}
