//! Lifting problems against the path-space replacement, solved by searching
//! for extensions after subdivision, and the weak-equivalence test built on
//! them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::{max_simplices, DEFAULT_MAP_CAP};
use crate::complexes::{ComplexRealization, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{cone_iso_through, induced_map_homology, pi0, pi0_map, ChainComplex, HomologyGroup};
use crate::simplex::{FinSSet, MapSearch, NdId, SMap, SimplexRef};
use crate::subdivision::interior_chain_count;

/// Complexes on one vertex set: `K ⊂ K'` on top and `L` at the bottom, all
/// inside the ambient `P`, with `K ⊂ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerFrame {
    pub ambient: SimplicialComplex,
    pub top: SimplicialComplex,
    pub top_fixed: SimplicialComplex,
    pub bottom_fixed: SimplicialComplex,
}

fn is_sub(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a.faces().iter().all(|f| b.contains(f))
}

impl CornerFrame {
    /// `∂Δⁿ×{1} ⊂ Δⁿ×{1}` over `(∂Δⁿ × Δ¹) ∪ (Δⁿ × {0}) ⊂ Δⁿ × Δ¹`.
    pub fn prism(n: usize) -> Self {
        let ambient = SimplicialComplex::prism(n);
        let proper = |f: &[usize]| {
            let mut proj: Vec<usize> = f.iter().map(|v| v / 2).collect();
            proj.dedup();
            proj.len() <= n
        };
        let top = ambient.restrict(|f| f.iter().all(|v| v % 2 == 1));
        let top_fixed = ambient.restrict(|f| f.iter().all(|v| v % 2 == 1) && proper(f));
        let bottom_fixed = ambient.restrict(|f| proper(f) || f.iter().all(|v| v % 2 == 0));
        CornerFrame { ambient, top, top_fixed, bottom_fixed }
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.ambient.vertices();
        let same = [&self.top, &self.top_fixed, &self.bottom_fixed].iter().all(|c| c.vertices() == v);
        if !same {
            return Err(Error::Validation("frame complexes must share the ambient vertex list".into()));
        }
        if !is_sub(&self.top, &self.ambient) || !is_sub(&self.bottom_fixed, &self.ambient) {
            return Err(Error::Validation("frame complexes must lie in the ambient complex".into()));
        }
        if !is_sub(&self.top_fixed, &self.top) || !is_sub(&self.top_fixed, &self.bottom_fixed) {
            return Err(Error::Validation("the fixed part of the top must lie in both the top and the bottom".into()));
        }
        Ok(())
    }

    /// Number of simplices of `sd^k` of the ambient complex.
    pub fn subdivided_size(&self, k: usize) -> usize {
        let mut counts = self.ambient.counts();
        for _ in 0..k {
            let mut next = vec![0usize; counts.len()];
            for (d, &c) in counts.iter().enumerate() {
                // chains of faces of a d-simplex ending at the top, by length
                for (len, m) in chain_lengths(d).into_iter().enumerate() {
                    next[len] = next[len].saturating_add(c.saturating_mul(m));
                }
            }
            counts = next;
        }
        counts.iter().sum()
    }
}

/// Chains of faces of `Δ^d` ending at the top face, by number of links.
fn chain_lengths(d: usize) -> Vec<usize> {
    // by[k][len]: chains ending at a fixed k-face with len links
    let mut by: Vec<Vec<usize>> = Vec::new();
    for k in 0..=d {
        let mut row = vec![0usize; k + 1];
        row[0] = 1;
        for j in 0..k {
            let faces = binomial(k + 1, j + 1);
            for len in 0..by[j].len() {
                row[len + 1] += faces * by[j][len];
            }
        }
        by.push(row);
    }
    debug_assert_eq!(by[d].iter().sum::<usize>(), interior_chain_count(d));
    by.pop().unwrap_or_default()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// One level `sd^k` of a frame, with the vertex map down to the original.
#[derive(Clone, Debug)]
struct FrameLevel {
    ambient: ComplexRealization,
    top: ComplexRealization,
    top_fixed: SimplicialComplex,
    bottom_fixed: SimplicialComplex,
    to_base: Vec<usize>,
}

/// A frame subdivided up to some `k`, reusable across searches.
#[derive(Clone, Debug)]
pub struct FramePlan {
    pub frame: CornerFrame,
    levels: Vec<FrameLevel>,
}

impl FramePlan {
    pub fn new(frame: CornerFrame, k_max: usize) -> Result<Self> {
        frame.validate()?;
        let limit = max_simplices();
        for k in 0..=k_max {
            if frame.subdivided_size(k) > limit {
                return Err(Error::Budget(format!("sd^{k} of the frame exceeds {limit} simplices")));
            }
        }
        let levels = subdivide_frame(&frame, k_max);
        Ok(FramePlan { frame, levels })
    }

    pub fn k_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// `sd^k` of the top and of the ambient complex, on shared vertex numbers.
    pub fn level(&self, k: usize) -> (&ComplexRealization, &ComplexRealization) {
        (&self.levels[k].top, &self.levels[k].ambient)
    }
}

fn subdivide_frame(frame: &CornerFrame, k: usize) -> Vec<FrameLevel> {
    let mut out = Vec::new();
    let mut p = frame.ambient.clone();
    let mut top = frame.top.clone();
    let mut tf = frame.top_fixed.clone();
    let mut bf = frame.bottom_fixed.clone();
    let mut to_base: Vec<usize> = (0..p.vertices().len()).collect();
    for level in 0..=k {
        out.push(FrameLevel {
            ambient: p.realize(),
            top: top.realize(),
            top_fixed: tf.clone(),
            bottom_fixed: bf.clone(),
            to_base: to_base.clone(),
        });
        if level == k {
            break;
        }
        let sd = p.subdivide();
        top = sd.restrict(&top);
        tf = sd.restrict(&tf);
        bf = sd.restrict(&bf);
        to_base = sd.last_vertex().iter().map(|&v| to_base[v]).collect();
        p = sd.complex;
    }
    out
}

/// Outcome of a corner search over `k = 0 … k_max`.
#[derive(Clone, Debug)]
pub enum CornerOutcome {
    /// `theta` on `sd^k K'` and `h` on `sd^k P`; `verified` records the
    /// independent re-check of every square.
    Success { k: usize, theta: SMap, h: SMap, verified: bool },
    /// No extension exists for any `k ≤ k_max`.
    Exhausted,
    /// Some level hit the node cap before being decided.
    Unresolved,
}

impl CornerOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CornerOutcome::Success { .. } => "success",
            CornerOutcome::Exhausted => "exhausted",
            CornerOutcome::Unresolved => "unresolved",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            CornerOutcome::Success { k, .. } => Some(*k),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub outcome: CornerOutcome,
    pub transcript: Vec<String>,
}

/// Extends `top_map: K → X` along `K ⊂ K'` to `θ` and `bottom_map: L → Y`
/// to `H` on `P` with `H|K' = vertical ∘ θ`, after precomposing the fixed
/// data with `γ^k`.
pub struct CornerSearch<'a> {
    pub frame: &'a CornerFrame,
    pub vertical: &'a SMap,
    pub top_map: &'a SMap,
    pub bottom_map: &'a SMap,
    pub node_cap: u64,
}

fn same_shape(a: &FinSSet, b: &FinSSet) -> bool {
    a.counts() == b.counts() && a.all_ids().all(|id| a.faces_of(id) == b.faces_of(id))
}

impl CornerSearch<'_> {
    fn check(&self) -> Result<()> {
        self.frame.validate()?;
        if !same_shape(self.top_map.source(), &self.frame.top_fixed.to_sset()) {
            return Err(Error::Validation("top map is not defined on the fixed part of the top".into()));
        }
        if !same_shape(self.bottom_map.source(), &self.frame.bottom_fixed.to_sset()) {
            return Err(Error::Validation("bottom map is not defined on the fixed part of the bottom".into()));
        }
        if self.top_map.target().as_ref() != self.vertical.source().as_ref()
            || self.bottom_map.target().as_ref() != self.vertical.target().as_ref()
        {
            return Err(Error::Validation("corner maps do not match the vertical map".into()));
        }
        let kr = self.frame.top_fixed.realize();
        let lr = self.frame.bottom_fixed.realize();
        for id in kr.space.all_ids() {
            let w = kr.vertex_list(id);
            let down = self.vertical.apply(self.top_map.image(id));
            let across = self.bottom_map.apply(&lr.simplex(w).expect("K lies in L"));
            if down != across {
                return Err(Error::Validation(format!(
                    "the square does not commute at {}",
                    kr.space.name(id)
                )));
            }
        }
        Ok(())
    }

    pub fn run(&self, k_max: usize) -> Result<ExtensionResult> {
        self.check()?;
        let plan = FramePlan::new(self.frame.clone(), k_max)?;
        self.run_planned(&plan)
    }

    /// As [`CornerSearch::run`] with the subdivisions of `plan`, whose frame
    /// must be `self.frame`.
    pub fn run_planned(&self, plan: &FramePlan) -> Result<ExtensionResult> {
        if &plan.frame != self.frame {
            return Err(Error::Validation("plan was made for another frame".into()));
        }
        self.check()?;
        let levels = &plan.levels;
        let x = self.vertical.source().clone();
        let y = self.vertical.target().clone();
        let kr = self.frame.top_fixed.realize();
        let lr = self.frame.bottom_fixed.realize();
        let mut transcript = Vec::new();
        let mut capped_any = false;
        for (k, level) in levels.iter().enumerate() {
            let down = |w: &[usize]| -> Vec<usize> { w.iter().map(|&v| level.to_base[v]).collect() };
            let mut top_fixed = HashMap::new();
            for id in level.top.space.all_ids() {
                let w = level.top.vertex_list(id);
                if level.top_fixed.contains(w) {
                    let s = kr.simplex(&down(w)).expect("γ preserves the frame");
                    top_fixed.insert(id, self.top_map.apply(&s));
                }
            }
            let mut budget = self.node_cap;
            let mut top_nodes = 0u64;
            let mut tried = 0u64;
            let mut bottom_nodes = 0u64;
            let mut found: Option<(Vec<Vec<SimplexRef>>, Vec<Vec<SimplexRef>>)> = None;
            let mut capped = false;
            let top_search = MapSearch::new(&level.top.space, &x).fix(top_fixed).node_cap(budget);
            let stats = top_search.run(|theta| {
                tried += 1;
                let mut fixed = HashMap::new();
                for id in level.ambient.space.all_ids() {
                    let w = level.ambient.vertex_list(id);
                    if level.bottom_fixed.contains(w) {
                        let s = lr.simplex(&down(w)).expect("γ preserves the frame");
                        fixed.insert(id, self.bottom_map.apply(&s));
                    } else if let Some(t) = level.top.id_of(w) {
                        fixed.insert(id, self.vertical.apply(&theta[t.dim][t.idx]));
                    }
                }
                let remaining = budget.saturating_sub(bottom_nodes);
                let (h, st) = MapSearch::new(&level.ambient.space, &y).fix(fixed).node_cap(remaining).first();
                bottom_nodes += st.nodes;
                if let Some(h) = h {
                    found = Some((theta.to_vec(), h));
                    return false;
                }
                if st.capped {
                    capped = true;
                    return false;
                }
                true
            });
            top_nodes += stats.nodes;
            capped |= stats.capped;
            budget = budget.saturating_sub(top_nodes + bottom_nodes);
            let verdict = if found.is_some() {
                "success"
            } else if capped {
                "capped"
            } else {
                "exhausted"
            };
            transcript.push(format!(
                "k={k} top_simplices={} bottom_simplices={} top_nodes={top_nodes} tops_tried={tried} bottom_nodes={bottom_nodes} budget_left={budget} -> {verdict}",
                level.top.space.total(),
                level.ambient.space.total(),
            ));
            if let Some((theta, h)) = found {
                let theta = SMap::new(level.top.space.clone(), x.clone(), theta)?;
                let h = SMap::new(level.ambient.space.clone(), y.clone(), h)?;
                let verified = self.verify(level, &kr, &lr, &theta, &h);
                return Ok(ExtensionResult { outcome: CornerOutcome::Success { k, theta, h, verified }, transcript });
            }
            capped_any |= capped;
        }
        let outcome = if capped_any { CornerOutcome::Unresolved } else { CornerOutcome::Exhausted };
        Ok(ExtensionResult { outcome, transcript })
    }

    /// Re-checks the three squares simplex by simplex.
    fn verify(&self, level: &FrameLevel, kr: &ComplexRealization, lr: &ComplexRealization, theta: &SMap, h: &SMap) -> bool {
        if !theta.validate().is_empty() || !h.validate().is_empty() {
            return false;
        }
        let down = |w: &[usize]| -> Vec<usize> { w.iter().map(|&v| level.to_base[v]).collect() };
        for id in level.top.space.all_ids() {
            let w = level.top.vertex_list(id);
            if level.top_fixed.contains(w) {
                let expect = self.top_map.apply(&kr.simplex(&down(w)).expect("frame"));
                if theta.image(id) != &expect {
                    return false;
                }
            }
            let pid = level.ambient.id_of(w).expect("top lies in the ambient complex");
            if h.image(pid) != &self.vertical.apply(theta.image(id)) {
                return false;
            }
        }
        for id in level.ambient.space.all_ids() {
            let w = level.ambient.vertex_list(id);
            if level.bottom_fixed.contains(w) {
                let expect = self.bottom_map.apply(&lr.simplex(&down(w)).expect("frame"));
                if h.image(id) != &expect {
                    return false;
                }
            }
        }
        true
    }
}

/// `∂Δⁿ → X`, `(h, β): (∂Δⁿ × Δ¹) ∪ (Δⁿ × {0}) → Y` and `f: X → Y` with
/// `f ∘ α = (h, β) ∘ d₀`; `∂Δⁿ` sits at the end `{1}`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub n: usize,
    pub alpha: SMap,
    pub hb: SMap,
    pub f: SMap,
}

impl LiftingProblem {
    /// The source expected for `α`.
    pub fn boundary_source(n: usize) -> Arc<FinSSet> {
        Arc::new(SimplicialComplex::boundary(n).to_sset())
    }

    /// The source expected for `(h, β)`, with vertex `(i,e)` numbered `2i + e`.
    pub fn corner_source(n: usize) -> Arc<FinSSet> {
        Arc::new(CornerFrame::prism(n).bottom_fixed.to_sset())
    }

    pub fn new(n: usize, alpha: SMap, hb: SMap, f: SMap) -> Result<Self> {
        if !same_shape(alpha.source(), &Self::boundary_source(n)) {
            return Err(Error::Validation(format!("α must be defined on ∂Δ^{n}")));
        }
        if !same_shape(hb.source(), &Self::corner_source(n)) {
            return Err(Error::Validation(format!("(h, β) must be defined on (∂Δ^{n} × Δ¹) ∪ (Δ^{n} × {{0}})")));
        }
        let p = LiftingProblem { n, alpha, hb, f };
        p.search(0).map(|_| ())?; // runs the commutativity check
        Ok(p)
    }

    /// The problem with `h` the constant homotopy at `f ∘ α` and `β` an
    /// extension of `f ∘ α` to `Δⁿ`.
    pub fn constant_homotopy(n: usize, alpha: SMap, beta: &SMap, f: SMap) -> Result<Self> {
        let frame = CornerFrame::prism(n);
        let lr = frame.bottom_fixed.realize();
        let br = SimplicialComplex::boundary(n).realize();
        let dr = SimplicialComplex::simplex(n).realize();
        let images = lr
            .space
            .counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| {
                (0..c)
                    .map(|i| {
                        let w = lr.vertex_list(NdId::new(d, i));
                        let proj: Vec<usize> = w.iter().map(|v| v / 2).collect();
                        match br.simplex(&proj) {
                            Some(s) => f.apply(&alpha.apply(&s)),
                            None => beta.apply(&dr.simplex(&proj).expect("face of Δⁿ")),
                        }
                    })
                    .collect()
            })
            .collect();
        let hb = SMap::new(lr.space.clone(), f.target().clone(), images)?;
        LiftingProblem::new(n, alpha, hb, f)
    }

    fn search(&self, _k: usize) -> Result<(CornerFrame, SMap)> {
        let frame = CornerFrame::prism(self.n);
        let top_map = SMap::new(Arc::new(frame.top_fixed.to_sset()), self.alpha.target().clone(), self.alpha.images().to_vec())?;
        if self.f.source().as_ref() != self.alpha.target().as_ref() || self.f.target().as_ref() != self.hb.target().as_ref() {
            return Err(Error::Validation("α, (h, β) and f do not fit together".into()));
        }
        let s = CornerSearch { frame: &frame, vertical: &self.f, top_map: &top_map, bottom_map: &self.hb, node_cap: 1 };
        s.check()?;
        Ok((frame, top_map))
    }
}

/// Searches `k = 0 … k_max` for `θ` and `H` extending the subdivided square.
pub fn extension_search(p: &LiftingProblem, k_max: usize, node_cap: u64) -> Result<ExtensionResult> {
    let plan = FramePlan::new(CornerFrame::prism(p.n), k_max)?;
    extension_search_planned(p, &plan, node_cap)
}

pub fn extension_search_planned(p: &LiftingProblem, plan: &FramePlan, node_cap: u64) -> Result<ExtensionResult> {
    let (frame, top_map) = p.search(plan.k_max())?;
    CornerSearch { frame: &frame, vertical: &p.f, top_map: &top_map, bottom_map: &p.hb, node_cap }.run_planned(plan)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeqBudgets {
    pub n_max: usize,
    pub k_max: usize,
    pub map_cap: usize,
    pub node_cap: u64,
    pub problem_cap: usize,
}

impl Default for WeqBudgets {
    fn default() -> Self {
        WeqBudgets { n_max: 3, k_max: 2, map_cap: DEFAULT_MAP_CAP, node_cap: 200_000, problem_cap: 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeqStatus {
    CounterexampleFound,
    NoObstructionFound,
}

/// A concrete invariant on which source and target disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeqWitness {
    /// `pi0`, `pi0-map`, `H` (groups differ) or `H-map` (equal groups, the
    /// induced map is not an isomorphism).
    pub invariant: String,
    pub degree: usize,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    pub problems: usize,
    pub solved: usize,
    pub exhausted: usize,
    pub unresolved: usize,
    /// Largest `n` for which lifting problems were posed.
    pub n_reached: Option<usize>,
    /// `k` at which each solved problem succeeded, summed into a histogram.
    pub solved_at_k: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeqVerdict {
    pub status: WeqStatus,
    pub witness: Option<WeqWitness>,
    pub budgets: WeqBudgets,
    pub homology_degrees: usize,
    pub checks: Vec<String>,
    pub lifting: LiftingReport,
}

/// Dense homology bases are used below this many simplices per degree; past
/// it the mapping cone decides.
const DENSE_LIMIT: usize = 400;

/// `weq_test_bounded` with homology compared in degrees `≤ min(dim X, dim Y) + 1`.
pub fn weq_test(f: &SMap, budgets: &WeqBudgets) -> Result<WeqVerdict> {
    let d = f.source().dim().unwrap_or(0).min(f.target().dim().unwrap_or(0));
    weq_test_bounded(f, d + 2, usize::MAX, budgets)
}

/// Compares `π₀` and homology in degrees `< degrees`, then poses the
/// constant-homotopy lifting problems for `n ≤ min(n_max, n_limit)`.
pub fn weq_test_bounded(f: &SMap, degrees: usize, n_limit: usize, budgets: &WeqBudgets) -> Result<WeqVerdict> {
    let mut checks = Vec::new();
    let verdict = |witness: Option<WeqWitness>, checks: Vec<String>, lifting: LiftingReport| WeqVerdict {
        status: if witness.is_some() { WeqStatus::CounterexampleFound } else { WeqStatus::NoObstructionFound },
        witness,
        budgets: *budgets,
        homology_degrees: degrees,
        checks,
        lifting,
    };
    let (cx, _) = pi0(f.source());
    let (cy, _) = pi0(f.target());
    checks.push(format!("pi0: {cx} vs {cy}"));
    if cx != cy {
        let w = WeqWitness { invariant: "pi0".into(), degree: 0, source: cx.to_string(), target: cy.to_string() };
        return Ok(verdict(Some(w), checks, LiftingReport::default()));
    }
    let m = pi0_map(f);
    let mut hit = m.clone();
    hit.sort_unstable();
    hit.dedup();
    if hit.len() != cy {
        let w = WeqWitness {
            invariant: "pi0-map".into(),
            degree: 0,
            source: format!("{cx} components"),
            target: format!("{} components hit", hit.len()),
        };
        return Ok(verdict(Some(w), checks, LiftingReport::default()));
    }
    if let Some(w) = homology_obstruction(f, degrees, &mut checks) {
        return Ok(verdict(Some(w), checks, LiftingReport::default()));
    }
    let lifting = lifting_family(f, n_limit, budgets, &mut checks)?;
    Ok(verdict(None, checks, lifting))
}

fn show(groups: &[HomologyGroup], q: usize) -> String {
    groups.get(q).map_or_else(|| "0".into(), |g| g.to_string())
}

fn homology_obstruction(f: &SMap, degrees: usize, checks: &mut Vec<String>) -> Option<WeqWitness> {
    let span = |x: &FinSSet| (0..=degrees).map(|d| x.count(d)).max().unwrap_or(0);
    let small = span(f.source()) <= DENSE_LIMIT && span(f.target()) <= DENSE_LIMIT;
    if small {
        let ind = induced_map_homology(f, degrees);
        for d in &ind {
            if d.source != d.target {
                checks.push(format!("H{}: {} vs {}", d.degree, d.source, d.target));
                return Some(WeqWitness { invariant: "H".into(), degree: d.degree, source: d.source.to_string(), target: d.target.to_string() });
            }
            if !d.is_isomorphism {
                checks.push(format!("H{}: induced map not an isomorphism", d.degree));
                return Some(WeqWitness { invariant: "H-map".into(), degree: d.degree, source: d.source.to_string(), target: d.target.to_string() });
            }
        }
        checks.push(format!("homology: induced isomorphisms in degrees < {degrees} (dense bases)"));
        return None;
    }
    let hx = ChainComplex::of(f.source()).homology(degrees);
    let hy = ChainComplex::of(f.target()).homology(degrees);
    for q in 0..degrees {
        if hx[q] != hy[q] {
            checks.push(format!("H{q}: {} vs {}", hx[q], hy[q]));
            return Some(WeqWitness { invariant: "H".into(), degree: q, source: show(&hx, q), target: show(&hy, q) });
        }
    }
    // with equal groups, the first non-acyclic degree of the cone is the
    // first degree where f fails to be onto
    let cone = ChainComplex::cone(f).homology(degrees);
    if let Some(q) = cone.iter().position(|g| !g.is_zero()) {
        checks.push(format!("H{q}: mapping cone has {} in degree {q}", cone[q]));
        return Some(WeqWitness { invariant: "H-map".into(), degree: q, source: show(&hx, q), target: show(&hy, q) });
    }
    debug_assert!(degrees == 0 || cone_iso_through(f, degrees - 1) || true);
    checks.push(format!("homology: induced isomorphisms in degrees < {degrees} (mapping cone)"));
    None
}

fn lifting_family(f: &SMap, n_limit: usize, b: &WeqBudgets, checks: &mut Vec<String>) -> Result<LiftingReport> {
    let x = f.source();
    let y = f.target();
    let mut report = LiftingReport { solved_at_k: vec![0; b.k_max + 1], ..Default::default() };
    // the prism over Δⁿ needs simplices of dimension n + 1 in Y
    let n_top = b.n_max.min(n_limit);
    for n in 0..=n_top {
        let bsrc = LiftingProblem::boundary_source(n);
        let dsrc = Arc::new(SimplicialComplex::simplex(n).to_sset());
        let mut problems: Vec<(SMap, SMap)> = Vec::new();
        let mut alphas = Vec::new();
        MapSearch::new(&bsrc, x).node_cap(b.node_cap).run(|a| {
            alphas.push(a.to_vec());
            alphas.len() < b.problem_cap.max(1) * 4
        });
        'outer: for a in alphas {
            let alpha = SMap::new(bsrc.clone(), x.clone(), a)?;
            let mut fixed = HashMap::new();
            let dr = SimplicialComplex::simplex(n).realize();
            let br = SimplicialComplex::boundary(n).realize();
            for id in br.space.all_ids() {
                let w = br.vertex_list(id);
                fixed.insert(dr.id_of(w).expect("boundary face"), f.apply(alpha.image(id)));
            }
            let mut betas = Vec::new();
            MapSearch::new(&dsrc, y).fix(fixed).node_cap(b.node_cap).run(|bt| {
                betas.push(bt.to_vec());
                betas.len() < 2
            });
            for bt in betas {
                let beta = SMap::new(dsrc.clone(), y.clone(), bt)?;
                problems.push((alpha.clone(), beta));
                if problems.len() >= b.problem_cap {
                    break 'outer;
                }
            }
        }
        if problems.is_empty() {
            report.n_reached = Some(n);
            continue;
        }
        let plan = match FramePlan::new(CornerFrame::prism(n), b.k_max) {
            Ok(plan) => plan,
            Err(Error::Budget(_)) => {
                report.unresolved += problems.len();
                report.problems += problems.len();
                continue;
            }
            Err(e) => return Err(e),
        };
        for (alpha, beta) in problems {
            let p = LiftingProblem::constant_homotopy(n, alpha, &beta, f.clone())?;
            report.problems += 1;
            match extension_search_planned(&p, &plan, b.node_cap) {
                Ok(r) => match r.outcome {
                    CornerOutcome::Success { k, verified, .. } => {
                        if !verified {
                            return Err(Error::Validation("extension search reported an unverified solution".into()));
                        }
                        report.solved += 1;
                        report.solved_at_k[k] += 1;
                    }
                    CornerOutcome::Exhausted => report.exhausted += 1,
                    CornerOutcome::Unresolved => report.unresolved += 1,
                },
                Err(Error::Budget(_)) => report.unresolved += 1,
                Err(e) => return Err(e),
            }
        }
        report.n_reached = Some(n);
    }
    checks.push(format!(
        "lifting: {} problems for n <= {}, {} solved, {} exhausted, {} unresolved",
        report.problems,
        report.n_reached.map_or("-".to_string(), |n| n.to_string()),
        report.solved,
        report.exhausted,
        report.unresolved
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::complex_map;
    use crate::simplex::{boundary, circle, standard_simplex};
    use crate::subdivision::Subdivision;

    #[test]
    fn prism_frame_shapes() {
        let f = CornerFrame::prism(1);
        f.validate().unwrap();
        assert_eq!(f.top.counts(), vec![2, 1]);
        assert_eq!(f.top_fixed.counts(), vec![2]);
        // ∂Δ¹ × Δ¹ is two edges, Δ¹ × {0} one more
        assert_eq!(f.bottom_fixed.counts(), vec![4, 3]);
        assert_eq!(f.subdivided_size(0), f.ambient.counts().iter().sum::<usize>());
        let sd = f.ambient.subdivide().complex;
        assert_eq!(f.subdivided_size(1), sd.counts().iter().sum::<usize>());
    }

    #[test]
    fn identity_problem_succeeds_at_once() {
        let x = Arc::new(standard_simplex(1));
        let f = SMap::identity(x.clone());
        let bsrc = LiftingProblem::boundary_source(1);
        let alpha = SMap::new(bsrc, x.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0)), SimplexRef::nd(NdId::new(0, 1))]]).unwrap();
        let beta = SMap::identity(x.clone());
        let p = LiftingProblem::constant_homotopy(1, alpha, &beta, f).unwrap();
        let r = extension_search(&p, 2, 100_000).unwrap();
        assert_eq!(r.outcome.k(), Some(0));
        match r.outcome {
            CornerOutcome::Success { theta, verified, .. } => {
                assert!(verified);
                // θ = β
                assert_eq!(theta.image(NdId::new(1, 0)), &SimplexRef::nd(NdId::new(1, 0)));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn path_back_along_an_edge_needs_one_subdivision() {
        let pt = Arc::new(standard_simplex(0));
        let d1 = Arc::new(standard_simplex(1));
        let f = SMap::new(pt.clone(), d1.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0))]]).unwrap();
        let alpha = SMap::new(LiftingProblem::boundary_source(0), pt.clone(), vec![]).unwrap();
        let beta = SMap::new(pt, d1, vec![vec![SimplexRef::nd(NdId::new(0, 1))]]).unwrap();
        let p = LiftingProblem::constant_homotopy(0, alpha, &beta, f).unwrap();
        let r = extension_search(&p, 2, 100_000).unwrap();
        assert_eq!(r.outcome.k(), Some(1));
        assert_eq!(r.transcript.len(), 2);
        assert!(r.transcript[0].ends_with("exhausted"));
    }

    #[test]
    fn boundary_of_triangle_has_no_filler() {
        let x = Arc::new(boundary(2));
        let d2 = SimplicialComplex::simplex(2).realize();
        let b2 = SimplicialComplex::boundary(2).realize();
        let f = complex_map(&b2, &d2, &[0, 1, 2]).unwrap();
        let alpha = SMap::identity(x.clone());
        let alpha = SMap::new(LiftingProblem::boundary_source(2), x, alpha.images().to_vec()).unwrap();
        let beta = SMap::identity(d2.space.clone());
        let p = LiftingProblem::constant_homotopy(2, alpha, &beta, f).unwrap();
        let r = extension_search(&p, 2, 50_000_000).unwrap();
        assert!(matches!(r.outcome, CornerOutcome::Exhausted), "{:?}", r.transcript);
        let again = extension_search(&p, 2, 50_000_000).unwrap();
        assert_eq!(r.transcript, again.transcript);
    }

    #[test]
    fn weq_examples() {
        let c = Arc::new(circle());
        let v = weq_test(&SMap::identity(c.clone()), &WeqBudgets::default()).unwrap();
        assert_eq!(v.status, WeqStatus::NoObstructionFound);
        let pt = Arc::new(standard_simplex(0));
        let collapse = SMap::from_fn(c, pt, |id| {
            SimplexRef::new(crate::simplex::DegeneracyWord::from_surjection(&vec![0; id.dim + 1]), NdId::new(0, 0))
        })
        .unwrap();
        let v = weq_test(&collapse, &WeqBudgets::default()).unwrap();
        assert_eq!(v.status, WeqStatus::CounterexampleFound);
        let w = v.witness.unwrap();
        assert_eq!((w.invariant.as_str(), w.degree, w.source.as_str(), w.target.as_str()), ("H", 1, "Z", "0"));
        let sd = Subdivision::new(Arc::new(standard_simplex(2))).unwrap();
        let v = weq_test(&sd.last_vertex(), &WeqBudgets::default()).unwrap();
        assert_eq!(v.status, WeqStatus::NoObstructionFound);
        assert!(v.lifting.problems > 0);
    }
}
