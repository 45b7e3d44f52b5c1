//! Backtracking search for simplicial maps, optionally extending fixed values.

use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::codes::{decode_images, offsets, CodeOps, Key};
use super::map::SMap;
use super::sset::{FinSSet, NdId, SimplexRef};
use crate::error::{Error, Result};

type Level = FxHashMap<Vec<u64>, Vec<u64>>;

/// Simplices of a target grouped by their face codes, built lazily per dimension.
pub struct TargetIndex<'a> {
    ops: CodeOps<'a>,
    levels: RefCell<HashMap<usize, Arc<Level>>>,
}

impl<'a> TargetIndex<'a> {
    pub fn new(target: &'a FinSSet) -> Self {
        TargetIndex { ops: CodeOps::new(target), levels: RefCell::new(HashMap::new()) }
    }

    fn level(&self, m: usize) -> Arc<Level> {
        if let Some(l) = self.levels.borrow().get(&m) {
            return l.clone();
        }
        let target = self.ops.space();
        let mut map: Level = FxHashMap::default();
        for z in target.all_simplices(m) {
            let key = if m == 0 { Vec::new() } else { (0..=m).map(|i| target.face(&z, i).code()).collect() };
            map.entry(key).or_default().push(z.code());
        }
        let l = Arc::new(map);
        self.levels.borrow_mut().insert(m, l.clone());
        l
    }

    /// Target `m`-simplices with the given faces (all vertices when `m = 0`).
    pub fn with_faces(&self, m: usize, faces: &[SimplexRef]) -> Vec<SimplexRef> {
        let codes: Vec<u64> = faces.iter().map(SimplexRef::code).collect();
        self.level(m).get(&codes).map_or_else(Vec::new, |v| v.iter().map(|&c| SimplexRef::from_code(c)).collect())
    }
}

/// Outcome counters of one search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    pub capped: bool,
}

/// What a source simplex may be sent to.
enum Slot {
    Free,
    Fixed { code: u64, faces: Vec<u64> },
    Impossible,
}

/// One source simplex in search order with its faces as
/// (flattened position, interned surjection or `None`).
struct Var {
    pos: usize,
    dim: usize,
    faces: Vec<(usize, Option<u32>)>,
    slot: Slot,
}

/// Search for maps `source → target` agreeing with `fixed`.
///
/// Vertices are visited by maximum cardinality search: fixed vertices first,
/// then the vertex with most visited neighbours (ties: higher degree, then
/// lower index). Every other simplex is visited right after the last of its
/// faces, lowest (dimension, index) first, so constraints prune as early as
/// possible. Candidates are tried in the target's enumeration order.
pub struct MapSearch<'a> {
    source: &'a FinSSet,
    index: TargetIndex<'a>,
    fixed: HashMap<NdId, SimplexRef>,
    injective: bool,
    node_cap: u64,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a FinSSet, target: &'a FinSSet) -> Self {
        MapSearch { source, index: TargetIndex::new(target), fixed: HashMap::new(), injective: false, node_cap: u64::MAX }
    }

    pub fn fix(mut self, fixed: HashMap<NdId, SimplexRef>) -> Self {
        self.fixed = fixed;
        self
    }

    /// Restrict to maps sending non-degenerate simplices injectively to
    /// non-degenerate simplices.
    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    fn vertex_order(&self) -> Vec<usize> {
        let src = self.source;
        let nv = src.counts().first().copied().unwrap_or(0);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for i in 0..src.counts().get(1).copied().unwrap_or(0) {
            let vs = src.vertices(&SimplexRef::nd(NdId::new(1, i)));
            let (a, b) = (vs[0].idx, vs[1].idx);
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![0usize; nv];
        let mut done = vec![false; nv];
        let mut out = Vec::with_capacity(nv);
        for _ in 0..nv {
            let v = (0..nv)
                .filter(|&v| !done[v])
                .max_by_key(|&v| (self.fixed.contains_key(&NdId::new(0, v)), seen[v], adj[v].len(), std::cmp::Reverse(v)))
                .expect("vertices remain");
            done[v] = true;
            out.push(v);
            for &w in &adj[v] {
                seen[w] += 1;
            }
        }
        out
    }

    fn order(&self) -> Vec<NdId> {
        let src = self.source;
        let ids: Vec<NdId> = src.all_ids().collect();
        let rank: HashMap<NdId, usize> = ids.iter().enumerate().map(|(r, &id)| (id, r)).collect();
        let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
        for (r, &id) in ids.iter().enumerate() {
            for f in src.faces_of(id) {
                let c = &mut cofaces[rank[&f.base]];
                if !c.contains(&r) {
                    c.push(r);
                }
            }
        }
        let mut placed = vec![false; ids.len()];
        let mut out = Vec::with_capacity(ids.len());
        let roots = self.vertex_order().into_iter().map(|v| rank[&NdId::new(0, v)]).chain(0..ids.len());
        for root in roots {
            let mut stack = vec![root];
            while let Some(r) = stack.pop() {
                if placed[r] {
                    continue;
                }
                placed[r] = true;
                out.push(ids[r]);
                // ready cofaces go next, lowest rank first
                for &t in cofaces[r].iter().rev() {
                    if !placed[t] && src.faces_of(ids[t]).iter().all(|f| placed[rank[&f.base]]) {
                        stack.push(t);
                    }
                }
            }
        }
        out
    }

    fn vars(&self) -> Vec<Var> {
        let offs = offsets(self.source);
        let target = self.index.ops.space();
        self.order()
            .into_iter()
            .map(|x| {
                let faces = self
                    .source
                    .faces_of(x)
                    .iter()
                    .map(|f| {
                        let t = (!f.word.is_empty()).then(|| self.index.ops.intern(&f.word.surjection(f.dim())));
                        (offs[f.base.dim] + f.base.idx, t)
                    })
                    .collect();
                let slot = match self.fixed.get(&x) {
                    None => Slot::Free,
                    Some(v) if v.dim() == x.dim && target.check_ref(v).is_ok() => Slot::Fixed {
                        code: v.code(),
                        faces: if x.dim == 0 { Vec::new() } else { self.index.ops.faces(v.code(), x.dim) },
                    },
                    Some(_) => Slot::Impossible,
                };
                Var { pos: offs[x.dim] + x.idx, dim: x.dim, faces, slot }
            })
            .collect()
    }

    /// Visits every solution as a flattened code key until `visit` returns
    /// `false` or the node cap is hit.
    pub fn run_codes(&self, mut visit: impl FnMut(&[u64]) -> bool) -> SearchStats {
        let mut stats = SearchStats::default();
        let vars = self.vars();
        if vars.is_empty() {
            stats.solutions = 1;
            visit(&[]);
            return stats;
        }
        let dims = self.source.dim().map_or(0, |d| d + 1);
        let levels: Vec<Arc<Level>> = (0..dims).map(|m| self.index.level(m)).collect();
        let ops = &self.index.ops;
        let mut assign: Vec<u64> = vec![u64::MAX; vars.len()];
        let mut used: HashSet<u64> = HashSet::new();
        let mut buf: Vec<u64> = Vec::new();
        let candidates = |var: &Var, assign: &[u64], used: &HashSet<u64>, buf: &mut Vec<u64>| -> Cow<'_, [u64]> {
            buf.clear();
            buf.extend(var.faces.iter().map(|&(p, t)| match t {
                None => assign[p],
                Some(t) => ops.apply(assign[p], t),
            }));
            let cands: Cow<'_, [u64]> = match &var.slot {
                Slot::Free => levels[var.dim].get(buf.as_slice()).map_or(Cow::Owned(Vec::new()), |v| Cow::Borrowed(v.as_slice())),
                Slot::Fixed { code, faces } if faces == buf => Cow::Owned(vec![*code]),
                _ => Cow::Owned(Vec::new()),
            };
            if self.injective {
                // a code without degeneracy bits is its own base
                Cow::Owned(cands.iter().copied().filter(|&c| c & 0xFF_FFFF == 0 && !used.contains(&c)).collect())
            } else {
                cands
            }
        };
        let mut frames: Vec<(Cow<'_, [u64]>, usize)> = vec![(candidates(&vars[0], &assign, &used, &mut buf), 0)];
        while let Some(depth) = frames.len().checked_sub(1) {
            let var = &vars[depth];
            if self.injective {
                used.remove(&assign[var.pos]);
            }
            let frame = &mut frames[depth];
            if frame.1 < frame.0.len() {
                let v = frame.0[frame.1];
                frame.1 += 1;
                stats.nodes += 1;
                if stats.nodes > self.node_cap {
                    stats.capped = true;
                    break;
                }
                if self.injective {
                    used.insert(v);
                }
                assign[var.pos] = v;
                if depth + 1 == vars.len() {
                    stats.solutions += 1;
                    if !visit(&assign) {
                        break;
                    }
                } else {
                    let next = candidates(&vars[depth + 1], &assign, &used, &mut buf);
                    frames.push((next, 0));
                }
            } else {
                assign[var.pos] = u64::MAX;
                frames.pop();
            }
        }
        stats
    }

    /// Visits every solution until `visit` returns `false` or the node cap is hit.
    pub fn run(&self, mut visit: impl FnMut(&[Vec<SimplexRef>]) -> bool) -> SearchStats {
        self.run_codes(|key| visit(&decode_images(key, self.source)))
    }

    pub fn first(&self) -> (Option<Vec<Vec<SimplexRef>>>, SearchStats) {
        let mut found = None;
        let stats = self.run(|s| {
            found = Some(s.to_vec());
            false
        });
        (found, stats)
    }
}

/// All maps `source → target` as flattened code keys, failing with a budget
/// error past `cap` maps.
pub fn enumerate_codes(source: &FinSSet, target: &FinSSet, cap: usize) -> Result<Vec<Key>> {
    let mut out = Vec::new();
    let mut over = false;
    MapSearch::new(source, target).run_codes(|s| {
        if out.len() >= cap {
            over = true;
            return false;
        }
        out.push(s.to_vec());
        true
    });
    if over {
        return Err(Error::Budget(format!("more than {cap} maps")));
    }
    Ok(out)
}

/// All maps `source → target`, failing with a budget error past `cap` maps.
pub fn enumerate_maps(source: &FinSSet, target: &FinSSet, cap: usize) -> Result<Vec<Vec<Vec<SimplexRef>>>> {
    Ok(enumerate_codes(source, target, cap)?.iter().map(|k| decode_images(k, source)).collect())
}

/// An isomorphism `x → y`, if one exists.
pub fn find_isomorphism(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Option<SMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let (found, _) = MapSearch::new(x, y).injective(true).first();
    found.map(|images| SMap::new_unchecked(x.clone(), y.clone(), images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard::{boundary, circle, standard_simplex};

    #[test]
    fn counts_maps() {
        let b = boundary(1);
        let d1 = standard_simplex(1);
        assert_eq!(enumerate_maps(&b, &d1, 100).unwrap().len(), 4);
        // Δ¹ → Δ¹: monotone maps [1] → [1]
        assert_eq!(enumerate_maps(&d1, &d1, 100).unwrap().len(), 3);
        assert_eq!(enumerate_maps(&d1, &circle(), 100).unwrap().len(), 2);
        assert!(enumerate_maps(&d1, &d1, 2).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let a = Arc::new(boundary(2));
        let b = Arc::new(boundary(2));
        let f = find_isomorphism(&a, &b).unwrap();
        assert!(f.is_isomorphism() && f.validate().is_empty());
        assert!(find_isomorphism(&a, &Arc::new(standard_simplex(2))).is_none());
    }
}
