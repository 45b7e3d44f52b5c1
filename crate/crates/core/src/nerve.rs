//! Nerves of finite posets and finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::max_simplices;
use crate::category::{FinCategory, Functor, Poset};
use crate::error::{Error, Result};
use crate::simplex::{DegeneracyWord, FinSSet, FinSSetBuilder, NdId, SMap, SimplexRef, TruncatedSSet};

/// The nerve of a poset: non-degenerate simplices are strict chains, named
/// `a<b<c`.
#[derive(Clone, Debug)]
pub struct PosetNerve {
    pub space: Arc<FinSSet>,
    chains: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, NdId>,
}

impl PosetNerve {
    pub fn new(p: &Poset) -> Result<Self> {
        let n = p.len();
        let cap = max_simplices();
        let mut b = FinSSetBuilder::new();
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut index = HashMap::new();
        let mut level: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        let mut total = 0;
        while !level.is_empty() {
            level.sort();
            let d = level[0].len() - 1;
            total += level.len();
            if total > cap {
                return Err(Error::Budget(format!("poset nerve exceeds {cap} simplices")));
            }
            for c in &level {
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    (0..=d)
                        .map(|i| {
                            let mut f = c.clone();
                            f.remove(i);
                            SimplexRef::nd(index[&f])
                        })
                        .collect()
                };
                let name = c.iter().map(|&a| p.elements()[a].as_str()).collect::<Vec<_>>().join("<");
                let id = b.add(name, d, faces);
                index.insert(c.clone(), id);
            }
            let next: Vec<Vec<usize>> = level
                .iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap();
                    (0..n).filter(move |&z| p.lt(last, z)).map(move |z| {
                        let mut e = c.clone();
                        e.push(z);
                        e
                    })
                })
                .collect();
            chains.push(std::mem::replace(&mut level, next));
        }
        Ok(PosetNerve { space: Arc::new(b.build()?), chains, index })
    }

    pub fn chain(&self, id: NdId) -> &[usize] {
        &self.chains[id.dim][id.idx]
    }

    /// The simplex of a weakly increasing sequence of elements.
    pub fn chain_simplex(&self, seq: &[usize]) -> Option<SimplexRef> {
        let mut base = seq.to_vec();
        base.dedup();
        let id = *self.index.get(&base)?;
        Some(SimplexRef::new(DegeneracyWord::from_surjection(&runs(seq)), id))
    }

    /// Element sequence of an arbitrary simplex.
    pub fn sequence(&self, x: &SimplexRef) -> Vec<usize> {
        let c = self.chain(x.base);
        x.word.surjection(x.dim()).iter().map(|&j| c[j]).collect()
    }

    /// Nerve of a monotone map given on elements.
    pub fn map_to(&self, target: &PosetNerve, f: &[usize]) -> Result<SMap> {
        let images = self
            .chains
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| {
                        let img: Vec<usize> = c.iter().map(|&a| f[a]).collect();
                        target.chain_simplex(&img).ok_or_else(|| Error::Validation("element map is not monotone".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SMap::new(self.space.clone(), target.space.clone(), images)
    }
}

/// Positions of a weakly increasing sequence collapsed to its distinct values.
fn runs<T: PartialEq>(seq: &[T]) -> Vec<usize> {
    let mut rank = 0;
    (0..seq.len())
        .map(|p| {
            if p > 0 && seq[p] != seq[p - 1] {
                rank += 1;
            }
            rank
        })
        .collect()
}

/// A simplex of a category nerve: a start object and a composable string of
/// morphisms, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismString {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// The nerve of a finite category, truncated at `cap` when given.
/// Non-degenerate `n`-simplices are strings of `n` non-identity morphisms.
#[derive(Clone, Debug)]
pub struct CategoryNerve {
    pub category: Arc<FinCategory>,
    pub nerve: TruncatedSSet,
    strings: Vec<Vec<MorphismString>>,
    index: HashMap<MorphismString, NdId>,
}

impl CategoryNerve {
    /// Fails with a must-truncate error when `trunc` is absent and the
    /// category has a cycle of non-identity morphisms.
    pub fn new(c: Arc<FinCategory>, trunc: Option<usize>) -> Result<Self> {
        let loop_free = c.is_loop_free();
        if trunc.is_none() && !loop_free {
            return Err(Error::MustTruncate);
        }
        let thin = (0..c.object_count()).all(|a| (0..c.object_count()).all(|b| c.hom(a, b).len() <= 1));
        let non_id: Vec<usize> = (0..c.morphism_count()).filter(|&m| !c.is_identity(m)).collect();
        let cap = max_simplices();
        let mut b = FinSSetBuilder::new();
        let mut strings: Vec<Vec<MorphismString>> = Vec::new();
        let mut index = HashMap::new();
        let mut level: Vec<MorphismString> =
            (0..c.object_count()).map(|o| MorphismString { start: o, arrows: Vec::new() }).collect();
        let mut total = 0;
        let mut cut = false;
        let mut d = 0;
        while !level.is_empty() {
            if trunc.is_some_and(|t| d > t) {
                cut = true;
                break;
            }
            total += level.len();
            if total > cap {
                return Err(Error::Budget(format!("nerve exceeds {cap} simplices")));
            }
            for s in &level {
                let faces = if d == 0 { Vec::new() } else { (0..=d).map(|i| normal(&c, &index, &face_string(&c, s, i))).collect() };
                let id = b.add(string_name(&c, s, thin), d, faces);
                index.insert(s.clone(), id);
            }
            let next: Vec<MorphismString> = level
                .iter()
                .flat_map(|s| {
                    let end = s.arrows.last().map_or(s.start, |&m| c.morphism(m).dst);
                    let c = &c;
                    non_id.iter().filter(move |&&m| c.morphism(m).src == end).map(move |&m| {
                        let mut t = s.clone();
                        t.arrows.push(m);
                        t
                    })
                })
                .collect();
            strings.push(std::mem::replace(&mut level, next));
            d += 1;
        }
        let space = b.build()?;
        let nerve = match (cut, trunc) {
            (true, Some(t)) => TruncatedSSet::truncated(space, t),
            _ => TruncatedSSet::exact(space),
        };
        Ok(CategoryNerve { nerve: nerve.with_kan(c.is_groupoid()), category: c, strings, index })
    }

    pub fn space(&self) -> &Arc<FinSSet> {
        &self.nerve.space
    }

    pub fn string(&self, id: NdId) -> &MorphismString {
        &self.strings[id.dim][id.idx]
    }

    /// Normal form of a string that may contain identities; `None` beyond
    /// the truncation.
    pub fn simplex(&self, s: &MorphismString) -> Option<SimplexRef> {
        let kept: Vec<usize> = s.arrows.iter().copied().filter(|&m| !self.category.is_identity(m)).collect();
        let base = MorphismString { start: s.start, arrows: kept };
        let id = *self.index.get(&base)?;
        let mut rank = 0;
        let mut values = vec![0];
        for &m in &s.arrows {
            if !self.category.is_identity(m) {
                rank += 1;
            }
            values.push(rank);
        }
        Some(SimplexRef::new(DegeneracyWord::from_surjection(&values), id))
    }

    /// The string of an arbitrary simplex, identities included.
    pub fn string_of(&self, x: &SimplexRef) -> MorphismString {
        let base = self.string(x.base);
        if x.word.is_empty() {
            return base.clone();
        }
        let sigma = x.word.surjection(x.dim());
        let objects: Vec<usize> = {
            let mut o = vec![base.start];
            for &m in &base.arrows {
                o.push(self.category.morphism(m).dst);
            }
            o
        };
        let arrows = (1..sigma.len())
            .map(|p| {
                if sigma[p] == sigma[p - 1] {
                    self.category.identity(objects[sigma[p]])
                } else {
                    base.arrows[sigma[p] - 1]
                }
            })
            .collect();
        MorphismString { start: base.start, arrows }
    }

    /// The nerve of a functor into the category of `target`.
    pub fn functor_map(&self, target: &CategoryNerve, f: &Functor) -> Result<SMap> {
        let mut images = Vec::new();
        for (d, level) in self.strings.iter().enumerate() {
            let mut out = Vec::new();
            for s in level {
                let t = MorphismString { start: f.on_objects[s.start], arrows: s.arrows.iter().map(|&m| f.on_morphisms[m]).collect() };
                out.push(target.simplex(&t).ok_or_else(|| {
                    Error::Budget(format!("image of a {d}-simplex lies beyond the target truncation"))
                })?);
            }
            images.push(out);
        }
        SMap::new(self.space().clone(), target.space().clone(), images)
    }
}

/// Objects along a string, `start` first.
pub fn objects_of(c: &FinCategory, s: &MorphismString) -> Vec<usize> {
    let mut o = vec![s.start];
    for &m in &s.arrows {
        o.push(c.morphism(m).dst);
    }
    o
}

fn face_string(c: &FinCategory, s: &MorphismString, i: usize) -> MorphismString {
    let n = s.arrows.len();
    let mut arrows = s.arrows.clone();
    let mut start = s.start;
    if i == 0 {
        start = c.morphism(arrows[0]).dst;
        arrows.remove(0);
    } else if i == n {
        arrows.pop();
    } else {
        let composite = c.compose(arrows[i], arrows[i - 1]);
        arrows.splice(i - 1..=i, [composite]);
    }
    MorphismString { start, arrows }
}

fn normal(c: &FinCategory, index: &HashMap<MorphismString, NdId>, s: &MorphismString) -> SimplexRef {
    let kept: Vec<usize> = s.arrows.iter().copied().filter(|&m| !c.is_identity(m)).collect();
    let mut rank = 0;
    let mut values = vec![0];
    for &m in &s.arrows {
        if !c.is_identity(m) {
            rank += 1;
        }
        values.push(rank);
    }
    let id = index[&MorphismString { start: s.start, arrows: kept }];
    SimplexRef::new(DegeneracyWord::from_surjection(&values), id)
}

fn string_name(c: &FinCategory, s: &MorphismString, thin: bool) -> String {
    if s.arrows.is_empty() {
        return c.objects()[s.start].clone();
    }
    if thin {
        objects_of(c, s).iter().map(|&o| c.objects()[o].as_str()).collect::<Vec<_>>().join("<")
    } else {
        let parts: Vec<&str> = s.arrows.iter().map(|&m| c.morphism(m).id.as_str()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// The nerve of a category, exact when the category is loop-free and no
/// truncation is requested.
pub fn nerve(c: &FinCategory, trunc: Option<usize>) -> Result<TruncatedSSet> {
    Ok(CategoryNerve::new(Arc::new(c.clone()), trunc)?.nerve)
}
