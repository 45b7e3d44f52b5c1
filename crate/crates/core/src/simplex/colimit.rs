use std::sync::Arc;

use super::map::SMap;
use super::sset::{FinSSet, FinSSetBuilder, NdId, SimplexRef};
use crate::error::{Error, Result};

/// A colimit together with its cocone and, for each non-degenerate simplex of
/// the colimit, the first diagram simplex (object, simplex) that maps onto it.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub space: Arc<FinSSet>,
    pub cocone: Vec<SMap>,
    pub representatives: Vec<Vec<(usize, NdId)>>,
}

impl Colimit {
    /// The map out of the colimit determined by maps out of each object.
    /// Compatibility is checked on every diagram simplex.
    pub fn induced_map(&self, target: Arc<FinSSet>, legs: &[SMap]) -> Result<SMap> {
        if legs.len() != self.cocone.len() {
            return Err(Error::Validation("one leg per object is required".into()));
        }
        let images: Vec<Vec<SimplexRef>> = self
            .representatives
            .iter()
            .map(|l| l.iter().map(|&(o, id)| legs[o].image(id).clone()).collect())
            .collect();
        let map = SMap::new(self.space.clone(), target, images)?;
        for (o, leg) in legs.iter().enumerate() {
            if !map.after(&self.cocone[o])?.same_as(leg) {
                return Err(Error::Validation(format!("leg {o} is not compatible with the diagram")));
            }
        }
        Ok(map)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Colimit of a graph-shaped diagram: objects, and arrows `(source, target, map)`.
///
/// Computed dimension by dimension on non-degenerate simplices: simplices
/// related by an arrow onto a non-degenerate simplex are merged, and a class
/// related to a degenerate simplex becomes that degenerate simplex of the
/// colimit. Generated names are `<label>.<simplex>` of the first member.
pub fn colimit_of_graph(labels: &[String], objects: &[Arc<FinSSet>], arrows: &[(usize, usize, SMap)]) -> Result<Colimit> {
    if labels.len() != objects.len() {
        return Err(Error::Malformed("one label per object is required".into()));
    }
    for (s, t, f) in arrows {
        if *s >= objects.len() || *t >= objects.len() {
            return Err(Error::Malformed("arrow endpoint out of range".into()));
        }
        if f.source().as_ref() != objects[*s].as_ref() || f.target().as_ref() != objects[*t].as_ref() {
            return Err(Error::Validation("arrow does not match its endpoints".into()));
        }
    }
    let top = objects.iter().filter_map(|o| o.dim()).max();
    let mut q: Vec<Vec<Vec<SimplexRef>>> = objects.iter().map(|o| vec![Vec::new(); o.counts().len()]).collect();
    let mut builder = FinSSetBuilder::new();
    let mut reps: Vec<Vec<(usize, NdId)>> = Vec::new();
    let Some(top) = top else {
        let space = Arc::new(FinSSet::empty());
        let cocone = objects.iter().map(|o| SMap::new_unchecked(o.clone(), space.clone(), Vec::new())).collect();
        return Ok(Colimit { space, cocone, representatives: Vec::new() });
    };
    for n in 0..=top {
        let mut offsets = Vec::with_capacity(objects.len());
        let mut total = 0;
        for o in objects {
            offsets.push(total);
            total += o.count(n);
        }
        let mut uf = UnionFind::new(total);
        let mut forced: Vec<Option<SimplexRef>> = vec![None; total];
        for (s, t, f) in arrows {
            for x in objects[*s].ids(n) {
                let y = f.image(x);
                let gx = offsets[*s] + x.idx;
                if y.word.is_empty() {
                    uf.union(gx, offsets[*t] + y.base.idx);
                } else if forced[gx].is_none() {
                    let below = &q[*t][y.base.dim][y.base.idx];
                    forced[gx] = Some(builder.apply(below, &y.word.surjection(n)));
                }
            }
        }
        let mut class_value: Vec<Option<SimplexRef>> = vec![None; total];
        for g in 0..total {
            if let Some(v) = forced[g].take() {
                let r = uf.find(g);
                if class_value[r].is_none() {
                    class_value[r] = Some(v);
                }
            }
        }
        let mut level_reps = Vec::new();
        for (o, obj) in objects.iter().enumerate() {
            for x in obj.ids(n) {
                let g = offsets[o] + x.idx;
                let r = uf.find(g);
                if class_value[r].is_none() {
                    let faces = obj
                        .faces_of(x)
                        .iter()
                        .map(|fc| {
                            let below = &q[o][fc.base.dim][fc.base.idx];
                            if fc.word.is_empty() {
                                below.clone()
                            } else {
                                builder.apply(below, &fc.word.surjection(n - 1))
                            }
                        })
                        .collect();
                    let name = if labels[o].is_empty() {
                        obj.name(x).to_string()
                    } else {
                        format!("{}.{}", labels[o], obj.name(x))
                    };
                    let id = builder.add(name, n, faces);
                    level_reps.push((o, x));
                    class_value[r] = Some(SimplexRef::nd(id));
                }
                let v = class_value[r].clone().expect("class assigned");
                q[o][n].push(v);
            }
        }
        reps.push(level_reps);
    }
    let space = Arc::new(builder.build()?);
    while reps.len() > space.counts().len() {
        reps.pop();
    }
    let cocone = objects
        .iter()
        .zip(q)
        .map(|(o, images)| SMap::new_unchecked(o.clone(), space.clone(), images))
        .collect();
    Ok(Colimit { space, cocone, representatives: reps })
}

/// Pushout of `B ← A → C`; the cocone legs are indexed A = 0, B = 1, C = 2.
pub fn pushout(f: &SMap, g: &SMap) -> Result<Colimit> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(Error::Validation("pushout legs must share a source".into()));
    }
    let labels = vec!["A".to_string(), "B".to_string(), "C".to_string()];
    let objects = vec![f.source().clone(), f.target().clone(), g.target().clone()];
    colimit_of_graph(&labels, &objects, &[(0, 1, f.clone()), (0, 2, g.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard::{boundary, standard_simplex};

    fn vertex_map(src: &Arc<FinSSet>, dst: &Arc<FinSSet>, f: impl Fn(&str) -> &'static str) -> SMap {
        SMap::from_fn(src.clone(), dst.clone(), |id| SimplexRef::nd(dst.id(f(src.name(id))).unwrap())).unwrap()
    }

    #[test]
    fn collapsing_endpoints_gives_circle() {
        let a = Arc::new(boundary(1));
        let pt = Arc::new(standard_simplex(0));
        let d1 = Arc::new(standard_simplex(1));
        let f = vertex_map(&a, &pt, |_| "0");
        let g = SMap::from_fn(a.clone(), d1.clone(), |id| SimplexRef::nd(d1.id(a.name(id)).unwrap())).unwrap();
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.space.counts(), vec![1, 1]);
        assert!(po.space.validate().is_empty());
        for leg in &po.cocone {
            assert!(leg.validate().is_empty());
        }
    }

    #[test]
    fn wedge_of_intervals() {
        let a = Arc::new(standard_simplex(0));
        let d1 = Arc::new(standard_simplex(1));
        let f = vertex_map(&a, &d1, |_| "1");
        let g = vertex_map(&a, &d1, |_| "0");
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.space.counts(), vec![3, 2]);
    }

    #[test]
    fn pushout_along_identity() {
        let c = Arc::new(standard_simplex(2));
        let a = Arc::new(boundary(2));
        let inc = SMap::from_fn(a.clone(), c.clone(), |id| SimplexRef::nd(c.id(a.name(id)).unwrap())).unwrap();
        let po = pushout(&SMap::identity(a), &inc).unwrap();
        assert!(po.cocone[2].is_isomorphism());
    }
}
