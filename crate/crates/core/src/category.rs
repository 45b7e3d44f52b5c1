//! Finite categories with explicit composition tables, functors and posets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category. `compose[(g, f)] = g ∘ f` for every composable pair
/// (`f: a → b`, `g: b → c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

impl FinCategory {
    /// Assembles a category and checks totality, associativity and the unit laws.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let c = FinCategory { objects, morphisms, identities, compose };
        let report = c.validate();
        if report.is_empty() {
            Ok(c)
        } else {
            Err(Error::Validation(report.join("; ")))
        }
    }

    /// Builds from string tables, as found in files.
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        compose: Vec<(String, String, String)>,
        identities: BTreeMap<String, String>,
    ) -> Result<Self> {
        let obj: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != objects.len() {
            return Err(Error::Validation("duplicate object".into()));
        }
        let mut mors = Vec::new();
        let mut mor: HashMap<String, usize> = HashMap::new();
        for (id, s, d) in morphisms {
            let (Some(&src), Some(&dst)) = (obj.get(s.as_str()), obj.get(d.as_str())) else {
                return Err(Error::Validation(format!("morphism {id} has an unknown endpoint")));
            };
            if mor.insert(id.clone(), mors.len()).is_some() {
                return Err(Error::Validation(format!("duplicate morphism {id}")));
            }
            mors.push(Morphism { id, src, dst });
        }
        let look = |m: &str| mor.get(m).copied().ok_or_else(|| Error::Validation(format!("unknown morphism {m}")));
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, m) in &identities {
            let oi = *obj.get(o.as_str()).ok_or_else(|| Error::Validation(format!("unknown object {o}")))?;
            ids[oi] = look(m)?;
        }
        if ids.contains(&usize::MAX) {
            return Err(Error::Validation("every object needs an identity".into()));
        }
        let mut table = HashMap::new();
        for (g, f, gf) in compose {
            table.insert((look(&g)?, look(&f)?), look(&gf)?);
        }
        // identity compositions may be left implicit
        for (m, mm) in mors.iter().enumerate() {
            table.entry((ids[mm.dst], m)).or_insert(m);
            table.entry((m, ids[mm.src])).or_insert(m);
        }
        FinCategory::new(objects, mors, ids, table)
    }

    /// Every violated category law.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let n = self.morphisms.len();
        if self.identities.len() != self.objects.len() {
            report.push("identity table size mismatch".into());
            return report;
        }
        for (o, &i) in self.identities.iter().enumerate() {
            if i >= n || self.morphisms[i].src != o || self.morphisms[i].dst != o {
                report.push(format!("bad identity for {}", self.objects[o]));
                return report;
            }
        }
        for f in 0..n {
            for g in 0..n {
                if self.morphisms[f].dst != self.morphisms[g].src {
                    continue;
                }
                match self.compose.get(&(g, f)) {
                    None => report.push(format!("missing composite {} ∘ {}", self.morphisms[g].id, self.morphisms[f].id)),
                    Some(&gf) => {
                        if gf >= n
                            || self.morphisms[gf].src != self.morphisms[f].src
                            || self.morphisms[gf].dst != self.morphisms[g].dst
                        {
                            report.push(format!("composite {} ∘ {} has wrong endpoints", self.morphisms[g].id, self.morphisms[f].id));
                        }
                    }
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..n {
            let m = &self.morphisms[f];
            if self.compose[&(self.identities[m.dst], f)] != f || self.compose[&(f, self.identities[m.src])] != f {
                report.push(format!("unit law fails at {}", m.id));
            }
            for g in self.out_of(m.dst) {
                for h in self.out_of(self.morphisms[g].dst) {
                    let left = self.compose[&(h, self.compose[&(g, f)])];
                    let right = self.compose[&(self.compose[&(h, g)], f)];
                    if left != right {
                        report.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[h].id, self.morphisms[g].id, m.id
                        ));
                    }
                }
            }
        }
        report
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.compose[&(g, f)]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    /// Morphisms with the given source, in table order.
    pub fn out_of(&self, o: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].src == o).collect()
    }

    pub fn into(&self, o: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].dst == o).collect()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].dst == b)
            .collect()
    }

    /// No cycle of non-identity morphisms (so the nerve is finite).
    pub fn is_loop_free(&self) -> bool {
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, m) in self.morphisms.iter().enumerate() {
            if self.is_identity(i) {
                continue;
            }
            if m.src == m.dst {
                return false;
            }
            edges[m.src].push(m.dst);
            indeg[m.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&o| indeg[o] == 0).collect();
        let mut seen = 0;
        while let Some(o) = stack.pop() {
            seen += 1;
            for &t in &edges[o] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }

    /// Every morphism has a two-sided inverse.
    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| {
            let m = &self.morphisms[f];
            self.hom(m.dst, m.src).into_iter().any(|g| {
                self.compose(g, f) == self.identities[m.src] && self.compose(f, g) == self.identities[m.dst]
            })
        })
    }

    /// Checks that every pair of objects has a common source and every
    /// parallel pair is equalized by some morphism into its source.
    pub fn check_left_filtered(&self) -> Result<()> {
        if self.objects.is_empty() {
            return Err(Error::NotFiltered("empty category".into()));
        }
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                let ok = (0..n).any(|k| !self.hom(k, a).is_empty() && !self.hom(k, b).is_empty());
                if !ok {
                    return Err(Error::NotFiltered(format!(
                        "no cone over {} and {}",
                        self.objects[a], self.objects[b]
                    )));
                }
                let par = self.hom(a, b);
                for &f in &par {
                    for &g in &par {
                        let ok = self.into(a).into_iter().any(|h| self.compose(f, h) == self.compose(g, h));
                        if !ok {
                            return Err(Error::NotFiltered(format!(
                                "{} and {} are not equalized",
                                self.morphisms[f].id, self.morphisms[g].id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-object, identity-only category.
    pub fn terminal() -> Self {
        Poset::chain(0).to_category()
    }

    /// The ordinal `[n] = {0 < 1 < … < n}`.
    pub fn ordinal(n: usize) -> Self {
        Poset::chain(n).to_category()
    }

    /// The cospan `a → c ← b`.
    pub fn cospan() -> Self {
        let leq = vec![vec![true, false, true], vec![false, true, true], vec![false, false, true]];
        Poset::new(vec!["a".into(), "b".into(), "c".into()], leq).unwrap().to_category()
    }

    /// A discrete category on the given objects.
    pub fn discrete(objects: &[&str]) -> Self {
        let n = objects.len();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Poset::new(objects.iter().map(|s| s.to_string()).collect(), leq).unwrap().to_category()
    }

    /// The cyclic group `Z/n` as a one-object category; the generator is `g`,
    /// powers are `g^k`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let name = |k: usize| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            k => format!("g^{k}"),
        };
        let morphisms = (0..n).map(|k| Morphism { id: name(k), src: 0, dst: 0 }).collect();
        let mut compose = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                compose.insert((a, b), (a + b) % n);
            }
        }
        FinCategory::new(vec!["*".into()], morphisms, vec![0], compose).unwrap()
    }

    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { id: m.id.clone(), src: m.dst, dst: m.src })
            .collect();
        let compose = self.compose.iter().map(|(&(g, f), &gf)| ((f, g), gf)).collect();
        FinCategory { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), compose }
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        let f = Functor { source, target, on_objects, on_morphisms };
        let report = f.validate();
        if report.is_empty() {
            Ok(f)
        } else {
            Err(Error::Validation(report.join("; ")))
        }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let on_objects = (0..c.object_count()).collect();
        let on_morphisms = (0..c.morphism_count()).collect();
        Functor { source: c.clone(), target: c, on_objects, on_morphisms }
    }

    /// The functor picking out one object of the target from the terminal category.
    pub fn constant_from_terminal(target: Arc<FinCategory>, object: usize) -> Self {
        let id = target.identity(object);
        Functor { source: Arc::new(FinCategory::terminal()), target, on_objects: vec![object], on_morphisms: vec![id] }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let (s, t) = (&self.source, &self.target);
        if self.on_objects.len() != s.object_count() || self.on_morphisms.len() != s.morphism_count() {
            report.push("functor tables have the wrong size".into());
            return report;
        }
        if self.on_objects.iter().any(|&o| o >= t.object_count()) || self.on_morphisms.iter().any(|&m| m >= t.morphism_count()) {
            report.push("functor table refers outside the target".into());
            return report;
        }
        for (i, m) in s.morphisms().iter().enumerate() {
            let fm = t.morphism(self.on_morphisms[i]);
            if fm.src != self.on_objects[m.src] || fm.dst != self.on_objects[m.dst] {
                report.push(format!("{} is sent to a morphism with the wrong endpoints", m.id));
            }
        }
        if !report.is_empty() {
            return report;
        }
        for o in 0..s.object_count() {
            if self.on_morphisms[s.identity(o)] != t.identity(self.on_objects[o]) {
                report.push(format!("identity of {} is not preserved", s.objects()[o]));
            }
        }
        for f in 0..s.morphism_count() {
            for g in s.out_of(s.morphism(f).dst) {
                let lhs = self.on_morphisms[s.compose(g, f)];
                let rhs = t.compose(self.on_morphisms[g], self.on_morphisms[f]);
                if lhs != rhs {
                    report.push(format!("composition {} ∘ {} is not preserved", s.morphism(g).id, s.morphism(f).id));
                }
            }
        }
        report
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            on_objects: first.on_objects.iter().map(|&o| self.on_objects[o]).collect(),
            on_morphisms: first.on_morphisms.iter().map(|&m| self.on_morphisms[m]).collect(),
        }
    }
}

/// A finite partial order, stored as its relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("relation matrix has the wrong size".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::Validation(format!("{} is not ≤ itself", elements[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::Validation(format!("{} and {} violate antisymmetry", elements[a], elements[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::Validation(format!(
                            "transitivity fails at {} ≤ {} ≤ {}",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    /// For relations already known to be partial orders.
    pub(crate) fn from_matrix_unchecked(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        Poset { elements, leq }
    }

    pub fn chain(n: usize) -> Self {
        let leq = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
        Poset { elements: (0..=n).map(|i| i.to_string()).collect(), leq }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Morphisms are named `id:a` and `a<b`.
    pub fn to_category(&self) -> FinCategory {
        let n = self.elements.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if self.leq[a][b] {
                    let id = if a == b {
                        identities[a] = morphisms.len();
                        format!("id:{}", self.elements[a])
                    } else {
                        format!("{}<{}", self.elements[a], self.elements[b])
                    };
                    index.insert((a, b), morphisms.len());
                    morphisms.push(Morphism { id, src: a, dst: b });
                }
            }
        }
        let mut compose = HashMap::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    compose.insert((g, f), index[&(a, c)]);
                }
            }
        }
        FinCategory { objects: self.elements.clone(), morphisms, identities, compose }
    }

    /// Number of strict chains with `k + 1` elements, for each `k`.
    pub fn chain_counts(&self) -> Vec<usize> {
        let n = self.elements.len();
        let mut counts = Vec::new();
        // ending[k][b]: strict chains of k+1 elements ending at b
        let mut ending: Vec<usize> = vec![1; n];
        while ending.iter().any(|&c| c > 0) {
            counts.push(ending.iter().sum());
            let next = (0..n)
                .map(|b| (0..n).filter(|&a| self.lt(a, b)).map(|a| ending[a]).sum())
                .collect();
            ending = next;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_categories_validate() {
        for c in [FinCategory::terminal(), FinCategory::ordinal(2), FinCategory::cospan(), FinCategory::cyclic_group(2)] {
            assert!(c.validate().is_empty());
        }
        assert!(FinCategory::cyclic_group(3).is_groupoid());
        assert!(!FinCategory::ordinal(1).is_groupoid());
        assert!(FinCategory::ordinal(3).is_loop_free());
        assert!(!FinCategory::cyclic_group(2).is_loop_free());
    }

    #[test]
    fn broken_table_rejected() {
        let objects = vec!["*".to_string()];
        let morphisms = vec![
            Morphism { id: "e".into(), src: 0, dst: 0 },
            Morphism { id: "g".into(), src: 0, dst: 0 },
        ];
        let mut compose = HashMap::new();
        compose.insert((0, 0), 0);
        compose.insert((0, 1), 1);
        compose.insert((1, 0), 1);
        assert!(FinCategory::new(objects.clone(), morphisms.clone(), vec![0], compose.clone()).is_err());
        compose.insert((1, 1), 1);
        // g∘g = g is an idempotent monoid: valid
        assert!(FinCategory::new(objects, morphisms, vec![0], compose).is_ok());
    }

    #[test]
    fn filtered_checks() {
        let two = Poset::new(vec!["0".into(), "1".into()], vec![vec![true, false], vec![true, true]]).unwrap();
        assert!(two.to_category().check_left_filtered().is_ok());
        assert!(FinCategory::cospan().check_left_filtered().is_err());
        assert!(FinCategory::discrete(&["a", "b"]).check_left_filtered().is_err());
    }

    #[test]
    fn functor_laws() {
        let i = Arc::new(FinCategory::ordinal(1));
        let t = Arc::new(FinCategory::terminal());
        let collapse = Functor::new(i.clone(), t.clone(), vec![0, 0], vec![0, 0, 0]);
        assert!(collapse.is_ok());
        let bad = Functor::new(t, i, vec![0], vec![1]);
        assert!(bad.is_err());
    }

    #[test]
    fn poset_antisymmetry() {
        let bad = Poset::new(vec!["a".into(), "b".into()], vec![vec![true, true], vec![true, true]]);
        assert!(bad.is_err());
        assert_eq!(Poset::chain(2).chain_counts(), vec![3, 3, 1]);
    }
}
