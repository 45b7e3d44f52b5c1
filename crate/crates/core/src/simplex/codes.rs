//! Simplices as packed `u64` codes (see [`SimplexRef::code`]) and memoized
//! operators on them. Maps out of a finite simplicial set become flat code
//! vectors, one entry per non-degenerate source simplex in (dimension, index)
//! order.

use std::cell::RefCell;

use rustc_hash::FxHashMap;

use super::map::SMap;
use super::sset::{FinSSet, SimplexRef};

/// A map given by the codes of its images, flattened in (dimension, index) order.
pub type Key = Vec<u64>;

/// Marks a slot that copies its value unchanged.
const SAME: u32 = u32::MAX;

/// Flattened position of the first non-degenerate simplex of each dimension.
pub fn offsets(x: &FinSSet) -> Vec<usize> {
    let mut out = Vec::new();
    let mut acc = 0;
    for c in x.counts() {
        out.push(acc);
        acc += c;
    }
    out
}

/// Images of a map, flattened and encoded.
pub fn encode_images(images: &[Vec<SimplexRef>]) -> Key {
    images.iter().flatten().map(SimplexRef::code).collect()
}

/// Rebuilds the images of a map from a flattened key.
pub fn decode_images(key: &[u64], source: &FinSSet) -> Vec<Vec<SimplexRef>> {
    let offs = offsets(source);
    source
        .counts()
        .iter()
        .enumerate()
        .map(|(d, &c)| (0..c).map(|i| SimplexRef::from_code(key[offs[d] + i])).collect())
        .collect()
}

/// `θ*` on codes of one simplicial set, with monotone maps interned and
/// results cached.
pub struct CodeOps<'a> {
    space: &'a FinSSet,
    thetas: RefCell<(FxHashMap<Vec<usize>, u32>, Vec<Vec<usize>>)>,
    memo: RefCell<FxHashMap<(u64, u32), u64>>,
}

impl<'a> CodeOps<'a> {
    pub fn new(space: &'a FinSSet) -> Self {
        CodeOps { space, thetas: RefCell::default(), memo: RefCell::default() }
    }

    pub fn space(&self) -> &'a FinSSet {
        self.space
    }

    pub fn intern(&self, theta: &[usize]) -> u32 {
        let mut t = self.thetas.borrow_mut();
        if let Some(&id) = t.0.get(theta) {
            return id;
        }
        let id = t.1.len() as u32;
        t.1.push(theta.to_vec());
        t.0.insert(theta.to_vec(), id);
        id
    }

    pub fn apply(&self, code: u64, theta: u32) -> u64 {
        if let Some(&v) = self.memo.borrow().get(&(code, theta)) {
            return v;
        }
        let v = {
            let t = self.thetas.borrow();
            self.space.apply(&SimplexRef::from_code(code), &t.1[theta as usize]).code()
        };
        self.memo.borrow_mut().insert((code, theta), v);
        v
    }

    /// Faces `d_0 … d_m` of a code of dimension `m > 0`.
    pub fn faces(&self, code: u64, m: usize) -> Vec<u64> {
        (0..=m).map(|i| self.apply(code, self.intern(&super::word::coface(m, i)))).collect()
    }
}

/// Precomposition with a fixed map `g: S → T`, turning keys of maps `T → Y`
/// into keys of maps `S → Y`.
pub struct Pullback {
    slots: Vec<(u32, u32)>,
}

impl Pullback {
    pub fn new(g: &SMap, ops: &CodeOps) -> Self {
        let offs = offsets(g.target());
        let slots = g
            .images()
            .iter()
            .flatten()
            .map(|z| {
                let pos = (offs[z.base.dim] + z.base.idx) as u32;
                let theta = if z.word.is_empty() { SAME } else { ops.intern(&z.word.surjection(z.dim())) };
                (pos, theta)
            })
            .collect();
        Pullback { slots }
    }

    fn value(&self, slot: usize, key: &[u64], ops: &CodeOps) -> u64 {
        let (pos, theta) = self.slots[slot];
        let v = key[pos as usize];
        if theta == SAME {
            v
        } else {
            ops.apply(v, theta)
        }
    }

    pub fn apply(&self, key: &[u64], ops: &CodeOps) -> Key {
        (0..self.slots.len()).map(|s| self.value(s, key, ops)).collect()
    }

    /// Whether precomposition leaves `key` unchanged; `g` must be an endomap.
    pub fn fixes(&self, key: &[u64], ops: &CodeOps) -> bool {
        (0..self.slots.len()).all(|s| self.value(s, key, ops) == key[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{circle, standard_simplex, NdId};

    #[test]
    fn memoized_apply_agrees() {
        let c = circle();
        let ops = CodeOps::new(&c);
        let loop_ = SimplexRef::nd(NdId::new(1, 0));
        let t = ops.intern(&[0, 0, 1]);
        assert_eq!(ops.apply(loop_.code(), t), c.apply(&loop_, &[0, 0, 1]).code());
        assert_eq!(ops.apply(loop_.code(), t), ops.apply(loop_.code(), t));
        assert_eq!(ops.faces(loop_.code(), 1), vec![SimplexRef::nd(NdId::new(0, 0)).code(); 2]);
    }

    #[test]
    fn encode_round_trip() {
        let d = standard_simplex(2);
        let id = SMap::identity(std::sync::Arc::new(d.clone()));
        let key = encode_images(id.images());
        assert_eq!(decode_images(&key, &d), id.images().to_vec());
        let ops = CodeOps::new(&d);
        assert_eq!(Pullback::new(&id, &ops).apply(&key, &ops), key);
        assert!(Pullback::new(&id, &ops).fixes(&key, &ops));
    }
}
