use std::sync::Arc;

use super::sset::FinSSet;

/// A simplicial set known only in dimensions `≤ cap`, or an exact finite one
/// when `cap` is `None`.
#[derive(Clone, Debug)]
pub struct TruncatedSSet {
    pub space: Arc<FinSSet>,
    pub cap: Option<usize>,
    /// Set for objects known to be Kan complexes (nerves of groupoids).
    pub kan: bool,
}

impl TruncatedSSet {
    pub fn exact(space: FinSSet) -> Self {
        TruncatedSSet { space: Arc::new(space), cap: None, kan: false }
    }

    pub fn truncated(space: FinSSet, cap: usize) -> Self {
        TruncatedSSet { space: Arc::new(space), cap: Some(cap), kan: false }
    }

    pub fn with_kan(mut self, kan: bool) -> Self {
        self.kan = kan;
        self
    }

    /// Homology is trusted in degrees strictly below this bound.
    pub fn homology_bound(&self) -> usize {
        match self.cap {
            Some(c) => c.saturating_sub(1),
            None => self.space.dim().map_or(1, |d| d + 1),
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        self.space.counts()
    }
}
