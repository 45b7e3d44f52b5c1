//! Finite simplicial sets in Eilenberg–Zilber normal form, simplicial maps,
//! products, colimits and map search.

pub mod codes;
pub mod colimit;
pub mod map;
pub mod product;
pub mod search;
pub mod sset;
pub mod standard;
pub mod truncated;
pub mod word;

pub use colimit::{colimit_of_graph, pushout, Colimit};
pub use map::SMap;
pub use product::Product;
pub use codes::{CodeOps, Key, Pullback};
pub use search::{enumerate_codes, enumerate_maps, find_isomorphism, MapSearch, SearchStats};
pub use sset::{FinSSet, FinSSetBuilder, NdId, Op, SimplexRef};
pub use standard::{boundary, circle, horn, standard_simplex, wedge_of_circles};
pub use truncated::TruncatedSSet;
pub use word::DegeneracyWord;
