//! The built-in corpus: small complexes, simplicial sets, index categories
//! and a groupoid.

use crate::category::{FinCategory, Poset};
use crate::complexes::SimplicialComplex;
use crate::simplex::{circle, wedge_of_circles, FinSSet};

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let vertices = (0..7).map(|i| i.to_string()).collect();
    let facets = (0..7).flat_map(|i| {
        let a = [i, (i + 1) % 7, (i + 3) % 7];
        let b = [i, (i + 2) % 7, (i + 3) % 7];
        [a, b].map(|t| {
            let mut t = t.to_vec();
            t.sort_unstable();
            t
        })
    });
    SimplicialComplex::from_index_faces(vertices, facets).expect("torus")
}

/// The 6-vertex projective plane.
pub fn rp2() -> SimplicialComplex {
    let tri = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"];
    let vertices: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let facets = tri.iter().map(|t| {
        let mut f: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
        f.sort_unstable();
        f
    });
    SimplicialComplex::from_index_faces(vertices, facets).expect("projective plane")
}

pub fn hexagon() -> SimplicialComplex {
    SimplicialComplex::polygon(6)
}

/// Complex fixtures by name.
pub fn complex(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "delta0" => SimplicialComplex::simplex(0),
        "delta1" => SimplicialComplex::simplex(1),
        "delta2" => SimplicialComplex::simplex(2),
        "delta3" => SimplicialComplex::simplex(3),
        "boundary1" => SimplicialComplex::boundary(1),
        "boundary2" => SimplicialComplex::boundary(2),
        "boundary3" => SimplicialComplex::boundary(3),
        "horn2_0" => SimplicialComplex::horn(2, 0),
        "horn2_1" => SimplicialComplex::horn(2, 1),
        "horn2_2" => SimplicialComplex::horn(2, 2),
        "horn3_1" => SimplicialComplex::horn(3, 1),
        "hexagon" => hexagon(),
        "torus" => torus(),
        "rp2" => rp2(),
        _ => return None,
    })
}

pub const COMPLEX_NAMES: [&str; 14] = [
    "delta0", "delta1", "delta2", "delta3", "boundary1", "boundary2", "boundary3", "horn2_0", "horn2_1", "horn2_2",
    "horn3_1", "hexagon", "torus", "rp2",
];

/// Simplicial set fixtures: every complex fixture plus the one-vertex
/// circle and the wedge of two circles.
pub fn sset(name: &str) -> Option<FinSSet> {
    match name {
        "circle" => Some(circle()),
        "wedge" => Some(wedge_of_circles()),
        _ => complex(name).map(|k| k.to_sset()),
    }
}

pub const SSET_NAMES: [&str; 16] = [
    "delta0", "delta1", "delta2", "delta3", "boundary1", "boundary2", "boundary3", "horn2_0", "horn2_1", "horn2_2",
    "horn3_1", "hexagon", "torus", "rp2", "circle", "wedge",
];

/// Index categories and the groupoid `Z/2`.
pub fn category(name: &str) -> Option<FinCategory> {
    Some(match name {
        "terminal" => FinCategory::terminal(),
        "interval" => FinCategory::ordinal(1),
        "cospan" => FinCategory::cospan(),
        "filtered" => filtered_poset().to_category(),
        "bz2" => FinCategory::cyclic_group(2),
        _ => return None,
    })
}

pub const CATEGORY_NAMES: [&str; 5] = ["terminal", "interval", "cospan", "filtered", "bz2"];

/// Two objects with a single arrow `1 → 0`: left filtered, with `1` below `0`.
pub fn filtered_poset() -> Poset {
    let leq = vec![vec![true, false], vec![true, true]];
    Poset::new(vec!["0".into(), "1".into()], leq).expect("filtered poset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for name in SSET_NAMES {
            let x = sset(name).unwrap();
            assert!(x.validate().is_empty(), "{name}");
        }
        for name in CATEGORY_NAMES {
            assert!(category(name).unwrap().validate().is_empty(), "{name}");
        }
        assert_eq!(torus().counts(), vec![7, 21, 14]);
        assert_eq!(rp2().counts(), vec![6, 15, 10]);
        assert!(category("filtered").unwrap().check_left_filtered().is_ok());
    }
}
