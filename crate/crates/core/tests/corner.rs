//! The corner test for ∂Δ¹ ⊂ Δ¹ over the terminal category, n = 1, with
//! B(Z/2) as test object.

use std::sync::Arc;

use prosimpl::category::{FinCategory, Functor};
use prosimpl::diagrams::{corner_extension_test, induced_hocolim_map, Diagram, FibrantTestObject, InducedHocolim, ProMap};
use prosimpl::kan_ex::{CornerFrame, LiftingProblem};
use prosimpl::simplex::{boundary, standard_simplex, NdId, SMap, SimplexRef};

fn inclusion() -> ProMap {
    let (a, b) = (Arc::new(boundary(1)), Arc::new(standard_simplex(1)));
    let x = Arc::new(Diagram::single(a.clone()));
    let y = Arc::new(Diagram::single(b.clone()));
    let theta = SMap::from_fn(a.clone(), b.clone(), |id| SimplexRef::nd(b.id(a.name(id)).unwrap())).unwrap();
    ProMap::new(Functor::identity(x.index.clone()), x, y, vec![theta]).unwrap()
}

fn setup() -> (ProMap, InducedHocolim) {
    let p = inclusion();
    let z = FibrantTestObject::groupoid("B(Z/2)", FinCategory::cyclic_group(2)).unwrap();
    let ind = induced_hocolim_map(&p, &z, 2).unwrap();
    (p, ind)
}

fn run() -> serde_json::Value {
    let (p, ind) = setup();
    let (hy, hx) = (&ind.source.complex.space, &ind.target.complex.space);
    // the endpoints go to the two distinct vertices of hocolim(Y)
    let omega = SMap::new(
        LiftingProblem::boundary_source(1),
        hy.clone(),
        vec![vec![SimplexRef::nd(NdId::new(0, 0)), SimplexRef::nd(NdId::new(0, 1))]],
    )
    .unwrap();
    // hocolim(X) has one vertex, so any non-degenerate edge is compatible
    let d1 = Arc::new(standard_simplex(1));
    let a = ind.map.apply(&SimplexRef::nd(NdId::new(0, 0)));
    let b = ind.map.apply(&SimplexRef::nd(NdId::new(0, 1)));
    let edge = hx
        .ids(1)
        .map(SimplexRef::nd)
        .find(|e| hx.face(e, 1) == a && hx.face(e, 0) == b)
        .expect("an edge between the images");
    let beta = SMap::new(d1, hx.clone(), vec![vec![a, b], vec![edge]]).unwrap();
    let lp = LiftingProblem::constant_homotopy(1, omega.clone(), &beta, ind.map.clone()).unwrap();
    let t = corner_extension_test(&p, &ind, &CornerFrame::prism(1), &omega, &lp.hb, 2, 200_000).unwrap();
    t.to_json()
}

#[test]
fn corner_transcript_is_stable() {
    let (first, second) = (run(), run());
    assert_eq!(first, second);
    // fixed by the first certified run
    assert_eq!(first["status"], "success");
    assert_eq!(first["k"], 0);
    assert_eq!(first["glued"], true);
    assert_eq!(first["source_pushout"], serde_json::json!([8, 8]));
    assert_eq!(first["target_pushout"], serde_json::json!([8, 13, 6]));
    assert_eq!(first["transcript"].as_array().unwrap().len(), 1);
}
