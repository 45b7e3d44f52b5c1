//! Acceptance criteria, one line each.
//!
//! Runs without the test harness: `cargo test --test acceptance`.
//! Criterion 5 asks for Δ²×Δ¹ = (6, 13, 9, 3), which has Euler
//! characteristic −1; the prism is contractible and its chains give
//! (6, 12, 10, 3). That sub-check is kept as stated and fails, and the
//! target passes only when the failing set is exactly that one.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prosimpl::category::{FinCategory, Functor};
use prosimpl::complexes::{complex_map, complex_of, SimplicialComplex};
use prosimpl::diagrams::{
    hocolim, pro_equivalence_check, Diagram, FibrantTestObject, ProEqBudgets, ProEqStatus, ProMap,
};
use prosimpl::fixtures::{self, CATEGORY_NAMES, COMPLEX_NAMES, SSET_NAMES};
use prosimpl::homology::{
    cone_iso_through, homology, induced_map_homology, matmul, smith_normal_form, HomologyGroup, Matrix,
};
use prosimpl::kan_ex::{ex_capped, extension_search, function_complex, CornerOutcome, LiftingProblem};
use prosimpl::nerve::nerve;
use prosimpl::realization::{compose_realizations, functor_of_map, realize_functor};
use prosimpl::simplex::search::enumerate_maps;
use prosimpl::simplex::{
    boundary, circle, standard_simplex, FinSSet, FinSSetBuilder, NdId, Product, SMap, SimplexRef,
};
use prosimpl::subdivision::{pi_comparison, sd_sset, SubdivisionTower};

type Outcome = Result<String, String>;

/// Criteria whose stated values cannot hold.
const KNOWN_DEFECTS: [usize; 1] = [5];

fn sset(name: &str) -> Arc<FinSSet> {
    Arc::new(fixtures::sset(name).unwrap())
}

fn pt() -> Arc<FinSSet> {
    Arc::new(standard_simplex(0))
}

fn bz2() -> FibrantTestObject {
    FibrantTestObject::groupoid("B(Z/2)", FinCategory::cyclic_group(2)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.2} s, limit {} s", t.as_secs_f64(), limit.as_secs()))
}

fn comparison_is_iso() -> Outcome {
    let start = Instant::now();
    let names = ["delta0", "delta1", "delta2", "delta3", "boundary2", "boundary3", "horn2_1", "hexagon", "torus", "rp2"];
    for n in names {
        let k = fixtures::complex(n).unwrap();
        let (pi, iso) = pi_comparison(&k).map_err(|e| format!("{n}: {e}"))?;
        ensure(iso && pi.is_isomorphism(), || format!("{n}: comparison is not an isomorphism"))?;
        ensure(pi.source().counts() == pi.target().counts(), || format!("{n}: counts differ"))?;
        ensure(pi.validate().is_empty(), || format!("{n}: comparison does not respect faces"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} complexes in {:.2} s", names.len(), start.elapsed().as_secs_f64()))
}

/// A few maps for every ordered pair of small complexes.
fn corpus_maps() -> Vec<SMap> {
    let names = ["delta0", "delta1", "delta2", "boundary1", "boundary2", "horn2_1", "hexagon"];
    let mut out = Vec::new();
    for a in names {
        for b in names {
            let (x, y) = (sset(a), sset(b));
            for images in enumerate_maps(&x, &y, 1_000).unwrap().into_iter().take(3) {
                out.push(SMap::new(x.clone(), y.clone(), images).unwrap());
            }
        }
    }
    out
}

fn round_trip() -> Outcome {
    let maps = corpus_maps();
    for f in &maps {
        let data = functor_of_map(f).map_err(|e| e.to_string())?;
        let g = realize_functor(&data).map_err(|e| e.to_string())?;
        ensure(g.same_as(f), || "realize ∘ restrict is not the identity".into())?;
        ensure(functor_of_map(&g).unwrap() == data, || "restrict ∘ realize is not the identity".into())?;
    }
    ensure(maps.len() >= 10, || format!("only {} maps", maps.len()))?;
    Ok(format!("{} maps", maps.len()))
}

fn compose_checks() -> Outcome {
    let maps = corpus_maps();
    let mut pairs = 0;
    for g in &maps {
        for f in maps.iter().filter(|f| Arc::ptr_eq(f.source(), g.target()) || f.source() == g.target()).take(4) {
            let c = compose_realizations(g, f).map_err(|e| e.to_string())?;
            ensure(c.agrees, || "composite realization disagrees".into())?;
            pairs += 1;
        }
    }
    // sd²K → sdK → K → X
    let mut chains = 0;
    for (k, x) in [("delta2", "circle"), ("boundary2", "wedge"), ("horn2_1", "rp2")] {
        let kx = sset(k);
        let tower = SubdivisionTower::new(kx.clone(), 2).map_err(|e| e.to_string())?;
        let (g1, g0) = (&tower.gammas[1], &tower.gammas[0]);
        let target = sset(x);
        let v = SimplexRef::nd(NdId::new(0, 0));
        let h = SMap::from_fn(kx.clone(), target.clone(), |id| target.apply(&v, &vec![0; id.dim + 1])).unwrap();
        for (a, b) in [(g1.clone(), g0.clone()), (g0.after(g1).unwrap(), h.clone()), (g1.clone(), h.after(g0).unwrap())] {
            ensure(compose_realizations(&a, &b).map_err(|e| e.to_string())?.agrees, || format!("{k}: γ chain disagrees"))?;
            chains += 1;
        }
    }
    Ok(format!("{pairs} composable pairs, {chains} γ-chain checks"))
}

fn subdivision_invariants() -> Outcome {
    let mut checked = 0;
    for n in SSET_NAMES {
        let x = sset(n);
        let kmax = if n == "torus" || n == "rp2" { 2 } else { 3 };
        let h = homology(&x);
        let tower = SubdivisionTower::new(x.clone(), kmax).map_err(|e| format!("{n}: {e}"))?;
        for k in 1..=kmax {
            let sub = SubdivisionTower { base: x.clone(), levels: tower.levels[..k].to_vec(), gammas: tower.gammas[..k].to_vec() };
            let top = sub.top();
            ensure(top.euler_characteristic() == x.euler_characteristic(), || format!("{n}: χ changes at k = {k}"))?;
            ensure(homology(top) == h, || format!("{n}: homology changes at k = {k}"))?;
            let g = sub.gamma_composite();
            let degrees = x.counts().len();
            // explicit induced matrices on small objects, the mapping cone above
            let iso = if top.total() <= 400 {
                induced_map_homology(&g, degrees).iter().all(|d| d.is_isomorphism)
            } else {
                cone_iso_through(&g, degrees - 1)
            };
            ensure(iso, || format!("{n}: γ^{k} is not a homology isomorphism"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (object, k) pairs"))
}

fn counting_oracle() -> Outcome {
    let d = |n| Arc::new(standard_simplex(n));
    let got = [
        ("sd(Δ²)", sd_sset(&standard_simplex(2)).unwrap().counts(), vec![7, 12, 6]),
        ("Δ¹×Δ¹", Product::new(d(1), d(1)).space().counts(), vec![4, 5, 2]),
        ("Δ²×Δ¹", Product::new(d(2), d(1)).space().counts(), vec![6, 13, 9, 3]),
        ("sd(∂Δ²)", sd_sset(&boundary(2)).unwrap().counts(), vec![6, 6]),
    ];
    let bad: Vec<String> =
        got.iter().filter(|(_, g, w)| g != w).map(|(n, g, w)| format!("{n} = {g:?}, expected {w:?}")).collect();
    if bad.is_empty() {
        Ok("4 objects".into())
    } else {
        Err(bad.join("; "))
    }
}

fn group(rank: usize, torsion: &[u64]) -> HomologyGroup {
    HomologyGroup { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
}

fn homology_oracle() -> Outcome {
    let start = Instant::now();
    ensure(homology(&circle()) == vec![group(1, &[]), group(1, &[])], || "circle".into())?;
    ensure(homology(&sset("rp2")) == vec![group(1, &[]), group(0, &[2]), group(0, &[])], || "RP²".into())?;
    ensure(homology(&sset("torus")) == vec![group(1, &[]), group(2, &[]), group(1, &[])], || "torus".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..100 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m: Matrix = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let s = smith_normal_form(&m, rows, cols);
        let umv = matmul(&matmul(&s.u, &m, rows, cols), &s.v, cols, cols);
        ensure(umv == s.d, || format!("matrix {t}: U·M·V ≠ D"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("3 spaces, 100 matrices in {:.2} s", start.elapsed().as_secs_f64()))
}

fn hocolim_degenerate_cases() -> Outcome {
    let groupoid_pt = FibrantTestObject::groupoid("pt", FinCategory::terminal()).unwrap();
    let s0 = FibrantTestObject::assumed("S0", prosimpl::simplex::TruncatedSSet::exact(boundary(1)));
    let mut checked = 0;
    for z in [bz2(), s0] {
        for n in ["delta0", "boundary1", "delta1", "circle"] {
            let x = sset(n);
            let h = hocolim(Arc::new(Diagram::single(x.clone())), &z, 3).map_err(|e| e.to_string())?;
            let zt = z.through(x.dim().unwrap_or(0) + 3).map_err(|e| e.to_string())?;
            let fc = function_complex(x, &zt, 3).map_err(|e| e.to_string())?;
            ensure(h.complex.counts() == fc.complex.counts(), || {
                format!("{n} into {}: {:?} vs {:?}", z.name(), h.complex.counts(), fc.complex.counts())
            })?;
            checked += 1;
        }
    }
    for c in ["terminal", "interval", "cospan"] {
        let cat = Arc::new(fixtures::category(c).unwrap());
        let h = hocolim(Arc::new(Diagram::constant(cat.clone(), pt())), &groupoid_pt, 3).map_err(|e| e.to_string())?;
        let nv = nerve(&cat, Some(3)).map_err(|e| e.to_string())?;
        ensure(h.complex.counts() == nv.counts(), || format!("{c}: {:?} vs {:?}", h.complex.counts(), nv.counts()))?;
        checked += 1;
    }
    Ok(format!("{checked} comparisons"))
}

fn pro_equivalence_verdicts() -> Outcome {
    let start = Instant::now();
    let b = ProEqBudgets::default();
    for (name, d) in [
        ("circle", Diagram::single(Arc::new(circle()))),
        ("points over [1]", Diagram::constant(Arc::new(FinCategory::ordinal(1)), pt())),
        ("points over the cospan", Diagram::constant(Arc::new(FinCategory::cospan()), pt())),
    ] {
        let v = pro_equivalence_check(&ProMap::identity(Arc::new(d)), &[bz2()], &b).map_err(|e| e.to_string())?;
        ensure(v.status == ProEqStatus::NoObstructionFound, || format!("identity on {name}: {:?}", v.status))?;
    }
    let x = Arc::new(Diagram::single(Arc::new(circle())));
    let y = Arc::new(Diagram::single(pt()));
    let collapse = SMap::constant(x.objects[0].clone(), pt(), NdId::new(0, 0)).unwrap();
    let p = ProMap::new(Functor::identity(x.index.clone()), x, y, vec![collapse]).unwrap();
    let v = pro_equivalence_check(&p, &[bz2()], &b).map_err(|e| e.to_string())?;
    ensure(v.status == ProEqStatus::NotProEquivalence, || "collapse not detected".into())?;
    let w = v.checks.last().and_then(|c| c.verdict.witness.clone()).ok_or("collapse has no witness")?;
    // hocolim(Y) → hocolim(X): one component against two
    ensure(w.invariant.starts_with("pi0") && w.source == "1" && w.target == "2", || format!("witness {w:?}"))?;

    let i = Arc::new(FinCategory::discrete(&["a", "b"]));
    let x = Arc::new(Diagram::constant(i.clone(), pt()));
    let y = Arc::new(Diagram::single(pt()));
    let p = ProMap::new(Functor::constant_from_terminal(i, 0), x, y, vec![SMap::identity(pt())]).unwrap();
    let v = pro_equivalence_check(&p, &[bz2()], &b).map_err(|e| e.to_string())?;
    ensure(v.failed.as_deref() == Some("nerve"), || format!("broken α: {:?}", v.failed))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("π0 witness {} vs {}, {:.2} s", w.target, w.source, start.elapsed().as_secs_f64()))
}

fn ex_suite() -> Outcome {
    const MAP_CAP: usize = 1_000_000;
    for n in SSET_NAMES {
        let x = sset(n);
        let e = ex_capped(x.clone(), 3, MAP_CAP).map_err(|e| format!("{n}: {e}"))?;
        ensure(e.ex.counts()[0] == x.count(0), || format!("{n}: Ex₀ differs from X₀"))?;
        ensure(e.natural.images()[0].iter().enumerate().all(|(i, v)| v.base.idx == i && !v.is_degenerate()), || {
            format!("{n}: X₀ → Ex₀ is not the identity")
        })?;
        let degrees = e.ex.homology_bound();
        ensure(induced_map_homology(&e.natural, degrees).iter().all(|d| d.is_isomorphism), || {
            format!("{n}: X → Ex X is not a homology isomorphism below degree {degrees}")
        })?;
    }
    let e = ex_capped(Arc::new(circle()), 3, MAP_CAP).map_err(|e| e.to_string())?;
    let c1 = e.levels.all_count(1);
    ensure(c1 == 4, || format!("Ex(circle)₁ = {c1}"))?;
    Ok(format!("{} objects, map cap {MAP_CAP}, Ex(circle)₁ = {c1}", SSET_NAMES.len()))
}

fn extension_examples() -> Outcome {
    fn runs(p: &LiftingProblem, node_cap: u64) -> Result<(CornerOutcome, Vec<String>), String> {
        let a = extension_search(p, 2, node_cap).map_err(|e| e.to_string())?;
        let b = extension_search(p, 2, node_cap).map_err(|e| e.to_string())?;
        ensure(a.transcript == b.transcript, || "transcript changed between runs".into())?;
        Ok((a.outcome, a.transcript))
    }
    // X = Y, f = id, constant homotopy
    let d1 = Arc::new(standard_simplex(1));
    let alpha = SMap::new(
        LiftingProblem::boundary_source(1),
        d1.clone(),
        vec![vec![SimplexRef::nd(NdId::new(0, 0)), SimplexRef::nd(NdId::new(0, 1))]],
    )
    .unwrap();
    let p = LiftingProblem::constant_homotopy(1, alpha, &SMap::identity(d1.clone()), SMap::identity(d1.clone()))
        .map_err(|e| e.to_string())?;
    let (first, _) = runs(&p, 100_000)?;
    ensure(first.k() == Some(0), || format!("identity: {}", first.label()))?;

    // vertex 0 of Δ¹, β the other vertex
    let f = SMap::new(pt(), d1.clone(), vec![vec![SimplexRef::nd(NdId::new(0, 0))]]).unwrap();
    let alpha = SMap::new(LiftingProblem::boundary_source(0), pt(), vec![]).unwrap();
    let beta = SMap::new(pt(), d1, vec![vec![SimplexRef::nd(NdId::new(0, 1))]]).unwrap();
    let p = LiftingProblem::constant_homotopy(0, alpha, &beta, f).map_err(|e| e.to_string())?;
    let (second, _) = runs(&p, 100_000)?;
    let k2 = second.k().ok_or_else(|| format!("edge example: {}", second.label()))?;

    // ∂Δ² → Δ², n = 2
    let x = Arc::new(boundary(2));
    let d2 = SimplicialComplex::simplex(2).realize();
    let b2 = SimplicialComplex::boundary(2).realize();
    let f = complex_map(&b2, &d2, &[0, 1, 2]).unwrap();
    let alpha = SMap::new(LiftingProblem::boundary_source(2), x.clone(), SMap::identity(x).images().to_vec()).unwrap();
    let p = LiftingProblem::constant_homotopy(2, alpha, &SMap::identity(d2.space.clone()), f).map_err(|e| e.to_string())?;
    let (third, t3) = runs(&p, 50_000_000)?;
    ensure(matches!(third, CornerOutcome::Exhausted), || format!("filler example: {}", third.label()))?;
    Ok(format!("success k=0, success k={k2}, exhausted after {} levels; transcripts stable", t3.len()))
}

/// Five broken inputs and the name each report must mention.
fn corrupted() -> Vec<(&'static str, String, &'static str)> {
    let v = |i: usize| SimplexRef::nd(NdId::new(0, i));
    let e = |i: usize| SimplexRef::nd(NdId::new(1, i));
    let mut out = Vec::new();

    // a triangle with two faces swapped
    let mut b = FinSSetBuilder::new();
    for n in ["0", "1", "2"] {
        b.vertex(n);
    }
    b.add("01", 1, vec![v(1), v(0)]);
    b.add("02", 1, vec![v(2), v(0)]);
    b.add("12", 1, vec![v(2), v(1)]);
    b.add("t", 2, vec![e(1), e(2), e(0)]);
    out.push(("swapped faces", b.build().unwrap().validate().join("; "), "t"));

    // an edge given an edge as a face
    let mut b = FinSSetBuilder::new();
    b.vertex("a");
    b.add("e", 1, vec![v(0), v(0)]);
    b.add("bad", 1, vec![e(0), v(0)]);
    out.push(("face of wrong dimension", b.build().err().map(|e| e.to_string()).unwrap_or_default(), "bad"));

    // swaps the endpoints but keeps the edge
    let d1 = Arc::new(standard_simplex(1));
    let f = SMap::new(d1.clone(), d1.clone(), vec![vec![v(1), v(0)], vec![e(0)]]).unwrap();
    out.push(("map not commuting with faces", f.validate().join("; "), "[0,1]"));

    // a composite with the wrong endpoints
    let objects = vec!["0".to_string(), "1".to_string()];
    let mors = vec![
        ("id:0".to_string(), "0".to_string(), "0".to_string()),
        ("f".to_string(), "0".to_string(), "1".to_string()),
        ("id:1".to_string(), "1".to_string(), "1".to_string()),
    ];
    let ids = [("0".to_string(), "id:0".to_string()), ("1".to_string(), "id:1".to_string())].into_iter().collect();
    let compose = vec![("f".to_string(), "id:0".to_string(), "id:1".to_string())];
    let c = FinCategory::from_tables(objects, mors, compose, ids);
    out.push(("bad composition table", c.err().map(|e| e.to_string()).unwrap_or_default(), "f"));

    // a functor sending the arrow to an identity
    let c = Arc::new(FinCategory::ordinal(1));
    let arrow = c.morphism_index("0<1").unwrap();
    let mut on_morphisms: Vec<usize> = (0..c.morphism_count()).collect();
    on_morphisms[arrow] = c.identity(0);
    let f = Functor { source: c.clone(), target: c, on_objects: vec![0, 1], on_morphisms };
    out.push(("functor breaking endpoints", f.validate().join("; "), "0<1"));
    out
}

fn validation_suite() -> Outcome {
    for n in SSET_NAMES {
        ensure(sset(n).validate().is_empty(), || format!("{n} fails validation"))?;
    }
    for n in COMPLEX_NAMES {
        let x = fixtures::complex(n).unwrap().to_sset();
        ensure(x.validate().is_empty() && complex_of(&x).is_some(), || format!("complex {n} fails validation"))?;
    }
    for n in CATEGORY_NAMES {
        ensure(fixtures::category(n).unwrap().validate().is_empty(), || format!("category {n} fails validation"))?;
    }
    let cases = corrupted();
    for (what, report, place) in &cases {
        ensure(!report.is_empty(), || format!("{what}: no violation reported"))?;
        ensure(report.contains(place), || format!("{what}: report {report:?} does not name {place}"))?;
    }
    Ok(format!("{} fixtures clean, {} corruptions located", SSET_NAMES.len() + COMPLEX_NAMES.len() + CATEGORY_NAMES.len(), cases.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 11] = [
        (1, "comparison map is an isomorphism", comparison_is_iso),
        (2, "functor/map round trip", round_trip),
        (3, "composite realizations", compose_checks),
        (4, "subdivision invariants", subdivision_invariants),
        (5, "counting oracle", counting_oracle),
        (6, "homology oracle", homology_oracle),
        (7, "hocolim degenerate cases", hocolim_degenerate_cases),
        (8, "pro-equivalence verdicts", pro_equivalence_verdicts),
        (9, "Ex suite", ex_suite),
        (10, "extension search examples", extension_examples),
        (11, "validation suite", validation_suite),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {id:>2} PASS {name}: {detail} [{secs:.2} s]"),
            Err(why) => {
                let note = if KNOWN_DEFECTS.contains(&id) { " (expected: the stated counts are inconsistent)" } else { "" };
                println!("criterion {id:>2} FAIL {name}: {why}{note} [{secs:.2} s]");
                failed.push(id);
            }
        }
    }
    if failed != KNOWN_DEFECTS {
        println!("unexpected set of failing criteria: {failed:?}, expected {KNOWN_DEFECTS:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} of 11 pass; failing {failed:?} as expected", 11 - failed.len());
}
