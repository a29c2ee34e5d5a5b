//! The shipped dunce hat and Jester's hat, and the collapse search on them.

use std::collections::BTreeMap;

use jester::complexes::{
    is_collapsible, polygon_complex_with_sides, polygon_identification_complex, split_check, verify_collapse_sequence,
    CollapseSequence, CollapseVerdict, NonCollapsible, PartOutcome, Simplex, SimplicialComplex,
};
use jester::data;

/// Number of `dim + 1`-simplices containing each `dim`-simplex.
fn coface_counts(k: &SimplicialComplex, dim: usize) -> BTreeMap<Simplex, usize> {
    let mut n: BTreeMap<Simplex, usize> = k.simplices().iter().filter(|s| s.dim() == dim).map(|s| (s.clone(), 0)).collect();
    for t in k.simplices().iter().filter(|s| s.dim() == dim + 1) {
        for f in t.boundary() {
            *n.get_mut(&f).unwrap() += 1;
        }
    }
    n
}

#[test]
fn shipped_complexes_match_the_builder() {
    let d = polygon_identification_complex(&data::dunce_hat_polygon()).unwrap();
    assert!(d.same_simplices(&data::dunce_hat()));
    assert_eq!(d.facets(), data::dunce_hat().facets());
    let j = polygon_identification_complex(&data::jester_hat_polygon()).unwrap();
    assert!(j.same_simplices(&data::jester_hat()));
    assert_eq!(j.facets(), data::jester_hat().facets());
}

#[test]
fn dunce_hat_has_no_free_face() {
    let d = data::dunce_hat();
    assert_eq!(d.euler_characteristic(), 1);
    let edges = coface_counts(&d, 1);
    assert!(edges.values().all(|&n| n >= 2));
    let vertices = coface_counts(&d, 0);
    assert!(vertices.values().all(|&n| n >= 1));
    for v in vertices.keys() {
        assert!(edges.iter().any(|(e, &n)| n >= 2 && v.is_face_of(e)));
    }
    assert!(d.free_faces().is_empty());
    assert_eq!(is_collapsible(&d, 1, 0).unwrap(), CollapseVerdict::NotCollapsible(NonCollapsible::NoFreeFace));
}

#[test]
fn dunce_hat_edges_of_the_glued_side_have_three_triangles() {
    // The side `a` is cut into 4 edges, each on three triangles.
    let d = data::dunce_hat();
    let mut hist = BTreeMap::new();
    for n in coface_counts(&d, 1).values() {
        *hist.entry(*n).or_insert(0) += 1;
    }
    assert_eq!(hist, BTreeMap::from([(2, 156), (3, 4)]));
}

#[test]
fn jester_hat_has_no_free_edge() {
    let j = data::jester_hat();
    assert_eq!(j.f_vector(), vec![105, 320, 216]);
    assert_eq!(j.euler_characteristic(), 1);
    assert!(j.free_faces().iter().all(|(f, _)| f.dim() != 1));
    assert!(coface_counts(&j, 1).values().all(|&n| n >= 2));
}

#[test]
fn jester_split_premise() {
    let j = data::jester_hat();
    let (a, b) = data::jester_split_ids();
    assert_eq!(a, (0..108).collect::<Vec<_>>());
    assert_eq!(b, (108..216).collect::<Vec<_>>());
    let r = split_check(&j, &j.facets_by_id(&a).unwrap(), &j.facets_by_id(&b).unwrap(), 1_000_000, 0).unwrap();
    assert!(r.union_ok);
    assert!(r.premise_holds(), "{} / {} / {}", r.a.outcome.describe(), r.b.outcome.describe(), r.c.outcome.describe());
    // The cut is two radii of the hexagon meeting at the centre.
    assert_eq!(r.c.complex.f_vector(), vec![9, 8]);
    for part in [&r.a, &r.b, &r.c] {
        let PartOutcome::Collapsible(s) = &part.outcome else { unreachable!() };
        assert!(verify_collapse_sequence(&part.complex, s));
    }
}

#[test]
fn ids_follow_polygon_sides() {
    let (_, sides) = polygon_complex_with_sides(&data::jester_hat_polygon()).unwrap();
    let (a, b) = data::jester_split_ids();
    assert!(a.iter().all(|&i| sides[i] < 3));
    assert!(b.iter().all(|&i| sides[i] >= 3));
}

#[test]
fn recorded_collapse_of_a_verifies() {
    let j = data::jester_hat();
    let (a, _) = data::jester_split_ids();
    let ka = j.subcomplex(&j.facets_by_id(&a).unwrap()).unwrap();
    let s = CollapseSequence::from_named(&ka, &data::jester_a_collapse()).unwrap();
    assert!(verify_collapse_sequence(&ka, &s));
    let mut broken = s.clone();
    let last = broken.len() - 1;
    broken.steps.swap(0, last);
    assert!(!verify_collapse_sequence(&ka, &broken));
}

#[test]
fn dunce_hat_with_a_flap_is_exhausted() {
    // A triangle glued to the dunce hat along one edge: two free edges, but
    // after either collapse the hat is stuck.
    let d = data::dunce_hat();
    let e = d.simplices().iter().find(|s| s.dim() == 1).unwrap().clone();
    let mut names: Vec<String> = d.names().to_vec();
    names.push("flap".into());
    let mut simplices: Vec<Vec<String>> = d.facets().iter().map(|f| d.simplex_names(f)).collect();
    let mut t = d.simplex_names(&e);
    t.push("flap".into());
    simplices.push(t);
    let k = SimplicialComplex::from_named(&names, &simplices).unwrap();
    assert_eq!(k.euler_characteristic(), 1);
    assert_eq!(k.free_faces().len(), 2);
    match is_collapsible(&k, 100_000, 0).unwrap() {
        CollapseVerdict::NotCollapsible(NonCollapsible::SearchExhausted { states }) => assert!(states > 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dunce_hat_split_reports_the_hat() {
    let d = data::dunce_hat();
    let v = Simplex::new(vec![d.vertex_id("o").unwrap()]).unwrap();
    let r = split_check(&d, d.facets(), &[v], 1000, 0).unwrap();
    assert!(r.union_ok);
    assert_eq!(r.a.outcome, PartOutcome::NotCollapsible(NonCollapsible::NoFreeFace));
    assert!(r.b.outcome.is_collapsible() && r.c.outcome.is_collapsible());
    assert!(!r.premise_holds());
}

#[test]
fn search_is_deterministic_per_seed() {
    let j = data::jester_hat();
    let (_, b) = data::jester_split_ids();
    let kb = j.subcomplex(&j.facets_by_id(&b).unwrap()).unwrap();
    for seed in [0, 1, 99] {
        assert_eq!(is_collapsible(&kb, 1_000_000, seed).unwrap(), is_collapsible(&kb, 1_000_000, seed).unwrap());
    }
}
