//! Checks on the hand-transcribed link diagrams.

use std::collections::BTreeMap;

use jester::data;
use jester::links::{self, GaussCode, LinkDiagram};
use jester::hyperbolic::Isometry;
use jester::presentations::{abelianization, equivalent_relators, verify_homomorphism, GeneratorAssignment, GroupElement, Word};

/// Number of faces of the 4-valent plane graph described by a Gauss code,
/// using the crossing signs to fix the cyclic order of half-edges.
fn face_count(g: &GaussCode) -> usize {
    const OVER_IN: usize = 0;
    const OVER_OUT: usize = 1;
    const UNDER_IN: usize = 2;
    const UNDER_OUT: usize = 3;
    let n = g.signs.len();
    let slot = |c: usize, s: usize| 4 * c + s;
    let mut other_end = vec![usize::MAX; 4 * n];
    for comp in &g.components {
        let m = comp.len();
        for j in 0..m {
            let (a, b) = (comp[j], comp[(j + 1) % m]);
            let from = slot(a.unsigned_abs() as usize - 1, if a > 0 { OVER_OUT } else { UNDER_OUT });
            let to = slot(b.unsigned_abs() as usize - 1, if b > 0 { OVER_IN } else { UNDER_IN });
            other_end[from] = to;
            other_end[to] = from;
        }
    }
    let ccw_next = |s: usize| {
        let (c, k) = (s / 4, s % 4);
        let order = if g.signs[c] > 0 {
            [OVER_OUT, UNDER_OUT, OVER_IN, UNDER_IN]
        } else {
            [OVER_OUT, UNDER_IN, OVER_IN, UNDER_OUT]
        };
        let i = order.iter().position(|&x| x == k).unwrap();
        slot(c, order[(i + 1) % 4])
    };
    let mut seen = vec![false; 4 * n];
    let mut faces = 0;
    for s0 in 0..4 * n {
        if seen[s0] {
            continue;
        }
        faces += 1;
        let mut s = s0;
        while !seen[s] {
            seen[s] = true;
            s = ccw_next(other_end[s]);
        }
    }
    faces
}

fn is_connected_planar(g: &GaussCode) -> bool {
    face_count(g) == g.signs.len() + 2
}

/// The Gauss code determines the arc/crossing form up to renaming arcs;
/// check the renaming exists.
fn same_up_to_arc_names(a: &LinkDiagram, b: &LinkDiagram) -> bool {
    if a.crossings.len() != b.crossings.len() || a.arcs.len() != b.arcs.len() {
        return false;
    }
    let mut map: BTreeMap<&str, &str> = BTreeMap::new();
    for (x, y) in a.crossings.iter().zip(&b.crossings) {
        if x.sign != y.sign {
            return false;
        }
        for (p, q) in [(&x.over, &y.over), (&x.under_in, &y.under_in), (&x.under_out, &y.under_out)] {
            if *map.entry(p.as_str()).or_insert(q.as_str()) != q.as_str() {
                return false;
            }
        }
    }
    let mut images: Vec<&str> = map.values().copied().collect();
    images.sort();
    images.dedup();
    images.len() == a.arcs.len()
}

#[test]
fn mazur_link_is_a_planar_two_component_diagram() {
    let d = data::mazur_link();
    let r = links::validate_diagram(&d).unwrap();
    assert_eq!((r.components, r.crossings, r.arcs), (2, 9, 9));
    let g = data::mazur_link_gauss();
    assert!(same_up_to_arc_names(&g.to_diagram().unwrap(), &d));
    assert_eq!(face_count(&g), 11);
}

#[test]
fn mazur_link_linking_and_writhe() {
    let d = data::mazur_link();
    assert_eq!(links::linking_number(&d, data::GAMMA, data::ZETA).unwrap(), -1);
    assert_eq!(links::writhe(&d, data::GAMMA).unwrap(), -3);
    assert_eq!(links::writhe(&d, data::ZETA).unwrap(), 0);
}

#[test]
fn mazur_last_crossing_relation() {
    let p = links::wirtinger(&data::mazur_link()).unwrap();
    let r9 = Word::parse("x1^-1 x7^-1 x2 x7").unwrap();
    assert!(equivalent_relators(&p.relators()[8], &r9));
}

#[test]
fn mazur_longitudes_match_surgery_relators() {
    let d = data::mazur_link();
    let rels = data::mazur_relators();
    let lz = links::longitude_word(&d, data::ZETA, 0).unwrap();
    let lg = links::longitude_word(&d, data::GAMMA, 0).unwrap();
    assert_eq!(lz, rels[0].word);
    assert!(equivalent_relators(&lg, &rels[1].word));
    assert!(!equivalent_relators(&lg, &rels[0].word));
}

#[test]
fn c_curve_transcription() {
    let g = data::c_curve_gauss();
    let d = data::c_curve();
    assert_eq!(g.to_diagram().unwrap(), d);
    let r = links::validate_diagram(&d).unwrap();
    assert_eq!((r.components, r.crossings), (2, 12));
    assert_eq!(d.components.iter().map(Vec::len).collect::<Vec<_>>(), vec![9, 3]);
    assert!(is_connected_planar(&g));
    let p = links::wirtinger(&d).unwrap();
    assert_eq!(abelianization(&p).to_u64(), Some(vec![0, 0]));
}

#[test]
fn c_curve_covers_gamma_twice() {
    // Each crossing of the base diagram lifts to one crossing where the lift
    // of ζ is involved and to two crossings of C with itself.
    let base = data::mazur_link();
    let lifted = data::c_curve();
    let base_self = base.crossings.iter().filter(|c| base.component_of(&c.over) == Some(0) && base.component_of(&c.under_in) == Some(0)).count();
    let lift_self = lifted.crossings.iter().filter(|c| lifted.component_of(&c.over) == Some(0) && lifted.component_of(&c.under_in) == Some(0)).count();
    assert_eq!(lift_self, 2 * base_self);
    assert_eq!(lifted.crossings.len() - lift_self, base.crossings.len() - base_self);
}

#[test]
fn trefoil_file_matches_braid_closure() {
    let braid = GaussCode::from_braid(2, &[1, 1, 1]).unwrap().to_diagram().unwrap();
    assert!(same_up_to_arc_names(&data::trefoil(), &braid));
}

#[test]
fn braid_closures_are_planar() {
    // Words using every generator close up to connected diagrams.
    for (n, w) in [(2, &[1, 1, 1][..]), (3, &[1, -2, 1, -2]), (3, &[1, 2, 1, 2, -1]), (4, &[2, 3, 1, -2, -3, 1])] {
        let g = GaussCode::from_braid(n, w).unwrap();
        assert!(is_connected_planar(&g), "{w:?}");
    }
    assert!(!is_connected_planar(&GaussCode { components: vec![vec![1, 2, -1, -2]], signs: vec![1, 1] }));
}

/// Extends the triangle-group map to every arc by pushing images through the
/// crossing relations, starting from x7 = β and x2 = λ = β⁻¹γ⁴. All nine
/// Wirtinger relators and both surgery relators must then hold.
#[test]
fn representation_extends_over_the_whole_diagram() {
    let d = data::mazur_link();
    let (_, h) = data::triangle_rep();
    let beta = *h.get(&"beta".into()).unwrap();
    let gamma = *h.get(&"gamma".into()).unwrap();
    let mut img: BTreeMap<String, Isometry> = BTreeMap::new();
    img.insert("x7".into(), beta);
    img.insert("x2".into(), beta.inverse().compose(&gamma.pow(4)));
    for _ in 0..d.crossings.len() {
        for c in &d.crossings {
            let Some(o) = img.get(&c.over).copied() else { continue };
            let o = o.pow(c.sign as i64);
            match (img.get(&c.under_in).copied(), img.get(&c.under_out).copied()) {
                (Some(i), None) => {
                    img.insert(c.under_out.clone(), o.inverse().compose(&i).compose(&o));
                }
                (None, Some(u)) => {
                    img.insert(c.under_in.clone(), o.compose(&u).compose(&o.inverse()));
                }
                _ => {}
            }
        }
    }
    assert_eq!(img.len(), 9);
    let a: GeneratorAssignment<Isometry> = img.into_iter().map(|(k, v)| (k.as_str().into(), v)).collect();
    let p = links::adjoin_relators(&links::wirtinger(&d).unwrap(), &data::mazur_relators()).unwrap();
    let report = verify_homomorphism(&p, &a, 1e-8).unwrap();
    assert!(report.holds, "{:?}", report.residuals);
}
