//! Jester's hat: no free edge, yet it is the union of two collapsible
//! halves meeting in a collapsible tree.

use jester::complexes::{polygon_complex_with_sides, split_check, verify_collapse_sequence, PartOutcome};
use jester::data;

fn main() -> anyhow::Result<()> {
    let (k, sides) = polygon_complex_with_sides(&data::jester_hat_polygon())?;
    println!("f-vector {:?}, free faces {}", k.f_vector(), k.free_faces().len());

    // Halves: cone sectors over the `a` sides and over the `b` sides.
    let a: Vec<_> = k.facets().iter().zip(&sides).filter(|(_, &s)| s < 3).map(|(f, _)| f.clone()).collect();
    let b: Vec<_> = k.facets().iter().zip(&sides).filter(|(_, &s)| s >= 3).map(|(f, _)| f.clone()).collect();
    let report = split_check(&k, &a, &b, 1_000_000, 0)?;
    println!("A ∪ B = K: {}", report.union_ok);
    for (name, part) in [("A", &report.a), ("B", &report.b), ("C", &report.c)] {
        println!("{name}: f-vector {:?}, {}", part.complex.f_vector(), part.outcome.describe());
        if let PartOutcome::Collapsible(seq) = &part.outcome {
            assert!(verify_collapse_sequence(&part.complex, seq));
        }
    }
    println!("premise holds: {}", report.premise_holds());
    Ok(())
}
