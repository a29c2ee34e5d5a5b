//! The (7, 2, 5) triangle and the rotations realizing the quotient
//! `<beta, gamma | gamma^7, beta^5, (beta gamma)^2>`.

use jester::data;
use jester::hyperbolic::{classify, evaluate_word, is_identity, triangle_group_rep};
use jester::presentations::{verify_homomorphism, Word};

fn main() -> anyhow::Result<()> {
    let (t, h) = triangle_group_rep();
    for (i, name) in ["A", "B", "C"].iter().enumerate() {
        println!("{name}: {:?}, angle {:.6}", t.vertices[i].coords(), t.measured_angle(i));
    }
    let g = data::triangle_group();
    let rep = verify_homomorphism(&g, &h, 1e-9)?;
    for (r, x) in g.relators().iter().zip(&rep.residuals) {
        println!("|h({r}) - I| = {x:.3e}");
    }
    let bg = evaluate_word(&Word::parse("beta gamma")?, &h)?;
    println!("h(beta gamma): {:?}", classify(&bg)?);
    let m = evaluate_word(&Word::parse("beta^-2 gamma")?, &h)?;
    println!(
        "h(beta^-2 gamma) is {:.6} from the identity; identity at 1e-3: {}",
        m.distance_from_identity(),
        is_identity(&m, 1e-3)
    );
    Ok(())
}
