//! Triangulates the dunce hat from its identification word and shows that
//! the search stops at once: there is no free face.

use jester::complexes::{is_collapsible, polygon_identification_complex, CollapseVerdict};
use jester::data;

fn main() -> anyhow::Result<()> {
    let k = polygon_identification_complex(&data::dunce_hat_polygon())?;
    println!("f-vector {:?}, chi = {}", k.f_vector(), k.euler_characteristic());
    println!("free faces: {}", k.free_faces().len());
    match is_collapsible(&k, 1_000_000, 0)? {
        CollapseVerdict::Collapsible(s) => println!("collapses in {} steps", s.len()),
        CollapseVerdict::NotCollapsible(why) => println!("not collapsible: {}", why.describe()),
    }
    Ok(())
}
