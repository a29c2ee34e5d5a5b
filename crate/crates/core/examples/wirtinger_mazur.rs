//! Wirtinger presentation of the Mazur link, the two surgery relators, and
//! the abelianization before and after adjoining them.

use jester::data;
use jester::links::{adjoin_relators, linking_number, validate_diagram, wirtinger, writhe};
use jester::presentations::abelianization;

fn main() -> anyhow::Result<()> {
    let d = data::mazur_link();
    let report = validate_diagram(&d)?;
    println!("diagram: {report:?}");
    let p = wirtinger(&d)?;
    println!("{} generators, {} relators", p.generators().len(), p.relators().len());
    println!("{p}");
    println!("writhe(Gamma) = {}, lk(Gamma, zeta) = {}", writhe(&d, data::GAMMA)?, linking_number(&d, data::GAMMA, data::ZETA)?);
    println!("H1 of the link complement: {}", abelianization(&p));

    let rs = data::mazur_relators();
    for r in &rs {
        println!("{} = {}", r.label, r.word);
    }
    let q = adjoin_relators(&p, &rs)?;
    println!("after surgery: {}", abelianization(&q));
    Ok(())
}
