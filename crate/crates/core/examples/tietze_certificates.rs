//! Shrinks the surgered Mazur presentation by certified Tietze moves,
//! checking that the abelianization never changes.

use jester::data;
use jester::links::{adjoin_relators, wirtinger};
use jester::presentations::{abelianization, tietze_apply, TietzeCertificate, Word};

fn main() -> anyhow::Result<()> {
    let d = data::mazur_link();
    let mut p = adjoin_relators(&wirtinger(&d)?, &data::mazur_relators())?;
    let ab = abelianization(&p);
    println!("start: {} generators, {} relators, H1 = {ab}", p.generators().len(), p.relators().len());

    // Eliminate generators while some relator contains one of them exactly once.
    loop {
        let mut moved = false;
        for g in p.generators().to_vec().into_iter().rev() {
            if p.generators().len() <= 2 {
                break;
            }
            let c = TietzeCertificate::RemoveGenerator { generator: g.clone(), relator: None };
            if let Ok(q) = tietze_apply(&p, &c) {
                assert_eq!(abelianization(&q), ab);
                println!("removed {g}: {} generators, longest relator {}", q.generators().len(),
                    q.relators().iter().map(Word::len).max().unwrap_or(0));
                p = q;
                moved = true;
            }
        }
        if !moved || p.generators().len() <= 2 {
            break;
        }
    }
    println!("{p}");

    // An added relator is accepted only with a derivation.
    let bogus = TietzeCertificate::AddRelator { relator: Word::generator(p.generators()[0].clone()), derivation: vec![] };
    println!("unsupported relator rejected: {}", tietze_apply(&p, &bogus).is_err());
    Ok(())
}
