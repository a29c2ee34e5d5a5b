use serde::{Deserialize, Serialize};

use super::assignment::{substitute, GeneratorAssignment};
use super::presentation::Presentation;
use super::word::{free_reduce, Generator, Word};
use super::PresentationError;

/// One factor `conjugator · relators[relator]^exponent · conjugator⁻¹` of a
/// consequence derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugatedRelator {
    pub relator: usize,
    #[serde(default)]
    pub conjugator: Word,
    pub exponent: i32,
}

impl ConjugatedRelator {
    pub fn plain(relator: usize) -> Self {
        ConjugatedRelator { relator, conjugator: Word::empty(), exponent: 1 }
    }
}

/// A Tietze move together with the evidence that it preserves the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "move")]
pub enum TietzeCertificate {
    /// New generator `g` with defining relator `g · definition⁻¹`.
    AddGenerator { generator: Generator, definition: Word },
    /// Eliminate `g` using a relator in which it occurs exactly once. With
    /// `relator: None` the first such relator is used.
    RemoveGenerator { generator: Generator, relator: Option<usize> },
    /// Append `relator`, which must equal the product of `derivation` in the
    /// free group.
    AddRelator { relator: Word, derivation: Vec<ConjugatedRelator> },
    /// Drop relator `index`, which must equal the product of `derivation`
    /// built from the remaining relators.
    RemoveRelator { index: usize, derivation: Vec<ConjugatedRelator> },
}

/// Multiplies out a derivation over the relators of `p`, freely reduced.
pub fn expand_derivation(p: &Presentation, derivation: &[ConjugatedRelator]) -> Result<Word, PresentationError> {
    let mut acc = Word::empty();
    for f in derivation {
        let r = p.relators().get(f.relator).ok_or_else(|| {
            PresentationError::InvalidCertificate(format!("relator index {} out of range", f.relator))
        })?;
        let power = match f.exponent {
            1 => r.clone(),
            -1 => r.inverse(),
            e => return Err(PresentationError::InvalidExponent(e as i64)),
        };
        p.check_word(&f.conjugator)?;
        acc = acc
            .concat(&f.conjugator)
            .concat(&power)
            .concat(&f.conjugator.inverse());
    }
    Ok(free_reduce(&acc))
}

/// If `g` occurs exactly once in `r`, returns `u` with `r` conjugate to
/// `g · u` (or its inverse), i.e. `g = u⁻¹` in the group.
fn solve_for(g: &Generator, r: &Word) -> Option<Word> {
    let hits: Vec<usize> = r
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| &l.generator == g)
        .map(|(i, _)| i)
        .collect();
    let [i] = hits[..] else { return None };
    let mut rot = r.rotate(i);
    if rot.letters()[0].inverse {
        rot = rot.inverse().rotate(r.len() - 1);
    }
    debug_assert!(&rot.letters()[0].generator == g && !rot.letters()[0].inverse);
    let u = Word::from_letters(rot.letters()[1..].to_vec());
    Some(u.inverse())
}

/// Applies a certified Tietze move.
pub fn tietze_apply(p: &Presentation, c: &TietzeCertificate) -> Result<Presentation, PresentationError> {
    match c {
        TietzeCertificate::AddGenerator { generator, definition } => {
            if p.has_generator(generator) {
                return Err(PresentationError::InvalidCertificate(format!(
                    "generator `{generator}` already present"
                )));
            }
            p.check_word(definition)?;
            let mut gens = p.generators().to_vec();
            gens.push(generator.clone());
            let mut rels = p.relators().to_vec();
            rels.push(Word::generator(generator.clone()).concat(&definition.inverse()));
            Presentation::new(gens, rels)
        }
        TietzeCertificate::RemoveGenerator { generator, relator } => {
            if !p.has_generator(generator) {
                return Err(PresentationError::UnknownGenerator(generator.to_string()));
            }
            let found = match relator {
                Some(i) => {
                    let r = p.relators().get(*i).ok_or_else(|| {
                        PresentationError::InvalidCertificate(format!("relator index {i} out of range"))
                    })?;
                    solve_for(generator, r).map(|v| (*i, v))
                }
                None => p
                    .relators()
                    .iter()
                    .enumerate()
                    .find_map(|(i, r)| solve_for(generator, r).map(|v| (i, v))),
            };
            let (idx, value) =
                found.ok_or_else(|| PresentationError::NoEliminatingRelator(generator.to_string()))?;
            let mut map = GeneratorAssignment::identity_on(p);
            map.insert(generator.clone(), value);
            let gens: Vec<Generator> = p.generators().iter().filter(|g| *g != generator).cloned().collect();
            let rels = p
                .relators()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, r)| substitute(r, &map))
                .collect::<Result<Vec<_>, _>>()?;
            Presentation::new(gens, rels)
        }
        TietzeCertificate::AddRelator { relator, derivation } => {
            p.check_word(relator)?;
            let product = expand_derivation(p, derivation)?;
            if product != free_reduce(relator) {
                return Err(PresentationError::InvalidCertificate(format!(
                    "derivation reduces to `{product}`, not `{}`",
                    free_reduce(relator)
                )));
            }
            p.with_relators([relator.clone()])
        }
        TietzeCertificate::RemoveRelator { index, derivation } => {
            let target = p.relators().get(*index).ok_or_else(|| {
                PresentationError::InvalidCertificate(format!("relator index {index} out of range"))
            })?;
            if derivation.iter().any(|f| f.relator == *index) {
                return Err(PresentationError::InvalidCertificate(
                    "derivation uses the relator being removed".into(),
                ));
            }
            let product = expand_derivation(p, derivation)?;
            if &product != target {
                return Err(PresentationError::InvalidCertificate(format!(
                    "derivation reduces to `{product}`, not `{target}`"
                )));
            }
            let mut rels = p.relators().to_vec();
            rels.remove(*index);
            Ok(Presentation::from_parts_unchecked(p.generators().to_vec(), rels))
        }
    }
}
