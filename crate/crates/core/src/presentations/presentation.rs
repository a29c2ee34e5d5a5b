use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{free_reduce, Generator, Word};
use super::PresentationError;

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relators are stored freely reduced, in the order they were given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        let mut p = Presentation { generators, relators: Vec::with_capacity(relators.len()) };
        for r in relators {
            p.check_word(&r)?;
            p.relators.push(free_reduce(&r));
        }
        Ok(p)
    }

    /// Convenience constructor from generator names and parsed relator strings.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let gens = generators.iter().map(|g| Generator::new(g)).collect();
        let rels = relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, rels)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn has_generator(&self, g: &Generator) -> bool {
        self.generators.contains(g)
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    /// Fails with `UnknownGenerator` on the first undeclared letter.
    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        for l in w.letters() {
            if !self.has_generator(&l.generator) {
                return Err(PresentationError::UnknownGenerator(l.generator.to_string()));
            }
        }
        Ok(())
    }

    /// Appends relators (freely reduced) after the existing ones.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut p = self.clone();
        for r in extra {
            p.check_word(&r)?;
            p.relators.push(free_reduce(&r));
        }
        Ok(p)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<Generator>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators }
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        Presentation::new(doc.generators, doc.relators)
    }

    /// Compact JSON in the exchange format; `from_json(to_json(p)) == p`.
    pub fn to_json(&self) -> String {
        let doc = PresentationDoc { generators: self.generators.clone(), relators: self.relators.clone() };
        serde_json::to_string(&doc).expect("presentation serializes")
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationDoc { generators: self.generators.clone(), relators: self.relators.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PresentationDoc::deserialize(d)?;
        Presentation::new(doc.generators, doc.relators).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}
