use std::collections::BTreeMap;

use serde::Serialize;

use super::presentation::Presentation;
use super::word::{free_reduce, Generator, Word};
use super::PresentationError;

/// Anything a word can be evaluated in: a group with a measurable distance
/// from its identity.
pub trait GroupElement: Clone {
    fn identity() -> Self;
    /// The product `self · rhs`.
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Zero exactly at the identity; used as the relator residual.
    fn distance_from_identity(&self) -> f64;
}

/// Free-group elements: the residual is the reduced length.
impl GroupElement for Word {
    fn identity() -> Self {
        Word::empty()
    }

    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn inverse(&self) -> Self {
        Word::inverse(self)
    }

    fn distance_from_identity(&self) -> f64 {
        free_reduce(self).len() as f64
    }
}

/// A map from generator names to images.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorAssignment<T> {
    images: BTreeMap<Generator, T>,
}

impl<T> Default for GeneratorAssignment<T> {
    fn default() -> Self {
        GeneratorAssignment { images: BTreeMap::new() }
    }
}

impl<T> GeneratorAssignment<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: impl Into<Generator>, image: T) -> Option<T> {
        self.images.insert(g.into(), image)
    }

    pub fn with(mut self, g: impl Into<Generator>, image: T) -> Self {
        self.insert(g, image);
        self
    }

    pub fn get(&self, g: &Generator) -> Option<&T> {
        self.images.get(g)
    }

    pub fn image(&self, g: &Generator) -> Result<&T, PresentationError> {
        self.images
            .get(g)
            .ok_or_else(|| PresentationError::UnmappedGenerator(g.to_string()))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Generator> {
        self.images.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &T)> {
        self.images.iter()
    }

    /// Fails unless every generator of `p` has an image.
    pub fn check_covers(&self, p: &Presentation) -> Result<(), PresentationError> {
        for g in p.generators() {
            self.image(g)?;
        }
        Ok(())
    }
}

impl<T> FromIterator<(Generator, T)> for GeneratorAssignment<T> {
    fn from_iter<I: IntoIterator<Item = (Generator, T)>>(iter: I) -> Self {
        GeneratorAssignment { images: iter.into_iter().collect() }
    }
}

impl GeneratorAssignment<Word> {
    /// Sends each generator of `p` to itself.
    pub fn identity_on(p: &Presentation) -> Self {
        p.generators()
            .iter()
            .map(|g| (g.clone(), Word::generator(g.clone())))
            .collect()
    }

    /// `other ∘ self`: substitute `other` into every image of `self`.
    pub fn then(&self, other: &GeneratorAssignment<Word>) -> Result<Self, PresentationError> {
        self.images
            .iter()
            .map(|(g, w)| Ok((g.clone(), substitute(w, other)?)))
            .collect()
    }
}

/// Evaluates `w` left to right in the target group.
pub fn evaluate<T: GroupElement>(w: &Word, a: &GeneratorAssignment<T>) -> Result<T, PresentationError> {
    let mut acc = T::identity();
    for l in w.letters() {
        let img = a.image(&l.generator)?;
        acc = if l.inverse { acc.compose(&img.inverse()) } else { acc.compose(img) };
    }
    Ok(acc)
}

/// Image of `w` under a word-valued assignment, freely reduced.
pub fn substitute(w: &Word, a: &GeneratorAssignment<Word>) -> Result<Word, PresentationError> {
    let mut out = Vec::new();
    for l in w.letters() {
        let img = a.image(&l.generator)?;
        if l.inverse {
            out.extend(img.inverse().into_letters());
        } else {
            out.extend_from_slice(img.letters());
        }
    }
    Ok(free_reduce(&Word::from_letters(out)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub holds: bool,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

/// Evaluates every relator of `p`; the map extends to a homomorphism (up to
/// `tol`) iff every residual is below `tol`.
pub fn verify_homomorphism<T: GroupElement>(
    p: &Presentation,
    a: &GeneratorAssignment<T>,
    tol: f64,
) -> Result<HomomorphismReport, PresentationError> {
    a.check_covers(p)?;
    let residuals = p
        .relators()
        .iter()
        .map(|r| evaluate(r, a).map(|m| m.distance_from_identity()))
        .collect::<Result<Vec<_>, _>>()?;
    let holds = residuals.iter().all(|r| *r < tol);
    Ok(HomomorphismReport { holds, residuals, tolerance: tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn alpha_beta() -> GeneratorAssignment<Word> {
        GeneratorAssignment::new()
            .with("x1", w("beta^-2 alpha beta"))
            .with("x2", w("beta^-1 alpha"))
    }

    #[test]
    fn x5_in_alpha_beta() {
        // r_zeta gives x5 = x1 x2.
        let x5 = substitute(&w("x1 x2"), &alpha_beta()).unwrap();
        assert_eq!(x5, w("beta^-2 alpha^2"));
    }

    #[test]
    fn unmapped_generator() {
        let err = substitute(&w("x3"), &alpha_beta()).unwrap_err();
        assert_eq!(err, PresentationError::UnmappedGenerator("x3".into()));
    }

    #[test]
    fn identity_assignment_fixes_words() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let id = GeneratorAssignment::identity_on(&p);
        let word = w("a b^-1 a a b");
        assert_eq!(substitute(&word, &id).unwrap(), word);
    }

    #[test]
    fn composition_matches_iterated_substitution() {
        let f = GeneratorAssignment::new().with("a", w("b c")).with("b", w("c^-1"));
        let g = GeneratorAssignment::new().with("b", w("x y")).with("c", w("y^-1 x"));
        let word = w("a b^-1 a^2");
        let two_step = substitute(&substitute(&word, &f).unwrap(), &g).unwrap();
        let composed = substitute(&word, &f.then(&g).unwrap()).unwrap();
        assert_eq!(two_step, composed);
    }

    #[test]
    fn trivial_map_holds() {
        let p = Presentation::parse(&["a", "b"], &["a^3", "a b a^-1 b^-1"]).unwrap();
        let a: GeneratorAssignment<Word> =
            GeneratorAssignment::new().with("a", Word::empty()).with("b", Word::empty());
        let rep = verify_homomorphism(&p, &a, 0.5).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.residuals, vec![0.0, 0.0]);
    }

    #[test]
    fn missing_image_is_reported_even_if_unused() {
        let p = Presentation::parse(&["a", "b"], &["a^2"]).unwrap();
        let a = GeneratorAssignment::new().with("a", Word::empty());
        assert!(matches!(
            verify_homomorphism(&p, &a, 0.5),
            Err(PresentationError::UnmappedGenerator(g)) if g == "b"
        ));
    }
}
