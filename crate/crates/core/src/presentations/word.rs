use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use super::PresentationError;

/// Name of a generator. Cheap to clone; compared by string value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Generator {
    fn from(s: &str) -> Self {
        Generator::new(s)
    }
}

impl From<String> for Generator {
    fn from(s: String) -> Self {
        Generator(Arc::from(s))
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Generator::from(s))
    }
}

/// A generator raised to the power +1 or -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<Generator>, exponent: i64) -> Result<Self, PresentationError> {
        let inverse = match exponent {
            1 => false,
            -1 => true,
            e => return Err(PresentationError::InvalidExponent(e)),
        };
        Ok(Letter { generator: generator.into(), inverse })
    }

    pub fn positive(generator: impl Into<Generator>) -> Self {
        Letter { generator: generator.into(), inverse: false }
    }

    pub fn negative(generator: impl Into<Generator>) -> Self {
        Letter { generator: generator.into(), inverse: true }
    }

    pub fn exponent(&self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }

    /// True when `self` followed by `other` cancels.
    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(self.generator.as_str())?;
        t.serialize_element(&self.exponent())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (name, exponent): (String, i64) = Deserialize::deserialize(d)?;
        Letter::new(name, exponent).map_err(de::Error::custom)
    }
}

/// A word in signed generator letters. Not necessarily reduced; use
/// [`free_reduce`] or [`Word::reduced`] when a canonical form is needed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// The one-letter word `g`.
    pub fn generator(g: impl Into<Generator>) -> Self {
        Word(vec![Letter::positive(g)])
    }

    /// Builds a word from `(name, exponent)` pairs with arbitrary integer
    /// exponents, expanding them into ±1 letters.
    pub fn from_powers<S: AsRef<str>>(powers: &[(S, i64)]) -> Self {
        let mut letters = Vec::new();
        for (name, e) in powers {
            let g = Generator::new(name.as_ref());
            for _ in 0..e.unsigned_abs() {
                letters.push(Letter { generator: g.clone(), inverse: *e < 0 });
            }
        }
        Word(letters)
    }

    /// Parses whitespace- or `*`-separated factors of the form `g` or `g^k`.
    /// `1` and the empty string denote the empty word.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut powers: Vec<(String, i64)> = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() || token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp = exp
                        .trim_start_matches('{')
                        .trim_end_matches('}')
                        .parse::<i64>()
                        .map_err(|_| PresentationError::Parse(format!("bad exponent in `{token}`")))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(PresentationError::Parse(format!("missing generator in `{token}`")));
            }
            powers.push((name.to_string(), exp));
        }
        Ok(Word::from_powers(&powers))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Formal inverse (reverse order, flip every exponent).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Reduced product `self · other` in the free group.
    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(&self.concat(other))
    }

    /// Reduced power; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        free_reduce(&Word(letters))
    }

    pub fn reduced(&self) -> Word {
        free_reduce(self)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(a), Some(b)) if self.len() > 1 => !b.cancels(a),
                _ => true,
            }
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.0
            .iter()
            .filter(|l| &l.generator == g)
            .map(|l| l.exponent() as i64)
            .sum()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.0.iter().map(|l| l.generator.clone()).collect()
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    /// `(name, ±1)` pairs, the exchange-format view of the word.
    pub fn to_pairs(&self) -> Vec<(String, i32)> {
        self.0
            .iter()
            .map(|l| (l.generator.to_string(), l.exponent()))
            .collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Run-length display, e.g. `x5 x2^-1 x1^-1` or `b^-2 a^2`; `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let power = (j - i) as i64 * l.exponent() as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if power == 1 {
                write!(f, "{}", l.generator)?;
            } else {
                write!(f, "{}^{}", l.generator, power)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Unique freely reduced form: cancels adjacent `g g^-1` / `g^-1 g` pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in &w.0 {
        match out.last() {
            Some(top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l.clone()),
        }
    }
    Word(out)
}

/// Splits `w` as `conjugator · reduced · conjugator⁻¹` (after free reduction)
/// with `reduced` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let r = free_reduce(w);
    let letters = r.letters();
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[hi - 1].cancels(&letters[lo]) {
        lo += 1;
        hi -= 1;
    }
    (Word(letters[lo..hi].to_vec()), Word(letters[..lo].to_vec()))
}

/// Whether `u` and `v` agree up to cyclic rotation, inversion and conjugation,
/// i.e. they define the same normal closure generator up to the obvious moves.
pub fn equivalent_relators(u: &Word, v: &Word) -> bool {
    let (cu, _) = cyclic_reduce(u);
    let (cv, _) = cyclic_reduce(v);
    if cu.len() != cv.len() {
        return false;
    }
    if cu.is_empty() {
        return true;
    }
    let cv_inv = cv.inverse();
    (0..cu.len()).any(|k| {
        let rot = cu.rotate(k);
        rot == cv || rot == cv_inv
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn cancellation_to_empty() {
        assert!(free_reduce(&w("a a^-1")).is_empty());
        assert!(free_reduce(&w("a^-1 b b^-1 a")).is_empty());
    }

    #[test]
    fn reduces_to_surgery_relator() {
        let raw = w("x5 x2^-1 x2 x2^-1 x1^-1");
        assert_eq!(free_reduce(&raw), w("x5 x2^-1 x1^-1"));
    }

    #[test]
    fn cyclic_reduce_peels_conjugator() {
        let (r, c) = cyclic_reduce(&w("a b a^-1"));
        assert_eq!(r, w("b"));
        assert_eq!(c, w("a"));
        let (r, c) = cyclic_reduce(&w("a b"));
        assert_eq!(r, w("a b"));
        assert!(c.is_empty());
    }

    #[test]
    fn cyclic_reduce_of_conjugated_inverse_pair() {
        // a b b^-1 a^-1 reduces to the empty word entirely.
        let (r, c) = cyclic_reduce(&w("a b b^-1 a^-1"));
        assert!(r.is_empty());
        assert!(c.is_empty());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let word = w("b^-2 a^2 x7");
        assert_eq!(word.len(), 5);
        assert_eq!(word.to_string(), "b^-2 a^2 x7");
        assert_eq!(Word::empty().to_string(), "1");
        assert!(Word::parse("a^x").is_err());
        assert!(Word::parse("^2").is_err());
    }

    #[test]
    fn letter_rejects_bad_exponent() {
        assert_eq!(Letter::new("a", 2), Err(PresentationError::InvalidExponent(2)));
    }

    #[test]
    fn equivalence_up_to_rotation_inversion_conjugation() {
        let r = w("x5 x2^-1 x1^-1");
        assert!(equivalent_relators(&r, &w("x1^-1 x5 x2^-1")));
        assert!(equivalent_relators(&r, &w("x1 x2 x5^-1")));
        assert!(equivalent_relators(&r, &w("g x2^-1 x1^-1 x5 g^-1")));
        assert!(!equivalent_relators(&r, &w("x5 x1^-1 x2^-1")));
    }

    #[test]
    fn exponent_sums_and_powers() {
        let word = w("a^3 b a^-1");
        assert_eq!(word.exponent_sum(&Generator::new("a")), 2);
        assert_eq!(w("a b").pow(-2), w("b^-1 a^-1 b^-1 a^-1"));
        assert!(w("a b").pow(0).is_empty());
    }
}
