use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::ProError;

/// A free product `A_1 ∗ … ∗ A_n` of finite groups; positions are 0-based.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    factors: Vec<Arc<FiniteGroup>>,
}

/// A word of syllables `(factor position, element)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeProductWord {
    pub syllables: Vec<(usize, usize)>,
}

impl FreeProductWord {
    pub fn new(syllables: Vec<(usize, usize)>) -> Self {
        FreeProductWord { syllables }
    }

    pub fn empty() -> Self {
        FreeProductWord::default()
    }

    pub fn syllable(position: usize, element: usize) -> Self {
        FreeProductWord { syllables: vec![(position, element)] }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Juxtaposition, without reduction.
    pub fn concat(&self, other: &FreeProductWord) -> FreeProductWord {
        let mut s = self.syllables.clone();
        s.extend_from_slice(&other.syllables);
        FreeProductWord { syllables: s }
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|(p, x)| format!("({p}:{x})")).collect();
        f.write_str(&parts.join(""))
    }
}

impl FreeProduct {
    pub fn new(factors: Vec<Arc<FiniteGroup>>) -> Self {
        FreeProduct { factors }
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn check(&self, w: &FreeProductWord) -> Result<(), ProError> {
        match w.syllables.iter().find(|&&(p, x)| p >= self.factors.len() || x >= self.factors[p].order()) {
            Some(&(position, element)) => Err(ProError::InvalidSyllable { position, element }),
            None => Ok(()),
        }
    }

    /// True iff adjacent syllables lie in different factors and none is the
    /// identity.
    pub fn is_normal(&self, w: &FreeProductWord) -> bool {
        self.check(w).is_ok()
            && w.syllables.iter().all(|&(p, x)| x != self.factors[p].identity())
            && w.syllables.windows(2).all(|s| s[0].0 != s[1].0)
    }

    /// The unique reduced form: identity syllables dropped, neighbours in the
    /// same factor multiplied out, until neither applies.
    pub fn normal_form(&self, w: &FreeProductWord) -> Result<FreeProductWord, ProError> {
        self.check(w)?;
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(w.len());
        for &(p, x) in &w.syllables {
            let g = &self.factors[p];
            let x = match out.last() {
                Some(&(q, y)) if q == p => {
                    out.pop();
                    g.mul(y, x)
                }
                _ => x,
            };
            if x != g.identity() {
                out.push((p, x));
            }
        }
        Ok(FreeProductWord { syllables: out })
    }

    pub fn mul(&self, u: &FreeProductWord, v: &FreeProductWord) -> Result<FreeProductWord, ProError> {
        self.normal_form(&u.concat(v))
    }

    pub fn inverse(&self, w: &FreeProductWord) -> Result<FreeProductWord, ProError> {
        self.check(w)?;
        let s = w.syllables.iter().rev().map(|&(p, x)| (p, self.factors[p].inv(x))).collect();
        self.normal_form(&FreeProductWord { syllables: s })
    }

    /// Kills the factors at positions `keep..`, i.e. the bonding map
    /// `A_1 ∗ … ∗ A_n → A_1 ∗ … ∗ A_keep`.
    pub fn project(&self, w: &FreeProductWord, keep: usize) -> Result<FreeProductWord, ProError> {
        self.check(w)?;
        let s = w.syllables.iter().copied().filter(|&(p, _)| p < keep).collect();
        self.normal_form(&FreeProductWord { syllables: s })
    }

    /// The one-step bonding map `G_n → G_{n−1}`, killing the last factor.
    pub fn projection(&self, w: &FreeProductWord) -> Result<FreeProductWord, ProError> {
        self.project(w, self.rank().saturating_sub(1))
    }

    /// For `w` conjugate into a single factor, returns `(position, g)` with
    /// `w = g · s · g⁻¹` for a syllable `s` at that position. The identity is
    /// reported in factor 0.
    pub fn conjugate_into_factor(&self, w: &FreeProductWord) -> Result<Option<(usize, FreeProductWord)>, ProError> {
        let mut cur = self.normal_form(w)?;
        let mut g = FreeProductWord::empty();
        loop {
            match cur.syllables.as_slice() {
                [] => return Ok(Some((0, g))),
                [(p, _)] => return Ok(Some((*p, self.normal_form(&g)?))),
                [first, .., last] if first.0 == last.0 => {
                    let a = FreeProductWord::syllable(first.0, first.1);
                    let a_inv = self.inverse(&a)?;
                    cur = self.normal_form(&a_inv.concat(&cur).concat(&a))?;
                    g = g.concat(&a);
                }
                _ => return Ok(None),
            }
        }
    }
}
