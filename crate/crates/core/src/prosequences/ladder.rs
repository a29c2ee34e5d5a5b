use serde::{Deserialize, Serialize};

use super::free_product::{FreeProduct, FreeProductWord};
use super::sequence::FactorSequence;
use super::ProError;

/// Where one factor of the source goes: the whole factor is sent, by `hom`,
/// into factor `target` of the target free product and then conjugated by
/// `conjugator`. `target: None` is the trivial map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorMap {
    pub target: Option<usize>,
    #[serde(default)]
    pub hom: Vec<usize>,
    #[serde(default)]
    pub conjugator: FreeProductWord,
}

impl FactorMap {
    pub fn trivial() -> Self {
        FactorMap { target: None, hom: Vec::new(), conjugator: FreeProductWord::empty() }
    }

    pub fn into_factor(target: usize, hom: Vec<usize>) -> Self {
        FactorMap { target: Some(target), hom, conjugator: FreeProductWord::empty() }
    }
}

/// A factor-wise homomorphism between free products, one entry per source
/// factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorwiseMap {
    pub factors: Vec<FactorMap>,
}

impl FactorwiseMap {
    /// Checks shapes against `source → target`.
    pub fn validate(&self, source: &FreeProduct, target: &FreeProduct) -> Result<(), ProError> {
        let bad = |m: String| Err(ProError::MalformedLadder(m));
        if self.factors.len() != source.rank() {
            return bad(format!("map has {} factor entries for a source of rank {}", self.factors.len(), source.rank()));
        }
        for (p, f) in self.factors.iter().enumerate() {
            let Some(q) = f.target else { continue };
            if q >= target.rank() {
                return bad(format!("factor {p} sent to factor {q} of a rank-{} product", target.rank()));
            }
            let (a, b) = (&source.factors()[p], &target.factors()[q]);
            if !a.is_homomorphism(b, &f.hom) {
                return bad(format!("factor {p}: not a homomorphism {} → {}", a.label(), b.label()));
            }
            target.check(&f.conjugator).map_err(|e| ProError::MalformedLadder(format!("factor {p}: {e}")))?;
        }
        Ok(())
    }

    /// Image of a (valid) word, in normal form.
    pub fn apply(&self, target: &FreeProduct, w: &FreeProductWord) -> Result<FreeProductWord, ProError> {
        let mut out = FreeProductWord::empty();
        for &(p, x) in &w.syllables {
            let f = self.factors.get(p).ok_or(ProError::InvalidSyllable { position: p, element: x })?;
            let Some(q) = f.target else { continue };
            let s = FreeProductWord::syllable(q, f.hom[x]);
            let img = f.conjugator.concat(&s).concat(&target.inverse(&f.conjugator)?);
            out = target.mul(&out, &img)?;
        }
        Ok(out)
    }
}

/// A ladder between the towers `G_j = A_1 ∗ … ∗ A_j` and
/// `H_k = B_1 ∗ … ∗ B_k`: rungs `down[i]: G_{left[i]} → H_{right[i]}` and
/// `up[i − 1]: H_{right[i]} → G_{left[i − 1]}` for `i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ladder {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub down: Vec<FactorwiseMap>,
    pub up: Vec<FactorwiseMap>,
}

impl Ladder {
    pub fn rungs(&self) -> usize {
        self.left.len()
    }
}

fn tower(s: &FactorSequence, j: usize) -> Result<FreeProduct, ProError> {
    let f = s.factors(j);
    if f.len() < j {
        return Err(ProError::MalformedLadder(format!("index {j} exceeds the sequence length {}", f.len())));
    }
    Ok(FreeProduct::new(f))
}

/// Whether `f` and `g` agree on every element of every factor of `source`.
fn agree(
    source: &FreeProduct,
    target: &FreeProduct,
    f: impl Fn(&FreeProductWord) -> Result<FreeProductWord, ProError>,
    g: impl Fn(&FreeProductWord) -> Result<FreeProductWord, ProError>,
) -> Result<bool, ProError> {
    for (p, a) in source.factors().iter().enumerate() {
        for x in 0..a.order() {
            let w = FreeProductWord::syllable(p, x);
            if target.normal_form(&f(&w)?)? != target.normal_form(&g(&w)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks both triangle families of the ladder for rungs `1..=depth`:
/// `up[i−1] ∘ down[i]` is the bonding map `G_{left[i]} → G_{left[i−1]}`, and
/// `down[i−1] ∘ up[i−1]` is the bonding map `H_{right[i]} → H_{right[i−1]}`.
/// Maps are homomorphisms, so agreement on factor elements suffices.
pub fn ladder_verify(sa: &FactorSequence, sb: &FactorSequence, ladder: &Ladder, depth: usize) -> Result<bool, ProError> {
    let n = ladder.rungs();
    if n == 0 || ladder.right.len() != n || ladder.down.len() != n || ladder.up.len() + 1 != n {
        return Err(ProError::MalformedLadder(format!(
            "{} left, {} right indices, {} down and {} up maps",
            n,
            ladder.right.len(),
            ladder.down.len(),
            ladder.up.len()
        )));
    }
    for idx in [&ladder.left, &ladder.right] {
        if idx.windows(2).any(|w| w[0] > w[1]) || idx[0] == 0 {
            return Err(ProError::MalformedLadder(format!("indices {idx:?} must be positive and non-decreasing")));
        }
    }
    let gs: Vec<FreeProduct> = ladder.left.iter().map(|&j| tower(sa, j)).collect::<Result<_, _>>()?;
    let hs: Vec<FreeProduct> = ladder.right.iter().map(|&k| tower(sb, k)).collect::<Result<_, _>>()?;
    for i in 0..n {
        ladder.down[i].validate(&gs[i], &hs[i])?;
        if i > 0 {
            ladder.up[i - 1].validate(&hs[i], &gs[i - 1])?;
        }
    }
    for i in 1..n.min(depth + 1) {
        let (d, u, d_prev) = (&ladder.down[i], &ladder.up[i - 1], &ladder.down[i - 1]);
        let (j0, k0) = (ladder.left[i - 1], ladder.right[i - 1]);
        let left_ok = agree(&gs[i], &gs[i - 1], |w| u.apply(&gs[i - 1], &d.apply(&hs[i], w)?), |w| gs[i].project(w, j0))?;
        let right_ok =
            agree(&hs[i], &hs[i - 1], |w| d_prev.apply(&hs[i - 1], &u.apply(&gs[i - 1], w)?), |w| hs[i].project(w, k0))?;
        if !(left_ok && right_ok) {
            return Ok(false);
        }
    }
    Ok(true)
}
