use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use super::presentation::Presentation;

/// Invariant factors of an abelian group, `d1 | d2 | ... ` followed by one `0`
/// per infinite cyclic summand. Factors equal to 1 are dropped, so the trivial
/// group is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants(Vec<BigUint>);

impl AbelianInvariants {
    pub fn factors(&self) -> &[BigUint] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.0.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> impl Iterator<Item = &BigUint> {
        self.0.iter().filter(|d| !d.is_zero())
    }

    /// Small-integer view; `None` if some factor does not fit in a `u64`.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|d| d.to_u64()).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Serialized as a JSON array of numbers; factors beyond `u64` become strings.
impl Serialize for AbelianInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for d in &self.0 {
            match d.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

/// Relator-by-generator matrix of exponent sums.
pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators()
        .iter()
        .map(|r| {
            p.generators()
                .iter()
                .map(|g| BigInt::from(r.exponent_sum(g)))
                .collect()
        })
        .collect()
}

/// Nonzero diagonal entries of the Smith normal form of `m`, non-negative and
/// each dividing the next.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    changed = true;
                }
            }
            if !changed {
                // Row t and column t are clear; enforce divisibility of the rest.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                }
            }
            // Remainders smaller than the pivot move into pivot position.
            if let Some((pi, pj)) = smallest_in_cross(&a, t) {
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best = (t, t);
    for i in t..a.len() {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    (best != (t, t)).then_some(best)
}

/// Invariant factors of the abelianization of `p`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = exponent_matrix(p);
    let diag = smith_diagonal(&m);
    let rank = diag.len();
    let mut out: Vec<BigUint> = diag
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_biguint().expect("non-negative"))
        .collect();
    debug_assert!(out.iter().all(|d| !d.is_zero()));
    out.extend(std::iter::repeat_n(BigUint::zero(), p.generators().len() - rank));
    AbelianInvariants(out)
}
