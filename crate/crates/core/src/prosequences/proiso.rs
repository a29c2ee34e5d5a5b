use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::group::{group_isomorphic, homomorphisms, is_admissible_factor, FiniteGroup};
use super::ladder::{FactorMap, FactorwiseMap, Ladder};
use super::sequence::{FactorSequence, Multiplicity};
use super::ProError;

/// Alphabet letters of both sequences that are isomorphic to each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorClass {
    pub order: usize,
    pub labels_a: Vec<String>,
    pub labels_b: Vec<String>,
    pub multiplicity_a: Multiplicity,
    pub multiplicity_b: Multiplicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every class occurs equally often on both sides.
    Matching { classes: Vec<FactorClass> },
    /// A class occurring more often on one side.
    Distinguishing { class: FactorClass },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProIsoReport {
    pub decision: bool,
    pub certificate: Certificate,
}

/// Isomorphism classes of the letters of both alphabets, with an
/// isomorphism from every letter to its class representative.
struct Classes {
    /// (class, map to representative) per letter of `sa`, then `sb`.
    a: Vec<(usize, Vec<usize>)>,
    b: Vec<(usize, Vec<usize>)>,
    reps: Vec<Arc<FiniteGroup>>,
}

impl Classes {
    fn new(sa: &FactorSequence, sb: &FactorSequence) -> Result<Self, ProError> {
        let mut reps: Vec<Arc<FiniteGroup>> = Vec::new();
        let mut place = |g: &Arc<FiniteGroup>| -> Result<(usize, Vec<usize>), ProError> {
            if !is_admissible_factor(g) {
                return Err(ProError::InadmissibleFactor(g.label().to_string()));
            }
            for (c, r) in reps.iter().enumerate() {
                if let Some(m) = group_isomorphic(g, r)? {
                    return Ok((c, m));
                }
            }
            reps.push(g.clone());
            Ok((reps.len() - 1, (0..g.order()).collect()))
        };
        let a = sa.alphabet().iter().map(&mut place).collect::<Result<Vec<_>, _>>()?;
        let b = sb.alphabet().iter().map(&mut place).collect::<Result<Vec<_>, _>>()?;
        Ok(Classes { a, b, reps })
    }

    /// Isomorphism from letter `i` of `sa` to letter `k` of `sb`.
    fn iso(&self, i: usize, k: usize) -> Vec<usize> {
        let (ca, to_rep) = &self.a[i];
        let (cb, b_to_rep) = &self.b[k];
        assert_eq!(ca, cb);
        let mut rep_to_b = vec![0; b_to_rep.len()];
        for (x, &r) in b_to_rep.iter().enumerate() {
            rep_to_b[r] = x;
        }
        to_rep.iter().map(|&r| rep_to_b[r]).collect()
    }
}

/// Decides pro-isomorphism of the towers of free products of two factor
/// sequences: they are pro-isomorphic iff every isomorphism class of factor
/// occurs equally often (finite count or infinitely often) on both sides.
pub fn pro_isomorphic(sa: &FactorSequence, sb: &FactorSequence) -> Result<ProIsoReport, ProError> {
    let classes = Classes::new(sa, sb)?;
    let mut table: BTreeMap<usize, FactorClass> = BTreeMap::new();
    let blank = |c: usize| FactorClass {
        order: classes.reps[c].order(),
        labels_a: Vec::new(),
        labels_b: Vec::new(),
        multiplicity_a: Multiplicity::Finite(0),
        multiplicity_b: Multiplicity::Finite(0),
    };
    for (i, g) in sa.alphabet().iter().enumerate() {
        let c = table.entry(classes.a[i].0).or_insert_with(|| blank(classes.a[i].0));
        c.labels_a.push(g.label().to_string());
        c.multiplicity_a = c.multiplicity_a + sa.multiplicities()[i];
    }
    for (k, g) in sb.alphabet().iter().enumerate() {
        let c = table.entry(classes.b[k].0).or_insert_with(|| blank(classes.b[k].0));
        c.labels_b.push(g.label().to_string());
        c.multiplicity_b = c.multiplicity_b + sb.multiplicities()[k];
    }
    let found: Vec<FactorClass> = table
        .into_values()
        .filter(|c| c.multiplicity_a.is_positive() || c.multiplicity_b.is_positive())
        .collect();
    Ok(match found.iter().find(|c| c.multiplicity_a != c.multiplicity_b) {
        Some(c) => ProIsoReport { decision: false, certificate: Certificate::Distinguishing { class: c.clone() } },
        None => ProIsoReport { decision: true, certificate: Certificate::Matching { classes: found } },
    })
}

fn invert(m: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; m.len()];
    for (x, &y) in m.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// The matching `Φ` between positions, restricted to the first `horizon`
/// factors of each side: the `n`-th factor of a class in `sa` goes to the
/// `n`-th factor of that class in `sb`.
struct Matching {
    ta: Vec<usize>,
    tb: Vec<usize>,
    phi: Vec<Option<usize>>,
    phi_inv: Vec<Option<usize>>,
}

impl Matching {
    fn new(classes: &Classes, sa: &FactorSequence, sb: &FactorSequence, horizon: usize) -> Self {
        let ta = sa.truncation(horizon);
        let tb = sb.truncation(horizon);
        let mut queues: BTreeMap<usize, std::collections::VecDeque<usize>> = BTreeMap::new();
        for (q, &k) in tb.iter().enumerate() {
            queues.entry(classes.b[k].0).or_default().push_back(q);
        }
        let mut phi = vec![None; ta.len()];
        let mut phi_inv = vec![None; tb.len()];
        for (p, &i) in ta.iter().enumerate() {
            if let Some(q) = queues.get_mut(&classes.a[i].0).and_then(|d| d.pop_front()) {
                phi[p] = Some(q);
                phi_inv[q] = Some(p);
            }
        }
        Matching { ta, tb, phi, phi_inv }
    }

    fn phi(&self, p: usize) -> Option<usize> {
        self.phi.get(p).copied().flatten()
    }

    fn phi_inv(&self, q: usize) -> Option<usize> {
        self.phi_inv.get(q).copied().flatten()
    }

    /// Smallest admissible next index: one past every image of `0..below`.
    fn reach(&self, f: impl Fn(usize) -> Option<usize>, below: usize) -> Option<usize> {
        (0..below).map(|x| f(x).map(|y| y + 1)).try_fold(0, |acc, y| y.map(|y| acc.max(y)))
    }

    fn build(&self, classes: &Classes, sa: &FactorSequence, sb: &FactorSequence, rungs: usize) -> Option<Ladder> {
        let cap_a = sa.len().unwrap_or(usize::MAX);
        let cap_b = sb.len().unwrap_or(usize::MAX);
        let mut right = vec![1];
        let mut left = vec![self.reach(|q| self.phi_inv(q), 1)?.max(1)];
        for i in 1..rungs {
            let k = self.reach(|p| self.phi(p), left[i - 1])?.max((right[i - 1] + 1).min(cap_b));
            let j = self.reach(|q| self.phi_inv(q), k)?.max((left[i - 1] + 1).min(cap_a));
            right.push(k);
            left.push(j);
        }
        let mut down = Vec::with_capacity(rungs);
        let mut up = Vec::with_capacity(rungs.saturating_sub(1));
        for i in 0..rungs {
            let mut factors = Vec::with_capacity(left[i]);
            for p in 0..left[i] {
                let q = self.phi(p)?;
                factors.push(if q < right[i] {
                    FactorMap::into_factor(q, classes.iso(self.ta[p], self.tb[q]))
                } else {
                    FactorMap::trivial()
                });
            }
            down.push(FactorwiseMap { factors });
            if i > 0 {
                let mut factors = Vec::with_capacity(right[i]);
                for q in 0..right[i] {
                    let p = self.phi_inv(q)?;
                    factors.push(if p < left[i - 1] {
                        FactorMap::into_factor(p, invert(&classes.iso(self.ta[p], self.tb[q])))
                    } else {
                        FactorMap::trivial()
                    });
                }
                up.push(FactorwiseMap { factors });
            }
        }
        Some(Ladder { left, right, down, up })
    }
}

/// Builds a ladder with `rungs` rungs from the class matching, when the
/// sequences are pro-isomorphic. Each factor is sent isomorphically onto its
/// matched partner when the partner lies in the target truncation, and
/// killed otherwise; no conjugation is needed.
pub fn build_ladder(sa: &FactorSequence, sb: &FactorSequence, rungs: usize) -> Result<Option<Ladder>, ProError> {
    if rungs == 0 || !pro_isomorphic(sa, sb)?.decision {
        return Ok(None);
    }
    let classes = Classes::new(sa, sb)?;
    let mut horizon = 4 * rungs + 4;
    loop {
        let m = Matching::new(&classes, sa, sb, horizon);
        if let Some(l) = m.build(&classes, sa, sb, rungs) {
            return Ok(Some(l));
        }
        let exhausted = m.ta.len() < horizon && m.tb.len() < horizon;
        assert!(!exhausted, "equal class multiplicities give a complete matching of finite sequences");
        horizon *= 2;
    }
}

/// Result of the bounded search for ladder segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Refutation {
    /// No segment starting at `level` on the `from` side exists within the
    /// search bounds.
    Refuted { level: usize, from: &'static str },
    /// Segments were found at every level searched.
    NotRefuted { levels: usize },
    Inconclusive { states: u64 },
}

/// Bounded refutation of pro-isomorphism, as evidence rather than proof.
///
/// A pro-isomorphism restricts, at every level `n`, to a segment
/// `d₀: G_{j₀} → H_{k₀}`, `u: H_{k₁} → G_{j₀}`, `d₁: G_{j₁} → H_{k₁}` with
/// `j₀, k₀ ≥ n` and both triangles commuting. For `n = 1..=depth`, in both
/// directions, this searches all such segments with indices at most
/// `n + depth` and factor-wise maps without conjugation. Enlarging `j₁` or
/// `k₁` never hurts (extra factors can be killed), so they are fixed at the
/// bound. `budget` caps the number of partial assignments tried.
pub fn refute_ladders(sa: &FactorSequence, sb: &FactorSequence, depth: usize, budget: u64) -> Result<Refutation, ProError> {
    for g in sa.alphabet().iter().chain(sb.alphabet()) {
        if !is_admissible_factor(g) {
            return Err(ProError::InadmissibleFactor(g.label().to_string()));
        }
    }
    let mut search = SegmentSearch { states: 0, budget, homs: BTreeMap::new() };
    for n in 1..=depth {
        for (from, x, y) in [("a", sa, sb), ("b", sb, sa)] {
            if x.len().is_some_and(|l| l < n) {
                continue;
            }
            match search.exists(x, y, n, depth) {
                None => return Ok(Refutation::Inconclusive { states: search.states }),
                Some(false) => return Ok(Refutation::Refuted { level: n, from }),
                Some(true) => {}
            }
        }
    }
    Ok(Refutation::NotRefuted { levels: depth })
}

type HomTable = Vec<Vec<usize>>;

struct SegmentSearch {
    states: u64,
    budget: u64,
    homs: BTreeMap<(usize, usize), Arc<HomTable>>,
}

fn is_identity_map(m: &[usize]) -> bool {
    m.iter().enumerate().all(|(x, &y)| x == y)
}

impl SegmentSearch {
    fn homs(&mut self, g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Arc<HomTable> {
        let key = (Arc::as_ptr(g) as usize, Arc::as_ptr(h) as usize);
        self.homs.entry(key).or_insert_with(|| Arc::new(homomorphisms(g, h))).clone()
    }

    fn exists(&mut self, x: &FactorSequence, y: &FactorSequence, n: usize, depth: usize) -> Option<bool> {
        let bx = x.len().map_or(n + depth, |l| l.min(n + depth));
        let by = y.len().map_or(n + depth, |l| l.min(n + depth));
        let (a, b) = (x.factors(bx), y.factors(by));
        for j0 in n..=bx {
            for k0 in n.min(by)..=by {
                if self.segment(&a, &b, j0, k0)? {
                    return Some(true);
                }
            }
        }
        Some(false)
    }

    /// Segment with `j₁ = |a|`, `k₁ = |b|`.
    fn segment(&mut self, a: &[Arc<FiniteGroup>], b: &[Arc<FiniteGroup>], j0: usize, k0: usize) -> Option<bool> {
        let k1 = b.len();
        // u(q) options: (p, hom B_q → A_p); injective below k0, onto above.
        let mut opts: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(k1);
        for (q, bq) in b.iter().enumerate() {
            let mut o = Vec::new();
            for (p, ap) in a.iter().enumerate().take(j0) {
                for h in self.homs(bq, ap).iter() {
                    let mut seen = vec![false; ap.order()];
                    let mut distinct = 0;
                    for &y in h {
                        if !seen[y] {
                            seen[y] = true;
                            distinct += 1;
                        }
                    }
                    let keep = if q < k0 { distinct == bq.order() } else { distinct == ap.order() };
                    if keep {
                        o.push((p, h.clone()));
                    }
                }
            }
            opts.push(o);
        }
        let ab: Vec<Vec<Arc<HomTable>>> =
            a.iter().map(|ap| b.iter().map(|bq| self.homs(ap, bq)).collect()).collect();
        let mut u: Vec<Option<(usize, Vec<usize>)>> = Vec::with_capacity(k1);
        self.assign(a, b, j0, k0, &opts, &ab, &mut u)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &mut self,
        a: &[Arc<FiniteGroup>],
        b: &[Arc<FiniteGroup>],
        j0: usize,
        k0: usize,
        opts: &[Vec<(usize, Vec<usize>)>],
        ab: &[Vec<Arc<HomTable>>],
        u: &mut Vec<Option<(usize, Vec<usize>)>>,
    ) -> Option<bool> {
        self.states += 1;
        if self.states > self.budget {
            return None;
        }
        let q = u.len();
        if q == b.len() {
            return Some(Self::left_triangle(a, j0, ab, u));
        }
        for (p, h) in &opts[q] {
            u.push(Some((*p, h.clone())));
            if Self::d0_feasible(b, *p, k0, ab, u) && self.assign(a, b, j0, k0, opts, ab, u)? {
                return Some(true);
            }
            u.pop();
        }
        if q >= k0 {
            u.push(None);
            if self.assign(a, b, j0, k0, opts, ab, u)? {
                return Some(true);
            }
            u.pop();
        }
        Some(false)
    }

    /// Whether some `d₀(p)` makes `d₀ ∘ u` the bonding map on every `q`
    /// currently sent to factor `p`.
    fn d0_feasible(
        b: &[Arc<FiniteGroup>],
        p: usize,
        k0: usize,
        ab: &[Vec<Arc<HomTable>>],
        u: &[Option<(usize, Vec<usize>)>],
    ) -> bool {
        let hit: Vec<(usize, &Vec<usize>)> =
            u.iter().enumerate().filter_map(|(q, s)| s.as_ref().filter(|s| s.0 == p).map(|s| (q, &s.1))).collect();
        if hit.iter().all(|&(q, _)| q >= k0) {
            return true; // d₀(p) trivial
        }
        (0..k0).any(|target| {
            ab[p][target].iter().any(|h2| {
                hit.iter().all(|&(q, h1)| {
                    let comp: Vec<usize> = h1.iter().map(|&x| h2[x]).collect();
                    if q < k0 {
                        q == target && is_identity_map(&comp)
                    } else {
                        comp.iter().all(|&y| y == b[target].identity())
                    }
                })
            })
        })
    }

    /// `u ∘ d₁` is the bonding map: each factor below `j₀` is a retract of
    /// some factor sent onto it by `u`.
    fn left_triangle(a: &[Arc<FiniteGroup>], j0: usize, ab: &[Vec<Arc<HomTable>>], u: &[Option<(usize, Vec<usize>)>]) -> bool {
        (0..j0.min(a.len())).all(|p| {
            u.iter().enumerate().any(|(q, s)| match s {
                Some((pp, h1)) if *pp == p => ab[p][q].iter().any(|h| is_identity_map(&h.iter().map(|&x| h1[x]).collect::<Vec<_>>())),
                _ => false,
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prosequences::ladder_verify;

    fn seq(entries: &[(FiniteGroup, Multiplicity)]) -> FactorSequence {
        FactorSequence::new(entries.to_vec()).unwrap()
    }

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    const INF: Multiplicity = Multiplicity::Infinite;

    #[test]
    fn reflexive_with_identity_ladder() {
        let s = seq(&[(z(2), INF), (FiniteGroup::symmetric(3), Multiplicity::Finite(2))]);
        let r = pro_isomorphic(&s, &s).unwrap();
        assert!(r.decision);
        let l = build_ladder(&s, &s, 4).unwrap().unwrap();
        assert!(l.down.iter().all(|m| m.factors.iter().enumerate().all(|(p, f)| f.target.is_none() || f.target == Some(p))));
        assert!(ladder_verify(&s, &s, &l, 4).unwrap());
    }

    #[test]
    fn alternating_shift() {
        let sa = seq(&[(z(2), INF), (z(3), INF)]);
        let sb = seq(&[(z(3), INF), (z(2), INF)]);
        assert!(pro_isomorphic(&sa, &sb).unwrap().decision);
        let l = build_ladder(&sa, &sb, 5).unwrap().unwrap();
        assert!(ladder_verify(&sa, &sb, &l, 5).unwrap());
        assert_eq!(refute_ladders(&sa, &sb, 3, 1_000_000).unwrap(), Refutation::NotRefuted { levels: 3 });
    }

    #[test]
    fn z5_is_distinguishing() {
        let sa = seq(&[(z(2), INF), (z(5), INF)]);
        let sb = seq(&[(z(2), INF), (z(5), Multiplicity::Finite(0))]);
        let r = pro_isomorphic(&sa, &sb).unwrap();
        assert!(!r.decision);
        match r.certificate {
            Certificate::Distinguishing { class } => {
                assert_eq!(class.labels_a, vec!["Z5"]);
                assert_eq!((class.multiplicity_a, class.multiplicity_b), (INF, Multiplicity::Finite(0)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(build_ladder(&sa, &sb, 3).unwrap(), None);
        assert_eq!(refute_ladders(&sa, &sb, 3, 1_000_000).unwrap(), Refutation::Refuted { level: 2, from: "a" });
    }

    #[test]
    fn relabelled_letters_share_a_class() {
        let sa = seq(&[(z(2).with_label("C2"), Multiplicity::Finite(1)), (z(2), Multiplicity::Finite(1))]);
        let sb = seq(&[(z(2), Multiplicity::Finite(2))]);
        let r = pro_isomorphic(&sa, &sb).unwrap();
        assert!(r.decision);
        let l = build_ladder(&sa, &sb, 3).unwrap().unwrap();
        assert!(ladder_verify(&sa, &sb, &l, 3).unwrap());
    }

    #[test]
    fn wrong_target_breaks_the_ladder() {
        let sa = seq(&[(z(2), INF), (z(3), INF)]);
        let mut l = build_ladder(&sa, &sa, 3).unwrap().unwrap();
        assert_eq!((l.left[2], l.right[2]), (3, 3));
        // Send the first Z2 to the second Z2 instead of itself.
        l.down[2].factors[0] = FactorMap::into_factor(2, vec![0, 1]);
        assert!(!ladder_verify(&sa, &sa, &l, 3).unwrap());
        l.down[2].factors[0] = FactorMap::into_factor(1, vec![0, 1]);
        assert!(matches!(ladder_verify(&sa, &sa, &l, 3), Err(ProError::MalformedLadder(_))));
    }

    #[test]
    fn inadmissible_factor() {
        let sa = seq(&[(FiniteGroup::trivial(), INF)]);
        assert_eq!(pro_isomorphic(&sa, &sa), Err(ProError::InadmissibleFactor("Z1".into())));
    }

    #[test]
    fn klein_group_is_not_two_z2() {
        let v4 = FiniteGroup::direct_product(&z(2), &z(2));
        let sa = seq(&[(v4, INF)]);
        let sb = seq(&[(z(2), INF)]);
        assert!(!pro_isomorphic(&sa, &sb).unwrap().decision);
        assert!(matches!(refute_ladders(&sa, &sb, 3, 1_000_000).unwrap(), Refutation::Refuted { .. }));
    }
}
