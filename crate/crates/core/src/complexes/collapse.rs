use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::complex::{Simplex, SimplicialComplex};
use super::ComplexError;

/// An ordered list of elementary collapses `(free face, coface)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<(Simplex, Simplex)>,
}

impl CollapseSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps with vertex names, for reports and data files.
    pub fn named(&self, k: &SimplicialComplex) -> Vec<(Vec<String>, Vec<String>)> {
        self.steps.iter().map(|(f, t)| (k.simplex_names(f), k.simplex_names(t))).collect()
    }

    /// Reads named steps back against `k`'s vertex table.
    pub fn from_named(k: &SimplicialComplex, steps: &[(Vec<String>, Vec<String>)]) -> Result<Self, ComplexError> {
        let conv = |v: &Vec<String>| k.simplex(&v.iter().map(String::as_str).collect::<Vec<_>>());
        Ok(CollapseSequence {
            steps: steps.iter().map(|(f, t)| Ok((conv(f)?, conv(t)?))).collect::<Result<_, ComplexError>>()?,
        })
    }
}

/// True iff every step is a free pair when applied and the end result is a
/// single vertex.
pub fn verify_collapse_sequence(k: &SimplicialComplex, s: &CollapseSequence) -> bool {
    let mut cur = k.clone();
    for (f, t) in &s.steps {
        match cur.elementary_collapse(f, t) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    cur.f_vector() == vec![1]
}

/// Why a complex cannot collapse to a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum NonCollapsible {
    Disconnected { components: usize },
    EulerCharacteristic { chi: i64 },
    NoFreeFace,
    /// Every dimension-non-increasing collapse order was tried.
    SearchExhausted { states: u64 },
}

impl NonCollapsible {
    pub fn describe(&self) -> String {
        match self {
            NonCollapsible::Disconnected { components } => format!("{components} components"),
            NonCollapsible::EulerCharacteristic { chi } => format!("Euler characteristic {chi} != 1"),
            NonCollapsible::NoFreeFace => "no free face".into(),
            NonCollapsible::SearchExhausted { states } => format!("search exhausted after {states} states"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseVerdict {
    Collapsible(CollapseSequence),
    NotCollapsible(NonCollapsible),
}

/// Search limits. `budget` bounds the number of search states visited over
/// all phases; `restarts` is the number of seeded random greedy runs tried
/// before the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub seed: u64,
    pub restarts: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 1_000_000, seed: 0, restarts: 32 }
    }
}

/// Decides whether `k` collapses to a point.
///
/// Cheap proofs come first (connectivity, χ, an empty free-face set). Then a
/// deterministic greedy pass, seeded random greedy restarts, and finally a
/// depth-first search with memoized states. Only collapses of the current
/// top dimension are considered, which loses nothing: any collapse to a
/// point can be reordered so that dimensions never increase.
pub fn is_collapsible(k: &SimplicialComplex, budget: u64, seed: u64) -> Result<CollapseVerdict, ComplexError> {
    is_collapsible_with(k, SearchOptions { budget, seed, ..SearchOptions::default() })
}

pub fn is_collapsible_with(k: &SimplicialComplex, opts: SearchOptions) -> Result<CollapseVerdict, ComplexError> {
    if k.is_empty() {
        return Err(ComplexError::Empty);
    }
    let components = k.components();
    if components != 1 {
        return Ok(CollapseVerdict::NotCollapsible(NonCollapsible::Disconnected { components }));
    }
    let chi = k.euler_characteristic();
    if chi != 1 {
        return Ok(CollapseVerdict::NotCollapsible(NonCollapsible::EulerCharacteristic { chi }));
    }
    if k.f_vector() == vec![1] {
        return Ok(CollapseVerdict::Collapsible(CollapseSequence::default()));
    }
    if k.free_faces().is_empty() {
        return Ok(CollapseVerdict::NotCollapsible(NonCollapsible::NoFreeFace));
    }

    let mut search = Search::new(k, opts.budget);
    if let Some(seq) = search.greedy(None)? {
        return Ok(CollapseVerdict::Collapsible(seq));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        if let Some(seq) = search.greedy(Some(&mut rng))? {
            return Ok(CollapseVerdict::Collapsible(seq));
        }
    }
    match search.exhaustive()? {
        Some(seq) => Ok(CollapseVerdict::Collapsible(seq)),
        None => Ok(CollapseVerdict::NotCollapsible(NonCollapsible::SearchExhausted { states: search.states })),
    }
}

/// Indexed form of a complex with incremental free-face bookkeeping.
struct Search<'a> {
    k: &'a SimplicialComplex,
    simplices: Vec<Simplex>,
    dim: Vec<usize>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    budget: u64,
    states: u64,
}

/// Mutable search state.
#[derive(Clone)]
struct State {
    present: Vec<u64>,
    live_cofaces: Vec<u32>,
    per_dim: Vec<usize>,
}

impl State {
    fn has(&self, i: usize) -> bool {
        self.present[i / 64] >> (i % 64) & 1 == 1
    }

    fn top_dim(&self) -> usize {
        self.per_dim.iter().rposition(|&n| n > 0).unwrap_or(0)
    }
}

impl<'a> Search<'a> {
    fn new(k: &'a SimplicialComplex, budget: u64) -> Self {
        let simplices: Vec<Simplex> = k.simplices().iter().cloned().collect();
        let index: std::collections::HashMap<&Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut faces = vec![Vec::new(); simplices.len()];
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            for f in s.boundary() {
                let j = index[&f];
                faces[i].push(j);
                cofaces[j].push(i);
            }
        }
        let dim = simplices.iter().map(Simplex::dim).collect();
        Search { k, simplices, dim, faces, cofaces, budget, states: 0 }
    }

    fn initial(&self) -> State {
        let n = self.simplices.len();
        let mut present = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            present[i / 64] |= 1 << (i % 64);
        }
        let live_cofaces = self.cofaces.iter().map(|c| c.len() as u32).collect();
        let mut per_dim = vec![0; self.k.dim().unwrap_or(0) + 1];
        for &d in &self.dim {
            per_dim[d] += 1;
        }
        State { present, live_cofaces, per_dim }
    }

    fn tick(&mut self) -> Result<(), ComplexError> {
        self.states += 1;
        if self.states > self.budget {
            return Err(ComplexError::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn remove(&self, st: &mut State, i: usize) {
        st.present[i / 64] &= !(1 << (i % 64));
        st.per_dim[self.dim[i]] -= 1;
        for &f in &self.faces[i] {
            st.live_cofaces[f] -= 1;
        }
    }

    fn live_coface(&self, st: &State, i: usize) -> usize {
        *self.cofaces[i].iter().find(|&&c| st.has(c)).expect("free face has a coface")
    }

    /// Free pairs whose coface has the current top dimension, in index order.
    fn candidates(&self, st: &State) -> Vec<(usize, usize)> {
        let top = st.top_dim();
        if top == 0 {
            return Vec::new();
        }
        (0..self.simplices.len())
            .filter(|&i| self.dim[i] + 1 == top && st.has(i) && st.live_cofaces[i] == 1)
            .map(|i| (i, self.live_coface(st, i)))
            .collect()
    }

    fn collapse(&self, st: &mut State, (f, t): (usize, usize)) {
        self.remove(st, t);
        self.remove(st, f);
    }

    /// Once only a graph is left, prunes leaves down to one vertex. The graph
    /// is connected with χ = 1 (both are collapse invariants), hence a tree.
    fn finish(&self, st: &mut State, steps: &mut Vec<(usize, usize)>) -> bool {
        loop {
            let cands = self.candidates(st);
            match cands.first() {
                Some(&pair) => {
                    self.collapse(st, pair);
                    steps.push(pair);
                }
                None => return st.top_dim() == 0 && st.per_dim[0] == 1,
            }
        }
    }

    fn sequence(&self, steps: &[(usize, usize)]) -> CollapseSequence {
        CollapseSequence {
            steps: steps.iter().map(|&(f, t)| (self.simplices[f].clone(), self.simplices[t].clone())).collect(),
        }
    }

    /// One greedy run: first candidate, or a uniformly random one.
    fn greedy(&mut self, mut rng: Option<&mut ChaCha8Rng>) -> Result<Option<CollapseSequence>, ComplexError> {
        let mut st = self.initial();
        let mut steps = Vec::new();
        while st.top_dim() >= 2 {
            self.tick()?;
            let cands = self.candidates(&st);
            let pick = match rng.as_deref_mut() {
                Some(r) => cands.choose(r).copied(),
                None => cands.first().copied(),
            };
            let Some(pair) = pick else { return Ok(None) };
            self.collapse(&mut st, pair);
            steps.push(pair);
        }
        Ok(self.finish(&mut st, &mut steps).then(|| self.sequence(&steps)))
    }

    /// Depth-first search over top-dimensional collapses, skipping states
    /// already seen. `None` means every reachable state was explored.
    fn exhaustive(&mut self) -> Result<Option<CollapseSequence>, ComplexError> {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let root = self.initial();
        // Stack of (state, remaining candidates); `steps` tracks the path.
        let mut stack: Vec<(State, Vec<(usize, usize)>)> = Vec::new();
        let mut steps: Vec<(usize, usize)> = Vec::new();
        self.tick()?;
        seen.insert(root.present.clone());
        let mut cands = self.candidates(&root);
        cands.reverse();
        stack.push((root, cands));
        while let Some((st, cands)) = stack.last_mut() {
            if st.top_dim() < 2 {
                let mut end = st.clone();
                let mut path = steps.clone();
                if self.finish(&mut end, &mut path) {
                    return Ok(Some(self.sequence(&path)));
                }
                stack.pop();
                steps.pop();
                continue;
            }
            let Some(pair) = cands.pop() else {
                stack.pop();
                steps.pop();
                continue;
            };
            let mut next = st.clone();
            self.collapse(&mut next, pair);
            if !seen.insert(next.present.clone()) {
                continue;
            }
            self.tick()?;
            let mut next_cands = self.candidates(&next);
            next_cands.reverse();
            steps.push(pair);
            stack.push((next, next_cands));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(v: &[&str], s: &[&[&str]]) -> SimplicialComplex {
        SimplicialComplex::from_named(v, &s.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn expect_sequence(k: &SimplicialComplex) -> CollapseSequence {
        match is_collapsible(k, 100_000, 7).unwrap() {
            CollapseVerdict::Collapsible(s) => s,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangle_collapses_in_three_steps() {
        let k = named(&["a", "b", "c"], &[&["a", "b", "c"]]);
        let s = expect_sequence(&k);
        assert_eq!(s.len(), 3);
        assert!(verify_collapse_sequence(&k, &s));
    }

    #[test]
    fn swapped_steps_fail_verification() {
        let k = named(&["a", "b", "c"], &[&["a", "b", "c"]]);
        let mut s = expect_sequence(&k);
        s.steps.swap(0, 2);
        assert!(!verify_collapse_sequence(&k, &s));
        assert!(!verify_collapse_sequence(&k, &CollapseSequence::default()));
    }

    #[test]
    fn cheap_proofs() {
        let two = named(&["a", "b"], &[]);
        assert_eq!(
            is_collapsible(&two, 10, 0).unwrap(),
            CollapseVerdict::NotCollapsible(NonCollapsible::Disconnected { components: 2 })
        );
        let circle = named(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert_eq!(
            is_collapsible(&circle, 10, 0).unwrap(),
            CollapseVerdict::NotCollapsible(NonCollapsible::EulerCharacteristic { chi: 0 })
        );
        let point = named(&["p"], &[]);
        assert_eq!(is_collapsible(&point, 0, 0).unwrap(), CollapseVerdict::Collapsible(CollapseSequence::default()));
    }

    #[test]
    fn tetrahedron_and_tree() {
        let tet = named(&["a", "b", "c", "d"], &[&["a", "b", "c", "d"]]);
        let s = expect_sequence(&tet);
        assert!(verify_collapse_sequence(&tet, &s));
        assert_eq!(s.len(), 7);
        let tree = named(&["a", "b", "c", "d"], &[&["a", "b"], &["b", "c"], &["b", "d"]]);
        assert!(verify_collapse_sequence(&tree, &expect_sequence(&tree)));
    }

    #[test]
    fn budget_is_enforced() {
        let k = named(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["a", "c", "d"]]);
        assert_eq!(is_collapsible(&k, 0, 0), Err(ComplexError::BudgetExceeded { budget: 0 }));
    }

    #[test]
    fn exhaustive_phase_alone_finds_a_sequence() {
        let k = named(&["a", "b", "c", "d", "e"], &[&["a", "b", "c"], &["a", "c", "d"], &["a", "d", "e"]]);
        let mut search = Search::new(&k, 10_000);
        let seq = search.exhaustive().unwrap().unwrap();
        assert!(verify_collapse_sequence(&k, &seq));
    }
}
