use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ComplexError;

/// Highest simplex dimension accepted.
pub const MAX_DIM: usize = 3;

/// A simplex as a sorted list of vertex ids. Ordered by dimension first,
/// then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Sorts `vertices`; fails on a repeated vertex.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, ComplexError> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex);
        }
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces (none for a vertex).
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite simplicial complex, stored face-closed.
///
/// Vertex ids index a name table that subcomplexes share with their parent,
/// so simplices (and collapse sequences) can be compared across them.
/// `facets` keeps the maximal simplices in listing order; facet ids in
/// [`super::split_check`] inputs refer to this order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    names: Arc<Vec<String>>,
    simplices: BTreeSet<Simplex>,
    facets: Vec<Simplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    vertices: Vec<String>,
    simplices: Vec<Vec<String>>,
}

impl SimplicialComplex {
    /// Closure of the given simplices over a fresh name table. Every name in
    /// `vertices` becomes a vertex; simplices may only use listed names.
    pub fn from_named<S: AsRef<str>>(vertices: &[S], simplices: &[Vec<S>]) -> Result<Self, ComplexError> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(ComplexError::DuplicateVertex(n.clone()));
            }
        }
        let mut listed = Vec::with_capacity(simplices.len() + names.len());
        for s in simplices {
            let ids = s
                .iter()
                .map(|v| index.get(v.as_ref()).copied().ok_or_else(|| ComplexError::UnknownVertex(v.as_ref().to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            listed.push(Simplex::new(ids)?);
        }
        listed.extend((0..names.len() as u32).map(|i| Simplex(vec![i])));
        SimplicialComplex::from_simplices(Arc::new(names), listed)
    }

    /// Closure of `listed` over an existing name table. Facets keep the order
    /// of their first appearance in `listed`.
    pub fn from_simplices(names: Arc<Vec<String>>, listed: Vec<Simplex>) -> Result<Self, ComplexError> {
        let mut simplices = BTreeSet::new();
        for s in &listed {
            if s.dim() > MAX_DIM {
                return Err(ComplexError::DimensionTooHigh(s.dim()));
            }
            if let Some(&v) = s.0.iter().find(|&&v| v as usize >= names.len()) {
                return Err(ComplexError::UnknownVertex(format!("#{v}")));
            }
            simplices.extend(s.faces());
        }
        let mut facets = Vec::new();
        let mut seen = BTreeSet::new();
        let maximal = maximal_set(&simplices);
        for s in listed {
            if maximal.contains(&s) && seen.insert(s.clone()) {
                facets.push(s);
            }
        }
        Ok(SimplicialComplex { names, simplices, facets })
    }

    fn from_closed(names: Arc<Vec<String>>, simplices: BTreeSet<Simplex>) -> Self {
        let facets = maximal_set(&simplices).into_iter().collect();
        let k = SimplicialComplex { names, simplices, facets };
        debug_assert!(k.is_face_closed());
        k
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        SimplicialComplex::from_named(&doc.vertices, &doc.simplices)
    }

    /// Exchange format: used vertex names and the maximal simplices.
    pub fn to_json(&self) -> String {
        let used: BTreeSet<u32> = self.simplices.iter().filter(|s| s.dim() == 0).map(|s| s.0[0]).collect();
        let doc = ComplexDoc {
            vertices: used.iter().map(|&v| self.names[v as usize].clone()).collect(),
            simplices: self.facets.iter().map(|s| self.simplex_names(s)).collect(),
        };
        serde_json::to_string(&doc).expect("complex serializes")
    }

    pub fn names(&self) -> &Arc<Vec<String>> {
        &self.names
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.0.iter().map(|&v| self.names[v as usize].clone()).collect()
    }

    /// Builds a simplex from vertex names.
    pub fn simplex(&self, names: &[&str]) -> Result<Simplex, ComplexError> {
        let ids = names
            .iter()
            .map(|n| self.vertex_id(n).ok_or_else(|| ComplexError::UnknownVertex(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(ids)
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    /// Simplex counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.boundary().all(|f| self.simplices.contains(&f)))
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let verts: Vec<u32> = self.simplices.iter().take_while(|s| s.dim() == 0).map(|s| s.0[0]).collect();
        let pos: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for s in self.simplices.iter().filter(|s| s.dim() == 1) {
            let a = find(&mut parent, pos[&s.0[0]]);
            let b = find(&mut parent, pos[&s.0[1]]);
            parent[a] = b;
        }
        (0..verts.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Every free pair `(face, coface)`: `face` is a proper face of exactly
    /// one simplex, `coface`. Sorted by face.
    pub fn free_faces(&self) -> Vec<(Simplex, Simplex)> {
        let mut count: BTreeMap<&Simplex, (usize, &Simplex)> = BTreeMap::new();
        let mut owned: Vec<(Simplex, &Simplex)> = Vec::new();
        for t in &self.simplices {
            for f in t.boundary() {
                owned.push((f, t));
            }
        }
        for (f, t) in &owned {
            let e = count.entry(f).or_insert((0, t));
            e.0 += 1;
            e.1 = t;
        }
        count
            .into_iter()
            .filter(|(_, (n, _))| *n == 1)
            .map(|(f, (_, t))| (f.clone(), t.clone()))
            .collect()
    }

    pub fn is_free_pair(&self, face: &Simplex, coface: &Simplex) -> bool {
        self.contains(coface)
            && face.dim() + 1 == coface.dim()
            && face.is_face_of(coface)
            && self
                .simplices
                .iter()
                .filter(|s| s.dim() == coface.dim())
                .all(|s| s == coface || !face.is_face_of(s))
    }

    /// Removes a free pair.
    pub fn elementary_collapse(&self, face: &Simplex, coface: &Simplex) -> Result<Self, ComplexError> {
        if !self.is_free_pair(face, coface) {
            return Err(ComplexError::NotFreePair { face: self.simplex_names(face), coface: self.simplex_names(coface) });
        }
        let mut simplices = self.simplices.clone();
        simplices.remove(face);
        simplices.remove(coface);
        Ok(SimplicialComplex::from_closed(self.names.clone(), simplices))
    }

    /// Closure of `parts`, over this complex's vertex table; every part must
    /// be a simplex of `self`.
    pub fn subcomplex(&self, parts: &[Simplex]) -> Result<Self, ComplexError> {
        if let Some(s) = parts.iter().find(|s| !self.contains(s)) {
            return Err(ComplexError::NotSubcomplex(format!("{:?} is not a simplex of the complex", self.simplex_names(s))));
        }
        SimplicialComplex::from_simplices(self.names.clone(), parts.to_vec())
    }

    /// Facets with the given ids (indices into [`Self::facets`]).
    pub fn facets_by_id(&self, ids: &[usize]) -> Result<Vec<Simplex>, ComplexError> {
        ids.iter()
            .map(|&i| {
                self.facets
                    .get(i)
                    .cloned()
                    .ok_or_else(|| ComplexError::NotSubcomplex(format!("facet id {i} out of range (have {})", self.facets.len())))
            })
            .collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let simplices = self.simplices.union(&other.simplices).cloned().collect();
        SimplicialComplex::from_closed(self.names.clone(), simplices)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let simplices = self.simplices.intersection(&other.simplices).cloned().collect();
        SimplicialComplex::from_closed(self.names.clone(), simplices)
    }

    /// Same simplices, ignoring facet listing order.
    pub fn same_simplices(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

fn maximal_set(simplices: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
    let mut covered = BTreeSet::new();
    for s in simplices {
        covered.extend(s.boundary());
    }
    simplices.difference(&covered).cloned().collect()
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(f = {:?}, χ = {})", self.f_vector(), self.euler_characteristic())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_named(&["a", "b", "c"], &[vec!["a", "b", "c"]]).unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let k = triangle();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(k.is_face_closed());
        let point = SimplicialComplex::from_named(&["p"], &[]).unwrap();
        assert_eq!(point.euler_characteristic(), 1);
    }

    #[test]
    fn triangle_has_three_free_edges() {
        let k = triangle();
        let free = k.free_faces();
        assert_eq!(free.len(), 3);
        assert!(free.iter().all(|(f, t)| f.dim() == 1 && t.dim() == 2));
    }

    #[test]
    fn collapse_to_path() {
        let k = triangle();
        let (f, t) = k.free_faces()[0].clone();
        let l = k.elementary_collapse(&f, &t).unwrap();
        assert_eq!(l.f_vector(), vec![3, 2]);
        assert_eq!(l.euler_characteristic(), k.euler_characteristic());
        assert_eq!(l.components(), 1);
        // In the path, the middle vertex is not free.
        let mid = l.simplices().iter().filter(|s| s.dim() == 0).find(|v| l.free_faces().iter().all(|(f, _)| f != *v)).unwrap().clone();
        let edge = l.simplices().iter().find(|s| s.dim() == 1 && mid.is_face_of(s)).unwrap().clone();
        assert!(matches!(l.elementary_collapse(&mid, &edge), Err(ComplexError::NotFreePair { .. })));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SimplicialComplex::from_named(&["a"], &[vec!["a", "a"]]), Err(ComplexError::RepeatedVertex)));
        assert!(matches!(SimplicialComplex::from_named(&["a"], &[vec!["b"]]), Err(ComplexError::UnknownVertex(_))));
        let five = vec!["a", "b", "c", "d", "e"];
        assert!(matches!(
            SimplicialComplex::from_named(&five, &[five.clone()]),
            Err(ComplexError::DimensionTooHigh(4))
        ));
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::from_named(&["a", "b", "c", "d"], &[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        let text = k.to_json();
        assert_eq!(text, r#"{"vertices":["a","b","c","d"],"simplices":[["a","b","c"],["c","d"]]}"#);
        assert!(SimplicialComplex::from_json(&text).unwrap().same_simplices(&k));
    }
}
