use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::complex::{Simplex, SimplicialComplex};
use super::ComplexError;
use crate::presentations::Word;

/// A polygon whose sides are labeled by `(edge label, ±1)`, read
/// counterclockwise; sides with the same label are glued, respecting the
/// directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentificationPolygon {
    pub word: Vec<(String, i8)>,
}

impl IdentificationPolygon {
    pub fn new(word: Vec<(String, i8)>) -> Result<Self, ComplexError> {
        if word.is_empty() {
            return Err(ComplexError::DegenerateWord);
        }
        if let Some((l, d)) = word.iter().find(|(_, d)| *d != 1 && *d != -1) {
            return Err(ComplexError::Json(format!("side `{l}` has direction {d}")));
        }
        Ok(IdentificationPolygon { word })
    }

    /// From a word such as `a a a^-1`.
    pub fn from_word(w: &Word) -> Result<Self, ComplexError> {
        IdentificationPolygon::new(w.letters().iter().map(|l| (l.generator.to_string(), l.exponent() as i8)).collect())
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let p: IdentificationPolygon = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        IdentificationPolygon::new(p.word)
    }

    pub fn sides(&self) -> usize {
        self.word.len()
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.word.iter().map(|(l, _)| l.as_str()).collect()
    }
}

type Bary = [Rational64; 3];

/// A point of the coned polygon: sector `j` is the triangle
/// `(O, Q_j, Q_{j+1})` and `bary` its barycentric coordinates.
#[derive(Clone)]
struct Point {
    sector: usize,
    bary: Bary,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Key {
    Center,
    /// Radius `r` (1 on the boundary) and boundary position `s ∈ [0, N)`.
    Polar(Rational64, Rational64),
    Edge(String, Rational64),
    Corner(usize),
}

fn subdivide(tris: Vec<[Point; 3]>) -> Vec<[Point; 3]> {
    let two = Rational64::from_integer(2);
    let three = Rational64::from_integer(3);
    let mut out = Vec::with_capacity(tris.len() * 6);
    for t in tris {
        let sector = t[0].sector;
        let avg = |ps: &[&Point], d: Rational64| Point {
            sector,
            bary: [0, 1, 2].map(|c| ps.iter().map(|p| p.bary[c]).sum::<Rational64>() / d),
        };
        let g = avg(&[&t[0], &t[1], &t[2]], three);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out.push([t[i].clone(), avg(&[&t[i], &t[j]], two), g.clone()]);
                }
            }
        }
    }
    out
}

/// Triangulates the quotient of the polygon: cone from an interior point
/// (after splitting each side into `⌈3/n⌉` pieces when `n < 3`), two
/// barycentric subdivisions, then gluing. The result is re-checked to be a
/// simplicial complex with the expected numbers of cells.
pub fn polygon_identification_complex(p: &IdentificationPolygon) -> Result<SimplicialComplex, ComplexError> {
    polygon_complex_with_sides(p).map(|(k, _)| k)
}

/// As [`polygon_identification_complex`], also returning for each facet the
/// polygon side whose cone sector contains it.
pub fn polygon_complex_with_sides(p: &IdentificationPolygon) -> Result<(SimplicialComplex, Vec<usize>), ComplexError> {
    let n = p.sides();
    if n == 0 {
        return Err(ComplexError::DegenerateWord);
    }
    let m = 3usize.div_ceil(n).max(1);
    let big_n = n * m;
    let (o, z) = (Rational64::one(), Rational64::zero());
    let mut tris: Vec<[Point; 3]> = (0..big_n)
        .map(|j| {
            [
                Point { sector: j, bary: [o, z, z] },
                Point { sector: j, bary: [z, o, z] },
                Point { sector: j, bary: [z, z, o] },
            ]
        })
        .collect();
    tris = subdivide(subdivide(tris));

    // Corner classes: P_i is where side i starts.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut ends: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (i, (label, d)) in p.word.iter().enumerate() {
        let (tail, head) = if *d == 1 { (i, (i + 1) % n) } else { ((i + 1) % n, i) };
        match ends.get(label.as_str()) {
            Some(&(t0, h0)) => {
                let (a, b) = (find(&mut parent, tail), find(&mut parent, t0));
                parent[a] = b;
                let (a, b) = (find(&mut parent, head), find(&mut parent, h0));
                parent[a] = b;
            }
            None => {
                ends.insert(label, (tail, head));
            }
        }
    }
    let mut class_of = vec![0; n];
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let root = find(&mut parent, i);
        let next = classes.len();
        *slot = *classes.entry(root).or_insert(next);
    }

    let big = Rational64::from_integer(big_n as i64);
    let mf = Rational64::from_integer(m as i64);
    let polar = |pt: &Point| -> Key {
        let [a, b, c] = pt.bary;
        if a.is_one() {
            return Key::Center;
        }
        let mut s = Rational64::from_integer(pt.sector as i64) + c / (b + c);
        if s >= big {
            s -= big;
        }
        Key::Polar(Rational64::one() - a, s)
    };
    let glued = |pt: &Point| -> Key {
        match polar(pt) {
            Key::Polar(r, s) if r.is_one() => {
                let side = (s / mf).to_integer() as usize;
                let u = (s - Rational64::from_integer((side * m) as i64)) / mf;
                if u.is_zero() {
                    return Key::Corner(class_of[side]);
                }
                let (label, d) = &p.word[side];
                let t = if *d == 1 { u } else { Rational64::one() - u };
                Key::Edge(label.clone(), t)
            }
            k => k,
        }
    };

    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<Key, u32> = HashMap::new();
    let mut intern = |k: Key| -> u32 {
        let next = ids.len() as u32;
        *ids.entry(k.clone()).or_insert_with(|| {
            names.push(match &k {
                Key::Center => "o".to_string(),
                Key::Polar(r, s) => format!("p{r}@{s}"),
                Key::Edge(l, t) => format!("{l}:{t}"),
                Key::Corner(c) => format!("v{c}"),
            });
            next
        })
    };

    let mut pre_vertices = BTreeSet::new();
    let mut pre_edges = BTreeSet::new();
    let mut facets = Vec::with_capacity(tris.len());
    let mut sides = Vec::with_capacity(tris.len());
    for t in &tris {
        let pre: Vec<Key> = t.iter().map(polar).collect();
        for i in 0..3 {
            pre_vertices.insert(pre[i].clone());
            let mut e = [pre[i].clone(), pre[(i + 1) % 3].clone()];
            e.sort();
            pre_edges.insert(e);
        }
        let v: Vec<u32> = t.iter().map(|pt| intern(glued(pt))).collect();
        let s = Simplex::new(v).map_err(|_| ComplexError::NotSimplicial("a triangle has two equal corners".into()))?;
        facets.push(s);
        sides.push(t[0].sector / m);
    }

    let labels = p.labels().len();
    let boundary_pieces = 4 * big_n;
    let want_v = pre_vertices.len() - boundary_pieces + labels * (4 * m - 1) + classes.len();
    let want_e = pre_edges.len() - boundary_pieces + labels * 4 * m;
    let k = SimplicialComplex::from_simplices(Arc::new(names), facets)?;
    let f = k.f_vector();
    if f != vec![want_v, want_e, tris.len()] || k.facets().len() != tris.len() {
        return Err(ComplexError::NotSimplicial(format!(
            "cell counts {f:?}, expected [{want_v}, {want_e}, {}]",
            tris.len()
        )));
    }
    Ok((k, sides))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(w: &str) -> SimplicialComplex {
        polygon_identification_complex(&IdentificationPolygon::from_word(&Word::parse(w).unwrap()).unwrap()).unwrap()
    }

    // Cell counts from an independent floating-point construction (regular
    // polygon in the plane, gluing by arclength).
    #[test]
    fn cell_counts_match_geometric_oracle() {
        assert_eq!(build("a a^-1 b b^-1").f_vector(), vec![74, 216, 144]);
        assert_eq!(build("a a a^-1").f_vector(), vec![53, 160, 108]);
        assert_eq!(build("a a^-1 a b b^-1 b").f_vector(), vec![105, 320, 216]);
        assert_eq!(build("a a^-1").f_vector(), vec![74, 216, 144]);
        assert_eq!(build("a").f_vector(), vec![61, 168, 108]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(build("a a^-1 b b^-1").euler_characteristic(), 2);
        assert_eq!(build("a b a^-1 b^-1").euler_characteristic(), 0);
        assert_eq!(build("a a").euler_characteristic(), 1);
        assert_eq!(build("a a a^-1").euler_characteristic(), 1);
    }

    #[test]
    fn every_facet_is_a_triangle_with_a_side() {
        let p = IdentificationPolygon::from_word(&Word::parse("a a^-1 a b b^-1 b").unwrap()).unwrap();
        let (k, sides) = polygon_complex_with_sides(&p).unwrap();
        assert_eq!(sides.len(), k.facets().len());
        assert!(k.facets().iter().all(|f| f.dim() == 2));
        assert_eq!(sides.iter().filter(|&&s| s == 5).count(), 36);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(IdentificationPolygon::new(vec![]), Err(ComplexError::DegenerateWord));
        assert!(IdentificationPolygon::from_json(r#"{"word":[["a",2]]}"#).is_err());
        assert_eq!(IdentificationPolygon::from_json(r#"{"word":[["a",1],["a",-1]]}"#).unwrap().sides(), 2);
    }
}
