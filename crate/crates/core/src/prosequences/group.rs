use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::ProError;

/// Largest table accepted on load (the associativity check is cubic).
pub const MAX_TABLE_ORDER: usize = 256;
/// Largest order handled by [`group_isomorphic`].
pub const MAX_ISO_ORDER: usize = 128;

/// A finite group given by its multiplication table over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GroupDoc {
    pub label: String,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates the table: closure, associativity, identity and inverses.
    pub fn new(label: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, ProError> {
        let label = label.into();
        let n = table.len();
        let bad = |why: String| ProError::NotAGroup { label: label.clone(), why };
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(ProError::OrderTooLarge { order: n, max: MAX_TABLE_ORDER });
        }
        if let Some(r) = table.iter().position(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad(format!("row {r} is not a row of {n} entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n).find(|&y| table[x][y] == identity).ok_or_else(|| bad(format!("{x} has no inverse")))?;
            inverses.push(y);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(bad(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { label, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z_n`, written `Z{n}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(format!("Z{n}"), table).expect("cyclic table")
    }

    /// Pairs `(x, y)` indexed as `x · |h| + y`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m)).collect())
            .collect();
        FiniteGroup::new(format!("{}x{}", g.label, h.label), table).expect("product table")
    }

    /// Permutations of `0..n` in lexicographic order; `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "S_n table supported for n ≤ 5");
        let mut perms: Vec<Vec<usize>> = vec![vec![0]];
        for k in 1..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation listed");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&q.iter().map(|&i| p[i]).collect())).collect())
            .collect();
        FiniteGroup::new(format!("S{n}"), table).expect("symmetric table")
    }

    pub fn from_json(text: &str) -> Result<Self, ProError> {
        let doc: GroupDoc = serde_json::from_str(text).map_err(|e| ProError::Json(e.to_string()))?;
        FiniteGroup::new(doc.label, doc.table)
    }

    pub(crate) fn doc(&self) -> GroupDoc {
        GroupDoc { label: self.label.clone(), table: self.table.clone() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    /// Elements of the subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// A small generating set: elements of largest order first, each kept
    /// only if it enlarges the span.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).filter(|&a| a != self.identity).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.span(&gens);
        for a in by_order {
            if !span[a] {
                gens.push(a);
                span = self.span(&gens);
                if span.iter().all(|&b| b) {
                    break;
                }
            }
        }
        gens
    }

    /// Whether `map` (indexed by elements of `self`) is a homomorphism into `h`.
    pub fn is_homomorphism(&self, h: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < h.order())
            && (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == h.mul(map[a], map[b])))
    }
}

/// Extends generator images to a map on the subgroup they generate, if the
/// assignment is consistent (and injective, when asked). Unreached elements
/// stay `usize::MAX`.
fn extend(g: &FiniteGroup, gens: &[usize], images: &[usize], h: &FiniteGroup, injective: bool) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&gi, &im) in gens.iter().zip(images) {
            let (y, fy) = (g.mul(x, gi), h.mul(map[x], im));
            if map[y] == usize::MAX {
                if injective && used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Every homomorphism `g → h`, as element maps. Intended for small groups.
pub fn homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = g.generators();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = images.len();
        if i == gens.len() {
            if let Some(m) = extend(g, gens, images, h, false) {
                out.push(m);
            }
            return;
        }
        for y in 0..h.order() {
            if orders[i] % h.element_order(y) == 0 {
                images.push(y);
                if extend(g, &gens[..=i], images, h, false).is_some() {
                    rec(g, h, gens, orders, images, out);
                }
                images.pop();
            }
        }
    }
    rec(g, h, &gens, &orders, &mut images, &mut out);
    out
}

/// An isomorphism `g → h` as an element map, or `None`. Orders, commutativity
/// and element-order profiles are compared first; then generator images
/// are searched with the partial map kept injective.
pub fn group_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>, ProError> {
    for x in [g, h] {
        if x.order() > MAX_ISO_ORDER {
            return Err(ProError::OrderTooLarge { order: x.order(), max: MAX_ISO_ORDER });
        }
    }
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    let gens = g.generators();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let h_orders: Vec<usize> = (0..h.order()).map(|y| h.element_order(y)).collect();
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        h_orders: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let i = images.len();
        if i == gens.len() {
            return extend(g, gens, images, h, true).filter(|m| m.iter().all(|&x| x != usize::MAX));
        }
        for y in 0..h.order() {
            if h_orders[y] == orders[i] {
                images.push(y);
                if extend(g, &gens[..=i], images, h, true).is_some() {
                    if let Some(m) = rec(g, h, gens, orders, h_orders, images) {
                        return Some(m);
                    }
                }
                images.pop();
            }
        }
        None
    }
    Ok(rec(g, h, &gens, &orders, &h_orders, &mut Vec::new()))
}

/// A finite group can be a free factor of a pro-sequence term here iff it is
/// nontrivial: free products of nontrivial groups are infinite, so finite
/// nontrivial groups are indecomposable and never infinite cyclic.
pub fn is_admissible_factor(g: &FiniteGroup) -> bool {
    g.order() >= 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v4() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    #[test]
    fn tables_validate() {
        assert!(FiniteGroup::new("bad", vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::new("bad", vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(FiniteGroup::new("bad", vec![]).is_err());
        // A Latin square with identity 0 that is not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::new("loop", loop5), Err(ProError::NotAGroup { .. })));
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.order_profile(), vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
    }

    #[test]
    fn isomorphism_search() {
        let s3 = FiniteGroup::symmetric(3);
        let id = group_isomorphic(&s3, &s3).unwrap().unwrap();
        assert!(s3.is_homomorphism(&s3, &id));
        assert_eq!(group_isomorphic(&FiniteGroup::cyclic(6), &s3).unwrap(), None);
        assert_eq!(group_isomorphic(&v4(), &FiniteGroup::cyclic(4)).unwrap(), None);
        let z6 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        let m = group_isomorphic(&z6, &FiniteGroup::cyclic(6)).unwrap().unwrap();
        assert!(z6.is_homomorphism(&FiniteGroup::cyclic(6), &m));
        let big = FiniteGroup::cyclic(130);
        assert!(matches!(group_isomorphic(&big, &big), Err(ProError::OrderTooLarge { .. })));
    }

    #[test]
    fn z2xz4_is_not_z8() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        assert_eq!(group_isomorphic(&g, &FiniteGroup::cyclic(8)).unwrap(), None);
    }

    #[test]
    fn hom_counts() {
        // |Hom(Z_n, Z_m)| = gcd(n, m).
        for (n, m, k) in [(2, 4, 2), (3, 4, 1), (4, 6, 2), (6, 6, 6)] {
            assert_eq!(homomorphisms(&FiniteGroup::cyclic(n), &FiniteGroup::cyclic(m)).len(), k);
        }
        // S3 → S3: trivial, three onto the order-2 subgroups, six automorphisms.
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(homomorphisms(&s3, &s3).len(), 10);
        assert_eq!(homomorphisms(&v4(), &FiniteGroup::cyclic(2)).len(), 4);
        assert!(homomorphisms(&s3, &v4()).iter().all(|m| s3.is_homomorphism(&v4(), m)));
    }

    #[test]
    fn admissibility() {
        assert!(!is_admissible_factor(&FiniteGroup::trivial()));
        assert!(is_admissible_factor(&FiniteGroup::cyclic(2)));
        assert!(is_admissible_factor(&FiniteGroup::symmetric(3)));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::from_json(r#"{"label":"Z2","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g, FiniteGroup::cyclic(2));
        assert!(FiniteGroup::from_json(r#"{"label":"Z2","table":[[0,1],[1,0]],"x":1}"#).is_err());
    }
}
