use serde::Serialize;

use super::collapse::{is_collapsible, verify_collapse_sequence, CollapseSequence, CollapseVerdict, NonCollapsible};
use super::complex::{Simplex, SimplicialComplex};
use super::ComplexError;

/// What the collapse search said about one piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartOutcome {
    /// Carries a sequence that was re-verified against the piece.
    Collapsible(CollapseSequence),
    NotCollapsible(NonCollapsible),
    Inconclusive { budget: u64 },
}

impl PartOutcome {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, PartOutcome::Collapsible(_))
    }

    pub fn describe(&self) -> String {
        match self {
            PartOutcome::Collapsible(s) => format!("collapsible in {} steps", s.len()),
            PartOutcome::NotCollapsible(r) => format!("not collapsible: {}", r.describe()),
            PartOutcome::Inconclusive { budget } => format!("inconclusive within {budget} states"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitPart {
    pub complex: SimplicialComplex,
    pub outcome: PartOutcome,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub union_ok: bool,
    pub a: SplitPart,
    pub b: SplitPart,
    /// The intersection `A ∩ B`.
    pub c: SplitPart,
}

impl SplitReport {
    /// `A ∪ B = K` and all three pieces collapse.
    pub fn premise_holds(&self) -> bool {
        self.union_ok && [&self.a, &self.b, &self.c].iter().all(|p| p.outcome.is_collapsible())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Part {
            f_vector: Vec<usize>,
            euler_characteristic: i64,
            verdict: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            reason: Option<NonCollapsible>,
            #[serde(skip_serializing_if = "Option::is_none")]
            sequence: Option<Vec<(Vec<String>, Vec<String>)>>,
        }
        let part = |p: &SplitPart| {
            let (verdict, reason, sequence) = match &p.outcome {
                PartOutcome::Collapsible(s) => ("collapsible", None, Some(s.named(&p.complex))),
                PartOutcome::NotCollapsible(r) => ("not_collapsible", Some(r.clone()), None),
                PartOutcome::Inconclusive { .. } => ("inconclusive", None, None),
            };
            Part {
                f_vector: p.complex.f_vector(),
                euler_characteristic: p.complex.euler_characteristic(),
                verdict,
                reason,
                sequence,
            }
        };
        serde_json::json!({
            "union_ok": self.union_ok,
            "premise_holds": self.premise_holds(),
            "a": part(&self.a),
            "b": part(&self.b),
            "c": part(&self.c),
        })
    }
}

/// Reads a facet-id list: integers separated by whitespace or commas, with
/// `#` starting a comment. A JSON array also parses.
pub fn parse_facet_ids(text: &str) -> Result<Vec<usize>, ComplexError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || matches!(c, ',' | '[' | ']')))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| ComplexError::Json(format!("bad facet id `{t}`"))))
        .collect()
}

fn examine(k: SimplicialComplex, budget: u64, seed: u64) -> Result<SplitPart, ComplexError> {
    let outcome = if k.is_empty() {
        PartOutcome::NotCollapsible(NonCollapsible::Disconnected { components: 0 })
    } else {
        match is_collapsible(&k, budget, seed) {
            Ok(CollapseVerdict::Collapsible(s)) => {
                assert!(verify_collapse_sequence(&k, &s), "search returned an invalid sequence");
                PartOutcome::Collapsible(s)
            }
            Ok(CollapseVerdict::NotCollapsible(r)) => PartOutcome::NotCollapsible(r),
            Err(ComplexError::BudgetExceeded { budget }) => PartOutcome::Inconclusive { budget },
            Err(e) => return Err(e),
        }
    };
    Ok(SplitPart { complex: k, outcome })
}

/// Checks the premise of the splitting criterion for `K = A ∪ B`: the
/// closures of `a` and `b` must cover `K`, and `A`, `B`, `C = A ∩ B` are
/// each searched for a collapse to a point (each with its own `budget`).
pub fn split_check(
    k: &SimplicialComplex,
    a: &[Simplex],
    b: &[Simplex],
    budget: u64,
    seed: u64,
) -> Result<SplitReport, ComplexError> {
    let ka = k.subcomplex(a)?;
    let kb = k.subcomplex(b)?;
    let union_ok = ka.union(&kb).same_simplices(k);
    let kc = ka.intersection(&kb);
    Ok(SplitReport {
        union_ok,
        a: examine(ka, budget, seed)?,
        b: examine(kb, budget, seed)?,
        c: examine(kc, budget, seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_id_lists() {
        assert_eq!(parse_facet_ids("# A\n0 1\n2,3\n").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_facet_ids("[4, 5]").unwrap(), vec![4, 5]);
        assert!(parse_facet_ids("1 x").is_err());
    }

    #[test]
    fn edge_split_with_itself() {
        let k = SimplicialComplex::from_named(&["u", "v"], &[vec!["u", "v"]]).unwrap();
        let all: Vec<Simplex> = k.facets().to_vec();
        let r = split_check(&k, &all, &all, 100, 0).unwrap();
        assert!(r.union_ok && r.premise_holds());
        assert!(r.c.complex.same_simplices(&k));
    }

    #[test]
    fn uncovered_and_foreign_pieces() {
        let k = SimplicialComplex::from_named(&["u", "v", "w"], &[vec!["u", "v"], vec!["v", "w"]]).unwrap();
        let r = split_check(&k, &k.facets()[..1], &k.facets()[..1], 100, 0).unwrap();
        assert!(!r.union_ok && !r.premise_holds());
        let stranger = Simplex::new(vec![0, 2]).unwrap();
        assert!(matches!(split_check(&k, &[stranger], &[], 100, 0), Err(ComplexError::NotSubcomplex(_))));
    }

    #[test]
    fn disjoint_pieces_have_empty_intersection() {
        let k = SimplicialComplex::from_named(&["u", "v", "w", "x"], &[vec!["u", "v"], vec!["v", "w"], vec!["w", "x"]])
            .unwrap();
        let f = k.facets();
        let r = split_check(&k, &f[..1], &f[2..], 100, 0).unwrap();
        assert!(!r.union_ok);
        assert_eq!(r.c.outcome, PartOutcome::NotCollapsible(NonCollapsible::Disconnected { components: 0 }));
        assert_eq!(r.to_json()["c"]["verdict"], "not_collapsible");
    }
}
