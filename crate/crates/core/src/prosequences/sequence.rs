use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use super::group::{FiniteGroup, GroupDoc};
use super::ProError;

/// How often a factor occurs: a count or infinitely often.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_positive(self) -> bool {
        self != Multiplicity::Finite(0)
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;
    fn add(self, o: Multiplicity) -> Multiplicity {
        match (self, o) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u64(*n),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Multiplicity;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Multiplicity, E> {
                Ok(Multiplicity::Finite(n))
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Multiplicity, E> {
                u64::try_from(n).map(Multiplicity::Finite).map_err(|_| E::custom("negative multiplicity"))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Multiplicity, E> {
                match s {
                    "inf" => Ok(Multiplicity::Infinite),
                    _ => Err(E::custom(format!("unknown multiplicity `{s}`"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// A sequence of finite factors `A_1, A_2, …`, given by an alphabet and how
/// often each letter occurs. The order of occurrence is round-robin over the
/// alphabet: each pass emits every letter that still has occurrences left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSequence {
    alphabet: Vec<Arc<FiniteGroup>>,
    multiplicity: Vec<Multiplicity>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceDoc {
    alphabet: Vec<GroupDoc>,
    multiplicity: BTreeMap<String, Multiplicity>,
}

impl FactorSequence {
    pub fn new(entries: Vec<(FiniteGroup, Multiplicity)>) -> Result<Self, ProError> {
        let mut labels = std::collections::BTreeSet::new();
        for (g, _) in &entries {
            if !labels.insert(g.label().to_string()) {
                return Err(ProError::InvalidSequence(format!("label `{}` appears twice", g.label())));
            }
        }
        if !entries.iter().any(|(_, m)| m.is_positive()) {
            return Err(ProError::InvalidSequence("no factor has positive multiplicity".into()));
        }
        let (alphabet, multiplicity) = entries.into_iter().map(|(g, m)| (Arc::new(g), m)).unzip();
        Ok(FactorSequence { alphabet, multiplicity })
    }

    /// Labels missing from `multiplicity` get 0; labels not in the alphabet
    /// are rejected.
    pub fn from_json(text: &str) -> Result<Self, ProError> {
        let doc: SequenceDoc = serde_json::from_str(text).map_err(|e| ProError::Json(e.to_string()))?;
        if let Some(l) = doc.multiplicity.keys().find(|l| !doc.alphabet.iter().any(|g| &g.label == *l)) {
            return Err(ProError::InvalidSequence(format!("multiplicity for unknown label `{l}`")));
        }
        let entries = doc
            .alphabet
            .into_iter()
            .map(|g| {
                let m = doc.multiplicity.get(&g.label).copied().unwrap_or(Multiplicity::Finite(0));
                Ok((FiniteGroup::new(g.label, g.table)?, m))
            })
            .collect::<Result<Vec<_>, ProError>>()?;
        FactorSequence::new(entries)
    }

    pub fn to_json(&self) -> String {
        let doc = SequenceDoc {
            alphabet: self.alphabet.iter().map(|g| g.doc()).collect(),
            multiplicity: self.alphabet.iter().zip(&self.multiplicity).map(|(g, m)| (g.label().to_string(), *m)).collect(),
        };
        serde_json::to_string(&doc).expect("sequence serializes")
    }

    pub fn alphabet(&self) -> &[Arc<FiniteGroup>] {
        &self.alphabet
    }

    pub fn multiplicities(&self) -> &[Multiplicity] {
        &self.multiplicity
    }

    /// Number of factors, if finite.
    pub fn len(&self) -> Option<usize> {
        self.multiplicity.iter().try_fold(0usize, |acc, m| match m {
            Multiplicity::Finite(n) => Some(acc + *n as usize),
            Multiplicity::Infinite => None,
        })
    }

    /// Alphabet indices of the first `j` factors (fewer if the sequence is
    /// finite and shorter).
    pub fn truncation(&self, j: usize) -> Vec<usize> {
        let mut left: Vec<Multiplicity> = self.multiplicity.clone();
        let mut out = Vec::with_capacity(j);
        while out.len() < j {
            let mut any = false;
            for (i, m) in left.iter_mut().enumerate() {
                if out.len() == j {
                    break;
                }
                match m {
                    Multiplicity::Infinite => out.push(i),
                    Multiplicity::Finite(0) => continue,
                    Multiplicity::Finite(n) => {
                        *n -= 1;
                        out.push(i);
                    }
                }
                any = true;
            }
            if !any {
                break;
            }
        }
        out
    }

    /// The groups `A_1, …, A_j`.
    pub fn factors(&self, j: usize) -> Vec<Arc<FiniteGroup>> {
        self.truncation(j).into_iter().map(|i| self.alphabet[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating() -> FactorSequence {
        FactorSequence::new(vec![
            (FiniteGroup::cyclic(2), Multiplicity::Infinite),
            (FiniteGroup::cyclic(3), Multiplicity::Infinite),
        ])
        .unwrap()
    }

    #[test]
    fn round_robin_truncation() {
        assert_eq!(alternating().truncation(5), vec![0, 1, 0, 1, 0]);
        let s = FactorSequence::new(vec![
            (FiniteGroup::cyclic(2), Multiplicity::Finite(1)),
            (FiniteGroup::cyclic(3), Multiplicity::Infinite),
            (FiniteGroup::cyclic(5), Multiplicity::Finite(0)),
        ])
        .unwrap();
        assert_eq!(s.truncation(4), vec![0, 1, 1, 1]);
        assert_eq!(s.len(), None);
        let f = FactorSequence::new(vec![(FiniteGroup::cyclic(2), Multiplicity::Finite(2))]).unwrap();
        assert_eq!(f.truncation(10), vec![0, 0]);
        assert_eq!(f.len(), Some(2));
    }

    #[test]
    fn json_format() {
        let text = r#"{"alphabet":[{"label":"Z2","table":[[0,1],[1,0]]}],"multiplicity":{"Z2":"inf"}}"#;
        let s = FactorSequence::from_json(text).unwrap();
        assert_eq!(s.to_json(), text);
        assert_eq!(s.multiplicities(), &[Multiplicity::Infinite]);
        let missing = r#"{"alphabet":[{"label":"Z2","table":[[0,1],[1,0]]}],"multiplicity":{"Z3":1}}"#;
        assert!(matches!(FactorSequence::from_json(missing), Err(ProError::InvalidSequence(_))));
        let zero = r#"{"alphabet":[{"label":"Z2","table":[[0,1],[1,0]]}],"multiplicity":{"Z2":0}}"#;
        assert!(matches!(FactorSequence::from_json(zero), Err(ProError::InvalidSequence(_))));
        let neg = r#"{"alphabet":[{"label":"Z2","table":[[0,1],[1,0]]}],"multiplicity":{"Z2":-1}}"#;
        assert!(FactorSequence::from_json(neg).is_err());
        assert_eq!(alternating().to_json(), FactorSequence::from_json(&alternating().to_json()).unwrap().to_json());
    }
}
