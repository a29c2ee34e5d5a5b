use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::LinkError;

/// One crossing. The under strand runs from `under_in` to `under_out`
/// beneath `over`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub sign: i8,
}

/// An oriented link diagram in arc/crossing form.
///
/// `components[i]` lists the arcs of component `i` in the order they are
/// traversed. Every arc ends at exactly one undercrossing, so a component
/// with `k` arcs has `k` undercrossings, except a crossing-free unknotted
/// circle, which is a single arc with none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDiagram {
    pub arcs: Vec<String>,
    pub components: Vec<Vec<String>>,
    pub crossings: Vec<Crossing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub arcs: usize,
    pub components: usize,
    pub crossings: usize,
}

fn malformed(msg: impl Into<String>) -> LinkError {
    LinkError::MalformedDiagram(msg.into())
}

impl LinkDiagram {
    pub fn from_json(text: &str) -> Result<Self, LinkError> {
        let d: LinkDiagram = serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))?;
        validate_diagram(&d)?;
        Ok(d)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// Index of the component containing `arc`.
    pub fn component_of(&self, arc: &str) -> Option<usize> {
        self.components.iter().position(|c| c.iter().any(|a| a == arc))
    }

    pub fn has_arc(&self, arc: &str) -> bool {
        self.arcs.iter().any(|a| a == arc)
    }

    pub fn component(&self, index: usize) -> Result<&[String], LinkError> {
        self.components
            .get(index)
            .map(|c| c.as_slice())
            .ok_or(LinkError::UnknownComponent(index))
    }
}

/// Checks the arc/crossing incidence invariants, failing on the first
/// violation found in declaration order.
pub fn validate_diagram(d: &LinkDiagram) -> Result<DiagramReport, LinkError> {
    let mut declared = BTreeSet::new();
    for a in &d.arcs {
        if !declared.insert(a.as_str()) {
            return Err(malformed(format!("arc `{a}` declared twice")));
        }
    }
    if d.components.is_empty() {
        return Err(malformed("no components"));
    }
    // arc -> (component, position)
    let mut place: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (ci, comp) in d.components.iter().enumerate() {
        if comp.is_empty() {
            return Err(malformed(format!("component {ci} is empty")));
        }
        for (pos, a) in comp.iter().enumerate() {
            if !declared.contains(a.as_str()) {
                return Err(malformed(format!("component {ci} uses undeclared arc `{a}`")));
            }
            if place.insert(a.as_str(), (ci, pos)).is_some() {
                return Err(malformed(format!("arc `{a}` appears in more than one component slot")));
            }
        }
    }
    if let Some(a) = d.arcs.iter().find(|a| !place.contains_key(a.as_str())) {
        return Err(malformed(format!("arc `{a}` belongs to no component")));
    }

    let mut ins: BTreeMap<&str, usize> = BTreeMap::new();
    let mut outs: BTreeMap<&str, usize> = BTreeMap::new();
    for (k, c) in d.crossings.iter().enumerate() {
        for a in [&c.over, &c.under_in, &c.under_out] {
            if !declared.contains(a.as_str()) {
                return Err(malformed(format!("crossing {k} names undeclared arc `{a}`")));
            }
        }
        if c.sign != 1 && c.sign != -1 {
            return Err(malformed(format!("crossing {k} has sign {} (must be 1 or -1)", c.sign)));
        }
        let (ci, pi) = place[c.under_in.as_str()];
        let (co, po) = place[c.under_out.as_str()];
        let len = d.components[ci].len();
        if ci != co || (pi + 1) % len != po {
            return Err(malformed(format!(
                "crossing {k}: `{}` -> `{}` are not consecutive arcs of one component",
                c.under_in, c.under_out
            )));
        }
        let n_in = ins.entry(c.under_in.as_str()).or_default();
        *n_in += 1;
        if *n_in > 1 {
            return Err(malformed(format!("arc `{}` is under-in at more than one crossing", c.under_in)));
        }
        let n_out = outs.entry(c.under_out.as_str()).or_default();
        *n_out += 1;
        if *n_out > 1 {
            return Err(malformed(format!("arc `{}` is under-out at more than one crossing", c.under_out)));
        }
    }
    for a in &d.arcs {
        let (ci, _) = place[a.as_str()];
        let i = ins.get(a.as_str()).copied().unwrap_or(0);
        let o = outs.get(a.as_str()).copied().unwrap_or(0);
        let closed_circle = d.components[ci].len() == 1 && i == 0 && o == 0;
        if !closed_circle && (i != 1 || o != 1) {
            return Err(malformed(format!("arc `{a}` does not end at an undercrossing")));
        }
    }
    Ok(DiagramReport { arcs: d.arcs.len(), components: d.components.len(), crossings: d.crossings.len() })
}
