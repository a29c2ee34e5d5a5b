use serde::{Deserialize, Serialize};

use super::diagram::{validate_diagram, Crossing, LinkDiagram};
use super::LinkError;

/// Signed Gauss code: one list per component, `+k` when the component passes
/// over crossing `k` and `-k` when it passes under (crossings numbered from 1).
/// `signs[k-1]` is the sign of crossing `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussCode {
    pub components: Vec<Vec<i32>>,
    pub signs: Vec<i8>,
}

impl GaussCode {
    pub fn from_json(text: &str) -> Result<Self, LinkError> {
        serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// Closure of a braid on `strands` strands. Letter `±i` is the standard
    /// generator σ_i^{±1} (crossing strands at positions i and i+1), and its
    /// crossing sign is the sign of the letter.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self, LinkError> {
        for &l in word {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(LinkError::MalformedDiagram(format!(
                    "braid letter {l} out of range for {strands} strands"
                )));
            }
        }
        let mut visited = vec![false; strands + 1];
        let mut components = Vec::new();
        for start in 1..=strands {
            if visited[start] {
                continue;
            }
            let mut events = Vec::new();
            let mut pos = start;
            loop {
                visited[pos] = true;
                for (k, &l) in word.iter().enumerate() {
                    let i = l.unsigned_abs() as usize;
                    let id = k as i32 + 1;
                    if pos == i {
                        // Left strand moves right; it is on top for σ_i^{-1}.
                        events.push(if l < 0 { id } else { -id });
                        pos = i + 1;
                    } else if pos == i + 1 {
                        events.push(if l > 0 { id } else { -id });
                        pos = i;
                    }
                }
                if pos == start {
                    break;
                }
            }
            components.push(events);
        }
        let signs = word.iter().map(|&l| l.signum() as i8).collect();
        Ok(GaussCode { components, signs })
    }

    /// Arc/crossing form. Arcs are named `x1, x2, ...` component by component;
    /// the first arc of each component is the one containing the start of its
    /// listing.
    pub fn to_diagram(&self) -> Result<LinkDiagram, LinkError> {
        let n = self.signs.len();
        let mut seen_over = vec![false; n];
        let mut seen_under = vec![false; n];
        for comp in &self.components {
            for &e in comp {
                let k = e.unsigned_abs() as usize;
                if e == 0 || k > n {
                    return Err(LinkError::MalformedDiagram(format!("Gauss entry {e} out of range")));
                }
                let slot = if e > 0 { &mut seen_over[k - 1] } else { &mut seen_under[k - 1] };
                if *slot {
                    return Err(LinkError::MalformedDiagram(format!("Gauss entry {e} repeated")));
                }
                *slot = true;
            }
        }
        if let Some(k) = (0..n).find(|&k| !seen_over[k] || !seen_under[k]) {
            return Err(LinkError::MalformedDiagram(format!("crossing {} is not met over and under", k + 1)));
        }

        let mut arcs = Vec::new();
        let mut components = Vec::new();
        let mut over = vec![String::new(); n];
        let mut under_in = vec![String::new(); n];
        let mut under_out = vec![String::new(); n];
        for comp in &self.components {
            let base = arcs.len();
            let k = comp.iter().filter(|&&e| e < 0).count().max(1);
            let names: Vec<String> = (0..k).map(|i| format!("x{}", base + i + 1)).collect();
            let mut cur = 0;
            for &e in comp {
                let c = e.unsigned_abs() as usize - 1;
                if e > 0 {
                    over[c] = names[cur].clone();
                } else {
                    under_in[c] = names[cur].clone();
                    cur = (cur + 1) % k;
                    under_out[c] = names[cur].clone();
                }
            }
            arcs.extend(names.iter().cloned());
            components.push(names);
        }
        let crossings = (0..n)
            .map(|c| Crossing {
                over: over[c].clone(),
                under_in: under_in[c].clone(),
                under_out: under_out[c].clone(),
                sign: self.signs[c],
            })
            .collect();
        let d = LinkDiagram { arcs, components, crossings };
        validate_diagram(&d)?;
        Ok(d)
    }
}
