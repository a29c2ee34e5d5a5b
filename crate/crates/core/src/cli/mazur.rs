use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::commands::{load_diagram, matrix_rows};
use super::{CliError, Finding, Input, MazurArgs, Settings, Status};
use crate::data;
use crate::hyperbolic::{classify, is_identity, AssignmentSpec};
use crate::links::{adjoin_relators, extend_over_diagram, relators_from_json, wirtinger};
use crate::presentations::{abelianization, evaluate, verify_homomorphism, GroupElement, Presentation, Word};

/// Seed images (words in the target group's generators) for some arcs, and
/// the arc whose image must be nontrivial.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub seeds: BTreeMap<String, Word>,
    pub meridian: String,
    /// Expected image of the meridian, checked when present.
    #[serde(default)]
    pub meridian_word: Option<Word>,
}

/// Pipeline inputs. Shipped data stands in for omitted files, except that
/// a user diagram gets no default relators or seeds.
#[derive(Debug, Clone)]
pub struct MazurInputs {
    pub diagram: Input,
    pub relators: Option<Input>,
    pub presentation: Input,
    pub assignment: Input,
    pub seeds: Option<Input>,
}

impl MazurInputs {
    pub fn load(a: &MazurArgs) -> Result<Self, CliError> {
        let read = |p: &Option<std::path::PathBuf>| p.as_deref().map(Input::read).transpose();
        let shipped_diagram = a.diagram.is_none();
        let or_default = |i: Option<Input>, name: &str, text: &str| {
            i.or_else(|| shipped_diagram.then(|| Input::builtin(name, text)))
        };
        Ok(MazurInputs {
            diagram: read(&a.diagram)?.unwrap_or_else(|| Input::builtin("mazur_link.json", data::MAZUR_LINK_JSON)),
            relators: or_default(read(&a.relators)?, "mazur_relators.json", data::MAZUR_RELATORS_JSON),
            presentation: read(&a.presentation)?
                .unwrap_or_else(|| Input::builtin("triangle_group.json", data::TRIANGLE_GROUP_JSON)),
            assignment: read(&a.assignment)?.unwrap_or_else(|| Input::builtin("triangle_rep.json", data::TRIANGLE_REP_JSON)),
            seeds: or_default(read(&a.seeds)?, "mazur_seeds.json", data::MAZUR_SEEDS_JSON),
        })
    }

    pub fn shipped() -> Self {
        MazurInputs::load(&MazurArgs::default()).expect("shipped inputs need no IO")
    }

    pub fn inputs(&self) -> Vec<Input> {
        [Some(&self.diagram), self.relators.as_ref(), Some(&self.presentation), Some(&self.assignment), self.seeds.as_ref()]
            .into_iter()
            .flatten()
            .cloned()
            .collect()
    }
}

fn residual_table(p: &Presentation, residuals: &[f64]) -> Vec<Value> {
    p.relators().iter().zip(residuals).map(|(r, x)| json!({ "relator": r.to_string(), "residual": x })).collect()
}

/// Diagram → Wirtinger presentation → adjoined relators → abelianization,
/// then, when the abelianization is trivial, the hyperbolic certificate:
/// the triangle-group relators hold, the seeded images extend over the
/// diagram satisfying every relator, and the meridian's image is not the
/// identity.
pub fn mazur_pipeline(m: &MazurInputs, s: &Settings) -> Result<Finding, CliError> {
    let d = load_diagram(&m.diagram.text)?;
    let p0 = wirtinger(&d).map_err(|e| CliError::input("wirtinger", e))?;
    let mut stages = serde_json::Map::new();
    stages.insert(
        "wirtinger".into(),
        json!({ "arcs": d.arcs.len(), "crossings": d.crossings.len(), "components": d.components.len(),
                "generators": p0.generators().len(), "relators": p0.relators().len() }),
    );
    let p = match &m.relators {
        Some(i) => {
            let rs = relators_from_json(&d, &i.text).map_err(|e| CliError::input("adjoin_relators", e))?;
            let p = adjoin_relators(&p0, &rs).map_err(|e| CliError::input("adjoin_relators", e))?;
            let list: Vec<Value> = rs.iter().map(|r| json!({ "label": r.label, "word": r.word.to_string() })).collect();
            stages.insert("adjoin_relators".into(), json!(list));
            p
        }
        None => p0,
    };
    let ab = abelianization(&p);
    stages.insert("abelianization".into(), json!({ "invariants": ab, "trivial": ab.is_trivial() }));
    if !ab.is_trivial() {
        stages.insert("representation".into(), json!({ "skipped": "abelianization already nontrivial" }));
        return Ok(Finding {
            status: Status::Holds,
            summary: format!("abelianization {ab}: group nontrivial, representation stage skipped"),
            result: json!({ "verdict": "nontrivial", "certified_by": "abelianization", "stages": stages }),
        });
    }

    let tri = Presentation::from_json(&m.presentation.text).map_err(|e| CliError::input("rep_verify", e))?;
    let spec = AssignmentSpec::from_json(&m.assignment.text).map_err(|e| CliError::input("rep_verify", e))?;
    let (_, h) = spec.build().map_err(|e| CliError::input("rep_verify", e))?;
    let rep = verify_homomorphism(&tri, &h, s.tol).map_err(|e| CliError::input("rep_verify", e))?;
    stages.insert(
        "rep_verify".into(),
        json!({ "holds": rep.holds, "tolerance": s.tol, "relators": residual_table(&tri, &rep.residuals) }),
    );

    let Some(seed_input) = &m.seeds else {
        return Ok(Finding {
            status: Status::Unchecked,
            summary: "abelianization trivial and no seed images given: nothing certifies nontriviality".into(),
            result: json!({ "verdict": "unknown", "stages": stages }),
        });
    };
    let seeds: SeedSpec = serde_json::from_str(&seed_input.text).map_err(|e| CliError::input("extend_representation", e))?;
    // Extension happens in the free group on the target generators; only
    // the resulting relator images are evaluated numerically, which keeps
    // rounding error at the level of a single short word.
    let ext = extend_over_diagram(&d, &seeds.seeds.iter().map(|(a, w)| (a.as_str().into(), w.clone())).collect())
        .map_err(|e| CliError::input("extend_representation", e))?;
    let mut residuals = Vec::with_capacity(p.relators().len());
    let mut rows = Vec::with_capacity(p.relators().len());
    for r in p.relators() {
        let image = evaluate(r, &ext).map_err(|e| CliError::input("extend_representation", e))?;
        let x = evaluate(&image, &h).map_err(|e| CliError::input("extend_representation", e))?.distance_from_identity();
        rows.push(json!({ "relator": r.to_string(), "image_length": image.len(), "residual": x }));
        residuals.push(x);
    }
    let full_holds = residuals.iter().all(|x| *x < s.tol);
    stages.insert(
        "extend_representation".into(),
        json!({
            "seeds": seeds.seeds.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
            "arc_images": ext.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
            "holds": full_holds,
            "tolerance": s.tol,
            "relators": rows,
        }),
    );

    let mer_word = ext
        .get(&seeds.meridian.as_str().into())
        .ok_or_else(|| CliError::input("nontriviality", format!("unknown meridian arc `{}`", seeds.meridian)))?;
    let mer = &evaluate(mer_word, &h).map_err(|e| CliError::input("nontriviality", e))?;
    let distance = mer.distance_from_identity();
    let nontrivial = !is_identity(mer, s.identity_tol);
    let mut nt = json!({
        "meridian": seeds.meridian,
        "distance_from_identity": distance,
        "identity_tol": s.identity_tol,
        "nontrivial": nontrivial,
        "classification": classify(mer).ok(),
        "matrix": matrix_rows(mer),
    });
    let mut matches_word = true;
    if let Some(w) = &seeds.meridian_word {
        let expect = evaluate(w, &h).map_err(|e| CliError::input("nontriviality", e))?;
        let gap = mer.inverse().compose(&expect).distance_from_identity();
        matches_word = gap < s.tol;
        nt["word"] = json!(mer_word.to_string());
        nt["expected_word"] = json!(w.to_string());
        nt["distance_to_expected"] = json!(gap);
    }
    stages.insert("nontriviality".into(), nt);

    let certified = rep.holds && full_holds && nontrivial && matches_word;
    let summary = if certified {
        format!("abelianization trivial; h({}) is {distance:.6} from the identity: group nontrivial", seeds.meridian)
    } else {
        let failed: Vec<&str> = [("rep_verify", rep.holds), ("extend_representation", full_holds), ("nontriviality", nontrivial && matches_word)]
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect();
        format!("not certified; failing stages {failed:?}")
    };
    Ok(Finding {
        status: if certified { Status::Holds } else { Status::Fails },
        summary,
        result: json!({
            "verdict": if certified { "nontrivial" } else { "not_certified" },
            "certified_by": "representation",
            "stages": stages,
        }),
    })
}
