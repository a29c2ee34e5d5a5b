use serde_json::{json, Value};

use super::{mazur, CliError, Command, Finding, Input, RepCommand, Settings, Status};
use crate::complexes::{
    is_collapsible, parse_facet_ids, polygon_identification_complex, split_check, verify_collapse_sequence,
    CollapseVerdict, ComplexError, IdentificationPolygon, PartOutcome, SimplicialComplex,
};
use crate::hyperbolic::{classify, AssignmentSpec};
use crate::links::{adjoin_relators, relators_from_json, validate_diagram, wirtinger, LinkDiagram};
use crate::presentations::{abelianization, verify_homomorphism, Presentation};
use crate::prosequences::{build_ladder, ladder_verify, pro_isomorphic, refute_ladders, FactorSequence};

pub(crate) fn dispatch(c: &Command, s: &Settings, inputs: &mut Vec<Input>) -> Result<Finding, CliError> {
    let mut read = |p: &std::path::Path| -> Result<String, CliError> {
        let i = Input::read(p)?;
        let text = i.text.clone();
        inputs.push(i);
        Ok(text)
    };
    match c {
        Command::Wirtinger { diagram, adjoin, abelianize } => {
            let d = read(diagram)?;
            let r = adjoin.as_deref().map(&mut read).transpose()?;
            cmd_wirtinger(&d, r.as_deref(), *abelianize)
        }
        Command::Rep(RepCommand::Verify { presentation, assignment }) => {
            let p = read(presentation)?;
            let a = read(assignment)?;
            cmd_rep_verify(&p, &a, s)
        }
        Command::Polygon { polygon } => cmd_polygon(&read(polygon)?),
        Command::Collapse { complex } => cmd_collapse(&read(complex)?, s),
        Command::Split { complex, a, b } => {
            let k = read(complex)?;
            let a = read(a)?;
            let b = read(b)?;
            cmd_split(&k, &a, &b, s)
        }
        Command::Proiso { a, b, .. } => {
            let a = read(a)?;
            let b = read(b)?;
            cmd_proiso(&a, &b, s)
        }
        Command::Mazur(args) => {
            let m = mazur::MazurInputs::load(args)?;
            inputs.extend(m.inputs());
            mazur::mazur_pipeline(&m, s)
        }
    }
}

pub(crate) fn load_diagram(text: &str) -> Result<LinkDiagram, CliError> {
    let d = LinkDiagram::from_json(text).map_err(|e| CliError::input("validate_diagram", e))?;
    validate_diagram(&d).map_err(|e| CliError::input("validate_diagram", e))?;
    Ok(d)
}

pub fn cmd_wirtinger(diagram: &str, adjoin: Option<&str>, abelianize: bool) -> Result<Finding, CliError> {
    let d = load_diagram(diagram)?;
    let mut p = wirtinger(&d).map_err(|e| CliError::input("wirtinger", e))?;
    let mut adjoined = Vec::new();
    if let Some(text) = adjoin {
        let rs = relators_from_json(&d, text).map_err(|e| CliError::input("adjoin_relators", e))?;
        p = adjoin_relators(&p, &rs).map_err(|e| CliError::input("adjoin_relators", e))?;
        adjoined = rs.iter().map(|r| json!({ "label": r.label, "word": r.word.to_string() })).collect();
    }
    let mut result = json!({
        "generators": p.generators().len(),
        "relators": p.relators().len(),
        "adjoined": adjoined,
        "presentation": serde_json::from_str::<Value>(&p.to_json()).expect("presentation JSON"),
    });
    let mut summary = format!("{} generators, {} relators", p.generators().len(), p.relators().len());
    if abelianize {
        let ab = abelianization(&p);
        summary += &format!(", abelianization {ab}");
        result["abelianization"] = json!({ "invariants": ab, "trivial": ab.is_trivial() });
    }
    Ok(Finding { status: Status::Holds, result, summary })
}

pub fn cmd_rep_verify(presentation: &str, assignment: &str, s: &Settings) -> Result<Finding, CliError> {
    let p = Presentation::from_json(presentation).map_err(|e| CliError::input("presentation", e))?;
    let spec = AssignmentSpec::from_json(assignment).map_err(|e| CliError::input("assignment", e))?;
    let (_, a) = spec.build().map_err(|e| CliError::input("assignment", e))?;
    let report = verify_homomorphism(&p, &a, s.tol).map_err(|e| CliError::input("assignment", e))?;
    let images: Value = a
        .iter()
        .map(|(g, m)| (g.to_string(), json!({ "classification": classify(m).ok(), "matrix": matrix_rows(m) })))
        .collect::<serde_json::Map<_, _>>()
        .into();
    let relators: Vec<Value> = p
        .relators()
        .iter()
        .zip(&report.residuals)
        .map(|(r, x)| json!({ "relator": r.to_string(), "residual": x }))
        .collect();
    let worst = report.residuals.iter().cloned().fold(0.0, f64::max);
    Ok(Finding {
        status: if report.holds { Status::Holds } else { Status::Fails },
        summary: format!(
            "{} relators, largest residual {worst:.3e} ({} tolerance {:e})",
            relators.len(),
            if report.holds { "within" } else { "over" },
            s.tol
        ),
        result: json!({ "holds": report.holds, "tolerance": s.tol, "relators": relators, "images": images }),
    })
}

pub(crate) fn matrix_rows(m: &crate::hyperbolic::Isometry) -> Vec<[f64; 3]> {
    let x = m.matrix();
    (0..3).map(|i| [x[(i, 0)], x[(i, 1)], x[(i, 2)]]).collect()
}

pub fn cmd_polygon(polygon: &str) -> Result<Finding, CliError> {
    let p = IdentificationPolygon::from_json(polygon).map_err(|e| CliError::input("polygon", e))?;
    let k = polygon_identification_complex(&p).map_err(|e| CliError::input("polygon", e))?;
    Ok(Finding {
        status: Status::Holds,
        summary: format!("f-vector {:?}, χ = {}, {} free faces", k.f_vector(), k.euler_characteristic(), k.free_faces().len()),
        result: json!({
            "f_vector": k.f_vector(),
            "euler_characteristic": k.euler_characteristic(),
            "free_faces": k.free_faces().len(),
            "complex": serde_json::from_str::<Value>(&k.to_json()).expect("complex JSON"),
        }),
    })
}

fn load_complex(text: &str) -> Result<SimplicialComplex, CliError> {
    SimplicialComplex::from_json(text).map_err(|e| CliError::input("complex", e))
}

pub fn cmd_collapse(complex: &str, s: &Settings) -> Result<Finding, CliError> {
    let k = load_complex(complex)?;
    let base = json!({ "f_vector": k.f_vector(), "euler_characteristic": k.euler_characteristic() });
    let (status, verdict, extra, summary) = match is_collapsible(&k, s.budget, s.seed) {
        Ok(CollapseVerdict::Collapsible(seq)) => {
            let ok = verify_collapse_sequence(&k, &seq);
            assert!(ok, "search returned an invalid sequence");
            let n = seq.len();
            (Status::Holds, "collapsible", json!({ "verified": ok, "sequence": seq.named(&k) }), format!("collapsible in {n} steps"))
        }
        Ok(CollapseVerdict::NotCollapsible(r)) => {
            let d = r.describe();
            (Status::Fails, "not_collapsible", json!({ "reason": d, "detail": r }), format!("not collapsible: {d}"))
        }
        Err(ComplexError::BudgetExceeded { budget }) => (
            Status::Unchecked,
            "inconclusive",
            json!({ "reason": format!("budget of {budget} states exceeded") }),
            format!("inconclusive within {budget} states"),
        ),
        Err(e) => return Err(CliError::input("collapse", e)),
    };
    let mut result = base;
    result["verdict"] = json!(verdict);
    for (k, v) in extra.as_object().expect("object") {
        result[k] = v.clone();
    }
    Ok(Finding { status, result, summary })
}

pub fn cmd_split(complex: &str, a: &str, b: &str, s: &Settings) -> Result<Finding, CliError> {
    let k = load_complex(complex)?;
    let ids = |t: &str| parse_facet_ids(t).and_then(|ids| k.facets_by_id(&ids)).map_err(|e| CliError::input("facet_ids", e));
    let (fa, fb) = (ids(a)?, ids(b)?);
    let r = split_check(&k, &fa, &fb, s.budget, s.seed).map_err(|e| CliError::input("split", e))?;
    let parts = [&r.a, &r.b, &r.c];
    let status = if r.premise_holds() {
        Status::Holds
    } else if !r.union_ok || parts.iter().any(|p| matches!(p.outcome, PartOutcome::NotCollapsible(_))) {
        Status::Fails
    } else {
        Status::Unchecked
    };
    let summary = format!(
        "union {}; A {}; B {}; C {}",
        if r.union_ok { "ok" } else { "does not cover K" },
        r.a.outcome.describe(),
        r.b.outcome.describe(),
        r.c.outcome.describe()
    );
    Ok(Finding { status, result: r.to_json(), summary })
}

pub fn cmd_proiso(a: &str, b: &str, s: &Settings) -> Result<Finding, CliError> {
    let sa = FactorSequence::from_json(a).map_err(|e| CliError::input("sequence_a", e))?;
    let sb = FactorSequence::from_json(b).map_err(|e| CliError::input("sequence_b", e))?;
    let r = pro_isomorphic(&sa, &sb).map_err(|e| CliError::input("proiso", e))?;
    let mut result = json!({ "decision": r.decision, "certificate": r.certificate });
    let summary;
    if r.decision {
        let rungs = s.refute_depth + 1;
        let ladder = build_ladder(&sa, &sb, rungs).map_err(|e| CliError::input("proiso", e))?.expect("decision is positive");
        let ok = ladder_verify(&sa, &sb, &ladder, rungs).map_err(|e| CliError::input("proiso", e))?;
        assert!(ok, "ladder built from a matching must commute");
        result["ladder"] = json!({ "rungs": rungs, "left": ladder.left, "right": ladder.right, "verified": ok, "maps": ladder });
        summary = format!("pro-isomorphic; ladder through G_{:?} / H_{:?} verified", ladder.left, ladder.right);
    } else {
        let refutation = refute_ladders(&sa, &sb, s.refute_depth, s.budget).map_err(|e| CliError::input("proiso", e))?;
        let crate::prosequences::Certificate::Distinguishing { class } = &r.certificate else { unreachable!() };
        summary = format!(
            "not pro-isomorphic: {:?} / {:?} occur {} vs {} times",
            class.labels_a, class.labels_b, class.multiplicity_a, class.multiplicity_b
        );
        result["refutation"] = json!(refutation);
    }
    Ok(Finding { status: if r.decision { Status::Holds } else { Status::Fails }, result, summary })
}
