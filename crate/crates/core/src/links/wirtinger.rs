use serde::{Deserialize, Serialize};

use super::diagram::{validate_diagram, LinkDiagram};
use super::LinkError;
use crate::presentations::{free_reduce, Generator, GeneratorAssignment, GroupElement, Presentation, Word};

/// Wirtinger presentation: generator per arc, relator
/// `out · over^{-ε} · in^{-1} · over^{ε}` per crossing.
pub fn wirtinger(d: &LinkDiagram) -> Result<Presentation, LinkError> {
    validate_diagram(d)?;
    let gens: Vec<Generator> = d.arcs.iter().map(|a| Generator::new(a)).collect();
    let rels = d
        .crossings
        .iter()
        .map(|c| {
            let e = c.sign as i64;
            Word::from_powers(&[
                (c.under_out.as_str(), 1),
                (c.over.as_str(), -e),
                (c.under_in.as_str(), -1),
                (c.over.as_str(), e),
            ])
        })
        .collect();
    Ok(Presentation::new(gens, rels)?)
}

/// Extends images of some arcs to all arcs by solving the crossing
/// relations `out = over^{-ε} · in · over^{ε}` in whichever direction is
/// determined. Seeds are kept as given, so the Wirtinger relators still have
/// to be checked afterwards.
pub fn extend_over_diagram<T: GroupElement>(
    d: &LinkDiagram,
    seeds: &GeneratorAssignment<T>,
) -> Result<GeneratorAssignment<T>, LinkError> {
    validate_diagram(d)?;
    if let Some(g) = seeds.domain().find(|g| !d.has_arc(g.as_str())) {
        return Err(LinkError::UnknownArc(g.to_string()));
    }
    let mut img = seeds.clone();
    let mut progress = true;
    while progress {
        progress = false;
        for c in &d.crossings {
            let Some(o) = img.get(&Generator::new(&c.over)) else { continue };
            let o = if c.sign > 0 { o.clone() } else { o.inverse() };
            let known_in = img.get(&Generator::new(&c.under_in)).cloned();
            let known_out = img.get(&Generator::new(&c.under_out)).cloned();
            match (known_in, known_out) {
                (Some(i), None) => {
                    img.insert(c.under_out.as_str(), o.inverse().compose(&i).compose(&o));
                    progress = true;
                }
                (None, Some(u)) => {
                    img.insert(c.under_in.as_str(), o.compose(&u).compose(&o.inverse()));
                    progress = true;
                }
                _ => {}
            }
        }
    }
    let missing: Vec<String> = d.arcs.iter().filter(|a| img.get(&Generator::new(a)).is_none()).cloned().collect();
    if !missing.is_empty() {
        return Err(LinkError::Underdetermined(missing));
    }
    Ok(img)
}

pub fn meridian_word(d: &LinkDiagram, arc: &str) -> Result<Word, LinkError> {
    if !d.has_arc(arc) {
        return Err(LinkError::UnknownArc(arc.to_string()));
    }
    Ok(Word::generator(arc))
}

/// Sum of the signs of crossings where the component passes over itself.
pub fn writhe(d: &LinkDiagram, component: usize) -> Result<i64, LinkError> {
    let comp = d.component(component)?;
    Ok(d.crossings
        .iter()
        .filter(|c| comp.contains(&c.over) && comp.contains(&c.under_in))
        .map(|c| c.sign as i64)
        .sum())
}

/// Linking number of two distinct components.
pub fn linking_number(d: &LinkDiagram, a: usize, b: usize) -> Result<i64, LinkError> {
    let ca = d.component(a)?;
    let cb = d.component(b)?;
    let twice: i64 = d
        .crossings
        .iter()
        .filter(|c| {
            (ca.contains(&c.over) && cb.contains(&c.under_in)) || (cb.contains(&c.over) && ca.contains(&c.under_in))
        })
        .map(|c| c.sign as i64)
        .sum();
    Ok(twice / 2)
}

/// The diagram-framed parallel of a component read from the start of its
/// first arc: `over^{ε}` for each undercrossing in traversal order.
fn blackboard_longitude(d: &LinkDiagram, component: usize) -> Result<Word, LinkError> {
    let comp = d.component(component)?;
    let mut letters = Vec::new();
    for arc in comp {
        if let Some(c) = d.crossings.iter().find(|c| &c.under_in == arc) {
            letters.push((c.over.as_str(), c.sign as i64));
        }
    }
    Ok(Word::from_powers(&letters))
}

/// Longitude of `component` with `framing` measured against the diagram's
/// blackboard framing: the blackboard parallel times `meridian^framing`, where
/// the meridian is the component's first arc. Framing 0 is the untwisted
/// parallel drawn in the plane of the diagram.
pub fn longitude_word(d: &LinkDiagram, component: usize, framing: i64) -> Result<Word, LinkError> {
    validate_diagram(d)?;
    let l = blackboard_longitude(d, component)?;
    let m = Word::generator(d.component(component)?[0].as_str());
    Ok(free_reduce(&l.concat(&m.pow(framing))))
}

/// Longitude with `framing` measured against the Seifert framing, i.e. the
/// blackboard parallel corrected by the writhe. Framing 0 is null-homologous
/// in the complement of the component.
pub fn seifert_longitude_word(d: &LinkDiagram, component: usize, framing: i64) -> Result<Word, LinkError> {
    let w = writhe(d, component)?;
    longitude_word(d, component, framing - w)
}

/// Where a surgery relator came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Longitude { component: usize, framing: i64 },
    Explicit,
}

/// A relator added by Dehn filling or by attaching a 2-handle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryRelator {
    pub label: String,
    pub word: Word,
    pub provenance: Provenance,
}

impl SurgeryRelator {
    pub fn explicit(label: impl Into<String>, word: Word) -> Self {
        SurgeryRelator { label: label.into(), word: free_reduce(&word), provenance: Provenance::Explicit }
    }

    pub fn longitude(d: &LinkDiagram, label: impl Into<String>, component: usize, framing: i64) -> Result<Self, LinkError> {
        Ok(SurgeryRelator {
            label: label.into(),
            word: longitude_word(d, component, framing)?,
            provenance: Provenance::Longitude { component, framing },
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LongitudeRef {
    component: usize,
    #[serde(default)]
    framing: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelatorDoc {
    label: String,
    word: Option<Word>,
    longitude: Option<LongitudeRef>,
}

/// Reads a relator list `[{"label", "word"} | {"label", "longitude": {"component", "framing"}}]`,
/// computing longitude words against `d`.
pub fn relators_from_json(d: &LinkDiagram, text: &str) -> Result<Vec<SurgeryRelator>, LinkError> {
    let docs: Vec<RelatorDoc> = serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))?;
    docs.into_iter()
        .map(|doc| match (doc.word, doc.longitude) {
            (Some(w), None) => Ok(SurgeryRelator::explicit(doc.label, w)),
            (None, Some(l)) => SurgeryRelator::longitude(d, doc.label, l.component, l.framing),
            _ => Err(LinkError::Json(format!(
                "relator `{}` needs exactly one of \"word\" or \"longitude\"",
                doc.label
            ))),
        })
        .collect()
}

/// Appends the relator words to `p` in order.
pub fn adjoin_relators(p: &Presentation, rs: &[SurgeryRelator]) -> Result<Presentation, LinkError> {
    Ok(p.with_relators(rs.iter().map(|r| r.word.clone()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::GaussCode;
    use crate::presentations::{abelianization, equivalent_relators, PresentationError};

    fn braid(n: usize, w: &[i32]) -> LinkDiagram {
        GaussCode::from_braid(n, w).unwrap().to_diagram().unwrap()
    }

    #[test]
    fn unknot_presentation() {
        let d = braid(1, &[]);
        let p = wirtinger(&d).unwrap();
        assert_eq!((p.generators().len(), p.relators().len()), (1, 0));
        assert!(longitude_word(&d, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn trefoil_abelianizes_to_z() {
        let d = braid(2, &[1, 1, 1]);
        let p = wirtinger(&d).unwrap();
        assert_eq!((p.generators().len(), p.relators().len()), (3, 3));
        assert_eq!(abelianization(&p).to_u64(), Some(vec![0]));
    }

    #[test]
    fn seifert_longitude_is_null_homologous() {
        let d = braid(2, &[1, 1, 1]);
        assert_eq!(writhe(&d, 0).unwrap(), 3);
        let l = seifert_longitude_word(&d, 0, 0).unwrap();
        let total: i64 = d.components[0].iter().map(|a| l.exponent_sum(&Generator::new(a))).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn extension_solves_the_crossings() {
        let d = braid(2, &[1, 1, 1]);
        let p = wirtinger(&d).unwrap();
        let a = &d.arcs[0];
        let seeds = GeneratorAssignment::new().with(a.as_str(), Word::generator("m")).with(d.arcs[1].as_str(), Word::generator("n"));
        let img = extend_over_diagram(&d, &seeds).unwrap();
        assert_eq!(img.domain().count(), 3);
        // One crossing defines the third arc; the other two become the
        // trefoil relation m n m = n m n, which free images do not satisfy.
        let trivial = p.relators().iter().filter(|r| crate::presentations::evaluate(r, &img).unwrap().is_empty()).count();
        assert_eq!(trivial, 1);
        let lonely = GeneratorAssignment::new().with(a.as_str(), Word::generator("m"));
        assert!(matches!(extend_over_diagram(&d, &lonely), Err(LinkError::Underdetermined(_))));
    }

    #[test]
    fn hopf_linking() {
        let d = braid(2, &[1, 1]);
        assert_eq!(linking_number(&d, 0, 1).unwrap(), 1);
        let neg = braid(2, &[-1, -1]);
        assert_eq!(linking_number(&neg, 0, 1).unwrap(), -1);
    }

    #[test]
    fn framing_shifts_by_meridians() {
        let d = braid(2, &[1, 1, 1]);
        let l0 = longitude_word(&d, 0, 0).unwrap();
        let l2 = longitude_word(&d, 0, 2).unwrap();
        assert_eq!(l2, l0.mul(&Word::parse("x1^2").unwrap()));
        assert!(equivalent_relators(&l0, &l0.inverse()));
    }

    #[test]
    fn unknown_arc_and_component() {
        let d = braid(1, &[]);
        assert_eq!(meridian_word(&d, "x9"), Err(LinkError::UnknownArc("x9".into())));
        assert_eq!(longitude_word(&d, 3, 0), Err(LinkError::UnknownComponent(3)));
    }

    #[test]
    fn adjoin_keeps_prefix_and_checks_generators() {
        let d = braid(2, &[1, 1, 1]);
        let p = wirtinger(&d).unwrap();
        assert_eq!(adjoin_relators(&p, &[]).unwrap(), p);
        let r = SurgeryRelator::explicit("r", Word::parse("x1 x2").unwrap());
        let q = adjoin_relators(&p, std::slice::from_ref(&r)).unwrap();
        assert_eq!(&q.relators()[..3], p.relators());
        let bad = SurgeryRelator::explicit("r", Word::parse("x10").unwrap());
        assert_eq!(
            adjoin_relators(&p, &[bad]),
            Err(LinkError::Presentation(PresentationError::UnknownGenerator("x10".into())))
        );
    }

    #[test]
    fn relator_json_forms() {
        let d = braid(2, &[1, 1, 1]);
        let rs = relators_from_json(
            &d,
            r#"[{"label":"a","word":[["x1",1],["x2",-1]]},{"label":"l","longitude":{"component":0,"framing":0}}]"#,
        )
        .unwrap();
        assert_eq!(rs[1].word, longitude_word(&d, 0, 0).unwrap());
        assert!(relators_from_json(&d, r#"[{"label":"a"}]"#).is_err());
    }
}
