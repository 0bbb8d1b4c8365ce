use plane110::coloring::Caps;
use plane110::configurations::{scan, verify_reduction, ConfigurationMatch, LemmaId};
use plane110::generators::{plant_configuration, Planted};

const OUT_OF_CLASS: [LemmaId; 2] = [LemmaId::TwoTriangleFaces, LemmaId::TriangleSquareEdge];

fn planted_match(p: &Planted) -> Option<ConfigurationMatch> {
    scan(&p.graph, p.c0).into_iter().find(|m| {
        m.lemma == p.lemma && p.key.iter().all(|&k| m.vertices.iter().any(|&(_, v)| v == k) || m.region.contains(&k))
    })
}

#[test]
fn every_gadget_is_found_where_planted() {
    let mut bad = Vec::new();
    for lemma in LemmaId::ALL {
        for padding in 0..32 {
            let p = plant_configuration(lemma, padding).unwrap_or_else(|e| panic!("{lemma} {padding}: {e}"));
            if p.in_class == OUT_OF_CLASS.contains(&lemma) {
                bad.push(format!("{lemma} {padding}: class"));
            }
            if planted_match(&p).is_none() {
                bad.push(format!("{lemma} {padding}: not found"));
            }
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn planted_reductions_extend() {
    let mut bad = Vec::new();
    for lemma in LemmaId::REDUCIBLE {
        for padding in 0..32 {
            let p = plant_configuration(lemma, padding).unwrap();
            let Some(m) = planted_match(&p) else { continue };
            match verify_reduction(&p.graph, p.c0, &m, Caps::default()) {
                Ok(v) if v.pass && v.sigma_descends => {}
                Ok(v) => bad.push(format!(
                    "{lemma} {padding}: {}/{} unsat {} lift {}",
                    v.extended, v.boundary_colorings, v.reduced_unsat, v.lift_invalid
                )),
                Err(e) => bad.push(format!("{lemma} {padding}: {e}")),
            }
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
