//! Checks a reduction: every boundary coloring of the reduced graph lifts
//! back to the original graph.

use plane110::coloring::Caps;
use plane110::configurations::{scan, verify_reduction, LemmaId};
use plane110::generators::plant_configuration;

fn main() {
    for lemma in LemmaId::REDUCIBLE {
        let p = plant_configuration(lemma, 3).expect("gadget");
        let m =
            scan(&p.graph, p.c0).into_iter().find(|m| m.lemma == lemma && m.recipe.is_some()).expect("planted match");
        let v = verify_reduction(&p.graph, p.c0, &m, Caps::default()).expect("recipe applies");
        println!(
            "{:<24} {} {}/{} sigma {} -> {} reduced in class {}",
            lemma.name(),
            if v.pass { "PASS" } else { "FAIL" },
            v.extended,
            v.boundary_colorings,
            v.sigma_before,
            v.sigma_after,
            v.reduced_class.in_class
        );
    }
}
